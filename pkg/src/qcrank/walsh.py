"""
Classical preprocessing for compact uniformly controlled Ry circuits.

The compact circuit alternates Ry(theta_i) rotations on the data qubit with
CX gates whose controls walk through the address register in reflected Gray
order. The angles theta are obtained from the target per-address angles
alpha through a Walsh-Hadamard transform with Gray ordering; a cyclic
permutation shift s of the control positions corresponds to an input
permutation of alpha before the transform. Cost is O(n_a * 2^n_a).
"""
from __future__ import annotations

import numpy as np


def gray_code(i: int) -> int:
    """Reflected binary Gray code of a non-negative integer."""
    if i < 0:
        raise ValueError("i must be non-negative")
    return i ^ (i >> 1)


def cx_control_sequence(n_a: int, shift: int = 0) -> list[int]:
    """Control-qubit position for each of the 2^n_a CX gates.

    Entry i is the address qubit controlling the CX that follows the i-th
    Ry rotation: the position of the bit in which consecutive Gray codes
    g_i and g_{i+1 mod 2^n_a} differ, cyclically shifted by s.
    """
    _check_shift(n_a, shift)
    n = 1 << n_a
    seq = []
    for i in range(n):
        diff = gray_code(i) ^ gray_code((i + 1) % n)
        pos = diff.bit_length() - 1
        seq.append((pos + shift) % n_a)
    return seq


def fwht(vec: np.ndarray) -> np.ndarray:
    """In-place-style fast Walsh-Hadamard transform, natural (Hadamard) order.

    Returns H @ vec with H[x, y] = (-1)^popcount(x & y), unnormalized.
    """
    a = np.array(vec, dtype=float)
    n = a.size
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    h = 1
    while h < n:
        for start in range(0, n, 2 * h):
            lo = a[start : start + h].copy()
            hi = a[start + h : start + 2 * h]
            a[start : start + h] = lo + hi
            a[start + h : start + 2 * h] = lo - hi
        h *= 2
    return a


def _check_shift(n_a: int, shift: int) -> None:
    if n_a < 1:
        raise ValueError("n_a must be >= 1")
    if not 0 <= shift < n_a:
        raise ValueError(f"shift {shift} out of range [0, {n_a})")


def _n_a_of(length: int) -> int:
    n_a = length.bit_length() - 1
    if length < 2 or (1 << n_a) != length:
        raise ValueError(f"length {length} is not a power of two >= 2")
    return n_a


def _address_permutation(n_a: int, shift: int) -> np.ndarray:
    """perm[x] = address whose target angle feeds transform index x.

    Transform bit c corresponds to address qubit a_{(c+s) mod n_a}; the
    address integer reads qubit a_0 as its most-significant bit.
    """
    n = 1 << n_a
    perm = np.empty(n, dtype=np.int64)
    for x in range(n):
        addr = 0
        for q in range(n_a):
            bit = (x >> ((q - shift) % n_a)) & 1
            addr |= bit << (n_a - 1 - q)
        perm[x] = addr
    return perm


def alphas_to_thetas(alphas: np.ndarray, shift: int = 0) -> np.ndarray:
    """Rotation angles theta for the compact permuted-UCR circuit.

    The circuit built from cx_control_sequence(n_a, shift) with these theta
    implements the per-address Ry(alpha_i) rotations, alpha indexed by the
    measured address value.
    """
    alphas = np.asarray(alphas, dtype=float)
    n_a = _n_a_of(alphas.size)
    _check_shift(n_a, shift)
    perm = _address_permutation(n_a, shift)
    t = fwht(alphas[perm]) / alphas.size
    gray = np.array([gray_code(i) for i in range(alphas.size)])
    return t[gray]


def thetas_to_alphas(thetas: np.ndarray, shift: int = 0) -> np.ndarray:
    """Exact inverse of alphas_to_thetas for the same shift."""
    thetas = np.asarray(thetas, dtype=float)
    n_a = _n_a_of(thetas.size)
    _check_shift(n_a, shift)
    gray = np.array([gray_code(i) for i in range(thetas.size)])
    u = np.zeros_like(thetas)
    u[gray] = thetas
    spread = fwht(u)
    alphas = np.empty_like(spread)
    alphas[_address_permutation(n_a, shift)] = spread
    return alphas
