"""
Circuit builders for the two encodings.

QCrank stores one real value per (address, data-qubit) pair as a Ry
rotation angle in [0, pi]; QBArt restricts the angles to {0, pi} so every
address holds a binary word in the computational basis. Both prepend
Hadamards on the address register to a parallel uniformly controlled
rotation block.

Angle-grid layout: entry (i, j) is the angle for address i on data qubit j.
A flat data sequence of length L <= n_d * 2^n_a fills the grid data-qubit
by data-qubit, i.e. sequence position l maps to (i, j) = (l % 2^n_a,
l // 2^n_a). QBArt bit order: bit 0 of a value is the most significant and
lands on the first data qubit of its group.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Circuit, DataSequence, Layout
from .walsh import alphas_to_thetas, cx_control_sequence


@dataclass(frozen=True)
class EncodingConfig:
    n_a: int
    n_d: int
    k: int  # symbol count (qcrank) or 2^bit_depth (qbart)
    mode: str = "qcrank"

    def __post_init__(self):
        if self.n_a < 1 or self.n_d < 1:
            raise ValueError("n_a and n_d must be >= 1")
        if self.mode not in ("qcrank", "qbart"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "qcrank" and self.k < 2:
            raise ValueError("qcrank needs at least 2 symbols")

    @property
    def bit_depth(self) -> int:
        return int(self.k - 1).bit_length() if self.mode == "qcrank" else self.n_d

    @property
    def capacity(self) -> int:
        """Number of values the circuit can hold."""
        return self.n_d * (1 << self.n_a) if self.mode == "qcrank" else 1 << self.n_a

    def layout(self) -> Layout:
        return Layout.standard(self.n_a, self.n_d)


def default_shifts(n_a: int, n_d: int) -> list[int]:
    """Data qubit j uses permutation shift j mod n_a."""
    return [j % n_a for j in range(n_d)]


def build_pucry(angles: np.ndarray, shifts: list[int] | None = None,
                circuit: Circuit | None = None) -> Circuit:
    """Parallel uniformly controlled Ry block on n_a + n_d qubits.

    `angles` has shape (2^n_a, n_d); column j drives data qubit n_a + j
    through a compact UCR with permutation shift shifts[j]. Data qubits are
    processed in groups of n_a so that the CX gates of one group occupy
    disjoint qubit pairs per layer, giving CX depth ceil(n_d/n_a) * 2^n_a.
    """
    angles = np.asarray(angles, dtype=float)
    if angles.ndim != 2:
        raise ValueError("angle grid must be 2-D (2^n_a x n_d)")
    n_addr_states, n_d = angles.shape
    n_a = n_addr_states.bit_length() - 1
    if (1 << n_a) != n_addr_states or n_a < 1:
        raise ValueError("angle grid row count must be a power of two >= 2")
    if shifts is None:
        shifts = default_shifts(n_a, n_d)
    if len(shifts) != n_d:
        raise ValueError("one shift per data qubit required")

    if circuit is None:
        circuit = Circuit(n_a + n_d)
    thetas = [alphas_to_thetas(angles[:, j], shifts[j]) for j in range(n_d)]
    controls = [cx_control_sequence(n_a, shifts[j]) for j in range(n_d)]
    for group_start in range(0, n_d, n_a):
        group = range(group_start, min(group_start + n_a, n_d))
        for i in range(n_addr_states):
            for j in group:
                circuit.ry(thetas[j][i], n_a + j)
                circuit.cx(controls[j][i], n_a + j)
    return circuit


def map_symbols_to_angles(data: DataSequence, k: int, n_a: int, n_d: int) -> np.ndarray:
    """Rotation-angle grid for a symbol sequence: alpha = pi * value / (k - 1).

    Symbols span [0, pi] inclusive; short sequences are padded with symbol 0.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    capacity = n_d * (1 << n_a)
    if len(data) > capacity:
        raise ValueError(f"sequence of {len(data)} values exceeds capacity {capacity}")
    values = np.zeros(capacity)
    values[: len(data)] = data.values
    if values.max(initial=0) >= k:
        raise ValueError("symbol value >= k")
    grid = values.reshape(n_d, 1 << n_a).T  # (i, j), column-major fill
    return np.pi * grid / (k - 1)


def build_qcrank(data: DataSequence, cfg: EncodingConfig) -> Circuit:
    """Hadamards on the address register followed by the pUCRy of the data angles."""
    grid = map_symbols_to_angles(data, cfg.k, cfg.n_a, cfg.n_d)
    circuit = Circuit(cfg.n_a + cfg.n_d)
    for q in range(cfg.n_a):
        circuit.h(q)
    build_pucry(grid, circuit=circuit)
    for q in range(cfg.n_a + cfg.n_d):
        circuit.measure(q)
    return circuit


def qbart_angle_grid(data: DataSequence, cfg: EncodingConfig) -> np.ndarray:
    """Angle grid with entry (i, j) = pi * bit_j(value_i), bit 0 most significant."""
    if len(data) > (1 << cfg.n_a):
        raise ValueError("sequence longer than address space")
    grid = np.zeros((1 << cfg.n_a, cfg.n_d))
    for i, v in enumerate(data.values):
        if v >= 1 << cfg.n_d:
            raise ValueError(f"value {v} overflows {cfg.n_d} data qubits")
        for j in range(cfg.n_d):
            grid[i, j] = np.pi * ((v >> (cfg.n_d - 1 - j)) & 1)
    return grid


def build_qbart(data: DataSequence, cfg: EncodingConfig, measure: bool = True) -> Circuit:
    """QCrank circuit with angles restricted to {0, pi}.

    In the noise-free case measuring yields |i> (x) |binary(value_i)>
    exactly. Pass measure=False to get the bare state-preparation block for
    circuits that post-process the data register.
    """
    grid = qbart_angle_grid(data, cfg)
    circuit = Circuit(cfg.n_a + cfg.n_d)
    for q in range(cfg.n_a):
        circuit.h(q)
    build_pucry(grid, circuit=circuit)
    if measure:
        for q in range(cfg.n_a + cfg.n_d):
            circuit.measure(q)
    return circuit
