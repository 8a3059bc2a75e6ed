"""
Numba kernels for per-shot noisy trajectory simulation.

State indexing: qubit 0 is the most significant bit of the state index, so
basis index = sum_q bit(q) << (width - 1 - q). Per-shot randomness comes
from a splitmix64 stream seeded by (seed, shot), making results independent
of execution order.

Gate codes: 0=H, 1=X, 2=RY, 3=CX, 4=CCX, 5=RESET.
"""
from __future__ import annotations

import numpy as np
from numba import njit

G_H, G_X, G_RY, G_CX, G_CCX, G_RESET = 0, 1, 2, 3, 4, 5

_SQRT1_2 = 1.0 / np.sqrt(2.0)


@njit(cache=True, inline="always")
def _mix(state):
    state = (state + np.uint64(0x9E3779B97F4A7C15)) & np.uint64(0xFFFFFFFFFFFFFFFF)
    z = state
    z = ((z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)) & np.uint64(0xFFFFFFFFFFFFFFFF)
    z = ((z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)) & np.uint64(0xFFFFFFFFFFFFFFFF)
    z = z ^ (z >> np.uint64(31))
    return state, z


@njit(cache=True, inline="always")
def _uniform(rng):
    rng[0], z = _mix(rng[0])
    return (z >> np.uint64(11)) * (1.0 / 9007199254740992.0)


@njit(cache=True)
def _apply_1q(state, m00, m01, m10, m11, mask):
    n = state.size
    for i in range(n):
        if i & mask == 0:
            j = i | mask
            a = state[i]
            b = state[j]
            state[i] = m00 * a + m01 * b
            state[j] = m10 * a + m11 * b


@njit(cache=True)
def _apply_x(state, mask):
    n = state.size
    for i in range(n):
        if i & mask == 0:
            j = i | mask
            state[i], state[j] = state[j], state[i]


@njit(cache=True)
def _apply_phase_flip(state, mask):
    n = state.size
    for i in range(n):
        if i & mask:
            state[i] = -state[i]


@njit(cache=True)
def _apply_y(state, mask):
    n = state.size
    for i in range(n):
        if i & mask == 0:
            j = i | mask
            a = state[i]
            b = state[j]
            state[i] = -1j * b
            state[j] = 1j * a


@njit(cache=True)
def _apply_cx(state, cmask, tmask):
    n = state.size
    for i in range(n):
        if (i & cmask) == cmask and i & tmask == 0:
            j = i | tmask
            state[i], state[j] = state[j], state[i]


@njit(cache=True)
def _prob_one(state, mask):
    p = 0.0
    for i in range(state.size):
        if i & mask:
            p += state[i].real ** 2 + state[i].imag ** 2
    return p


@njit(cache=True)
def _project(state, mask, outcome, norm):
    inv = 1.0 / np.sqrt(norm)
    for i in range(state.size):
        keep = (i & mask != 0) == (outcome == 1)
        state[i] = state[i] * inv if keep else 0.0


@njit(cache=True)
def _amp_damp(state, mask, gamma, rng):
    """Amplitude-damping trajectory step on one qubit."""
    p1 = _prob_one(state, mask)
    pj = gamma * p1
    if pj > 0.0 and _uniform(rng) < pj:
        # jump: |1> component decays to |0>
        inv = 1.0 / np.sqrt(p1)
        for i in range(state.size):
            if i & mask == 0:
                state[i] = state[i | mask] * inv
                state[i | mask] = 0.0
    else:
        keep = np.sqrt(1.0 - gamma)
        inv = 1.0 / np.sqrt(1.0 - pj)
        for i in range(state.size):
            if i & mask:
                state[i] = state[i] * keep * inv
            else:
                state[i] = state[i] * inv


@njit(cache=True)
def _random_pauli(state, mask, rng):
    r = _uniform(rng)
    if r < 1.0 / 3.0:
        _apply_x(state, mask)
    elif r < 2.0 / 3.0:
        _apply_y(state, mask)
    else:
        _apply_phase_flip(state, mask)


@njit(cache=True)
def _depolarize(state, mask, p, rng):
    """With probability p apply a uniformly random Pauli to the qubit."""
    if p > 0.0 and _uniform(rng) < p:
        _random_pauli(state, mask, rng)


@njit(cache=True)
def _reset(state, mask, rng):
    p1 = _prob_one(state, mask)
    if _uniform(rng) < p1:
        _project(state, mask, 1, p1)
        _apply_x(state, mask)
    else:
        _project(state, mask, 0, 1.0 - p1)


@njit(cache=True)
def _sample_index(state, rng):
    r = _uniform(rng)
    acc = 0.0
    last = 0
    for i in range(state.size):
        p = state[i].real ** 2 + state[i].imag ** 2
        if p > 0.0:
            acc += p
            last = i
            if r < acc:
                return i
    return last  # guard against rounding in the final bin


@njit(cache=True)
def run_shots(width, kinds, q0, q1, q2, angles, meas_qubits,
              spam, u3_err, cx_err, gamma_1q, gamma_2q,
              shots, seed):
    """Simulate `shots` independent noisy trajectories; returns measured bits."""
    dim = 1 << width
    nm = meas_qubits.size
    out = np.empty((shots, nm), dtype=np.uint8)
    state = np.empty(dim, dtype=np.complex128)
    rng = np.empty(1, dtype=np.uint64)
    base, _ = _mix(np.uint64(seed) ^ np.uint64(0xD1B54A32D192ED03))
    for shot in range(shots):
        rng[0] = base ^ (np.uint64(shot) * np.uint64(0x9E3779B97F4A7C15))
        state[:] = 0.0
        state[0] = 1.0
        for g in range(kinds.size):
            kind = kinds[g]
            if kind == G_CX or kind == G_CCX:
                t = q2[g] if kind == G_CCX else q1[g]
                tmask = 1 << (width - 1 - t)
                cmask = 1 << (width - 1 - q0[g])
                if kind == G_CCX:
                    cmask |= 1 << (width - 1 - q1[g])
                _apply_cx(state, cmask, tmask)
                # one noise event per gate, on a random involved qubit
                nq = 3 if kind == G_CCX else 2
                if cx_err > 0.0 and _uniform(rng) < cx_err:
                    pick = min(int(_uniform(rng) * nq), nq - 1)
                    hit = q2[g] if pick == 2 else (q1[g] if pick == 1 else q0[g])
                    _random_pauli(state, 1 << (width - 1 - hit), rng)
                if gamma_2q > 0.0:
                    pick = min(int(_uniform(rng) * nq), nq - 1)
                    hit = q2[g] if pick == 2 else (q1[g] if pick == 1 else q0[g])
                    _amp_damp(state, 1 << (width - 1 - hit), gamma_2q, rng)
            elif kind == G_RESET:
                mask = 1 << (width - 1 - q0[g])
                _reset(state, mask, rng)
            else:
                mask = 1 << (width - 1 - q0[g])
                if kind == G_H:
                    _apply_1q(state, _SQRT1_2 + 0j, _SQRT1_2 + 0j,
                              _SQRT1_2 + 0j, -_SQRT1_2 + 0j, mask)
                elif kind == G_X:
                    _apply_x(state, mask)
                else:  # RY
                    c = np.cos(angles[g] / 2.0)
                    s = np.sin(angles[g] / 2.0)
                    _apply_1q(state, c + 0j, -s + 0j, s + 0j, c + 0j, mask)
                _depolarize(state, mask, u3_err, rng)
                if gamma_1q > 0.0:
                    _amp_damp(state, mask, gamma_1q, rng)
        idx = _sample_index(state, rng)
        for m in range(nm):
            bit = (idx >> (width - 1 - meas_qubits[m])) & 1
            if spam > 0.0 and _uniform(rng) < spam:
                bit = 1 - bit
            out[shot, m] = bit
    return out
