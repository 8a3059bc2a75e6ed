"""
Dense statevector simulation and shot sampling with proxy noise models.

The noise model mirrors common NISQ hardware summaries: a SPAM bit-flip at
readout, depolarizing noise after every gate (one strength for single-qubit
gates, one for CX/CCX), and amplitude damping whose per-gate damping
probability is 1 - exp(-1/(T1/duration)) for the gate class. Channels are
unraveled as stochastic trajectories, one pure-state trajectory per shot.

Sampling is deterministic given (circuit, shots, noise, seed): each shot
draws from its own counter-based random stream, so results do not depend on
execution order or thread count.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import Circuit, Layout, ShotHistogram

MAX_WIDTH = 26

_KIND_CODE = {"H": _kernels.G_H, "X": _kernels.G_X, "RY": _kernels.G_RY,
              "CX": _kernels.G_CX, "CCX": _kernels.G_CCX, "RESET": _kernels.G_RESET}


@dataclass(frozen=True)
class NoiseModel:
    """Per-gate error probabilities and coherence-to-duration ratios."""

    name: str
    spam_error: float
    u3_error: float
    cx_error: float
    t1_over_u3: float
    t1_over_cx: float

    def __post_init__(self):
        for p in (self.spam_error, self.u3_error, self.cx_error):
            if not 0.0 <= p <= 1.0:
                raise ValueError("error probabilities must be in [0, 1]")
        for r in (self.t1_over_u3, self.t1_over_cx):
            if not r > 0:
                raise ValueError("T1 ratios must be positive (may be inf)")

    @property
    def gamma_1q(self) -> float:
        return 0.0 if math.isinf(self.t1_over_u3) else 1.0 - math.exp(-1.0 / self.t1_over_u3)

    @property
    def gamma_2q(self) -> float:
        return 0.0 if math.isinf(self.t1_over_cx) else 1.0 - math.exp(-1.0 / self.t1_over_cx)

    @property
    def is_ideal(self) -> bool:
        return (self.spam_error == 0.0 and self.u3_error == 0.0 and self.cx_error == 0.0
                and self.gamma_1q == 0.0 and self.gamma_2q == 0.0)


IDEAL = NoiseModel("ideal", 0.0, 0.0, 0.0, math.inf, math.inf)
MINIMAL = NoiseModel("minimal", 1e-3, 1e-3, 1e-3, 1e5, 1e5)
H1_PROXY = NoiseModel("H1-proxy", 3e-3, 5e-5, 3e-3, 5000.0, 170.0)
IBMQ_PROXY = NoiseModel("IBMQ-proxy", 2.5e-2, 4e-4, 1.4e-2, 2000.0, 200.0)


def builtin_noise_models() -> list[NoiseModel]:
    return [IDEAL, MINIMAL, H1_PROXY, IBMQ_PROXY]


def noise_model_by_name(name: str) -> NoiseModel:
    for m in builtin_noise_models():
        if m.name == name:
            return m
    names = ", ".join(m.name for m in builtin_noise_models())
    raise KeyError(f"unknown noise model {name!r}; builtin models: {names}")


def _check_width(circuit: Circuit) -> None:
    if circuit.width > MAX_WIDTH:
        raise ValueError(f"width {circuit.width} exceeds dense limit {MAX_WIDTH}")


def _ry_matrix(angle: float) -> np.ndarray:
    c, s = math.cos(angle / 2.0), math.sin(angle / 2.0)
    return np.array([[c, -s], [s, c]], dtype=complex)


_H_MAT = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2.0)
_X_MAT = np.array([[0, 1], [1, 0]], dtype=complex)


def _apply_1q(state: np.ndarray, mat: np.ndarray, qubit: int, width: int) -> np.ndarray:
    # qubit q is tensor axis q of state reshaped to (2,) * width (+ batch axes)
    shaped = state.reshape((2,) * width + state.shape[1:])
    moved = np.moveaxis(shaped, qubit, 0)
    moved[:] = np.tensordot(mat, moved, axes=([1], [0]))
    return state


def _apply_controlled_x(state: np.ndarray, controls: tuple[int, ...], target: int,
                        width: int) -> np.ndarray:
    shaped = state.reshape((2,) * width + state.shape[1:])
    sel: list = [slice(None)] * shaped.ndim
    for c in controls:
        sel[c] = 1
    sel_t0 = list(sel)
    sel_t1 = list(sel)
    sel_t0[target] = 0
    sel_t1[target] = 1
    tmp = shaped[tuple(sel_t0)].copy()
    shaped[tuple(sel_t0)] = shaped[tuple(sel_t1)]
    shaped[tuple(sel_t1)] = tmp
    return state


def _reset_projected(state: np.ndarray, qubit: int, width: int) -> np.ndarray:
    shaped = state.reshape((2,) * width + state.shape[1:])
    sel: list = [slice(None)] * shaped.ndim
    sel[qubit] = 1
    shaped[tuple(sel)] = 0.0
    norm = np.linalg.norm(state.reshape(-1))
    if norm == 0.0:
        raise ValueError("reset removed all amplitude; state was pure |1> on that qubit")
    state /= norm
    return state


def statevector(circuit: Circuit) -> np.ndarray:
    """Exact noise-free final state, index convention: qubit 0 is the MSB.

    Reset projects the qubit to |0> deterministically and renormalizes,
    which makes the result reproducible for oracle use; the sampler instead
    uses measure-and-flip semantics per shot.
    """
    _check_width(circuit)
    state = np.zeros(1 << circuit.width, dtype=complex)
    state[0] = 1.0
    w = circuit.width
    for g in circuit.gates:
        if g.kind == "H":
            _apply_1q(state, _H_MAT, g.qubits[0], w)
        elif g.kind == "X":
            _apply_1q(state, _X_MAT, g.qubits[0], w)
        elif g.kind == "RY":
            _apply_1q(state, _ry_matrix(g.angle), g.qubits[0], w)
        elif g.kind == "CX":
            _apply_controlled_x(state, g.qubits[:1], g.qubits[1], w)
        elif g.kind == "CCX":
            _apply_controlled_x(state, g.qubits[:2], g.qubits[2], w)
        elif g.kind == "RESET":
            _reset_projected(state, g.qubits[0], w)
        # MEASURE gates are ignored here
    return state


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Dense unitary of a circuit without Reset/Measure gates (oracle helper)."""
    _check_width(circuit)
    dim = 1 << circuit.width
    mat = np.eye(dim, dtype=complex)
    w = circuit.width
    for g in circuit.gates:
        if g.kind == "H":
            _apply_1q(mat, _H_MAT, g.qubits[0], w)
        elif g.kind == "X":
            _apply_1q(mat, _X_MAT, g.qubits[0], w)
        elif g.kind == "RY":
            _apply_1q(mat, _ry_matrix(g.angle), g.qubits[0], w)
        elif g.kind == "CX":
            _apply_controlled_x(mat, g.qubits[:1], g.qubits[1], w)
        elif g.kind == "CCX":
            _apply_controlled_x(mat, g.qubits[:2], g.qubits[2], w)
        elif g.kind == "MEASURE":
            continue
        else:
            raise ValueError(f"{g.kind} has no unitary representation")
    return mat


def _circuit_arrays(circuit: Circuit):
    ops = [g for g in circuit.gates if g.kind != "MEASURE"]
    kinds = np.array([_KIND_CODE[g.kind] for g in ops], dtype=np.int64)
    q0 = np.array([g.qubits[0] for g in ops], dtype=np.int64)
    q1 = np.array([g.qubits[1] if len(g.qubits) > 1 else 0 for g in ops], dtype=np.int64)
    q2 = np.array([g.qubits[2] if len(g.qubits) > 2 else 0 for g in ops], dtype=np.int64)
    angles = np.array([g.angle if g.angle is not None else 0.0 for g in ops], dtype=np.float64)
    return kinds, q0, q1, q2, angles


def _bits_to_histogram(bits: np.ndarray, layout: Layout) -> ShotHistogram:
    weights = 1 << np.arange(bits.shape[1] - 1, -1, -1, dtype=np.int64)
    words = bits.astype(np.int64) @ weights
    uniq, counts = np.unique(words, return_counts=True)
    nb = bits.shape[1]
    return ShotHistogram(
        {format(wd, f"0{nb}b"): int(c) for wd, c in zip(uniq, counts)}, layout)


def _default_layout(circuit: Circuit) -> Layout:
    # Fallback when the caller does not supply one: everything is "data".
    n = circuit.num_clbits
    return Layout(1, max(n - 1, 1), (0,), tuple(range(1, n)))


_MAX_RESET_BRANCHES = 4096


def _ideal_basis_probs(circuit: Circuit) -> np.ndarray | None:
    """Exact noise-free basis-state probabilities, resets included.

    Reset is measure-and-discard, so each Reset splits a pure branch in
    two; the result is the weighted mixture over all branches. Returns
    None if the branch count would explode (caller falls back to the
    per-shot kernel).
    """
    w = circuit.width
    state = np.zeros(1 << w, dtype=complex)
    state[0] = 1.0
    branches: list[tuple[float, np.ndarray]] = [(1.0, state)]
    for g in circuit.gates:
        if g.kind == "MEASURE":
            continue
        if g.kind == "RESET":
            if 2 * len(branches) > _MAX_RESET_BRANCHES:
                return None
            q = g.qubits[0]
            split: list[tuple[float, np.ndarray]] = []
            for weight, vec in branches:
                shaped = vec.reshape((2,) * w)
                one = np.moveaxis(shaped, q, 0)[1].reshape(-1)
                p1 = float(np.vdot(one, one).real)
                if p1 < 1.0 - 1e-15:
                    kept = vec.copy()
                    _reset_projected(kept, q, w)
                    split.append((weight * (1.0 - p1), kept))
                if p1 > 1e-15:
                    flipped = vec.copy()
                    shaped = flipped.reshape((2,) * w)
                    moved = np.moveaxis(shaped, q, 0)
                    moved[0] = moved[1] / math.sqrt(p1)
                    moved[1] = 0.0
                    split.append((weight * p1, flipped))
            branches = split
            continue
        for weight, vec in branches:
            if g.kind == "H":
                _apply_1q(vec, _H_MAT, g.qubits[0], w)
            elif g.kind == "X":
                _apply_1q(vec, _X_MAT, g.qubits[0], w)
            elif g.kind == "RY":
                _apply_1q(vec, _ry_matrix(g.angle), g.qubits[0], w)
            elif g.kind == "CX":
                _apply_controlled_x(vec, g.qubits[:1], g.qubits[1], w)
            elif g.kind == "CCX":
                _apply_controlled_x(vec, g.qubits[:2], g.qubits[2], w)
    probs = np.zeros(1 << w)
    for weight, vec in branches:
        probs += weight * np.abs(vec) ** 2
    return probs


def measured_probabilities(circuit: Circuit) -> np.ndarray:
    """Exact noise-free distribution over measured words (reset mixture exact).

    Word bit order follows classical bit indices, as in sampled histograms.
    """
    _check_width(circuit)
    if not circuit.measured:
        raise ValueError("circuit has no measured qubits")
    probs = _ideal_basis_probs(circuit)
    if probs is None:
        raise ValueError("too many reset branches for exact enumeration")
    meas = circuit.measured_qubits()
    width = circuit.width
    idx = np.arange(probs.size)
    words = np.zeros(probs.size, dtype=np.int64)
    for m, q in enumerate(meas):
        words |= ((idx >> (width - 1 - q)) & 1) << (len(meas) - 1 - m)
    word_probs = np.bincount(words, weights=probs, minlength=1 << len(meas))
    return word_probs / word_probs.sum()


def _sample_ideal(circuit: Circuit, shots: int, seed: int, layout: Layout) -> ShotHistogram:
    word_probs = measured_probabilities(circuit)
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, word_probs)
    nb = len(circuit.measured_qubits())
    return ShotHistogram(
        {format(wd, f"0{nb}b"): int(c) for wd, c in enumerate(counts) if c > 0}, layout)


def _sample_spam_only(circuit: Circuit, shots: int, spam: float, seed: int,
                      layout: Layout) -> ShotHistogram:
    """Exact circuit distribution plus independent readout bit-flips."""
    word_probs = measured_probabilities(circuit)
    nb = len(circuit.measured_qubits())
    rng = np.random.default_rng(seed)
    words = rng.choice(word_probs.size, size=shots, p=word_probs)
    bits = (words[:, None] >> np.arange(nb - 1, -1, -1)) & 1
    bits ^= rng.random((shots, nb)) < spam
    return _bits_to_histogram(bits, layout)


def sample(circuit: Circuit, shots: int, noise: NoiseModel = IDEAL,
           seed: int = 0, layout: Layout | None = None) -> ShotHistogram:
    """Histogram of measured bit-strings from `shots` noisy trajectories."""
    _check_width(circuit)
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if not circuit.measured:
        raise ValueError("circuit has no measured qubits")
    if layout is None:
        layout = _default_layout(circuit)
    if layout.num_bits != circuit.num_clbits:
        raise ValueError("layout width does not match measured bit count")

    n_resets = sum(g.kind == "RESET" for g in circuit.gates)
    gate_noise_free = (noise.u3_error == 0.0 and noise.cx_error == 0.0
                       and noise.gamma_1q == 0.0 and noise.gamma_2q == 0.0)
    if gate_noise_free and (1 << min(n_resets, 20)) <= _MAX_RESET_BRANCHES:
        if noise.spam_error == 0.0:
            return _sample_ideal(circuit, shots, seed, layout)
        return _sample_spam_only(circuit, shots, noise.spam_error, seed, layout)

    kinds, q0, q1, q2, angles = _circuit_arrays(circuit)
    meas = np.array(circuit.measured_qubits(), dtype=np.int64)
    bits = _kernels.run_shots(circuit.width, kinds, q0, q1, q2, angles, meas,
                             noise.spam_error, noise.u3_error, noise.cx_error,
                             noise.gamma_1q, noise.gamma_2q, shots, seed)
    return _bits_to_histogram(bits, layout)
