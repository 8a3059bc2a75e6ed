"""
Recover data from shot histograms.

Angle recovery follows alpha = 2*arctan(sqrt(n1/n0)) per address and data
qubit. Symbols are assigned either through the ideal thresholds (midpoints
of the noise-free symbol angles) or through an adaptive calibration table
fitted from measured per-symbol angle averages. QBArt words are recovered
by majority voting over the data sub-strings observed at each address.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .core import DataSequence, ShotHistogram, bitstring_split


def marginal_counts(hist: ShotHistogram, data_qubit: int) -> dict[int, tuple[int, int]]:
    """Per-address (n0, n1) counts for one data bit, marginalized over the rest."""
    if hist.total == 0:
        raise ValueError("empty histogram")
    n_d = len(hist.layout.data_bits)
    if not 0 <= data_qubit < n_d:
        raise ValueError(f"data qubit {data_qubit} out of range")
    out: dict[int, list[int]] = {}
    shift = n_d - 1 - data_qubit
    for bits, c in hist.counts.items():
        addr, word = bitstring_split(bits, hist.layout)
        pair = out.setdefault(addr, [0, 0])
        pair[(word >> shift) & 1] += c
    return {a: (p[0], p[1]) for a, p in out.items()}


def recover_angle(n0: int, n1: int) -> float:
    """alpha = 2*arctan(sqrt(n1/n0)); exactly pi when n0 = 0."""
    if n0 < 0 or n1 < 0 or n0 + n1 == 0:
        raise ValueError("need at least one count")
    if n0 == 0:
        return math.pi
    return 2.0 * math.atan(math.sqrt(n1 / n0))


@dataclass(frozen=True)
class CalibrationTable:
    """Measured per-symbol angle means and the K-1 decision thresholds."""

    k: int
    means: tuple[float, ...]
    thresholds: tuple[float, ...]

    def __post_init__(self):
        if len(self.means) != self.k or len(self.thresholds) != self.k - 1:
            raise ValueError("need K means and K-1 thresholds")
        if list(self.thresholds) != sorted(self.thresholds):
            raise ValueError("thresholds must be nondecreasing")

    def to_json(self) -> str:
        return json.dumps({"k": self.k, "means": list(self.means),
                           "thresholds": list(self.thresholds)}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CalibrationTable":
        d = json.loads(text)
        return cls(d["k"], tuple(d["means"]), tuple(d["thresholds"]))


def ideal_calibration(k: int) -> CalibrationTable:
    """Thresholds at the midpoints of the noise-free symbol angles pi*i/(k-1)."""
    means = tuple(math.pi * i / (k - 1) for i in range(k))
    thr = tuple((means[i] + means[i + 1]) / 2.0 for i in range(k - 1))
    return CalibrationTable(k, means, thr)


def fit_calibration(samples_by_symbol: Mapping[int, Sequence[float]], k: int) -> CalibrationTable:
    """Calibration table from measured angles grouped by their true symbol.

    Thresholds sit halfway between consecutive symbol means; under heavy
    noise the means may be non-monotone, so the threshold list is sorted
    nondecreasing afterwards to keep the decoder a well-defined step
    function.
    """
    means = []
    for sym in range(k):
        vals = samples_by_symbol.get(sym)
        if not vals:
            raise ValueError(f"no calibration samples for symbol {sym}")
        means.append(float(np.mean(vals)))
    thr = sorted((means[i] + means[i + 1]) / 2.0 for i in range(k - 1))
    return CalibrationTable(k, tuple(means), tuple(thr))


def apply_calibration(alpha_meas: float, table: CalibrationTable) -> int:
    """Symbol whose half-open threshold interval contains the measured angle."""
    for j, tau in enumerate(table.thresholds):
        if alpha_meas < tau:
            return j
    return table.k - 1


def recovered_angles(hist: ShotHistogram) -> dict[tuple[int, int], float]:
    """Measured angle per (address, data qubit); addresses never seen are absent."""
    angles = {}
    for j in range(len(hist.layout.data_bits)):
        for addr, (n0, n1) in marginal_counts(hist, j).items():
            angles[(addr, j)] = recover_angle(n0, n1)
    return angles


def calibration_samples(hist: ShotHistogram, truth: np.ndarray, k: int) -> dict[int, list[float]]:
    """Group measured angles by the true symbol of their grid slot.

    `truth` is the encoded symbol grid of shape (2^n_a, n_d); this supports
    the reanalyze-the-same-run calibration workflow.
    """
    samples: dict[int, list[float]] = {s: [] for s in range(k)}
    for (addr, j), alpha in recovered_angles(hist).items():
        samples[int(truth[addr, j])].append(alpha)
    return samples


def majority_vote(hist: ShotHistogram) -> dict[int, int]:
    """Most frequent data word per observed address; ties go to the smaller word.

    Addresses never observed are simply absent from the result.
    """
    if hist.total == 0:
        raise ValueError("empty histogram")
    tally: dict[int, dict[int, int]] = {}
    for bits, c in hist.counts.items():
        addr, word = bitstring_split(bits, hist.layout)
        tally.setdefault(addr, {}).setdefault(word, 0)
        tally[addr][word] += c
    return {addr: min(words, key=lambda w: (-words[w], w)) for addr, words in tally.items()}


def dynamic_range(means: Sequence[float], k: int) -> float:
    """Spread of the first/last measured symbol means over the ideal spread."""
    if k < 2:
        raise ValueError("k must be >= 2")
    ideal_span = math.pi  # alpha(a_{K-1}) - alpha(a_0)
    return (means[k - 1] - means[0]) / ideal_span


def rvf(truth: Sequence[int], recovered: Sequence[int | None]) -> float:
    """Fraction of positions recovered correctly (missing counts as wrong)."""
    if len(truth) != len(recovered):
        raise ValueError("length mismatch")
    if not truth:
        raise ValueError("empty sequence")
    return sum(t == r for t, r in zip(truth, recovered)) / len(truth)


def rsf(per_trial_success: Sequence[bool]) -> float:
    """Fraction of trials in which the whole sequence was recovered correctly."""
    if not per_trial_success:
        raise ValueError("need at least one trial")
    return sum(bool(s) for s in per_trial_success) / len(per_trial_success)


@dataclass
class RecoveryReport:
    """Decoded sequence plus the three fidelity metrics for one run."""

    recovered: DataSequence
    dynamic_range: float | None
    rvf: float
    rsf: float
    missing_addresses: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "recovered": list(self.recovered.values),
            "bit_depth": self.recovered.bit_depth,
            "dynamic_range": self.dynamic_range,
            "rvf": self.rvf,
            "rsf": self.rsf,
            "missing_addresses": list(self.missing_addresses),
        }


def decode_qcrank(hist: ShotHistogram, k: int, length: int,
                  calibration: CalibrationTable | None = None,
                  truth: Sequence[int] | None = None) -> RecoveryReport:
    """Recover a symbol sequence from a QCrank histogram.

    Sequence position l maps to grid slot (l % 2^n_a, l // 2^n_a). With no
    calibration table the ideal thresholds are used. Metrics require
    `truth`; without it rvf/rsf are reported as 0 and D_r from the decoded
    symbols' measured means.
    """
    table = calibration if calibration is not None else ideal_calibration(k)
    n_addr = 1 << hist.layout.n_a
    angles = recovered_angles(hist)
    symbols: list[int | None] = []
    missing = []
    for pos in range(length):
        i, j = pos % n_addr, pos // n_addr
        alpha = angles.get((i, j))
        if alpha is None:
            symbols.append(None)
            missing.append(i)
        else:
            symbols.append(apply_calibration(alpha, table))
    bit_depth = max((k - 1).bit_length(), 1)
    values = DataSequence(tuple(0 if s is None else s for s in symbols), bit_depth)
    if truth is not None:
        per_symbol: dict[int, list[float]] = {s: [] for s in range(k)}
        for pos in range(length):
            i, j = pos % n_addr, pos // n_addr
            if (i, j) in angles:
                per_symbol[int(truth[pos])].append(angles[(i, j)])
        means = [float(np.mean(v)) if v else math.nan for v in per_symbol.values()]
        d_r = dynamic_range(means, k) if per_symbol[0] and per_symbol[k - 1] else None
        value_fid = rvf(list(truth), symbols)
        seq_fid = 1.0 if value_fid == 1.0 else 0.0
    else:
        d_r, value_fid, seq_fid = None, 0.0, 0.0
    return RecoveryReport(values, d_r, value_fid, seq_fid, tuple(sorted(set(missing))))


def decode_qbart(hist: ShotHistogram, length: int,
                 truth: Sequence[int] | None = None) -> RecoveryReport:
    """Recover a binary-word sequence from a QBArt histogram by majority voting."""
    words = majority_vote(hist)
    recovered: list[int | None] = [words.get(i) for i in range(length)]
    missing = tuple(i for i, w in enumerate(recovered) if w is None)
    bit_depth = len(hist.layout.data_bits)
    values = DataSequence(tuple(0 if w is None else w for w in recovered), bit_depth)
    if truth is not None:
        value_fid = rvf(list(truth), recovered)
        seq_fid = 1.0 if value_fid == 1.0 else 0.0
    else:
        value_fid, seq_fid = 0.0, 0.0
    return RecoveryReport(values, None, value_fid, seq_fid, missing)
