"""
End-to-end pipelines: DNA pattern matching, 3-bit Hamming weight, complex
conjugation, binary image round-trip, and digitized-waveform storage. Each
quantum pipeline has a classical reference oracle used for verification.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Circuit, DataSequence, Layout, ShotHistogram
from .decoder import (RecoveryReport, calibration_samples, decode_qbart,
                      decode_qcrank, fit_calibration, rvf)
from .encoder import EncodingConfig, build_pucry, build_qbart, build_qcrank, \
    map_symbols_to_angles, qbart_angle_grid
from .sim import IDEAL, NoiseModel, sample

NUCLEOTIDE_CODE = {"A": 0b00, "T": 0b01, "G": 0b10, "C": 0b11}
_CODE_NUCLEOTIDE = {v: k for k, v in NUCLEOTIDE_CODE.items()}


@dataclass(frozen=True)
class Codon:
    """Three nucleotides packed into 6 bits, first letter most significant."""

    letters: str
    code: int


def encode_codon(letters: str) -> Codon:
    if len(letters) != 3 or any(ch not in NUCLEOTIDE_CODE for ch in letters):
        raise ValueError(f"invalid codon {letters!r}")
    code = 0
    for ch in letters:
        code = (code << 2) | NUCLEOTIDE_CODE[ch]
    return Codon(letters, code)


def decode_codon(code: int) -> Codon:
    if not 0 <= code < 64:
        raise ValueError("codon code out of range")
    letters = "".join(_CODE_NUCLEOTIDE[(code >> s) & 3] for s in (4, 2, 0))
    return Codon(letters, code)


def classical_codon_match(a: Codon, b: Codon) -> tuple[int, int]:
    """Reference XNOR/AND network: (p = a XOR b as 6 bits, m0 = all-match bit)."""
    p = a.code ^ b.code
    return p, int(p == 0)


def build_dna_match_circuit(seq_a: list[Codon], seq_b: list[Codon], n_a: int,
                            recycle: bool = True) -> tuple[Circuit, Layout]:
    """QBArt over stacked codon pairs followed by the XOR/Toffoli match logic.

    Data word per address: codonA in the high 6 bits (qubits d_0..d_5),
    codonB in the low 6 bits (d_6..d_11). The XOR bits p_i land on the
    codonA qubits; five recycled codonB qubits (Reset) aggregate the XNORs
    into the match bit m0. With recycle=False five fresh ancillas are used
    instead, for cross-checking the reset semantics.

    Measures address, p_0..p_5, and m0.
    """
    if len(seq_a) != len(seq_b):
        raise ValueError("sequences must have equal length")
    if len(seq_a) > 1 << n_a:
        raise ValueError("sequence longer than address space")
    values = [(a.code << 6) | b.code for a, b in zip(seq_a, seq_b)]
    cfg = EncodingConfig(n_a, 12, k=2, mode="qbart")
    grid = qbart_angle_grid(DataSequence(tuple(values), 12), cfg)

    width = n_a + 12 + (0 if recycle else 5)
    circ = Circuit(width)
    for q in range(n_a):
        circ.h(q)
    build_pucry(grid, circuit=circ)
    a_q = [n_a + i for i in range(6)]
    b_q = [n_a + 6 + i for i in range(6)]
    for i in range(6):
        circ.cx(b_q[i], a_q[i])          # p_i = a_i XOR b_i
    for q in a_q:
        circ.x(q)                         # a-register now holds the XNOR bits
    if recycle:
        anc = b_q[:5]
        for q in anc:
            circ.reset(q)
    else:
        anc = [n_a + 12 + i for i in range(5)]
    circ.ccx(a_q[0], a_q[1], anc[0])
    circ.ccx(a_q[2], a_q[3], anc[1])
    circ.ccx(a_q[4], a_q[5], anc[2])
    circ.ccx(anc[0], anc[1], anc[3])
    circ.ccx(anc[2], anc[3], anc[4])      # m0 = AND of all six XNOR bits
    for q in a_q:
        circ.x(q)                         # restore the measurable XOR bits
    for q in range(n_a):
        circ.measure(q)
    for q in a_q:
        circ.measure(q)
    circ.measure(anc[4])
    layout = Layout(n_a, 7, tuple(range(n_a)), tuple(range(n_a, n_a + 7)))
    return circ, layout


def run_dna_match(seq_a: list[Codon], seq_b: list[Codon], n_a: int, shots: int,
                  noise: NoiseModel = IDEAL, seed: int = 0) -> dict:
    """Full pipeline; recovered words are (p << 1) | m0 per address."""
    circ, layout = build_dna_match_circuit(seq_a, seq_b, n_a)
    hist = sample(circ, shots, noise, seed, layout)
    truth = [(classical_codon_match(a, b)[0] << 1) | classical_codon_match(a, b)[1]
             for a, b in zip(seq_a, seq_b)]
    report = decode_qbart(hist, len(seq_a), truth)
    matches = [w & 1 for w in report.recovered.values]
    xors = [w >> 1 for w in report.recovered.values]
    return {"report": report, "histogram": hist, "truth": truth,
            "match_bits": matches, "xor_bits": xors}


def dna_fixture() -> tuple[list[Codon], list[Codon]]:
    """Frozen 16-codon reference/query pair (synthetic genome snippet)."""
    seq_a = ["ATG", "TTT", "GGC", "CAT", "ACT", "GAA", "TGC", "CCA",
             "AAT", "GTC", "TAG", "CGG", "ATC", "TGA", "GCT", "CAC"]
    seq_b = ["ATG", "TTC", "GGC", "CAT", "ATT", "GAA", "TGC", "CGA",
             "AAT", "GTC", "TAC", "CGG", "AGC", "TGA", "GCT", "AAC"]
    return [encode_codon(s) for s in seq_a], [encode_codon(s) for s in seq_b]


def classical_hamming3(p: int) -> int:
    """Population count of a 3-bit word."""
    if not 0 <= p < 8:
        raise ValueError("p must fit in 3 bits")
    return bin(p).count("1")


def build_hamming_circuit(values: list[int], n_a: int) -> tuple[Circuit, Layout]:
    """QBArt(n_a, 3) plus one ancilla computing per-address Hamming weights.

    Measures address and the weight as a 2-bit word (s1 s0).
    """
    if len(values) > 1 << n_a:
        raise ValueError("sequence longer than address space")
    cfg = EncodingConfig(n_a, 3, k=2, mode="qbart")
    grid = qbart_angle_grid(DataSequence(tuple(values), 3), cfg)
    circ = Circuit(n_a + 4)
    for q in range(n_a):
        circ.h(q)
    build_pucry(grid, circuit=circ)
    p0, p1, p2, anc = n_a, n_a + 1, n_a + 2, n_a + 3
    circ.ccx(p1, p2, anc)   # partial weight of p1 + p2
    circ.cx(p1, p2)
    circ.ccx(p0, p2, anc)   # add p0
    circ.cx(p0, p2)
    for q in range(n_a):
        circ.measure(q)
    circ.measure(anc)       # s1 (MSB)
    circ.measure(p2)        # s0
    layout = Layout(n_a, 2, tuple(range(n_a)), (n_a, n_a + 1))
    return circ, layout


def run_hamming(values: list[int], n_a: int, shots: int,
                noise: NoiseModel = IDEAL, seed: int = 0) -> dict:
    circ, layout = build_hamming_circuit(values, n_a)
    hist = sample(circ, shots, noise, seed, layout)
    truth = [classical_hamming3(v) for v in values]
    report = decode_qbart(hist, len(values), truth)
    return {"report": report, "histogram": hist, "truth": truth}


@dataclass(frozen=True)
class SignedPair:
    """Real/imaginary sample of the complex series, 5-bit signed range."""

    a: int
    b: int

    def __post_init__(self):
        if abs(self.a) > 15 or abs(self.b) > 15:
            raise ValueError("components must lie in [-15, 15]")


def sample_complex_series(a: float = 15.0, b: float = -0.08, c: float = 0.55,
                          d: float = 0.0, length: int = 32) -> list[SignedPair]:
    """Attenuated oscillator a*exp((b + i*c)*t + d), rounded to signed 5-bit."""
    pairs = []
    for t in range(length):
        z = a * np.exp((b + 1j * c) * t + d)
        re, im = round(z.real), round(z.imag)
        if abs(re) > 15 or abs(im) > 15:
            raise ValueError(f"sample at t={t} overflows the 5-bit range")
        pairs.append(SignedPair(re, im))
    return pairs


def encode_signed5(v: int) -> int:
    """Signed 5-bit word, sign bit most significant, negatives as 1's complement."""
    if not -15 <= v <= 15:
        raise ValueError("value out of signed 5-bit range")
    return v if v >= 0 else 31 + v  # 31 + v == ~(-v) & 0b11111


def ones_complement_decode(word: int) -> int:
    """Inverse of encode_signed5; both zero words decode to 0."""
    if not 0 <= word < 32:
        raise ValueError("word must fit in 5 bits")
    return word if word < 16 else -((~word) & 0b11111)


def build_conjugate_circuit(series: list[SignedPair]) -> tuple[Circuit, Layout]:
    """QBArt(5, 10) storing (A_t, B_t) followed by X gates negating the B block."""
    if len(series) > 32:
        raise ValueError("series longer than 32 samples")
    n_a, n_d = 5, 10
    values = [(encode_signed5(p.a) << 5) | encode_signed5(p.b) for p in series]
    cfg = EncodingConfig(n_a, n_d, k=2, mode="qbart")
    circ = build_qbart(DataSequence(tuple(values), n_d), cfg, measure=False)
    for i in range(5):
        circ.x(n_a + 5 + i)  # one X layer flips B to its 1's complement = -B
    for q in range(n_a + n_d):
        circ.measure(q)
    return circ, Layout.standard(n_a, n_d)


def run_conjugate(series: list[SignedPair], shots: int,
                  noise: NoiseModel = IDEAL, seed: int = 0) -> dict:
    circ, layout = build_conjugate_circuit(series)
    hist = sample(circ, shots, noise, seed, layout)
    # the X layer maps the B word to its bitwise complement (1's complement -B)
    truth = [(encode_signed5(p.a) << 5) | (~encode_signed5(p.b) & 0b11111)
             for p in series]
    report = decode_qbart(hist, len(series), truth)
    decoded = [(ones_complement_decode(w >> 5), ones_complement_decode(w & 31))
               for w in report.recovered.values]
    return {"report": report, "histogram": hist, "truth": truth, "decoded": decoded}


def pack_pixels(pixels: np.ndarray) -> list[int]:
    """Pack 3 binary pixels per 3-bit symbol, first pixel most significant."""
    flat = np.asarray(pixels).reshape(-1).astype(int)
    if not np.isin(flat, (0, 1)).all():
        raise ValueError("pixels must be binary")
    padded = np.zeros(3 * math.ceil(flat.size / 3), dtype=int)
    padded[: flat.size] = flat
    triples = padded.reshape(-1, 3)
    return [int(4 * t[0] + 2 * t[1] + t[2]) for t in triples]


def unpack_pixels(symbols: list[int], n_pixels: int) -> np.ndarray:
    bits = []
    for s in symbols:
        bits.extend(((s >> 2) & 1, (s >> 1) & 1, s & 1))
    return np.array(bits[:n_pixels], dtype=int)


def image_roundtrip(pixels: np.ndarray, n_a: int, n_d: int, k: int = 8,
                    noise: NoiseModel = IDEAL, shots: int = 7000, seed: int = 0,
                    calibrate: bool = True) -> tuple[np.ndarray, RecoveryReport]:
    """Encode a binary image with QCrank, simulate, decode, and unpack.

    Pixels are flattened row-major and packed 3 per K=8 symbol. With
    calibrate=True the run is reanalyzed against its own ground truth to
    fit the adaptive thresholds before decoding.
    """
    pixels = np.asarray(pixels)
    capacity = 3 * n_d * (1 << n_a)
    if pixels.size > capacity:
        raise ValueError(f"{pixels.size} pixels exceed capacity {capacity} bits")
    symbols = pack_pixels(pixels)
    n_symbols = n_d * (1 << n_a)
    symbols = symbols + [0] * (n_symbols - len(symbols))
    data = DataSequence(tuple(symbols), 3)
    cfg = EncodingConfig(n_a, n_d, k, "qcrank")
    circ = build_qcrank(data, cfg)
    hist = sample(circ, shots, noise, seed, cfg.layout())
    table = None
    if calibrate:
        truth_grid = np.array(symbols).reshape(n_d, 1 << n_a).T
        samples = calibration_samples(hist, truth_grid, k)
        if all(samples[s] for s in range(k)):
            table = fit_calibration(samples, k)
        # else: not every symbol occurs, keep the ideal thresholds
    report = decode_qcrank(hist, k, n_symbols, table, truth=symbols)
    recovered = unpack_pixels(list(report.recovered.values), pixels.size)
    return recovered.reshape(pixels.shape), report


def pixel_accuracy(truth: np.ndarray, recovered: np.ndarray) -> float:
    return rvf(list(np.asarray(truth).reshape(-1)), list(np.asarray(recovered).reshape(-1)))


def demo_image(rows: int = 16, cols: int = 24) -> np.ndarray:
    """Procedural binary test image (border, diagonal stripes, solid block)."""
    img = np.zeros((rows, cols), dtype=int)
    img[0, :] = img[-1, :] = 1
    img[:, 0] = img[:, -1] = 1
    for r in range(rows):
        for c in range(cols):
            if (r + c) % 4 == 0:
                img[r, c] = 1
    img[rows // 3: 2 * rows // 3, cols // 3: cols // 2] = 1
    return img


def write_pbm(path, pixels: np.ndarray) -> None:
    pixels = np.asarray(pixels, dtype=int)
    with open(path, "w") as fh:
        fh.write(f"P1\n{pixels.shape[1]} {pixels.shape[0]}\n")
        for row in pixels:
            fh.write(" ".join(str(v) for v in row) + "\n")


def read_pbm(path) -> np.ndarray:
    with open(path) as fh:
        tokens = [t for line in fh
                  for t in line.split("#", 1)[0].split()]
    if not tokens or tokens[0] != "P1":
        raise ValueError("only ASCII PBM (P1) is supported")
    cols, rows = int(tokens[1]), int(tokens[2])
    bits = [int(t) for t in tokens[3:]]
    if len(bits) != rows * cols:
        raise ValueError("pixel count does not match header")
    return np.array(bits, dtype=int).reshape(rows, cols)


def synthetic_ecg(n: int = 64) -> np.ndarray:
    """One heartbeat: P wave, QRS complex, T wave as Gaussian bumps."""
    t = np.linspace(0.0, 1.0, n, endpoint=False)

    def bump(center, width, amp):
        return amp * np.exp(-(((t - center) / width) ** 2))

    wave = (bump(0.18, 0.05, 0.25)      # P
            + bump(0.36, 0.02, -0.15)   # Q
            + bump(0.40, 0.018, 1.0)    # R
            + bump(0.44, 0.02, -0.25)   # S
            + bump(0.62, 0.07, 0.35))   # T
    return wave


def digitize(wave: np.ndarray, bits: int = 6) -> list[int]:
    """Scale to the full unsigned range and round."""
    wave = np.asarray(wave, dtype=float)
    lo, hi = wave.min(), wave.max()
    if hi == lo:
        return [0] * wave.size
    levels = (1 << bits) - 1
    return [int(round(v)) for v in (wave - lo) / (hi - lo) * levels]


def run_ecg(wave: np.ndarray, shots: int, noise: NoiseModel = IDEAL,
            seed: int = 0, bits: int = 6) -> dict:
    """Digitize a waveform to bits-wide samples and store/recover it via QBArt."""
    values = digitize(wave, bits)
    n_a = max(1, (len(values) - 1).bit_length())
    cfg = EncodingConfig(n_a, bits, k=2, mode="qbart")
    circ = build_qbart(DataSequence(tuple(values), bits), cfg)
    hist = sample(circ, shots, noise, seed, cfg.layout())
    report = decode_qbart(hist, len(values), values)
    return {"report": report, "histogram": hist, "truth": values,
            "recovered": list(report.recovered.values)}
