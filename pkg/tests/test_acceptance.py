"""
Acceptance suite: one test per criterion, each emitting a PASS line.
Run with `pytest -v -s tests/test_acceptance.py` for the full transcript.
"""
import json
import math
import os
import subprocess
import sys
import time

import numpy as np

from oracles import block_diag_ucry
from qcrank import apps
from qcrank.core import DataSequence, circuit_cx_depth
from qcrank.decoder import (calibration_samples, decode_qbart, decode_qcrank,
                            fit_calibration)
from qcrank.encoder import (EncodingConfig, build_pucry, build_qbart,
                            build_qcrank)
from qcrank.planner import shots_for_circuit
from qcrank.sim import (H1_PROXY, IBMQ_PROXY, IDEAL, MINIMAL, circuit_unitary,
                        sample)
from qcrank.walsh import alphas_to_thetas, thetas_to_alphas

WORKLOAD_SEED = 5  # frozen benchmark workload: 128 random K=8 symbols on 4+8


def _benchmark_workload():
    rng = np.random.default_rng(WORKLOAD_SEED)
    values = [int(v) for v in rng.integers(0, 8, 128)]
    cfg = EncodingConfig(4, 8, 8)
    circ = build_qcrank(DataSequence(tuple(values), 3), cfg)
    grid = np.array(values).reshape(8, 16).T
    return values, cfg, circ, grid


def test_01_pucry_unitary_correctness():
    start = time.time()
    rng = np.random.default_rng(1)
    worst = 0.0
    for n_a in range(1, 5):
        for n_d in range(1, 4):
            for s in range(n_a):
                shifts = [(j + s) % n_a for j in range(n_d)]
                for _ in range(20):
                    grid = rng.uniform(0, np.pi, (1 << n_a, n_d))
                    u = circuit_unitary(build_pucry(grid, shifts=shifts))
                    worst = max(worst, np.abs(u - block_diag_ucry(grid)).max())
    elapsed = time.time() - start
    assert worst < 1e-10, worst
    assert elapsed < 60.0, elapsed
    print(f"\nACCEPTANCE 1 (pUCRy unitary, max err {worst:.2e}, {elapsed:.1f}s): PASS")


def test_02_cx_depth_formula():
    for n_a in range(1, 7):
        for n_d in range(1, 2 * n_a + 1):
            depth = circuit_cx_depth(build_pucry(np.zeros((1 << n_a, n_d))))
            assert depth == math.ceil(n_d / n_a) * (1 << n_a), (n_a, n_d, depth)
    assert circuit_cx_depth(build_pucry(np.zeros((16, 8)))) == 32
    assert circuit_cx_depth(build_pucry(np.zeros((8, 3)))) == 8
    print("\nACCEPTANCE 2 (CX-depth = ceil(n_d/n_a)*2^n_a, incl. 32 and 8): PASS")


def test_03_walsh_roundtrip():
    rng = np.random.default_rng(3)
    worst = 0.0
    for n_a in range(1, 9):
        alphas = rng.uniform(0, np.pi, 1 << n_a)
        for s in range(n_a):
            back = thetas_to_alphas(alphas_to_thetas(alphas, s), s)
            worst = max(worst, np.abs(back - alphas).max())
    assert worst < 1e-12, worst
    print(f"\nACCEPTANCE 3 (Walsh round-trip n_a<=8, max err {worst:.2e}): PASS")


def test_04_shot_planner():
    p1 = shots_for_circuit(32, 1, 1e-3)
    p8 = shots_for_circuit(32, 8, 1e-3)
    assert abs(p1.total_shots - 350) <= 0.15 * 350, p1.total_shots
    assert abs(p8.total_shots - 800) <= 0.15 * 800, p8.total_shots
    rng = np.random.default_rng(44)
    trials = 20000
    sigma = math.sqrt(1e-3 * (1 - 1e-3) / trials)
    rates = []
    for addresses, m_min in [(8, 1), (32, 1), (32, 8)]:
        plan = shots_for_circuit(addresses, m_min, 1e-3)
        draws = rng.multinomial(plan.total_shots,
                                [1 / addresses] * addresses, size=trials)
        fail = float((draws.min(axis=1) < m_min).mean())
        assert abs(fail - 1e-3) <= 3 * sigma, (addresses, m_min, fail)
        rates.append(fail)
    print(f"\nACCEPTANCE 4 (planner {p1.total_shots}/{p8.total_shots} shots, "
          f"MC failure rates {rates}): PASS")


def test_05_noise_free_qbart_end_to_end():
    start = time.time()
    rng = np.random.default_rng(55)
    values = [int(v) for v in rng.integers(0, 1024, 32)]  # 320 random bits
    cfg = EncodingConfig(5, 10, 2, "qbart")
    circ = build_qbart(DataSequence(tuple(values), 10), cfg)
    successes = []
    for seed in range(20):
        hist = sample(circ, 1000, IDEAL, seed=seed, layout=cfg.layout())
        report = decode_qbart(hist, 32, values)
        successes.append(report.rsf == 1.0)
    elapsed = time.time() - start
    assert all(successes)
    assert elapsed < 120.0, elapsed
    print(f"\nACCEPTANCE 5 (QBArt 5+10 ideal, RSF=1.0 on 20 seeds, {elapsed:.1f}s): PASS")


def test_06_application_oracles():
    rng = np.random.default_rng(66)
    letters = np.array(list("ATGC"))

    def codons(n):
        return [apps.encode_codon("".join(rng.choice(letters, 3))) for _ in range(n)]

    for trial in range(100):
        n_a = 1 + trial % 2
        length = 1 << n_a
        sa, sb = codons(length), codons(length)
        res = apps.run_dna_match(sa, sb, n_a, 200, IDEAL, seed=trial)
        truth = [(apps.classical_codon_match(a, b)[0] << 1)
                 | apps.classical_codon_match(a, b)[1] for a, b in zip(sa, sb)]
        assert list(res["report"].recovered.values) == truth, trial

    res = apps.run_hamming(list(range(8)), 3, 400, IDEAL, seed=0)
    assert list(res["report"].recovered.values) == [bin(v).count("1") for v in range(8)]

    for trial in range(100):
        series = [apps.SignedPair(int(a), int(b))
                  for a, b in rng.integers(-15, 16, (8, 2))]
        res = apps.run_conjugate(series, 300, IDEAL, seed=trial)
        assert res["decoded"] == [(p.a, -p.b) for p in series], trial
    print("\nACCEPTANCE 6 (DNA x100, Hamming x8, conjugate x100 oracle-exact): PASS")


def test_07_mitigation_properties():
    values, cfg, circ, grid = _benchmark_workload()
    models = [IDEAL, MINIMAL, H1_PROXY, IBMQ_PROXY]
    cal_rvf = {m.name: [] for m in models}
    raw_rvf = {m.name: [] for m in models}
    d_r = {m.name: [] for m in models}
    for seed in range(5):
        for m in models:
            hist = sample(circ, 3000, m, seed=seed, layout=cfg.layout())
            table = fit_calibration(calibration_samples(hist, grid, 8), 8)
            rep = decode_qcrank(hist, 8, 128, table, truth=values)
            raw = decode_qcrank(hist, 8, 128, None, truth=values)
            cal_rvf[m.name].append(rep.rvf)
            raw_rvf[m.name].append(raw.rvf)
            d_r[m.name].append(rep.dynamic_range)
    # (a) monotone degradation across the four models on every seed
    for seed in range(5):
        chain_rvf = [cal_rvf[m.name][seed] for m in models]
        chain_dr = [d_r[m.name][seed] for m in models]
        assert all(a >= b for a, b in zip(chain_rvf, chain_rvf[1:])), chain_rvf
        assert all(a >= b for a, b in zip(chain_dr, chain_dr[1:])), chain_dr
    # (b) calibration never reduces mean RVF on any noisy builtin model
    for m in (MINIMAL, H1_PROXY, IBMQ_PROXY):
        assert np.mean(cal_rvf[m.name]) >= np.mean(raw_rvf[m.name]), m.name
    # (c) ideal model at 3000 shots
    hist = sample(circ, 3000, IDEAL, seed=3, layout=cfg.layout())
    rep = decode_qcrank(hist, 8, 128, truth=values)
    assert rep.dynamic_range >= 0.98, rep.dynamic_range
    assert rep.rvf == 1.0, rep.rvf
    print(f"\nACCEPTANCE 7 (monotone degradation, calibration gain, "
          f"ideal D_r={rep.dynamic_range:.3f} RVF={rep.rvf}): PASS")


def test_08_image_roundtrip():
    img = apps.demo_image()  # 16 x 24 = 384 pixels
    assert img.size == 384
    rec, _ = apps.image_roundtrip(img, 4, 8, noise=IDEAL, shots=7000, seed=0)
    ideal_acc = apps.pixel_accuracy(img, rec)
    assert ideal_acc == 1.0, ideal_acc
    rec, _ = apps.image_roundtrip(img, 4, 8, noise=H1_PROXY, shots=7000, seed=0)
    h1_acc = apps.pixel_accuracy(img, rec)
    assert h1_acc >= 0.90, h1_acc
    print(f"\nACCEPTANCE 8 (image 384px: ideal {ideal_acc:.0%}, H1-proxy {h1_acc:.1%}): PASS")


def test_09_determinism(tmp_path):
    # library level: same seed -> identical histograms on the noisy kernel path
    cfg = EncodingConfig(2, 4, 2, "qbart")
    circ = build_qbart(DataSequence((3, 0, 15, 9), 4), cfg)
    a = sample(circ, 500, MINIMAL, seed=11, layout=cfg.layout())
    b = sample(circ, 500, MINIMAL, seed=11, layout=cfg.layout())
    assert a.counts == b.counts
    # process level: byte-identical reports under different thread settings
    inp = tmp_path / "in.json"
    inp.write_text(json.dumps({"values": [3, 0, 15, 9]}))
    blobs = []
    for threads in ("1", "4"):
        out = tmp_path / f"t{threads}"
        env = dict(os.environ, NUMBA_NUM_THREADS=threads)
        subprocess.run([sys.executable, "-m", "qcrank.cli", "run", "--mode", "qbart",
                        "--na", "2", "--nd", "4", "--shots", "400", "--noise",
                        "minimal", "--seed", "9", "--in", str(inp), "--out", str(out)],
                       check=True, env=env, capture_output=True)
        blobs.append(((out / "report.json").read_bytes(),
                      (out / "histogram.json").read_bytes()))
    assert blobs[0] == blobs[1]
    print("\nACCEPTANCE 9 (seeded runs byte-identical across thread counts): PASS")
