import math

import numpy as np
import pytest

from qcrank import apps
from qcrank.core import circuit_cx_depth
from qcrank.sim import measured_probabilities

RNG = np.random.default_rng(77)


def random_codon():
    return apps.encode_codon("".join(RNG.choice(list("ATGC"), 3)))


def test_encode_codon_examples():
    assert apps.encode_codon("AAA").code == 0
    assert apps.encode_codon("ACT").code == 0b001101
    assert apps.encode_codon("ATG").code == 0b000110
    with pytest.raises(ValueError):
        apps.encode_codon("AXT")
    with pytest.raises(ValueError):
        apps.encode_codon("AT")


def test_decode_codon_roundtrip():
    for code in range(64):
        assert apps.encode_codon(apps.decode_codon(code).letters).code == code


def test_classical_codon_match():
    a = apps.encode_codon("ACT")
    assert apps.classical_codon_match(a, a) == (0, 1)
    b = apps.encode_codon("TGA")  # differs in every bit from ACT? check via oracle
    p, m0 = apps.classical_codon_match(a, b)
    assert p == a.code ^ b.code and m0 == 0
    c = apps.encode_codon("ATT")
    p, m0 = apps.classical_codon_match(a, c)
    assert p == 0b001000 and m0 == 0  # only the middle nucleotide differs


def test_dna_identical_sequences_all_match():
    seq = [random_codon() for _ in range(4)]
    res = apps.run_dna_match(seq, seq, 2, 200, seed=1)
    assert res["match_bits"] == [1, 1, 1, 1]
    assert all(x == 0 for x in res["xor_bits"])


def test_dna_pbits_zero_iff_match():
    seq_a, seq_b = apps.dna_fixture()
    res = apps.run_dna_match(seq_a, seq_b, 4, 600, seed=0)
    for a, b, p in zip(seq_a, seq_b, res["xor_bits"]):
        assert (p == 0) == (a.letters == b.letters)


def test_dna_fixture_matches_oracle():
    seq_a, seq_b = apps.dna_fixture()
    res = apps.run_dna_match(seq_a, seq_b, 4, 600, seed=0)
    assert res["report"].rvf == 1.0
    circ, _ = apps.build_dna_match_circuit(seq_a, seq_b, 4)
    assert circ.width == 16
    assert sum(g.kind == "RESET" for g in circ.gates) == 5


def test_dna_random_oracle_equivalence():
    for trial in range(25):
        sa = [random_codon() for _ in range(2)]
        sb = [random_codon() for _ in range(2)]
        res = apps.run_dna_match(sa, sb, 1, 120, seed=trial)
        truth = [(apps.classical_codon_match(a, b)[0] << 1)
                 | apps.classical_codon_match(a, b)[1] for a, b in zip(sa, sb)]
        assert list(res["report"].recovered.values) == truth


def test_dna_reset_recycling_equivalent_to_fresh_ancillas():
    sa = [random_codon() for _ in range(4)]
    sb = [random_codon() for _ in range(4)]
    recycled, _ = apps.build_dna_match_circuit(sa, sb, 2, recycle=True)
    fresh, _ = apps.build_dna_match_circuit(sa, sb, 2, recycle=False)
    assert np.abs(measured_probabilities(recycled)
                  - measured_probabilities(fresh)).max() < 1e-12


def test_dna_length_validation():
    seq = [random_codon() for _ in range(5)]
    with pytest.raises(ValueError):
        apps.build_dna_match_circuit(seq, seq, 2)
    with pytest.raises(ValueError):
        apps.build_dna_match_circuit(seq, seq[:4], 3)


@pytest.mark.parametrize("p,w", [(0b000, 0), (0b011, 2), (0b111, 3)])
def test_classical_hamming3_truth_table(p, w):
    assert apps.classical_hamming3(p) == w


def test_hamming_circuit_exhaustive():
    res = apps.run_hamming(list(range(8)), 3, 400, seed=0)
    assert list(res["report"].recovered.values) == [bin(v).count("1") for v in range(8)]


def test_hamming_all_zero():
    res = apps.run_hamming([0] * 4, 2, 200, seed=0)
    assert list(res["report"].recovered.values) == [0, 0, 0, 0]


def test_hamming_reference_layout():
    circ, _ = apps.build_hamming_circuit(list(range(8)) * 2, 4)
    assert circ.width == 8  # 4 address + 3 data + 1 ancilla
    assert circuit_cx_depth(circ) > 0


def test_sample_complex_series_properties():
    series = apps.sample_complex_series(c=0.0)
    assert all(p.b == 0 for p in series)
    mags = [abs(complex(p.a, p.b)) for p in apps.sample_complex_series()]
    assert mags[0] >= mags[-1]
    with pytest.raises(ValueError):
        apps.sample_complex_series(a=40.0)


def test_ones_complement():
    assert apps.ones_complement_decode(0b00000) == 0
    assert apps.ones_complement_decode(0b00101) == 5
    assert apps.ones_complement_decode(0b11010) == -5
    assert apps.ones_complement_decode(0b11111) == 0  # negative zero
    for v in range(-15, 16):
        assert apps.ones_complement_decode(apps.encode_signed5(v)) == v
    with pytest.raises(ValueError):
        apps.encode_signed5(16)


def test_conjugate_circuit_oracle():
    series = apps.sample_complex_series()
    res = apps.run_conjugate(series, 800, seed=0)
    assert res["decoded"] == [(p.a, -p.b) for p in series]
    assert res["report"].rvf == 1.0


def test_conjugate_zero_b():
    series = [apps.SignedPair(3, 0), apps.SignedPair(-7, 0)]
    res = apps.run_conjugate(series, 400, seed=1)
    assert res["decoded"] == [(3, 0), (-7, 0)]


def test_conjugate_reference_layout():
    circ, layout = apps.build_conjugate_circuit(apps.sample_complex_series())
    assert circ.width == 15 and layout.n_a == 5 and layout.n_d == 10


def test_pack_unpack_pixels():
    pixels = np.array([1, 0, 1, 1, 1, 0, 0])
    symbols = apps.pack_pixels(pixels)
    assert symbols == [0b101, 0b110, 0b000]
    assert np.array_equal(apps.unpack_pixels(symbols, 7), pixels)
    with pytest.raises(ValueError):
        apps.pack_pixels(np.array([2]))


def test_image_all_white_ideal():
    img = np.ones((4, 6), dtype=int)
    rec, report = apps.image_roundtrip(img, 2, 2, shots=3000, seed=0)
    assert apps.pixel_accuracy(img, rec) == 1.0


def test_image_capacity_error():
    with pytest.raises(ValueError):
        apps.image_roundtrip(np.ones((10, 10)), 1, 1)


def test_pbm_roundtrip(tmp_path):
    img = apps.demo_image(8, 12)
    path = tmp_path / "img.pbm"
    apps.write_pbm(path, img)
    assert np.array_equal(apps.read_pbm(path), img)


def test_read_pbm_rejects_binary_format(tmp_path):
    path = tmp_path / "bad.pbm"
    path.write_text("P4\n2 2\n")
    with pytest.raises(ValueError):
        apps.read_pbm(path)


def test_digitize():
    wave = np.array([0.0, 0.5, 1.0])
    assert apps.digitize(wave, 6) == [0, 32, 63]
    assert apps.digitize(np.zeros(4), 6) == [0, 0, 0, 0]


def test_ecg_ideal_roundtrip():
    res = apps.run_ecg(apps.synthetic_ecg(), 2000, seed=0)
    assert res["report"].rvf == 1.0
    assert len(res["truth"]) == 64
    assert max(res["truth"]) == 63 and min(res["truth"]) == 0
