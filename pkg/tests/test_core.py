import numpy as np
import pytest

from qcrank.core import (Circuit, DataSequence, Gate, Layout, ShotHistogram,
                         bitstring_join, bitstring_split, circuit_cx_depth)
from qcrank.encoder import build_pucry


def test_gate_validation():
    Gate("H", (0,))
    Gate("RY", (2,), 0.5)
    with pytest.raises(ValueError):
        Gate("RZ", (0,))
    with pytest.raises(ValueError):
        Gate("CX", (1, 1))
    with pytest.raises(ValueError):
        Gate("RY", (0,))  # missing angle
    with pytest.raises(ValueError):
        Gate("H", (0,), 0.3)  # spurious angle
    with pytest.raises(ValueError):
        Gate("CCX", (0, 1))


def test_circuit_qubit_range():
    c = Circuit(2)
    with pytest.raises(ValueError):
        c.cx(0, 2)


def test_measure_clbit_unique():
    c = Circuit(2).measure(0)
    with pytest.raises(ValueError):
        c.measure(1, clbit=0)


def test_bitstring_split_examples():
    layout = Layout(2, 2, (0, 1), (2, 3))
    assert bitstring_split("0000", layout) == (0, 0)
    assert bitstring_split(bitstring_join(3, 2, layout), layout) == (3, 2)
    with pytest.raises(ValueError):
        bitstring_split("000", layout)


@pytest.mark.parametrize("address,word", [(0, 0), (3, 5), (2, 7), (1, 1)])
def test_bitstring_roundtrip(address, word):
    layout = Layout(2, 3, (0, 1), (2, 3, 4))
    assert bitstring_split(bitstring_join(address, word, layout), layout) == (address, word)


def test_cx_depth_empty():
    assert circuit_cx_depth(Circuit(3)) == 0


def test_cx_depth_pucry_cases():
    # single-UCR compact circuit at n_a=1 uses two CX gates
    assert circuit_cx_depth(build_pucry(np.zeros((2, 1)))) == 2
    # 4 address + 8 data shape
    assert circuit_cx_depth(build_pucry(np.zeros((16, 8)))) == 32


def test_cx_depth_concat_subadditive():
    a = build_pucry(np.random.default_rng(0).uniform(0, np.pi, (4, 2)))
    b = build_pucry(np.random.default_rng(1).uniform(0, np.pi, (4, 2)))
    joined = Circuit(a.width, list(a.gates) + list(b.gates))
    assert circuit_cx_depth(joined) <= circuit_cx_depth(a) + circuit_cx_depth(b)


def test_to_text_format():
    c = Circuit(2).h(0).ry(1.5, 1).cx(0, 1).measure(1)
    lines = c.to_text().strip().split("\n")
    assert lines[0] == "H q0"
    assert lines[1] == "RY(1.5) q1"
    assert lines[2] == "CX q0 q1"
    assert lines[3] == "MEASURE q1 -> c0"


def test_to_qasm():
    qasm = Circuit(2).h(0).cx(0, 1).reset(1).measure(0).to_qasm()
    assert "OPENQASM 2.0;" in qasm
    assert "cx q[0],q[1];" in qasm
    assert "reset q[1];" in qasm
    assert "measure q[0] -> c[0];" in qasm


def test_data_sequence_validation():
    DataSequence((0, 3), 2)
    with pytest.raises(ValueError):
        DataSequence((4,), 2)
    with pytest.raises(ValueError):
        DataSequence((0,), 0)


def test_layout_validation():
    with pytest.raises(ValueError):
        Layout(1, 1, (0,), (0,))
    layout = Layout.standard(2, 3)
    assert Layout.from_dict(layout.to_dict()) == layout


def test_histogram_validation():
    layout = Layout.standard(1, 1)
    h = ShotHistogram({"01": 3, "10": 2}, layout)
    assert h.total == 5
    assert ShotHistogram.from_dict(h.to_dict()).counts == h.counts
    with pytest.raises(ValueError):
        ShotHistogram({"011": 1}, layout)
    with pytest.raises(ValueError):
        ShotHistogram({"01": -1}, layout)
