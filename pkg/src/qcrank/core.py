"""
Gate-level circuit representation and bit conventions shared by all modules.

Conventions:
    - Qubits are zero-based. Address qubits come first (a_0 .. a_{n_a-1}),
      data qubits follow (d_0 .. d_{n_d-1}).
    - Within every measured bit-string, qubit 0 of a register is the
      most-significant bit of that register, and the address register is
      printed before the data register. This matches the ket notation
      |a_0 ... a_{n_a-1} d_0 ... d_{n_d-1}> read left to right.
    - Measure gates appear only at circuit end; mid-circuit measurement is
      not supported. Reset is a first-class gate (its semantics live in the
      simulator).

All types are treated as immutable after construction and are safe to share
across threads.
"""
from __future__ import annotations

from dataclasses import dataclass, field

GATE_KINDS = frozenset({"H", "X", "RY", "CX", "CCX", "RESET", "MEASURE"})
_ENTANGLING = ("CX", "CCX")


@dataclass(frozen=True)
class Gate:
    """One gate: kind, target qubits (controls first for CX/CCX), optional angle."""

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind} gate has repeated qubits {self.qubits}")
        if self.kind == "RY":
            if self.angle is None or not _finite(self.angle):
                raise ValueError("RY requires a finite angle")
        elif self.angle is not None:
            raise ValueError(f"{self.kind} takes no angle")
        n_expected = {"CX": 2, "CCX": 3}.get(self.kind, 1)
        if len(self.qubits) != n_expected:
            raise ValueError(f"{self.kind} expects {n_expected} qubits, got {self.qubits}")


def _finite(x: float) -> bool:
    return x == x and abs(x) != float("inf")


@dataclass
class Circuit:
    """Ordered gate list over a fixed-width qubit register.

    Built through the fluent helpers (h, x, ry, cx, ccx, reset, measure);
    once fully built it should be treated as read-only.
    """

    width: int
    gates: list[Gate] = field(default_factory=list)
    measured: list[tuple[int, int]] = field(default_factory=list)  # (qubit, clbit)

    def _check(self, *qubits: int) -> None:
        for q in qubits:
            if not 0 <= q < self.width:
                raise ValueError(f"qubit {q} out of range for width {self.width}")

    def append(self, gate: Gate) -> "Circuit":
        self._check(*gate.qubits)
        self.gates.append(gate)
        return self

    def h(self, q: int) -> "Circuit":
        return self.append(Gate("H", (q,)))

    def x(self, q: int) -> "Circuit":
        return self.append(Gate("X", (q,)))

    def ry(self, angle: float, q: int) -> "Circuit":
        return self.append(Gate("RY", (q,), float(angle)))

    def cx(self, control: int, target: int) -> "Circuit":
        return self.append(Gate("CX", (control, target)))

    def ccx(self, c1: int, c2: int, target: int) -> "Circuit":
        return self.append(Gate("CCX", (c1, c2, target)))

    def reset(self, q: int) -> "Circuit":
        return self.append(Gate("RESET", (q,)))

    def measure(self, q: int, clbit: int | None = None) -> "Circuit":
        self._check(q)
        if clbit is None:
            clbit = len(self.measured)
        if any(c == clbit for _, c in self.measured):
            raise ValueError(f"classical bit {clbit} already assigned")
        self.append(Gate("MEASURE", (q,)))
        self.measured.append((q, clbit))
        return self

    @property
    def num_clbits(self) -> int:
        return len(self.measured)

    def measured_qubits(self) -> list[int]:
        """Measured qubits ordered by classical bit index."""
        return [q for q, _ in sorted(self.measured, key=lambda qc: qc[1])]

    def to_text(self) -> str:
        """One gate per line, e.g. `RY(1.5707963) q0`, `CX q0 q3`."""
        lines = []
        for g in self.gates:
            if g.kind == "RY":
                lines.append(f"RY({g.angle!r}) q{g.qubits[0]}")
            elif g.kind == "MEASURE":
                q = g.qubits[0]
                clbit = next(c for qq, c in self.measured if qq == q)
                lines.append(f"MEASURE q{q} -> c{clbit}")
            else:
                lines.append(f"{g.kind} " + " ".join(f"q{q}" for q in g.qubits))
        return "\n".join(lines) + "\n"

    def to_qasm(self) -> str:
        """OpenQASM 2.0 export for interoperability."""
        lines = [
            "OPENQASM 2.0;",
            'include "qelib1.inc";',
            f"qreg q[{self.width}];",
        ]
        if self.measured:
            lines.append(f"creg c[{max(c for _, c in self.measured) + 1}];")
        for g in self.gates:
            if g.kind == "RY":
                lines.append(f"ry({g.angle!r}) q[{g.qubits[0]}];")
            elif g.kind == "MEASURE":
                q = g.qubits[0]
                clbit = next(c for qq, c in self.measured if qq == q)
                lines.append(f"measure q[{q}] -> c[{clbit}];")
            elif g.kind == "RESET":
                lines.append(f"reset q[{g.qubits[0]}];")
            else:
                args = ",".join(f"q[{q}]" for q in g.qubits)
                lines.append(f"{g.kind.lower()} {args};")
        return "\n".join(lines) + "\n"


def circuit_cx_depth(circuit: Circuit) -> int:
    """Critical-path length counting only CX/CCX layers.

    Gates on disjoint qubit sets may share a layer; scheduling is greedy
    as-soon-as-possible in gate order. Single-qubit gates are free.
    """
    depth = [0] * circuit.width
    total = 0
    for g in circuit.gates:
        if g.kind not in _ENTANGLING:
            continue
        layer = max(depth[q] for q in g.qubits) + 1
        for q in g.qubits:
            depth[q] = layer
        total = max(total, layer)
    return total


@dataclass(frozen=True)
class Layout:
    """Positions of the address and data registers in a measured bit-string."""

    n_a: int
    n_d: int
    address_bits: tuple[int, ...]
    data_bits: tuple[int, ...]

    def __post_init__(self):
        if self.n_a < 1 or self.n_d < 1:
            raise ValueError("n_a and n_d must be >= 1")
        if set(self.address_bits) & set(self.data_bits):
            raise ValueError("address_bits and data_bits overlap")

    @property
    def num_bits(self) -> int:
        return len(self.address_bits) + len(self.data_bits)

    @classmethod
    def standard(cls, n_a: int, n_d: int) -> "Layout":
        """Address bits first, then data bits, qubit 0 of each register as MSB."""
        return cls(n_a, n_d, tuple(range(n_a)), tuple(range(n_a, n_a + n_d)))

    def to_dict(self) -> dict:
        return {
            "n_a": self.n_a,
            "n_d": self.n_d,
            "address_bits": list(self.address_bits),
            "data_bits": list(self.data_bits),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Layout":
        return cls(d["n_a"], d["n_d"], tuple(d["address_bits"]), tuple(d["data_bits"]))


def bitstring_split(bits: str, layout: Layout) -> tuple[int, int]:
    """Split a measured bit-string into (address, data_word) integers.

    The first position listed in address_bits/data_bits is the MSB of the
    corresponding integer.
    """
    if len(bits) != layout.num_bits:
        raise ValueError(f"bit-string length {len(bits)} != layout width {layout.num_bits}")
    address = 0
    for pos in layout.address_bits:
        address = (address << 1) | (bits[pos] == "1")
    data_word = 0
    for pos in layout.data_bits:
        data_word = (data_word << 1) | (bits[pos] == "1")
    return address, data_word


def bitstring_join(address: int, data_word: int, layout: Layout) -> str:
    """Inverse of bitstring_split."""
    if not 0 <= address < 1 << len(layout.address_bits):
        raise ValueError("address out of range")
    if not 0 <= data_word < 1 << len(layout.data_bits):
        raise ValueError("data word out of range")
    out = [""] * layout.num_bits
    for k, pos in enumerate(layout.address_bits):
        out[pos] = "1" if (address >> (len(layout.address_bits) - 1 - k)) & 1 else "0"
    for k, pos in enumerate(layout.data_bits):
        out[pos] = "1" if (data_word >> (len(layout.data_bits) - 1 - k)) & 1 else "0"
    return "".join(out)


@dataclass(frozen=True)
class DataSequence:
    """A list of non-negative integers with a fixed bit depth."""

    values: tuple[int, ...]
    bit_depth: int

    def __post_init__(self):
        if self.bit_depth < 1:
            raise ValueError("bit_depth must be >= 1")
        for v in self.values:
            if not 0 <= v < (1 << self.bit_depth):
                raise ValueError(f"value {v} out of range for bit depth {self.bit_depth}")
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)


@dataclass
class ShotHistogram:
    """Map from measured bit-strings to occurrence counts, with its layout."""

    counts: dict[str, int]
    layout: Layout

    def __post_init__(self):
        nbits = self.layout.num_bits
        for bits, c in self.counts.items():
            if len(bits) != nbits:
                raise ValueError(f"bit-string {bits!r} does not match layout width {nbits}")
            if c < 0:
                raise ValueError("counts must be non-negative")

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_dict(self) -> dict:
        return {"layout": self.layout.to_dict(), "counts": dict(self.counts)}

    @classmethod
    def from_dict(cls, d: dict) -> "ShotHistogram":
        return cls(dict(d["counts"]), Layout.from_dict(d["layout"]))
