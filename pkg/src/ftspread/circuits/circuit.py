"""Gate-list IR shared by the tableau and dense simulators, plus its text format.

Text format (qubits 1-based, one op per line, ``#`` starts a comment)::

    QUBITS 14
    H 1
    CNOT 1 8
    T 3
    MEASURE Z 1 m1
    DECODE lz in=m1,m2,m3 checks=110,011 logical=111
    CPAULI m1^lz X8X9X10
    IF lz S 9
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from ..errors import DimensionError, PauliParseError, UnsupportedError
from ..pauli import CLIFFORD_GATES, GATE_ARITY, CliffordMap, PauliOperator, compose, gate_map, pauli_from_string, pauli_to_string

NON_CLIFFORD = {"T": 1, "TDG": 1}
ALL_GATES = {**GATE_ARITY, **NON_CLIFFORD}


@dataclass(frozen=True)
class Condition:
    """XOR of measurement labels, plus a constant bit."""

    labels: Tuple[str, ...] = ()
    constant: int = 0

    def evaluate(self, record: Dict[str, int]) -> int:
        v = self.constant
        for lab in self.labels:
            v ^= record[lab]
        return v

    @classmethod
    def parse(cls, text: str) -> "Condition":
        labels, const = [], 0
        for tok in text.split("^"):
            tok = tok.strip()
            if tok in ("0", "1"):
                const ^= int(tok)
            elif tok:
                labels.append(tok)
        return cls(tuple(labels), const)

    def __str__(self) -> str:
        parts = list(self.labels) + ([str(self.constant)] if self.constant or not self.labels else [])
        return "^".join(parts)


@dataclass(frozen=True)
class Gate:
    name: str
    targets: Tuple[int, ...]


@dataclass(frozen=True)
class Measure:
    basis: str
    target: int
    label: str


@dataclass(frozen=True)
class CPauli:
    condition: Condition
    pauli: PauliOperator


@dataclass(frozen=True)
class IfGate:
    condition: Condition
    gate: Gate


@dataclass(frozen=True)
class Decode:
    """Classical decode of a qubitwise readout into one logical bit.

    ``checks`` and ``logical`` are bitmasks over ``inputs``. The minimum-weight
    flip pattern consistent with the check parities is removed before taking
    the logical parity.
    """

    label: str
    inputs: Tuple[str, ...]
    checks: Tuple[int, ...]
    logical: int

    def evaluate(self, record: Dict[str, int]) -> int:
        bits = 0
        for j, lab in enumerate(self.inputs):
            bits |= record[lab] << j
        syn = tuple((c & bits).bit_count() & 1 for c in self.checks)
        flip = _classical_table(self.checks, len(self.inputs)).get(syn, 0)
        return ((bits ^ flip) & self.logical).bit_count() & 1


_TABLES: Dict[Tuple[Tuple[int, ...], int], Dict[tuple, int]] = {}


def _classical_table(checks: Tuple[int, ...], n: int) -> Dict[tuple, int]:
    key = (checks, n)
    table = _TABLES.get(key)
    if table is None:
        table = {}
        target = 1 << len(checks)
        for w in range(n + 1):
            for qs in itertools.combinations(range(n), w):
                flip = sum(1 << q for q in qs)
                syn = tuple((c & flip).bit_count() & 1 for c in checks)
                table.setdefault(syn, flip)
            if len(table) == target:
                break
        _TABLES[key] = table
    return table


Op = Union[Gate, Measure, CPauli, IfGate, Decode]


@dataclass
class Circuit:
    n: int
    ops: List[Op] = field(default_factory=list)

    # builders ---------------------------------------------------------------

    def gate(self, name: str, *targets: int) -> "Circuit":
        name = name.upper()
        if name not in ALL_GATES:
            raise UnsupportedError(f"unknown gate {name}")
        if len(targets) != ALL_GATES[name]:
            raise DimensionError(f"{name} takes {ALL_GATES[name]} targets")
        self._check(targets)
        if len(set(targets)) != len(targets):
            raise DimensionError(f"{name} targets must be distinct")
        self.ops.append(Gate(name, tuple(targets)))
        return self

    def measure(self, basis: str, target: int, label: str) -> "Circuit":
        if basis not in ("X", "Z"):
            raise UnsupportedError("measurement basis must be X or Z")
        self._check([target])
        self.ops.append(Measure(basis, target, label))
        return self

    def cpauli(self, condition: Union[str, Condition], pauli: PauliOperator) -> "Circuit":
        if pauli.n != self.n:
            raise DimensionError("correction acts on the wrong register")
        cond = Condition.parse(condition) if isinstance(condition, str) else condition
        self.ops.append(CPauli(cond, pauli))
        return self

    def if_gate(self, condition: Union[str, Condition], name: str, *targets: int) -> "Circuit":
        cond = Condition.parse(condition) if isinstance(condition, str) else condition
        name = name.upper()
        self._check(targets)
        self.ops.append(IfGate(cond, Gate(name, tuple(targets))))
        return self

    def decode(self, label: str, inputs: Sequence[str], checks: Sequence[int], logical: int) -> "Circuit":
        self.ops.append(Decode(label, tuple(inputs), tuple(checks), logical))
        return self

    def extend(self, other: "Circuit", offset: int = 0) -> "Circuit":
        """Append ``other``'s gates shifted by ``offset`` (unitary ops only)."""
        for op in other.ops:
            if not isinstance(op, Gate):
                raise UnsupportedError("only unitary circuits can be spliced")
            self.gate(op.name, *(t + offset for t in op.targets))
        return self

    def _check(self, targets: Iterable[int]):
        for t in targets:
            if not 0 <= t < self.n:
                raise DimensionError(f"qubit {t + 1} outside register of {self.n}")

    # queries ------------------------------------------------------------------

    @property
    def is_unitary(self) -> bool:
        return all(isinstance(op, Gate) for op in self.ops)

    @property
    def is_clifford(self) -> bool:
        return all(not isinstance(op, (Gate, IfGate)) or _gate_of(op).name in CLIFFORD_GATES for op in self.ops)

    def count(self, name: str) -> int:
        return sum(1 for op in self.ops if isinstance(op, Gate) and op.name == name)

    def validate_labels(self):
        defined = set()
        for op in self.ops:
            if isinstance(op, Measure):
                defined.add(op.label)
            elif isinstance(op, Decode):
                missing = [l for l in op.inputs if l not in defined]
                if missing:
                    raise UnsupportedError(f"labels {missing} used before definition")
                defined.add(op.label)
            elif isinstance(op, (CPauli, IfGate)):
                missing = [l for l in op.condition.labels if l not in defined]
                if missing:
                    raise UnsupportedError(f"labels {missing} used before definition")

    def to_clifford_map(self) -> CliffordMap:
        if not self.is_unitary or not self.is_clifford:
            raise UnsupportedError("only measurement-free Clifford circuits convert to a map")
        m = CliffordMap.identity(self.n)
        for op in self.ops:
            m = compose(gate_map(op.name, self.n, op.targets), m)
        return m

    def inverse(self) -> "Circuit":
        if not self.is_unitary:
            raise UnsupportedError("only unitary circuits can be inverted")
        inv = {"S": "SDG", "SDG": "S", "T": "TDG", "TDG": "T"}
        out = Circuit(self.n)
        for op in reversed(self.ops):
            out.gate(inv.get(op.name, op.name), *op.targets)
            if op.name == "SX":
                # SX has order 4, so its inverse is X·SX.
                out.gate("X", *op.targets)
        return out

    # text I/O -------------------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"QUBITS {self.n}"]
        for op in self.ops:
            if isinstance(op, Gate):
                lines.append(" ".join([op.name] + [str(t + 1) for t in op.targets]))
            elif isinstance(op, Measure):
                lines.append(f"MEASURE {op.basis} {op.target + 1} {op.label}")
            elif isinstance(op, CPauli):
                lines.append(f"CPAULI {op.condition} {pauli_to_string(op.pauli, sparse=True)}")
            elif isinstance(op, IfGate):
                g = op.gate
                lines.append(" ".join(["IF", str(op.condition), g.name] + [str(t + 1) for t in g.targets]))
            elif isinstance(op, Decode):
                width = len(op.inputs)
                bits = lambda v: "".join(str((v >> j) & 1) for j in range(width))
                lines.append(
                    f"DECODE {op.label} in={','.join(op.inputs)} "
                    f"checks={','.join(bits(c) for c in op.checks) or '-'} logical={bits(op.logical)}"
                )
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Circuit":
        circ: Optional[Circuit] = None
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, *rest = line.split()
            head = head.upper()
            try:
                if head == "QUBITS":
                    circ = cls(int(rest[0]))
                    continue
                if circ is None:
                    raise PauliParseError("QUBITS line must come first", 0)
                if head == "MEASURE":
                    circ.measure(rest[0].upper(), int(rest[1]) - 1, rest[2])
                elif head == "CPAULI":
                    circ.cpauli(rest[0], pauli_from_string(" ".join(rest[1:]), circ.n))
                elif head == "IF":
                    circ.if_gate(rest[0], rest[1], *(int(t) - 1 for t in rest[2:]))
                elif head == "DECODE":
                    kw = dict(tok.split("=", 1) for tok in rest[1:])
                    inputs = kw["in"].split(",")
                    frombits = lambda s: sum(int(ch) << j for j, ch in enumerate(s))
                    checks = [] if kw["checks"] == "-" else [frombits(c) for c in kw["checks"].split(",")]
                    circ.decode(rest[0], inputs, checks, frombits(kw["logical"]))
                else:
                    circ.gate(head, *(int(t) - 1 for t in rest))
            except (IndexError, ValueError, KeyError) as exc:
                raise PauliParseError(f"line {lineno}: cannot parse {raw.strip()!r} ({exc})", lineno) from exc
            except PauliParseError as exc:
                raise PauliParseError(f"line {lineno}: {exc}", lineno) from exc
        if circ is None:
            raise PauliParseError("empty circuit text", 0)
        circ.validate_labels()
        return circ


def _gate_of(op) -> Gate:
    return op if isinstance(op, Gate) else op.gate


def cnot_ladder(n: int) -> Circuit:
    c = Circuit(n)
    for j in range(n - 1):
        c.gate("CNOT", j, j + 1)
    return c


def transversal(n: int, name: str) -> Circuit:
    c = Circuit(n)
    for j in range(n):
        c.gate(name, j)
    return c
