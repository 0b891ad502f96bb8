"""Stabiliser tableau simulation with destabilisers and outcome-branch enumeration."""

from __future__ import annotations

from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import BackendError, DimensionError
from ..pauli import PauliOperator, multiply, symplectic_inner
from .circuit import CPauli, Circuit, Decode, Gate, IfGate, Measure


def _g(x1, z1, x2, z2):
    """Exponent of i picked up when multiplying single-qubit Paulis (vectorised)."""
    x1 = x1.astype(np.int8)
    z1 = z1.astype(np.int8)
    x2 = x2.astype(np.int8)
    z2 = z2.astype(np.int8)
    return np.where(
        x1 & z1,
        z2 - x2,
        np.where(x1, z2 * (2 * x2 - 1), np.where(z1, x2 * (1 - 2 * z2), 0)),
    )


def _gf2_right_inverse(a: np.ndarray) -> np.ndarray:
    """Return D with ``a @ D.T == I (mod 2)`` for a full-row-rank ``a`` (n × m)."""
    n, m = a.shape
    aug = np.concatenate([a.copy() % 2, np.eye(n, dtype=np.uint8)], axis=1).astype(np.uint8)
    pivots = []
    row = 0
    for col in range(m):
        hits = np.flatnonzero(aug[row:, col]) + row
        if len(hits) == 0:
            continue
        p = hits[0]
        if p != row:
            aug[[row, p]] = aug[[p, row]]
        for r in np.flatnonzero(aug[:, col]):
            if r != row:
                aug[r] ^= aug[row]
        pivots.append(col)
        row += 1
        if row == n:
            break
    if row < n:
        raise DimensionError("generators are not independent")
    e = aug[:, m:]
    d = np.zeros((n, m), dtype=np.uint8)
    # Row i of the reduced system reads x[pivots[i]] = (E b)_i.
    for i in range(n):
        for k, col in enumerate(pivots):
            d[i, col] = e[k, i]
    return d


class TableauState:
    """Rows ``0..n-1`` are destabilisers, ``n..2n-1`` stabilisers; ``r`` holds signs."""

    def __init__(self, n: int, x: np.ndarray, z: np.ndarray, r: np.ndarray):
        self.n = n
        self.x = x
        self.z = z
        self.r = r

    @classmethod
    def zero(cls, n: int) -> "TableauState":
        x = np.zeros((2 * n, n), dtype=bool)
        z = np.zeros((2 * n, n), dtype=bool)
        for j in range(n):
            x[j, j] = True
            z[n + j, j] = True
        return cls(n, x, z, np.zeros(2 * n, dtype=bool))

    @classmethod
    def from_stabilisers(cls, stabs: Sequence[PauliOperator]) -> "TableauState":
        """State stabilised by ``stabs`` (n independent commuting Hermitian Paulis, signs kept)."""
        n = stabs[0].n
        if len(stabs) != n:
            raise DimensionError(f"need {n} generators, got {len(stabs)}")
        for a in stabs:
            if not a.is_hermitian():
                raise DimensionError(f"{a} is not Hermitian")
        sx = np.array([a.x_bits for a in stabs], dtype=np.uint8)
        sz = np.array([a.z_bits for a in stabs], dtype=np.uint8)
        # Destabiliser d_i: symplectic product with s_j equals delta_ij.
        d = _gf2_right_inverse(np.concatenate([sz, sx], axis=1))
        dest = [PauliOperator.from_arrays(d[i, :n], d[i, n:]) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if symplectic_inner(dest[i], dest[j]):
                    dest[j] = PauliOperator(n, dest[j].x ^ stabs[i].x, dest[j].z ^ stabs[i].z)
        rows = dest + list(stabs)
        x = np.array([p.x_bits for p in rows], dtype=bool)
        z = np.array([p.z_bits for p in rows], dtype=bool)
        r = np.array([p.phase == 2 for p in rows], dtype=bool)
        for i in range(n):
            for j in range(n):
                if symplectic_inner(dest[i], stabs[j]) != (i == j):
                    raise DimensionError("generators anticommute or are dependent")
        return cls(n, x, z, r)

    def copy(self) -> "TableauState":
        return TableauState(self.n, self.x.copy(), self.z.copy(), self.r.copy())

    def tensor(self, other: "TableauState") -> "TableauState":
        """This state on the low qubits, ``other`` on the high ones."""
        n, m = self.n, other.n
        N = n + m
        x = np.zeros((2 * N, N), dtype=bool)
        z = np.zeros((2 * N, N), dtype=bool)
        r = np.zeros(2 * N, dtype=bool)
        for src, off in ((self, 0), (other, n)):
            k = src.n
            for half in (0, 1):
                rows = slice(half * k, (half + 1) * k)
                dst = slice(half * N + off, half * N + off + k)
                x[dst, off:off + k] = src.x[rows]
                z[dst, off:off + k] = src.z[rows]
                r[dst] = src.r[rows]
        return TableauState(N, x, z, r)

    def stabilisers(self) -> List[PauliOperator]:
        n = self.n
        return [
            PauliOperator.from_arrays(self.x[n + i], self.z[n + i], 2 if self.r[n + i] else 0)
            for i in range(n)
        ]

    # gates --------------------------------------------------------------------

    def h(self, a: int):
        self.r ^= self.x[:, a] & self.z[:, a]
        self.x[:, a], self.z[:, a] = self.z[:, a].copy(), self.x[:, a].copy()

    def s(self, a: int):
        self.r ^= self.x[:, a] & self.z[:, a]
        self.z[:, a] ^= self.x[:, a]

    def cnot(self, a: int, b: int):
        self.r ^= self.x[:, a] & self.z[:, b] & ~(self.x[:, b] ^ self.z[:, a])
        self.x[:, b] ^= self.x[:, a]
        self.z[:, a] ^= self.z[:, b]

    def apply_gate(self, name: str, targets: Sequence[int]):
        t = targets
        if name == "H":
            self.h(t[0])
        elif name == "S":
            self.s(t[0])
        elif name == "SDG":
            self.s(t[0])
            self.r ^= self.x[:, t[0]]
        elif name == "X":
            self.r ^= self.z[:, t[0]]
        elif name == "Z":
            self.r ^= self.x[:, t[0]]
        elif name == "Y":
            self.r ^= self.x[:, t[0]] ^ self.z[:, t[0]]
        elif name == "SX":
            self.h(t[0])
            self.s(t[0])
            self.h(t[0])
        elif name == "CNOT":
            self.cnot(t[0], t[1])
        elif name == "CZ":
            self.h(t[1])
            self.cnot(t[0], t[1])
            self.h(t[1])
        elif name == "SWAP":
            self.cnot(t[0], t[1])
            self.cnot(t[1], t[0])
            self.cnot(t[0], t[1])
        elif name == "I":
            pass
        else:
            raise BackendError(f"gate {name} is not Clifford; use the dense simulator")

    def apply_pauli(self, p: PauliOperator):
        px = np.array(p.x_bits, dtype=bool)
        pz = np.array(p.z_bits, dtype=bool)
        anti = ((self.x & pz).sum(axis=1) + (self.z & px).sum(axis=1)) & 1
        self.r ^= anti.astype(bool)

    # measurement -----------------------------------------------------------------

    def _rowsum_into(self, targets: np.ndarray, i: int):
        """Row h <- row h * row i for every h in ``targets``."""
        if len(targets) == 0:
            return
        g = _g(self.x[i][None, :], self.z[i][None, :], self.x[targets], self.z[targets]).sum(axis=1)
        tot = 2 * self.r[targets].astype(np.int64) + 2 * int(self.r[i]) + g
        self.r[targets] = (tot % 4) == 2
        self.x[targets] ^= self.x[i]
        self.z[targets] ^= self.z[i]

    def is_random_z(self, a: int) -> bool:
        return bool(self.x[self.n:, a].any())

    def measure_z(self, a: int, outcome: Optional[int] = None, rng=None) -> Tuple[int, bool]:
        """Returns (outcome bit, was_random)."""
        n = self.n
        hits = np.flatnonzero(self.x[n:, a])
        if len(hits):
            p = n + hits[0]
            others = np.flatnonzero(self.x[:, a])
            others = others[others != p]
            self._rowsum_into(others, p)
            self.x[p - n], self.z[p - n], self.r[p - n] = self.x[p].copy(), self.z[p].copy(), self.r[p]
            self.x[p] = False
            self.z[p] = False
            self.z[p, a] = True
            if outcome is None:
                outcome = int(rng.integers(2)) if rng is not None else 0
            self.r[p] = bool(outcome)
            return int(outcome), True
        # Deterministic: accumulate the stabilisers paired with destabilisers touching a.
        sx = np.zeros(n, dtype=bool)
        sz = np.zeros(n, dtype=bool)
        sr = 0
        for i in np.flatnonzero(self.x[:n, a]):
            row = n + i
            g = int(_g(self.x[row], self.z[row], sx, sz).sum())
            sr = ((2 * sr + 2 * int(self.r[row]) + g) % 4) // 2
            sx ^= self.x[row]
            sz ^= self.z[row]
        return sr, False

    def measure(self, basis: str, a: int, outcome: Optional[int] = None, rng=None) -> Tuple[int, bool]:
        if basis == "Z":
            return self.measure_z(a, outcome, rng)
        self.h(a)
        res = self.measure_z(a, outcome, rng)
        self.h(a)
        return res

    def expectation(self, p: PauliOperator) -> int:
        """+1, -1 or 0 for a Hermitian Pauli."""
        n = self.n
        px = np.array(p.x_bits, dtype=bool)
        pz = np.array(p.z_bits, dtype=bool)
        anti = ((self.x & pz).sum(axis=1) + (self.z & px).sum(axis=1)) & 1
        if anti[n:].any():
            return 0
        acc = PauliOperator.identity(n)
        stabs = self.stabilisers()
        for i in np.flatnonzero(anti[:n]):
            acc = multiply(acc, stabs[i])
        if acc.x != p.x or acc.z != p.z:
            raise BackendError("tableau is inconsistent")
        return 1 if acc.phase == p.phase else -1


# circuit execution ------------------------------------------------------------------

def _run_classical(op, state: TableauState, record: Dict[str, int]):
    if isinstance(op, CPauli):
        if op.condition.evaluate(record):
            state.apply_pauli(op.pauli)
    elif isinstance(op, IfGate):
        if op.condition.evaluate(record):
            state.apply_gate(op.gate.name, op.gate.targets)
    elif isinstance(op, Decode):
        record[op.label] = op.evaluate(record)


def simulate_tableau(
    c: Circuit,
    initial: Optional[TableauState] = None,
    rng=None,
    forced: Optional[Dict[str, int]] = None,
) -> Tuple[TableauState, Dict[str, int]]:
    """Run ``c``; random outcomes come from ``forced`` by label, else ``rng``, else 0."""
    _check_clifford(c)
    state = (initial or TableauState.zero(c.n)).copy()
    if state.n != c.n:
        raise DimensionError("initial state has the wrong size")
    record: Dict[str, int] = {}
    forced = forced or {}
    for op in c.ops:
        if isinstance(op, Gate):
            state.apply_gate(op.name, op.targets)
        elif isinstance(op, Measure):
            bit, _ = state.measure(op.basis, op.target, forced.get(op.label), rng)
            record[op.label] = bit
        else:
            _run_classical(op, state, record)
    return state, record


def _check_clifford(c: Circuit):
    for op in c.ops:
        g = op if isinstance(op, Gate) else op.gate if isinstance(op, IfGate) else None
        if g is not None and g.name in ("T", "TDG"):
            raise BackendError("circuit contains T gates; use the dense simulator")


def enumerate_branches(
    c: Circuit, initial: Optional[TableauState] = None
) -> Iterator[Tuple[TableauState, Dict[str, int]]]:
    """Every final state over all outcomes of random measurements (depth-first).

    Branching copies the tableau only at random measurements, so prefixes
    are shared between branches.
    """
    _check_clifford(c)
    start = (initial or TableauState.zero(c.n)).copy()
    stack: List[Tuple[int, TableauState, Dict[str, int]]] = [(0, start, {})]
    ops = c.ops
    while stack:
        pc, state, record = stack.pop()
        while pc < len(ops):
            op = ops[pc]
            pc += 1
            if isinstance(op, Gate):
                state.apply_gate(op.name, op.targets)
            elif isinstance(op, Measure):
                if op.basis == "X":
                    state.h(op.target)
                if state.is_random_z(op.target):
                    other = state.copy()
                    other.measure_z(op.target, 1)
                    if op.basis == "X":
                        other.h(op.target)
                    rec1 = dict(record)
                    rec1[op.label] = 1
                    stack.append((pc, other, rec1))
                    bit, _ = state.measure_z(op.target, 0)
                else:
                    bit, _ = state.measure_z(op.target)
                if op.basis == "X":
                    state.h(op.target)
                record[op.label] = bit
            else:
                _run_classical(op, state, record)
        yield state, record
