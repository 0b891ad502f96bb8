"""State-vector simulation for small registers; qubit j is bit j of the basis index."""

from __future__ import annotations

from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import BackendError, CapacityError, DimensionError
from ..pauli import PauliOperator
from .circuit import CPauli, Circuit, Decode, Gate, IfGate, Measure

MAX_QUBITS = 22
_R2 = 1 / np.sqrt(2)
SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) * _R2,
    "S": np.diag([1, 1j]).astype(complex),
    "SDG": np.diag([1, -1j]).astype(complex),
    "T": np.diag([1, np.exp(1j * np.pi / 4)]),
    "TDG": np.diag([1, np.exp(-1j * np.pi / 4)]),
    "SX": np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex) / 2,
}


class DenseState:
    def __init__(self, n: int, amplitudes: np.ndarray):
        if n > MAX_QUBITS:
            raise CapacityError(f"{n} qubits exceeds the dense limit of {MAX_QUBITS}; use a smaller code")
        if amplitudes.shape != (1 << n,):
            raise DimensionError("amplitude vector has the wrong length")
        self.n = n
        self.psi = amplitudes.astype(complex)

    @classmethod
    def zero(cls, n: int) -> "DenseState":
        if n > MAX_QUBITS:
            raise CapacityError(f"{n} qubits exceeds the dense limit of {MAX_QUBITS}; use a smaller code")
        psi = np.zeros(1 << n, dtype=complex)
        psi[0] = 1
        return cls(n, psi)

    @classmethod
    def from_stabilisers(cls, stabs: Sequence[PauliOperator], seed: int = 0) -> "DenseState":
        """Project a fixed random vector onto the joint +1 eigenspace (signs respected)."""
        n = stabs[0].n
        rng = np.random.default_rng(seed)
        psi = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        st = cls(n, psi)
        for s in stabs:
            st.psi = (st.psi + st.apply_pauli_copy(s)) / 2
        norm = np.linalg.norm(st.psi)
        if norm < 1e-12:
            raise DimensionError("stabilisers have no common +1 eigenstate")
        st.psi /= norm
        return st

    def copy(self) -> "DenseState":
        return DenseState(self.n, self.psi.copy())

    def tensor(self, other: "DenseState") -> "DenseState":
        """This state on the low qubits, ``other`` on the high ones."""
        return DenseState(self.n + other.n, np.kron(other.psi, self.psi))

    def norm(self) -> float:
        return float(np.linalg.norm(self.psi))

    # gates ----------------------------------------------------------------------

    def _view(self) -> np.ndarray:
        return self.psi.reshape((2,) * self.n)

    def apply_single(self, u: np.ndarray, q: int):
        axis = self.n - 1 - q
        v = np.moveaxis(self._view(), axis, 0)
        v = np.tensordot(u, v, axes=(1, 0))
        self.psi = np.moveaxis(v, 0, axis).reshape(-1)

    def apply_gate(self, name: str, targets: Sequence[int]):
        if name in SINGLE:
            self.apply_single(SINGLE[name], targets[0])
            return
        idx = np.arange(1 << self.n)
        a, b = targets
        if name == "CNOT":
            sel = ((idx >> a) & 1) == 1
            perm = np.where(sel, idx ^ (1 << b), idx)
            self.psi = self.psi[perm]
        elif name == "CZ":
            sel = (((idx >> a) & 1) & ((idx >> b) & 1)) == 1
            self.psi = np.where(sel, -self.psi, self.psi)
        elif name == "SWAP":
            ba, bb = (idx >> a) & 1, (idx >> b) & 1
            perm = idx ^ ((ba ^ bb) << a) ^ ((ba ^ bb) << b)
            self.psi = self.psi[perm]
        else:
            raise BackendError(f"unknown gate {name}")

    def apply_pauli_copy(self, p: PauliOperator) -> np.ndarray:
        """``p |psi>`` as a new vector (phase included)."""
        idx = np.arange(1 << self.n, dtype=np.uint64)
        src = idx ^ np.uint64(p.x)
        # Y_j = i X_j Z_j: apply Z^z, then X^x, then the collected power of i.
        phase = (1j) ** ((p.phase + (p.x & p.z).bit_count()) % 4)
        zsign = 1 - 2 * (np.bitwise_count(src & np.uint64(p.z)).astype(np.int64) & 1)
        return phase * zsign * self.psi[src.astype(np.int64)]

    def apply_pauli(self, p: PauliOperator):
        self.psi = self.apply_pauli_copy(p)

    def expectation(self, p: PauliOperator) -> complex:
        return complex(np.vdot(self.psi, self.apply_pauli_copy(p)))

    # measurement --------------------------------------------------------------------

    def prob_one(self, basis: str, q: int) -> float:
        st = self
        if basis == "X":
            st = self.copy()
            st.apply_single(SINGLE["H"], q)
        idx = np.arange(1 << self.n)
        sel = ((idx >> q) & 1) == 1
        return float(np.sum(np.abs(st.psi[sel]) ** 2))

    def project(self, basis: str, q: int, outcome: int) -> float:
        """Project onto the outcome, renormalise, return its probability."""
        if basis == "X":
            self.apply_single(SINGLE["H"], q)
        idx = np.arange(1 << self.n)
        keep = ((idx >> q) & 1) == outcome
        self.psi = np.where(keep, self.psi, 0)
        prob = float(np.sum(np.abs(self.psi) ** 2))
        if prob > 1e-14:
            self.psi /= np.sqrt(prob)
        if basis == "X":
            self.apply_single(SINGLE["H"], q)
        return prob


def _run_classical(op, state: DenseState, record: Dict[str, int]):
    if isinstance(op, CPauli):
        if op.condition.evaluate(record):
            state.apply_pauli(op.pauli)
    elif isinstance(op, IfGate):
        if op.condition.evaluate(record):
            state.apply_gate(op.gate.name, op.gate.targets)
    elif isinstance(op, Decode):
        record[op.label] = op.evaluate(record)


def simulate_dense(
    c: Circuit,
    initial: Optional[DenseState] = None,
    rng=None,
    forced: Optional[Dict[str, int]] = None,
) -> Tuple[DenseState, Dict[str, int]]:
    if c.n > MAX_QUBITS:
        raise CapacityError(f"{c.n} qubits exceeds the dense limit of {MAX_QUBITS}; use a smaller code")
    state = (initial or DenseState.zero(c.n)).copy()
    record: Dict[str, int] = {}
    forced = forced or {}
    for op in c.ops:
        if isinstance(op, Gate):
            state.apply_gate(op.name, op.targets)
        elif isinstance(op, Measure):
            p1 = state.prob_one(op.basis, op.target)
            if op.label in forced:
                bit = forced[op.label]
            elif rng is not None:
                bit = int(rng.random() < p1)
            else:
                bit = int(p1 > 0.5)
            if state.project(op.basis, op.target, bit) < 1e-14:
                raise BackendError(f"forced outcome {bit} for {op.label} has probability zero")
            record[op.label] = bit
        else:
            _run_classical(op, state, record)
    return state, record


def enumerate_dense_branches(
    c: Circuit, initial: Optional[DenseState] = None, tol: float = 1e-12
) -> Iterator[Tuple[DenseState, Dict[str, int], float]]:
    """Every outcome branch with non-zero probability, with its probability."""
    if c.n > MAX_QUBITS:
        raise CapacityError(f"{c.n} qubits exceeds the dense limit of {MAX_QUBITS}; use a smaller code")
    start = (initial or DenseState.zero(c.n)).copy()
    stack: List[Tuple[int, DenseState, Dict[str, int], float]] = [(0, start, {}, 1.0)]
    while stack:
        pc, state, record, prob = stack.pop()
        while pc < len(c.ops):
            op = c.ops[pc]
            pc += 1
            if isinstance(op, Gate):
                state.apply_gate(op.name, op.targets)
            elif isinstance(op, Measure):
                p1 = state.prob_one(op.basis, op.target)
                if tol < p1 < 1 - tol:
                    other = state.copy()
                    other.project(op.basis, op.target, 1)
                    rec1 = dict(record)
                    rec1[op.label] = 1
                    stack.append((pc, other, rec1, prob * p1))
                    state.project(op.basis, op.target, 0)
                    prob *= 1 - p1
                    record[op.label] = 0
                else:
                    bit = int(p1 >= 1 - tol)
                    state.project(op.basis, op.target, bit)
                    record[op.label] = bit
            else:
                _run_classical(op, state, record)
        yield state, record, prob
