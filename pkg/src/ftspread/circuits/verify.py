"""Logical-action checks for unitary circuits and measurement-based gadgets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..codes import StabiliserCode
from ..errors import CapacityError, UnsupportedError
from ..pauli import CliffordMap, PauliOperator, conjugate, gate_map, multiply, pauli_to_string
from .circuit import CPauli, Circuit, Condition
from .dense import MAX_QUBITS, DenseState, enumerate_dense_branches
from .tableau import TableauState, enumerate_branches


@dataclass
class Verdict:
    name: str
    passed: bool
    checks: int = 0
    branches: int = 0
    failures: List[str] = field(default_factory=list)
    details: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "branches": self.branches,
            "failures": self.failures[:50],
            "details": self.details,
        }


def logical_map(name: str, k: int = 1) -> CliffordMap:
    """Expected logical action by gate name ("I", "H", "S", ...) on logical qubit 1."""
    if name == "I":
        return CliffordMap.identity(k)
    return gate_map(name, k, [0])


def lift_logical(code: StabiliserCode, p: PauliOperator, offset: int = 0, n: Optional[int] = None) -> PauliOperator:
    """Physical representative of the k-qubit logical Pauli ``p`` (phase kept)."""
    rep = code.logical_from_class(p.x, p.z)
    # logical_from_class returns the Hermitian form; restore p's own phase.
    rep = PauliOperator(rep.n, rep.x, rep.z, rep.phase + p.phase)
    if n is not None:
        rep = rep.embed(n, offset)
    return rep


def check_clifford_action(
    m: CliffordMap, code_in: StabiliserCode, code_out: StabiliserCode, expected: CliffordMap, name: str = "clifford"
) -> Verdict:
    """Stabilisers map into the output group and logicals to the expected classes, signs included."""
    if m.n != code_in.n or m.n != code_out.n:
        raise UnsupportedError("circuit, input code and output code sizes differ")
    fails = []
    checks = 0
    for s in code_in.stabilisers:
        checks += 1
        img = conjugate(m, s)
        if not code_out.in_stabiliser_group(img):
            fails.append(f"stabiliser {pauli_to_string(s, True)} -> {pauli_to_string(img, True)} not in output group")
    for i in range(code_in.k):
        for letter, lg in (("X", code_in.logical_x[i]), ("Z", code_in.logical_z[i])):
            checks += 1
            img = conjugate(m, lg)
            want = lift_logical(code_out, conjugate(expected, PauliOperator.single(code_in.k, i, letter)))
            if not code_out.in_stabiliser_group(multiply(img, want)):
                fails.append(f"logical {letter}{i + 1} -> {pauli_to_string(img, True)} is not {pauli_to_string(want, True)}")
    return Verdict(name, not fails, checks, 1, fails)


# gadgets --------------------------------------------------------------------------

@dataclass
class Gadget:
    """A measurement-based logical gate on one input block.

    ``ancilla`` lists stabilisers of the non-input qubits' initial state (full
    register); ``ancilla_dense`` replaces it when the ancilla is not a
    stabiliser state. The logical output sits on ``code`` at ``output_offset``.
    """

    name: str
    code: StabiliserCode
    circuit: Circuit
    output_offset: int
    expected: str
    ancilla: List[PauliOperator] = field(default_factory=list)
    ancilla_dense: Optional[DenseState] = None
    notes: List[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.circuit.n


INPUT_STATES = (("Z", 0), ("Z", 2), ("X", 0), ("X", 2), ("Y", 0), ("Y", 2))
STATE_NAMES = {("Z", 0): "|0>", ("Z", 2): "|1>", ("X", 0): "|+>", ("X", 2): "|->", ("Y", 0): "|+i>", ("Y", 2): "|-i>"}


def _input_stabilisers(g: Gadget, letter: str, sign: int) -> List[PauliOperator]:
    code, N = g.code, g.n
    out = [s.embed(N, 0) for s in code.stabilisers]
    lg = code.logical_operator(f"{letter}1")
    out.append(PauliOperator(N, lg.x, lg.z, lg.phase + sign))
    return out + list(g.ancilla)


def _with_error(c: Circuit, err: Optional[PauliOperator]) -> Circuit:
    if err is None or err.is_identity():
        return c
    out = Circuit(c.n, [CPauli(Condition((), 1), err)] + list(c.ops))
    return out


def verify_gadget(
    g: Gadget,
    errors: Optional[Sequence[Optional[PauliOperator]]] = None,
    states: Sequence[Tuple[str, int]] = INPUT_STATES,
) -> Verdict:
    """Tableau check over every outcome branch of every input state and inserted error.

    Passing means each branch leaves the output block in the code space with
    the expected logical state, so the classical corrections compensate for
    every outcome.
    """
    if g.expected == "T":
        return verify_magic_gadget(g)
    expected = logical_map(g.expected)
    N, code = g.n, g.code
    out_stabs = [s.embed(N, g.output_offset) for s in code.stabilisers]
    errs = list(errors) if errors is not None else [None]
    fails: List[str] = []
    branches = checks = 0
    for err in errs:
        circ = _with_error(g.circuit, err)
        for letter, sign in states:
            init = TableauState.from_stabilisers(_input_stabilisers(g, letter, sign))
            img = conjugate(expected, PauliOperator(1, *(1, 0) if letter == "X" else (0, 1) if letter == "Z" else (1, 1), sign))
            want = lift_logical(code, img, g.output_offset, N)
            for state, record in enumerate_branches(circ, init):
                branches += 1
                checks += len(out_stabs) + 1
                ok = all(state.expectation(s) == 1 for s in out_stabs) and state.expectation(want) == 1
                if not ok:
                    tag = "none" if err is None else pauli_to_string(err, True)
                    fails.append(f"error {tag}, input {STATE_NAMES[(letter, sign)]}, outcomes {_bits(record)}")
                    break
    return Verdict(g.name, not fails, checks, branches, fails,
                   {"errors": len(errs), "states": len(states), "expected": g.expected})


def _bits(record: Dict[str, int]) -> str:
    return "".join(str(v) for v in record.values())


def logical_t(code: StabiliserCode, psi: DenseState) -> DenseState:
    """Apply the ideal logical T = P0 + e^{i pi/4} P1 using the logical Z projectors."""
    z = psi.apply_pauli_copy(code.logical_z[0])
    omega = np.exp(1j * np.pi / 4)
    return DenseState(psi.n, (psi.psi + z) / 2 + omega * (psi.psi - z) / 2)


def logical_state(code: StabiliserCode, letter: str, sign: int = 0, seed: int = 0) -> DenseState:
    lg = code.logical_operator(f"{letter}1")
    stabs = list(code.stabilisers) + [PauliOperator(lg.n, lg.x, lg.z, lg.phase + sign)]
    return DenseState.from_stabilisers(stabs, seed)


def verify_magic_gadget(g: Gadget, states: Sequence[Tuple[str, int]] = (("Z", 0), ("X", 0), ("Y", 0), ("Z", 2))) -> Verdict:
    """Dense check that every branch leaves logical T|psi> on the output block."""
    code = g.code
    n = code.n
    if g.n > MAX_QUBITS:
        raise CapacityError(f"{g.n} qubits is beyond dense simulation; use a smaller code")
    if g.ancilla_dense is None:
        raise UnsupportedError("magic gadget needs a dense ancilla state")
    fails = []
    worst = 1.0
    branches = 0
    for letter, sign in states:
        psi = logical_state(code, letter, sign)
        want = logical_t(code, psi).psi
        init = psi.tensor(g.ancilla_dense)
        for state, record, prob in enumerate_dense_branches(g.circuit, init):
            branches += 1
            # Input block is fully measured: slice out the output block's amplitudes.
            # Rows index the output block (high qubits), columns the input block.
            amps = state.psi.reshape(1 << n, 1 << n)
            mass = np.sum(np.abs(amps) ** 2, axis=0)
            col = int(np.argmax(mass))
            phi = amps[:, col] / np.linalg.norm(amps[:, col])
            fid = float(abs(np.vdot(want, phi)) ** 2)
            worst = min(worst, fid)
            if fid < 1 - 1e-9 or mass[col] < 1 - 1e-9:
                fails.append(f"input {STATE_NAMES[(letter, sign)]}, outcomes {_bits(record)}: fidelity {fid:.12f}")
    return Verdict(g.name, not fails, branches, branches, fails, {"min_fidelity": worst, "expected": "T"})
