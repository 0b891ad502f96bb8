import random

import numpy as np
import pytest
from hypothesis import given

from ftspread.circuits.circuit import Circuit, Condition, Decode, cnot_ladder, transversal
from ftspread.circuits.dense import DenseState, enumerate_dense_branches, simulate_dense
from ftspread.circuits.tableau import TableauState, enumerate_branches, simulate_tableau
from ftspread.errors import BackendError, CapacityError, DimensionError, PauliParseError
from ftspread.pauli import CliffordMap, PauliOperator, commutes, conjugate
from ftspread import gf2
from ftspread.pauli import pauli_from_string

from conftest import clifford_circuits, random_clifford_circuit


def _with_measurements(n: int, depth: int, rng: random.Random) -> Circuit:
    c = random_clifford_circuit(n, depth, rng)
    for j in range(rng.randint(1, 3)):
        c.measure(rng.choice("XZ"), rng.randrange(n), f"m{j}")
        c.extend(random_clifford_circuit(n, 3, rng))
    return c


def test_tableau_matches_dense_with_measurements():
    rng = random.Random(5)
    for trial in range(100):
        n = rng.randint(1, 8)
        c = _with_measurements(n, rng.randint(0, 10), rng)
        tab, record = simulate_tableau(c, rng=np.random.default_rng(trial))
        dense, rec2 = simulate_dense(c, forced=record)
        assert rec2 == record
        for s in tab.stabilisers():
            assert abs(dense.expectation(s) - 1) < 1e-9
        for _ in range(5):
            p = PauliOperator(n, rng.getrandbits(n), rng.getrandbits(n))
            assert abs(dense.expectation(p) - tab.expectation(p)) < 1e-9


@given(clifford_circuits(max_n=6))
def test_tableau_rows_stay_valid(circ):
    state, _ = simulate_tableau(circ)
    stabs = state.stabilisers()
    assert len(stabs) == circ.n
    assert all(commutes(a, b) for a in stabs for b in stabs)
    assert gf2.rank([s.symplectic for s in stabs]) == circ.n


@given(clifford_circuits(max_n=6))
def test_tableau_tracks_conjugated_stabilisers(circ):
    state, _ = simulate_tableau(circ)
    m = circ.to_clifford_map()
    for q in range(circ.n):
        assert state.expectation(conjugate(m, PauliOperator.single(circ.n, q, "Z"))) == 1


@given(clifford_circuits(max_n=5))
def test_dense_norm_preserved(circ):
    state, _ = simulate_dense(circ)
    assert abs(state.norm() - 1) < 1e-10


@given(clifford_circuits(max_n=5))
def test_text_round_trip(circ):
    circ.measure("X", 0, "a").cpauli("a^1", PauliOperator.single(circ.n, 0, "Z"))
    back = Circuit.from_text(circ.to_text())
    assert back.ops == circ.ops


@given(clifford_circuits(max_n=5))
def test_inverse_composes_to_identity(circ):
    both = Circuit(circ.n).extend(circ).extend(circ.inverse())
    assert both.to_clifford_map() == CliffordMap.identity(circ.n)


def test_condition_parse():
    c = Condition.parse("a^b^1")
    assert c.labels == ("a", "b") and c.constant == 1
    assert c.evaluate({"a": 1, "b": 1}) == 1
    assert str(Condition.parse("0")) == "0"


def test_decode_corrects_single_flip():
    # Repetition-style checks on three bits, logical = bit 0.
    d = Decode("L", ("a", "b", "c"), (0b011, 0b110), 0b001)
    assert d.evaluate({"a": 1, "b": 1, "c": 1}) == 1
    assert d.evaluate({"a": 0, "b": 1, "c": 1}) == 1
    assert d.evaluate({"a": 1, "b": 0, "c": 0}) == 0


def test_bell_branches():
    c = Circuit(2).gate("H", 0).gate("CNOT", 0, 1).measure("Z", 0, "a").cpauli("a", pauli_from_string("IX"))
    branches = list(enumerate_branches(c))
    assert len(branches) == 2
    for state, _ in branches:
        assert state.expectation(pauli_from_string("IZ")) == 1
    dense = list(enumerate_dense_branches(c))
    assert sorted(round(p, 12) for *_, p in dense) == [0.5, 0.5]


def test_tableau_rejects_t():
    with pytest.raises(BackendError):
        simulate_tableau(Circuit(1).gate("T", 0))


def test_dense_t_phase():
    st = DenseState.zero(1)
    st.apply_gate("H", [0])
    st.apply_gate("T", [0])
    assert np.isclose(st.psi[1] / st.psi[0], np.exp(1j * np.pi / 4))


def test_dense_capacity():
    with pytest.raises(CapacityError):
        DenseState.zero(30)


def test_from_stabilisers_rejects_bad_input():
    with pytest.raises(DimensionError):
        TableauState.from_stabilisers([pauli_from_string("XI")])
    with pytest.raises(DimensionError):
        TableauState.from_stabilisers([pauli_from_string("XI"), pauli_from_string("ZI")])


def test_parse_errors_report_line():
    with pytest.raises(PauliParseError) as info:
        Circuit.from_text("QUBITS 2\nCNOT 1\n")
    assert "line 2" in str(info.value)


def test_ladder_and_transversal_shapes():
    assert cnot_ladder(4).count("CNOT") == 3
    assert transversal(5, "H").count("H") == 5
