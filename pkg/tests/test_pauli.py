import numpy as np
import pytest
from hypothesis import given, strategies as st

from ftspread.errors import DimensionError, PauliParseError
from ftspread.pauli import (
    CliffordMap, PauliOperator, all_paulis, commutes, compose, conjugate, gate_map, multiply,
    pauli_from_string, pauli_to_string, weight,
)

from conftest import clifford_circuits, pauli_pairs, paulis


@given(pauli_pairs())
def test_commutation_matches_product_order(ab):
    a, b = ab
    ab_, ba = multiply(a, b), multiply(b, a)
    assert (ab_.x, ab_.z) == (ba.x, ba.z)
    diff = (ab_.phase - ba.phase) % 4
    assert diff in (0, 2)
    assert commutes(a, b) == (diff == 0)


@given(pauli_pairs())
def test_weight_subadditive(ab):
    a, b = ab
    assert weight(multiply(a, b)) <= weight(a) + weight(b)


@given(paulis())
def test_string_round_trip(p):
    assert pauli_from_string(pauli_to_string(p), p.n) == p
    assert pauli_from_string(pauli_to_string(p, sparse=True), p.n) == p


@given(paulis())
def test_square_is_plus_or_minus_identity(p):
    sq = multiply(p, p)
    assert sq.is_identity()
    assert sq.phase == (2 * p.phase) % 4


@given(clifford_circuits(max_n=8), st.data())
def test_conjugation_preserves_commutation(circ, data):
    m = circ.to_clifford_map()
    assert m.is_symplectic()
    a = data.draw(paulis(circ.n))
    b = data.draw(paulis(circ.n))
    assert commutes(a, b) == commutes(conjugate(m, a), conjugate(m, b))


@given(clifford_circuits(max_n=5), st.data())
def test_conjugation_is_a_homomorphism(circ, data):
    m = circ.to_clifford_map()
    a = data.draw(paulis(circ.n))
    b = data.draw(paulis(circ.n))
    assert conjugate(m, multiply(a, b)) == multiply(conjugate(m, a), conjugate(m, b))


@given(clifford_circuits(max_n=5), st.data())
def test_inverse_undoes_map(circ, data):
    m = circ.to_clifford_map()
    p = data.draw(paulis(circ.n))
    assert conjugate(m.inverse(), conjugate(m, p)) == p
    assert compose(m.inverse(), m) == CliffordMap.identity(circ.n)


def test_known_gate_images():
    cnot = gate_map("CNOT", 2, [0, 1])
    assert conjugate(cnot, pauli_from_string("XI")) == pauli_from_string("XX")
    assert conjugate(cnot, pauli_from_string("IZ")) == pauli_from_string("ZZ")
    h = gate_map("H", 1, [0])
    assert conjugate(h, pauli_from_string("Y")) == pauli_from_string("-Y")
    s = gate_map("S", 1, [0])
    assert conjugate(s, pauli_from_string("X")) == pauli_from_string("Y")


def test_parse_forms():
    assert pauli_from_string("X1Z3", 4) == pauli_from_string("XIZI")
    assert pauli_from_string("-iY2", 2).phase == 3
    with pytest.raises(PauliParseError):
        pauli_from_string("XQ")
    with pytest.raises(DimensionError):
        multiply(pauli_from_string("X"), pauli_from_string("XX"))


def test_arrays_round_trip():
    p = PauliOperator.from_arrays(np.array([1, 0, 1]), np.array([0, 1, 1]))
    assert pauli_to_string(p) == "XZY"
    assert list(p.x_bits) == [1, 0, 1]


def test_all_paulis_count():
    assert len(list(all_paulis(2))) == 16
    assert sum(1 for p in all_paulis(3) if weight(p) == 1) == 9
