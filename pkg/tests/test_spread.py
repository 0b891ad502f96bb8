import random
from fractions import Fraction

import pytest
from hypothesis import given

from ftspread.analysis import code_distance
from ftspread.circuits.circuit import Circuit, cnot_ladder
from ftspread.codes import make_family
from ftspread.errors import UndefinedSpreadError, UnsupportedError
from ftspread.pauli import CliffordMap, PauliOperator, compose, conjugate, gate_map, weight
from ftspread.spread import (
    exhaustive_spread, family_spread_trend, lightcone_spread_bound, lightcone_supports, locality_preserving_bound,
    spread_of_clifford, spread_of_pauli, transversal_bound, transversal_map,
)

from conftest import clifford_circuits, random_clifford_circuit


@given(clifford_circuits(max_n=4, max_depth=10))
def test_single_qubit_maximum_equals_full_maximum(circ):
    m = circ.to_clifford_map()
    assert spread_of_clifford(m).exact_spread == exhaustive_spread(m)


@pytest.mark.parametrize("name", ["H", "S", "CNOT", "CZ", "SWAP"])
def test_generators_spread_equality(name):
    n = 2
    m = gate_map(name, n, [0] if name in ("H", "S") else [0, 1])
    assert spread_of_clifford(m).exact_spread == exhaustive_spread(m)


def test_lightcone_soundness_random():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 8)
        c = random_clifford_circuit(n, rng.randint(0, 10), rng)
        rep = lightcone_spread_bound(c)
        assert rep.lightcone_bound >= rep.exact_spread


@given(clifford_circuits(max_n=5), clifford_circuits(max_n=5))
def test_spread_submultiplicative(c1, c2):
    if c1.n != c2.n:
        return
    m1, m2 = c1.to_clifford_map(), c2.to_clifford_map()
    s1, s2 = spread_of_clifford(m1).exact_spread, spread_of_clifford(m2).exact_spread
    assert spread_of_clifford(compose(m2, m1)).exact_spread <= s1 * s2


@pytest.mark.parametrize("blocks,size", [(2, 7), (3, 5), (4, 3)])
def test_transversal_two_block_gates(blocks, size):
    n = blocks * size
    c = Circuit(n)
    for q in range(size):
        for b in range(blocks - 1):
            c.gate("CNOT", b * size + q, (b + 1) * size + q)
    assert spread_of_clifford(c.to_clifford_map()).exact_spread <= transversal_bound(blocks)


@pytest.mark.parametrize("name", ["H", "S", "X"])
def test_single_block_transversal_spread_is_one(name):
    assert spread_of_clifford(transversal_map(7, name)).exact_spread == 1


@pytest.mark.parametrize("eps,dim", [(0, 1), (1, 1), (1, 2), (2, 3), (3, 2)])
def test_locality_bound(eps, dim):
    assert locality_preserving_bound(eps, dim) == (2 * eps + 1) ** dim


def test_ladder_spread_and_trend():
    assert spread_of_clifford(cnot_ladder(5).to_clifford_map()).exact_spread == 5
    trend = family_spread_trend(None, lambda n: cnot_ladder(n).to_clifford_map(), [3, 4, 5, 6], "ladder")
    assert not trend.bounded
    flat = family_spread_trend(None, lambda n: transversal_map(n, "H"), [3, 4, 5, 6], "h")
    assert flat.bounded


def test_lightcone_supports_ignore_single_qubit_gates():
    c = Circuit(3).gate("H", 0).gate("CNOT", 0, 1).gate("T", 2)
    assert lightcone_supports(c) == [0b011, 0b011, 0b100]
    rep = lightcone_spread_bound(c)
    assert rep.lightcone_bound == 2 and rep.exact_spread is None


def test_lightcone_rejects_measurements():
    with pytest.raises(UnsupportedError):
        lightcone_spread_bound(Circuit(1).measure("Z", 0, "m"))


def test_identity_spread_undefined():
    with pytest.raises(UndefinedSpreadError):
        spread_of_pauli(CliffordMap.identity(2), PauliOperator.identity(2))


def test_bounded_channel_keeps_distance_ratio():
    # A witness mapped by a spread-s channel lands on a logical of weight <= s * original.
    fam = make_family("steane_concat")
    for l in fam.index_domain:
        code = fam.instantiate(l)
        rep = code_distance(code)
        m = transversal_map(code.n, "H")
        s = spread_of_clifford(m).exact_spread
        for lab, w in rep.witnesses.items():
            img = conjugate(m, w)
            assert code.is_logical(img)
            assert weight(img) <= s * weight(w)
            target = {"X1": "Z1", "Z1": "X1", "Y1": "Y1"}[lab]
            assert Fraction(rep.per_logical[target], rep.code_distance) <= s * Fraction(weight(w), rep.code_distance)
