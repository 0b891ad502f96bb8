from fractions import Fraction

import pytest

from ftspread.codes import build_steane, build_surface2d, build_surface3d, build_toric, make_family
from ftspread.disjointness import (
    c_disjointness_record, concat_delta_lower, constructive_report, disjointness_report,
    family_disjointness_evidence, multiplicity, pack, scrubbing_consistency, surface3d_y_family,
    toric_parallel_loops, verify_witness_set,
)
from ftspread.errors import NotALogicalError
from ftspread.pauli import pauli_from_string


@pytest.fixture(scope="module")
def steane_report():
    return disjointness_report(build_steane())


def test_steane_values(steane_report):
    rep = steane_report
    assert rep.delta1("X1") == 1
    assert rep.best_record("X1").normalised >= 2
    assert rep.delta_upper == Fraction(7, 3)
    assert rep.delta_lower <= rep.delta_upper


def test_every_record_reverifies(steane_report):
    code = steane_report.code
    for lab, recs in steane_report.per_logical.items():
        lg = code.logical_operator(lab)
        for r in recs:
            assert verify_witness_set(code, lg, r.witnesses, r.c)
            assert multiplicity(r.witnesses, code.n) <= r.c


def test_nontrivial_code_has_delta_above_one(steane_report):
    assert steane_report.delta_lower > 1


def test_scrubbing_consistency(steane_report):
    assert scrubbing_consistency(steane_report) == []


@pytest.mark.parametrize("l", [2, 3, 4])
def test_toric_loops(l):
    loops = toric_parallel_loops(l)
    code = build_toric(l)
    assert len(loops) == l
    assert verify_witness_set(code, code.logical_operator("X1"), loops, 1)
    assert c_disjointness_record(code, code.logical_operator("X1"), 1).count >= l


def test_surface3d_y_family_multiplicity():
    fam = surface3d_y_family(2)
    assert len(fam) == 2
    assert multiplicity(fam, build_surface3d(2, 2, 2).n) <= 2


def test_verifier_rejects_bad_sets(steane):
    lg = steane.logical_operator("X1")
    good = pauli_from_string("X5X6X7", 7)
    assert verify_witness_set(steane, lg, [good], 1)
    assert not verify_witness_set(steane, lg, [good, good], 2)
    assert not verify_witness_set(steane, lg, [pauli_from_string("X1X2", 7)], 1)
    assert not verify_witness_set(steane, lg, [good, pauli_from_string("X1X4X7", 7)], 1)


def test_pack_small_instance():
    # Three pairwise-overlapping sets and one disjoint from all.
    supports = [0b0011, 0b0110, 0b0101, 0b1000]
    idx, exact = pack(supports, 4, 1)
    assert exact and len(idx) == 2
    idx2, _ = pack(supports, 4, 2)
    assert len(idx2) == 4


def test_concatenated_bound(steane_report):
    bound, rep = concat_delta_lower(steane_report, steane_report)
    assert bound >= 4
    for lab, recs in rep.per_logical.items():
        for r in recs:
            assert verify_witness_set(rep.code, rep.code.logical_operator(lab), r.witnesses, r.c)


def test_constructive_report_surface():
    rep = constructive_report(build_surface2d(4))
    assert rep.delta_lower == 2


def test_constructive_needs_css():
    from ftspread.codes import StabiliserCode

    five = StabiliserCode(
        5, 1,
        tuple(pauli_from_string(s) for s in ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ")),
        (pauli_from_string("XXXXX"),), (pauli_from_string("ZZZZZ"),), "five",
    ).validate()
    with pytest.raises(NotALogicalError):
        constructive_report(five)


def test_family_evidence_grows():
    ev = family_disjointness_evidence(make_family("toric"), [2, 3, 4])
    assert ev[2] < ev[3] < ev[4]


def test_report_json_lists_witness_strings(steane_report):
    d = steane_report.to_dict()
    assert d["delta_upper"] == "7/3"
    assert all(isinstance(w, str) for w in d["per_logical"]["X1"][0]["witnesses"])
