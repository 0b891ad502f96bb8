"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` or ``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from ftspread.analysis import b_group_report, classify_family, code_distance
from ftspread.circuits import gadgets as G
from ftspread.circuits.circuit import Circuit
from ftspread.circuits.verify import check_clifford_action, logical_map, verify_gadget
from ftspread.codes import (
    REED_MULLER_SLOT_FIX, build_reed_muller, build_steane, build_surface2d, build_surface3d, build_toric,
    concatenate, make_family,
)
from ftspread.disjointness import (
    concat_delta_lower, disjointness_report, multiplicity, surface3d_y_family, toric_parallel_loops,
    verify_witness_set,
)
from ftspread.montecarlo import (
    BlockwiseDecoder, LookupDecoder, alternating_t_circuit, build_level_decoder, conditional_ft_check,
    loglog_slope, pseudothreshold_scan, scan,
)
from ftspread.pauli import CliffordMap, PauliOperator, commutes, compose, gate_map, pauli_from_string
from ftspread.spread import exhaustive_spread, locality_preserving_bound, spread_of_clifford, transversal_map

from conftest import random_clifford_circuit

RESULTS = []

# Reference generator lists; the Reed-Muller list carries the common Z10Z11Z13Z14 variant.
STEANE_LISTED = ["X1X2X3X4", "X2X3X5X6", "X3X4X5X7", "Z1Z2Z3Z4", "Z2Z3Z5Z6", "Z3Z4Z5Z7"]
RM_LISTED = [
    "X1X2X3X4X8X9X10X11", "X2X3X5X6X9X10X12X13", "X3X4X5X7X10X11X12X14", "X8X9X10X11X12X13X14X15",
    "Z1Z2Z3Z4", "Z2Z3Z5Z6", "Z3Z4Z5Z7", "Z8Z9Z10Z11", "Z9Z10Z12Z13", "Z10Z11Z13Z14", "Z12Z13Z14Z15",
    "Z1Z4Z8Z11", "Z2Z5Z9Z12", "Z6Z7Z13Z14",
]
LOGICALS = ("X1X2X3X4X5X6X7", "Z1Z2Z3Z4Z5Z6Z7")


def record(num: int, title: str, checks: dict, elapsed: float, budget: float):
    failed = [k for k, ok in checks.items() if not ok]
    if elapsed > budget:
        failed.append(f"runtime {elapsed:.1f}s over {budget:.0f}s")
    status = "PASS" if not failed else "FAIL"
    line = f"criterion {num} [{title}]: {status} ({elapsed:.1f}s)" + (f"; failed: {', '.join(failed)}" if failed else "")
    RESULTS.append(line)
    print(line)
    assert not failed, line


def test_criterion_1_code_tables():
    t = time.perf_counter()
    steane, rm = build_steane(), build_reed_muller()
    parse = lambda items, n: {str(pauli_from_string(s, n)) for s in items}
    fixed = [REED_MULLER_SLOT_FIX[1] if s == REED_MULLER_SLOT_FIX[0] else s for s in RM_LISTED]
    listed_slot = pauli_from_string(REED_MULLER_SLOT_FIX[0], 15)
    checks = {
        "steane generators": {str(s) for s in steane.stabilisers} == parse(STEANE_LISTED, 7),
        "steane logicals": (str(steane.logical_x[0]), str(steane.logical_z[0])) == tuple(
            str(pauli_from_string(s, 7)) for s in LOGICALS),
        "rm 13 listed generators present": len(parse(RM_LISTED, 15) & {str(s) for s in rm.stabilisers}) == 13,
        "rm generators": {str(s) for s in rm.stabilisers} == parse(fixed, 15),
        "rm logicals": (str(rm.logical_x[0]), str(rm.logical_z[0])) == tuple(
            str(pauli_from_string(s, 15)) for s in LOGICALS),
        "listed slot anticommutes (repaired)": not all(commutes(listed_slot, s) for s in rm.stabilisers),
        "validation": bool(steane.validate() and rm.validate()),
    }
    record(1, "code tables", checks, time.perf_counter() - t, 1.0)


def test_criterion_2_distances():
    t = time.perf_counter()
    st, rm = code_distance(build_steane()), code_distance(build_reed_muller())
    st2 = code_distance(concatenate(build_steane(), build_steane()))
    s2 = {l: code_distance(build_surface2d(l)) for l in (2, 3)}
    s3 = code_distance(build_surface3d(2, 2, 2))
    checks = {
        "steane d=3": st.code_distance == 3,
        "rm dZ=3": rm.per_logical["Z1"] == 3,
        "rm dX=7": rm.per_logical["X1"] == 7,
        "steane^2 d=9": st2.code_distance == 9 and st2.exact,
        "surface2d dX=dZ=l": all(s2[l].per_logical["X1"] == s2[l].per_logical["Z1"] == l for l in (2, 3)),
        "surface3d dZ=2": s3.per_logical["Z1"] == 2,
        "surface3d dX=4": s3.per_logical["X1"] == 4,
    }
    record(2, "distances", checks, time.perf_counter() - t, 120.0)


def test_criterion_3_classification():
    t = time.perf_counter()
    s3 = classify_family(make_family("surface3d"), [2, 3, 4])
    s3_text = b_group_report(s3)
    sym = {k: classify_family(make_family(k), [2, 3, 4]) for k in ("surface2d", "toric")}
    checks = {
        "surface3d asymmetric": not s3.symmetric and s3.b_constrained_verdict == "asymmetric_rule",
        "surface3d P-down = <Z>": s3.p_down_generators == ["Z1"] and s3.p_down_span == ["Z1"],
        "surface3d stabilised |0>": "invariant state: logical |0>; B not universal" in s3_text,
    }
    for k, c in sym.items():
        checks[f"{k} symmetric"] = c.symmetric and c.b_constrained_verdict == "symmetric_infinite_disjointness_rule"
        checks[f"{k} B in Clifford"] = "B ⊆ Clifford" in b_group_report(c)
    record(3, "classification", checks, time.perf_counter() - t, 300.0)


def test_criterion_4_spread():
    t = time.perf_counter()
    transversal_ok = True
    for blocks, size in ((1, 7), (2, 7), (3, 5), (4, 3)):
        c = Circuit(blocks * size)
        for q in range(size):
            c.gate("H", q)
            for b in range(blocks - 1):
                c.gate("CNOT" if b % 2 == 0 else "CZ", b * size + q, (b + 1) * size + q)
        transversal_ok &= spread_of_clifford(c.to_clifford_map()).exact_spread <= blocks
    for name in ("H", "S", "X", "SX"):
        transversal_ok &= spread_of_clifford(transversal_map(7, name)).exact_spread <= 1
    locality_ok = all(
        locality_preserving_bound(e, d) == (2 * e + 1) ** d for e in range(5) for d in range(1, 4)
    )
    rng = random.Random(2024)
    maps = [random_clifford_circuit(n, 20, rng).to_clifford_map() for n in [6] * 20 + [rng.randint(1, 5) for _ in range(40)]]
    maps += [gate_map(g, 2, [0, 1]) for g in ("CNOT", "CZ", "SWAP")]
    maps += [gate_map(g, 2, [q]) for g in ("H", "S", "SDG", "SX", "X", "Y", "Z") for q in (0, 1)]
    maps += [gate_map("CNOT", 2, [1, 0])]
    equality_ok = all(spread_of_clifford(m).exact_spread == exhaustive_spread(m) for m in maps)
    checks = {
        "transversal <= blocks": bool(transversal_ok),
        "locality (2e+1)^D": locality_ok,
        f"spread equality on {len(maps)} maps": equality_ok,
        "at least 50 random maps": len(maps) >= 50 + 3,
    }
    record(4, "spread", checks, time.perf_counter() - t, 300.0)


def test_criterion_5_disjointness():
    t = time.perf_counter()
    steane = build_steane()
    rep = disjointness_report(steane)
    lx = steane.logical_operator("X1")
    rec1 = next(r for r in rep.per_logical["X1"] if r.c == 1)
    rec2 = next(r for r in rep.per_logical["X1"] if r.c == 2)
    toric_ok = True
    for l in (2, 3, 4):
        loops = toric_parallel_loops(l)
        code = build_toric(l)
        toric_ok &= len(loops) >= l and verify_witness_set(code, code.logical_operator("X1"), loops, 1)
    yfam = surface3d_y_family(2)
    s3 = build_surface3d(2, 2, 2)
    bound, crep = concat_delta_lower(rep, rep)
    concat_ok = all(
        verify_witness_set(crep.code, crep.code.logical_operator(lab), r.witnesses, r.c)
        for lab, recs in crep.per_logical.items() for r in recs
    )
    checks = {
        "steane X delta_1 = 1": rec1.count == 1 and verify_witness_set(steane, lx, rec1.witnesses, 1),
        "steane X delta_2 >= 2": Fraction(rec2.count, 2) >= 2 and verify_witness_set(steane, lx, rec2.witnesses, 2),
        "upper bound 7/3": rep.delta_upper == Fraction(7, 3),
        "toric delta_1 >= l": bool(toric_ok),
        "surface3d Y multiplicity <= 2": multiplicity(yfam, s3.n) <= 2
        and verify_witness_set(s3, s3.logical_operator("Y1"), yfam, 2),
        "steane^2 composite >= 4": bound >= 4 and concat_ok,
    }
    record(5, "disjointness", checks, time.perf_counter() - t, 120.0)


def test_criterion_6_gadgets():
    t = time.perf_counter()
    rm, src = build_reed_muller(), G.steane_with_ancilla()
    to_rm = G.steane_rm_switch_circuit("to_rm").to_clifford_map()
    to_st = G.steane_rm_switch_circuit("to_steane").to_clifford_map()
    steane = build_steane()
    tele = G.build_teleportation_gadget(steane, "I")
    errors = [None] + [PauliOperator.single(tele.n, q, L) for q in range(7) for L in "XYZ"]
    v_tele = verify_gadget(tele, errors)
    v_magic = verify_gadget(G.build_magic_injection(steane))
    checks = {
        "switch to reed-muller": check_clifford_action(to_rm, src, rm, logical_map("I")).passed,
        "switch to steane": check_clifford_action(to_st, rm, src, logical_map("I")).passed,
        "round trip identity": compose(to_st, to_rm) == CliffordMap.identity(15),
        "teleport I corrects 21 errors": v_tele.passed and v_tele.details["errors"] == 22,
        "magic fidelity": v_magic.passed and v_magic.details["min_fidelity"] >= 1 - 1e-9,
    }
    record(6, "gadgets", checks, time.perf_counter() - t, 600.0)


def test_criterion_7_monte_carlo():
    t = time.perf_counter()
    steane = build_steane()
    dec = LookupDecoder(steane)
    grid = [float(p) for p in np.geomspace(1e-3, 1e-2, 5)]
    shots = 1_000_000
    est = scan(steane, dec, grid, shots, 7)
    again = scan(steane, dec, grid, shots, 7)
    slope = loglog_slope(est)
    pt = pseudothreshold_scan(steane, dec, [0.01, 0.03, 0.1, 0.2, 0.3], 100_000, 7)
    print(f"  slope {slope:.3f}; failures {est.failures}; crossing {pt.crossing}")
    checks = {
        f"slope {slope:.3f} in [1.8, 2.2]": 1.8 <= slope <= 2.2,
        "crossing reported": bool(pt.crossing and pt.crossing["found"] and 0 < pt.crossing["p_star"] < 0.5),
        "bit-exact rerun": est.to_json() == again.to_json(),
    }
    record(7, "monte carlo", checks, time.perf_counter() - t, 900.0)


def test_criterion_8_conditional_ft():
    t = time.perf_counter()
    fam = make_family("alternating_concat")
    levels = fam.level_codes(2)
    code = fam.instantiate(2)
    circ = alternating_t_circuit(levels)
    good = conditional_ft_check(circ, code, build_level_decoder(levels))
    bad = conditional_ft_check(circ, code, BlockwiseDecoder(levels))
    checks = {
        "105 qubits": code.n == 105,
        "every location checked": good.locations == 105,
        "level decoder passes": good.passed,
        "level-ignoring decoder fails": not bad.passed,
        "counterexamples given": len(bad.counterexamples) > 0,
    }
    record(8, "conditional ft", checks, time.perf_counter() - t, 600.0)


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failures = 0
    for fn in tests:
        try:
            fn()
        except AssertionError:
            failures += 1
    sys.exit(1 if failures else 0)
