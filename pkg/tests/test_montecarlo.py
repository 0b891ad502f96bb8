import itertools
import math

import numpy as np
import pytest
from scipy.stats import chisquare

from ftspread.analysis import code_distance
from ftspread.circuits.circuit import transversal
from ftspread.codes import build_toric, build_trivial, make_family
from ftspread.errors import CapacityError, ConfigurationError
from ftspread.montecarlo import (
    BlockwiseDecoder, LookupDecoder, NoiseModel, alternating_t_circuit, build_level_decoder, conditional_ft_check,
    decoder_for, exact_failure_rate, failure_weight_enumerator, logical_error_rate, loglog_slope,
    pseudothreshold_scan, rm_transversal_t_is_inverse, sample_arrays, sample_error, scan,
    unbounded_spread_failure_demo, wilson_interval,
)
from ftspread.pauli import PauliOperator, all_paulis, multiply

# Exhaustive count of failing Paulis per weight for the Steane lookup decoder.
STEANE_FAILURE_COUNTS = [0, 0, 147, 693, 2226, 3822, 3675, 1725]


@pytest.fixture(scope="module")
def steane_lookup(steane):
    return LookupDecoder(steane)


@pytest.fixture(scope="module")
def steane2():
    fam = make_family("steane_concat")
    return fam.instantiate(2), build_level_decoder(fam.level_codes(2))


# noise -------------------------------------------------------------------------------

def test_zero_noise_is_identity():
    rng = np.random.default_rng(0)
    assert all(sample_error(NoiseModel(0.0), 5, rng).is_identity() for _ in range(50))


def test_mean_weight():
    x, z = sample_arrays(NoiseModel(0.3), 10_000, 1, np.random.default_rng(1))
    w = int((x | z).sum())
    assert abs(w - 3000) <= 3 * math.sqrt(10_000 * 0.3 * 0.7)


def test_single_letter_frequency():
    x, z = sample_arrays(NoiseModel(0.3), 1, 200_000, np.random.default_rng(2))
    freq = float(np.mean(x[:, 0] & ~z[:, 0]))
    assert abs(freq - 0.1) < 4 * math.sqrt(0.1 * 0.9 / 200_000)


def test_chi_square_two_qubits():
    model = NoiseModel(0.2)
    shots = 200_000
    x, z = sample_arrays(model, 2, shots, np.random.default_rng(3))
    codes = x[:, 0] * 1 + x[:, 1] * 2 + z[:, 0] * 4 + z[:, 1] * 8
    observed = np.bincount(codes, minlength=16)
    expected = np.array([model.probability(PauliOperator(2, v & 3, v >> 2)) for v in range(16)]) * shots
    assert abs(expected.sum() - shots) < 1e-6
    assert chisquare(observed, expected).pvalue > 1e-3


def test_invalid_p():
    with pytest.raises(ConfigurationError):
        NoiseModel(0.9)


# decoders ------------------------------------------------------------------------------

def test_lookup_corrects_all_weight_one(steane, steane_lookup):
    for q in range(7):
        for L in "XYZ":
            e = PauliOperator.single(7, q, L)
            assert not steane_lookup.fails_on(e)
            assert steane_lookup.correction(e) == e


def test_lookup_fails_on_some_weight_two(steane_lookup):
    assert any(steane_lookup.fails_on(p) for p in all_paulis(7) if p.support.bit_count() == 2)


def test_trivial_syndrome_gives_identity(steane_lookup):
    assert steane_lookup.correction(PauliOperator.identity(7)).is_identity()


def test_decoder_soundness_every_syndrome(steane, steane_lookup):
    for s in range(1 << len(steane.stabilisers)):
        c = PauliOperator.from_arrays(steane_lookup.table_x[s], steane_lookup.table_z[s])
        assert steane.syndrome(c) == s


def test_residual_always_in_normaliser(steane, steane_lookup):
    v = np.arange(4 ** 7)
    x = ((v[:, None] >> np.arange(7)) & 1).astype(bool)
    z = ((v[:, None] >> (np.arange(7) + 7)) & 1).astype(bool)
    cx, cz = steane_lookup.correct(x, z)
    assert not steane_lookup.syndromes(x ^ cx, z ^ cz).any()


def test_failure_enumerator_frozen(steane_lookup):
    assert failure_weight_enumerator(steane_lookup) == STEANE_FAILURE_COUNTS


def test_lookup_capacity_limit():
    with pytest.raises(CapacityError):
        LookupDecoder(build_toric(4))


def test_level_decoder_weight_one_and_split_weight_two(steane2):
    code, dec = steane2
    singles = [PauliOperator.single(49, q, L) for q in range(49) for L in "XYZ"]
    assert not any(dec.fails_on(e) for e in singles)
    xs, zs = [], []
    for a, b in itertools.combinations(range(49), 2):
        if a // 7 == b // 7:
            continue
        for La, Lb in itertools.product("XYZ", repeat=2):
            e = multiply(PauliOperator.single(49, a, La), PauliOperator.single(49, b, Lb))
            xs.append(e.x_bits)
            zs.append(e.z_bits)
    fails = dec.logical_failure(np.array(xs, bool), np.array(zs, bool))
    assert len(xs) == 9261 and not fails.any()


def test_level_decoder_detects_logical_representative(steane2):
    code, dec = steane2
    w = code_distance(code).witnesses["X1"]
    assert w.support.bit_count() == 9
    assert dec.fails_on(w)


def test_decoder_for_kinds(steane):
    fam = make_family("steane_concat")
    assert decoder_for(fam.instantiate(2), fam, 2).kind == "level_by_level"
    assert decoder_for(steane).kind == "lookup_minweight"
    with pytest.raises(ConfigurationError):
        decoder_for(steane, kind="level")


# estimates --------------------------------------------------------------------------------

def test_zero_noise_rate(steane, steane_lookup):
    assert logical_error_rate(steane, steane_lookup, NoiseModel(0), 1000, 1).failures == [0]


def test_reproducible_bit_for_bit(steane, steane_lookup):
    a = scan(steane, steane_lookup, [0.01, 0.05], 100_000, 42, threads=1)
    b = scan(steane, steane_lookup, [0.01, 0.05], 100_000, 42, threads=3)
    assert a.to_json() == b.to_json()
    c = scan(steane, steane_lookup, [0.01, 0.05], 100_000, 43)
    assert c.failures != a.failures


def test_mc_matches_exact_rate(steane, steane_lookup):
    p = 0.02
    est = logical_error_rate(steane, steane_lookup, NoiseModel(p), 400_000, 9)
    lo, hi = wilson_interval(est.failures[0], 400_000, 0.999)
    assert lo <= exact_failure_rate(STEANE_FAILURE_COUNTS, p) <= hi


def test_exact_slope_near_two():
    ps = np.geomspace(1e-3, 1e-2, 5)
    rates = [exact_failure_rate(STEANE_FAILURE_COUNTS, p) for p in ps]
    slope = np.polyfit(np.log(ps), np.log(rates), 1)[0]
    assert 1.9 < slope < 2.05


def test_slope_from_short_scan(steane, steane_lookup):
    est = scan(steane, steane_lookup, list(np.geomspace(3e-3, 3e-2, 4)), 200_000, 5)
    assert 1.6 < loglog_slope(est) < 2.3


def test_concatenation_beats_single_level(steane, steane_lookup, steane2):
    code, dec = steane2
    one = logical_error_rate(steane, steane_lookup, NoiseModel(1e-3), 1_000_000, 11)
    two = logical_error_rate(code, dec, NoiseModel(1e-3), 1_000_000, 12)
    assert two.intervals[0][1] < one.intervals[0][0]


def test_wilson_interval_contains_estimate():
    lo, hi = wilson_interval(10, 1000)
    assert lo < 0.01 < hi
    assert wilson_interval(0, 100)[0] == 0.0


def test_pseudothreshold_found(steane, steane_lookup):
    est = pseudothreshold_scan(steane, steane_lookup, [0.01, 0.03, 0.1, 0.2, 0.3], 20_000, 4)
    cr = est.crossing
    assert cr["found"] and 0 < cr["p_star"] < 0.5
    assert cr["bracket"][0] <= cr["p_star"] <= cr["bracket"][1]


def test_pseudothreshold_above_crossing(steane, steane_lookup):
    est = pseudothreshold_scan(steane, steane_lookup, [0.15, 0.25, 0.35, 0.45], 20_000, 4)
    assert est.crossing == {"found": False, "degenerate": False}


def test_pseudothreshold_degenerate_for_bare_qubit():
    code = build_trivial()
    est = pseudothreshold_scan(code, LookupDecoder(code), [0.01, 0.05, 0.1, 0.2], 20_000, 4)
    assert est.crossing["degenerate"]


def test_pseudothreshold_needs_four_points(steane, steane_lookup):
    with pytest.raises(ConfigurationError):
        pseudothreshold_scan(steane, steane_lookup, [0.01, 0.1, 0.2], 100, 0)


def test_spread_demo_contrast():
    fam = make_family("steane_concat")
    ladder = unbounded_spread_failure_demo("cnot_ladder", fam, [1, 2], 0.01, 100_000, 5)
    flat = unbounded_spread_failure_demo("transversal_x", fam, [1, 2], 0.01, 100_000, 5)
    assert ladder.trend == "not decreasing"
    assert flat.trend == "decreasing"
    zero = unbounded_spread_failure_demo("cnot_ladder", fam, [1, 2], 0.0, 1000, 5)
    assert zero.rates == [0.0, 0.0]


# conditional fault tolerance --------------------------------------------------------------------

def test_transversal_h_is_conditionally_ft(steane, steane_lookup):
    assert conditional_ft_check(transversal(7, "H"), steane, steane_lookup).passed


def test_alternation_level_vs_blockwise():
    levels = make_family("alternating_concat").level_codes(2)
    code = make_family("alternating_concat").instantiate(2)
    circ = alternating_t_circuit(levels)
    good = conditional_ft_check(circ, code, build_level_decoder(levels))
    bad = conditional_ft_check(circ, code, BlockwiseDecoder(levels))
    assert good.passed and good.locations == 105
    assert not bad.passed and bad.counterexamples


def test_rm_transversal_t_orientation():
    assert rm_transversal_t_is_inverse()
