"""Pauli noise, decoders and logical-error-rate estimation.

Logical error rate is the operational fault-tolerance metric throughout; every
estimate says so in its ``metric`` field.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import binomtest

from . import gf2
from .circuits.circuit import Circuit
from .codes import CodeFamily, StabiliserCode, concatenate_levels
from .errors import CapacityError, ConfigurationError, UnsupportedError
from .pauli import CliffordMap, PauliOperator, conjugate
from .spread import lightcone_supports

METRIC = "logical error rate (operational proxy for the diamond-norm distance)"
LOOKUP_LIMIT = 16
CHUNK = 1 << 16


@dataclass(frozen=True)
class NoiseModel:
    """iid single-qubit Pauli noise; each non-identity letter has probability p/3."""

    p: float
    kind: str = "iid_pauli"

    def __post_init__(self):
        if not 0 <= self.p <= 0.5:
            raise ConfigurationError("p must lie in [0, 0.5]")
        if self.kind != "iid_pauli":
            raise ConfigurationError(f"unknown noise kind {self.kind!r}")

    def probability(self, e: PauliOperator) -> float:
        w = e.support.bit_count()
        return (self.p / 3) ** w * (1 - self.p) ** (e.n - w)


def sample_arrays(model: NoiseModel, n: int, shots: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """Boolean (shots, n) X and Z parts of iid samples."""
    u = rng.random((shots, n))
    third = model.p / 3
    is_x = u < third
    is_y = (u >= third) & (u < 2 * third)
    is_z = (u >= 2 * third) & (u < model.p)
    return is_x | is_y, is_y | is_z


def sample_error(model: NoiseModel, n: int, rng: np.random.Generator) -> PauliOperator:
    x, z = sample_arrays(model, n, 1, rng)
    return PauliOperator.from_arrays(x[0], z[0])


# decoders ---------------------------------------------------------------------------

def _check_matrices(code: StabiliserCode) -> Tuple[np.ndarray, np.ndarray]:
    sx = np.array([s.x_bits for s in code.stabilisers], dtype=np.uint8).reshape(-1, code.n)
    sz = np.array([s.z_bits for s in code.stabilisers], dtype=np.uint8).reshape(-1, code.n)
    return sx, sz


def _anticommute(x: np.ndarray, z: np.ndarray, ops_x: np.ndarray, ops_z: np.ndarray) -> np.ndarray:
    """(shots, len(ops)) parity of the symplectic product with each operator."""
    if ops_x.shape[0] == 0:
        return np.zeros((x.shape[0], 0), dtype=np.uint8)
    return ((x.astype(np.uint8) @ ops_z.T + z.astype(np.uint8) @ ops_x.T) & 1).astype(np.uint8)


class Decoder:
    kind = "abstract"
    code: StabiliserCode

    def correct(self, x: np.ndarray, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def correction(self, e: PauliOperator) -> PauliOperator:
        cx, cz = self.correct(np.array([e.x_bits], bool), np.array([e.z_bits], bool))
        return PauliOperator.from_arrays(cx[0], cz[0])

    def logical_failure(self, x: np.ndarray, z: np.ndarray) -> np.ndarray:
        """True where decoding leaves a non-trivial logical."""
        cx, cz = self.correct(x, z)
        return logical_flags(self.code, x ^ cx, z ^ cz)

    def fails_on(self, e: PauliOperator) -> bool:
        return bool(self.logical_failure(np.array([e.x_bits], bool), np.array([e.z_bits], bool))[0])


def logical_flags(code: StabiliserCode, rx: np.ndarray, rz: np.ndarray) -> np.ndarray:
    lx = np.array([p.x_bits for p in code.logical_x + code.logical_z], dtype=np.uint8).reshape(-1, code.n)
    lz = np.array([p.z_bits for p in code.logical_x + code.logical_z], dtype=np.uint8).reshape(-1, code.n)
    return _anticommute(rx, rz, lx, lz).any(axis=1)


def _weight_order(n: int):
    """Paulis by weight, then qubit tuple, then letters X < Y < Z: the tie-break order."""
    for w in range(n + 1):
        for qs in itertools.combinations(range(n), w):
            for letters in itertools.product("XYZ", repeat=w):
                yield qs, letters


class LookupDecoder(Decoder):
    """Minimum-weight correction per syndrome, ties broken by :func:`_weight_order`."""

    kind = "lookup_minweight"

    def __init__(self, code: StabiliserCode):
        m = len(code.stabilisers)
        if m > LOOKUP_LIMIT:
            raise CapacityError(
                f"{code.label}: {m} stabilisers exceed the lookup limit of {LOOKUP_LIMIT}; use a level decoder"
            )
        self.code = code
        self.sx, self.sz = _check_matrices(code)
        self.weights = 1 << np.arange(m, dtype=np.int64)
        size = 1 << m
        self.table_x = np.zeros((size, code.n), dtype=bool)
        self.table_z = np.zeros((size, code.n), dtype=bool)
        seen = np.zeros(size, dtype=bool)
        filled = 0
        # Stabiliser symplectic columns per qubit and letter, for cheap syndromes.
        col = {"X": self.sz.T.astype(np.int64) @ self.weights if m else np.zeros(code.n, np.int64),
               "Z": self.sx.T.astype(np.int64) @ self.weights if m else np.zeros(code.n, np.int64)}
        col["Y"] = col["X"] ^ col["Z"]
        for qs, letters in _weight_order(code.n):
            s = 0
            for q, L in zip(qs, letters):
                s ^= int(col[L][q])
            if not seen[s]:
                seen[s] = True
                filled += 1
                for q, L in zip(qs, letters):
                    self.table_x[s, q] = L in "XY"
                    self.table_z[s, q] = L in "YZ"
                if filled == size:
                    break

    def syndromes(self, x: np.ndarray, z: np.ndarray) -> np.ndarray:
        return _anticommute(x, z, self.sx, self.sz).astype(np.int64) @ self.weights

    def correct(self, x, z):
        s = self.syndromes(x, z)
        return self.table_x[s], self.table_z[s]


def build_lookup_decoder(code: StabiliserCode) -> LookupDecoder:
    return LookupDecoder(code)


class LevelDecoder(Decoder):
    """Decode the innermost blocks, pass their residual logical errors up, recurse."""

    kind = "level_by_level"

    def __init__(self, levels: Sequence[StabiliserCode]):
        if len(levels) < 2:
            raise ConfigurationError("a level decoder needs at least two levels")
        self.levels = list(levels)
        self.code = concatenate_levels(levels)
        self.inner = LookupDecoder(levels[-1])
        self.outer = LookupDecoder(levels[0]) if len(levels) == 2 else LevelDecoder(levels[:-1])
        inner = levels[-1]
        self.n_in = inner.n
        self.blocks = self.code.n // inner.n
        X, Z = inner.logical_x[0], inner.logical_z[0]
        self.xbar = (np.array([X.x_bits], np.uint8), np.array([X.z_bits], np.uint8))
        self.zbar = (np.array([Z.x_bits], np.uint8), np.array([Z.z_bits], np.uint8))

    def correct(self, x, z):
        shots = x.shape[0]
        bx = x.reshape(shots * self.blocks, self.n_in)
        bz = z.reshape(shots * self.blocks, self.n_in)
        cx, cz = self.inner.correct(bx, bz)
        rx, rz = bx ^ cx, bz ^ cz
        # Block residual's logical X part anticommutes with Z-bar, its Z part with X-bar.
        a = _anticommute(rx, rz, *self.zbar)[:, 0].astype(bool).reshape(shots, self.blocks, 1)
        b = _anticommute(rx, rz, *self.xbar)[:, 0].astype(bool).reshape(shots, self.blocks, 1)
        ox, oz = self.outer.correct(a[:, :, 0], b[:, :, 0])
        ox, oz = ox[:, :, None], oz[:, :, None]
        cx = cx.reshape(shots, self.blocks, self.n_in)
        cz = cz.reshape(shots, self.blocks, self.n_in)
        cx = cx ^ (ox & self.xbar[0].astype(bool)) ^ (oz & self.zbar[0].astype(bool))
        cz = cz ^ (ox & self.xbar[1].astype(bool)) ^ (oz & self.zbar[1].astype(bool))
        return cx.reshape(shots, -1), cz.reshape(shots, -1)


class BlockwiseDecoder(Decoder):
    """Minimum-weight decoding of each innermost block, with no higher-level step.

    This is the level-ignoring comparison decoder: it never looks at the
    structure above the physical blocks.
    """

    kind = "blockwise_minweight"

    def __init__(self, levels: Sequence[StabiliserCode]):
        self.levels = list(levels)
        self.code = concatenate_levels(levels)
        self.inner = LookupDecoder(levels[-1])
        self.n_in = levels[-1].n

    def correct(self, x, z):
        shots = x.shape[0]
        cx, cz = self.inner.correct(x.reshape(-1, self.n_in), z.reshape(-1, self.n_in))
        return cx.reshape(shots, -1), cz.reshape(shots, -1)


def build_level_decoder(levels: Sequence[StabiliserCode]) -> Decoder:
    """Level-by-level decoder for ``concatenate_levels(levels)`` (outermost first)."""
    if len(levels) == 1:
        return LookupDecoder(levels[0])
    return LevelDecoder(levels)


def decoder_for(code: StabiliserCode, family: Optional[CodeFamily] = None, l: Optional[int] = None, kind: str = "auto") -> Decoder:
    if kind in ("level", "level_by_level") or (kind == "auto" and family is not None and family.levels is not None):
        if family is None or family.levels is None or l is None:
            raise ConfigurationError("a level decoder needs a concatenated family and a size")
        return build_level_decoder(family.level_codes(l))
    if kind in ("auto", "lookup", "lookup_minweight"):
        return LookupDecoder(code)
    raise ConfigurationError(f"unknown decoder kind {kind!r}")


# estimation ---------------------------------------------------------------------------

def wilson_interval(failures: int, shots: int, level: float = 0.95) -> Tuple[float, float]:
    if shots == 0:
        return 0.0, 1.0
    ci = binomtest(failures, shots).proportion_ci(confidence_level=level, method="wilson")
    return float(ci.low), float(ci.high)


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("FTSPREAD_THREADS", "1")))
    except ValueError:
        raise ConfigurationError("FTSPREAD_THREADS must be an integer")


def _count_failures(decoder: Decoder, model: NoiseModel, shots: int, seed: int, threads: int,
                    channel: Optional[CliffordMap] = None) -> int:
    if model.p == 0 or shots == 0:
        return 0
    n = decoder.code.n
    sizes = [CHUNK] * (shots // CHUNK) + ([shots % CHUNK] if shots % CHUNK else [])
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))

    def run(i: int) -> int:
        rng = np.random.default_rng(seeds[i])
        x, z = sample_arrays(model, n, sizes[i], rng)
        if channel is not None:
            x, z = _conjugate_arrays(channel, x, z)
        return int(decoder.logical_failure(x, z).sum())

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return sum(pool.map(run, range(len(sizes))))
    return sum(run(i) for i in range(len(sizes)))


def _conjugate_arrays(m: CliffordMap, x: np.ndarray, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Images of sampled errors under a Clifford map (signs dropped)."""
    n = m.n
    img_x = np.array([[*conjugate(m, PauliOperator.single(n, q, "X")).x_bits] for q in range(n)], np.uint8)
    img_xz = np.array([[*conjugate(m, PauliOperator.single(n, q, "X")).z_bits] for q in range(n)], np.uint8)
    img_z = np.array([[*conjugate(m, PauliOperator.single(n, q, "Z")).x_bits] for q in range(n)], np.uint8)
    img_zz = np.array([[*conjugate(m, PauliOperator.single(n, q, "Z")).z_bits] for q in range(n)], np.uint8)
    xu, zu = x.astype(np.uint8), z.astype(np.uint8)
    nx = (xu @ img_x + zu @ img_z) & 1
    nz = (xu @ img_xz + zu @ img_zz) & 1
    return nx.astype(bool), nz.astype(bool)


@dataclass
class FTEstimate:
    code_label: str
    decoder_kind: str
    channel_label: str
    p_values: List[float]
    failures: List[int]
    shots: List[int]
    seed: int
    confidence_level: float = 0.95
    metric: str = METRIC
    crossing: Optional[Dict[str, object]] = None

    @property
    def logical_error_rates(self) -> List[float]:
        return [f / s if s else 0.0 for f, s in zip(self.failures, self.shots)]

    @property
    def intervals(self) -> List[Tuple[float, float]]:
        return [wilson_interval(f, s, self.confidence_level) for f, s in zip(self.failures, self.shots)]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["logical_error_rates"] = self.logical_error_rates
        d["intervals"] = [list(ci) for ci in self.intervals]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        rows = ["p,shots,failures,rate,ci_low,ci_high"]
        for p, s, f, r, (lo, hi) in zip(self.p_values, self.shots, self.failures, self.logical_error_rates, self.intervals):
            rows.append(f"{p!r},{s},{f},{r!r},{lo!r},{hi!r}")
        return "\n".join(rows) + "\n"


def logical_error_rate(
    code: StabiliserCode,
    decoder: Decoder,
    model: NoiseModel,
    shots: int,
    rng_seed: int,
    *,
    threads: Optional[int] = None,
    channel: Optional[CliffordMap] = None,
    channel_label: str = "memory",
) -> FTEstimate:
    """One-point estimate: fraction of shots whose decoded residual is a non-trivial logical."""
    if decoder.code.n != code.n:
        raise ConfigurationError("decoder is bound to a different code")
    fails = _count_failures(decoder, model, shots, rng_seed, threads or default_threads(), channel)
    return FTEstimate(code.label, decoder.kind, channel_label, [model.p], [fails], [shots], rng_seed)


def _point_seed(seed: int, i: int) -> int:
    return int(np.random.SeedSequence([seed, i]).generate_state(1)[0])


def scan(code: StabiliserCode, decoder: Decoder, p_grid: Sequence[float], shots, seed: int,
         threads: Optional[int] = None) -> FTEstimate:
    shots_list = list(shots) if isinstance(shots, (list, tuple)) else [int(shots)] * len(p_grid)
    fails = [
        _count_failures(decoder, NoiseModel(p), s, _point_seed(seed, i), threads or default_threads())
        for i, (p, s) in enumerate(zip(p_grid, shots_list))
    ]
    return FTEstimate(code.label, decoder.kind, "memory", list(p_grid), fails, shots_list, seed)


def loglog_slope(est: FTEstimate) -> float:
    """Weighted least-squares slope of log(rate) against log(p); weights are failure counts."""
    pts = [(math.log(p), math.log(f / s), f) for p, f, s in zip(est.p_values, est.failures, est.shots) if f > 0]
    if len(pts) < 2:
        raise ConfigurationError("need at least two points with failures to fit a slope")
    X = np.array([[1.0, a] for a, _, _ in pts])
    y = np.array([b for _, b, _ in pts])
    w = np.sqrt(np.array([f for _, _, f in pts], float))
    coef, *_ = np.linalg.lstsq(X * w[:, None], y * w, rcond=None)
    return float(coef[1])


def _crossing(ps: Sequence[float], rates: Sequence[float]) -> Optional[float]:
    g = [math.log(r) - math.log(p) if r > 0 else -math.inf for p, r in zip(ps, rates)]
    for i in range(len(ps) - 1):
        if g[i] < 0 <= g[i + 1] or g[i] <= 0 < g[i + 1]:
            if not math.isfinite(g[i]):
                return ps[i + 1]
            lp0, lp1 = math.log(ps[i]), math.log(ps[i + 1])
            t = -g[i] / (g[i + 1] - g[i]) if g[i + 1] != g[i] else 0.0
            return math.exp(lp0 + t * (lp1 - lp0))
    return None


def pseudothreshold_scan(code: StabiliserCode, decoder: Decoder, p_grid: Sequence[float], shots, seed: int,
                         threads: Optional[int] = None) -> FTEstimate:
    """Scan a grid and locate where the logical rate crosses the physical rate (log-log interpolation).

    The crossing is reported with a bracket from the confidence-interval
    curves. No crossing yields ``{"found": False}``; a code whose rate tracks
    p everywhere (no encoding) is flagged degenerate.
    """
    if len(p_grid) < 4:
        raise ConfigurationError("a pseudothreshold scan needs at least 4 grid points")
    est = scan(code, decoder, p_grid, shots, seed, threads)
    rates = est.logical_error_rates
    cis = est.intervals
    # Bonferroni: the rate must track p at every point jointly, not pointwise.
    joint = 1 - (1 - est.confidence_level) / len(p_grid)
    degenerate = all(
        lo <= p <= hi
        for p, (lo, hi) in zip(p_grid, (wilson_interval(f, s, joint) for f, s in zip(est.failures, est.shots)))
    )
    if degenerate:
        est.crossing = {"found": False, "degenerate": True,
                        "note": "logical rate equals the physical rate across the grid"}
        return est
    mid = _crossing(p_grid, rates)
    if mid is None:
        est.crossing = {"found": False, "degenerate": False}
        return est
    lo = _crossing(p_grid, [hi for _, hi in cis])
    hi = _crossing(p_grid, [max(lo_, 1e-300) for lo_, _ in cis])
    est.crossing = {"found": True, "degenerate": False, "p_star": mid,
                    "bracket": [lo if lo is not None else p_grid[0], hi if hi is not None else p_grid[-1]]}
    return est


# exact oracle ------------------------------------------------------------------------

def failure_weight_enumerator(decoder: Decoder) -> List[int]:
    """Number of failing Paulis of each weight, by exhaustive enumeration (small n only)."""
    n = decoder.code.n
    if n > 9:
        raise CapacityError("exhaustive failure counting is limited to n <= 9")
    total = 4 ** n
    v = np.arange(total, dtype=np.int64)
    x = ((v[:, None] >> np.arange(n)) & 1).astype(bool)
    z = ((v[:, None] >> (np.arange(n) + n)) & 1).astype(bool)
    fail = decoder.logical_failure(x, z)
    w = (x | z).sum(axis=1)
    return [int(np.sum(fail & (w == k))) for k in range(n + 1)]


def exact_failure_rate(counts: Sequence[int], p: float) -> float:
    n = len(counts) - 1
    return float(sum(a * (p / 3) ** w * (1 - p) ** (n - w) for w, a in enumerate(counts)))


# spread demonstrations -------------------------------------------------------------------

@dataclass
class SpreadDemo:
    family: str
    channel: str
    sizes: List[int]
    p: float
    estimates: List[dict]
    rates: List[float]
    trend: str

    def to_dict(self) -> dict:
        return asdict(self)


def ladder_channel(n: int) -> CliffordMap:
    from .circuits.circuit import cnot_ladder

    return cnot_ladder(n).to_clifford_map()


def transversal_x_channel(n: int) -> CliffordMap:
    from .circuits.circuit import transversal

    return transversal(n, "X").to_clifford_map()


CHANNELS = {"cnot_ladder": ladder_channel, "transversal_x": transversal_x_channel}


def unbounded_spread_failure_demo(channel: str, family: CodeFamily, sizes: Sequence[int], p: float, shots: int,
                                  seed: int, threads: Optional[int] = None) -> SpreadDemo:
    """Noise, then the channel spreads it, then decode; repeated across family sizes.

    A spreading channel keeps the rate from falling with size; a transversal
    one lets the larger code win.
    """
    if channel not in CHANNELS:
        raise ConfigurationError(f"unknown channel {channel!r}; choose from {sorted(CHANNELS)}")
    ests, rates = [], []
    for i, l in enumerate(sizes):
        code = family.instantiate(l)
        dec = decoder_for(code, family, l)
        est = logical_error_rate(code, dec, NoiseModel(p), shots, _point_seed(seed, i), threads=threads,
                                 channel=CHANNELS[channel](code.n), channel_label=channel)
        ests.append(est.to_dict())
        rates.append(est.logical_error_rates[0])
    decreasing = all(b < a for a, b in zip(rates, rates[1:]))
    return SpreadDemo(family.name, channel, list(sizes), p, ests, rates, "decreasing" if decreasing else "not decreasing")


# conditional fault tolerance ---------------------------------------------------------------

@dataclass
class ConditionalFTVerdict:
    code_label: str
    decoder_kind: str
    passed: bool
    locations: int
    checked: int
    counterexamples: List[Dict[str, object]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def conditional_ft_check(circuit: Circuit, code: StabiliserCode, decoder: Decoder, max_examples: int = 20) -> ConditionalFTVerdict:
    """Every Pauli on the lightcone of every single-qubit fault must decode to a trivial logical.

    The lightcone over-approximates how a fault on one qubit can propagate
    through the circuit (also through non-Clifford gates), so a pass is sound.
    """
    if circuit.n != code.n or decoder.code.n != code.n:
        raise ConfigurationError("circuit, code and decoder sizes differ")
    reach = lightcone_supports(circuit)
    seen: Dict[int, bool] = {}
    examples: List[Dict[str, object]] = []
    checked = 0
    for q, support in enumerate(reach):
        if support in seen:
            if not seen[support] and len(examples) < max_examples:
                examples.append({"location": q + 1, "support": [b + 1 for b in gf2.bits_of(support)], "error": "as above"})
            continue
        qs = gf2.bits_of(support)
        if len(qs) > 10:
            raise CapacityError(f"lightcone of qubit {q + 1} has {len(qs)} qubits; too many Paulis to enumerate")
        ok = True
        errs = []
        for letters in itertools.product("IXYZ", repeat=len(qs)):
            if all(L == "I" for L in letters):
                continue
            x = sum(1 << b for b, L in zip(qs, letters) if L in "XY")
            z = sum(1 << b for b, L in zip(qs, letters) if L in "YZ")
            errs.append(PauliOperator(code.n, x, z))
        X = np.array([e.x_bits for e in errs], bool)
        Z = np.array([e.z_bits for e in errs], bool)
        fail = decoder.logical_failure(X, Z)
        checked += len(errs)
        if fail.any():
            ok = False
            if len(examples) < max_examples:
                from .pauli import pauli_to_string

                bad = errs[int(np.flatnonzero(fail)[0])]
                examples.append({"location": q + 1, "support": [b + 1 for b in qs], "error": pauli_to_string(bad, True)})
        seen[support] = ok
    passed = all(seen.values())
    return ConditionalFTVerdict(code.label, decoder.kind, passed, circuit.n, checked, examples)


STEANE_T_CIRCUIT = ((("CNOT", 4, 6), ("CNOT", 5, 6)), 6, (("CNOT", 5, 6), ("CNOT", 4, 6)))


def steane_logical_t(offset: int = 0, n: Optional[int] = None, inverse: bool = False) -> Circuit:
    """Logical T on a Steane block via the weight-3 logical Z on qubits 5, 6, 7.

    Parity of qubits 5-7 is gathered on 7, rotated, and uncomputed; a single
    fault reaches at most those three qubits.
    """
    c = Circuit(n if n is not None else offset + 7)
    pre, tq, post = STEANE_T_CIRCUIT
    for g, a, b in pre:
        c.gate(g, offset + a, offset + b)
    c.gate("TDG" if inverse else "T", offset + tq)
    for g, a, b in post:
        c.gate(g, offset + a, offset + b)
    return c


def rm_transversal_t_is_inverse() -> bool:
    """Whether transversal T on Reed-Muller acts as logical T-dagger (checked by dense simulation)."""
    from .circuits.verify import logical_state, logical_t
    from .codes import build_reed_muller

    rm = build_reed_muller()
    plus = logical_state(rm, "X")
    target = logical_t(rm, plus).psi
    st = plus.copy()
    for q in range(rm.n):
        st.apply_gate("T", [q])
    overlap = abs(np.vdot(target, st.psi)) ** 2
    return overlap < 1 - 1e-9


def alternating_t_circuit(levels: Sequence[StabiliserCode]) -> Circuit:
    """Unitary logical T on Reed-Muller∘Steane: a Steane logical T (or T-dagger) on every inner block.

    Reed-Muller's transversal T is logical T-dagger, so each Steane block gets
    the inverse rotation and the two-level action is logical T.
    """
    if len(levels) != 2 or levels[0].n != 15 or levels[1].n != 7:
        raise UnsupportedError("the alternating T circuit is built for two levels: Reed-Muller outside, Steane inside")
    n = 15 * 7
    inverse = rm_transversal_t_is_inverse()
    c = Circuit(n)
    for b in range(15):
        c.ops.extend(steane_logical_t(7 * b, n, inverse).ops)
    return c
