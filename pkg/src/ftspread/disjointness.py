"""Disjointness of logical representatives.

A c-record for a logical class is a set of distinct representatives in which
no qubit lies in the support of more than ``c`` members; its normalised value
is ``count / c``. The code's disjointness is bracketed by
``max_c min_class count_c / c`` from below and ``n / d`` from above.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import gf2
from .analysis import _check_logical, _generators_for, code_distance
from .codes import (
    CodeFamily,
    StabiliserCode,
    build_toric,
    concatenate,
    logical_label,
    parse_logical_label,
    toric_edge,
)
from .errors import CertificationError, InsufficientEvidenceError, NotALogicalError
from .pauli import PauliOperator, multiply, pauli_to_string
from .search import (
    EXHAUSTIVE_LIMIT,
    coset_minimum_avoiding,
    enumerate_coset,
    minimal_support_elements,
    _from_words,
    _weights,
)

DEFAULT_C_VALUES = (1, 2, 4, 8)
DEFAULT_BUDGET = 200_000


@dataclass
class CRecord:
    c: int
    count: int
    witnesses: List[PauliOperator]
    exact: bool
    method: str

    @property
    def normalised(self) -> Fraction:
        return Fraction(self.count, self.c)

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "count": self.count,
            "normalised": str(self.normalised),
            "exact": self.exact,
            "method": self.method,
            "witnesses": [pauli_to_string(p, sparse=True) for p in self.witnesses],
        }


@dataclass
class DisjointnessReport:
    code_label: str
    n: int
    distance: int
    per_logical: Dict[str, List[CRecord]]
    code: Optional[StabiliserCode] = field(default=None, repr=False)

    @property
    def delta_upper(self) -> Fraction:
        return delta_upper_bound(self.code) if self.code is not None else Fraction(self.n, self.distance)

    def best_record(self, label: str) -> CRecord:
        return max(self.per_logical[label], key=lambda r: (r.normalised, -r.c))

    @property
    def delta_lower(self) -> Fraction:
        cs = sorted({r.c for recs in self.per_logical.values() for r in recs})
        best = Fraction(0)
        for c in cs:
            vals = []
            for recs in self.per_logical.values():
                # A record at c' <= c is also a valid record at c.
                cnt = max((r.count for r in recs if r.c <= c), default=0)
                vals.append(Fraction(cnt, c))
            best = max(best, min(vals))
        return best

    def delta1(self, label: str) -> Optional[int]:
        for r in self.per_logical[label]:
            if r.c == 1:
                return r.count
        return None

    def to_dict(self) -> dict:
        return {
            "code_label": self.code_label,
            "n": self.n,
            "distance": self.distance,
            "delta_lower": str(self.delta_lower),
            "delta_upper": str(Fraction(self.n, self.distance)),
            "per_logical": {k: [r.to_dict() for r in v] for k, v in self.per_logical.items()},
        }


# verification ----------------------------------------------------------------

def verify_witness_set(
    code: StabiliserCode, logical: PauliOperator, witnesses: Sequence[PauliOperator], c: int
) -> bool:
    """Independent check: distinct members, each in the class of ``logical``, multiplicity <= c."""
    target = code.logical_class(logical)
    seen = set()
    counts = np.zeros(code.n, dtype=np.int64)
    for p in witnesses:
        key = (p.x, p.z)
        if key in seen:
            return False
        seen.add(key)
        if code.syndrome(p) or code.logical_class(p) != target:
            return False
        for q in gf2.bits_of(p.support):
            counts[q] += 1
    return bool(counts.max(initial=0) <= c)


def multiplicity(witnesses: Sequence[PauliOperator], n: int) -> int:
    counts = np.zeros(n, dtype=np.int64)
    for p in witnesses:
        for q in gf2.bits_of(p.support):
            counts[q] += 1
    return int(counts.max(initial=0))


# exact packing -----------------------------------------------------------------

def pack(supports: Sequence[int], n: int, c: int, budget: int = DEFAULT_BUDGET,
         warm: Optional[List[int]] = None) -> Tuple[List[int], bool]:
    """Maximum subset of ``supports`` with per-qubit multiplicity <= c.

    Branch and bound over items in the given order (lightest first). The bound
    is ``chosen + min(items left, spare capacity // lightest weight left)``.
    Returns (indices, finished) where ``finished`` means the search proved
    optimality within ``budget`` nodes.
    """
    m = len(supports)
    weights = [s.bit_count() for s in supports]
    bits = [gf2.bits_of(s) for s in supports]
    # Minimum weight among items i.. for the capacity bound.
    suffix_min = [0] * (m + 1)
    suffix_min[m] = n + 1
    for i in range(m - 1, -1, -1):
        suffix_min[i] = min(weights[i], suffix_min[i + 1])
    load = [0] * n
    best: List[int] = list(warm or [])
    chosen: List[int] = []
    nodes = 0
    spare = n * c
    finished = True

    def rec(i: int, spare: int):
        nonlocal best, nodes, finished
        nodes += 1
        if nodes > budget:
            finished = False
            return
        if len(chosen) > len(best):
            best = list(chosen)
        if i >= m:
            return
        wmin = suffix_min[i]
        if wmin == 0:
            return
        if len(chosen) + min(m - i, spare // wmin) <= len(best):
            return
        for j in range(i, m):
            nodes += 1
            if nodes > budget:
                finished = False
                return
            if len(chosen) + min(m - j, spare // suffix_min[j]) <= len(best):
                return
            if all(load[q] < c for q in bits[j]):
                for q in bits[j]:
                    load[q] += 1
                chosen.append(j)
                rec(j + 1, spare - weights[j])
                chosen.pop()
                for q in bits[j]:
                    load[q] -= 1
                if not finished:
                    return

    rec(0, spare)
    return best, finished


def _greedy(supports: Sequence[int], n: int, c: int) -> List[int]:
    load = [0] * n
    out = []
    for j, s in enumerate(supports):
        b = gf2.bits_of(s)
        if all(load[q] < c for q in b):
            for q in b:
                load[q] += 1
            out.append(j)
    return out


def _candidates(code: StabiliserCode, logical: PauliOperator, c: int, max_weight: Optional[int]):
    gens = [(s.x, s.z) for s in code.stabilisers]
    if c == 1:
        return minimal_support_elements(code.n, logical.without_phase(), gens, max_weight)
    xs, zs = enumerate_coset(code.n, logical.x, logical.z, gens)
    w = _weights(xs, zs)
    order = np.lexsort((np.arange(len(w)), w))
    if max_weight is not None:
        order = order[w[order] <= max_weight]
    return [PauliOperator(code.n, _from_words(xs[i]), _from_words(zs[i])) for i in order]


def c_disjointness_record(
    code: StabiliserCode,
    logical: PauliOperator,
    c: int,
    budget: int = DEFAULT_BUDGET,
    max_weight: Optional[int] = None,
) -> CRecord:
    """Largest representative set with multiplicity <= c.

    Exact (``exact=True``) when the coset is enumerable and the search
    finishes inside ``budget``; otherwise the best set found, flagged.
    For ``c == 1`` only support-minimal representatives are considered,
    which loses nothing: a disjoint family stays disjoint after shrinking.
    """
    if c < 1:
        raise ValueError("c must be at least 1")
    _check_logical(code, logical)
    if len(code.stabilisers) > EXHAUSTIVE_LIMIT:
        wit = greedy_disjoint_family(code, logical)
        return CRecord(c, len(wit), wit, False, "greedy_ilp")
    cands = _candidates(code, logical, c, max_weight)
    supports = [p.support for p in cands]
    warm = _greedy(supports, code.n, c)
    idx, finished = pack(supports, code.n, c, budget, warm)
    wit = [cands[i] for i in idx]
    exact = finished and max_weight is None
    rec = CRecord(c, len(wit), wit, exact, "branch_and_bound" if exact else "branch_and_bound_partial")
    if not verify_witness_set(code, logical, wit, c):
        raise CertificationError("packing produced an invalid witness set")
    return rec


def one_disjointness(code: StabiliserCode, logical: PauliOperator, budget: int = DEFAULT_BUDGET):
    rec = c_disjointness_record(code, logical, 1, budget)
    return rec.count, rec.witnesses


def delta_upper_bound(code: StabiliserCode, distance: Optional[int] = None) -> Fraction:
    d = distance if distance is not None else code_distance(code).code_distance
    return Fraction(code.n, d)


def disjointness_report(
    code: StabiliserCode,
    c_values: Iterable[int] = DEFAULT_C_VALUES,
    budget: int = DEFAULT_BUDGET,
    distance: Optional[int] = None,
) -> DisjointnessReport:
    d = distance if distance is not None else code_distance(code).code_distance
    per: Dict[str, List[CRecord]] = {}
    for ab in code.logical_classes():
        lg = code.logical_from_class(*ab)
        per[logical_label(*ab)] = [c_disjointness_record(code, lg, c, budget) for c in c_values]
    return DisjointnessReport(code.label, code.n, d, per, code)


# constructive families ------------------------------------------------------------

def greedy_disjoint_family(code: StabiliserCode, logical: PauliOperator, limit: Optional[int] = None,
                           forbidden: int = 0) -> List[PauliOperator]:
    """Repeatedly take the lightest representative avoiding qubits already used."""
    _check_logical(code, logical)
    gens = _generators_for(code, logical)
    out: List[PauliOperator] = []
    used = forbidden
    while limit is None or len(out) < limit:
        res = coset_minimum_avoiding(code.n, logical.without_phase(), gens, used)
        if res is None or res.witness is None:
            break
        out.append(res.witness)
        used |= res.witness.support
    return out


def css_cross_family(code: StabiliserCode, ab: Tuple[int, int]) -> List[PauliOperator]:
    """Representatives of a mixed class built from disjoint pure-type families.

    Member ``t`` multiplies the ``t``-th representative of each X-type and
    Z-type factor, so every qubit is hit at most once per factor family.
    """
    a, b = ab
    k = code.k
    families = []
    for i in range(k):
        if (a >> i) & 1:
            families.append(greedy_disjoint_family(code, code.logical_x[i]))
        if (b >> i) & 1:
            families.append(greedy_disjoint_family(code, code.logical_z[i]))
    count = min(len(f) for f in families)
    out = []
    for t in range(count):
        acc = PauliOperator.identity(code.n)
        for f in families:
            acc = multiply(acc, f[t])
        out.append(acc.without_phase())
    return out


def constructive_report(code: StabiliserCode, distance: Optional[int] = None) -> DisjointnessReport:
    """Disjointness lower bounds for CSS codes too large to enumerate."""
    if not code.is_css:
        raise NotALogicalError("constructive families need a CSS code")
    d = distance if distance is not None else code_distance(code).code_distance
    per: Dict[str, List[CRecord]] = {}
    for ab in code.logical_classes():
        lab = logical_label(*ab)
        wit = css_cross_family(code, ab)
        c = max(1, multiplicity(wit, code.n))
        if not verify_witness_set(code, code.logical_from_class(*ab), wit, c):
            raise CertificationError(f"{lab}: constructed family failed verification")
        per[lab] = [CRecord(c, len(wit), wit, False, "css_cross")]
    return DisjointnessReport(code.label, code.n, d, per, code)


def toric_parallel_loops(l: int, logical_class: str = "X1") -> List[PauliOperator]:
    """``l`` translated copies of the constructor's loop for one of X1, Z1, X2, Z2."""
    code = build_toric(l)
    n = code.n
    loops = []
    for t in range(l):
        if logical_class == "X1":
            qs, letter = [toric_edge(l, "h", i, t) for i in range(l)], "X"
        elif logical_class == "Z1":
            qs, letter = [toric_edge(l, "h", t, j) for j in range(l)], "Z"
        elif logical_class == "X2":
            qs, letter = [toric_edge(l, "v", t, j) for j in range(l)], "X"
        elif logical_class == "Z2":
            qs, letter = [toric_edge(l, "v", i, t) for i in range(l)], "Z"
        else:
            raise NotALogicalError(f"no loop family for {logical_class!r}")
        loops.append(PauliOperator.from_support(n, letter, qs))
    lg = code.logical_operator(logical_class)
    if not verify_witness_set(code, lg, loops, 1):
        raise CertificationError("toric loops failed verification")
    return loops


def surface3d_y_family(l: int) -> List[PauliOperator]:
    """``l`` representatives of logical Y on the cubic 3D surface code, multiplicity <= 2.

    Member ``t`` is the ``t``-th X sheet times the ``t``-th Z string; sheets
    are pairwise disjoint and so are strings.
    """
    from .codes import build_surface3d

    code = build_surface3d(l, l, l)
    sheets = greedy_disjoint_family(code, code.logical_x[0], limit=l)
    strings = greedy_disjoint_family(code, code.logical_z[0], limit=l)
    out = [multiply(s, z).without_phase() for s, z in zip(sheets, strings)]
    y = code.logical_operator("Y1")
    if len(out) < l or not verify_witness_set(code, y, out, 2):
        raise CertificationError("logical-Y family failed verification")
    return out


# concatenation -------------------------------------------------------------------

def _inner_letter_families(inner: DisjointnessReport) -> Tuple[int, Dict[str, List[PauliOperator]]]:
    """Pick the c whose records give the best common count/c for X, Y and Z."""
    best = None
    for c in sorted({r.c for recs in inner.per_logical.values() for r in recs}):
        fams = {}
        for lab in ("X1", "Y1", "Z1"):
            recs = [r for r in inner.per_logical[lab] if r.c <= c]
            fams[lab[0]] = max(recs, key=lambda r: r.count).witnesses
        cnt = min(len(f) for f in fams.values())
        key = Fraction(cnt, c)
        if best is None or key > best[0]:
            best = (key, c, {k: v[:cnt] for k, v in fams.items()})
    return best[1], best[2]


def concat_delta_lower(
    outer_report: DisjointnessReport,
    inner_report: DisjointnessReport,
    labels: Optional[Sequence[str]] = None,
) -> Tuple[Fraction, DisjointnessReport]:
    """Certified lower bound for ``concatenate(outer, inner)`` from composite witness sets.

    Outer representative ``i`` is lifted with the ``j``-th inner representative
    of each letter on every block it touches; the ``N1*N2`` composites have
    multiplicity at most ``c1*c2``, which is re-measured on the concatenated code.
    """
    if outer_report.delta_lower <= 1 or inner_report.delta_lower <= 1:
        raise InsufficientEvidenceError("both reports need disjointness lower bound > 1")
    outer, inner = outer_report.code, inner_report.code
    if outer is None or inner is None:
        raise CertificationError("reports must carry their codes")
    code = concatenate(outer, inner)
    c2, fams = _inner_letter_families(inner_report)
    per: Dict[str, List[CRecord]] = {}
    for lab in labels or list(outer_report.per_logical):
        rec = outer_report.best_record(lab)
        composites = []
        for j in range(len(fams["X"])):
            for r in rec.witnesses:
                acc = PauliOperator.identity(code.n)
                for b in gf2.bits_of(r.support):
                    rep = fams[r.letter(b)][j]
                    acc = multiply(acc, rep.embed(code.n, b * inner.n))
                composites.append(acc.without_phase())
        c = multiplicity(composites, code.n)
        if c > rec.c * c2:
            raise CertificationError(f"{lab}: composite multiplicity {c} exceeds {rec.c * c2}")
        lg = code.logical_operator(lab)
        if not verify_witness_set(code, lg, composites, c):
            raise CertificationError(f"{lab}: composite witnesses failed verification")
        per[lab] = [CRecord(c, len(composites), composites, False, "concatenation_product")]
    d = outer_report.distance * inner_report.distance
    rep = DisjointnessReport(code.label, code.n, d, per, code)
    return rep.delta_lower, rep


# family evidence -----------------------------------------------------------------

def family_disjointness_evidence(family: CodeFamily, sizes: Sequence[int]) -> Dict[int, Fraction]:
    """Certified disjointness lower bound per size.

    Concatenated families build each level from an exact base report;
    lattice families use the constructive CSS families.
    """
    out: Dict[int, Fraction] = {}
    if family.levels is not None:
        for l in sorted(sizes):
            levels = family.level_codes(l)
            reports = [disjointness_report(c) for c in levels]
            acc = reports[-1]
            # Fold from the innermost level outwards.
            for rep in reversed(reports[:-1]):
                _, acc = concat_delta_lower(rep, acc)
            out[l] = acc.delta_lower
        return out
    for l in sizes:
        code = family.instantiate(l)
        out[l] = constructive_report(code).delta_lower
    return out


def scrubbing_consistency(report: DisjointnessReport) -> List[str]:
    """Check ``count_c <= c * |supp U|`` for every witness U of an anticommuting class.

    Every representative of class P meets the support of any Pauli that
    anticommutes with P, so a multiplicity-c family of P has at most
    ``c*wt(U)`` members. Returns violations (empty when consistent).
    """
    code = report.code
    bad = []
    for lab_p, recs_p in report.per_logical.items():
        ap, bp = parse_logical_label(lab_p, code.k)
        for lab_u, recs_u in report.per_logical.items():
            au, bu = parse_logical_label(lab_u, code.k)
            if (gf2.parity(ap & bu) ^ gf2.parity(bp & au)) == 0:
                continue
            for rp in recs_p:
                for ru in recs_u:
                    for u in ru.witnesses:
                        hits = sum(1 for p in rp.witnesses if p.support & u.support)
                        if hits != rp.count or rp.count > rp.c * u.support.bit_count():
                            bad.append(f"{lab_p} c={rp.c} vs {lab_u} witness {u}")
    return bad
