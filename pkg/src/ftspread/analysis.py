"""Per-logical distances and the bounded-spread classification of code families.

A logical class is judged to have distance comparable to the code distance
by a finite-size ratio rule (see :func:`ratio_rule`). The judged classes
generate a subgroup of the logical Pauli group; whether it is the whole
group decides between the two restriction arguments reported by
:func:`b_group_report`.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import gf2
from .codes import CodeFamily, StabiliserCode, logical_label, parse_logical_label
from .errors import InsufficientEvidenceError, NoReportError, NotALogicalError
from .pauli import PauliOperator, pauli_to_string
from .search import EXHAUSTIVE_LIMIT, CosetMinimum, coset_minimum, css_pair_minimum

PAIR_LIMIT = 16

RATIO_TOLERANCE = 0.10
RATIO_CEILING = 2
RULE_NOTE = (
    "P-down membership uses a finite-size ratio rule: d_L(l)/d(l) non-increasing "
    "within 10% across sampled sizes and final ratio <= 2. Heuristic, not a limit."
)


@dataclass
class DistanceReport:
    code_label: str
    per_logical: Dict[str, int]
    witnesses: Dict[str, PauliOperator]
    code_distance: int
    method: str
    methods: Dict[str, str] = field(default_factory=dict)
    exact: bool = True
    flags: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "code_label": self.code_label,
            "per_logical": dict(self.per_logical),
            "witnesses": {k: pauli_to_string(v, sparse=True) for k, v in self.witnesses.items()},
            "code_distance": self.code_distance,
            "method": self.method,
            "methods": dict(self.methods),
            "exact": self.exact,
            "flags": list(self.flags),
        }


def _check_logical(code: StabiliserCode, logical: PauliOperator):
    if logical.n != code.n:
        raise NotALogicalError("logical acts on the wrong number of qubits")
    if code.syndrome(logical):
        raise NotALogicalError(f"{logical} anticommutes with a stabiliser")
    if code.stabiliser_decomposition(logical) is not None:
        raise NotALogicalError(f"{logical} is a stabiliser element")


def _generators_for(code: StabiliserCode, logical: PauliOperator) -> List[Tuple[int, int]]:
    # For CSS codes a pure-X class is minimised by a pure-X element: dropping
    # the Z part of any representative never increases its weight.
    if code.is_css and logical.is_x_type():
        return [(s.x, 0) for s in code.x_stabilisers]
    if code.is_css and logical.is_z_type():
        return [(0, s.z) for s in code.z_stabilisers]
    return [(s.x, s.z) for s in code.stabilisers]


def logical_distance(
    code: StabiliserCode,
    logical: PauliOperator,
    *,
    method: Optional[str] = None,
    weight_cap: int = 12,
) -> CosetMinimum:
    """Minimum weight over the coset ``logical · <stabilisers>`` with a witness."""
    _check_logical(code, logical)
    xs, zs = code.x_stabilisers, code.z_stabilisers
    if (
        method is None
        and code.is_css
        and logical.x
        and logical.z
        and len(code.stabilisers) > EXHAUSTIVE_LIMIT
        and max(len(xs), len(zs)) <= PAIR_LIMIT
    ):
        return css_pair_minimum(code.n, logical, [s.x for s in xs], [s.z for s in zs])
    return coset_minimum(code.n, logical.without_phase(), _generators_for(code, logical),
                         method=method, weight_cap=weight_cap)


def _classes_for(code: StabiliserCode) -> Tuple[List[Tuple[int, int]], List[str]]:
    if code.k <= 2:
        return code.logical_classes(), []
    single = []
    for i in range(code.k):
        single += [(1 << i, 0), (0, 1 << i), (1 << i, 1 << i)]
    return single, [f"k={code.k} > 2: only single-qubit logical classes computed"]


def code_distance(
    code: StabiliserCode,
    *,
    method: Optional[str] = None,
    weight_cap: int = 12,
    threads: int = 1,
) -> DistanceReport:
    classes, flags = _classes_for(code)

    def one(ab):
        return logical_distance(code, code.logical_from_class(*ab), method=method, weight_cap=weight_cap)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(one, classes))
    else:
        results = [one(ab) for ab in classes]
    per, wit, meth = {}, {}, {}
    exact = True
    for ab, res in zip(classes, results):
        lab = logical_label(*ab)
        per[lab] = res.weight
        meth[lab] = res.method.value
        if res.witness is not None:
            wit[lab] = res.witness
        if not res.exact:
            exact = False
            flags.append(f"{lab}: lower bound only ({res.method.value} cap reached)")
    used = set(meth.values())
    overall = used.pop() if len(used) == 1 else "mixed"
    return DistanceReport(code.label, per, wit, min(per.values()), overall, meth, exact, flags)


# classification -------------------------------------------------------------

def ratio_rule(ratios: Sequence[Fraction], tolerance: float = RATIO_TOLERANCE,
               ceiling: float = RATIO_CEILING) -> bool:
    """True when the ratio sequence is non-increasing within ``tolerance`` and ends at most ``ceiling``."""
    if not ratios:
        return False
    for a, b in zip(ratios, ratios[1:]):
        if b > a * Fraction(1 + tolerance).limit_denominator(1000):
            return False
    return ratios[-1] <= ceiling


def _class_vector(ab: Tuple[int, int], k: int) -> int:
    return ab[0] | (ab[1] << k)


def _vector_class(v: int, k: int) -> Tuple[int, int]:
    return v & ((1 << k) - 1), v >> k


VERDICTS = ("asymmetric_rule", "symmetric_infinite_disjointness_rule", "inconclusive")


@dataclass
class FamilyClassification:
    family: str
    sampled_sizes: List[int]
    distance_table: Dict[int, DistanceReport]
    p_down_members: List[str]
    p_down_generators: List[str]
    symmetric: bool
    b_constrained_verdict: str
    evidence: Dict[str, List[str]]
    k: int = 1
    p_down_span: List[str] = field(default_factory=list)
    disjointness_lower: Dict[int, str] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "sampled_sizes": list(self.sampled_sizes),
            "distance_table": {str(l): r.to_dict() for l, r in self.distance_table.items()},
            "p_down_members": list(self.p_down_members),
            "p_down_generators": list(self.p_down_generators),
            "p_down_span": list(self.p_down_span),
            "symmetric": self.symmetric,
            "b_constrained_verdict": self.b_constrained_verdict,
            "evidence": {k: list(v) for k, v in self.evidence.items()},
            "disjointness_lower": {str(k): v for k, v in self.disjointness_lower.items()},
            "k": self.k,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _check_sizes(family: CodeFamily, sizes: Sequence[int]) -> List[int]:
    sizes = list(sizes)
    if len(set(sizes)) != len(sizes):
        raise InsufficientEvidenceError("sizes must be distinct")
    bad = [l for l in sizes if l not in family.index_domain]
    if bad:
        raise InsufficientEvidenceError(f"sizes {bad} outside index domain {family.index_domain}")
    # Short index domains (concatenation depth) count as complete evidence.
    if len(sizes) < 3 and sorted(sizes) != sorted(family.index_domain):
        raise InsufficientEvidenceError(
            f"need at least 3 sizes (or the whole index domain {family.index_domain}), got {sizes}"
        )
    return sizes


def classify_family(
    family: CodeFamily,
    sizes: Sequence[int],
    *,
    disjointness: Optional[Dict[int, Fraction]] = None,
    method: Optional[str] = None,
    threads: int = 1,
) -> FamilyClassification:
    """Judge P-down membership per logical class and emit the restriction verdict.

    ``disjointness`` maps size to a certified lower bound on the disjointness;
    when omitted and the family is symmetric it is computed with
    :func:`ftspread.disjointness.family_disjointness_evidence`.
    """
    sizes = _check_sizes(family, sizes)
    table: Dict[int, DistanceReport] = {}
    for l in sizes:
        table[l] = code_distance(family.instantiate(l), method=method, threads=threads)
    k = family.instantiate(sizes[0]).k
    # Classes are keyed by label; the label set is identical across sizes.
    labels = list(table[sizes[0]].per_logical)
    ordered = sorted(sizes)
    ratios = {
        lab: [Fraction(table[l].per_logical[lab], table[l].code_distance) for l in ordered]
        for lab in labels
    }
    members = [lab for lab in labels if ratio_rule(ratios[lab])]
    vecs = [_class_vector(parse_logical_label(lab, k), k) for lab in members]
    keep = gf2.independent_subset(vecs)
    generators = [members[i] for i in keep]
    span = sorted(
        (logical_label(*_vector_class(v, k)) for v in gf2.span_elements([vecs[i] for i in keep]) if v),
    )
    symmetric = len(keep) == 2 * k
    notes = [RULE_NOTE]
    evidence = {lab: [str(r) for r in ratios[lab]] for lab in labels}
    dis_table: Dict[int, str] = {}
    if not symmetric:
        if generators:
            verdict = "asymmetric_rule"
        else:
            verdict = "inconclusive"
            notes.append("no logical class passes the ratio rule")
    else:
        if disjointness is None:
            from .disjointness import family_disjointness_evidence

            disjointness = family_disjointness_evidence(family, ordered)
        vals = [Fraction(disjointness[l]) for l in ordered]
        dis_table = {l: str(disjointness[l]) for l in ordered}
        if all(b > a for a, b in zip(vals, vals[1:])) and vals[-1] > 1:
            verdict = "symmetric_infinite_disjointness_rule"
        else:
            verdict = "inconclusive"
            notes.append("certified disjointness lower bounds do not grow across sizes")
    return FamilyClassification(
        family.name, list(sizes), table, members, generators, symmetric, verdict,
        evidence, k, span, dis_table, notes,
    )


def _invariant_state(generators: Sequence[str], k: int) -> Optional[str]:
    if k != 1 or len(generators) != 1:
        return None
    return {"Z1": "|0>", "X1": "|+>", "Y1": "|+i>"}[generators[0]]


def b_group_report(c: FamilyClassification) -> str:
    """Plain-text consequence of the verdict for the group of bounded-spread logicals."""
    if c.b_constrained_verdict == "inconclusive":
        raise NoReportError(f"{c.family}: verdict is inconclusive, nothing to report")
    lines = [f"family: {c.family}", f"sizes: {c.sampled_sizes}"]
    if c.b_constrained_verdict == "asymmetric_rule":
        gens = ", ".join(c.p_down_generators)
        lines.append(f"asymmetric: P-down generated by <{gens}> (proper subgroup)")
        lines.append(
            "the joint +1 eigenspace of the P-down generators is invariant under every "
            "bounded-spread logical implementation"
        )
        state = _invariant_state(c.p_down_generators, c.k)
        if state:
            lines.append(f"invariant state: logical {state}; B not universal")
        else:
            lines.append("invariant subspace is proper; B not universal")
    else:
        lines.append("symmetric: P-down spans the full logical Pauli group")
        lines.append(f"disjointness lower bounds grow: {c.disjointness_lower}")
        lines.append("B ⊆ Clifford; B not universal")
    lines.append(RULE_NOTE)
    return "\n".join(lines)
