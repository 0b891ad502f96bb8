"""Error spread of Clifford channels and support-propagation bounds for circuits."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from .analysis import ratio_rule
from .circuits.circuit import Circuit, Gate
from .codes import CodeFamily
from .errors import UndefinedSpreadError, UnsupportedError
from .pauli import CliffordMap, PauliOperator, conjugate


@dataclass
class SpreadReport:
    channel_label: str
    exact_spread: Optional[Fraction] = None
    per_single_qubit: Dict[str, int] = field(default_factory=dict)
    lightcone_bound: Optional[int] = None
    bound_kind: str = "exact_clifford"

    def to_dict(self) -> dict:
        return {
            "channel_label": self.channel_label,
            "exact_spread": None if self.exact_spread is None else str(self.exact_spread),
            "per_single_qubit": dict(self.per_single_qubit),
            "lightcone_bound": self.lightcone_bound,
            "bound_kind": self.bound_kind,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def spread_of_pauli(m: CliffordMap, e: PauliOperator) -> Fraction:
    if e.is_identity():
        raise UndefinedSpreadError("spread of the identity is undefined")
    return Fraction(conjugate(m, e).support.bit_count(), e.support.bit_count())


def spread_of_clifford(m: CliffordMap, label: str = "clifford") -> SpreadReport:
    """Maximum image weight over the 3n single-qubit Paulis.

    For a unitary channel this equals the maximum spread over every Pauli:
    the image of a product is the product of images, so its support is
    covered by the union of per-qubit image supports.
    """
    per = {}
    for q in range(m.n):
        for letter in "XYZ":
            img = conjugate(m, PauliOperator.single(m.n, q, letter))
            per[f"{letter}{q + 1}"] = img.support.bit_count()
    return SpreadReport(label, Fraction(max(per.values())), per, None, "exact_clifford")


def exhaustive_spread(m: CliffordMap) -> Fraction:
    """Maximum spread over all 4^n - 1 Paulis; for cross-checking small maps only."""
    best = Fraction(0)
    for v in range(1, 4 ** m.n):
        e = PauliOperator.from_symplectic(m.n, v)
        best = max(best, spread_of_pauli(m, e))
    return best


def lightcone_supports(c: Circuit) -> List[int]:
    """For each qubit, the bitmask of qubits its support can reach by the end of ``c``."""
    # touching[w]: starting qubits whose support may have reached wire w.
    touching = [1 << q for q in range(c.n)]
    for op in c.ops:
        if not isinstance(op, Gate):
            raise UnsupportedError("lightcone bounds need a measurement-free circuit")
        if len(op.targets) < 2:
            continue
        merged = 0
        for t in op.targets:
            merged |= touching[t]
        for t in op.targets:
            touching[t] = merged
    return [sum(1 << w for w in range(c.n) if touching[w] >> q & 1) for q in range(c.n)]


def lightcone_spread_bound(c: Circuit, label: str = "circuit") -> SpreadReport:
    reach = lightcone_supports(c)
    bound = max((r.bit_count() for r in reach), default=0)
    report = SpreadReport(label, None, {}, bound, "lightcone")
    if c.is_clifford:
        exact = spread_of_clifford(c.to_clifford_map(), label)
        report.exact_spread = exact.exact_spread
        report.per_single_qubit = exact.per_single_qubit
    return report


def transversal_bound(num_blocks: int) -> int:
    """A transversal gate touches at most one qubit per block, so spread <= blocks."""
    if num_blocks < 1:
        raise ValueError("num_blocks must be positive")
    return num_blocks


def locality_preserving_bound(epsilon: int, dimension: int) -> int:
    """Largest image of one qubit under a range-epsilon map on a D-dimensional lattice."""
    if epsilon < 0 or dimension < 1:
        raise ValueError("need epsilon >= 0 and dimension >= 1")
    return (2 * epsilon + 1) ** dimension


@dataclass
class SpreadTrend:
    label: str
    sizes: List[int]
    spreads: List[Fraction]
    bounded: bool

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "sizes": self.sizes,
            "spreads": [str(s) for s in self.spreads],
            "verdict": "bounded" if self.bounded else "unbounded-trend",
        }


def family_spread_trend(
    family: Optional[CodeFamily],
    channel_builder: Callable[[int], CliffordMap],
    sizes: Sequence[int],
    label: str = "channel",
) -> SpreadTrend:
    """Exact spread per size; bounded when the sequence is non-increasing within 10%."""
    spreads = []
    for l in sizes:
        if family is not None and l not in family.index_domain:
            raise ValueError(f"size {l} outside {family.name} domain")
        spreads.append(spread_of_clifford(channel_builder(l)).exact_spread)
    # Only the growth half of the ratio rule applies: spreads are not normalised.
    bounded = ratio_rule(spreads, ceiling=float("inf"))
    return SpreadTrend(label, list(sizes), spreads, bounded)


def transversal_map(n: int, name: str) -> CliffordMap:
    from .circuits.circuit import transversal

    return transversal(n, name).to_clifford_map()


def cnot_ladder_map(n: int) -> CliffordMap:
    from .circuits.circuit import cnot_ladder

    return cnot_ladder(n).to_clifford_map()
