"""GF(2) linear algebra on Python-int bitsets.

A vector is an int whose bit ``i`` is coordinate ``i``. Rows are lists of
such ints. Everything here is exact and allocation-light; the coset
enumerators in :mod:`ftspread.search` switch to numpy when the sizes grow.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple


def popcount(v: int) -> int:
    return v.bit_count()


def parity(v: int) -> int:
    return v.bit_count() & 1


def reduce_basis(rows: Iterable[int]) -> List[int]:
    """Return a reduced echelon basis of the span of ``rows``.

    Pivots are the highest set bit of each basis vector, and no other
    basis vector has that bit set.
    """
    basis: List[int] = []
    for r in rows:
        for b in basis:
            if r ^ b < r:
                r ^= b
        if r:
            top = r.bit_length() - 1
            basis = [b ^ r if (b >> top) & 1 else b for b in basis]
            basis.append(r)
    basis.sort(reverse=True)
    return basis


def rank(rows: Iterable[int]) -> int:
    return len(reduce_basis(rows))


def in_span(v: int, basis: Sequence[int]) -> bool:
    """Membership test against a basis produced by :func:`reduce_basis`."""
    for b in basis:
        if v ^ b < v:
            v ^= b
    return v == 0


def solve(rows: Sequence[int], target: int) -> Optional[int]:
    """Find coefficients ``c`` (a bitmask over ``rows``) with ``XOR_i c_i rows[i] == target``.

    Returns ``None`` when ``target`` is outside the span.
    """
    # Each pivot row carries its combination mask alongside.
    pivots: List[Tuple[int, int]] = []
    for i, r in enumerate(rows):
        combo = 1 << i
        for p, pc in pivots:
            if r ^ p < r:
                r ^= p
                combo ^= pc
        if r:
            pivots.append((r, combo))
            pivots.sort(key=lambda t: t[0], reverse=True)
    combo = 0
    for p, pc in pivots:
        if target ^ p < target:
            target ^= p
            combo ^= pc
    return combo if target == 0 else None


def independent_subset(rows: Sequence[int]) -> List[int]:
    """Indices of a maximal independent subset, greedily in input order."""
    basis: List[int] = []
    keep: List[int] = []
    for i, r in enumerate(rows):
        v = r
        for b in basis:
            if v ^ b < v:
                v ^= b
        if v:
            basis.append(v)
            basis.sort(reverse=True)
            keep.append(i)
    return keep


def nullspace(rows: Sequence[int], ncols: int) -> List[int]:
    """Basis of ``{v : popcount(v & r) even for every r in rows}``."""
    basis = reduce_basis(rows)
    pivots = {b.bit_length() - 1: b for b in basis}
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = 1 << f
        for col, b in pivots.items():
            # Pivot coordinate is set when that row would otherwise be odd on v.
            if (b >> f) & 1:
                v |= 1 << col
        out.append(v)
    return out


def span_elements(rows: Sequence[int]) -> List[int]:
    """All 2^len(rows) combinations, in Gray-code order."""
    out = [0]
    for r in rows:
        out += [v ^ r for v in out]
    return out


def restrict(v: int, mask: int) -> int:
    return v & mask


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def bits_of(v: int) -> List[int]:
    out = []
    i = 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out
