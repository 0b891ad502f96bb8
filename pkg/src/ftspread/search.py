"""Minimum-weight search over cosets ``L · <S>`` of a stabiliser group.

Three engines, picked by :func:`coset_minimum`:

* exhaustive enumeration of the coset with numpy (``2**m`` elements);
* a mixed-integer program solved by HiGHS, exact for any size it finishes;
* bounded support enumeration with a GF(2) membership solve, kept for small
  cross-checks and as the capped fallback.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from . import gf2
from .errors import CapacityError
from .pauli import PauliOperator

EXHAUSTIVE_LIMIT = 20


class SearchMethod(str, Enum):
    EXHAUSTIVE_COSET = "exhaustive_coset"
    WEIGHT_BOUNDED_SEARCH = "weight_bounded_search"
    ILP_EXACT = "ilp_exact"


@dataclass(frozen=True)
class CosetMinimum:
    weight: int
    witness: Optional[PauliOperator]
    method: SearchMethod
    exact: bool = True


def _to_words(v: int, words: int) -> np.ndarray:
    out = np.zeros(words, dtype=np.uint64)
    for w in range(words):
        out[w] = (v >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    return out


def _from_words(row: np.ndarray) -> int:
    v = 0
    for w in range(len(row) - 1, -1, -1):
        v = (v << 64) | int(row[w])
    return v


def enumerate_coset(
    n: int, rep_x: int, rep_z: int, gens: Sequence[Tuple[int, int]]
) -> Tuple[np.ndarray, np.ndarray]:
    """All ``2**len(gens)`` coset elements as (x, z) word arrays of shape (N, words)."""
    words = max(1, (n + 63) // 64)
    if len(gens) > 26:
        raise CapacityError(f"coset of 2^{len(gens)} elements is too large to enumerate")
    xs = _to_words(rep_x, words)[None, :]
    zs = _to_words(rep_z, words)[None, :]
    for gx, gz in gens:
        xs = np.concatenate([xs, xs ^ _to_words(gx, words)])
        zs = np.concatenate([zs, zs ^ _to_words(gz, words)])
    return xs, zs


def _weights(xs: np.ndarray, zs: np.ndarray) -> np.ndarray:
    return np.bitwise_count(xs | zs).sum(axis=1, dtype=np.int64)


def _exhaustive(n: int, rep: PauliOperator, gens: Sequence[Tuple[int, int]]) -> CosetMinimum:
    xs, zs = enumerate_coset(n, rep.x, rep.z, gens)
    w = _weights(xs, zs)
    best = int(w.min())
    # Lexicographically smallest symplectic vector among the minimisers.
    cands = np.flatnonzero(w == best)
    pick = min(cands, key=lambda i: (_from_words(zs[i]), _from_words(xs[i])))
    witness = PauliOperator(n, _from_words(xs[pick]), _from_words(zs[pick]))
    return CosetMinimum(best, witness, SearchMethod.EXHAUSTIVE_COSET)


def _ilp(n: int, rep: PauliOperator, gens: Sequence[Tuple[int, int]], use_x: bool, use_z: bool,
         time_limit: Optional[float], forbidden: int = 0) -> Optional[CosetMinimum]:
    """Solve ``min |supp(rep · prod g_j^{a_j})|`` as a MILP.

    Each coordinate's parity constraint ``sum_j G_ij a_j + r_i = v_i (mod 2)``
    is written as ``sum_j G_ij a_j - v_i - 2 t_i = -r_i`` with integer ``t_i``.
    """
    m = len(gens)
    parts = [(0, use_x), (1, use_z)]
    blocks = [p for p, on in parts if on]
    nb = len(blocks)
    # Variable layout: a (m) | v per block (nb*n) | t per block (nb*n) | w (n).
    nv = m + 2 * nb * n + n
    a0, v0, t0, w0 = 0, m, m + nb * n, m + 2 * nb * n
    rows, lo, hi = [], [], []
    tmax = []
    for bi, part in enumerate(blocks):
        for i in range(n):
            row = np.zeros(nv)
            cnt = 0
            for j, g in enumerate(gens):
                if (g[part] >> i) & 1:
                    row[a0 + j] = 1
                    cnt += 1
            r = ((rep.x if part == 0 else rep.z) >> i) & 1
            row[v0 + bi * n + i] = -1
            row[t0 + bi * n + i] = -2
            rows.append(row)
            lo.append(-r)
            hi.append(-r)
            tmax.append((cnt + r) // 2)
            wrow = np.zeros(nv)
            wrow[w0 + i] = 1
            wrow[v0 + bi * n + i] = -1
            rows.append(wrow)
            lo.append(0)
            hi.append(np.inf)
    ub = np.ones(nv)
    ub[t0:t0 + nb * n] = tmax
    for i in gf2.bits_of(forbidden):
        ub[w0 + i] = 0
        for bi in range(nb):
            ub[v0 + bi * n + i] = 0
    cost = np.zeros(nv)
    cost[w0:w0 + n] = 1
    res = milp(
        cost,
        constraints=LinearConstraint(np.array(rows), lo, hi),
        integrality=np.ones(nv),
        bounds=Bounds(np.zeros(nv), ub),
        options={"time_limit": time_limit} if time_limit else None,
    )
    if res.status == 2:
        return None
    if res.x is None:
        raise CapacityError(f"integer program did not finish: {res.message}")
    a = np.round(res.x[a0:a0 + m]).astype(int)
    x, z = rep.x, rep.z
    for j, g in enumerate(gens):
        if a[j]:
            x ^= g[0]
            z ^= g[1]
    witness = PauliOperator(n, x, z)
    exact = res.status == 0
    return CosetMinimum(witness.support.bit_count(), witness, SearchMethod.ILP_EXACT, exact)


def css_pair_minimum(n: int, rep: PauliOperator, x_gens: Sequence[int], z_gens: Sequence[int]) -> CosetMinimum:
    """Exact minimum for a CSS coset, pairing the X-part and Z-part cosets.

    Weight is ``|a | b|`` over ``a`` in the X coset and ``b`` in the Z coset;
    both lists are scanned lightest first and pruned by ``max(|a|, |b|)``.
    """
    xa, _ = enumerate_coset(n, rep.x, 0, [(g, 0) for g in x_gens if g])
    zb, _ = enumerate_coset(n, rep.z, 0, [(g, 0) for g in z_gens if g])
    wa = np.bitwise_count(xa).sum(axis=1, dtype=np.int64)
    wb = np.bitwise_count(zb).sum(axis=1, dtype=np.int64)
    oa, ob = np.argsort(wa, kind="stable"), np.argsort(wb, kind="stable")
    xa, wa, zb, wb = xa[oa], wa[oa], zb[ob], wb[ob]
    best, pick = n + 1, (0, 0)
    for i in range(len(xa)):
        if wa[i] >= best:
            break
        cut = int(np.searchsorted(wb, best, side="left"))
        if cut == 0:
            break
        u = np.bitwise_count(xa[i][None, :] | zb[:cut]).sum(axis=1, dtype=np.int64)
        j = int(np.argmin(u))
        if u[j] < best:
            best, pick = int(u[j]), (i, j)
    witness = PauliOperator(n, _from_words(xa[pick[0]]), _from_words(zb[pick[1]]))
    return CosetMinimum(best, witness, SearchMethod.EXHAUSTIVE_COSET)


def weight_bounded_search(
    n: int, rep: PauliOperator, gens: Sequence[Tuple[int, int]], cap: int
) -> CosetMinimum:
    """Try supports of size 1, 2, ... up to ``cap``.

    A support ``T`` admits a coset element inside it iff ``rep`` restricted to
    the complement of ``T`` lies in the span of the generators restricted there.
    Returns a lower bound ``cap + 1`` (``exact=False``) when nothing fits.
    """
    full = (1 << n) - 1
    sym = lambda x, z: x | (z << n)
    rows = [sym(gx, gz) for gx, gz in gens]
    target = sym(rep.x, rep.z)
    for w in range(0, cap + 1):
        for qubits in itertools.combinations(range(n), w):
            keep = gf2.mask_of(qubits)
            outside = (full & ~keep) | ((full & ~keep) << n)
            mask = gf2.solve([r & outside for r in rows], target & outside)
            if mask is None:
                continue
            x, z = rep.x, rep.z
            for j in gf2.bits_of(mask):
                x ^= gens[j][0]
                z ^= gens[j][1]
            witness = PauliOperator(n, x, z)
            if witness.support.bit_count() == w:
                return CosetMinimum(w, witness, SearchMethod.WEIGHT_BOUNDED_SEARCH)
    return CosetMinimum(cap + 1, None, SearchMethod.WEIGHT_BOUNDED_SEARCH, exact=False)


def coset_minimum(
    n: int,
    rep: PauliOperator,
    gens: Sequence[Tuple[int, int]],
    *,
    method: Optional[str] = None,
    weight_cap: int = 12,
    time_limit: Optional[float] = 120.0,
) -> CosetMinimum:
    """Minimum weight over ``rep · span(gens)``; gens are (x, z) int pairs.

    With ``method=None`` the coset is enumerated when ``len(gens) <=
    EXHAUSTIVE_LIMIT`` and otherwise solved as an integer program.
    """
    gens = [g for g in gens if g[0] or g[1]]
    if method is None:
        method = "exhaustive_coset" if len(gens) <= EXHAUSTIVE_LIMIT else "ilp_exact"
    method = SearchMethod(method)
    if method is SearchMethod.EXHAUSTIVE_COSET:
        return _exhaustive(n, rep, gens)
    if method is SearchMethod.WEIGHT_BOUNDED_SEARCH:
        return weight_bounded_search(n, rep, gens, weight_cap)
    return _ilp(n, rep, gens, *_parts(rep, gens), time_limit)


def _parts(rep: PauliOperator, gens: Sequence[Tuple[int, int]]) -> Tuple[bool, bool]:
    return bool(rep.x) or any(g[0] for g in gens), bool(rep.z) or any(g[1] for g in gens)


def coset_minimum_avoiding(
    n: int,
    rep: PauliOperator,
    gens: Sequence[Tuple[int, int]],
    forbidden: int,
    time_limit: Optional[float] = 60.0,
) -> Optional[CosetMinimum]:
    """Lightest coset element with no support on ``forbidden``; None if there is none."""
    gens = [g for g in gens if g[0] or g[1]]
    return _ilp(n, rep, gens, *_parts(rep, gens), time_limit, forbidden)


def minimal_support_elements(
    n: int, rep: PauliOperator, gens: Sequence[Tuple[int, int]], max_weight: Optional[int] = None
) -> List[PauliOperator]:
    """Coset elements whose support contains no other element's support.

    Used by packing searches: any packing can swap a member for a
    support-minimal representative without breaking disjointness.
    """
    xs, zs = enumerate_coset(n, rep.x, rep.z, gens)
    w = _weights(xs, zs)
    order = np.argsort(w, kind="stable")
    if max_weight is not None:
        order = order[w[order] <= max_weight]
    kept: List[Tuple[int, PauliOperator]] = []
    for i in order:
        p = PauliOperator(n, _from_words(xs[i]), _from_words(zs[i]))
        s = p.support
        if any((k & s) == k for k, _ in kept):
            continue
        kept.append((s, p))
    return [p for _, p in kept]
