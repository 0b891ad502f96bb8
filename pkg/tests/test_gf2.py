import itertools

from hypothesis import given, strategies as st

from ftspread import gf2

rows = st.lists(st.integers(0, (1 << 10) - 1), max_size=12)


@given(rows)
def test_rank_matches_span_size(rs):
    assert len(set(gf2.span_elements(rs))) == 1 << gf2.rank(rs)


@given(rows, st.integers(0, (1 << 10) - 1))
def test_solve_agrees_with_in_span(rs, target):
    sol = gf2.solve(rs, target)
    basis = gf2.reduce_basis(rs)
    assert (sol is not None) == gf2.in_span(target, basis)
    if sol is not None:
        acc = 0
        for i in gf2.bits_of(sol):
            acc ^= rs[i]
        assert acc == target


@given(rows)
def test_nullspace_vectors_are_orthogonal(rs):
    for v in gf2.nullspace(rs, 10):
        assert all(gf2.parity(r & v) == 0 for r in rs)
    assert len(gf2.nullspace(rs, 10)) == 10 - gf2.rank(rs)


@given(rows)
def test_independent_subset_spans_everything(rs):
    idx = gf2.independent_subset(rs)
    sub = [rs[i] for i in idx]
    assert gf2.rank(sub) == len(sub) == gf2.rank(rs)


def test_small_example():
    assert gf2.rank([0b11, 0b01, 0b10]) == 2
    assert gf2.bits_of(0b1011) == [0, 1, 3]
    assert gf2.mask_of([0, 1, 3]) == 0b1011
    assert sorted(gf2.span_elements([0b01, 0b10])) == [0, 1, 2, 3]
    assert all(gf2.parity(v) == sum(map(int, bin(v)[2:])) % 2 for v, _ in itertools.product(range(64), [0]))
