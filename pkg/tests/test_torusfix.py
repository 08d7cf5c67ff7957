from collections import Counter
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from steiner_moduli.gitstab import LinearMatrix, Verdict, stability_k2
from steiner_moduli.tangweights import solve_weights
from steiner_moduli.torusfix import (
    FixedPointType1,
    FixedPointType2,
    ScopeError,
    enum_type1,
    enum_type2,
    representative,
    type1_matrix,
)

ADMISSIBLE = [(n, m) for m in range(1, 10, 2) for n in range(1, m + 1) if m <= 2 * n - 1]


def test_type1_counts_small():
    assert sum(1 for _ in enum_type1(3, 3)) == 54
    assert sum(1 for _ in enum_type1(5, 5)) == 1500
    assert list(enum_type1(1, 1)) == [FixedPointType1(1, (0, 1), (1, 0))]


def test_type2_counts_small():
    v3 = list(enum_type2(3, 3))
    assert len(v3) == 4 and all(p.l == 3 and p.d == 1 for p in v3)
    by_l = Counter(p.l for p in enum_type2(5, 5))
    assert by_l == {3: 60, 5: 6}
    assert list(enum_type2(1, 1)) == []


@pytest.mark.parametrize("n,m", [p for p in ADMISSIBLE if p[1] <= 7])
def test_census_matches_binomials(n, m):
    t = (m + 1) // 2
    pts = list(enum_type1(n, m))
    assert len(pts) == comb(n + 1, 2) * comb(n, t) ** 2
    assert len(set(pts)) == len(pts)
    assert pts == sorted(pts, key=lambda p: (p.I[0], p.J[0], p.I[1:], p.J[1:]))
    vecs = list(enum_type2(n, m))
    assert len(set(vecs)) == len(vecs)
    assert [p.indices for p in vecs] == sorted(p.indices for p in vecs)
    per_d = Counter(p.d for p in vecs)
    for d in range(0, (m + 2) // 2 + 1):
        want = comb(n + 1, d) * comb(n + 1 - d, m + 2 - 2 * d) if m + 2 - 2 * d >= 3 else 0
        assert per_d.get(d, 0) == want
    # the same numbers, grouped by l = 2e+1
    for e in range(1, n - t + 1):
        assert sum(1 for p in vecs if p.l == 2 * e + 1) == comb(n + 1, t - e) * comb(n + 1 - t + e, 2 * e + 1)


def test_scope_errors():
    for n, m in ((3, 4), (3, 7), (0, 1), (2, 1)):
        with pytest.raises(ScopeError):
            list(enum_type1(n, m))
        with pytest.raises(ScopeError):
            list(enum_type2(n, m))


def test_invalid_points():
    with pytest.raises(ValueError):
        FixedPointType1(3, (1, 2, 3), (0, 1, 2))  # i0 > j0
    with pytest.raises(ValueError):
        FixedPointType1(3, (0, 0, 1), (1, 2, 3))  # i0 in tail
    with pytest.raises(ValueError):
        FixedPointType2(3, (0, 0, 0, 1, 2))
    with pytest.raises(ValueError):
        FixedPointType2(3, (0, 0, 1, 1, 2))  # l = 1


def test_type1_matrix_shape():
    A = type1_matrix(FixedPointType1(3, (0, 1, 2), (1, 2, 3)))
    assert A == LinearMatrix.from_monomials(3, [[0, 1, 2, None, None], [1, None, None, 2, 3]])


def test_representative_example():
    A = representative(FixedPointType2(3, (0, 1, 2, 3, 3)))
    assert A == LinearMatrix.from_monomials(
        3, [[0, 1, 2, 3, None], [None, 1, (-1, 2), None, 3]])
    assert stability_k2(A).verdict is Verdict.STABLE


@pytest.mark.parametrize("n,m", [(1, 1), (2, 3), (3, 3), (3, 5), (4, 5)])
def test_all_fixed_points_stable_and_equivariant(n, m):
    for p in enum_type1(n, m):
        A = type1_matrix(p)
        assert stability_k2(A).verdict is Verdict.STABLE
        assert all(sum(1 for c in form if c) <= 1 for row in A.entries for form in row)
        solve_weights(p)
    for q in enum_type2(n, m):
        for offset in (0, 3):
            A = representative(q, offset)
            assert stability_k2(A).verdict is Verdict.STABLE
            solve_weights(q, A)


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 10**6))))
def test_type2_invariants(data):
    n, seed = data
    m = n if n % 2 else n + 1
    vecs = list(enum_type2(n, m))
    if not vecs:
        return
    p = vecs[seed % len(vecs)]
    counts = Counter(p.indices)
    assert max(counts.values()) <= 2
    assert p.l % 2 == 1 and p.l >= 3
    assert p.l + 2 * p.d == m + 2
