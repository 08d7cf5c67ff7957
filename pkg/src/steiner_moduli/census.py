"""Vectorized tangent-weight counts over whole fixed-point families.

For a type-1 point with shared pair (i0, j0) every count we need (positive
weights and zero weights in W3, and how often a given weight occurs) is a
sum of one term for b_0 and one term per tail index. So for each (i0, j0)
it suffices to tabulate the per-index contributions once and add them over
the tail combinations with an indicator-matrix product.

The W2 positive count is (N^2 - #zero weights)/2 by antisymmetry, and the
W2 zeros come from coinciding b's, which is again an indicator product.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .tangweights import CANONICAL, ConventionError, SignConvention
from .torusfix import FixedPointType1, FixedPointType2, check_params, enum_type2


def _indicator(n: int, t: int, exclude: int) -> np.ndarray:
    """Rows are the t-subsets of {0..n} minus ``exclude`` (lexicographic), as 0/1 vectors."""
    combos = list(combinations([v for v in range(n + 1) if v != exclude], t))
    X = np.zeros((len(combos), n + 1), dtype=np.int64)
    for r, cmb in enumerate(combos):
        X[r, list(cmb)] = 1
    return X


class _Counter3:
    """Counts of W3 weights b + c_l - a_r contributed by a single b value."""

    def __init__(self, c: np.ndarray, a: tuple[int, int], conv: SignConvention):
        sw, si, sv, s = conv.signs()
        self.sw, self.s = sw, s
        self.cs = np.sort(s * sv * c)  # compare s*(sw*b + sv*c - si*a) > 0
        self.a = np.array([si * a[0], si * a[1]], dtype=np.int64)

    def thresholds(self, b: np.ndarray) -> np.ndarray:
        # s*(b' + c' - a') > 0  <=>  s*c' > s*(a' - b')
        return self.s * (self.a[None, :] - self.sw * b[:, None])

    def positive(self, b: np.ndarray) -> np.ndarray:
        thr = self.thresholds(b)
        return (len(self.cs) - np.searchsorted(self.cs, thr, side="right")).sum(axis=1)

    def equal(self, b: np.ndarray, w: int) -> np.ndarray:
        # occurrences of weight w: s*c' == s*(w + a' - b')
        thr = self.s * (w + self.a[None, :] - self.sw * b[:, None])
        hi = np.searchsorted(self.cs, thr, side="right")
        lo = np.searchsorted(self.cs, thr, side="left")
        return (hi - lo).sum(axis=1)


def type1_pair_indices(n: int, m: int, i0: int, j0: int, conv: SignConvention = CANONICAL) -> np.ndarray:
    """n(A) for all type-1 points with shared pair (i0, j0), in enumeration order (I-tail major)."""
    t = (m + 1) // 2
    c = 2 ** np.arange(n + 1, dtype=np.int64)
    N = m + 2
    a1 = int(c[j0] - c[i0])
    si = conv.signs()[1]
    k3 = _Counter3(c, (0, a1), conv)
    b0 = np.array([-c[i0]])
    bf = -c  # f-tail value for index v
    bg = a1 - c  # g-tail value for index v
    X = _indicator(n, t, i0)
    Y = _indicator(n, t, j0)

    def tot(fn):
        return int(fn(b0)[0]) + (X @ fn(bf))[:, None] + (Y @ fn(bg))[None, :]

    pos3 = tot(k3.positive)
    zero3 = tot(lambda b: k3.equal(b, 0))
    removed = [0, 0, si * a1, -si * a1]
    for w in set(removed):
        if (tot(lambda b, w=w: k3.equal(b, w)) < removed.count(w)).any():
            raise ConventionError(f"removed weight {w} missing under convention {conv}")
    pos3 = pos3 - (1 if a1 != 0 else 0)
    zero3 = zero3 - removed.count(0)
    # coinciding column weights: f-tail vs g-tail, and b_0 vs g-tail (b_0 vs f-tail is impossible)
    coll = (bf[:, None] == bg[None, :]).astype(np.int64)
    eq = X @ coll @ Y.T + (Y @ (bg == b0[0]).astype(np.int64))[None, :]
    zero2 = N + 2 * eq
    if ((zero3 - zero2 + 1) != 0).any():
        raise ConventionError(f"type-1 point with zero tangent weights under convention {conv}")
    pos2 = (N * N - zero2) // 2
    return (pos3 - pos2).ravel()


def type2_indices(n: int, m: int, conv: SignConvention = CANONICAL) -> tuple[list[FixedPointType2], np.ndarray]:
    """All type-2 components with their n(A), in enumeration order."""
    pts = list(enum_type2(n, m))
    if not pts:
        return pts, np.zeros(0, dtype=np.int64)
    c = 2 ** np.arange(n + 1, dtype=np.int64)
    N = m + 2
    k3 = _Counter3(c, (0, 0), conv)
    mult = np.zeros((len(pts), n + 1), dtype=np.int64)
    for r, p in enumerate(pts):
        for v in p.indices:
            mult[r, v] += 1
    pos3 = mult @ k3.positive(-c)
    zero3 = mult @ k3.equal(-c, 0)
    if (zero3 < 4).any():
        raise ConventionError(f"removed weight 0 missing under convention {conv}")
    zero3 = zero3 - 4
    zero2 = (mult * mult).sum(axis=1)
    ls = np.array([p.l for p in pts])
    if ((zero3 - zero2 + 1) != ls - 3).any():
        raise ConventionError(f"type-2 zero weights differ from component dimension under convention {conv}")
    pos2 = (N * N - zero2) // 2
    return pts, pos3 - pos2


@dataclass(frozen=True)
class _Job:
    n: int
    m: int
    i0: int
    j0: int
    conv: SignConvention
    length: int


def _type1_histogram(job: _Job) -> np.ndarray:
    idx = type1_pair_indices(job.n, job.m, job.i0, job.j0, job.conv)
    if idx.min() < 0 or idx.max() >= job.length:
        raise ConventionError(f"tangent index out of range under convention {job.conv}")
    return np.bincount(idx, minlength=job.length)


def type1_histogram(n: int, m: int, length: int, conv: SignConvention = CANONICAL, jobs: int = 1) -> np.ndarray:
    """Number of type-1 points with each value of n(A), as an array of the given length."""
    check_params(n, m)
    work = [_Job(n, m, i0, j0, conv, length) for i0 in range(n + 1) for j0 in range(i0 + 1, n + 1)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_type1_histogram, work))
    else:
        parts = [_type1_histogram(w) for w in work]
    total = np.zeros(length, dtype=np.int64)
    for part in parts:
        total += part
    return total


def type1_points_with_index(n: int, m: int, conv: SignConvention = CANONICAL):
    """Yield (point, n(A)) for every type-1 point, in enumeration order."""
    check_params(n, m)
    t = (m + 1) // 2
    for i0 in range(n + 1):
        tails_i = list(combinations([v for v in range(n + 1) if v != i0], t))
        for j0 in range(i0 + 1, n + 1):
            tails_j = list(combinations([v for v in range(n + 1) if v != j0], t))
            idx = type1_pair_indices(n, m, i0, j0, conv).tolist()
            pos = 0
            for ti in tails_i:
                for tj in tails_j:
                    yield FixedPointType1(n, (i0,) + ti, (j0,) + tj), idx[pos]
                    pos += 1
