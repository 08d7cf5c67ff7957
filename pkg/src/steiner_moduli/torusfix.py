"""Fixed points of the torus acting on x_i with weight 2**i, for k = 2 and odd m.

Two families occur:

* type 1, isolated monomial points ``A_{I,J}`` with one shared column
  ``(x_{i0}, x_{j0})``, t columns ``(x_{i_s}, 0)`` and t columns ``(0, x_{j_s})``;
* type 2, one component per sorted index vector ``i`` of length m+2 in which
  no value repeats more than twice. Repeated values span I ⊗ x_i, the l
  singleton values carry a point of P^1 each, and the component is the
  quotient M_l of (P^1)^l by SL(2).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Union

from .gitstab import LinearMatrix


class ScopeError(ValueError):
    """Parameters outside the supported range (even m, or m not in n..2n-1)."""


def check_params(n: int, m: int) -> None:
    if n < 1 or m < 1:
        raise ScopeError("need n >= 1 and m >= 1")
    if m % 2 == 0:
        raise ScopeError(f"m = {m} is even; fixed points are classified for odd m only")
    if not n <= m <= 2 * n - 1:
        raise ScopeError(f"m = {m} outside the admissible range n <= m <= 2n-1 for n = {n}")


@dataclass(frozen=True, order=True)
class FixedPointType1:
    n: int
    I: tuple[int, ...]  # (i0, i1 < ... < it)
    J: tuple[int, ...]  # (j0, j1 < ... < jt)

    def __post_init__(self):
        t = len(self.I) - 1
        if t < 1 or len(self.J) != t + 1:
            raise ValueError("I and J must have equal length t+1 >= 2")
        i0, j0 = self.I[0], self.J[0]
        tail_i, tail_j = self.I[1:], self.J[1:]
        if not i0 < j0:
            raise ValueError("need i0 < j0")
        if i0 in tail_i or j0 in tail_j:
            raise ValueError("i0 (resp. j0) may not reappear in the tail of I (resp. J)")
        if list(tail_i) != sorted(set(tail_i)) or list(tail_j) != sorted(set(tail_j)):
            raise ValueError("tails must be strictly increasing")
        if not all(0 <= v <= self.n for v in self.I + self.J):
            raise ValueError("indices must lie in 0..n")

    @property
    def t(self) -> int:
        return len(self.I) - 1

    @property
    def m(self) -> int:
        return 2 * self.t - 1

    @property
    def kind(self) -> int:
        return 1


@dataclass(frozen=True, order=True)
class FixedPointType2:
    n: int
    indices: tuple[int, ...]  # i_1 <= ... <= i_{m+2}

    def __post_init__(self):
        idx = self.indices
        if list(idx) != sorted(idx):
            raise ValueError("index vector must be nondecreasing")
        if not all(0 <= v <= self.n for v in idx):
            raise ValueError("indices must lie in 0..n")
        counts = Counter(idx)
        if max(counts.values()) > 2:
            raise ValueError("no index may occur three times")
        if self.l < 3:
            raise ValueError("need at least three singleton indices")

    @property
    def m(self) -> int:
        return len(self.indices) - 2

    @property
    def l(self) -> int:
        """Number of values occurring exactly once."""
        return sum(1 for v in Counter(self.indices).values() if v == 1)

    @property
    def d(self) -> int:
        """Number of repeated pairs."""
        return (len(self.indices) - self.l) // 2

    @property
    def kind(self) -> int:
        return 2


FixedPoint = Union[FixedPointType1, FixedPointType2]


def enum_type1(n: int, m: int) -> Iterator[FixedPointType1]:
    """All isolated fixed points, lexicographic in (i0, j0, I-tail, J-tail)."""
    check_params(n, m)
    t = (m + 1) // 2
    values = range(n + 1)
    for i0 in values:
        tails_i = list(combinations([v for v in values if v != i0], t))
        for j0 in range(i0 + 1, n + 1):
            tails_j = list(combinations([v for v in values if v != j0], t))
            for ti in tails_i:
                for tj in tails_j:
                    yield FixedPointType1(n, (i0,) + ti, (j0,) + tj)


def _type2_vectors(n: int, m: int) -> list[tuple[int, ...]]:
    out = []
    size = m + 2
    values = range(n + 1)
    for d in range(0, size // 2 + 1):
        l = size - 2 * d
        if l < 3:
            continue
        for pairs in combinations(values, d):
            rest = [v for v in values if v not in pairs]
            for singles in combinations(rest, l):
                out.append(tuple(sorted(pairs + pairs + singles)))
    out.sort()
    return out


def enum_type2(n: int, m: int) -> Iterator[FixedPointType2]:
    """All index vectors with multiplicities at most 2 and l >= 3, in lexicographic order."""
    check_params(n, m)
    for vec in _type2_vectors(n, m):
        yield FixedPointType2(n, vec)


def singleton_values() -> Iterator[Fraction]:
    """0, 1, -1, 2, -2, ... : pairwise distinct affine coordinates on P^1."""
    yield Fraction(0)
    k = 1
    while True:
        yield Fraction(k)
        yield Fraction(-k)
        k += 1


def type1_matrix(p: FixedPointType1) -> LinearMatrix:
    t = p.t
    top = [p.I[0]] + list(p.I[1:]) + [None] * t
    bottom = [p.J[0]] + [None] * t + list(p.J[1:])
    return LinearMatrix.from_monomials(p.n, [top, bottom])


def representative(p: FixedPointType2, offset: int = 0) -> LinearMatrix:
    """A concrete stable matrix on the component of ``p``.

    Repeated values get the columns (x_i, 0) and (0, x_i); the s-th singleton
    gets (x_i, r x_i) where r runs through :func:`singleton_values`, skipping
    the first ``offset`` values.
    """
    counts = Counter(p.indices)
    gen = singleton_values()
    for _ in range(offset):
        next(gen)
    top, bottom = [], []
    seen: set[int] = set()
    for v in p.indices:
        if counts[v] == 2:
            if v in seen:
                top.append(None)
                bottom.append(v)
            else:
                top.append(v)
                bottom.append(None)
                seen.add(v)
        else:
            r = next(gen)
            top.append(v)
            bottom.append(None if r == 0 else (r, v))
    return LinearMatrix.from_monomials(p.n, [top, bottom])


def fixed_point_matrix(p: FixedPoint) -> LinearMatrix:
    if isinstance(p, FixedPointType1):
        return type1_matrix(p)
    return representative(p)
