"""Rank analysis of matrix pencils ``beta*F - alpha*G`` over Q.

Everything is done in the affine chart ``beta = 1`` with the variable
``alpha`` (written ``a`` when printed); the single point ``(1:0)`` at
infinity is checked by a direct rank evaluation of ``G``.

Drop points are the roots of one maximal nonvanishing minor (the last
Bareiss pivot), each re-certified by an exact rank computation. Irrational
roots are kept symbolically as their minimal polynomial and their rank is
computed over ``Q[a]/(p)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm

from .matrix import DimensionError, RatMatrix, rank
from .poly import (
    UniPoly,
    ipoly_exact_div,
    ipoly_mul,
    ipoly_sub,
    ipoly_trim,
    poly_gcd,
    poly_xgcd,
)
from .scalars import ScalarLike, to_scalar


@dataclass(frozen=True)
class PencilPoint:
    """A point ``(alpha : beta)`` of P^1, scaled so its last nonzero coordinate is 1."""

    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        a, b = to_scalar(self.alpha), to_scalar(self.beta)
        if a == 0 and b == 0:
            raise ValueError("(0:0) is not a point of P^1")
        if b != 0:
            a, b = a / b, Fraction(1)
        else:
            a = Fraction(1)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @classmethod
    def affine(cls, alpha: ScalarLike) -> PencilPoint:
        return cls(to_scalar(alpha), Fraction(1))

    @property
    def is_infinite(self) -> bool:
        return self.beta == 0

    def sort_key(self) -> tuple:
        return (self.is_infinite, self.alpha)

    def __str__(self) -> str:
        return f"({self.alpha}:{self.beta})"


INFINITY = PencilPoint(Fraction(1), Fraction(0))


@dataclass(frozen=True)
class DropPoint:
    """A point of P^1 where the pencil rank falls below its generic value.

    Exactly one of ``point`` (a rational point) and ``minpoly`` (a monic
    irreducible polynomial of degree >= 2 in the affine coordinate, standing
    for all its conjugate roots) is set.
    """

    rank: int
    point: PencilPoint | None = None
    minpoly: UniPoly | None = None

    def __post_init__(self):
        if (self.point is None) == (self.minpoly is None):
            raise ValueError("exactly one of point / minpoly must be given")

    @property
    def is_rational(self) -> bool:
        return self.point is not None

    def sort_key(self) -> tuple:
        if self.point is not None:
            return (0,) + self.point.sort_key()
        return (1, self.minpoly.degree, self.minpoly.coeffs)

    def describe(self) -> str:
        if self.point is not None:
            return str(self.point)
        return f"root of {self.minpoly}"


@dataclass(frozen=True)
class PencilAnalysis:
    generic_rank: int
    drops: tuple[DropPoint, ...]
    pivot_minor: UniPoly

    @property
    def min_rank(self) -> int:
        return min([self.generic_rank] + [d.rank for d in self.drops])


def _check_pair(F: RatMatrix, G: RatMatrix) -> None:
    if F.shape != G.shape:
        raise DimensionError(f"pencil matrices differ in shape: {F.shape} vs {G.shape}")


def _pencil_int_rows(F: RatMatrix, G: RatMatrix) -> list[list[list[int]]]:
    """Rows of ``F - a*G`` as integer polynomials, each row scaled by a common denominator."""
    rows = []
    for fr, gr in zip(F.entries, G.entries):
        den = lcm(*(x.denominator for x in fr + gr)) if fr else 1
        rows.append([ipoly_trim([int(f * den), -int(g * den)]) for f, g in zip(fr, gr)])
    return rows


def _poly_bareiss(rows: list[list[list[int]]]) -> tuple[int, list[int]]:
    """Fraction-free elimination over Z[a]; returns (rank, last pivot).

    The last pivot is (up to sign) a maximal nonvanishing minor of the input.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    r = 0
    prev: list[int] = [1]
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, nrows):
            row = rows[i]
            f = row[c]
            for j in range(c + 1, ncols):
                num = ipoly_sub(ipoly_mul(p, row[j]), ipoly_mul(f, prow[j]))
                row[j] = ipoly_exact_div(num, prev) if num else []
            row[c] = []
        prev = p
        r += 1
    return r, (prev if r else [])


def _factor_over_q(coeffs: list[int]) -> list[list[int]]:
    """Distinct irreducible factors over Q of an integer polynomial (lowest degree first)."""
    import sympy

    a = sympy.Symbol("a")
    poly = sympy.Poly(list(reversed(coeffs)), a, domain="ZZ")
    _, factors = poly.factor_list()
    out = [[int(c) for c in reversed(f.all_coeffs())] for f, _ in factors]
    out.sort(key=lambda f: (len(f), f))
    return out


def _rank_over_extension(F: RatMatrix, G: RatMatrix, p: UniPoly) -> int:
    """Rank of ``F - a*G`` over the field Q[a]/(p), p irreducible."""
    rows = [[UniPoly((f, -g)) % p for f, g in zip(fr, gr)] for fr, gr in zip(F.entries, G.entries)]
    ncols = F.cols
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        g, s, _ = poly_xgcd(rows[r][c], p)
        if g.degree != 0:
            raise ArithmeticError("modulus is not irreducible")
        inv = s % p
        prow = [(x * inv) % p for x in rows[r]]
        rows[r] = prow
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if not f.is_zero():
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], prow)]
        r += 1
        if r == len(rows):
            break
    return r


@lru_cache(maxsize=4096)
def analyze_pencil(F: RatMatrix, G: RatMatrix) -> PencilAnalysis:
    """Generic rank and complete drop locus of ``beta*F - alpha*G``."""
    _check_pair(F, G)
    if F.rows == 0 or F.cols == 0:
        return PencilAnalysis(0, (), UniPoly())
    r, pivot = _poly_bareiss(_pencil_int_rows(F, G))
    if r == 0:
        return PencilAnalysis(0, (), UniPoly())
    drops: list[DropPoint] = []
    if len(pivot) > 1:
        for factor in _factor_over_q(pivot):
            if len(factor) == 2:
                root = Fraction(-factor[0], factor[1])
                rk = rank(F - G.scale(root))
                if rk < r:
                    drops.append(DropPoint(rk, point=PencilPoint.affine(root)))
            else:
                minpoly = UniPoly(factor).monic()
                rk = _rank_over_extension(F, G, minpoly)
                if rk < r:
                    drops.append(DropPoint(rk, minpoly=minpoly))
    rk_inf = rank(G)
    if rk_inf < r:
        drops.append(DropPoint(rk_inf, point=INFINITY))
    drops.sort(key=DropPoint.sort_key)
    return PencilAnalysis(r, tuple(drops), UniPoly(pivot))


def pencil_generic_rank(F: RatMatrix, G: RatMatrix) -> int:
    """Rank of ``beta*F - alpha*G`` over the rational function field Q(alpha/beta)."""
    return analyze_pencil(F, G).generic_rank


def pencil_drop_locus(F: RatMatrix, G: RatMatrix) -> list[DropPoint]:
    return list(analyze_pencil(F, G).drops)


def pencil_rank_at(F: RatMatrix, G: RatMatrix, point: PencilPoint) -> int:
    _check_pair(F, G)
    return rank(F.scale(point.beta) - G.scale(point.alpha))


def common_kernel_dim(F: RatMatrix, G: RatMatrix) -> int:
    """dim(ker F ∩ ker G) for the column kernels."""
    _check_pair(F, G)
    return F.cols - rank(F.vstack(G))


def _det_laplace(m: list[list[UniPoly]]) -> UniPoly:
    if len(m) == 1:
        return m[0][0]
    total = UniPoly()
    for j, x in enumerate(m[0]):
        if x.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = x * _det_laplace(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def determinantal_divisor(F: RatMatrix, G: RatMatrix) -> tuple[int, UniPoly]:
    """Largest nonvanishing minor size r of ``F - a*G`` and the monic gcd of all r x r minors.

    Brute force over every minor by cofactor expansion; meant as an
    independent check on :func:`analyze_pencil` for small pencils.
    """
    _check_pair(F, G)
    grid = [[UniPoly((f, -g)) for f, g in zip(fr, gr)] for fr, gr in zip(F.entries, G.entries)]
    for size in range(min(F.shape), 0, -1):
        g = UniPoly()
        for rows in combinations(range(F.rows), size):
            for cols in combinations(range(F.cols), size):
                d = _det_laplace([[grid[i][j] for j in cols] for i in rows])
                if not d.is_zero():
                    g = poly_gcd(g, d)
        if not g.is_zero():
            return size, g
    return 0, UniPoly()
