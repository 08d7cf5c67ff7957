"""Hodge numbers of M_{n,m,2} (k = 2, m odd) by Bialynicki-Birula assembly.

All cohomology is of type (p, p), so a Hodge vector h with h[p] = h^{p,p}
determines every Betti number: b_{2p} = h[p] and the odd ones vanish.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from math import comb

import numpy as np

from .census import type1_histogram, type2_indices
from .tangweights import CANONICAL, ConventionError, SignConvention
from .torusfix import ScopeError, check_params


def _check_l(l: int) -> None:
    if l < 3 or l % 2 == 0:
        raise ValueError(f"l must be odd and at least 3, got {l}")


def hodge_Ml(l: int, p: int) -> int:
    """h^{p,p} of the quotient of (P^1)^l by SL(2)."""
    _check_l(l)
    if p < 0 or p > l - 3:
        return 0
    return sum(comb(l - 1, j) for j in range(min(p, l - 3 - p) + 1))


def hodge_vector_Ml(l: int) -> list[int]:
    return [hodge_Ml(l, p) for p in range(l - 2)]


def euler_Ml(l: int) -> int:
    return sum(hodge_vector_Ml(l))


@dataclass(frozen=True)
class ModuliParams:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ScopeError("need n >= 1 and m >= 1")

    @property
    def t(self) -> int:
        return (self.m + 1) // 2

    @property
    def j_m(self) -> int:
        return (self.m + 3) // 2

    @property
    def j0(self) -> int:
        return self.j_m + self.n - self.m

    @property
    def dim(self) -> int:
        return 2 * (self.m + 2) * (self.n + 1) - (self.m + 2) ** 2 - 3

    def dual(self) -> ModuliParams:
        """The isomorphic moduli space with m replaced by 2n - m - 2 (when positive)."""
        return ModuliParams(self.n, 2 * self.n - self.m - 2)


@dataclass(frozen=True)
class HodgePolynomial:
    h: tuple[int, ...]

    def __post_init__(self):
        if any(x < 0 for x in self.h):
            raise ValueError("Hodge numbers must be nonnegative")

    @property
    def betti(self) -> list[int]:
        """b_0..b_{2 dim}, odd entries zero."""
        out = [0] * (2 * len(self.h) - 1)
        out[::2] = self.h
        return out

    @property
    def euler(self) -> int:
        return sum(self.h)

    def is_symmetric(self) -> bool:
        return self.h == self.h[::-1]


def betti(params: ModuliParams, conv: SignConvention = CANONICAL, jobs: int = 1) -> HodgePolynomial:
    """Assemble h^{p,p} from the fixed-point census."""
    n, m = params.n, params.m
    check_params(n, m)
    length = params.dim + 1
    h = type1_histogram(n, m, length, conv, jobs).astype(object)
    pts, shifts = type2_indices(n, m, conv)
    for p, k in zip(pts, shifts.tolist()):
        vec = hodge_vector_Ml(p.l)
        if k < 0 or k + len(vec) > length:
            raise ConventionError(f"component {p.indices} shifted out of range under convention {conv}")
        for q, x in enumerate(vec):
            h[k + q] += x
    return HodgePolynomial(tuple(int(x) for x in h))


def euler_formula(params: ModuliParams) -> int:
    n, m = params.n, params.m
    check_params(n, m)
    t = params.t
    total = comb(n + 1, 2) * comb(n, t) ** 2
    for d in range(1, n - t + 1):
        total += comb(n + 1, t - d) * comb(n + 1 - t + d, 2 * d + 1) * euler_Ml(2 * d + 1)
    return total


def census_euler(params: ModuliParams) -> int:
    """Euler characteristic as a plain count over enumerated components."""
    from .torusfix import enum_type1, enum_type2

    return sum(1 for _ in enum_type1(params.n, params.m)) + sum(
        euler_Ml(p.l) for p in enum_type2(params.n, params.m))


def strata_codim(params: ModuliParams, j: int) -> int:
    if not 2 <= j < params.j_m:
        raise ValueError(f"j = {j} outside 2 <= j < {params.j_m}")
    return (j + params.m - params.n) * (j - 1) - 1


def boundary_dim_even_m(params: ModuliParams) -> int:
    if params.m % 2:
        raise ScopeError("the strictly semistable boundary is empty for odd m")
    h = params.m // 2
    return (params.n - h) * (h + 1)


# -- reference table ---------------------------------------------------------------

def golden_rows(text: str | None = None) -> dict[int, dict[int, int]]:
    """Parse the reference CSV (columns n, i, b_i) into {n: {degree: b}}."""
    if text is None:
        text = resources.files("steiner_moduli").joinpath("data/golden_betti.csv").read_text()
    out: dict[int, dict[int, int]] = {}
    for row in csv.DictReader(text.splitlines()):
        out.setdefault(int(row["n"]), {})[int(row["i"])] = int(row["b_i"])
    return out


@lru_cache(maxsize=None)
def _golden_default() -> dict[int, tuple[int, ...]]:
    return {n: _as_hodge(r) for n, r in golden_rows().items()}


def _as_hodge(row: dict[int, int]) -> tuple[int, ...]:
    degrees = sorted(row)
    if degrees != list(range(0, 2 * len(degrees), 2)):
        raise ValueError("reference rows must list b_0, b_2, b_4, ... without gaps")
    return tuple(row[d] for d in degrees)


def golden_hodge(text: str | None = None) -> dict[int, tuple[int, ...]]:
    """Reference rows as Hodge-vector prefixes (h^{p,p} = b_{2p})."""
    if text is None:
        return dict(_golden_default())
    return {n: _as_hodge(r) for n, r in golden_rows(text).items()}


def as_array(h: HodgePolynomial) -> np.ndarray:
    return np.array(h.h, dtype=np.int64)
