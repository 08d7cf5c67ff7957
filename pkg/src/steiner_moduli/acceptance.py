"""Acceptance checks shared by ``steiner-moduli selftest`` and the test suite.

Each check returns a :class:`CheckResult`; nothing here prints, so the CLI
controls the exact bytes written.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterator

from .census import type1_points_with_index, type2_indices
from .cohomology import ModuliParams, betti, census_euler, euler_formula, golden_hodge
from .gitstab import (
    LinearMatrix,
    Verdict,
    boundary_point_even_m,
    degeneracy_dim_k2,
    stability_k2,
    strata_indices,
)
from .tangweights import CANONICAL, SignConvention, discrepancy_report
from .torusfix import enum_type1, enum_type2, representative, type1_matrix


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    warnings: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


# -- matrix corpora ---------------------------------------------------------------

STRATA_EXAMPLE = LinearMatrix.from_monomials(3, [[None, None, 0, 1, 2], [0, 1, None, None, 3]])


def codim_matrix(n: int, m: int) -> LinearMatrix:
    """[[x_0..x_{t-1}, 0..0, x_t], [0..0, x_0..x_{t-1}, x_{t+1}]] with t = (m+1)/2."""
    t = (m + 1) // 2
    if n < t + 1:
        raise ValueError("needs n >= t + 1")
    top = list(range(t)) + [None] * t + [t]
    bottom = [None] * t + list(range(t)) + [t + 1]
    return LinearMatrix.from_monomials(n, [top, bottom])


def block_matrix(n: int, f: list, g: list) -> LinearMatrix:
    """[[0, f], [g, 0]] with blocks of equal width."""
    w = len(f)
    return LinearMatrix.from_monomials(n, [[None] * w + list(f), list(g) + [None] * w])


def random_matrix(rng: random.Random, n: int | None = None, m: int | None = None) -> LinearMatrix:
    """A random 2 x (m+2) matrix with sparse small rational coefficients, n, m <= 5."""
    n = rng.randint(1, 5) if n is None else n
    m = rng.randint(1, 5) if m is None else m
    density = rng.choice([0.2, 0.35, 0.5, 0.8])
    rows = []
    for _ in range(2):
        row = []
        for _ in range(m + 2):
            form = []
            for _ in range(n + 1):
                if rng.random() < density:
                    num = rng.choice([-2, -1, 1, 1, 2, 3])
                    den = rng.choice([1, 1, 1, 2, 3])
                    form.append(Fraction(num, den))
                else:
                    form.append(Fraction(0))
            row.append(tuple(form))
        rows.append(tuple(row))
    return LinearMatrix(n, m, 2, tuple(rows))


def random_corpus(count: int = 500, seed: int = 20240611) -> list[LinearMatrix]:
    rng = random.Random(seed)
    return [random_matrix(rng) for _ in range(count)]


def fixed_point_corpus(max_nm: int = 5) -> Iterator[LinearMatrix]:
    for m in range(1, max_nm + 1, 2):
        for n in range(1, max_nm + 1):
            if not n <= m <= 2 * n - 1:
                continue
            for p in enum_type1(n, m):
                yield type1_matrix(p)
            for q in enum_type2(n, m):
                yield representative(q)


# -- criteria ------------------------------------------------------------------------

def check_golden_row(n: int, conv: SignConvention = CANONICAL, jobs: int = 1,
                     golden_rows: dict[int, tuple[int, ...]] | None = None) -> CheckResult:
    name = f"criterion 1 (reference row n={n})"
    rows = golden_hodge() if golden_rows is None else golden_rows
    if n not in rows:
        return CheckResult(name, False, "no reference row")
    golden = rows[n]
    h = betti(ModuliParams(n, n), conv, jobs).h
    got = list(h[: len(golden)])
    if got == list(golden):
        return CheckResult(name, True, f"{len(golden)} entries match")
    diffs = [f"b_{2 * i}: expected {e}, computed {g}" for i, (e, g) in enumerate(zip(golden, got)) if e != g]
    return CheckResult(name, False, "; ".join(diffs))


def check_euler_triangle(conv: SignConvention = CANONICAL, jobs: int = 1) -> CheckResult:
    bad = []
    values = {}
    for n in (3, 5, 7, 9):
        p = ModuliParams(n, n)
        formula = euler_formula(p)
        census = census_euler(p)
        total = betti(p, conv, jobs).euler
        values[n] = formula
        if not formula == census == total:
            bad.append(f"n={n}: formula {formula}, census {census}, assembly {total}")
    if values.get(3) != 58 or values.get(5) != 1602:
        bad.append(f"expected 58 and 1602 at n=3,5, got {values.get(3)} and {values.get(5)}")
    detail = "; ".join(bad) if bad else ", ".join(f"e(n={n})={v}" for n, v in values.items())
    return CheckResult("criterion 2 (Euler characteristic triangle)", not bad, detail)


def check_duality(conv: SignConvention = CANONICAL, jobs: int = 1) -> CheckResult:
    bad = []
    for n in (3, 5, 7, 9, 11):
        h = betti(ModuliParams(n, n), conv, jobs)
        if not h.is_symmetric():
            bad.append(f"n={n} not symmetric")
        if min(h.h) < 0:
            bad.append(f"n={n} has a negative entry")
        if h.h[0] != 1:
            bad.append(f"n={n} has b_0 = {h.h[0]}")
        if h.h[1] != 1:
            bad.append(f"n={n} has b_2 = {h.h[1]}")
    return CheckResult("criterion 3 (duality, positivity, b_0 = b_2 = 1)", not bad, "; ".join(bad))


def minimal_points(n: int, conv: SignConvention = CANONICAL) -> tuple[list, int]:
    """Type-1 points with n(A) = 1 and the smallest type-2 shift."""
    ones = [p for p, k in type1_points_with_index(n, n, conv) if k == 1]
    _, shifts = type2_indices(n, n, conv)
    return ones, int(shifts.min()) if len(shifts) else -1


def check_unique_minimal(conv: SignConvention = CANONICAL) -> CheckResult:
    bad = []
    found = []
    for n in (5, 7):
        t = (n + 1) // 2
        expected = {tuple(range(n - t, n + 1)), (n - t - 2,) + tuple(range(n - t + 1, n + 1))}
        ones, min2 = minimal_points(n, conv)
        if len(ones) != 1:
            bad.append(f"n={n}: {len(ones)} type-1 points with n(A)=1")
            continue
        p = ones[0]
        got = {tuple(sorted(p.I)), tuple(sorted(p.J))}
        if got != expected:
            bad.append(f"n={n}: found I={p.I}, J={p.J}")
        if min2 <= 1:
            bad.append(f"n={n}: a type-2 component has shift {min2}")
        found.append(f"n={n}: I={p.I} J={p.J}")
    return CheckResult("criterion 4 (unique point with n(A) = 1)", not bad, "; ".join(bad or found))


def _same_pair(A: LinearMatrix, B: LinearMatrix) -> bool:
    return boundary_point_even_m(A) == boundary_point_even_m(B)


def check_stability_suite() -> CheckResult:
    bad = []
    v = stability_k2(STRATA_EXAMPLE)
    if v.verdict is not Verdict.STABLE or degeneracy_dim_k2(STRATA_EXAMPLE) != 1 \
            or strata_indices(STRATA_EXAMPLE) != (2, 3):
        bad.append("strata example matrix")
    for n, m in ((3, 3), (4, 3), (4, 5), (5, 5)):
        A = codim_matrix(n, m)
        if stability_k2(A).verdict is not Verdict.STABLE:
            bad.append(f"codim matrix n={n} m={m} not stable")
        elif n - degeneracy_dim_k2(A) != (m + 1) // 2:
            bad.append(f"codim matrix n={n} m={m}: codim {n - degeneracy_dim_k2(A)}")
    zero_col = LinearMatrix.from_monomials(3, [[None, 0, 1, 2, 3], [None, 1, 2, 3, 0]])
    zero_row = LinearMatrix.from_monomials(3, [[None] * 5, [0, 1, 2, 3, 0]])
    for label, A in (("zero column", zero_col), ("zero row", zero_row)):
        if stability_k2(A).verdict is not Verdict.UNSTABLE:
            bad.append(f"{label} matrix not unstable")
    blocks = [
        (2, [0, 1], [0, 1]),
        (2, [0, 1], [1, 2]),
        (3, [0, 1, 2], [1, 2, 3]),
        (4, [0, 1, 2], [2, 3, 4]),
    ]
    for n, f, g in blocks:
        A = block_matrix(n, f, g)
        w = len(f)
        if stability_k2(A).verdict is not Verdict.STRICTLY_SEMISTABLE:
            bad.append(f"block matrix {f}/{g} not strictly semistable")
            continue
        # swap rows, then move blocks back into place and reverse inside each block
        order = list(range(2 * w - 1, w - 1, -1)) + list(range(w - 1, -1, -1))
        B = A.swap_rows().permute_columns(order)
        if not _same_pair(A, B):
            bad.append(f"block matrix {f}/{g}: pair changes under row swap")
        fwd = frozenset(map(tuple, boundary_point_even_m(A)))
        expect_f = {tuple(tuple(Fraction(int(i == v)) for i in range(n + 1)) for v in sorted(f))}
        expect_g = {tuple(tuple(Fraction(int(i == v)) for i in range(n + 1)) for v in sorted(g))}
        if fwd != frozenset(expect_f | expect_g):
            bad.append(f"block matrix {f}/{g}: wrong pair")
    return CheckResult("criterion 5 (stability suite)", not bad, "; ".join(bad))


def property_corpus(random_count: int = 500, seed: int = 20240611) -> Iterator[LinearMatrix]:
    yield from fixed_point_corpus(5)
    yield from random_corpus(random_count, seed)


def check_properties(random_count: int = 500, seed: int = 20240611) -> CheckResult:
    bad = []
    seen = 0
    for A in property_corpus(random_count, seed):
        seen += 1
        v = stability_k2(A)
        if v.verdict is Verdict.STRICTLY_SEMISTABLE and A.m % 2:
            bad.append(f"strictly semistable with odd m:\n{A}")
        if not v.verdict.is_semistable:
            continue
        j_s, j_t = strata_indices(A)
        if not j_s <= j_t <= j_s + 1:
            bad.append(f"j_S={j_s}, j~={j_t}:\n{A}")
        if (j_s >= 2) != (j_t >= 2):
            bad.append(f"S^2 != S~^2 at j_S={j_s}, j~={j_t}:\n{A}")
        if v.verdict is Verdict.STABLE and A.m % 2 and degeneracy_dim_k2(A) > A.n - (A.m + 1) // 2:
            bad.append(f"codim D below (m+1)/2:\n{A}")
    for m in range(1, 10, 2):
        for n in range(1, m + 1):
            if not n <= m <= 2 * n - 1:
                continue
            t = (m + 1) // 2
            n1 = sum(1 for _ in enum_type1(n, m))
            if n1 != comb(n + 1, 2) * comb(n, t) ** 2:
                bad.append(f"type-1 count at n={n}, m={m}")
            per_d: dict[int, int] = {}
            for q in enum_type2(n, m):
                per_d[q.d] = per_d.get(q.d, 0) + 1
            for d in range(0, (m + 2) // 2 + 1):
                want = comb(n + 1, d) * comb(n + 1 - d, m + 2 - 2 * d) if m + 2 - 2 * d >= 3 else 0
                if per_d.get(d, 0) != want:
                    bad.append(f"type-2 count at n={n}, m={m}, d={d}")
    detail = "; ".join(bad[:5]) if bad else f"{seen} matrices, counts for odd m <= 9"
    return CheckResult("criterion 6 (property suites)", not bad, detail)


def discrepancy_lines(conv: SignConvention = CANONICAL) -> list[str]:
    pts = list(enum_type1(3, 3)) + list(enum_type2(3, 3))
    return [d.line() for d in discrepancy_report(pts, conv)]


def check_discrepancy_report(conv: SignConvention = CANONICAL) -> CheckResult:
    first = discrepancy_lines(conv)
    second = discrepancy_lines(conv)
    ok = first == second
    return CheckResult("criterion 7 (closed-form discrepancy report)", ok,
                       f"{len(first)} discrepancies at n=m=3, report deterministic" if ok
                       else "report differs between runs", warnings=first)


def check_parallel_assembly(conv: SignConvention = CANONICAL, jobs: int = 1) -> CheckResult:
    other = 8 if jobs == 1 else 1
    a = betti(ModuliParams(9, 9), conv, jobs).h
    b = betti(ModuliParams(9, 9), conv, other).h
    return CheckResult("criterion 8 (assembly independent of parallelism)", a == b,
                       "n=9 identical for 1 and 8 workers" if a == b else "n=9 differs")


def all_checks(conv: SignConvention = CANONICAL, jobs: int = 1,
               golden_rows: dict[int, tuple[int, ...]] | None = None) -> list[Callable[[], CheckResult]]:
    return [
        lambda: check_golden_row(3, conv, jobs, golden_rows),
        lambda: check_golden_row(5, conv, jobs, golden_rows),
        lambda: check_golden_row(7, conv, jobs, golden_rows),
        lambda: check_golden_row(9, conv, jobs, golden_rows),
        lambda: check_euler_triangle(conv, jobs),
        lambda: check_duality(conv, jobs),
        lambda: check_unique_minimal(conv),
        check_stability_suite,
        check_properties,
        lambda: check_discrepancy_report(conv),
        lambda: check_parallel_assembly(conv, jobs),
    ]
