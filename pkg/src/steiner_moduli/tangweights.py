"""Torus weights and tangent-weight counts at the fixed points.

The torus acts on x_i with weight c_i = 2**i. At a fixed point there are
weights a = (a_0, a_1) on the rows and b = (b_0..b_{m+1}) on the columns with
a_r - b_s = c_v whenever x_v appears in entry (r, s). The tangent space is

    Ext^1 = W3 - W2 + (one trivial weight)

with W2 the weights b_j - b_k of End(W) and W3 the weights b_j + c_l - a_r
of I* ⊗ W ⊗ V, minus the four weights a_{r'} - a_r of the image of End(I).

:func:`tangent_report` works with explicit multisets and is the reference
implementation; the fast bulk counter lives in :mod:`steiner_moduli.census`.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass
from itertools import product
from math import comb
from pathlib import Path
from typing import Iterable, Sequence

from .gitstab import LinearMatrix
from .torusfix import FixedPoint, FixedPointType1, fixed_point_matrix


class ConventionError(ArithmeticError):
    """A sign convention produced an inconsistent weight decomposition."""


class CalibrationError(RuntimeError):
    """No sign convention reproduces the reference Betti row."""


def base_weights(n: int) -> tuple[int, ...]:
    return tuple(2**i for i in range(n + 1))


@dataclass(frozen=True)
class WeightData:
    c: tuple[int, ...]
    a: tuple[int, int]
    b: tuple[int, ...]


@dataclass(frozen=True)
class SignConvention:
    """Orientation of each tensor factor plus whether positive or negative weights are counted."""

    flip_w: bool = False
    flip_i: bool = False
    flip_v: bool = False
    count_negative: bool = False

    @property
    def code(self) -> str:
        return "".join("1" if f else "0" for f in (self.flip_w, self.flip_i, self.flip_v, self.count_negative))

    @classmethod
    def from_code(cls, code: str) -> SignConvention:
        if len(code) != 4 or set(code) - {"0", "1"}:
            raise ValueError(f"convention code must be four 0/1 digits, got {code!r}")
        return cls(*(ch == "1" for ch in code))

    @classmethod
    def all(cls) -> list[SignConvention]:
        return [cls(*flags) for flags in product((False, True), repeat=4)]

    def signs(self) -> tuple[int, int, int, int]:
        """(s_w, s_i, s_v, s_count) as +-1."""
        return tuple(-1 if f else 1 for f in (self.flip_w, self.flip_i, self.flip_v, self.count_negative))

    def __str__(self) -> str:
        return self.code


CANONICAL = SignConvention()


def solve_weights(p: FixedPoint, matrix: LinearMatrix | None = None) -> WeightData:
    """Weights (a, b) of the fixed point, normalized by a_0 = 0.

    Raises AssertionError if the solution is not equivariant for ``matrix``
    (default: the standard matrix of ``p``); for enumerated points that
    would be a bug, not a user error.
    """
    c = base_weights(p.n)
    if isinstance(p, FixedPointType1):
        i0, j0 = p.I[0], p.J[0]
        a1 = c[j0] - c[i0]
        b = [-c[i0]] + [-c[i] for i in p.I[1:]] + [a1 - c[j] for j in p.J[1:]]
        a = (0, a1)
    else:
        a = (0, 0)
        b = [-c[i] for i in p.indices]
    A = fixed_point_matrix(p) if matrix is None else matrix
    for r, row in enumerate(A.entries):
        for s, form in enumerate(row):
            for v, coeff in enumerate(form):
                if coeff:
                    assert a[r] - b[s] == c[v], f"entry ({r},{s}) of {p} breaks equivariance"
    return WeightData(c, a, tuple(b))


@dataclass(frozen=True)
class TangentWeightReport:
    w2: Counter
    w3: Counter
    n1: int
    n2: int
    zero_count: int

    @property
    def n(self) -> int:
        return self.n2 - self.n1

    @property
    def ext_size(self) -> int:
        return sum(self.w3.values()) - sum(self.w2.values()) + 1

    def to_dict(self) -> dict:
        return {
            "W2": _counter_items(self.w2),
            "W3": _counter_items(self.w3),
            "n1": self.n1,
            "n2": self.n2,
            "n": self.n,
            "zero_count": self.zero_count,
            "ext_dim": self.ext_size,
        }


def _counter_items(c: Counter) -> list[list[int]]:
    return [[w, k] for w, k in sorted(c.items()) if k]


def weight_multisets(w: WeightData, conv: SignConvention = CANONICAL) -> tuple[Counter, Counter]:
    """(W2, W3) with the image of End(I) already removed from W3."""
    sw, si, sv, _ = conv.signs()
    a = [si * x for x in w.a]
    b = [sw * x for x in w.b]
    c = [sv * x for x in w.c]
    w3 = Counter(bj + cl - ar for bj in b for cl in c for ar in a)
    for r in a:
        for r2 in a:
            if w3[r2 - r] <= 0:
                raise ConventionError(f"removed weight {r2 - r} missing under convention {conv}")
            w3[r2 - r] -= 1
    w2 = Counter(bj - bk for bj in b for bk in b)
    return w2, +w3


def tangent_report(p: FixedPoint, conv: SignConvention = CANONICAL) -> TangentWeightReport:
    w2, w3 = weight_multisets(solve_weights(p), conv)
    s = conv.signs()[3]
    n1 = sum(k for w, k in w2.items() if s * w > 0)
    n2 = sum(k for w, k in w3.items() if s * w > 0)
    zero = w3[0] - w2[0] + 1
    return TangentWeightReport(w2, w3, n1, n2, zero)


def expected_zero_count(p: FixedPoint) -> int:
    return 0 if isinstance(p, FixedPointType1) else p.l - 3


def closed_form_n1_n2(p: FixedPoint) -> tuple[int, int]:
    """The printed closed forms for (n1, n2), evaluated literally. Diagnostic only."""
    n, m = p.n, p.m
    if isinstance(p, FixedPointType1):
        t = p.t
        i0, j0 = p.I[0], p.J[0]
        tail_j = p.J[1:]
        n1 = (4 * t * n + 2 * t + 2 * n - 1
              - sum(p.I) - sum(p.J)
              - sum(i for i in p.I if i > i0)
              - sum(j for j in tail_j if j > i0)
              - sum(1 for j in tail_j if j > j0)
              - i0 * sum(1 for j in tail_j if j <= i0))
        return n1, comb(m + 2, 2)
    n1 = 2 * (m + 2) * n - 2 * sum(p.indices)
    return n1, comb(m + 2, 2) + (m + 2 - p.l) // 2


@dataclass(frozen=True)
class Discrepancy:
    point: FixedPoint
    oracle: tuple[int, int]
    closed_form: tuple[int, int]

    def line(self) -> str:
        p = self.point
        tag = f"type1 I={list(p.I)} J={list(p.J)}" if isinstance(p, FixedPointType1) else f"type2 i={list(p.indices)}"
        return (f"{tag}: oracle (n1, n2) = {self.oracle}, "
                f"closed form (n1, n2) = {self.closed_form}")


def discrepancy_report(points: Iterable[FixedPoint], conv: SignConvention = CANONICAL) -> list[Discrepancy]:
    """Points where the closed forms disagree with the oracle, sorted by type then indices."""
    out = []
    for p in points:
        rep = tangent_report(p, conv)
        cf = closed_form_n1_n2(p)
        if cf != (rep.n1, rep.n2):
            out.append(Discrepancy(p, (rep.n1, rep.n2), cf))
    out.sort(key=lambda d: (d.point.kind, d.point))
    return out


# -- calibration ----------------------------------------------------------------

@dataclass(frozen=True)
class CalibrationResult:
    convention: SignConvention
    matches_ref: tuple[str, ...]
    matches_check: tuple[str, ...]


def calibrate(n_ref: int, m_ref: int, golden: Sequence[int],
              check: tuple[int, int, Sequence[int]] | None = None,
              conventions: Sequence[SignConvention] | None = None) -> CalibrationResult:
    """Pick the sign convention whose assembled Hodge vector reproduces ``golden``.

    ``golden`` may be a prefix of the full vector. Ties are broken by the
    optional ``check = (n, m, prefix)`` and then by the canonical order of
    :meth:`SignConvention.all`. Raises :class:`CalibrationError` if nothing
    matches.
    """
    from .cohomology import ModuliParams, betti

    convs = list(conventions) if conventions is not None else SignConvention.all()

    def matching(n, m, row, pool):
        hits = []
        for conv in pool:
            try:
                h = betti(ModuliParams(n, m), conv)
            except ConventionError:
                continue
            if list(h.h[: len(row)]) == list(row):
                hits.append(conv)
        return hits

    hits = matching(n_ref, m_ref, golden, convs)
    if not hits:
        raise CalibrationError(f"no sign convention reproduces the reference row for n={n_ref}, m={m_ref}")
    second = hits
    if check is not None and len(hits) > 1:
        second = matching(check[0], check[1], check[2], hits)
        if not second:
            raise CalibrationError("no convention matching the reference row also matches the check row")
    return CalibrationResult(second[0], tuple(c.code for c in hits), tuple(c.code for c in second))


def _cache_key() -> str:
    from importlib.metadata import PackageNotFoundError, version

    try:
        return version("artifact")
    except PackageNotFoundError:
        return "dev"


def calibrated_convention(cache_dir: str | Path | None = None) -> SignConvention:
    """Calibrate against the shipped reference rows, optionally caching the result on disk."""
    from .cohomology import golden_hodge

    path = Path(cache_dir) / "calibration.json" if cache_dir else None
    key = _cache_key()
    if path is not None and path.exists():
        try:
            data = json.loads(path.read_text())
            if data.get("version") == key:
                return SignConvention.from_code(data["convention"])
        except (ValueError, KeyError):
            pass
    g = golden_hodge()
    res = calibrate(3, 3, g[3], check=(5, 5, g[5]))
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps({"version": key, "convention": res.convention.code,
                                    "matches": list(res.matches_ref)}, sort_keys=True) + "\n")
    return res.convention


def weights_payload(p: FixedPoint, conv: SignConvention = CANONICAL) -> dict:
    w = solve_weights(p)
    rep = tangent_report(p, conv)
    return {"weights": asdict(w), "report": rep.to_dict(), "convention": conv.code}
