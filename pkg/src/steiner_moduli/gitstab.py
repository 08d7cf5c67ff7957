"""Matrices of linear forms and their GIT (semi)stability.

A ``LinearMatrix`` is a k x (m+k) matrix whose entries are linear forms in
x_0..x_n. For k = 2 stability is decided intrinsically: writing the rows as
(f_j) and (g_j), the members ``beta*f - alpha*g`` of the row pencil cut out
the subspaces ``R_omega ∩ T_A``, and

    dim(R_omega ∩ T_A) = (m + 2) - rank(beta*M_F - alpha*M_G),

so the worst omega is the one minimizing the pencil rank. For k >= 3 only
instability certificates (leading-zero patterns in a given basis) are
checked.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .exactalg import (
    DropPoint,
    PencilPoint,
    RatMatrix,
    analyze_pencil,
    common_kernel_dim,
    format_scalar,
    rank,
    rref,
    to_scalar,
)

Form = tuple[Fraction, ...]


class MatrixFormatError(ValueError):
    """Malformed matrix data (shapes, coefficient lengths, unknown keys)."""


class NotSemistableError(ValueError):
    pass


@dataclass(frozen=True)
class LinearMatrix:
    """k x (m+k) matrix of linear forms on P^n; entry (r, c) is a coefficient vector of length n+1."""

    n: int
    m: int
    k: int
    entries: tuple[tuple[Form, ...], ...]

    def __post_init__(self):
        if self.n < 1 or self.m < 1 or self.k < 1:
            raise MatrixFormatError("need n >= 1, m >= 1, k >= 1")
        rows = tuple(tuple(tuple(to_scalar(c) for c in form) for form in row) for row in self.entries)
        if len(rows) != self.k:
            raise MatrixFormatError(f"expected {self.k} rows, got {len(rows)}")
        for r, row in enumerate(rows):
            if len(row) != self.m + self.k:
                raise MatrixFormatError(f"row {r} has {len(row)} entries, expected {self.m + self.k}")
            for c, form in enumerate(row):
                if len(form) != self.n + 1:
                    raise MatrixFormatError(
                        f"entry ({r}, {c}) has {len(form)} coefficients, expected {self.n + 1}")
        object.__setattr__(self, "entries", rows)

    @property
    def columns(self) -> int:
        return self.m + self.k

    @classmethod
    def from_monomials(cls, n: int, rows: Sequence[Sequence[Any]], k: int | None = None) -> LinearMatrix:
        """Build from a grid of ``None`` (zero), a variable index ``i`` (meaning x_i),
        or a tuple ``(coeff, i)``.

        >>> LinearMatrix.from_monomials(1, [[0, 1, None], [None, 0, 1]]).n
        1
        """
        k = len(rows) if k is None else k
        m = len(rows[0]) - k
        grid = []
        for row in rows:
            out = []
            for e in row:
                form = [Fraction(0)] * (n + 1)
                if e is None:
                    pass
                elif isinstance(e, tuple):
                    coeff, var = e
                    form[var] = to_scalar(coeff)
                else:
                    form[e] = Fraction(1)
                out.append(tuple(form))
            grid.append(tuple(out))
        return cls(n, m, k, tuple(grid))

    @classmethod
    def from_dict(cls, data: dict) -> LinearMatrix:
        unknown = set(data) - {"n", "m", "k", "entries"}
        if unknown:
            raise MatrixFormatError(f"unknown keys: {sorted(unknown)}")
        try:
            n, m, k, entries = data["n"], data["m"], data["k"], data["entries"]
        except KeyError as exc:
            raise MatrixFormatError(f"missing key {exc.args[0]!r}") from None
        for key, val in (("n", n), ("m", m), ("k", k)):
            if not isinstance(val, int) or isinstance(val, bool):
                raise MatrixFormatError(f"{key} must be an integer")
        try:
            return cls(n, m, k, tuple(tuple(tuple(form) for form in row) for row in entries))
        except (TypeError, ValueError) as exc:
            if isinstance(exc, MatrixFormatError):
                raise
            raise MatrixFormatError(str(exc)) from exc

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "entries": [[[format_scalar(c) for c in form] for form in row] for row in self.entries],
        }

    def is_zero_entry(self, r: int, c: int) -> bool:
        return not any(self.entries[r][c])

    def form_str(self, r: int, c: int) -> str:
        terms = []
        for i, coeff in enumerate(self.entries[r][c]):
            if coeff == 0:
                continue
            mag = abs(coeff)
            body = f"x{i}" if mag == 1 else f"{mag}*x{i}"
            terms.append(("-" if coeff < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return "\n".join(
            "[" + ", ".join(self.form_str(r, c) for c in range(self.columns)) + "]"
            for r in range(self.k)
        )

    def swap_rows(self) -> LinearMatrix:
        return LinearMatrix(self.n, self.m, self.k, self.entries[::-1])

    def permute_columns(self, order: Sequence[int]) -> LinearMatrix:
        return LinearMatrix(self.n, self.m, self.k,
                            tuple(tuple(row[j] for j in order) for row in self.entries))


def parse_matrix_document(text: str) -> tuple[LinearMatrix, int | None]:
    """Parse the JSON matrix file format.

    The optional ``"certificate": {"s": <int>}`` key names the row index of an
    instability certificate; it is only meaningful for k >= 3.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise MatrixFormatError("top level must be an object")
    cert_s = None
    if "certificate" in data:
        data = dict(data)
        cert = data.pop("certificate")
        if not isinstance(cert, dict) or set(cert) != {"s"} or not isinstance(cert["s"], int):
            raise MatrixFormatError('certificate must look like {"s": <int>}')
        cert_s = cert["s"]
    return LinearMatrix.from_dict(data), cert_s


@dataclass(frozen=True)
class Pencil:
    """Row pencil of a k = 2 matrix: row j of F (resp. G) holds the coefficients of f_j (resp. g_j)."""

    F: RatMatrix
    G: RatMatrix

    def member(self, point: PencilPoint) -> RatMatrix:
        return self.F.scale(point.beta) - self.G.scale(point.alpha)


def pencil(A: LinearMatrix) -> Pencil:
    if A.k != 2:
        raise ValueError(f"pencils are defined for k = 2, got k = {A.k}")
    cols = A.n + 1
    F = RatMatrix(A.columns, cols, A.entries[0])
    G = RatMatrix(A.columns, cols, A.entries[1])
    return Pencil(F, G)


class Violation(str, enum.Enum):
    SEMISTABLE_LOCUS_EMPTY = "semistable-locus-empty"  # m > k n
    NOT_INJECTIVE = "not-injective"  # A: W -> I ⊗ V has a kernel
    ROW_DEGENERATE = "row-degenerate"  # some row combination vanishes identically


def validate(A: LinearMatrix) -> list[Violation]:
    out = []
    if A.m > A.k * A.n:
        out.append(Violation.SEMISTABLE_LOCUS_EMPTY)
    # k(n+1) x (m+k): column c stacks the coefficient vectors of column c of A
    flat_w = RatMatrix(A.k * (A.n + 1), A.columns,
                       [[A.entries[r][c][i] for c in range(A.columns)]
                        for r in range(A.k) for i in range(A.n + 1)])
    if rank(flat_w) < A.columns:
        out.append(Violation.NOT_INJECTIVE)
    flat_i = RatMatrix(A.k, A.columns * (A.n + 1),
                       [[x for form in row for x in form] for row in A.entries])
    if rank(flat_i) < A.k:
        out.append(Violation.ROW_DEGENERATE)
    return out


class Verdict(str, enum.Enum):
    UNSTABLE = "Unstable"
    STRICTLY_SEMISTABLE = "StrictlySemistable"
    STABLE = "Stable"

    @property
    def is_semistable(self) -> bool:
        return self is not Verdict.UNSTABLE


@dataclass(frozen=True)
class StabilityVerdict:
    verdict: Verdict
    s_max: int | None
    witness: DropPoint | None = None
    violations: tuple[Violation, ...] = ()


def stability_k2(A: LinearMatrix) -> StabilityVerdict:
    """Decide (semi)stability of a 2 x (m+2) matrix.

    ``s_max`` is the largest dim(R_omega ∩ T_A); the threshold is (m+2)/2.
    Non-injective matrices are unstable without further analysis. The witness
    is a point of minimal pencil rank (an algebraic one only when no rational
    point attains it).
    """
    if A.k != 2:
        raise ValueError(f"stability_k2 needs k = 2, got k = {A.k}")
    violations = tuple(validate(A))
    if Violation.NOT_INJECTIVE in violations or Violation.ROW_DEGENERATE in violations:
        return StabilityVerdict(Verdict.UNSTABLE, None, None, violations)
    P = pencil(A)
    an = analyze_pencil(P.F, P.G)
    low = an.min_rank
    s_max = A.columns - low
    if 2 * s_max < A.columns:
        verdict = Verdict.STABLE
    elif 2 * s_max == A.columns:
        verdict = Verdict.STRICTLY_SEMISTABLE
    else:
        verdict = Verdict.UNSTABLE
    attaining = [d for d in an.drops if d.rank == low]
    witness = None
    if attaining:
        witness = attaining[0]
    elif verdict is not Verdict.STABLE:
        # every non-drop point attains the generic rank
        witness = DropPoint(low, point=PencilPoint.affine(0))
    elif an.drops:
        witness = an.drops[0]
    return StabilityVerdict(verdict, s_max, witness, violations)


def degeneracy_dim_k2(A: LinearMatrix) -> int:
    """Projective dimension of D(A) = {x : rank A_x < 2}; -1 when empty.

    D(A) is the union over omega of P(ker M(omega)). Outside the common zero
    locus of all f_j, g_j the parameter omega of a point is unique, so the
    generic kernels sweep a family of dimension exactly dim ker M(generic)
    whenever that exceeds the common kernel.
    """
    if A.k != 2:
        raise ValueError(f"degeneracy_dim_k2 needs k = 2, got k = {A.k}")
    P = pencil(A)
    an = analyze_pencil(P.F, P.G)
    size = A.n + 1
    k0 = common_kernel_dim(P.F, P.G)
    k_gen = size - an.generic_rank
    candidates = [k0 - 1]
    if k_gen > k0:
        candidates.append(k_gen)
    candidates.extend(size - d.rank - 1 for d in an.drops)
    return max(candidates)


def strata_indices(A: LinearMatrix) -> tuple[int, int]:
    """Largest j with A in S^j, and largest j with A in S~^j (both at least 1)."""
    v = stability_k2(A)
    if not v.verdict.is_semistable:
        raise NotSemistableError("strata are defined on the semistable locus only")
    j_s = max(1, v.s_max - (A.m - A.n))
    j_tilde = max(1, degeneracy_dim_k2(A) + 2)
    return j_s, j_tilde


Basis = tuple[tuple[Fraction, ...], ...]


def boundary_point_even_m(A: LinearMatrix) -> tuple[Basis, Basis]:
    """Unordered pair {span(f-block), span(g-block)} of a block-form boundary matrix.

    Input must already be ``[[0 .. 0, f ..], [g .., 0 .. 0]]`` with zero blocks
    of width m/2 + 1. Each span is returned as its reduced echelon basis and
    the pair is sorted, so equivalent matrices give equal results.
    """
    if A.k != 2:
        raise ValueError("boundary points are defined for k = 2")
    if A.m % 2:
        raise ValueError("boundary points exist only for even m")
    w = A.m // 2 + 1
    top_zero = all(A.is_zero_entry(0, c) for c in range(w))
    bottom_zero = all(A.is_zero_entry(1, c) for c in range(w, A.columns))
    if not (top_zero and bottom_zero):
        raise MatrixFormatError("matrix is not in block form [[0, f], [g, 0]]")
    f_span = rref(RatMatrix(w, A.n + 1, A.entries[0][w:]))
    g_span = rref(RatMatrix(w, A.n + 1, A.entries[1][:w]))
    if f_span.rows < w or g_span.rows < w:
        raise MatrixFormatError("block forms are linearly dependent (matrix is unstable)")
    pair = sorted([f_span.entries, g_span.entries])
    return pair[0], pair[1]


@dataclass(frozen=True)
class InstabilityCertificate:
    k: int
    m: int
    zeros: tuple[int, ...]  # leading-zero count of each row, i_0 >= i_1 >= ...
    s: int


class CertificateStatus(str, enum.Enum):
    NONSEMISTABLE = "valid-for-nonsemistable"
    NONSTABLE = "valid-for-nonstable"
    INVALID = "invalid"


def leading_zero_counts(A: LinearMatrix) -> tuple[int, ...]:
    """i_s(A): index of the first nonzero entry of row s (m+k for a zero row)."""
    out = []
    for r in range(A.k):
        out.append(next((c for c in range(A.columns) if not A.is_zero_entry(r, c)), A.columns))
    return tuple(out)


def check_instability_certificate(cert: InstabilityCertificate) -> CertificateStatus:
    """Check the leading-zero inequalities at the claimed row s.

    Non-stable: i_s >= (m+k)(k-1-s)/k with s != k-1, or i_{k-1} > 0.
    Non-semistable: i_s > (m+k)(k-1-s)/k. The stronger status wins. This
    certifies the given presentation only, not the absence of a better basis.
    """
    k, m, zeros, s = cert.k, cert.m, cert.zeros, cert.s
    if len(zeros) != k or not 0 <= s < k:
        return CertificateStatus.INVALID
    if any(a < b for a, b in zip(zeros, zeros[1:])):
        return CertificateStatus.INVALID
    if any(z < 0 or z > m + k for z in zeros):
        return CertificateStatus.INVALID
    bound = Fraction((m + k) * (k - 1 - s), k)
    if zeros[s] > bound:
        return CertificateStatus.NONSEMISTABLE
    if (s != k - 1 and zeros[s] >= bound) or zeros[k - 1] > 0:
        return CertificateStatus.NONSTABLE
    return CertificateStatus.INVALID


def certificate_for(A: LinearMatrix, s: int) -> InstabilityCertificate:
    return InstabilityCertificate(A.k, A.m, leading_zero_counts(A), s)
