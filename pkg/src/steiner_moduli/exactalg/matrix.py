"""Dense matrices over Q with fraction-free rank computation."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .scalars import ScalarLike, to_scalar


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


class RatMatrix:
    """Immutable rows x cols matrix of Fractions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[Iterable[ScalarLike]]):
        grid = tuple(tuple(to_scalar(x) for x in row) for row in entries)
        if rows < 0 or cols < 0:
            raise DimensionError("negative dimension")
        if len(grid) != rows or any(len(r) != cols for r in grid):
            raise DimensionError(f"entry grid does not match declared shape {rows}x{cols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", grid)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]], cols: int | None = None) -> RatMatrix:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, size: int) -> RatMatrix:
        return cls(size, size, [[int(i == j) for j in range(size)] for i in range(size)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.shape, self.entries))

    def __repr__(self) -> str:
        body = [[str(x) for x in row] for row in self.entries]
        return f"RatMatrix({self.rows}x{self.cols}, {body})"

    def transpose(self) -> RatMatrix:
        return RatMatrix(self.cols, self.rows, zip(*self.entries) if self.rows else [[]] * self.cols)

    def _check_same_shape(self, other: RatMatrix) -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: RatMatrix) -> RatMatrix:
        self._check_same_shape(other)
        return RatMatrix(self.rows, self.cols,
                         [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        self._check_same_shape(other)
        return RatMatrix(self.rows, self.cols,
                         [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def scale(self, c: ScalarLike) -> RatMatrix:
        c = to_scalar(c)
        return RatMatrix(self.rows, self.cols, [[c * a for a in r] for r in self.entries])

    def vstack(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.cols:
            raise DimensionError("vstack needs equal column counts")
        return RatMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def integer_rows(self) -> list[list[int]]:
        """Each row multiplied by the lcm of its denominators (row space unchanged)."""
        out = []
        for row in self.entries:
            den = lcm(*(x.denominator for x in row)) if row else 1
            out.append([int(x * den) for x in row])
        return out

    def rank(self) -> int:
        return rank(self)

    def rref(self) -> RatMatrix:
        return rref(self)


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by Bareiss elimination. Mutates ``rows``."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
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
                # exact by Sylvester's identity
                row[j] = (p * row[j] - f * prow[j]) // prev
            row[c] = 0
        prev = p
        r += 1
    return r


def rank(M: RatMatrix) -> int:
    """Exact rank over Q via fraction-free elimination."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return bareiss_rank(M.integer_rows())


def rref(M: RatMatrix) -> RatMatrix:
    """Reduced row echelon form with zero rows dropped (a canonical row-space basis)."""
    rows = [list(r) for r in M.entries]
    pivot_row = 0
    for c in range(M.cols):
        piv = next((i for i in range(pivot_row, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[pivot_row], rows[piv] = rows[piv], rows[pivot_row]
        inv = 1 / rows[pivot_row][c]
        rows[pivot_row] = [x * inv for x in rows[pivot_row]]
        for i in range(len(rows)):
            if i != pivot_row and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[pivot_row])]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    basis = rows[:pivot_row]
    return RatMatrix(len(basis), M.cols, basis)
