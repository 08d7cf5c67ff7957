"""Univariate polynomials over Q.

Coefficients are stored lowest degree first; the zero polynomial is the
empty tuple. A handful of helpers at the bottom operate on plain lists of
Python ints, which is what the fraction-free pencil elimination uses in its
inner loop.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .scalars import ScalarLike, to_scalar


class UniPoly:
    """Immutable polynomial with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[ScalarLike] = ()):
        cs = [to_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def x(cls) -> UniPoly:
        return cls((0, 1))

    @classmethod
    def constant(cls, c: ScalarLike) -> UniPoly:
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly.constant(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("UniPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for d in range(self.degree, -1, -1):
            c = self.coeffs[d]
            if c == 0:
                continue
            mono = "" if d == 0 else ("a" if d == 1 else f"a^{d}")
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def _coerce(self, other) -> UniPoly:
        if isinstance(other, UniPoly):
            return other
        return UniPoly.constant(other)

    def __add__(self, other) -> UniPoly:
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> UniPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> UniPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> UniPoly:
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other) -> tuple[UniPoly, UniPoly]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quo = [Fraction(0)] * (dq + 1)
        inv = 1 / other.lc
        for i in range(dq, -1, -1):
            q = rem[i + other.degree] * inv
            quo[i] = q
            if q:
                for j, y in enumerate(other.coeffs):
                    rem[i + j] -= q * y
        return UniPoly(quo), UniPoly(rem[: other.degree])

    def __floordiv__(self, other) -> UniPoly:
        return divmod(self, other)[0]

    def __mod__(self, other) -> UniPoly:
        return divmod(self, other)[1]

    def __call__(self, value: ScalarLike) -> Fraction:
        v = to_scalar(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> UniPoly:
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def primitive_integer_coeffs(self) -> list[int]:
        """Integer coefficient list with content 1 and positive leading coefficient."""
        if self.is_zero():
            return []
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return [v // g for v in ints]


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` and g monic."""
    r0, r1 = a, b
    s0, s1 = UniPoly((1,)), UniPoly()
    t0, t1 = UniPoly(), UniPoly((1,))
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree <= 0:
        return p.monic()
    return (p // poly_gcd(p, p.derivative())).monic()


# Integer polynomials as lists of ints, lowest degree first. Used by the
# fraction-free elimination in pencil.py, where Fraction overhead dominates.

def ipoly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def ipoly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return ipoly_trim(out)


def ipoly_sub(a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return ipoly_trim(out)


def ipoly_exact_div(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Quotient a / b in Z[x]; raises ArithmeticError if b does not divide a."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        if rem:
            raise ArithmeticError("inexact polynomial division")
        return []
    quo = [0] * (len(rem) - db)
    lead = b[-1]
    for i in range(len(rem) - 1 - db, -1, -1):
        q, r = divmod(rem[i + db], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        quo[i] = q
        if q:
            for j, y in enumerate(b):
                rem[i + j] -= q * y
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return ipoly_trim(quo)
