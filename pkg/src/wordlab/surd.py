"""Exact real numbers of the form ``(a + b*sqrt(d)) / c``.

Floors and ceilings are evaluated with integer square roots, so mechanical
words can be emitted to any length without floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from math import gcd, isqrt

from .errors import DomainError


def _squarefree_split(d: int) -> tuple[int, int]:
    """Write ``d = s*s * r`` with ``r`` squarefree; returns ``(s, r)``."""
    s, r, f = 1, d, 2
    while f * f <= r:
        while r % (f * f) == 0:
            r //= f * f
            s *= f
        f += 1
    return s, r


@total_ordering
class Surd:
    """Element ``(a + b*sqrt(d)) / c`` of the real quadratic field ``Q(sqrt(d))``.

    Stored normalized: ``c > 0``, ``gcd(a, b, c) == 1`` and ``d`` squarefree
    (``d == 0`` with ``b == 0`` for rationals).
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int = 0, c: int = 1, d: int = 0) -> None:
        if c == 0:
            raise DomainError("zero denominator")
        if d < 0:
            raise DomainError("only real quadratic fields are supported")
        if b and d:
            s, d = _squarefree_split(d)
            b *= s
            if d == 1:
                a, b, d = a + b, 0, 0
        if not b or not d:
            b, d = 0, 0
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(a, b), c)
        self.a, self.b, self.c, self.d = a // g, b // g, c // g, d

    @classmethod
    def coerce(cls, x) -> Surd:
        if isinstance(x, Surd):
            return x
        if isinstance(x, int):
            return cls(x)
        if isinstance(x, Fraction):
            return cls(x.numerator, 0, x.denominator)
        raise TypeError(f"cannot convert {type(x).__name__} to Surd")

    @classmethod
    def parse(cls, text: str) -> Surd:
        """Accepts ``"p/q"``, ``"p"`` or ``"surd:a,b,c,d"``."""
        text = text.strip()
        if text.startswith("surd:"):
            try:
                a, b, c, d = (int(x) for x in text[5:].split(","))
            except ValueError:
                raise DomainError(f"expected surd:a,b,c,d, got {text!r}") from None
            return cls(a, b, c, d)
        if re.fullmatch(r"-?\d+(/-?\d+)?", text):
            return cls.coerce(Fraction(text))
        raise DomainError(f"cannot parse exact number {text!r}")

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _field(self, other: Surd) -> int:
        if self.d and other.d and self.d != other.d:
            raise DomainError(f"mixing sqrt({self.d}) and sqrt({other.d})")
        return self.d or other.d

    def __add__(self, other) -> Surd:
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(o)
        return Surd(self.a * o.c + o.a * self.c, self.b * o.c + o.b * self.c, self.c * o.c, d)

    __radd__ = __add__

    def __neg__(self) -> Surd:
        return Surd(-self.a, -self.b, self.c, self.d)

    def __sub__(self, other) -> Surd:
        return self + (-Surd.coerce(other))

    def __rsub__(self, other) -> Surd:
        return Surd.coerce(other) - self

    def __mul__(self, other) -> Surd:
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(o)
        return Surd(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            self.c * o.c,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> Surd:
        return Surd(self.a, -self.b, self.c, self.d)

    def __truediv__(self, other) -> Surd:
        o = Surd.coerce(other)
        # (a + b r)/c divided by (x + y r)/z = z (a + b r)(x - y r) / (c (x^2 - y^2 d))
        norm = o.a * o.a - o.b * o.b * o.d
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        num = self * Surd(o.a, -o.b, 1, o.d) * o.c
        return Surd(num.a, num.b, num.c * norm, num.d)

    def __rtruediv__(self, other) -> Surd:
        return Surd.coerce(other) / self

    def sign(self) -> int:
        """Sign of ``a + b*sqrt(d)`` (``c > 0``) decided by comparing squares."""
        a, b, d = self.a, self.b, self.d
        if b == 0:
            return (a > 0) - (a < 0)
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        # opposite signs: compare a^2 with b^2 d; equality impossible for squarefree d > 1
        if a * a > b * b * d:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def __eq__(self, other) -> bool:
        try:
            o = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (o.a, o.b, o.c, o.d)

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.d))

    def floor(self) -> int:
        a, b, c, d = self.a, self.b, self.c, self.d
        if b == 0:
            return a // c
        t = isqrt(b * b * d)
        # b*sqrt(d) lies strictly between consecutive integers
        if b > 0:
            return (a + t) // c
        return (a - t - 1) // c

    def ceil(self) -> int:
        return -((-self).floor())

    def __float__(self) -> float:
        return (self.a + self.b * self.d**0.5) / self.c

    def __repr__(self) -> str:
        if self.b == 0:
            return f"Surd({self.a}/{self.c})"
        return f"Surd(({self.a} + {self.b}*sqrt({self.d}))/{self.c})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a) if self.c == 1 else f"{self.a}/{self.c}"
        return f"surd:{self.a},{self.b},{self.c},{self.d}"


def golden_slope() -> Surd:
    """``(3 - sqrt 5)/2``, the slope and intercept of the Fibonacci word."""
    return Surd(3, -1, 2, 5)
