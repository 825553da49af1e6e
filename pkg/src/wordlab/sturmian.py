"""Sturmian and balanced binary words.

Generators: morphic fixed points (the Fibonacci word among them), lower and
upper mechanical words with exact slope/intercept, cutting sequences, the
peak words and the ``0^(l+1)1, 0^l1`` substitution of the Fibonacci word.
Predicates: balance, an unbalanced witness, finite-Sturmian membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Literal, Mapping

import numpy as np

from .errors import CapacityError, DomainError
from .surd import Surd
from .words import Word, reverse

MAX_MECHANICAL_LENGTH = 10**7


class Morphism:
    """A nonerasing substitution ``letter -> word`` extended letter by letter."""

    def __init__(self, images: Mapping[int, Word | str], k: int | None = None) -> None:
        imgs = {int(a): (img if isinstance(img, Word) else Word.from_str(img, k)) for a, img in images.items()}
        if k is None:
            k = max([2, max(imgs) + 1] + [img.k for img in imgs.values()])
        for a, img in imgs.items():
            if len(img) == 0:
                raise DomainError(f"image of {a} is empty; morphisms here are nonerasing")
        self.k = k
        self.images = {a: img.letters for a, img in imgs.items()}

    def image(self, letter: int) -> Word:
        try:
            return Word._trusted(self.images[letter], self.k)
        except KeyError:
            raise DomainError(f"letter {letter} has no image") from None

    def __call__(self, w: Word) -> Word:
        return apply_morphism(self, w)

    def __repr__(self) -> str:
        pairs = ", ".join(f"{a}->{self.image(a)}" for a in sorted(self.images))
        return f"Morphism({pairs})"


def apply_morphism(m: Morphism, w: Word) -> Word:
    out: list[int] = []
    images = m.images
    for x in w.letters:
        try:
            out.extend(images[x])
        except KeyError:
            raise DomainError(f"letter {x} has no image") from None
    return Word._trusted(tuple(out), m.k)


FIBONACCI = Morphism({0: "01", 1: "0"})


def psi_morphism(l: int) -> Morphism:
    """``0 -> 0^(l+1) 1``, ``1 -> 0^l 1``."""
    if l < 1:
        raise DomainError("block parameter must be >= 1")
    return Morphism({0: Word((0,) * (l + 1) + (1,)), 1: Word((0,) * l + (1,))})


def fixed_point_prefix(m: Morphism, a: int, length: int) -> Word:
    """First ``length`` letters of the fixed point of ``m`` beginning with ``a``."""
    img = m.image(a).letters
    if len(img) < 2 or img[0] != a:
        raise DomainError(f"image of {a} must start with {a} and have length >= 2")
    if length < 0:
        raise DomainError("length must be non-negative")
    # expand in place: letter i of the fixed point produces the block at its image
    out = list(img)
    i = 1
    while len(out) < length:
        out.extend(m.images[out[i]])
        i += 1
    return Word._trusted(tuple(out[:length]), m.k)


def fibonacci_iterate(n: int) -> Word:
    """``f_0 = 0``, ``f_1 = 01``, ``f_(n+1) = f_n f_(n-1)``."""
    if n < 0:
        raise DomainError("index must be non-negative")
    prev, cur = (0,), (0, 1)
    if n == 0:
        return Word._trusted(prev, 2)
    for _ in range(n - 1):
        prev, cur = cur, cur + prev
    return Word._trusted(cur, 2)


def fibonacci_prefix(length: int) -> Word:
    return fixed_point_prefix(FIBONACCI, 0, length)


@dataclass(frozen=True)
class SlopeIntercept:
    alpha: Surd
    rho: Surd

    def __post_init__(self) -> None:
        alpha, rho = Surd.coerce(self.alpha), Surd.coerce(self.rho)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "rho", rho)
        if not 0 < alpha < 1:
            raise DomainError(f"slope must lie in (0, 1), got {alpha}")
        if not 0 <= rho <= 1:
            raise DomainError(f"intercept must lie in [0, 1], got {rho}")
        if alpha.d and rho.d and alpha.d != rho.d:
            raise DomainError("slope and intercept must share a quadratic field")

    @classmethod
    def parse(cls, alpha: str, rho: str) -> SlopeIntercept:
        return cls(Surd.parse(alpha), Surd.parse(rho))

    @property
    def irrational(self) -> bool:
        return not self.alpha.is_rational


Variant = Literal["lower", "upper"]


def mechanical_word(s: SlopeIntercept, variant: Variant, length: int) -> Word:
    """Letters ``n = 0..length-1``: 1 exactly when floor (lower) or ceiling
    (upper) of ``n*alpha + rho`` steps up between ``n`` and ``n+1``."""
    if variant not in ("lower", "upper"):
        raise DomainError(f"variant must be 'lower' or 'upper', got {variant!r}")
    if length > MAX_MECHANICAL_LENGTH:
        raise CapacityError(f"length {length} exceeds the exact-emission bound {MAX_MECHANICAL_LENGTH}")
    if length < 0:
        raise DomainError("length must be non-negative")
    alpha, rho = s.alpha, s.rho
    # x = (a + b sqrt d)/c; integer parts of n*x + rho without per-step surd objects
    d = alpha.d or rho.d
    c = alpha.c * rho.c
    a0, b0 = rho.a * alpha.c, rho.b * alpha.c
    da, db = alpha.a * rho.c, alpha.b * rho.c

    def floor_at(n: int) -> int:
        a, b = a0 + n * da, b0 + n * db
        if b == 0:
            return a // c
        t = isqrt(b * b * d)
        return (a + t) // c if b > 0 else (a - t - 1) // c

    def ceil_at(n: int) -> int:
        a, b = -(a0 + n * da), -(b0 + n * db)
        if b == 0:
            return -(a // c)
        t = isqrt(b * b * d)
        return -((a + t) // c if b > 0 else (a - t - 1) // c)

    step = floor_at if variant == "lower" else ceil_at
    values = [step(n) for n in range(length + 1)]
    return Word._trusted(tuple(values[n + 1] - values[n] for n in range(length)), 2)


def cutting_sequence(theta: Surd | Fraction | int, length: int) -> Word:
    """Cutting sequence of the line ``y = theta x`` (0 = vertical grid line, 1 = horizontal).

    Produced as the lower mechanical word with slope ``theta/(1+theta)`` and
    intercept equal to the slope.
    """
    theta = Surd.coerce(theta)
    if theta <= 0:
        raise DomainError("theta must be positive")
    alpha = theta / (theta + 1)
    return mechanical_word(SlopeIntercept(alpha, alpha), "lower", length)


def _require_binary(w: Word) -> None:
    if w.k > 2 or any(x > 1 for x in w.letters):
        raise DomainError("balance is defined for binary words only")


def is_balanced(w: Word) -> bool:
    """Every two equal-length windows differ in height by at most one."""
    _require_binary(w)
    n_total = len(w)
    if n_total < 2:
        return True
    prefix = np.concatenate(([0], np.cumsum(np.asarray(w.letters, dtype=np.int64))))
    for n in range(1, n_total):
        heights = prefix[n:] - prefix[:-n]
        if heights.max() - heights.min() > 1:
            return False
    return True


def unbalanced_witness(w: Word) -> Word | None:
    """Shortest ``u`` (lexicographically least among those) with ``0u0`` and ``1u1`` in ``w``."""
    _require_binary(w)
    a = w.letters
    n_total = len(a)
    for m in range(0, n_total - 1):
        zeros, ones = set(), set()
        for i in range(n_total - m - 1):
            first, last = a[i], a[i + m + 1]
            if first == last:
                (ones if first else zeros).add(a[i + 1 : i + m + 1])
        common = zeros & ones
        if common:
            return Word._trusted(min(common), 2)
    return None


def is_finite_sturmian(w: Word) -> bool:
    """Membership by the balance criterion."""
    _require_binary(w)
    if len(w) == 0:
        raise DomainError("finite Sturmian words are nonempty")
    return is_balanced(w)


def peak_word(n_total: int) -> Word:
    """Binary word whose complexity climbs as ``n+1`` to ``N/2`` then falls as ``N-n+1``."""
    if n_total < 2:
        raise DomainError("peak words need length >= 2")
    half = n_total // 2
    if n_total % 2 == 0:
        letters = (0,) * (half - 1) + (0, 1) + (0,) * (half - 1)
    else:
        letters = (0,) * half + (1,) + (0,) * half
    return Word._trusted(letters, 2)


def _g(n: int) -> Word:
    # g_2 = empty, g_n = f_(n-3) ... f_1 f_0
    out: tuple[int, ...] = ()
    for j in range(n - 3, -1, -1):
        out += fibonacci_iterate(j).letters
    return Word._trusted(out, 2)


def _t(n: int) -> Word:
    return Word._trusted((0, 1) if n % 2 else (1, 0), 2)


def fib_reverse_identity(n: int) -> bool:
    """``f_(n+2) == g_n . rev(f_n) . rev(f_n) . t_n``."""
    if n < 2:
        raise DomainError("identity holds from n = 2")
    rf = reverse(fibonacci_iterate(n))
    return fibonacci_iterate(n + 2) == _g(n) + rf + rf + _t(n)


def psi_prefix(l: int, length: int) -> Word:
    """Prefix of the image of the Fibonacci word under ``0 -> 0^(l+1)1, 1 -> 0^l1``."""
    if length < 1:
        raise DomainError("length must be >= 1")
    psi = psi_morphism(l)
    # each image has at least l+1 letters
    source = fibonacci_prefix(-(-length // (l + 1)))
    return apply_morphism(psi, source)[:length]
