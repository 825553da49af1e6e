"""Finite words over integer alphabets and the basic subword primitives.

Letters are the integers ``0..k-1``.  Text I/O spells letters with the
characters ``0-9`` followed by ``a-z`` so alphabets up to 36 letters round-trip
through plain strings.
"""

from __future__ import annotations

import json
import string
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import DomainError

LETTER_CHARS = string.digits + string.ascii_lowercase
_CHAR_TO_LETTER = {c: i for i, c in enumerate(LETTER_CHARS)}


class Word:
    """An immutable word over the alphabet ``{0, ..., k-1}``."""

    __slots__ = ("_letters", "_k", "_hash")

    def __init__(self, letters: Iterable[int] = (), k: int = 2) -> None:
        letters = tuple(int(x) for x in letters)
        if k < 1:
            raise DomainError(f"alphabet size must be positive, got {k}")
        for x in letters:
            if not 0 <= x < k:
                raise DomainError(f"letter {x} outside alphabet of size {k}")
        self._letters = letters
        self._k = k
        self._hash = hash((letters, k))

    @classmethod
    def _trusted(cls, letters: tuple[int, ...], k: int) -> Word:
        # skips validation; callers guarantee 0 <= letter < k
        w = cls.__new__(cls)
        w._letters = letters
        w._k = k
        w._hash = hash((letters, k))
        return w

    @classmethod
    def from_str(cls, text: str, k: int | None = None) -> Word:
        """Parse ``"01101"`` or ``"0 1 10 3"`` text. ``k`` defaults to ``max(2, max letter + 1)``."""
        text = text.strip()
        if text in ("", "ε", "eps"):
            return cls((), 2 if k is None else k)
        if any(c.isspace() for c in text):
            # large alphabets print as space-separated integers
            try:
                letters = [int(tok) for tok in text.split()]
            except ValueError:
                raise DomainError(f"invalid integer letter in {text!r}") from None
        else:
            try:
                letters = [_CHAR_TO_LETTER[c] for c in text.lower()]
            except KeyError as exc:
                raise DomainError(f"invalid letter character {exc.args[0]!r}") from None
        if k is None:
            k = max(2, max(letters) + 1)
        return cls(letters, k)

    @classmethod
    def from_json(cls, payload: str | dict) -> Word:
        if isinstance(payload, str):
            payload = json.loads(payload)
        return cls(payload["letters"], payload["k"])

    @property
    def letters(self) -> tuple[int, ...]:
        return self._letters

    @property
    def k(self) -> int:
        return self._k

    def to_json(self) -> dict:
        return {"k": self._k, "letters": list(self._letters)}

    def __str__(self) -> str:
        if self._k > len(LETTER_CHARS):
            return " ".join(map(str, self._letters))
        return "".join(LETTER_CHARS[x] for x in self._letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r}, k={self._k})"

    def __len__(self) -> int:
        return len(self._letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self._letters)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Word._trusted(self._letters[index], self._k)
        return self._letters[index]

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Word):
            return self._k == other._k and self._letters == other._letters
        if isinstance(other, PackedWord):
            return other == self
        return NotImplemented

    def __lt__(self, other: Word) -> bool:
        return (self._letters, self._k) < (other._letters, other._k)

    def __add__(self, other: Word) -> Word:
        if not isinstance(other, Word):
            return NotImplemented
        return Word._trusted(self._letters + other._letters, max(self._k, other._k))

    def __mul__(self, power: int) -> Word:
        if power < 0:
            raise DomainError("word powers must be non-negative")
        return Word._trusted(self._letters * power, self._k)

    __rmul__ = __mul__

    def with_alphabet(self, k: int) -> Word:
        return Word(self._letters, k)

    def window(self, i: int, j: int) -> Word:
        """The 1-based closed block ``w[i, j]``."""
        if not 1 <= i <= j <= len(self):
            raise DomainError(f"w[{i},{j}] is not a block of a word of length {len(self)}")
        return self[i - 1 : j]

    def pack(self) -> PackedWord:
        if self._k != 2:
            raise DomainError("only binary words have a packed form")
        if len(self) > PackedWord.MAX_LENGTH:
            raise DomainError(f"packed words hold at most {PackedWord.MAX_LENGTH} letters")
        bits = 0
        for x in self._letters:
            bits = (bits << 1) | x
        return PackedWord(bits, len(self))


@dataclass(frozen=True, eq=False)
class PackedWord:
    """A binary word of length <= 64 stored as an integer, first letter most significant."""

    bits: int
    length: int

    MAX_LENGTH = 64

    def __post_init__(self) -> None:
        if not 0 <= self.length <= self.MAX_LENGTH:
            raise DomainError(f"packed length must be in [0, {self.MAX_LENGTH}]")
        if not 0 <= self.bits < (1 << self.length) or (self.length == 0 and self.bits):
            raise DomainError("bits do not fit the stated length")

    def to_word(self) -> Word:
        n = self.length
        return Word._trusted(tuple((self.bits >> (n - 1 - i)) & 1 for i in range(n)), 2)

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PackedWord):
            return self.bits == other.bits and self.length == other.length
        if isinstance(other, Word):
            return other.k == 2 and len(other) == self.length and self.to_word() == other
        return NotImplemented

    def __hash__(self) -> int:
        # must agree with Word.__hash__ for equal words
        return hash(self.to_word())


class Occurrence(NamedTuple):
    """A 1-based closed occurrence ``w[start, end]``."""

    start: int
    end: int


def as_word(value: Word | PackedWord | str | Sequence[int], k: int | None = None) -> Word:
    if isinstance(value, Word):
        return value if k is None or k == value.k else value.with_alphabet(k)
    if isinstance(value, PackedWord):
        return value.to_word()
    if isinstance(value, str):
        return Word.from_str(value, k)
    letters = tuple(value)
    return Word(letters, k if k is not None else max(2, max(letters, default=0) + 1))


def subwords(w: Word, n: int) -> set[Word]:
    """Distinct length-``n`` blocks of ``w``; ``{ε}`` when ``n == 0``."""
    if not 0 <= n <= len(w):
        raise DomainError(f"subword length {n} outside [0, {len(w)}]")
    letters, k = w.letters, w.k
    return {Word._trusted(letters[i : i + n], k) for i in range(len(w) - n + 1)}


def all_subwords(w: Word) -> set[Word]:
    out: set[Word] = set()
    for n in range(len(w) + 1):
        out |= subwords(w, n)
    return out


def _require_nonempty(u: Word) -> None:
    if len(u) == 0:
        raise DomainError("the empty word has no defined multiplicity")


def occurrences(w: Word, u: Word) -> list[Occurrence]:
    """All (possibly overlapping) occurrences of ``u`` in ``w``, ascending."""
    _require_nonempty(u)
    m = len(u)
    a, b = w.letters, u.letters
    return [Occurrence(i + 1, i + m) for i in range(len(a) - m + 1) if a[i : i + m] == b]


def multiplicity(w: Word, u: Word) -> int:
    return len(occurrences(w, u))


def is_subword(w: Word, u: Word) -> bool:
    m = len(u)
    a, b = w.letters, u.letters
    return any(a[i : i + m] == b for i in range(len(a) - m + 1))


def reverse(w: Word) -> Word:
    return Word._trusted(w.letters[::-1], w.k)


def height(w: Word) -> int:
    """Number of 1s in a binary word."""
    if w.k > 2:
        raise DomainError("height is defined for binary words only")
    return sum(w.letters)


def is_period(w: Word, p: int) -> bool:
    if p < 1:
        raise DomainError(f"period must be >= 1, got {p}")
    a = w.letters
    return all(a[i] == a[i + p] for i in range(len(a) - p))


def prefix(w: Word, n: int) -> Word:
    return w[:n]


def suffix(w: Word, n: int) -> Word:
    return w[len(w) - n :] if n else w[:0]


def read_words(lines: Iterable[str], k: int | None = None) -> Iterator[Word]:
    """Words from text lines; blank lines and ``#`` comments are skipped."""
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("{"):
            yield Word.from_json(line)
        else:
            yield Word.from_str(line, k)
