"""Subword complexity profiles, valence statistics and the shape theorems.

Two engines produce the complexity sequence: a hash-set count per length
(quadratic, used as the oracle) and a suffix automaton whose states each cover
a contiguous interval of substring lengths, so per-length counts fall out of a
difference array in linear time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._kernels import suffix_automaton
from .errors import DomainError
from .words import Word, is_subword

__all__ = [
    "ComplexityProfile",
    "SuffixAutomaton",
    "TheoremCheck",
    "TheoremReport",
    "ValenceTable",
    "check_profile_theorems",
    "check_sequence_shape",
    "complexity_sequence",
    "is_very_low_complexity",
    "k_parameter",
    "left_extensions",
    "naive_counts",
    "r_parameter",
    "special_subwords",
    "special_subwords_by_length",
    "valence",
    "valence_table",
]


def _require_nonempty(w: Word) -> None:
    if len(w) == 0:
        raise DomainError("complexity is defined for nonempty words only")


def naive_counts(w: Word) -> list[int]:
    """``p_w(n)`` for ``n = 1..N`` by hashing every window."""
    _require_nonempty(w)
    if w.k <= 256:
        raw = bytes(w.letters)
    else:
        raw = w.letters
    n_total = len(raw)
    return [len({raw[i : i + n] for i in range(n_total - n + 1)}) for n in range(1, n_total + 1)]


class SuffixAutomaton:
    """Suffix automaton of a word, kept as flat state arrays.

    Every state stands for the set of substrings sharing one end-position set;
    those substrings are exactly the suffixes of the longest one with lengths
    in ``(length[link], length]``.
    """

    def __init__(self, w: Word) -> None:
        _require_nonempty(w)
        self.word = w
        letters = np.asarray(w.letters, dtype=np.int64)
        link, length, firstpos, transitions, size, last = suffix_automaton(letters, w.k)
        self.size = int(size)
        self.last = int(last)
        self.link = link
        self.length = length
        self.firstpos = firstpos
        self.transitions = np.ascontiguousarray(transitions)

    @cached_property
    def out_degree(self) -> np.ndarray:
        return (self.transitions >= 0).sum(axis=0)

    def _length_intervals(self, mask: np.ndarray | None = None) -> np.ndarray:
        # number of distinct substrings of each length 0..N+1 among selected states
        n_total = len(self.word)
        states = np.arange(1, self.size)
        if mask is not None:
            states = states[mask[1:]]
        lo = self.length[self.link[states]] + 1
        hi = self.length[states] + 1
        diff = np.bincount(lo, minlength=n_total + 2) - np.bincount(hi, minlength=n_total + 2)
        return np.cumsum(diff)[: n_total + 2]

    def counts(self) -> list[int]:
        n_total = len(self.word)
        return self._length_intervals()[1 : n_total + 1].tolist()

    def valence_counts(self) -> np.ndarray:
        """Matrix ``s[n, i]`` for ``0 <= n <= N`` and ``0 <= i <= k``."""
        n_total, k = len(self.word), self.word.k
        table = np.zeros((n_total + 1, k + 1), dtype=np.int64)
        deg = self.out_degree
        for i in range(k + 1):
            table[:, i] = self._length_intervals(deg == i)[: n_total + 1]
        # the empty word sits in the root state
        table[0, :] = 0
        table[0, int(deg[0])] = 1
        return table

    def longest_special_length(self) -> int:
        special = self.out_degree >= 2
        special[0] = False
        return int(self.length[special].max()) if special.any() else 0

    def longest_repeated_suffix_length(self) -> int:
        # the whole word occurs once, so its state is the last one; its link
        # holds the longest suffix occurring elsewhere
        return int(self.length[self.link[self.last]])

    def special_by_length(self) -> dict[int, list[Word]]:
        w = self.word
        out: dict[int, list[Word]] = {}
        deg = self.out_degree
        for v in range(1, self.size):
            if deg[v] < 2:
                continue
            end = int(self.firstpos[v]) + 1
            for n in range(int(self.length[self.link[v]]) + 1, int(self.length[v]) + 1):
                out.setdefault(n, []).append(w[end - n : end])
        return {n: sorted(ws) for n, ws in sorted(out.items())}


def fast_counts(w: Word) -> list[int]:
    return SuffixAutomaton(w).counts()


@dataclass(frozen=True)
class ComplexityProfile:
    word_length: int
    sequence: tuple[int, ...]
    r_param: int
    k_param: int
    peak_value: int
    peak_index: int

    def __getitem__(self, n: int) -> int:
        """``p(n)`` with 1-based ``n``; ``p(0) = 1``."""
        if n == 0:
            return 1
        if not 1 <= n <= self.word_length:
            raise IndexError(n)
        return self.sequence[n - 1]


def complexity_sequence(w: Word, engine: str = "fast") -> ComplexityProfile:
    _require_nonempty(w)
    sam = SuffixAutomaton(w)
    if engine == "fast":
        seq = sam.counts()
    elif engine == "naive":
        seq = naive_counts(w)
    else:
        raise DomainError(f"unknown engine {engine!r}")
    r = sam.longest_special_length() + 1
    k = sam.longest_repeated_suffix_length() + 1
    return ComplexityProfile(
        word_length=len(w),
        sequence=tuple(seq),
        r_param=r,
        k_param=k,
        peak_value=max(seq),
        peak_index=r,
    )


def r_parameter(w: Word) -> int:
    """Least ``n`` such that every length-``n`` subword has at most one right extension."""
    return SuffixAutomaton(w).longest_special_length() + 1


def k_parameter(w: Word) -> int:
    """Length of the shortest suffix occurring exactly once."""
    return SuffixAutomaton(w).longest_repeated_suffix_length() + 1


def _require_subword(w: Word, u: Word) -> None:
    if len(u) == 0:
        raise DomainError("extensions are defined for nonempty subwords")
    if not is_subword(w, u):
        raise DomainError(f"{u} is not a subword of {w}")


def valence(w: Word, u: Word) -> tuple[int, frozenset[int]]:
    """Number and set of letters ``c`` with ``uc`` a subword of ``w``."""
    _require_subword(w, u)
    a, b, m = w.letters, u.letters, len(u)
    right = frozenset(a[i + m] for i in range(len(a) - m) if a[i : i + m] == b)
    return len(right), right


def left_extensions(w: Word, u: Word) -> frozenset[int]:
    _require_subword(w, u)
    a, b, m = w.letters, u.letters, len(u)
    return frozenset(a[i - 1] for i in range(1, len(a) - m + 1) if a[i : i + m] == b)


def special_subwords(w: Word, n: int | None = None) -> set[Word]:
    """Subwords of valence >= 2, of length ``n`` or of every length when ``n`` is None."""
    if n is None:
        return {u for n in range(1, len(w) + 1) for u in special_subwords(w, n)}
    if not 1 <= n <= len(w):
        raise DomainError(f"length {n} outside [1, {len(w)}]")
    a = w.letters
    ext: dict[tuple[int, ...], set[int]] = {}
    for i in range(len(a) - n):
        ext.setdefault(a[i : i + n], set()).add(a[i + n])
    return {Word._trusted(u, w.k) for u, nxt in ext.items() if len(nxt) >= 2}


def special_subwords_by_length(w: Word) -> dict[int, list[Word]]:
    return SuffixAutomaton(w).special_by_length()


@dataclass(frozen=True)
class ValenceTable:
    """``s(n, i)``: distinct length-``n`` subwords with exactly ``i`` right extensions."""

    k: int
    rows: tuple[tuple[int, ...], ...]

    def s(self, n: int, i: int) -> int:
        if not 0 <= i <= self.k:
            return 0
        return self.rows[n][i]

    @property
    def word_length(self) -> int:
        return len(self.rows) - 1

    def special_count(self, n: int) -> int:
        return sum(self.rows[n][2:])


def valence_table(w: Word) -> ValenceTable:
    table = SuffixAutomaton(w).valence_counts()
    return ValenceTable(w.k, tuple(tuple(int(x) for x in row) for row in table))


@dataclass(frozen=True)
class TheoremCheck:
    name: str
    passed: bool
    witness: int | None = None
    detail: str = ""


@dataclass
class TheoremReport:
    word_length: int
    checks: list[TheoremCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[TheoremCheck]:
        return [c for c in self.checks if not c.passed]

    def by_name(self) -> dict[str, TheoremCheck]:
        return {c.name: c for c in self.checks}

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checks": {
                c.name: {"passed": c.passed, "witness": c.witness, "detail": c.detail}
                for c in self.checks
            },
        }


def _first(bad: np.ndarray, offset: int = 1) -> int | None:
    idx = np.flatnonzero(bad)
    return int(idx[0]) + offset if idx.size else None


def check_sequence_shape(seq: tuple[int, ...] | list[int], k: int) -> list[TheoremCheck]:
    """Checks that depend on the sequence alone (valid for any complexity sequence)."""
    p = np.asarray(seq, dtype=np.int64)
    n_total = len(p)
    n = np.arange(1, n_total + 1)
    checks = []

    cap = np.minimum(np.power(float(k), np.minimum(n, 60)), n_total - n + 1)
    bad = (p < 1) | (p > cap)
    checks.append(TheoremCheck("bounds", not bad.any(), _first(bad), "1 <= p(n) <= min(k^n, N-n+1)"))
    checks.append(TheoremCheck("last_is_one", p[-1] == 1, None if p[-1] == 1 else n_total))

    # p(m+n) <= p(m) p(n) for m, n >= 1, m + n <= N
    witness = None
    for m in range(1, n_total // 2 + 1):
        # p(m+j) against p(m) p(j) for j = 1..N-m
        bad = p[m:] > p[m - 1] * p[: n_total - m]
        if bad.any():
            witness = m
            break
    checks.append(TheoremCheck("submultiplicative", witness is None, witness, "p(m+n) <= p(m)p(n)"))

    bad = p[1:] > k * p[:-1]
    checks.append(TheoremCheck("growth_by_k", not bad.any(), _first(bad), "p(n+1) <= k p(n)"))

    diffs = np.diff(p)
    # unimodal, and once decreasing it drops by exactly one down to 1
    falling = np.flatnonzero(diffs < 0)
    ok, wit = True, None
    if falling.size:
        start = int(falling[0])
        tail = diffs[start:]
        if (tail != -1).any():
            ok, wit = False, start + 1 + int(np.flatnonzero(tail != -1)[0])
    checks.append(TheoremCheck("unimodal_unit_descent", ok, wit, "rise, then fall by 1 to p(N)=1"))
    return checks


def check_profile_theorems(w: Word) -> TheoremReport:
    """Evaluate every shape theorem on ``w``; any failure indicates a bug."""
    _require_nonempty(w)
    sam = SuffixAutomaton(w)
    seq = tuple(sam.counts())
    r = sam.longest_special_length() + 1
    kw = sam.longest_repeated_suffix_length() + 1
    n_total, k = len(w), w.k
    p = np.array((1,) + seq, dtype=np.int64)  # p[0] = 1 for the empty word
    report = TheoremReport(n_total, check_sequence_shape(seq, k))
    checks = report.checks

    # p(n+1) - p(n) <= k (p(n) - p(n-1)) for 1 <= n < K_w
    wit = None
    for n in range(1, min(kw, n_total)):
        if p[n + 1] - p[n] > k * (p[n] - p[n - 1]):
            wit = n
            break
    checks.append(TheoremCheck("growth_inequality", wit is None, wit, "for 1 <= n < K_w"))

    peak_ok = p[r] == p.max() and p[r] == n_total - max(r, kw) + 1
    checks.append(TheoremCheck("peak_at_r", bool(peak_ok), None if peak_ok else r, "p(R) = N - max(R,K) + 1"))

    # the split is on constant words: R = 1 alone also admits (01)^m, 01^m, ...
    if seq[0] == 1:
        rk_ok = r + kw == n_total + 1
    else:
        rk_ok = n_total >= r + kw
    checks.append(
        TheoremCheck("r_plus_k", bool(rk_ok), None if rk_ok else r + kw, "R+K = N+1 for a^N, else R+K <= N")
    )

    lo, hi = min(r, kw), max(r, kw)
    wit = None
    for n in range(1, n_total):
        step = p[n + 1] - p[n]
        if n < lo:
            good = step >= 1
        elif n < hi:
            good = step == 0 if r < kw else step >= 0
        else:
            good = step == -1
        if not good:
            wit = n
            break
    checks.append(TheoremCheck("phase_structure", wit is None, wit, "increase / plateau / unit descent at R, K"))

    s = sam.valence_counts()
    weights = np.arange(-1, k)  # i - 1 for i = 0..k
    wit = None
    for n in range(0, n_total):
        gain = int((weights[2:] * s[n, 2:]).sum())
        expected = p[n] + gain - (1 if n >= kw else 0)
        if p[n + 1] != expected or s[n].sum() != p[n] or s[n, 0] != (1 if n >= kw else 0):
            wit = n
            break
    if wit is None and s[n_total, 0] != 1:
        wit = n_total
    checks.append(TheoremCheck("valence_recurrence", wit is None, wit, "p(n+1) = p(n) + sum (i-1) s(n,i) [-1 if n >= K]"))
    return report


def is_very_low_complexity(w: Word) -> tuple[bool, tuple[int, int] | None]:
    """Very-low-complexity test: ``n+1`` growth up to ``a``, flat to ``b``, unit descent after.

    Pairs with ``a == b`` are accepted.  Returns the lexicographically first
    qualifying ``(a, b)``.
    """
    seq = complexity_sequence(w).sequence
    n_total = len(seq)
    p = (1,) + seq

    def fits(a: int, b: int) -> bool:
        return (
            all(p[n] == n + 1 for n in range(1, a + 1))
            and all(p[n + 1] == p[n] for n in range(a, b))
            and all(p[n] == n_total - n + 1 for n in range(b, n_total + 1))
        )

    for a in range(1, n_total + 1):
        if p[a] != a + 1:
            break
        for b in range(a, n_total + 1):
            if fits(a, b):
                return True, (a, b)
    return False, None
