"""Exhaustive census of distinct complexity sequences ``a_k(n)``.

Complexity sequences do not change when letters are renamed, so only
canonical words (letters first appear in the order 0, 1, 2, ...) are
enumerated.  The canonical space is split into shards by a fixed-length prefix;
shards are processed independently and their sequence sets are unioned in
shard order, so results do not depend on the worker count.
"""

from __future__ import annotations

import csv
import io
import logging
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ._kernels import enumerate_shard
from .errors import CapacityError, DomainError
from .words import Word

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**10
SHARD_TARGET = 1 << 18
MAX_LENGTH = 255


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("WORDLAB_JOBS", "1")))
    except ValueError:
        return 1


@lru_cache(maxsize=None)
def _completions(remaining: int, top: int, k: int) -> int:
    """Canonical completions with ``remaining`` free positions when letters ``0..top`` are used."""
    if remaining == 0:
        return 1
    total = (top + 1) * _completions(remaining - 1, top, k)
    if top + 1 < k:
        total += _completions(remaining - 1, top + 1, k)
    return total


def word_count(k: int, n: int, canonical: bool = True) -> int:
    """Number of words the census examines."""
    if canonical:
        return _completions(n - 1, 0, k)
    return k**n


def estimated_cost(k: int, n: int, canonical: bool = True) -> int:
    """Window operations: every word contributes ``n(n+1)/2`` windows."""
    return word_count(k, n, canonical) * n * (n + 1) // 2


def _prefixes(k: int, length: int, canonical: bool) -> list[tuple[int, ...]]:
    if length == 0:
        return [()]
    if not canonical:
        out = [()]
        for _ in range(length):
            out = [p + (c,) for p in out for c in range(k)]
        return out
    out = [((0,), 0)]
    for _ in range(length - 1):
        out = [(p + (c,), max(top, c)) for p, top in out for c in range(min(k, top + 2))]
    return [p for p, _ in out]


def _shard_size(k: int, n: int, prefix: tuple[int, ...], canonical: bool) -> int:
    rest = n - len(prefix)
    if not canonical:
        return k**rest
    return _completions(rest, max(prefix), k)


def _prefix_length(k: int, n: int, canonical: bool) -> int:
    length = 1 if canonical else 0
    while length < n and word_count(k, n, canonical) > SHARD_TARGET * len(_prefixes(k, length, canonical)):
        length += 1
    return length


@dataclass
class SequenceCensus:
    k: int
    n: int
    count: int
    sequences: list[tuple[int, ...]] | None = None
    witnesses: list[Word] | None = None
    words_examined: int = 0
    elapsed: float = field(default=0.0, compare=False)

    def to_json(self, include_sequences: bool = False) -> dict:
        out: dict = {"k": self.k, "n": self.n, "count": self.count}
        if include_sequences and self.sequences is not None:
            out["sequences"] = [list(s) for s in self.sequences]
        return out


def _run_shard(args) -> dict[bytes, bytes]:
    prefix, n, k, canonical, size = args
    profiles, words, visited = enumerate_shard(np.array(prefix, dtype=np.uint8), n, k, canonical)
    if visited != size:
        raise AssertionError(f"shard {prefix} visited {visited} words, expected {size}")
    return {p.tobytes(): w.tobytes() for p, w in zip(profiles, words)}


def count_sequences(
    k: int,
    n: int,
    retain: bool = False,
    *,
    jobs: int | None = None,
    budget: int = DEFAULT_BUDGET,
    canonical: bool = True,
) -> SequenceCensus:
    """``a_k(n)``: distinct complexity sequences over all words of length ``n`` on ``k`` letters."""
    if k < 2:
        raise DomainError("alphabet size must be >= 2")
    if not 1 <= n <= MAX_LENGTH:
        raise DomainError(f"length must be in [1, {MAX_LENGTH}]")
    if k > 256:
        raise DomainError("alphabets larger than 256 letters are not supported")
    cost = estimated_cost(k, n, canonical)
    if cost > budget:
        raise CapacityError(
            f"a_{k}({n}) needs about {cost:.3g} window operations, over the budget {budget:.3g}"
        )
    jobs = default_jobs() if jobs is None else max(1, jobs)
    started = time.perf_counter()
    plen = _prefix_length(k, n, canonical)
    tasks = [(p, n, k, canonical, _shard_size(k, n, p, canonical)) for p in _prefixes(k, plen, canonical)]
    log.debug("a_%d(%d): %d shards of prefix length %d, %d jobs", k, n, len(tasks), plen, jobs)
    if jobs == 1:
        results = map(_run_shard, tasks)
    else:
        pool = ThreadPoolExecutor(max_workers=jobs)
        results = pool.map(_run_shard, tasks)
    merged: dict[bytes, bytes] = {}
    try:
        for part in results:
            for seq, word in part.items():
                merged.setdefault(seq, word)
    finally:
        if jobs != 1:
            pool.shutdown()
    census = SequenceCensus(
        k=k,
        n=n,
        count=len(merged),
        words_examined=sum(t[-1] for t in tasks),
        elapsed=time.perf_counter() - started,
    )
    if retain:
        keys = sorted(merged)
        census.sequences = [tuple(key) for key in keys]
        census.witnesses = [Word._trusted(tuple(merged[key]), k) for key in keys]
    return census


def list_sequences(k: int, n: int, **kwargs) -> list[tuple[int, ...]]:
    """Distinct complexity sequences in lexicographic order."""
    return count_sequences(k, n, retain=True, **kwargs).sequences


class CensusCache:
    """Memo of ``a_k(n)`` values; cells over budget are recorded as ``None``."""

    def __init__(self, budget: int = DEFAULT_BUDGET, jobs: int | None = None) -> None:
        self.budget = budget
        self.jobs = jobs
        self._values: dict[tuple[int, int], int | None] = {}

    def get(self, k: int, n: int) -> int | None:
        key = (k, n)
        if key not in self._values:
            try:
                self._values[key] = count_sequences(k, n, jobs=self.jobs, budget=self.budget).count
            except CapacityError:
                self._values[key] = None
        return self._values[key]

    def values(self) -> dict[tuple[int, int], int | None]:
        return dict(self._values)


def census_table(k_max: int, n_max: int, cache: CensusCache | None = None) -> dict[int, dict[int, int | None]]:
    """``table[n][k] = a_k(n)`` for ``2 <= k <= k_max`` and ``1 <= n <= n_max``."""
    cache = cache or CensusCache()
    return {n: {k: cache.get(k, n) for k in range(2, k_max + 1)} for n in range(1, n_max + 1)}


@dataclass
class DifferenceTable:
    ks: list[int]
    ns: list[int]
    values: list[list[int | None]]

    def cell(self, n: int, k: int) -> int | None:
        """``a_(k+1)(n) - a_k(n)``."""
        return self.values[self.ns.index(n)][self.ks.index(k)]


def difference_table(k_lo: int, k_hi: int, n_max: int, cache: CensusCache | None = None) -> DifferenceTable:
    """``a_(k+1)(n) - a_k(n)`` for ``k_lo <= k < k_hi``; ``None`` where a census is over budget."""
    if not 2 <= k_lo < k_hi:
        raise DomainError("need 2 <= k_lo < k_hi")
    cache = cache or CensusCache()
    ks = list(range(k_lo, k_hi))
    ns = list(range(1, n_max + 1))
    values = []
    for n in ns:
        row = []
        for k in ks:
            lo, hi = cache.get(k, n), cache.get(k + 1, n)
            row.append(None if lo is None or hi is None else hi - lo)
        values.append(row)
    return DifferenceTable(ks, ns, values)


@dataclass
class ConjectureReport:
    ratios: list[dict]
    shift_checks: list[dict]
    first_failure: dict[int, int | None]
    holds_through: dict[int, int | None]
    observations: list[dict] = field(default_factory=list)


# (label, larger alphabet, smaller alphabet, expected difference, least n), alphabets relative to n
_TOP_DIFFERENCES = (
    ("a_n(n) - a_(n-1)(n)", 0, -1, 1, 3),
    ("a_(n+1)(n) - a_n(n)", 1, 0, 0, 2),
    ("a_(n-2)(n) - a_(n-3)(n)", -2, -3, 2, 5),
    ("a_(n-3)(n) - a_(n-4)(n)", -3, -4, 3, 6),
)


def small_difference_checks(n_max: int, cache: CensusCache | None = None) -> list[dict]:
    """Differences near ``k = n``, where extra letters barely matter; cells over budget are skipped."""
    cache = cache or CensusCache()
    out = []
    for label, hi, lo, expected, n_min in _TOP_DIFFERENCES:
        for n in range(n_min, n_max + 1):
            a_hi, a_lo = cache.get(n + hi, n), cache.get(n + lo, n)
            if a_hi is None or a_lo is None:
                continue
            diff = a_hi - a_lo
            out.append({"identity": label, "n": n, "difference": diff, "expected": expected, "holds": diff == expected})
    return out


def conjecture_report(
    n_max: int,
    k_max: int = 4,
    cache: CensusCache | None = None,
    differences_n_max: int | None = None,
) -> ConjectureReport:
    """Growth ratios ``a_k(n)/2^(n/2)`` and the shifted-difference identity
    ``a_(k+2)(n) - a_(k+1)(n) == a_(k+1)(n-1) - a_k(n-1)``.

    The near-``k = n`` difference checks need large alphabets, so they stop at
    ``differences_n_max`` (default ``min(n_max, 10)``).
    """
    cache = cache or CensusCache()
    ratios = []
    for k in range(2, k_max + 1):
        for n in range(1, n_max + 1):
            a = cache.get(k, n)
            if a is None:
                continue
            scale = 2 ** (n / 2)
            ratios.append(
                {
                    "k": k,
                    "n": n,
                    "a": a,
                    "ratio": a / scale,
                    "log_ratio": a / (math.log2(k) * scale),
                }
            )
    checks = []
    first_failure: dict[int, int | None] = {}
    holds_through: dict[int, int | None] = {}
    for k in range(2, k_max - 1):
        first_failure[k] = None
        holds_through[k] = None
        for n in range(2, n_max + 1):
            cells = [cache.get(k + 2, n), cache.get(k + 1, n), cache.get(k + 1, n - 1), cache.get(k, n - 1)]
            if None in cells:
                break
            lhs, rhs = cells[0] - cells[1], cells[2] - cells[3]
            holds = lhs == rhs
            checks.append({"k": k, "n": n, "lhs": lhs, "rhs": rhs, "holds": holds})
            if holds and first_failure[k] is None:
                holds_through[k] = n
            if not holds and first_failure[k] is None:
                first_failure[k] = n
    if differences_n_max is None:
        differences_n_max = min(n_max, 10)
    observations = small_difference_checks(differences_n_max, cache)
    return ConjectureReport(ratios, checks, first_failure, holds_through, observations)


def to_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if x is None else x for x in row])
    return buf.getvalue()
