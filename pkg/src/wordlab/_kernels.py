"""Compiled inner loops: suffix-automaton construction and the complexity-sequence census.

Appending letter ``j`` to a word adds exactly the new subwords with lengths in
``(L_j, j+1]``, where ``L_j`` is the longest suffix of ``w[0..j]`` that already
ended at an earlier position.  ``L_j`` depends on the prefix only, so the
lexicographic odometer over words recomputes it just for the positions that
changed, and a profile is the coverage count of those intervals.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_FNV_OFFSET = np.uint64(14695981039346656037)
_FNV_PRIME = np.uint64(1099511628211)


@njit(cache=True, nogil=True)
def suffix_automaton(letters, k):
    """Online suffix automaton; returns (link, length, firstpos, transitions, size, last)."""
    cap = 2 * len(letters) + 1
    link = np.full(cap, -1, dtype=np.int64)
    length = np.zeros(cap, dtype=np.int64)
    firstpos = np.full(cap, -1, dtype=np.int64)
    nxt = np.full((k, cap), -1, dtype=np.int64)
    size, last = 1, 0
    for pos in range(len(letters)):
        c = letters[pos]
        cur = size
        size += 1
        length[cur] = length[last] + 1
        firstpos[cur] = pos
        p = last
        while p != -1 and nxt[c, p] == -1:
            nxt[c, p] = cur
            p = link[p]
        if p == -1:
            link[cur] = 0
        else:
            q = nxt[c, p]
            if length[p] + 1 == length[q]:
                link[cur] = q
            else:
                clone = size
                size += 1
                length[clone] = length[p] + 1
                firstpos[clone] = firstpos[q]
                for a in range(k):
                    nxt[a, clone] = nxt[a, q]
                link[clone] = link[q]
                while p != -1 and nxt[c, p] == q:
                    nxt[c, p] = clone
                    p = link[p]
                link[q] = clone
                link[cur] = clone
        last = cur
    return link[:size], length[:size], firstpos[:size], nxt[:, :size], size, last


@njit(cache=True, nogil=True)
def repeat_length(w, j, bound):
    """Longest suffix of ``w[0..j]`` also ending before ``j``, capped at ``bound``."""
    best = 0
    for e in range(j - 1, -1, -1):
        t = 0
        while t <= e and w[e - t] == w[j - t]:
            t += 1
        if t > best:
            best = t
            if best >= bound:
                return bound
    return best


@njit(cache=True, nogil=True)
def profile_from_repeats(reps, n, diff, out):
    """``out[m-1] = #{j : reps[j] < m <= j+1}`` for ``m = 1..n``."""
    for m in range(n + 2):
        diff[m] = 0
    for j in range(n):
        diff[reps[j] + 1] += 1
        diff[j + 2] -= 1
    run = 0
    for m in range(1, n + 1):
        run += diff[m]
        out[m - 1] = run


@njit(cache=True, nogil=True)
def profiles_of(words):
    """Profiles of each row of a 2-d letter array."""
    count, n = words.shape
    out = np.empty((count, n), dtype=np.uint8)
    reps = np.zeros(n, dtype=np.int64)
    diff = np.zeros(n + 2, dtype=np.int64)
    for r in range(count):
        w = words[r]
        for j in range(n):
            reps[j] = repeat_length(w, j, reps[j - 1] + 1 if j > 0 else 0)
        profile_from_repeats(reps, n, diff, out[r])
    return out


@njit(cache=True, nogil=True)
def _row_hash(row, n):
    h = _FNV_OFFSET
    for i in range(n):
        h = (h ^ np.uint64(row[i])) * _FNV_PRIME
    return h


@njit(cache=True, nogil=True)
def _rows_equal(a, b, n):
    for i in range(n):
        if a[i] != b[i]:
            return False
    return True


@njit(cache=True, nogil=True)
def enumerate_shard(prefix, n, k, canonical):
    """Distinct profiles over every completion of ``prefix`` to length ``n``.

    With ``canonical`` set, completions are restricted to words whose letters
    first appear in increasing order.  Returns the distinct profiles, the first
    (lexicographically least) word producing each, and the number of words
    visited.
    """
    cap = 1024
    uniq = np.empty((cap, n), dtype=np.uint8)
    wits = np.empty((cap, n), dtype=np.uint8)
    hashes = np.empty(cap, dtype=np.uint64)
    slots = np.full(2 * cap, -1, dtype=np.int64)
    used = 0

    w = np.zeros(n, dtype=np.uint8)
    mx = np.zeros(n, dtype=np.int64)
    reps = np.zeros(n, dtype=np.int64)
    diff = np.zeros(n + 2, dtype=np.int64)
    prof = np.empty(n, dtype=np.uint8)
    plen = prefix.shape[0]
    for i in range(plen):
        w[i] = prefix[i]
    run = 0
    for i in range(n):
        if w[i] > run:
            run = w[i]
        mx[i] = run
    dirty = 0  # first position whose repeat length is stale
    visited = 0
    while True:
        for j in range(dirty, n):
            reps[j] = repeat_length(w, j, reps[j - 1] + 1 if j > 0 else 0)
        profile_from_repeats(reps, n, diff, prof)
        visited += 1

        h = _row_hash(prof, n)
        mask = slots.shape[0] - 1
        s = np.int64(h & np.uint64(mask))
        found = False
        while slots[s] != -1:
            idx = slots[s]
            if hashes[idx] == h and _rows_equal(uniq[idx], prof, n):
                found = True
                break
            s = (s + 1) & mask
        if not found:
            if used == cap:
                cap *= 2
                grown = np.empty((cap, n), dtype=np.uint8)
                grown[:used] = uniq[:used]
                uniq = grown
                grown = np.empty((cap, n), dtype=np.uint8)
                grown[:used] = wits[:used]
                wits = grown
                gh = np.empty(cap, dtype=np.uint64)
                gh[:used] = hashes[:used]
                hashes = gh
                slots = np.full(2 * cap, -1, dtype=np.int64)
                mask = slots.shape[0] - 1
                for idx in range(used):
                    t = np.int64(hashes[idx] & np.uint64(mask))
                    while slots[t] != -1:
                        t = (t + 1) & mask
                    slots[t] = idx
                s = np.int64(h & np.uint64(mask))
                while slots[s] != -1:
                    s = (s + 1) & mask
            uniq[used] = prof
            wits[used] = w
            hashes[used] = h
            slots[s] = used
            used += 1

        # advance the odometer over positions plen..n-1
        i = n - 1
        while i >= plen:
            if canonical and i > 0:
                lim = min(k - 1, mx[i - 1] + 1)
            else:
                lim = k - 1
            if w[i] < lim:
                break
            i -= 1
        if i < plen:
            break
        w[i] += 1
        prev = mx[i - 1] if i > 0 else 0
        mx[i] = prev if prev > w[i] else w[i]
        for j in range(i + 1, n):
            w[j] = 0
            mx[j] = mx[j - 1]
        dirty = i
    return uniq[:used].copy(), wits[:used].copy(), visited
