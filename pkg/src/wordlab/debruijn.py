"""De Bruijn graphs, their Eulerian and Hamiltonian tours, and de Bruijn words of any length.

Vertices of ``B_k(n)`` are length-``n`` words and edges are length-``n+1``
words.  Internally both are integer codes in base ``k`` with the first letter
most significant, so integer order equals lexicographic order and an edge code
``e`` runs from ``e // k`` to ``e % k**n``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .complexity import SuffixAutomaton
from .errors import CapacityError, DomainError
from .words import Word

MAX_EDGES = 1 << 26


def _decode(code: int, length: int, k: int) -> tuple[int, ...]:
    out = [0] * length
    for i in range(length - 1, -1, -1):
        code, out[i] = divmod(code, k)
    return tuple(out)


def _check_capacity(k: int, n: int) -> None:
    if k < 2:
        raise DomainError("de Bruijn graphs need an alphabet of size >= 2")
    if n < 1:
        raise DomainError("graph order must be >= 1")
    if k ** (n + 1) > MAX_EDGES:
        raise CapacityError(f"B_{k}({n}) has {k ** (n + 1)} edges, over the bound {MAX_EDGES}")


@dataclass(frozen=True)
class DeBruijnGraph:
    """``B_k(n)``: an edge ``x0..xn`` runs from ``x0..x(n-1)`` to ``x1..xn``."""

    k: int
    n: int

    @property
    def num_vertices(self) -> int:
        return self.k**self.n

    @property
    def num_edges(self) -> int:
        return self.k ** (self.n + 1)

    def vertex(self, code: int) -> Word:
        return Word._trusted(_decode(code, self.n, self.k), self.k)

    def edge(self, code: int) -> Word:
        return Word._trusted(_decode(code, self.n + 1, self.k), self.k)

    def vertices(self) -> list[Word]:
        return [self.vertex(v) for v in range(self.num_vertices)]

    def edges(self) -> list[Word]:
        return [self.edge(e) for e in range(self.num_edges)]

    def source(self, e: int) -> int:
        return e // self.k

    def target(self, e: int) -> int:
        return e % self.num_vertices

    def out_edges(self, v: int) -> range:
        return range(v * self.k, (v + 1) * self.k)

    def in_edges(self, v: int) -> list[int]:
        return [c * self.num_vertices + v for c in range(self.k)]

    def out_degree(self, v: int) -> int:
        return len(self.out_edges(v))

    def in_degree(self, v: int) -> int:
        return len(self.in_edges(v))

    def symmetrization_connected(self) -> bool:
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for e in self.out_edges(v):
                u = self.target(e)
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
            for e in self.in_edges(v):
                u = self.source(e)
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        return len(seen) == self.num_vertices

    def to_dot(self) -> str:
        lines = [f'digraph "B_{self.k}({self.n})" {{']
        for v in range(self.num_vertices):
            lines.append(f'  "{self.vertex(v)}";')
        for e in range(self.num_edges):
            lines.append(
                f'  "{self.vertex(self.source(e))}" -> "{self.vertex(self.target(e))}" [label="{self.edge(e)}"];'
            )
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_graph(k: int, n: int) -> DeBruijnGraph:
    _check_capacity(k, n)
    return DeBruijnGraph(k, n)


@dataclass(frozen=True)
class Tour:
    """A walk in ``B_k(n)`` with pairwise distinct edges, stored as edge codes."""

    k: int
    n: int
    codes: tuple[int, ...]
    closed: bool

    @property
    def graph(self) -> DeBruijnGraph:
        return DeBruijnGraph(self.k, self.n)

    @property
    def edges(self) -> tuple[Word, ...]:
        g = self.graph
        return tuple(g.edge(e) for e in self.codes)

    @property
    def vertex_codes(self) -> tuple[int, ...]:
        """Sources of every edge, then the final target."""
        g = self.graph
        if not self.codes:
            return ()
        return tuple(g.source(e) for e in self.codes) + (g.target(self.codes[-1]),)

    def __len__(self) -> int:
        return len(self.codes)

    def to_word(self) -> Word:
        return tour_word(self.k, self.n, self.codes)


def tour_word(k: int, n: int, codes: Sequence[int]) -> Word:
    """The word spelled by a walk: first vertex, then each edge's last letter."""
    if not codes:
        raise DomainError("an empty walk has no start vertex")
    start = _decode(codes[0] // k, n, k)
    return Word._trusted(start + tuple(e % k for e in codes), k)


def word_walk(w: Word, n: int) -> list[Word]:
    """The edges of ``B_k(n)`` traversed by ``w``: its sliding windows of length ``n+1``."""
    if len(w) < n + 1:
        raise DomainError(f"a word of length {len(w)} traverses no edge of B_k({n})")
    return [w[i : i + n + 1] for i in range(len(w) - n)]


def _hierholzer(start: int, adjacency: dict[int, list[int]], target) -> list[int]:
    # adjacency lists are consumed in ascending order, making circuits reproducible
    ptr = dict.fromkeys(adjacency, 0)
    stack: list[tuple[int, int | None]] = [(start, None)]
    circuit: list[int] = []
    while stack:
        v, via = stack[-1]
        out = adjacency.get(v, ())
        i = ptr.get(v, 0)
        if i < len(out):
            ptr[v] = i + 1
            e = out[i]
            stack.append((target(e), e))
        else:
            stack.pop()
            if via is not None:
                circuit.append(via)
    circuit.reverse()
    return circuit


def eulerian_circuit(g: DeBruijnGraph) -> Tour:
    """Closed tour through every edge of ``g`` once, starting at ``0^n``."""
    _check_capacity(g.k, g.n)
    adjacency = {v: list(g.out_edges(v)) for v in range(g.num_vertices)}
    codes = _hierholzer(0, adjacency, g.target)
    return Tour(g.k, g.n, tuple(codes), closed=True)


def hamiltonian_cycle(k: int, n: int) -> Tour:
    """Closed tour visiting every vertex of ``B_k(n)`` once.

    Order 1 uses the cycle ``0 -> 1 -> ... -> k-1 -> 0``; higher orders read
    consecutive edges of an Eulerian circuit of ``B_k(n-1)`` as the edges of
    its line graph ``B_k(n)``.
    """
    _check_capacity(k, n)
    if n == 1:
        return Tour(k, 1, tuple(i * k + (i + 1) % k for i in range(k)), closed=True)
    lower = eulerian_circuit(DeBruijnGraph(k, n - 1)).codes
    m = len(lower)
    codes = tuple(lower[i] * k + lower[(i + 1) % m] % k for i in range(m))
    return Tour(k, n, codes, closed=True)


def _order_for_length(k: int, length: int) -> int:
    """Largest ``n >= 1`` with ``k**n + n - 1 <= length`` (requires ``length >= k``)."""
    n = 1
    while k ** (n + 1) + n <= length:
        n += 1
    return n


def _components(g: DeBruijnGraph, removed: set[int]) -> list[tuple[int, dict[int, list[int]], int]]:
    """Weak components of ``g`` minus ``removed``: (anchor, adjacency, edge count), by anchor."""
    adjacency = {v: [e for e in g.out_edges(v) if e not in removed] for v in range(g.num_vertices)}
    comp = [-1] * g.num_vertices
    found = []
    for v0 in range(g.num_vertices):
        if comp[v0] != -1 or not adjacency[v0]:
            continue
        cid = len(found)
        comp[v0] = cid
        members = [v0]
        queue = deque([v0])
        while queue:
            v = queue.popleft()
            neighbours = [g.target(e) for e in adjacency[v]]
            neighbours += [g.source(e) for e in g.in_edges(v) if e not in removed]
            for u in neighbours:
                if comp[u] == -1:
                    comp[u] = cid
                    members.append(u)
                    queue.append(u)
        sub = {v: adjacency[v] for v in sorted(members)}
        found.append((v0, sub, sum(len(x) for x in sub.values())))
    return found


def de_bruijn_word(k: int, length: int) -> Word:
    """A word of the given length over ``k`` letters with maximal complexity at every length."""
    if k < 2:
        raise DomainError("alphabet size must be >= 2")
    if length < 1:
        raise DomainError("length must be >= 1")
    if length < k:
        return Word._trusted(tuple(range(length)), k)
    n = _order_for_length(k, length)
    _check_capacity(k, n)
    g = DeBruijnGraph(k, n)
    cycle = hamiltonian_cycle(k, n).codes
    if k**n + n - 1 == length:
        # drop the largest edge; the path runs from its target round to its source
        cut = cycle.index(max(cycle))
        return tour_word(k, n, cycle[cut + 1 :] + cycle[:cut])

    extra = length - k**n - n  # edges still needed beyond the Hamiltonian cycle
    comps = _components(g, set(cycle))
    circuits = []
    total = 0
    for anchor, adjacency, m in comps:
        circuits.append((anchor, _hierholzer(anchor, adjacency, g.target)))
        total += m
        if total >= extra:
            break
    *full, (anchor_r, partial) = circuits
    splice = dict(full)
    taken = extra - sum(len(c) for _, c in full)

    # rotate the cycle to leave from the last anchor
    start = next(i for i, e in enumerate(cycle) if g.source(e) == anchor_r)
    rotated = cycle[start:] + cycle[:start]
    tour: list[int] = []
    for e in rotated:
        v = g.source(e)
        if v in splice:
            tour.extend(splice[v])
        tour.append(e)
    tour.extend(partial[:taken])
    if len(tour) != length - n:
        raise AssertionError("tour length mismatch")
    return tour_word(k, n, tour)


def maximal_profile(k: int, length: int) -> list[int]:
    """``min(k**n, N-n+1)`` for ``n = 1..N``."""
    out = []
    for n in range(1, length + 1):
        cap = length - n + 1
        out.append(cap if n > 64 else min(k**n, cap))
    return out


def is_de_bruijn(w: Word) -> bool:
    if len(w) == 0:
        raise DomainError("de Bruijn words are nonempty")
    return SuffixAutomaton(w).counts() == maximal_profile(w.k, len(w))
