"""Finite posets given by their Hasse diagram.

Elements are the integers ``0 .. n-1``.  Order queries go through bitsets
indexed by position in a fixed linear extension, which makes joins and meets
constant-time big-int operations: the lowest set bit of a set of common upper
bounds is a minimal one, and in a lattice it must be the join.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import (
    BudgetExceeded,
    CycleDetected,
    IdOutOfRange,
    IntervalTooLarge,
    InvalidInput,
    NotComparable,
    NotUnique,
    RedundantCover,
)

Cover = tuple[int, int]
Chain = tuple[int, ...]

DEFAULT_CHAIN_BUDGET = 200_000
DEFAULT_EDGE_BUDGET = 5_000_000
DEFAULT_ATOM_LIMIT = 20


def _bits(s: int) -> Iterator[int]:
    while s:
        low = s & -s
        yield low.bit_length() - 1
        s ^= low


class Poset:
    """Immutable finite poset.  Build with :func:`build_poset` or :func:`from_relation`."""

    def __init__(self, n: int, covers: Iterable[Cover]):
        covers = [tuple(c) for c in covers]
        if n < 0:
            raise InvalidInput("element count must be nonnegative")
        for lo, hi in covers:
            if not (0 <= lo < n and 0 <= hi < n):
                raise IdOutOfRange(f"cover {(lo, hi)} outside [0, {n})")
            if lo == hi:
                raise CycleDetected(f"self-loop at {lo}")
        cover_set = frozenset(covers)
        if len(cover_set) != len(covers):
            raise InvalidInput("duplicate cover pairs")

        self.n = n
        self.covers: frozenset[Cover] = cover_set
        up = [[] for _ in range(n)]
        down = [[] for _ in range(n)]
        for lo, hi in cover_set:
            up[lo].append(hi)
            down[hi].append(lo)
        self.upper_covers: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(u)) for u in up)
        self.lower_covers: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(d)) for d in down)

        # Kahn with a min-heap: deterministic linear extension.
        indeg = [len(d) for d in down]
        heap = [i for i in range(n) if indeg[i] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            x = heapq.heappop(heap)
            order.append(x)
            for y in self.upper_covers[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    heapq.heappush(heap, y)
        if len(order) != n:
            raise CycleDetected("cover graph contains a directed cycle")
        self.order: tuple[int, ...] = tuple(order)
        self.pos: tuple[int, ...] = tuple(sorted(range(n), key=order.__getitem__))
        pos = self.pos

        ups = [0] * n
        for x in reversed(order):
            s = 1 << pos[x]
            for y in self.upper_covers[x]:
                s |= ups[y]
            ups[x] = s
        downs = [0] * n
        for x in order:
            s = 1 << pos[x]
            for y in self.lower_covers[x]:
                s |= downs[y]
            downs[x] = s
        self._up = tuple(ups)
        self._down = tuple(downs)

        for x in range(n):
            ucs = self.upper_covers[x]
            for a in ucs:
                for b in ucs:
                    if a != b and self.leq(a, b):
                        raise RedundantCover((x, b))

        self._join_cache: dict[tuple[int, int], int] = {}
        self._meet_cache: dict[tuple[int, int], int] = {}

    # -- order queries -------------------------------------------------
    def leq(self, a: int, b: int) -> bool:
        return bool(self._up[a] >> self.pos[b] & 1)

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq(a, b)

    def covers_pair(self, a: int, b: int) -> bool:
        return (a, b) in self.covers

    def _ids(self, s: int) -> list[int]:
        order = self.order
        return [order[p] for p in _bits(s)]

    def up_set(self, x: int) -> list[int]:
        """Elements ``>= x`` in linear-extension order."""
        return self._ids(self._up[x])

    def down_set(self, x: int) -> list[int]:
        return self._ids(self._down[x])

    def between(self, u: int, v: int) -> list[int]:
        """Members of the closed interval ``[u, v]``, in linear-extension order."""
        return self._ids(self._up[u] & self._down[v])

    def interval_size(self, u: int, v: int) -> int:
        return (self._up[u] & self._down[v]).bit_count()

    def atoms(self, u: int, v: int | None = None) -> tuple[int, ...]:
        """Upper covers of ``u`` lying below ``v`` (all of them if ``v`` is None)."""
        if v is None:
            return self.upper_covers[u]
        return tuple(a for a in self.upper_covers[u] if self.leq(a, v))

    def minimal_elements(self) -> list[int]:
        return [x for x in range(self.n) if not self.lower_covers[x]]

    def maximal_elements(self) -> list[int]:
        return [x for x in range(self.n) if not self.upper_covers[x]]

    @property
    def bottom(self) -> int | None:
        m = self.minimal_elements()
        return m[0] if len(m) == 1 else None

    @property
    def top(self) -> int | None:
        m = self.maximal_elements()
        return m[0] if len(m) == 1 else None

    def comparable_pairs(self, strict: bool = False) -> Iterator[tuple[int, int]]:
        """All ``(u, v)`` with ``u <= v``, sorted by ``u`` then ``v``."""
        for u in range(self.n):
            for v in sorted(self.up_set(u)):
                if strict and u == v:
                    continue
                yield u, v

    def heights(self) -> list[int]:
        """Length of the longest chain from a minimal element up to each element."""
        h = [0] * self.n
        for x in self.order:
            for y in self.upper_covers[x]:
                h[y] = max(h[y], h[x] + 1)
        return h

    # -- lattice operations -------------------------------------------
    def join(self, a: int, b: int) -> int:
        key = (a, b) if a <= b else (b, a)
        try:
            return self._join_cache[key]
        except KeyError:
            pass
        s = self._up[a] & self._up[b]
        if not s:
            raise NotUnique(a, b, "join")
        low = s & -s
        z = self.order[low.bit_length() - 1]
        if self._up[z] & s != s:
            raise NotUnique(a, b, "join")
        self._join_cache[key] = z
        return z

    def meet(self, a: int, b: int) -> int:
        key = (a, b) if a <= b else (b, a)
        try:
            return self._meet_cache[key]
        except KeyError:
            pass
        s = self._down[a] & self._down[b]
        if not s:
            raise NotUnique(a, b, "meet")
        z = self.order[s.bit_length() - 1]
        if self._down[z] & s != s:
            raise NotUnique(a, b, "meet")
        self._meet_cache[key] = z
        return z

    def join_all(self, elements: Iterable[int], start: int | None = None) -> int:
        """Join of a collection; ``start`` is returned for an empty one."""
        it = iter(elements)
        acc = start
        for x in it:
            acc = x if acc is None else self.join(acc, x)
        if acc is None:
            raise InvalidInput("join of an empty collection needs a start element")
        return acc

    def meet_all(self, elements: Iterable[int]) -> int:
        acc = None
        for x in elements:
            acc = x if acc is None else self.meet(acc, x)
        if acc is None:
            raise InvalidInput("meet of an empty collection")
        return acc

    # -- structure -----------------------------------------------------
    def sorted_covers(self) -> list[Cover]:
        return sorted(self.covers)

    def interval(self, u: int, v: int) -> "IntervalView":
        if not self.leq(u, v):
            raise NotComparable(f"{u} is not below {v}")
        return IntervalView(self, u, v, tuple(sorted(self.between(u, v))))

    def induced(self, members: Sequence[int]) -> tuple["Poset", list[int]]:
        """Subposet on ``members`` (any subset) with ids renumbered in the given order.

        Returns the subposet and the list mapping new ids to old ids.
        """
        members = list(members)
        rel = [[self.leq(a, b) for b in members] for a in members]
        sub = from_relation(len(members), lambda i, j: rel[i][j])
        return sub, members

    def __eq__(self, other):
        return isinstance(other, Poset) and self.n == other.n and self.covers == other.covers

    def __hash__(self):
        return hash((self.n, self.covers))

    def __repr__(self):
        return f"Poset(n={self.n}, covers={len(self.covers)})"


@dataclass(frozen=True)
class IntervalView:
    parent: Poset
    bottom: int
    top: int
    members: tuple[int, ...] = field(default=())

    def covers(self) -> list[Cover]:
        mem = set(self.members)
        return sorted(c for c in self.parent.covers if c[0] in mem and c[1] in mem)

    def to_poset(self) -> tuple[Poset, list[int]]:
        """Closed intervals are convex, so parent covers restrict to covers."""
        members = sorted(self.members)
        index = {x: i for i, x in enumerate(members)}
        sub = Poset(len(members), [(index[a], index[b]) for a, b in self.covers()])
        return sub, members

    def open_members(self) -> tuple[int, ...]:
        return tuple(x for x in self.members if x != self.bottom and x != self.top)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: tuple | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def build_poset(element_count: int, covers: Iterable[Cover]) -> Poset:
    return Poset(element_count, covers)


def from_relation(n: int, leq) -> Poset:
    """Hasse reduction of an order given as a predicate ``leq(i, j)``.

    ``leq`` must be reflexive, antisymmetric and transitive; this is not
    rechecked.
    """
    strict_up = [0] * n
    strict_down = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and leq(i, j):
                strict_up[i] |= 1 << j
                strict_down[j] |= 1 << i
    covers = []
    for i in range(n):
        for j in _bits(strict_up[i]):
            if not (strict_up[i] & strict_down[j]):
                covers.append((i, j))
    return Poset(n, covers)


def meet_join(p: Poset, a: int, b: int, mode: str) -> int:
    if mode == "join":
        return p.join(a, b)
    if mode == "meet":
        return p.meet(a, b)
    raise InvalidInput(f"mode must be 'meet' or 'join', not {mode!r}")


def is_lattice(p: Poset) -> Verdict:
    for a in range(p.n):
        for b in range(a + 1, p.n):
            for mode in ("join", "meet"):
                try:
                    meet_join(p, a, b, mode)
                except NotUnique:
                    return Verdict(False, (a, b, mode))
    return Verdict(True)


def atom_near_lattice_check(p: Poset, max_atoms: int = DEFAULT_ATOM_LIMIT) -> Verdict:
    """Every set of atoms of every closed interval has a least upper bound inside it."""
    if p.bottom is None or p.top is None:
        return Verdict(False, None, "no unique minimum and maximum")
    for u, v in p.comparable_pairs(strict=True):
        atoms = p.atoms(u, v)
        if len(atoms) > max_atoms:
            raise IntervalTooLarge(f"interval [{u},{v}] has {len(atoms)} atoms", len(atoms))
        inside = p._down[v]
        for r in range(2, len(atoms) + 1):
            for subset in combinations(atoms, r):
                ub = inside
                for a in subset:
                    ub &= p._up[a]
                low = ub & -ub
                z = p.order[low.bit_length() - 1]
                if p._up[z] & ub != ub:
                    return Verdict(False, (u, v) + subset, "atoms without a least upper bound")
    return Verdict(True)


# -- Möbius function ----------------------------------------------------
def mobius(p: Poset, u: int, v: int) -> int:
    """Single value by the defining recursion ``mu(u,v) = -sum_{u<=x<v} mu(u,x)``."""
    if not p.leq(u, v):
        raise NotComparable(f"{u} is not below {v}")
    memo: dict[int, int] = {u: 1}
    # Evaluating in linear-extension order keeps the recursion iterative.
    for x in p.between(u, v):
        if x == u:
            continue
        memo[x] = -sum(memo[y] for y in p.between(u, x) if y != x)
    return memo[v]


def mobius_row(p: Poset, u: int) -> dict[int, int]:
    """``mu(u, x)`` for every ``x >= u``."""
    row = {u: 1}
    up_u = p._up[u]
    order = p.order
    for x in p.up_set(u):
        if x == u:
            continue
        total = 0
        # strict lower part of [u, x]
        for q in _bits(up_u & p._down[x] & ~(1 << p.pos[x])):
            total += row[order[q]]
        row[x] = -total
    return row


def mobius_table(p: Poset) -> dict[tuple[int, int], int]:
    """All comparable pairs, keyed ``(u, v)``."""
    table = {}
    for u in range(p.n):
        for v, m in mobius_row(p, u).items():
            table[(u, v)] = m
    return table


# -- chains ---------------------------------------------------------------
def iter_saturated_chains(p: Poset, u: int, v: int) -> Iterator[Chain]:
    if not p.leq(u, v):
        raise NotComparable(f"{u} is not below {v}")
    target = p._down[v]
    pos = p.pos
    path = [u]

    def rec(x):
        if x == v:
            yield tuple(path)
            return
        for y in p.upper_covers[x]:
            if target >> pos[y] & 1:
                path.append(y)
                yield from rec(y)
                path.pop()

    yield from rec(u)


def saturated_chains(p: Poset, u: int, v: int, budget: int = DEFAULT_CHAIN_BUDGET) -> list[Chain]:
    out = []
    for chain in iter_saturated_chains(p, u, v):
        if len(out) >= budget:
            raise BudgetExceeded(f"more than {budget} saturated chains in [{u},{v}]", len(out))
        out.append(chain)
    return out


def chain_count(p: Poset, u: int, v: int) -> int:
    counts, _ = _chain_dp(p, u, v)
    return counts[v]


def _chain_dp(p: Poset, u: int, v: int):
    if not p.leq(u, v):
        raise NotComparable(f"{u} is not below {v}")
    counts = {u: 1}
    lengths = {u: 0}
    up_u = p._up[u]
    for x in p.between(u, v):
        if x == u:
            continue
        n = s = 0
        for y in p.lower_covers[x]:
            if up_u >> p.pos[y] & 1:
                n += counts[y]
                s += lengths[y] + counts[y]
        counts[x], lengths[x] = n, s
    return counts, lengths


def total_length(p: Poset, u: int, v: int) -> int:
    """Sum of the lengths of all saturated chains of ``[u, v]``.

    Counted by dynamic programming over the interval; no chain is materialised.
    """
    _, lengths = _chain_dp(p, u, v)
    return lengths[v]


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.components = n

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra
            self.components -= 1


def basic_move_graph_components(
    p: Poset,
    u: int,
    v: int,
    chain_budget: int = DEFAULT_CHAIN_BUDGET,
    edge_budget: int = DEFAULT_EDGE_BUDGET,
) -> tuple[list[Chain], list[int], int]:
    """Chains of ``[u, v]``, a component id per chain and the basic-move edge count.

    Two chains differ by a basic move when they share a prefix ending at
    ``x`` and a suffix starting at ``y``, step from ``x`` to distinct covers
    ``a`` and ``b``, and ``y`` is ``a`` join ``b``.
    """
    chains = saturated_chains(p, u, v, chain_budget)
    uf = _UnionFind(len(chains))
    groups: dict[tuple[Chain, Chain], dict[int, list[int]]] = defaultdict(lambda: defaultdict(list))
    for idx, c in enumerate(chains):
        for i in range(len(c) - 2):
            for j in range(i + 2, len(c)):
                groups[(c[: i + 1], c[j:])][c[i + 1]].append(idx)
    edges = 0
    for (prefix, suffix), buckets in groups.items():
        if len(buckets) < 2:
            continue
        y = suffix[0]
        firsts = sorted(buckets)
        for a, b in combinations(firsts, 2):
            if p.join(a, b) != y:
                continue
            edges += len(buckets[a]) * len(buckets[b])
            if edges > edge_budget:
                raise BudgetExceeded(f"basic-move graph of [{u},{v}] exceeds {edge_budget} edges", edges)
            anchor = buckets[a][0]
            for idx in buckets[a] + buckets[b]:
                uf.union(anchor, idx)
    comp = [uf.find(i) for i in range(len(chains))]
    return chains, comp, edges


def basic_move_connectivity(
    p: Poset,
    u: int,
    v: int,
    chain_budget: int = DEFAULT_CHAIN_BUDGET,
    edge_budget: int = DEFAULT_EDGE_BUDGET,
) -> Verdict:
    chains, comp, edges = basic_move_graph_components(p, u, v, chain_budget, edge_budget)
    k = len(set(comp))
    if k <= 1:
        return Verdict(True, None, f"{len(chains)} chains, {edges} edges")
    first = chains[0]
    other = next(chains[i] for i, c in enumerate(comp) if c != comp[0])
    return Verdict(False, (first, other), f"{k} components over {len(chains)} chains")


def dual(p: Poset) -> Poset:
    return Poset(p.n, [(b, a) for a, b in p.covers])
