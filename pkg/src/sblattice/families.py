"""Generators for the labeled lattice families and the dominance order."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterator, Sequence, Union

from .errors import (
    IdealCountExceeded,
    IntervalTooLarge,
    InvalidInput,
    ParamTooLarge,
    UnsupportedType,
)
from .labeling import EdgeLabeling, LabeledLattice
from .poset import IntervalView, Poset, from_relation

MAX_IDEALS = 100_000
MAX_YOUNG = 100_000


# -- distributive lattices ---------------------------------------------
def _order_ideals(p: Poset, limit: int = MAX_IDEALS) -> list[int]:
    """Order ideals of ``p`` as bitmasks over element ids."""
    strict_below = [0] * p.n
    for x in range(p.n):
        for y in p.down_set(x):
            if y != x:
                strict_below[x] |= 1 << y
    seen = {0}
    queue = deque([0])
    while queue:
        ideal = queue.popleft()
        for x in range(p.n):
            if not ideal >> x & 1 and strict_below[x] & ~ideal == 0:
                nxt = ideal | 1 << x
                if nxt not in seen:
                    if len(seen) >= limit:
                        raise IdealCountExceeded(f"more than {limit} order ideals", len(seen))
                    seen.add(nxt)
                    queue.append(nxt)
    return sorted(seen, key=lambda s: (s.bit_count(), s))


def _set_string(mask: int, names: Sequence[str] | None = None) -> str:
    items = [i for i in range(mask.bit_length()) if mask >> i & 1]
    if names is not None:
        return "{" + ",".join(names[i] for i in items) + "}"
    return "{" + ",".join(str(i) for i in items) + "}"


def distributive_from_poset(p: Poset, limit: int = MAX_IDEALS) -> LabeledLattice:
    """J(P): order ideals of ``p`` under inclusion, each cover labeled by the element it adds."""
    ideals = _order_ideals(p, limit)
    index = {s: i for i, s in enumerate(ideals)}
    covers, labels = [], {}
    for s, i in index.items():
        for x in range(p.n):
            t = s | 1 << x
            if t != s and t in index:
                covers.append((i, index[t]))
                labels[(i, index[t])] = x
    lattice = Poset(len(ideals), covers)
    labeling = EdgeLabeling(labels, {x: str(x) for x in range(p.n)})
    payloads = tuple(_set_string(s) for s in ideals)
    data = tuple(frozenset(i for i in range(p.n) if s >> i & 1) for s in ideals)
    return LabeledLattice(lattice, labeling, payloads, f"jp:{p.n}", data)


def antichain(n: int) -> Poset:
    return Poset(n, [])


def chain_poset(n: int) -> Poset:
    return Poset(n, [(i, i + 1) for i in range(n - 1)])


def boolean(n: int) -> LabeledLattice:
    lat = distributive_from_poset(antichain(n))
    return lat.retagged(f"boolean:{n}")


def labeled_posets(k: int) -> Iterator[Poset]:
    """Every partial order on the labeled set ``0..k-1`` (219 of them for k = 4)."""
    pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
    for mask in range(1 << len(pairs)):
        rel = {pairs[t] for t in range(len(pairs)) if mask >> t & 1}
        ok = True
        for a, b in rel:
            if (b, a) in rel:
                ok = False
                break
            for c in range(k):
                if (b, c) in rel and c != a and (a, c) not in rel:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield from_relation(k, lambda i, j: i == j or (i, j) in rel)


def random_poset(k: int, seed: int, density: float = 0.3) -> Poset:
    """Random order on ``k`` elements: transitive closure of a random DAG on ``0..k-1``."""
    rng = random.Random(seed)
    edges = {(i, j) for i, j in combinations(range(k), 2) if rng.random() < density}
    reach = [[i == j for j in range(k)] for i in range(k)]
    for i, j in edges:
        reach[i][j] = True
    for m in range(k):
        for i in range(k):
            if reach[i][m]:
                for j in range(k):
                    if reach[m][j]:
                        reach[i][j] = True
    return from_relation(k, lambda i, j: reach[i][j])


# -- partitions and Young's lattice ---------------------------------------
@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(x <= 0 for x in parts):
            raise InvalidInput(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidInput(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def contains(self, other: "Partition") -> bool:
        """Young-diagram containment ``other ⊆ self``."""
        if len(other.parts) > len(self.parts):
            return False
        return all(a <= b for a, b in zip(other.parts, self.parts))

    def partial_sums(self, length: int) -> list[int]:
        out, acc = [], 0
        for i in range(length):
            acc += self.parts[i] if i < len(self.parts) else 0
            out.append(acc)
        return out

    def dominated_by(self, other: "Partition") -> bool:
        k = max(len(self.parts), len(other.parts))
        return all(a <= b for a, b in zip(self.partial_sums(k), other.partial_sums(k)))

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip().strip("()")
        if text in ("", "0", "∅", "empty"):
            return cls(())
        return cls(tuple(int(t) for t in text.split(",") if t.strip()))


def partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in increasing lexicographic order of their parts."""
    out = []

    def rec(remaining, cap, prefix):
        if remaining == 0:
            out.append(Partition(tuple(prefix)))
            return
        for part in range(min(remaining, cap), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n, [])
    out.sort(key=lambda p: p.parts)
    return out


def cell_label(row: int, col: int) -> int:
    """Cantor pairing of a 0-indexed cell."""
    return (row + col) * (row + col + 1) // 2 + col


def young_interval(mu: Partition, lam: Partition, limit: int = MAX_YOUNG) -> LabeledLattice:
    if not lam.contains(mu):
        raise InvalidInput(f"{mu} is not contained in {lam}")
    seen = {mu.parts}
    queue = deque([mu.parts])
    while queue:
        parts = queue.popleft()
        for nxt, _ in _add_box(parts, lam.parts):
            if nxt not in seen:
                if len(seen) >= limit:
                    raise IntervalTooLarge(f"more than {limit} partitions between {mu} and {lam}", len(seen))
                seen.add(nxt)
                queue.append(nxt)
    elems = sorted(seen, key=lambda p: (sum(p), p))
    index = {p: i for i, p in enumerate(elems)}
    covers, labels, names = [], {}, {}
    for p in elems:
        for nxt, (r, c) in _add_box(p, lam.parts):
            e = (index[p], index[nxt])
            covers.append(e)
            labels[e] = cell_label(r, c)
            names[cell_label(r, c)] = f"({r + 1},{c + 1})"
    data = tuple(Partition(p) for p in elems)
    return LabeledLattice(
        Poset(len(elems), covers),
        EdgeLabeling(labels, names),
        tuple(str(x) for x in data),
        f"young:{mu}/{lam}",
        data,
    )


def _add_box(parts: tuple[int, ...], bound: tuple[int, ...]):
    """Partitions inside ``bound`` obtained by adding one box, with the 0-indexed cell."""
    for r in range(len(bound)):
        if r > len(parts):
            break
        cur = parts[r] if r < len(parts) else 0
        if cur >= bound[r] or (r > 0 and parts[r - 1] <= cur):
            continue
        new = list(parts) + ([0] if r == len(parts) else [])
        new[r] += 1
        yield tuple(new), (r, cur)


# -- weak order of finite Coxeter groups -------------------------------
Perm = tuple[int, ...]


def _compose(a: Perm, b: Perm) -> Perm:
    """``(a ∘ b)(x) = a(b(x))``."""
    return tuple(a[x] for x in b)


def _inverse(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


@dataclass(frozen=True)
class CoxeterFamily:
    """A finite Coxeter group as a permutation group on ``range(degree)``.

    ``generators[k]`` realises the simple reflection with label ``k + 1``.
    Group elements are permutation tuples and act on the left.
    """

    kind: str
    rank_param: int
    generators: tuple[Perm, ...]

    @property
    def tag(self) -> str:
        return f"weak:{self.kind}:{self.rank_param}"

    @property
    def identity(self) -> Perm:
        return tuple(range(len(self.generators[0]))) if self.generators else ()

    @cached_property
    def lengths(self) -> dict[Perm, int]:
        """Word length of every element, by breadth-first search in the Cayley graph."""
        dist = {self.identity: 0}
        queue = deque([self.identity])
        while queue:
            w = queue.popleft()
            for s in self.generators:
                x = _compose(s, w)
                if x not in dist:
                    dist[x] = dist[w] + 1
                    queue.append(x)
        return dist

    def multiply(self, a: Perm, b: Perm) -> Perm:
        return _compose(a, b)

    def inverse(self, a: Perm) -> Perm:
        return _inverse(a)

    def left_descents(self, w: Perm) -> list[int]:
        """Labels ``i`` with ``l(s_i w) < l(w)``."""
        lw = self.lengths[w]
        return [k + 1 for k, s in enumerate(self.generators) if self.lengths[_compose(s, w)] < lw]

    def reduced_word(self, w: Perm) -> tuple[int, ...]:
        """Lexicographically smallest reduced word ``(i1, ..., ik)`` with ``w = s_i1 ... s_ik``."""
        word = []
        while self.lengths[w] > 0:
            i = self.left_descents(w)[0]
            word.append(i)
            w = _compose(self.generators[i - 1], w)
        return tuple(word)

    def parabolic(self, labels: Sequence[int]) -> set[Perm]:
        """Subgroup generated by the simple reflections with the given labels."""
        gens = [self.generators[i - 1] for i in labels]
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            w = queue.popleft()
            for s in gens:
                x = _compose(s, w)
                if x not in seen:
                    seen.add(x)
                    queue.append(x)
        return seen

    def coxeter_m(self, i: int, j: int) -> int:
        """Order of ``s_i s_j``."""
        if i == j:
            return 1
        g = _compose(self.generators[i - 1], self.generators[j - 1])
        x, k = g, 1
        while x != self.identity:
            x = _compose(g, x)
            k += 1
        return k


def symmetric(n: int) -> CoxeterFamily:
    """S_n on values ``0..n-1``; ``s_i`` swaps the values ``i-1`` and ``i``."""
    if n < 1:
        raise InvalidInput("symmetric group needs n >= 1")
    if n > 6:
        raise ParamTooLarge(f"symmetric({n}) exceeds n <= 6")
    gens = []
    for i in range(1, n):
        g = list(range(n))
        g[i - 1], g[i] = g[i], g[i - 1]
        gens.append(tuple(g))
    return CoxeterFamily("sym", n, tuple(gens))


def dihedral(m: int) -> CoxeterFamily:
    """I_2(m) acting on Z/2m: ``s_1: x -> -x`` and ``s_2: x -> 2 - x``.

    ``s_1 s_2`` is translation by ``-2``, of order ``m``; the action is faithful
    for every ``m >= 2``.
    """
    if m < 2:
        raise InvalidInput("dihedral group needs m >= 2")
    if m > 50:
        raise ParamTooLarge(f"dihedral({m}) exceeds m <= 50")
    k = 2 * m
    s1 = tuple((-x) % k for x in range(k))
    s2 = tuple((2 - x) % k for x in range(k))
    return CoxeterFamily("dih", m, (s1, s2))


def coxeter_family(kind: str, param: int) -> CoxeterFamily:
    if kind == "sym":
        return symmetric(param)
    if kind == "dih":
        return dihedral(param)
    raise UnsupportedType(f"Coxeter type {kind!r} is not implemented (only sym and dih)")


def word_string(word: Sequence[int]) -> str:
    return "".join(f"s{i}" for i in word) if word else "e"


def weak_order(family: CoxeterFamily) -> LabeledLattice:
    """Covers ``w ≺ s_i w`` whenever the length goes up, labeled ``i``."""
    lengths = family.lengths
    elems = sorted(lengths, key=lambda w: (lengths[w], family.reduced_word(w)))
    index = {w: i for i, w in enumerate(elems)}
    covers, labels = [], {}
    for w in elems:
        for k, s in enumerate(family.generators):
            x = _compose(s, w)
            if lengths[x] == lengths[w] + 1:
                e = (index[w], index[x])
                covers.append(e)
                labels[e] = k + 1
    names = {k + 1: f"s{k + 1}" for k in range(len(family.generators))}
    payloads = tuple(word_string(family.reduced_word(w)) for w in elems)
    lat = LabeledLattice(Poset(len(elems), covers), EdgeLabeling(labels, names), payloads, family.tag, tuple(elems))
    lat.extra["coxeter"] = family
    return lat


def longest_parabolic_check(lattice: LabeledLattice, u: int, w: int) -> tuple[bool, int]:
    """Is the element carrying ``u`` to ``w`` the longest element of a parabolic subgroup?

    Covers multiply on the left, so ``w = x u`` with ``x = w u^{-1}`` and
    ``[u, w]`` is isomorphic to ``[e, x]``.  ``x`` is tested against the
    parabolic subgroup generated by its left descents.  Returns the verdict
    and the number of those descents.
    """
    family: CoxeterFamily = lattice.extra["coxeter"]
    if not lattice.poset.leq(u, w):
        raise InvalidInput(f"{u} is not below {w}")
    x = family.multiply(lattice.data[w], family.inverse(lattice.data[u]))
    descents = family.left_descents(x)
    sub = family.parabolic(descents)
    longest = max(family.lengths[y] for y in sub)
    return family.lengths[x] == longest, len(descents)


# -- Tamari lattice --------------------------------------------------------
Tree = Union[int, tuple]


def _max_leaf(t: Tree) -> int:
    while isinstance(t, tuple):
        t = t[1]
    return t


def _tree_str(t: Tree) -> str:
    if isinstance(t, tuple):
        return f"({_tree_str(t[0])},{_tree_str(t[1])})"
    return str(t)


def _right_rotations(t: Tree, path: str = ""):
    """Every ``(a,b)c -> a(b,c)`` rewrite: yields ``(label, result, path of the rewritten node)``."""
    if not isinstance(t, tuple):
        return
    left, right = t
    if isinstance(left, tuple):
        a, b = left
        yield _max_leaf(b), (a, (b, right)), path
    for label, new, p in _right_rotations(left, path + "L"):
        yield label, (new, right), p
    for label, new, p in _right_rotations(right, path + "R"):
        yield label, (left, new), p


def _trees(lo: int, hi: int) -> list[Tree]:
    if lo == hi:
        return [lo]
    out = []
    for split in range(lo, hi):
        for a in _trees(lo, split):
            for b in _trees(split + 1, hi):
                out.append((a, b))
    return out


@dataclass(frozen=True)
class Bracketing:
    """Full binary tree on leaves ``1..n`` in left-to-right order (nested pairs)."""

    tree: Tree

    def __post_init__(self):
        leaves = []

        def walk(t):
            if isinstance(t, tuple):
                if len(t) != 2:
                    raise InvalidInput("internal nodes must have two children")
                walk(t[0])
                walk(t[1])
            else:
                leaves.append(t)

        walk(self.tree)
        if leaves != list(range(1, len(leaves) + 1)):
            raise InvalidInput(f"leaves must read 1..n left to right, got {leaves}")

    @property
    def n(self) -> int:
        return _max_leaf(self.tree)

    def rotations(self):
        """``(label, Bracketing, node path)`` for every upward cover."""
        for label, t, path in _right_rotations(self.tree):
            yield label, Bracketing(t), path

    def __str__(self):
        return _tree_str(self.tree)

    @classmethod
    def left_comb(cls, n: int) -> "Bracketing":
        t: Tree = 1
        for i in range(2, n + 1):
            t = (t, i)
        return cls(t)

    @classmethod
    def right_comb(cls, n: int) -> "Bracketing":
        t: Tree = n
        for i in range(n - 1, 0, -1):
            t = (i, t)
        return cls(t)

    @classmethod
    def parse(cls, text: str) -> "Bracketing":
        pos = 0

        def read():
            nonlocal pos
            if text[pos] == "(":
                pos += 1
                a = read()
                assert text[pos] == ","
                pos += 1
                b = read()
                assert text[pos] == ")"
                pos += 1
                return (a, b)
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            return int(text[start:pos])

        text = text.replace(" ", "")
        return cls(read())


def tamari_rotation_op(v: Bracketing, i: int) -> Bracketing | None:
    """The up-cover of ``v`` carrying label ``i``, or None when there is none."""
    for label, w, _ in v.rotations():
        if label == i:
            return w
    return None


def tamari_rotation_node(v: Bracketing, i: int) -> str | None:
    """Path (``L``/``R`` from the root) of the node rewritten by the ``i`` rotation."""
    for label, _, path in v.rotations():
        if label == i:
            return path
    return None


def catalan(k: int) -> int:
    c = 1
    for i in range(k):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


def tamari(n: int) -> LabeledLattice:
    if n < 2:
        raise InvalidInput("tamari needs n >= 2")
    if n > 10:
        raise ParamTooLarge(f"tamari({n}) exceeds n <= 10")
    trees = [Bracketing(t) for t in _trees(1, n)]
    # Sort by number of rotations needed from the left comb: a linear extension.
    depth = {}
    start = Bracketing.left_comb(n)
    depth[start] = 0
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for _, w, _ in v.rotations():
            if w not in depth:
                depth[w] = depth[v] + 1
                queue.append(w)
    trees.sort(key=lambda b: (depth[b], str(b)))
    index = {b: i for i, b in enumerate(trees)}
    covers, labels = [], {}
    for b in trees:
        for label, w, _ in b.rotations():
            e = (index[b], index[w])
            covers.append(e)
            labels[e] = label
    names = {i: str(i) for i in range(2, n)}
    return LabeledLattice(
        Poset(len(trees), covers),
        EdgeLabeling(labels, names),
        tuple(str(b) for b in trees),
        f"tamari:{n}",
        tuple(trees),
    )


# -- dominance order ----------------------------------------------------
def dominance(n: int) -> tuple[Poset, list[Partition]]:
    """Partitions of ``n`` under dominance; also returns the partition of each id."""
    if n < 0:
        raise InvalidInput("n must be nonnegative")
    if n > 20:
        raise ParamTooLarge(f"dominance({n}) exceeds n <= 20")
    parts = partitions(n)
    k = n
    sums = [p.partial_sums(k) for p in parts]
    poset = from_relation(len(parts), lambda i, j: all(a <= b for a, b in zip(sums[i], sums[j])))
    return poset, parts


COUNTEREXAMPLE = Partition((5, 4, 3, 2, 1))


def dominance_counterexample_interval() -> tuple[IntervalView, list[Partition]]:
    """``[m, (5,4,3,2,1)]`` in dominance(15), ``m`` the meet of the elements it covers."""
    poset, parts = dominance(COUNTEREXAMPLE.size)
    top = parts.index(COUNTEREXAMPLE)
    below = poset.lower_covers[top]
    m = poset.meet_all(below)
    return poset.interval(m, top), parts


# -- family identifiers ----------------------------------------------------
def parse_family(spec: str, poset_loader: Callable[[str], Poset] | None = None) -> LabeledLattice:
    """Build a labeled lattice from a CLI identifier such as ``tamari:5`` or ``weak:dih:4``."""
    head, _, rest = spec.partition(":")
    try:
        if head == "boolean":
            return boolean(int(rest))
        if head == "tamari":
            return tamari(int(rest))
        if head == "weak":
            kind, _, param = rest.partition(":")
            return weak_order(coxeter_family(kind, int(param)))
        if head == "young":
            mu, _, lam = rest.partition("/")
            return young_interval(Partition.parse(mu), Partition.parse(lam))
        if head == "jp":
            if poset_loader is None:
                raise InvalidInput("jp: family needs a poset file loader")
            return distributive_from_poset(poset_loader(rest)).retagged(spec)
    except ValueError as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f"bad family identifier {spec!r}: {exc}") from exc
    if head == "dominance":
        raise InvalidInput("dominance carries no labeling; use it with sb-exists or mobius")
    raise InvalidInput(f"unknown family {spec!r}")
