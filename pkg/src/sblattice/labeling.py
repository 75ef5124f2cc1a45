"""Edge labelings of finite lattices and SB-labeling verification.

Two verifiers are provided and must agree on every input:

* :func:`verify_index2` checks the local conditions on pairs of covers
  ``u ≺ v, u ≺ w`` and the saturated chains of ``[u, v ∨ w]``;
* :func:`verify_sb_full` checks, on every closed interval, that chains up to a
  join of atoms use exactly the labels of those atoms.

:func:`sb_exists` decides whether some labeling satisfies the local
conditions, by constraint search over partitions of the cover edges.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable

from .errors import AtomCountExceeded, InvalidInput
from .poset import (
    DEFAULT_ATOM_LIMIT,
    DEFAULT_CHAIN_BUDGET,
    Chain,
    Cover,
    Poset,
    Verdict,
    saturated_chains,
    total_length,
)

DEFAULT_SEARCH_BUDGET = 200_000


@dataclass(frozen=True)
class EdgeLabeling:
    labels: dict[Cover, int]
    label_names: dict[int, str] = field(default_factory=dict)

    def __getitem__(self, cover: Cover) -> int:
        return self.labels[cover]

    def chain_labels(self, chain: Chain) -> list[int]:
        return [self.labels[(a, b)] for a, b in zip(chain, chain[1:])]

    def name(self, label: int) -> str:
        return self.label_names.get(label, str(label))


@dataclass
class LabeledLattice:
    poset: Poset
    labeling: EdgeLabeling
    payloads: tuple[str, ...]
    family_tag: str
    # family-specific element objects (permutations, trees, partitions, ideals)
    data: tuple = ()
    extra: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if set(self.labeling.labels) != set(self.poset.covers):
            raise InvalidInput("labeling domain must equal the cover set")
        if self.payloads and len(self.payloads) != self.poset.n:
            raise InvalidInput("one payload per element required")

    def retagged(self, tag: str) -> "LabeledLattice":
        return LabeledLattice(self.poset, self.labeling, self.payloads, tag, self.data, dict(self.extra))

    def relabeled(self, labels: dict[Cover, int], tag: str | None = None) -> "LabeledLattice":
        """Same lattice with a different edge labeling (no verification cache carried over)."""
        return LabeledLattice(
            self.poset, EdgeLabeling(dict(labels)), self.payloads, tag or self.family_tag, self.data,
            {k: v for k, v in self.extra.items() if not k.startswith("_")},
        )

    def payload(self, x: int) -> str:
        return self.payloads[x] if self.payloads else str(x)

    def element(self, payload: str) -> int:
        return self.payloads.index(payload)

    @property
    def n(self) -> int:
        return self.poset.n


@dataclass(frozen=True)
class Violation:
    condition: int
    u: int
    v: int | None = None
    w: int | None = None
    atoms: tuple[int, ...] = ()
    chain: Chain | None = None
    multiplicities: tuple[tuple[int, int], ...] = ()

    def sort_key(self):
        return (self.condition, self.u, self.v if self.v is not None else -1,
                self.w if self.w is not None else -1, self.atoms, self.chain or ())

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "u": self.u,
            "v": self.v,
            "w": self.w,
            "atoms": list(self.atoms),
            "chain": list(self.chain) if self.chain is not None else None,
            "multiplicities": [list(m) for m in self.multiplicities],
        }


@dataclass(frozen=True)
class SBReport:
    verdict: str
    checked_formulation: str
    violations: tuple[Violation, ...] = ()
    checks: int = 0

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def __bool__(self):
        return self.passed

    def condition_witnesses(self, condition: int) -> set[tuple]:
        return {(x.u, x.v, x.w) for x in self.violations if x.condition == condition}

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "checked_formulation": self.checked_formulation,
            "checks": self.checks,
            "violations": [v.to_dict() for v in self.violations],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"{self.checked_formulation}: {self.verdict.upper()} ({self.checks} checks, "
                 f"{len(self.violations)} violations)"]
        if self.violations:
            lines.append("cond\tu\tv\tw\tatoms\tchain")
            for x in self.violations:
                chain = "-".join(map(str, x.chain)) if x.chain else ""
                lines.append(f"{x.condition}\t{x.u}\t{x.v}\t{x.w}\t{','.join(map(str, x.atoms))}\t{chain}")
        return "\n".join(lines)


def _report(formulation: str, violations: Iterable[Violation], checks: int) -> SBReport:
    vs = tuple(sorted(set(violations), key=Violation.sort_key))
    return SBReport("fail" if vs else "pass", formulation, vs, checks)


def _mult(labels: list[int]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(Counter(labels).items()))


def verify_index2(lat: LabeledLattice, chain_budget: int = DEFAULT_CHAIN_BUDGET) -> SBReport:
    p, lab = lat.poset, lat.labeling
    violations = []
    checks = 0
    for u in range(p.n):
        for v, w in combinations(p.upper_covers[u], 2):
            checks += 1
            lv, lw = lab[(u, v)], lab[(u, w)]
            if lv == lw:
                violations.append(Violation(1, u, v, w))
            pair = {lv, lw}
            for chain in saturated_chains(p, u, p.join(v, w), chain_budget):
                labels = lab.chain_labels(chain)
                used = set(labels)
                if not pair <= used:
                    violations.append(Violation(2, u, v, w, chain=chain, multiplicities=_mult(labels)))
                if used - pair:
                    violations.append(Violation(3, u, v, w, chain=chain, multiplicities=_mult(labels)))
    report = _report("index2", violations, checks)
    if report.passed:
        lat.extra["_index2_passed"] = True
    return report


def verify_sb_full(
    lat: LabeledLattice,
    chain_budget: int = DEFAULT_CHAIN_BUDGET,
    max_atoms: int = DEFAULT_ATOM_LIMIT,
) -> SBReport:
    """Definition-level check, interval by interval.

    The pair ``(u, S)`` determines the interval ``[u, ∨S]`` whatever the
    enclosing ``[u, t]`` is, so each pair is only examined once.
    """
    p, lab = lat.poset, lat.labeling
    violations = []
    seen: set[tuple[int, tuple[int, ...]]] = set()
    checks = 0
    for u, t in p.comparable_pairs(strict=True):
        atoms = p.atoms(u, t)
        if len(atoms) > max_atoms:
            raise AtomCountExceeded(f"interval [{u},{t}] has {len(atoms)} atoms", len(atoms))
        for a, b in combinations(atoms, 2):
            if lab[(u, a)] == lab[(u, b)]:
                violations.append(Violation(1, u, a, b))
        for r in range(1, len(atoms) + 1):
            for subset in combinations(atoms, r):
                if (u, subset) in seen:
                    continue
                seen.add((u, subset))
                checks += 1
                expected = {lab[(u, a)] for a in subset}
                top = p.join_all(subset)
                for chain in saturated_chains(p, u, top, chain_budget):
                    labels = lab.chain_labels(chain)
                    used = set(labels)
                    if expected - used:
                        violations.append(Violation(2, u, top, None, subset, chain, _mult(labels)))
                    if used - expected:
                        violations.append(Violation(3, u, top, None, subset, chain, _mult(labels)))
    report = _report("full_sb", violations, checks)
    return report


def verify_lower_sb(lat: LabeledLattice, chain_budget: int = DEFAULT_CHAIN_BUDGET,
                    max_atoms: int = DEFAULT_ATOM_LIMIT) -> SBReport:
    """The two conditions on the whole lattice only (intervals from the bottom to joins of atoms)."""
    p, lab = lat.poset, lat.labeling
    u = p.bottom
    if u is None:
        raise InvalidInput("lower SB check needs a unique minimum")
    atoms = p.upper_covers[u]
    if len(atoms) > max_atoms:
        raise AtomCountExceeded(f"{len(atoms)} atoms", len(atoms))
    violations = [Violation(1, u, a, b) for a, b in combinations(atoms, 2) if lab[(u, a)] == lab[(u, b)]]
    checks = 0
    for r in range(1, len(atoms) + 1):
        for subset in combinations(atoms, r):
            checks += 1
            expected = {lab[(u, a)] for a in subset}
            top = p.join_all(subset)
            for chain in saturated_chains(p, u, top, chain_budget):
                labels = lab.chain_labels(chain)
                if set(labels) != expected:
                    cond = 2 if expected - set(labels) else 3
                    violations.append(Violation(cond, u, top, None, subset, chain, _mult(labels)))
    return _report("lower_sb", violations, checks)


@dataclass(frozen=True)
class CrossCheck:
    agree: bool
    index2: SBReport
    full: SBReport

    def __bool__(self):
        return self.agree


def equivalence_crosscheck(lat: LabeledLattice, chain_budget: int = DEFAULT_CHAIN_BUDGET) -> CrossCheck:
    r1 = verify_index2(lat, chain_budget)
    r2 = verify_sb_full(lat, chain_budget)
    return CrossCheck(r1.verdict == r2.verdict, r1, r2)


def is_certified(lat: LabeledLattice) -> bool:
    """Whether ``lat`` carries an SB-labeling; the index-2 run is cached on the lattice."""
    if "_index2_passed" not in lat.extra:
        lat.extra["_index2_passed"] = verify_index2(lat).passed
    return lat.extra["_index2_passed"]


def label_set_constancy(
    lat: LabeledLattice, u: int, v: int, chain_budget: int = DEFAULT_CHAIN_BUDGET
) -> tuple[bool, frozenset[int] | None]:
    """Do all saturated chains of ``[u, v]`` use the same set of labels?"""
    sets = {frozenset(lat.labeling.chain_labels(c)) for c in saturated_chains(lat.poset, u, v, chain_budget)}
    if len(sets) == 1:
        return True, next(iter(sets))
    return False, None


@dataclass(frozen=True)
class ObstructionCertificate:
    kind: str  # "third_atom" | "csp_refutation"
    witness: Any

    def to_dict(self) -> dict:
        w = self.witness
        if self.kind == "third_atom":
            w = dict(zip(("u", "v", "w", "x"), w))
        return {"kind": self.kind, "witness": w}


def third_atom_obstruction(p: Poset) -> ObstructionCertificate | None:
    for u in range(p.n):
        ups = p.upper_covers[u]
        for v, w in combinations(ups, 2):
            top = p.join(v, w)
            for x in ups:
                if x != v and x != w and p.leq(x, top):
                    return ObstructionCertificate("third_atom", (u, v, w, x))
    return None


def distinct_joins_check(p: Poset, u: int, v: int, max_atoms: int = DEFAULT_ATOM_LIMIT) -> Verdict:
    """Joins of atom subsets of ``[u, v]`` form a Boolean algebra.

    Monotonicity of the join map is automatic; the reverse implication
    ``∨S ≤ ∨T ⇒ S ⊆ T`` holds for all pairs exactly when the atoms below each
    ``∨T`` are exactly ``T``, which is what is checked.
    """
    if isinstance(p, LabeledLattice):
        p = p.poset
    atoms = p.atoms(u, v)
    if len(atoms) > max_atoms:
        raise AtomCountExceeded(f"interval [{u},{v}] has {len(atoms)} atoms", len(atoms))
    joins = {}
    for r in range(len(atoms) + 1):
        for subset in combinations(atoms, r):
            top = p.join_all(subset, start=u)
            below = tuple(a for a in atoms if p.leq(a, top))
            if below != subset:
                return Verdict(False, (u, subset, top), "join has extra atoms below it")
            if top in joins:
                return Verdict(False, (u, joins[top], subset), "two atom sets share a join")
            joins[top] = subset
    return Verdict(True)


# -- existence search -----------------------------------------------------
class _Conflict(Exception):
    pass


class _State:
    """Union-find over cover edges carrying pairwise "different class" constraints."""

    __slots__ = ("parent", "diff")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.diff: dict[int, set[int]] = {}

    def copy(self) -> "_State":
        s = _State.__new__(_State)
        s.parent = self.parent[:]
        s.diff = {k: set(v) for k, v in self.diff.items()}
        return s

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def differ(self, a: int, b: int) -> bool:
        return b in self.diff.get(a, ())

    def separate(self, a: int, b: int) -> bool:
        if a == b:
            raise _Conflict
        if self.differ(a, b):
            return False
        self.diff.setdefault(a, set()).add(b)
        self.diff.setdefault(b, set()).add(a)
        return True

    def merge(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        if self.differ(a, b):
            raise _Conflict
        if a > b:
            a, b = b, a
        self.parent[b] = a
        moved = self.diff.pop(b, set())
        for c in moved:
            peers = self.diff[c]
            peers.discard(b)
            peers.add(a)
        self.diff.setdefault(a, set()).update(moved)


@dataclass
class SearchResult:
    status: str  # "SAT" | "UNSAT" | "UNKNOWN"
    labeling: EdgeLabeling | None = None
    certificate: ObstructionCertificate | None = None
    nodes: int = 0

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"status": self.status, "nodes": self.nodes}
        if self.labeling is not None:
            out["labels"] = [[a, b, lab] for (a, b), lab in sorted(self.labeling.labels.items())]
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        return out


def _propagate(state: _State, constraints) -> None:
    find = state.find
    changed = True
    while changed:
        changed = False
        for a_edge, b_edge, chains in constraints:
            ra, rb = find(a_edge), find(b_edge)
            if state.separate(ra, rb):
                changed = True
            for chain in chains:
                for e in chain:
                    ra, rb = find(a_edge), find(b_edge)
                    r = find(e)
                    if r == ra or r == rb:
                        continue
                    not_a, not_b = state.differ(r, ra), state.differ(r, rb)
                    if not_a and not_b:
                        raise _Conflict
                    if not_a:
                        state.merge(r, rb)
                        changed = True
                    elif not_b:
                        state.merge(r, ra)
                        changed = True
                ra, rb = find(a_edge), find(b_edge)
                roots = {find(e) for e in chain}
                has_a, has_b = ra in roots, rb in roots
                open_roots = roots - {ra, rb}
                if has_a and has_b:
                    continue
                if not open_roots or (len(open_roots) == 1 and not has_a and not has_b):
                    raise _Conflict
                if len(open_roots) == 1:
                    (r,) = open_roots
                    state.merge(r, rb if has_a else ra)
                    changed = True


def _choose(state: _State, constraints):
    find = state.find
    for a_edge, b_edge, chains in constraints:
        ra, rb = find(a_edge), find(b_edge)
        for chain in chains:
            for e in chain:
                r = find(e)
                if r != ra and r != rb:
                    return e, a_edge, b_edge
    return None


def sb_exists(
    p: Poset,
    budget: int = DEFAULT_SEARCH_BUDGET,
    chain_budget: int = DEFAULT_CHAIN_BUDGET,
) -> SearchResult:
    """Decide whether ``p`` admits a labeling meeting the index-2 conditions.

    Each cover triple ``(u, v, w)`` forces ``(u,v)`` and ``(u,w)`` into
    different classes and every edge on a chain of ``[u, v ∨ w]`` into one of
    those two classes, with both classes present on each chain.  The search
    branches an undecided edge into either class; ``budget`` caps the number
    of search nodes.
    """
    cert = third_atom_obstruction(p)
    if cert is not None:
        return SearchResult("UNSAT", certificate=cert)

    edges = p.sorted_covers()
    eid = {e: i for i, e in enumerate(edges)}
    triples = []
    for u in range(p.n):
        for v, w in combinations(p.upper_covers[u], 2):
            top = p.join(v, w)
            triples.append((total_length(p, u, top), u, v, w, top))
    triples.sort()
    constraints = []
    for _, u, v, w, top in triples:
        chains = [
            tuple(eid[(a, b)] for a, b in zip(c, c[1:]))
            for c in saturated_chains(p, u, top, chain_budget)
        ]
        constraints.append((eid[(u, v)], eid[(u, w)], chains))

    nodes = 0
    conflicts = 0
    stack = [_State(len(edges))]
    while stack:
        state = stack.pop()
        nodes += 1
        if nodes > budget:
            return SearchResult("UNKNOWN", nodes=nodes - 1)
        try:
            _propagate(state, constraints)
        except _Conflict:
            conflicts += 1
            continue
        pick = _choose(state, constraints)
        if pick is None:
            roots = {}
            labels = {}
            for e, i in eid.items():
                labels[e] = roots.setdefault(state.find(i), len(roots))
            return SearchResult("SAT", labeling=EdgeLabeling(labels), nodes=nodes)
        e, a_edge, b_edge = pick
        # Depth-first: try joining the first edge's class before the second's.
        for target in (b_edge, a_edge):
            child = state.copy()
            try:
                child.merge(e, target)
            except _Conflict:
                conflicts += 1
                continue
            stack.append(child)
    summary = {
        "nodes": nodes,
        "conflicts": conflicts,
        "cover_triples": len(constraints),
        "edges": len(edges),
        "chains": sum(len(c[2]) for c in constraints),
    }
    return SearchResult("UNSAT", certificate=ObstructionCertificate("csp_refutation", summary), nodes=nodes)


def labeling_from_json(p: Poset, entries: Iterable[Iterable[int]], names: dict | None = None) -> EdgeLabeling:
    labels = {}
    for lo, hi, lab in entries:
        labels[(int(lo), int(hi))] = int(lab)
    if set(labels) != set(p.covers):
        raise InvalidInput("labels must cover exactly the cover relations")
    return EdgeLabeling(labels, {int(k): str(v) for k, v in (names or {}).items()})
