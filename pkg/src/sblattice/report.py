"""Full certification suite over one labeled lattice, as a JSON-ready summary."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from . import __version__
from .errors import BudgetExceeded
from .families import (
    Bracketing,
    longest_parabolic_check,
    tamari_rotation_node,
    tamari_rotation_op,
)
from .labeling import (
    LabeledLattice,
    distinct_joins_check,
    label_set_constancy,
    verify_index2,
    verify_sb_full,
)
from .poset import (
    atom_near_lattice_check,
    basic_move_connectivity,
    is_lattice,
    mobius_table,
    saturated_chains,
)
from .topology import DEFAULT_FACE_BUDGET, classification_rows


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    partial: bool = False

    def to_dict(self):
        return {"name": self.name, "passed": self.passed, "partial": self.partial, "detail": self.detail}


def _rows_chunk(args):
    lat, pairs, face_budget = args
    return classification_rows(lat, pairs, face_budget)


def parallel_classification(lat: LabeledLattice, jobs: int = 1, face_budget: int = DEFAULT_FACE_BUDGET):
    """Classification rows for every ``u < v``; order and content independent of ``jobs``."""
    pairs = list(lat.poset.comparable_pairs(strict=True))
    if jobs <= 1 or len(pairs) < 64:
        rows = classification_rows(lat, pairs, face_budget)
    else:
        chunks = [pairs[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_rows_chunk, [(lat, c, face_budget) for c in chunks])
            rows = [r for part in parts for r in part]
    rows.sort(key=lambda r: (r["u"], r["v"]))
    return rows


def random_relabelings(lat: LabeledLattice, count: int, seed: int):
    """Seeded labelings: half perturb one edge of the given labeling, half are uniform random."""
    rng = random.Random(seed)
    covers = lat.poset.sorted_covers()
    base = lat.labeling.labels
    palette = sorted(set(base.values())) or [0]
    out = []
    for k in range(count):
        if k % 2 == 0 and covers:
            labels = dict(base)
            e = rng.choice(covers)
            labels[e] = rng.choice(palette + [max(palette) + 1])
        else:
            labels = {e: rng.choice(palette) for e in covers}
        out.append(lat.relabeled(labels))
    return out


def weak_local_structure(lat: LabeledLattice) -> tuple[bool, str]:
    """Each ``[u, v ∨ w]`` has two chains with alternating labels of length m(i, j)."""
    fam = lat.extra["coxeter"]
    p, lab = lat.poset, lat.labeling
    for u in range(p.n):
        for v, w in combinations(p.upper_covers[u], 2):
            i, j = lab[(u, v)], lab[(u, w)]
            m = fam.coxeter_m(i, j)
            chains = saturated_chains(p, u, p.join(v, w))
            if len(chains) != 2:
                return False, f"[{u}, {v}∨{w}] has {len(chains)} chains"
            for c in chains:
                seq = lab.chain_labels(c)
                first = seq[0]
                other = j if first == i else i
                expect = [first if t % 2 == 0 else other for t in range(m)]
                if seq != expect:
                    return False, f"chain {c} labels {seq}, expected {expect}"
    return True, ""


def tamari_operator_algebra(lat: LabeledLattice) -> dict[str, tuple[bool, str]]:
    """Check the rotation-operator relations separately.

    ``uiui_null``: ``u_i u_i(v)`` is null for every ``v`` and ``i``.
    ``relations``: for ``i < j`` with both ``u_i(v)``, ``u_j(v)`` defined,
    ``u_i u_j(v) = u_j u_j u_i(v)`` when the two rewritten nodes are nested
    (``((a,b)c)d``) and ``u_i u_j(v) = u_j u_i(v)`` otherwise.
    ``interval_sizes``: ``[v, u_i(v) ∨ u_j(v)]`` has 4 or 5 elements.
    """
    trees: tuple[Bracketing, ...] = lat.data
    index = {t: k for k, t in enumerate(trees)}
    p = lat.poset
    ops = range(2, trees[0].n)
    uiui = relations = sizes = None
    uiui_count = pair_count = 0
    for v in trees:
        for i in ops:
            w = tamari_rotation_op(v, i)
            if w is not None and tamari_rotation_op(w, i) is not None:
                uiui_count += 1
                if uiui is None:
                    uiui = f"u_{i} u_{i}({v}) = {tamari_rotation_op(w, i)}"
        for i, j in combinations(ops, 2):
            vi, vj = tamari_rotation_op(v, i), tamari_rotation_op(v, j)
            if vi is None or vj is None:
                continue
            pair_count += 1
            pi, pj = tamari_rotation_node(v, i), tamari_rotation_node(v, j)
            nested = pi == pj + "L" or pj == pi + "L"
            ij = tamari_rotation_op(vj, i)
            ji = tamari_rotation_op(vi, j)
            jji = tamari_rotation_op(ji, j) if ji is not None else None
            if nested:
                ok = ij is not None and ij == jji and ij != ji
            else:
                ok = ij is not None and ij == ji
            if not ok and relations is None:
                relations = f"{'nested' if nested else 'disjoint'} relation fails at {v}, i={i}, j={j}"
            top = p.join(index[vi], index[vj])
            size = p.interval_size(index[v], top)
            if size not in (4, 5) and sizes is None:
                sizes = f"[{v}, u_{i}∨u_{j}] has {size} elements"
    return {
        "uiui_null": (uiui is None, uiui or "")
        if uiui is None else (False, f"{uiui_count} defined double applications, e.g. {uiui}"),
        "relations": (relations is None, relations or f"{pair_count} operator pairs"),
        "interval_sizes": (sizes is None, sizes or f"{pair_count} intervals"),
    }


def family_report(
    lat: LabeledLattice,
    seed: int = 0,
    samples: int = 10,
    jobs: int = 1,
    chain_budget: int = 200_000,
    face_budget: int = DEFAULT_FACE_BUDGET,
    config: dict | None = None,
) -> dict:
    p = lat.poset
    checks: list[Check] = []

    def add(name, fn):
        try:
            ok, detail = fn()
            checks.append(Check(name, bool(ok), detail))
        except BudgetExceeded as exc:
            checks.append(Check(name, True, str(exc), partial=True))

    add("is_lattice", lambda: (is_lattice(p).ok, ""))
    add("atom_near_lattice", lambda: (atom_near_lattice_check(p).ok == is_lattice(p).ok, "agrees with is_lattice"))
    r1 = verify_index2(lat, chain_budget)
    r2 = verify_sb_full(lat, chain_budget)
    checks.append(Check("verify_index2", r1.passed, f"{r1.checks} cover pairs"))
    checks.append(Check("verify_sb_full", r2.passed, f"{r2.checks} atom sets"))
    checks.append(Check("equivalence", r1.verdict == r2.verdict, f"{r1.verdict}/{r2.verdict}"))

    def relabel():
        bad = []
        for k, other in enumerate(random_relabelings(lat, samples, seed)):
            a, b = verify_index2(other, chain_budget), verify_sb_full(other, chain_budget)
            if a.verdict != b.verdict:
                bad.append(k)
        return not bad, f"{samples} seeded relabelings, disagreements {bad}"

    add("equivalence_random_relabelings", relabel)

    table = mobius_table(p)
    values = sorted(set(table.values()))
    checks.append(Check("mobius_range", set(values) <= {-1, 0, 1}, f"values {values}"))

    if r1.passed:
        def classify():
            rows = parallel_classification(lat, jobs, face_budget)
            bad = [(r["u"], r["v"]) for r in rows if not r["match"]]
            partial = sum(r["betti"] == "partial" for r in rows)
            return not bad, f"{len(rows)} intervals, {partial} Euler-only, mismatches {bad[:5]}"

        add("classification", classify)

        def constancy():
            for u, v in p.comparable_pairs(strict=True):
                if not label_set_constancy(lat, u, v, chain_budget)[0]:
                    return False, f"[{u},{v}]"
            return True, ""

        add("label_set_constancy", constancy)

        def joins():
            for u, v in p.comparable_pairs(strict=True):
                verdict = distinct_joins_check(p, u, v)
                if not verdict:
                    return False, f"{verdict.witness}"
            return True, ""

        add("distinct_joins", joins)

    def moves():
        for u, v in p.comparable_pairs(strict=True):
            if not basic_move_connectivity(p, u, v, chain_budget):
                return False, f"[{u},{v}]"
        return True, ""

    add("basic_move_connectivity", moves)

    if "coxeter" in lat.extra:
        def parabolic():
            bad = []
            for u, w in p.comparable_pairs(strict=True):
                atoms = p.atoms(u, w)
                sphere = p.join_all(atoms) == w
                if sphere != longest_parabolic_check(lat, u, w)[0]:
                    bad.append((u, w))
            return not bad, f"mismatches {bad[:5]}"

        add("weak_sphere_criterion", parabolic)
        add("weak_local_structure", lambda: weak_local_structure(lat))
    if lat.family_tag.startswith("tamari"):
        for key, result in tamari_operator_algebra(lat).items():
            checks.append(Check(f"tamari_{key}", result[0], result[1]))

    return {
        "tool": "sblattice",
        "version": __version__,
        "config": config or {"family": lat.family_tag, "seed": seed, "samples": samples},
        "family": lat.family_tag,
        "elements": p.n,
        "covers": len(p.covers),
        "passed": all(c.passed for c in checks),
        "partial": any(c.partial for c in checks),
        "checks": [c.to_dict() for c in checks],
    }
