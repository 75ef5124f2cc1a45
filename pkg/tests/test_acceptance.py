"""Acceptance criteria 1-11, one test each.

Every test records a one-line verdict in ``RESULTS``; ``conftest.py`` prints
them at the end of the run.  Run directly (``python tests/test_acceptance.py``)
to get the same lines without pytest.
"""

from __future__ import annotations

import time

from sblattice.families import (
    COUNTEREXAMPLE,
    boolean,
    dihedral,
    distributive_from_poset,
    dominance,
    dominance_counterexample_interval,
    labeled_posets,
    longest_parabolic_check,
    parse_family,
    random_poset,
    symmetric,
    tamari,
    weak_order,
)
from sblattice.labeling import sb_exists, third_atom_obstruction, verify_index2, verify_sb_full
from sblattice.poset import basic_move_connectivity, build_poset, is_lattice, mobius_table
from sblattice.report import tamari_operator_algebra, weak_local_structure
from sblattice.topology import (
    betti_numbers,
    classify_interval,
    crosscut_vs_order_check,
    interval_order_complex,
)

RESULTS: dict[int, str] = {}

# tamari:8 has 429 elements; its longest atom-join intervals need about 3.4e5 chains
BIG_CHAIN_BUDGET = 1_000_000


def record(number: int, ok: bool, detail: str) -> None:
    RESULTS[number] = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[number])
    assert ok, detail


def criterion_1_lattices():
    """(lattice, chain budget) for every lattice named by criterion 1."""
    out = []
    for k in range(1, 5):
        for p in labeled_posets(k):
            out.append((distributive_from_poset(p), None))
    for seed in range(50):
        out.append((distributive_from_poset(random_poset(6, seed)).retagged(f"jp:random6:{seed}"), None))
    out += [(boolean(n), None) for n in range(1, 7)]
    out.append((parse_family("young:∅/(3,2,1)"), None))
    out += [(weak_order(symmetric(n)), None) for n in range(1, 5)]
    out += [(weak_order(dihedral(m)), None) for m in range(2, 9)]
    out += [(tamari(n), None) for n in range(2, 8)]
    out.append((tamari(8), BIG_CHAIN_BUDGET))
    return out


_LATTICES = None


def lattices_1():
    global _LATTICES
    if _LATTICES is None:
        _LATTICES = criterion_1_lattices()
    return _LATTICES


CRITERION_3 = {
    "weak:sym:4": lambda: weak_order(symmetric(4)),
    "weak:dih:6": lambda: weak_order(dihedral(6)),
    "tamari:6": lambda: tamari(6),
    "boolean:5": lambda: boolean(5),
}


def test_criterion_01_family_certification():
    start = time.perf_counter()
    bad = []
    for lat, budget in lattices_1():
        kw = {"chain_budget": budget} if budget else {}
        a, b = verify_index2(lat, **kw), verify_sb_full(lat, **kw)
        if not (a.passed and b.passed and a.verdict == b.verdict):
            bad.append(lat.family_tag)
    elapsed = time.perf_counter() - start
    record(1, not bad and elapsed < 300,
           f"{len(lattices_1())} lattices, failures {bad[:5]}, {elapsed:.1f}s (limit 300s)")


def test_criterion_02_mobius_range():
    bad = []
    for lat, _ in lattices_1():
        values = set(mobius_table(lat.poset).values())
        if not values <= {-1, 0, 1}:
            bad.append((lat.family_tag, sorted(values)))
    record(2, not bad, f"{len(lattices_1())} lattices, out-of-range {bad[:3]}")


def test_criterion_03_classification_vs_mobius():
    bad, total = [], 0
    for name, make in CRITERION_3.items():
        lat = make()
        p = lat.poset
        table = mobius_table(p)
        for u, v in p.comparable_pairs(strict=True):
            total += 1
            cls = classify_interval(lat, u, v)
            atoms = p.atoms(u, v)
            d = len(atoms)
            mu = table[(u, v)]
            if p.join_all(atoms) == v:
                ok = cls.is_sphere and cls.dimension == d - 2 and mu == (-1) ** d
            else:
                ok = cls.kind == "Contractible" and mu == 0
            if not ok:
                bad.append((name, u, v))
    record(3, not bad, f"{total} intervals, mismatches {bad[:3]}")


def test_criterion_04_homology():
    start = time.perf_counter()
    bad, total = [], 0
    for lat in (weak_order(symmetric(4)), tamari(5)):
        p = lat.poset
        for u, v in p.comparable_pairs(strict=True):
            total += 1
            betti = betti_numbers(interval_order_complex(p, u, v))
            if betti != classify_interval(lat, u, v).predicted_betti():
                bad.append((lat.family_tag, u, v, str(betti)))
    elapsed = time.perf_counter() - start
    record(4, not bad and elapsed < 600, f"{total} intervals, mismatches {bad[:3]}, {elapsed:.1f}s")


def test_criterion_05_crosscut():
    bad, total, betti_both = [], 0, 0
    for name, make in CRITERION_3.items():
        p = make().poset
        for u, v in p.comparable_pairs(strict=True):
            total += 1
            cmp = crosscut_vs_order_check(p, u, v)
            betti_both += not cmp.partial
            if not cmp.agree:
                bad.append((name, u, v))
    record(5, not bad, f"{total} intervals ({betti_both} with both Betti vectors), disagreements {bad[:3]}")


def test_criterion_06_weak_sphere_criterion():
    lat = weak_order(symmetric(4))
    p = lat.poset
    bad, total = [], 0
    for u, w in p.comparable_pairs(strict=True):
        total += 1
        if classify_interval(lat, u, w).is_sphere != longest_parabolic_check(lat, u, w)[0]:
            bad.append((lat.payloads[u], lat.payloads[w]))
    record(6, not bad, f"{total} pairs u < w, mismatches {bad[:3]}")


def test_criterion_07_weak_local_structure():
    bad = []
    for lat in [weak_order(symmetric(4))] + [weak_order(dihedral(m)) for m in range(2, 9)]:
        ok, detail = weak_local_structure(lat)
        if not ok:
            bad.append((lat.family_tag, detail))
    record(7, not bad, f"weak:sym:4 and weak:dih:2..8, failures {bad[:2]}")


def test_criterion_08_tamari_operators():
    parts = tamari_operator_algebra(tamari(6))
    detail = "; ".join(f"{k} {'ok' if ok else 'FAILS'} ({d})" for k, (ok, d) in parts.items())
    record(8, all(ok for ok, _ in parts.values()), detail)


def test_criterion_09_basic_moves():
    bad, total = [], 0
    for lat in (tamari(5), weak_order(symmetric(4))):
        p = lat.poset
        for u, v in p.comparable_pairs(strict=True):
            total += 1
            if not basic_move_connectivity(p, u, v):
                bad.append((lat.family_tag, u, v))
    record(9, not bad, f"{total} intervals, disconnected {bad[:3]}")


def test_criterion_10_dominance():
    start = time.perf_counter()
    p, parts = dominance(15)
    lattice = bool(is_lattice(p))
    top = parts.index(COUNTEREXAMPLE)
    covered = len(p.lower_covers[top])
    view, _ = dominance_counterexample_interval()
    sub, _ = view.to_poset()
    result = sb_exists(sub)
    elapsed = time.perf_counter() - start
    ok = lattice and covered == 4 and result.status == "UNSAT" and elapsed < 120
    record(10, ok, f"lattice={lattice}, covers below {COUNTEREXAMPLE}: {covered}, "
                   f"interval of {sub.n} elements -> {result.status} after {result.nodes} nodes, {elapsed:.1f}s")


def test_criterion_11_negative_controls():
    b3 = boolean(3)
    const = b3.relabeled({e: 0 for e in b3.poset.covers})
    a, b = verify_index2(const), verify_sb_full(const)
    cond1 = a.condition_witnesses(1)
    ok_b3 = not a.passed and not b.passed and bool(cond1) and cond1 == b.condition_witnesses(1)
    # 0 < a,b,c < m < 1 together with a side element 0 < e < 1
    third = build_poset(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (4, 5), (0, 6), (6, 5)])
    cert = third_atom_obstruction(third)
    res = sb_exists(third)
    ok_third = (bool(is_lattice(third)) and cert is not None and res.status == "UNSAT"
                and res.certificate.kind == "third_atom")
    record(11, ok_b3 and ok_third,
           f"constant B3: condition-1 witnesses {sorted(cond1)[:3]}...; "
           f"third-atom lattice: certificate {cert.witness if cert else None}, {res.status}")


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
