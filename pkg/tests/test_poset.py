import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from sblattice.errors import CycleDetected, IdOutOfRange, InvalidInput, NotUnique, RedundantCover
from sblattice.families import boolean, random_poset, symmetric, tamari, weak_order
from sblattice.poset import (
    Poset,
    atom_near_lattice_check,
    basic_move_connectivity,
    build_poset,
    chain_count,
    dual,
    from_relation,
    is_lattice,
    mobius,
    mobius_table,
    saturated_chains,
    total_length,
)

NO_TOP = Poset(3, [(0, 1), (0, 2)])


def test_smallest_posets():
    p = build_poset(1, [])
    assert p.n == 1 and p.bottom == p.top == 0
    two = build_poset(2, [(0, 1)])
    assert two.leq(0, 1) and not two.leq(1, 0)


def test_redundant_cover_rejected():
    with pytest.raises(RedundantCover) as exc:
        build_poset(3, [(0, 1), (1, 2), (0, 2)])
    assert exc.value.cover == (0, 2)


@pytest.mark.parametrize("covers, err", [
    ([(0, 1), (1, 0)], CycleDetected),
    ([(0, 0)], CycleDetected),
    ([(0, 5)], IdOutOfRange),
    ([(0, 1), (0, 1)], InvalidInput),
])
def test_bad_covers(covers, err):
    with pytest.raises(err):
        Poset(2, covers)


def test_boolean_join_is_union():
    b2 = boolean(2)
    names = {s: i for i, s in enumerate(b2.payloads)}
    assert b2.payloads[b2.poset.join(names["{0}"], names["{1}"])] == "{0,1}"


def test_pentagon_join_of_atoms_is_top():
    p = tamari(4).poset
    a, b = p.atoms(p.bottom)
    assert p.join(a, b) == p.top
    assert mobius(p, p.bottom, p.top) == 1


def test_join_idempotent():
    p = tamari(5).poset
    assert all(p.join(a, a) == a and p.meet(a, a) == a for a in range(p.n))


def test_no_top_is_not_lattice():
    v = is_lattice(NO_TOP)
    assert not v
    assert v.witness[:2] == (1, 2)
    with pytest.raises(NotUnique):
        NO_TOP.join(1, 2)
    assert not atom_near_lattice_check(NO_TOP)
    assert is_lattice(build_poset(2, [(0, 1)]))


def test_atom_near_lattice():
    assert atom_near_lattice_check(boolean(3).poset)
    assert atom_near_lattice_check(weak_order(symmetric(3)).poset)


def test_mobius_basics():
    p = boolean(3).poset
    assert all(mobius(p, u, u) == 1 for u in range(p.n))
    assert all(mobius(p, a, b) == -1 for a, b in p.covers)
    assert mobius(p, p.bottom, p.top) == -1


def test_chains_and_lengths():
    assert saturated_chains(build_poset(2, [(0, 1)]), 0, 1) == [(0, 1)]
    s3 = weak_order(symmetric(3)).poset
    assert len(saturated_chains(s3, s3.bottom, s3.top)) == 2
    b3 = boolean(3).poset
    assert chain_count(b3, b3.bottom, b3.top) == 6
    assert total_length(b3, b3.bottom, b3.top) == 18
    b2 = boolean(2).poset
    assert total_length(b2, 0, b2.top) == 4
    assert total_length(b3, 0, b3.upper_covers[0][0]) == 1


def test_basic_moves():
    s3 = weak_order(symmetric(3)).poset
    assert basic_move_connectivity(s3, s3.bottom, s3.top)
    t5 = tamari(5).poset
    assert basic_move_connectivity(t5, t5.bottom, t5.top)
    assert basic_move_connectivity(build_poset(2, [(0, 1)]), 0, 1)


def test_dual():
    two = build_poset(2, [(0, 1)])
    assert dual(two).leq(1, 0)
    p = weak_order(symmetric(3)).poset
    assert dual(dual(p)) == p
    d = dual(p)
    for (u, v), m in mobius_table(p).items():
        assert mobius(d, v, u) == m


def test_from_relation_reduces():
    p = from_relation(4, lambda a, b: a <= b)
    assert sorted(p.covers) == [(0, 1), (1, 2), (2, 3)]


def test_interval_view():
    p = boolean(3).poset
    view = p.interval(p.bottom, p.top)
    sub, ids = view.to_poset()
    assert sub.n == 8 and len(view.open_members()) == 6


# -- properties --------------------------------------------------------------
posets = st.builds(random_poset, st.integers(1, 7), st.integers(0, 10_000), st.sampled_from([0.2, 0.4, 0.7]))


@settings(max_examples=60, deadline=None)
@given(posets)
def test_leq_matches_closure(p):
    leq = oracles.closure(p.n, p.covers)
    assert all(p.leq(a, b) == leq[a][b] for a in range(p.n) for b in range(p.n))


@settings(max_examples=60, deadline=None)
@given(posets)
def test_is_lattice_and_mobius_match_oracle(p):
    assert bool(is_lattice(p)) == oracles.is_lattice(p.n, p.covers)
    table = mobius_table(p)
    for u, v in p.comparable_pairs():
        assert table[(u, v)] == oracles.mobius(p.n, p.covers, u, v) == mobius(p, u, v)


@settings(max_examples=40, deadline=None)
@given(posets)
def test_chains_match_oracle(p):
    for u, v in p.comparable_pairs(strict=True):
        ours = sorted(saturated_chains(p, u, v))
        assert ours == sorted(oracles.chains(p.covers, u, v))
        assert chain_count(p, u, v) == len(ours)
        assert total_length(p, u, v) == sum(len(c) - 1 for c in ours)


@settings(max_examples=40, deadline=None)
@given(posets)
def test_mobius_sums_to_zero(p):
    table = mobius_table(p)
    for u, v in p.comparable_pairs(strict=True):
        assert sum(table[(u, z)] for z in p.between(u, v)) == 0


@settings(max_examples=40, deadline=None)
@given(posets)
def test_join_meet_oracle_on_lattices(p):
    leq = oracles.closure(p.n, p.covers)
    for a in range(p.n):
        for b in range(p.n):
            j, m = oracles.join(leq, a, b), oracles.meet(leq, a, b)
            if j is not None:
                assert p.join(a, b) == j
            if m is not None:
                assert p.meet(a, b) == m
