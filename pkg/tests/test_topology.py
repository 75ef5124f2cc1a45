import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from sblattice.errors import FaceBudgetExceeded, InvalidInput, NotVerified
from sblattice.families import boolean, random_poset, symmetric, tamari, weak_order
from sblattice.poset import Poset, build_poset, mobius
from sblattice.topology import (
    BettiVector,
    HomotopyClass,
    SimplicialComplex,
    betti_numbers,
    classification_rows,
    classify_interval,
    crosscut_complex,
    crosscut_vs_order_check,
    interval_order_complex,
    order_complex,
    rank_exact,
    reduced_euler,
)

TRIANGLE = SimplicialComplex(3, [(0, 1), (1, 2), (0, 2)])
TWO_POINTS = SimplicialComplex(2, [(0,), (1,)])


def test_small_order_complexes():
    assert reduced_euler(order_complex(Poset(2, []))) == 1
    assert reduced_euler(order_complex(Poset(0, []))) == -1
    b3 = boolean(3).poset
    hexagon = interval_order_complex(b3, b3.bottom, b3.top)
    assert hexagon.f_vector() == [1, 6, 6]
    assert reduced_euler(hexagon) == -1


def test_f_vector_dp_matches_enumeration():
    t5 = tamari(5).poset
    c = order_complex(t5)
    assert c.f_vector() == [len(g) for g in c.faces()]


def test_crosscut_complexes():
    b3 = boolean(3).poset
    cover = b3.upper_covers[b3.bottom][0]
    assert crosscut_complex(b3, b3.bottom, cover).facets == ()
    cc = crosscut_complex(b3, b3.bottom, b3.top)
    assert cc.facets == ((0, 1), (0, 2), (1, 2))
    t4 = tamari(4).poset
    assert crosscut_complex(t4, t4.bottom, t4.top).facets == ((0,), (1,))
    with pytest.raises(InvalidInput):
        crosscut_complex(b3, b3.top, b3.bottom)


def test_euler_values():
    assert reduced_euler(SimplicialComplex(1, [(0,)])) == 0
    assert reduced_euler(TRIANGLE) == -1
    assert reduced_euler(TWO_POINTS) == 1
    assert reduced_euler(SimplicialComplex(0, [])) == -1


def test_betti_values():
    assert betti_numbers(TRIANGLE) == BettiVector.sphere(1)
    assert betti_numbers(TRIANGLE).degree(1) == 1 and betti_numbers(TRIANGLE).degree(0) == 0
    assert betti_numbers(SimplicialComplex(3, [(0, 1, 2)])).is_zero
    assert betti_numbers(TWO_POINTS).as_dict() == {0: 1}
    assert betti_numbers(SimplicialComplex(0, [])).as_dict() == {-1: 1}


def test_rank_exact():
    assert rank_exact([]) == 0
    assert rank_exact([{0: 2, 1: 4}, {0: 1, 1: 2}]) == 1
    assert rank_exact([{0: 3}, {1: 5}, {0: 1, 1: 1}]) == 2


def test_face_budget():
    t6 = tamari(6).poset
    with pytest.raises(FaceBudgetExceeded):
        order_complex(t6).faces(budget=100)


def test_classification_examples():
    b3 = boolean(3)
    assert classify_interval(b3, b3.poset.bottom, b3.poset.top) == HomotopyClass.sphere(1)
    s3 = weak_order(symmetric(3))
    assert classify_interval(s3, s3.poset.bottom, s3.payloads.index("s1s2")).kind == "Contractible"
    t4 = tamari(4)
    assert classify_interval(t4, t4.poset.bottom, t4.poset.top) == HomotopyClass.sphere(0)
    bad = b3.relabeled({e: 0 for e in b3.poset.covers})
    with pytest.raises(NotVerified):
        classify_interval(bad, 0, 7)


@pytest.mark.parametrize("lat", [boolean(4), tamari(6)], ids=lambda x: x.family_tag)
def test_crosscut_agrees_with_order_complex(lat):
    p = lat.poset
    for u, v in p.comparable_pairs(strict=True):
        cmp = crosscut_vs_order_check(p, u, v)
        assert cmp.agree
        if p.covers_pair(u, v):
            assert cmp.euler_crosscut == cmp.euler_order == -1


def test_classification_rows_all_match():
    rows = classification_rows(weak_order(symmetric(3)))
    assert len(rows) == 11 and all(r["match"] for r in rows)


def _brute_interval(p, u, v):
    faces = oracles.open_interval_chains(p.n, p.covers, u, v)
    return oracles.euler_from_faces(faces), oracles.reduced_betti(faces)


@pytest.mark.parametrize("lat", [boolean(3), tamari(5), weak_order(symmetric(3))], ids=lambda x: x.family_tag)
def test_homology_matches_dense_oracle(lat):
    p = lat.poset
    for u, v in p.comparable_pairs(strict=True):
        euler, betti = _brute_interval(p, u, v)
        oc = interval_order_complex(p, u, v)
        assert reduced_euler(oc) == euler
        ours = betti_numbers(oc).as_dict()
        assert ours == {d: b for d, b in betti.items() if b}


posets = st.builds(random_poset, st.integers(1, 7), st.integers(0, 10_000), st.sampled_from([0.3, 0.5]))


@settings(max_examples=50, deadline=None)
@given(posets)
def test_mobius_is_reduced_euler(p):
    for u, v in p.comparable_pairs(strict=True):
        oc = interval_order_complex(p, u, v)
        assert reduced_euler(oc) == mobius(p, u, v) == betti_numbers(oc).euler


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.lists(st.lists(st.integers(0, 5), min_size=1, max_size=4), max_size=6))
def test_random_complexes_match_oracle(nv, facets):
    facets = [[x % nv for x in f] for f in facets]
    c = SimplicialComplex(nv, facets)
    betti = oracles.reduced_betti(c.facets)
    assert betti_numbers(c).as_dict() == {d: b for d, b in betti.items() if b}
    assert reduced_euler(c) == betti_numbers(c).euler


def test_complex_round_trip():
    assert SimplicialComplex.from_dict(TRIANGLE.to_dict()) == TRIANGLE
    with pytest.raises(InvalidInput):
        SimplicialComplex(2, [(0, 3)])


def test_dimension_and_facets():
    c = SimplicialComplex(3, [(0, 1, 2), (0, 1)])
    assert c.facets == ((0, 1, 2),) and c.dimension == 2
    assert order_complex(build_poset(3, [(0, 1), (1, 2)])).facets == ((0, 1, 2),)
