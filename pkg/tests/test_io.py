import json

import pytest

from sblattice.errors import InvalidInput, RedundantCover
from sblattice.families import boolean, tamari, weak_order, symmetric
from sblattice.io import (
    dumps,
    lattice_to_dict,
    load_json,
    poset_from_dict,
    poset_to_dict,
    rows_to_tsv,
    structure_from_dict,
    to_dot,
)
from sblattice.labeling import LabeledLattice
from sblattice.poset import Poset


@pytest.mark.parametrize("lat", [boolean(3), tamari(5), weak_order(symmetric(3))], ids=lambda x: x.family_tag)
def test_lattice_round_trip(lat):
    back = structure_from_dict(json.loads(dumps(lattice_to_dict(lat))))
    assert isinstance(back, LabeledLattice)
    assert back.poset == lat.poset
    assert back.labeling.labels == lat.labeling.labels
    assert back.payloads == lat.payloads and back.family_tag == lat.family_tag


def test_poset_round_trip():
    p = tamari(4).poset
    back = structure_from_dict(poset_to_dict(p))
    assert isinstance(back, Poset) and back == p


def test_malformed_input(tmp_path):
    with pytest.raises(InvalidInput):
        poset_from_dict({"covers": []})
    with pytest.raises(RedundantCover):
        poset_from_dict({"n": 3, "covers": [[0, 1], [1, 2], [0, 2]]})
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InvalidInput):
        load_json(bad)
    with pytest.raises(InvalidInput):
        load_json(tmp_path / "missing.json")


def test_labels_must_cover_every_edge():
    d = lattice_to_dict(boolean(2))
    d["labels"] = d["labels"][:-1]
    with pytest.raises(InvalidInput):
        structure_from_dict(d)


def test_dot():
    lat = tamari(4)
    dot = to_dot(lat.poset, lat.payloads, lat.labeling)
    assert dot.startswith("digraph hasse {") and "rankdir=BT" in dot
    assert dot.count("->") == len(lat.poset.covers)
    assert '[label="2"]' in dot
    assert "->" in to_dot(boolean(2).poset)


def test_tsv():
    text = rows_to_tsv([{"u": 0, "v": 1, "ok": True, "x": None}], ("u", "v", "ok", "x"))
    assert text == "u\tv\tok\tx\n0\t1\ttrue\t\n"
