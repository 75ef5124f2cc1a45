"""JSON, DOT and TSV serialization."""

from __future__ import annotations

import json
from collections import defaultdict
from pathlib import Path
from typing import Any, Iterable, Sequence

from .errors import InvalidInput
from .labeling import EdgeLabeling, LabeledLattice, labeling_from_json
from .poset import Poset


def poset_to_dict(p: Poset) -> dict:
    return {"n": p.n, "covers": [list(c) for c in p.sorted_covers()]}


def lattice_to_dict(lat: LabeledLattice) -> dict:
    d = poset_to_dict(lat.poset)
    d["labels"] = [[a, b, lab] for (a, b), lab in sorted(lat.labeling.labels.items())]
    if lat.labeling.label_names:
        d["label_names"] = {str(k): v for k, v in sorted(lat.labeling.label_names.items())}
    d["payloads"] = list(lat.payloads)
    d["family"] = lat.family_tag
    return d


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def poset_from_dict(data: dict) -> Poset:
    try:
        n = int(data["n"])
        covers = [(int(a), int(b)) for a, b in data.get("covers", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed poset JSON: {exc}") from exc
    return Poset(n, covers)


def structure_from_dict(data: dict) -> Poset | LabeledLattice:
    """A bare :class:`Poset`, or a :class:`LabeledLattice` when ``labels`` is present."""
    p = poset_from_dict(data)
    if "labels" not in data:
        return p
    labeling = labeling_from_json(p, data["labels"], data.get("label_names"))
    payloads = tuple(data.get("payloads") or (str(i) for i in range(p.n)))
    return LabeledLattice(p, labeling, payloads, data.get("family", "input"))


def load_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise InvalidInput(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON ({exc})") from exc


def load_poset(path: str | Path) -> Poset:
    return poset_from_dict(load_json(path))


def to_dot(p: Poset, payloads: Sequence[str] | None = None, labeling: EdgeLabeling | None = None) -> str:
    """Hasse diagram, bottom at the bottom, one rank per height."""
    lines = ["digraph hasse {", "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
    for x in range(p.n):
        label = payloads[x] if payloads else str(x)
        label = label.replace('"', '\\"')
        lines.append(f'  n{x} [label="{label}"];')
    for a, b in p.sorted_covers():
        if labeling is not None:
            lines.append(f'  n{a} -> n{b} [label="{labeling.name(labeling[(a, b)])}"];')
        else:
            lines.append(f"  n{a} -> n{b};")
    ranks = defaultdict(list)
    for x, h in enumerate(p.heights()):
        ranks[h].append(x)
    for h in sorted(ranks):
        lines.append("  { rank=same; " + " ".join(f"n{x};" for x in ranks[h]) + " }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def rows_to_tsv(rows: Iterable[dict], fields: Sequence[str]) -> str:
    out = ["\t".join(fields)]
    for r in rows:
        out.append("\t".join(_cell(r.get(f)) for f in fields))
    return "\n".join(out) + "\n"


def _cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return ""
    return str(x)
