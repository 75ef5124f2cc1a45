"""Order and crosscut complexes, reduced Euler characteristics, rational Betti numbers.

Complexes always contain the empty face, so the complex of an empty poset has
reduced Euler characteristic -1 and reduced homology of rank 1 in degree -1.
That is what makes ``mu(u, v) = reduced_euler(order complex of (u, v))``
hold for cover relations too.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import AtomCountExceeded, FaceBudgetExceeded, InvalidInput, NotVerified
from .labeling import LabeledLattice, is_certified
from .poset import DEFAULT_ATOM_LIMIT, Poset, mobius_row

DEFAULT_FACE_BUDGET = 50_000

Face = tuple[int, ...]


class SimplicialComplex:
    """Finite abstract simplicial complex on vertices ``0 .. vertex_count-1``."""

    def __init__(self, vertex_count: int, facets: Iterable[Iterable[int]]):
        fs = {tuple(sorted(set(f))) for f in facets}
        for f in fs:
            if f and (f[0] < 0 or f[-1] >= vertex_count):
                raise InvalidInput(f"facet {f} uses a vertex outside [0, {vertex_count})")
        # keep inclusion-maximal sets only
        ordered = sorted(fs, key=len, reverse=True)
        kept: list[frozenset] = []
        for f in ordered:
            s = frozenset(f)
            if not any(s <= k for k in kept):
                kept.append(s)
        self.vertex_count = vertex_count
        self.facets: tuple[Face, ...] = tuple(sorted(tuple(sorted(k)) for k in kept if k))

    @property
    def dimension(self) -> int:
        return max((len(f) - 1 for f in self.facets), default=-1)

    def faces(self, budget: int = DEFAULT_FACE_BUDGET) -> list[list[Face]]:
        """Faces grouped by dimension; ``result[0]`` holds the empty face (dimension -1)."""
        seen: set[Face] = {()}
        for f in self.facets:
            for r in range(1, len(f) + 1):
                for sub in combinations(f, r):
                    if sub not in seen:
                        seen.add(sub)
                        if len(seen) > budget:
                            raise FaceBudgetExceeded(f"more than {budget} faces", len(seen))
        by_dim: list[list[Face]] = [[] for _ in range(self.dimension + 2)]
        for face in seen:
            by_dim[len(face)].append(face)
        for group in by_dim:
            group.sort()
        return by_dim

    def f_vector(self, budget: int = DEFAULT_FACE_BUDGET) -> list[int]:
        """Face counts from dimension -1 upward."""
        return [len(g) for g in self.faces(budget)]

    def to_dict(self) -> dict:
        return {"vertices": self.vertex_count, "facets": [list(f) for f in self.facets]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "SimplicialComplex":
        return cls(int(data["vertices"]), data.get("facets", []))

    def __eq__(self, other):
        return (isinstance(other, SimplicialComplex) and self.vertex_count == other.vertex_count
                and self.facets == other.facets)

    def __repr__(self):
        return f"{type(self).__name__}(vertices={self.vertex_count}, facets={len(self.facets)})"


class OrderComplex(SimplicialComplex):
    """Chains of a poset.  Faces are enumerated and counted directly from the order."""

    def __init__(self, poset: Poset):
        self.poset = poset
        self.vertex_count = poset.n
        self._facets: tuple[Face, ...] | None = None

    @property
    def facets(self) -> tuple[Face, ...]:
        if self._facets is None:
            p = self.poset
            out = []

            def rec(path):
                x = path[-1]
                if not p.upper_covers[x]:
                    out.append(tuple(sorted(path)))
                    return
                for y in p.upper_covers[x]:
                    path.append(y)
                    rec(path)
                    path.pop()

            for m in p.minimal_elements():
                rec([m])
            self._facets = tuple(sorted(set(out)))
        return self._facets

    @property
    def dimension(self) -> int:
        if self.poset.n == 0:
            return -1
        return max(self.poset.heights())

    def faces(self, budget: int = DEFAULT_FACE_BUDGET) -> list[list[Face]]:
        p = self.poset
        strict_up = [sorted(y for y in p.up_set(x) if y != x) for x in range(p.n)]
        by_dim: list[list[Face]] = [[] for _ in range(self.dimension + 2)]
        by_dim[0].append(())
        count = 1

        def rec(chain):
            nonlocal count
            count += 1
            if count > budget:
                raise FaceBudgetExceeded(f"more than {budget} chains", count)
            by_dim[len(chain)].append(tuple(sorted(chain)))
            for y in strict_up[chain[-1]]:
                chain.append(y)
                rec(chain)
                chain.pop()

        for x in range(p.n):
            rec([x])
        for group in by_dim:
            group.sort()
        return by_dim

    def f_vector(self, budget: int = DEFAULT_FACE_BUDGET) -> list[int]:
        """Chains counted by size, by dynamic programming (no budget needed)."""
        p = self.poset
        size = self.dimension + 2
        ending = {}
        totals = [0] * size
        totals[0] = 1
        for x in p.order:
            row = [0] * size
            row[1] = 1
            for y in p.down_set(x):
                if y == x:
                    continue
                below = ending[y]
                for k in range(1, size - 1):
                    row[k + 1] += below[k]
            ending[x] = row
            for k in range(size):
                totals[k] += row[k]
        return totals


def order_complex(p: Poset) -> OrderComplex:
    return OrderComplex(p)


def open_interval(p: Poset, u: int, v: int) -> tuple[Poset, list[int]]:
    """The subposet ``(u, v)``, renumbered, with the map from new ids to old ids."""
    if not p.leq(u, v):
        raise InvalidInput(f"{u} is not below {v}")
    members = sorted(x for x in p.between(u, v) if x != u and x != v)
    index = {x: i for i, x in enumerate(members)}
    covers = [(index[a], index[b]) for a, b in p.covers if a in index and b in index]
    return Poset(len(members), covers), members


def interval_order_complex(p: Poset, u: int, v: int) -> OrderComplex:
    sub, _ = open_interval(p, u, v)
    return OrderComplex(sub)


class CrosscutComplex(SimplicialComplex):
    """Atoms of ``[u, v]`` (other than ``v``); a set of them is a face when its join is below ``v``."""

    def __init__(self, p: Poset, u: int, v: int, max_atoms: int = DEFAULT_ATOM_LIMIT):
        if not p.lt(u, v):
            raise InvalidInput(f"crosscut complex needs {u} < {v}")
        atoms = tuple(a for a in p.atoms(u, v) if a != v)
        if len(atoms) > max_atoms:
            raise AtomCountExceeded(f"interval [{u},{v}] has {len(atoms)} atoms", len(atoms))
        self.atoms = atoms
        faces = []
        for r in range(1, len(atoms) + 1):
            for idx in combinations(range(len(atoms)), r):
                if p.join_all(atoms[i] for i in idx) != v:
                    faces.append(idx)
        super().__init__(len(atoms), faces)
        self._all_faces = faces

    def faces(self, budget: int = DEFAULT_FACE_BUDGET) -> list[list[Face]]:
        if len(self._all_faces) + 1 > budget:
            raise FaceBudgetExceeded(f"more than {budget} faces", len(self._all_faces) + 1)
        by_dim: list[list[Face]] = [[] for _ in range(self.dimension + 2)]
        by_dim[0].append(())
        for f in self._all_faces:
            by_dim[len(f)].append(f)
        for group in by_dim:
            group.sort()
        return by_dim


def crosscut_complex(p: Poset, u: int, v: int, max_atoms: int = DEFAULT_ATOM_LIMIT) -> CrosscutComplex:
    if isinstance(p, LabeledLattice):
        p = p.poset
    return CrosscutComplex(p, u, v, max_atoms)


def reduced_euler(c: SimplicialComplex, budget: int = DEFAULT_FACE_BUDGET) -> int:
    # index k holds faces of dimension k-1
    return sum(-f if k % 2 == 0 else f for k, f in enumerate(c.f_vector(budget)))


# -- exact homology -------------------------------------------------------
def rank_exact(rows: Sequence[dict[int, int]]) -> int:
    """Rank over Q of a sparse integer matrix given as row dicts ``{col: value}``.

    Fraction-free elimination: a row is reduced against a pivot row by
    ``p * row - row[c] * pivot`` and divided by the gcd of its entries, so all
    arithmetic stays in (arbitrary precision) integers.
    """
    pivots: dict[int, dict[int, int]] = {}
    for original in rows:
        row = {k: v for k, v in original.items() if v}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = row
                break
            a, b = piv[c], row[c]
            new = {k: a * v for k, v in row.items()}
            for k, v in piv.items():
                x = new.get(k, 0) - b * v
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                new = {k: v // g for k, v in new.items()}
            row = new
    return len(pivots)


def boundary_rows(faces_k: list[Face], index_km1: dict[Face, int]) -> list[dict[int, int]]:
    """Rows of the boundary map from k-faces to (k-1)-faces, one row per k-face."""
    rows = []
    for f in faces_k:
        row = {}
        for i in range(len(f)):
            row[index_km1[f[:i] + f[i + 1:]]] = -1 if i % 2 else 1
        rows.append(row)
    return rows


@dataclass(frozen=True)
class BettiVector:
    """Reduced rational Betti numbers; ``reduced_betti[0]`` is degree -1."""

    reduced_betti: tuple[int, ...] = ()

    def __post_init__(self):
        b = list(self.reduced_betti)
        while b and b[-1] == 0:
            b.pop()
        object.__setattr__(self, "reduced_betti", tuple(b))

    def degree(self, k: int) -> int:
        i = k + 1
        return self.reduced_betti[i] if 0 <= i < len(self.reduced_betti) else 0

    @property
    def euler(self) -> int:
        return sum(-b if i % 2 == 0 else b for i, b in enumerate(self.reduced_betti))

    @property
    def is_zero(self) -> bool:
        return not self.reduced_betti

    @classmethod
    def sphere(cls, d: int) -> "BettiVector":
        return cls(tuple([0] * (d + 1) + [1]))

    def as_dict(self) -> dict[int, int]:
        return {i - 1: b for i, b in enumerate(self.reduced_betti) if b}

    def __str__(self):
        if self.is_zero:
            return "0"
        return ",".join(f"b{k}={b}" for k, b in self.as_dict().items())


def betti_numbers(c: SimplicialComplex, budget: int = DEFAULT_FACE_BUDGET) -> BettiVector:
    faces = c.faces(budget)
    index = [{f: i for i, f in enumerate(group)} for group in faces]
    ranks = [0] * (len(faces) + 1)
    # ranks[k] = rank of the map from faces[k] (dimension k-1) down to faces[k-1]
    for k in range(1, len(faces)):
        ranks[k] = rank_exact(boundary_rows(faces[k], index[k - 1]))
    betti = [len(faces[k]) - ranks[k] - ranks[k + 1] for k in range(len(faces))]
    return BettiVector(tuple(betti))


# -- classification -------------------------------------------------------
@dataclass(frozen=True)
class HomotopyClass:
    kind: str  # "Contractible" | "Sphere" | "Unclassified"
    dimension: int | None = None

    @classmethod
    def sphere(cls, d: int) -> "HomotopyClass":
        if d < -1:
            raise InvalidInput("sphere dimension must be >= -1")
        return cls("Sphere", d)

    @property
    def is_sphere(self) -> bool:
        return self.kind == "Sphere"

    def predicted_betti(self) -> BettiVector | None:
        if self.kind == "Sphere":
            return BettiVector.sphere(self.dimension)
        if self.kind == "Contractible":
            return BettiVector(())
        return None

    def predicted_mobius(self) -> int | None:
        if self.kind == "Sphere":
            return (-1) ** self.dimension
        if self.kind == "Contractible":
            return 0
        return None

    def __str__(self):
        return f"Sphere({self.dimension})" if self.kind == "Sphere" else self.kind


CONTRACTIBLE = HomotopyClass("Contractible")


def classify_interval(lat: LabeledLattice, u: int, v: int) -> HomotopyClass:
    """Homotopy type of ``(u, v)`` predicted from the atoms of ``[u, v]``."""
    if not is_certified(lat):
        raise NotVerified(f"{lat.family_tag}: labeling is not a verified SB-labeling")
    p = lat.poset
    if not p.lt(u, v):
        raise InvalidInput(f"classification needs {u} < {v}")
    atoms = p.atoms(u, v)
    if p.join_all(atoms) == v:
        return HomotopyClass.sphere(len(atoms) - 2)
    return CONTRACTIBLE


@dataclass(frozen=True)
class CrosscutComparison:
    euler_crosscut: int
    euler_order: int
    betti_crosscut: BettiVector | None
    betti_order: BettiVector | None
    partial: bool

    @property
    def agree(self) -> bool:
        if self.euler_crosscut != self.euler_order:
            return False
        if self.betti_crosscut is not None and self.betti_order is not None:
            return self.betti_crosscut == self.betti_order
        return True

    def __bool__(self):
        return self.agree


def crosscut_vs_order_check(
    p: Poset, u: int, v: int, face_budget: int = DEFAULT_FACE_BUDGET
) -> CrosscutComparison:
    if isinstance(p, LabeledLattice):
        p = p.poset
    cc = crosscut_complex(p, u, v)
    oc = interval_order_complex(p, u, v)
    e_cc = reduced_euler(cc, face_budget)
    e_oc = reduced_euler(oc)
    b_cc = b_oc = None
    partial = False
    try:
        b_cc = betti_numbers(cc, face_budget)
        b_oc = betti_numbers(oc, face_budget)
    except FaceBudgetExceeded:
        partial = True
    return CrosscutComparison(e_cc, e_oc, b_cc, b_oc, partial)


ROW_FIELDS = ("u", "v", "atoms_d", "predicted_class", "mobius", "euler_crosscut", "betti", "match")


def classification_rows(
    lat: LabeledLattice,
    pairs: Iterable[tuple[int, int]] | None = None,
    face_budget: int = DEFAULT_FACE_BUDGET,
) -> list[dict]:
    """One comparison row per interval ``u < v``: prediction against every oracle."""
    p = lat.poset
    if pairs is None:
        pairs = list(p.comparable_pairs(strict=True))
    rows_mu: dict[int, dict[int, int]] = {}
    out = []
    for u, v in pairs:
        if u not in rows_mu:
            rows_mu[u] = mobius_row(p, u)
        mu = rows_mu[u][v]
        cls = classify_interval(lat, u, v)
        cmp = crosscut_vs_order_check(p, u, v, face_budget)
        match = cmp.agree and cls.predicted_mobius() == mu == cmp.euler_order
        if cmp.betti_order is not None:
            match = match and cmp.betti_order == cls.predicted_betti()
        out.append({
            "u": u,
            "v": v,
            "atoms_d": len(p.atoms(u, v)),
            "predicted_class": str(cls),
            "mobius": mu,
            "euler_crosscut": cmp.euler_crosscut,
            "betti": str(cmp.betti_order) if cmp.betti_order is not None else "partial",
            "match": bool(match),
        })
    return out
