"""Finite lattices with SB-labelings: construction, verification and topological oracles."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BudgetExceeded,
    CycleDetected,
    InvalidInput,
    NotUnique,
    NotVerified,
    RedundantCover,
)
from .labeling import (  # noqa: E402
    EdgeLabeling,
    LabeledLattice,
    equivalence_crosscheck,
    sb_exists,
    third_atom_obstruction,
    verify_index2,
    verify_sb_full,
)
from .poset import Poset, build_poset, is_lattice, mobius, mobius_table  # noqa: E402
from .topology import betti_numbers, classify_interval, crosscut_complex, order_complex, reduced_euler  # noqa: E402

__all__ = [
    "BudgetExceeded", "CycleDetected", "InvalidInput", "NotUnique", "NotVerified", "RedundantCover",
    "EdgeLabeling", "LabeledLattice", "equivalence_crosscheck", "sb_exists", "third_atom_obstruction",
    "verify_index2", "verify_sb_full", "Poset", "build_poset", "is_lattice", "mobius", "mobius_table",
    "betti_numbers", "classify_interval", "crosscut_complex", "order_complex", "reduced_euler",
]
