"""Branching rules, wells and matrix valued orthogonal polynomials for rank one
multiplicity free pairs (G, K)."""
from .branching import (
    BranchingTable,
    FaceError,
    OracleError,
    branch_f4_spin9,
    branch_kostant,
    branch_oracle,
    branch_sp_closed,
    branch_sp_lepowsky,
    branch_spin7_g2,
    branch_spin9_spin7,
    branch_su3_su2,
)
from .kostant import VectorMultiset
from .pairs import PairDescriptor, get_pair
from .rootsys import CapExceeded, LatticeError, RootSystem, build_root_system
from .wells import Well, bottom_closed_form, make_well, multiplicity, project_to_M

__version__ = "0.1.0"

__all__ = [
    "BranchingTable", "FaceError", "OracleError", "branch_f4_spin9", "branch_kostant",
    "branch_oracle", "branch_sp_closed", "branch_sp_lepowsky", "branch_spin7_g2",
    "branch_spin9_spin7", "branch_su3_su2", "VectorMultiset", "PairDescriptor", "get_pair",
    "CapExceeded", "LatticeError", "RootSystem", "build_root_system", "Well",
    "bottom_closed_form", "make_well", "multiplicity", "project_to_M",
]
