"""Exact algebra of Seifert forms: invariants, metabolizers and algebraic cobordism."""

from .abgroup import FgAbelianGroup, GroupHom, Subgroup, cyclic, free, is_exact_at
from .cobordism import (CobordismReport, FailedClause, diagonal_witness, search_witness,
                        stabilize, swap_witness, verify_witness)
from .exactlink import SeifertHomologyData, is_exact_surface
from .forms import BilinearForm, boundary_homology, invariants, signature
from .witt import Verdict, find_metabolizer, verify_metabolizer
from .zlattice import IntMatrix, Submodule, hnf, snf

__version__ = "0.1.0"
