from .divided import groth_recursive, isobaric_divided_difference, truncated_stable
from .expansion import GExpansion, expand_in_G_basis, multiply_G
from .gpoly import g_residue, symmetrization_formula
from .permutations import Permutation, grassmannian_perm, partitions_in_box
from .schur import jacobi_trudi, schur_residue
from .straighten import straighten

__all__ = [
    "GExpansion", "Permutation", "expand_in_G_basis", "g_residue", "grassmannian_perm",
    "groth_recursive", "isobaric_divided_difference", "jacobi_trudi", "multiply_G",
    "partitions_in_box", "schur_residue", "straighten", "symmetrization_formula",
    "truncated_stable",
]
