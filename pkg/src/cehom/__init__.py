"""Homology of unordered configuration spaces of surfaces via Chevalley-Eilenberg
complexes of shifted Lie algebras, over Q and over prime fields."""

from __future__ import annotations

from .algebra import GradedCommutativeAlgebra, SurfaceVariant, TensorLieAlgebra, surface_cohomology, tensor_lie
from .ce import CEComplex, CEMonomial, Surface, betti_table, ce_basis, ce_differential, ce_homology
from .e2 import E2Report, compare, e2_weight_3_char3, e2_weight_p, extra_unary_classes, torsion_verdict
from .linalg import BasedSpace, Bidegree, DimensionTable, SparseMap, homology_dims, rank
from .scalar import QQ, PrimeField, Rationals, field_create
from .shifted_lie import Bracket, CharMode, Generator, LieBasis, free_lie_basis

__all__ = [
    "BasedSpace", "Bidegree", "Bracket", "CEComplex", "CEMonomial", "CharMode", "DimensionTable",
    "E2Report", "Generator", "GradedCommutativeAlgebra", "LieBasis", "PrimeField", "QQ", "Rationals",
    "SparseMap", "Surface", "SurfaceVariant", "TensorLieAlgebra", "betti_table", "ce_basis",
    "ce_differential", "ce_homology", "compare", "e2_weight_3_char3", "e2_weight_p",
    "extra_unary_classes", "field_create", "free_lie_basis", "homology_dims", "rank",
    "surface_cohomology", "tensor_lie", "torsion_verdict",
]
__version__ = "0.1.0"
