"""Both ring structures on the inertia orbifold of a symmetric product of M."""

from .model import CohomologyModel, ModelError, builtin_model, load_model
from .products import (
    GysinPreimageError,
    InertiaElement,
    OrbitVector,
    SectorVector,
    act,
    cs_product,
    excess_class,
    excess_multiplicities,
    pushforward,
    restrict,
    sn_project,
    vip_product,
)
from .table import MultiplicationTable, SectorAlgebra, TableSizeError, invariant_basis, multiplication_table

__all__ = [
    "CohomologyModel",
    "GysinPreimageError",
    "InertiaElement",
    "MultiplicationTable",
    "ModelError",
    "OrbitVector",
    "SectorAlgebra",
    "SectorVector",
    "TableSizeError",
    "act",
    "builtin_model",
    "cs_product",
    "excess_class",
    "excess_multiplicities",
    "invariant_basis",
    "load_model",
    "multiplication_table",
    "pushforward",
    "restrict",
    "sn_project",
    "vip_product",
]
