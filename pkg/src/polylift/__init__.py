"""polylift: exact rational toolkit for extended formulations of polytopes."""

from .kernel import (
    AffineMap,
    HPoly,
    LPResult,
    PolyEqualResult,
    VPoly,
    affine_hull,
    fm_project,
    hull,
    lp_solve,
    poly_equal,
    remove_redundancy,
    vertices,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "HPoly",
    "LPResult",
    "PolyEqualResult",
    "VPoly",
    "affine_hull",
    "fm_project",
    "hull",
    "lp_solve",
    "poly_equal",
    "remove_redundancy",
    "vertices",
    "__version__",
]
