"""Geometry of tangential polygons and bounds on their torsional rigidity."""
from .atlas import (
    ShapeFamily,
    isosceles,
    kite,
    regular_ngon,
    rhombus,
    sample_random,
    triangle_angles,
)
from .bounds import (
    BoundsReport,
    RigidityQuadratic,
    SigmaPair,
    bounds_report,
    classical_bounds,
    q0_roots_from_sigmas,
    rigidity_quadratic,
    sigma_functionals,
    thin_asymptote,
)
from .feasibility import FeasibilityResult, circulant_matrix, solve_tangent_lengths
from .polygon import (
    Disk,
    GeometricReport,
    TangentialPolygon,
    average_angles,
    from_angles,
    from_tangent_lengths,
    functionals,
    vertices,
)
from .tables import reference_table
from .torsion import TorsionSolution, distance_moment, solve_torsion

__all__ = [
    "BoundsReport", "Disk", "FeasibilityResult", "GeometricReport", "RigidityQuadratic",
    "ShapeFamily", "SigmaPair", "TangentialPolygon", "TorsionSolution", "average_angles",
    "bounds_report", "circulant_matrix", "classical_bounds", "distance_moment",
    "from_angles", "from_tangent_lengths", "functionals", "isosceles", "kite",
    "q0_roots_from_sigmas", "reference_table", "regular_ngon", "rhombus",
    "rigidity_quadratic", "sample_random", "sigma_functionals", "solve_tangent_lengths",
    "solve_torsion", "thin_asymptote", "triangle_angles", "vertices",
]
