"""SU(2)-symmetric gauge fields on S^2 = SU(2)/U(1) and principal bundle classification.

Submodules: ``lie_core`` (su(2) arithmetic), ``coset_geometry`` (charts and
Maurer-Cartan form), ``forms`` (Lie-valued forms, Hodge star, quadrature),
``connection`` (intertwiner, invariant potentials, curvature, gauges),
``action`` (Yang-Mills action and extrema), ``bundles`` (classification),
``verify`` (invariant suites) and ``cli``.
"""
from .action import ActionConfig, action_scan, action_value, find_extrema
from .bundles import classify, classify_sphere, pi_table, surface_cohomology
from .connection import FIELD_SCALE, assemble_potential, build_intertwiner, curvature_direct, curvature_reduced
from .lie_core import PAIRING_CONSTANT

__version__ = "0.1.0"

__all__ = [
    "ActionConfig", "action_scan", "action_value", "find_extrema",
    "classify", "classify_sphere", "pi_table", "surface_cohomology",
    "FIELD_SCALE", "assemble_potential", "build_intertwiner", "curvature_direct",
    "curvature_reduced", "PAIRING_CONSTANT",
]
