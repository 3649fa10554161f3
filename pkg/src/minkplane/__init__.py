"""Geometry of normed (Minkowski) planes.

Orthogonality notions, angular bisectors, C-orthocentric systems and sampled
probes that measure how far a norm is from Euclidean.
"""

from ._kernels import NUMBA_ENABLED
from .bisectors import AngleSpec, busemann_bisector, dual_glogovskij_defect, glogovskij_defect
from .numerics import ConstructionError
from .orthogonality import (
    Chord,
    birkhoff_defect,
    birkhoff_partner,
    chord,
    chordal_check,
    chordal_partner,
    isosceles_defect,
    isosceles_partner,
)
from .plane import (
    Circumference,
    Functional,
    Line,
    NormSpec,
    Plane,
    Ray,
    Segment,
    dist_point_line,
    dist_point_ray,
    dist_point_segment,
    parse_norm,
    regular_polygon,
)
from .probes import PROBE_IDS, ProbeConfig, ProbeReport, probe, run_battery
from .scenarios import IsoPair, ScenarioKind, build_scenario, family_x3, iso_seed, phi, separation_check
from .systems import OrthoScenario, Triangle, antitriangle, build_system, c_orthocenter, circumcenters, radical_axis

__version__ = "0.1.0"
