"""Numerical k-plane transform on R^d, norms on the affine Grassmannian and
verification suites for the identities and inequalities relating them."""

__version__ = "0.1.0"

from .admissibility import ExponentQuery, Verdict, check, scaling_t
from .fields import AnalyticField, bump, catalog, divergence_profile, gaussian
from .grassmann import (
    AffinePlane,
    Frame,
    GrassmannQuadrature,
    circle_quadrature,
    haar_sample,
    polar_identity_residual,
    total_measure,
)
from .grid import (
    GridFunction,
    GridSpec,
    SpectralFunction,
    default_spec,
    evaluate_spectrum_at,
    forward_ft,
    inverse_ft,
    sample,
)
from .littlewood_paley import DyadicPartition, build_partition, project, project_fiber, sandwich_constants
from .transform import (
    FiberField,
    FiberGrid,
    FiberSpectrum,
    apply_fiber_multiplier,
    fiber_ft,
    fiber_ift,
    transform_direct,
    transform_slice,
)

__all__ = [name for name in dir() if not name.startswith("_")]
