"""
Smooth dyadic resolution of unity and Littlewood-Paley projections.

The partition is built from a radial ramp ``psi`` equal to 1 on ``[0, 1]``
and 0 on ``[2, inf)``:

    phi_0(xi) = psi(|xi|),    phi_j(xi) = psi(2^-j |xi|) - psi(2^(1-j) |xi|),  j >= 1,

so that ``sum_{j <= J} phi_j = psi(2^-J |.|)`` equals 1 on ``|xi| <= 2^J``.
Projections act on the dual grid only; on the affine Grassmannian they act
on the fiber frequency ``eta`` of every frame.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .grid import GridFunction, GridSpec, fft_forward, fft_inverse
from .transform import FiberField, fiber_ft, fiber_ift

__all__ = [
    "RAMPS",
    "DyadicPartition",
    "build_partition",
    "default_jmax",
    "default_partition",
    "project",
    "project_fiber",
    "band_stack",
    "fiber_band_stack",
    "sandwich_ratio",
    "sandwich_constants",
    "BandClippedWarning",
]


class BandClippedWarning(UserWarning):
    """A dyadic band extends past the Nyquist radius of the grid."""


def _glue(t, power):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos] ** power)
    return out


def _ramp(r, power):
    r = np.asarray(r, dtype=float)
    a = _glue(2.0 - r, power)
    b = _glue(r - 1.0, power)
    return a / (a + b)


# "exp" is the reference ramp; "exp2" swaps the glue for exp(-1/t^2) and is
# used only to spot-check that conclusions do not hinge on the ramp.
RAMPS = {"exp": 1, "exp2": 2}


@dataclass(frozen=True)
class DyadicPartition:
    """Bands ``phi_0 .. phi_{j_max}`` generated by the ramp ``ramp``."""

    j_max: int
    ramp: str = "exp"

    def __post_init__(self):
        if int(self.j_max) != self.j_max or self.j_max < 1:
            raise ValueError(f"j_max must be an integer >= 1, got {self.j_max}")
        if self.ramp not in RAMPS:
            raise ValueError(f"unknown ramp {self.ramp!r}; known: {sorted(RAMPS)}")

    @property
    def partition_id(self) -> str:
        return f"lp:{self.ramp}:{self.j_max}"

    @property
    def validity_radius(self) -> float:
        """Radius ``2^j_max`` up to which the bands sum to 1."""
        return float(2.0**self.j_max)

    def psi(self, r):
        return _ramp(r, RAMPS[self.ramp])

    def phi(self, j: int, r):
        """Band ``j`` as a function of the radius ``r = |xi|``."""
        if j < 0 or j > self.j_max:
            raise ValueError(f"band index {j} outside 0..{self.j_max}")
        r = np.asarray(r, dtype=float)
        if j == 0:
            return self.psi(r)
        return self.psi(r / 2.0**j) - self.psi(r / 2.0 ** (j - 1))

    def bands(self, r) -> np.ndarray:
        """All bands stacked along a new leading axis."""
        return np.stack([self.phi(j, r) for j in range(self.j_max + 1)])

    def to_dict(self) -> dict:
        return {"j_max": self.j_max, "ramp": self.ramp}


def build_partition(j_max: int, ramp: str = "exp") -> DyadicPartition:
    return DyadicPartition(j_max, ramp)


def default_jmax(spec: GridSpec) -> int:
    """``floor(log2 K) - 1``: every band then lies inside the Nyquist ball."""
    return max(1, int(math.floor(math.log2(spec.nyquist))) - 1)


def default_partition(spec: GridSpec, ramp: str = "exp") -> DyadicPartition:
    return DyadicPartition(default_jmax(spec), ramp)


def _clipped(j: int, spec: GridSpec) -> bool:
    return 2.0 ** (j + 1) > spec.nyquist * (1 + 1e-12)


def _warn_clipped(j, spec):
    warnings.warn(
        f"band {j} reaches |xi| = {2.0 ** (j + 1):g} beyond the Nyquist radius {spec.nyquist:.4g}",
        BandClippedWarning,
        stacklevel=3,
    )


def project(f: GridFunction, j: int, partition: DyadicPartition) -> GridFunction:
    """``M_j f``: multiply the spectrum by ``phi_j`` and transform back."""
    spec = f.spec
    clipped = _clipped(j, spec)
    if clipped:
        _warn_clipped(j, spec)
    F = fft_forward(f.values, spec) * partition.phi(j, spec.dual_radii())
    return GridFunction(spec, fft_inverse(F, spec), clipped=clipped)


def project_fiber(u: FiberField, j: int, partition: DyadicPartition) -> FiberField:
    """Fiberwise projection, with the band evaluated at ``|eta|``."""
    clipped = _clipped(j, u.fiber)
    if clipped:
        _warn_clipped(j, u.fiber)
    U = fiber_ft(u)
    m = partition.phi(j, u.fiber.dual_radii())
    out = fiber_ift(type(U)(U.quad, U.fiber, U.values * m[None]))
    return FiberField(u.quad, u.fiber, out.values, clipped=clipped)


def band_stack(f: GridFunction, partition: DyadicPartition) -> tuple:
    """All projections ``M_0 f .. M_{j_max} f`` as one array and a clipped flag."""
    spec = f.spec
    clipped = _clipped(partition.j_max, spec)
    if clipped:
        _warn_clipped(partition.j_max, spec)
    F = fft_forward(f.values, spec)
    phis = partition.bands(spec.dual_radii())
    return fft_inverse(phis * F[None], spec), clipped


def fiber_band_stack(u: FiberField, partition: DyadicPartition) -> tuple:
    """Array of shape ``(j_max+1, frames, fiber...)`` and a clipped flag."""
    fiber = u.fiber
    clipped = _clipped(partition.j_max, fiber)
    if clipped:
        _warn_clipped(partition.j_max, fiber)
    axes = tuple(range(2, fiber.d + 2))
    U = fft_forward(u.values, fiber, tuple(range(1, fiber.d + 1)))
    phis = partition.bands(fiber.dual_radii())
    return fft_inverse(phis[:, None] * U[None], fiber, axes), clipped


def sandwich_ratio(s: float, partition: DyadicPartition, radii) -> np.ndarray:
    """``sum_j 2^(2js) phi_j(r)^2 / (1 + r^2)^s`` at each radius."""
    r = np.asarray(radii, dtype=float)
    weights = 4.0 ** (s * np.arange(partition.j_max + 1))
    total = np.tensordot(weights, partition.bands(r) ** 2, axes=1)
    return total / (1.0 + r * r) ** s


def sandwich_constants(s: float, partition: DyadicPartition, radii=None) -> tuple:
    """Smallest and largest value of :func:`sandwich_ratio` over ``radii``.

    Radii must lie in ``[0, 2^j_max]``, where the finite sum over bands
    coincides with the full series. The default sample is 10^4 equispaced
    radii on that interval.
    """
    R = partition.validity_radius
    if radii is None:
        radii = np.linspace(0.0, R, 10_000)
    r = np.asarray(radii, dtype=float)
    bad = (r < 0) | (r > R * (1 + 1e-12))
    if np.any(bad):
        raise ValueError(f"radius {r[bad][0]:g} outside the validity range [0, {R:g}]")
    vals = sandwich_ratio(s, partition, r)
    return float(vals.min()), float(vals.max())
