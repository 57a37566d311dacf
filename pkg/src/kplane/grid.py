"""
Uniform grids and unitary discrete Fourier analysis on [-L, L)^d.

Conventions
-----------
Primal nodes are ``x_m = -L + h*m`` with ``h = 2L/n`` and ``m = 0..n-1`` per
axis, so the grid is node-centred with ``-L`` included and ``+L`` excluded.
Dual nodes are ``xi_m = (pi/L)*m`` with ``m = -n/2..n/2-1``, stored in that
(centred) order. Arrays carry shape ``(n,)*d`` and are linearized row-major
(C order) over the axes in ascending index.

The forward transform is the quadrature of the unitary Fourier integral

    F(xi_m) = (2 pi)^(-d/2) h^d sum_x f(x) exp(-i x . xi_m),

which is an exact trigonometric sum; ``inverse_ft`` is its exact inverse.
Off-grid evaluation of the same sum is a direct nonuniform DFT.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "GridSpec",
    "GridFunction",
    "SpectralFunction",
    "OffGridSpectrum",
    "sample",
    "forward_ft",
    "inverse_ft",
    "evaluate_spectrum_at",
    "interpolate_at",
    "pad",
    "DEFAULT_PROFILES",
    "default_spec",
]

# Budget for the intermediate (points x n^(d-1)) block of the NUDFT contraction.
_CHUNK_ENTRIES = 1 << 22


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid with ``n`` samples per axis on ``[-half_width, half_width)^d``."""

    d: int
    n: int
    half_width: float

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.d}")
        if int(self.n) != self.n or self.n < 8 or self.n % 2:
            raise ValueError(f"n must be an even integer >= 8, got {self.n}")
        if not (self.half_width > 0 and np.isfinite(self.half_width)):
            raise ValueError(f"half_width must be positive, got {self.half_width}")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "half_width", float(self.half_width))

    @property
    def h(self) -> float:
        return 2.0 * self.half_width / self.n

    @property
    def dxi(self) -> float:
        return np.pi / self.half_width

    @property
    def nyquist(self) -> float:
        """Nyquist radius ``K = pi n / (2L)``."""
        return np.pi * self.n / (2.0 * self.half_width)

    @property
    def shape(self) -> tuple:
        return (self.n,) * self.d

    @property
    def origin_index(self) -> int:
        """Per-axis index of the zero node, identical on the primal and dual grids."""
        return self.n // 2

    def axis(self) -> np.ndarray:
        return -self.half_width + self.h * np.arange(self.n)

    def dual_axis(self) -> np.ndarray:
        return self.dxi * np.arange(-self.n // 2, self.n // 2)

    def nodes(self) -> np.ndarray:
        """Primal nodes as an array of shape ``(n,)*d + (d,)``."""
        return _mesh(self.axis(), self.d)

    def dual_nodes(self) -> np.ndarray:
        return _mesh(self.dual_axis(), self.d)

    def radii(self) -> np.ndarray:
        return np.sqrt(np.sum(self.nodes() ** 2, axis=-1))

    def dual_radii(self) -> np.ndarray:
        return np.sqrt(np.sum(self.dual_nodes() ** 2, axis=-1))

    def refined(self, factor: int = 2) -> "GridSpec":
        return type(self)(self.d, self.n * factor, self.half_width)

    def padded(self, factor: int) -> "GridSpec":
        """Same spacing on a box ``factor`` times wider."""
        return type(self)(self.d, self.n * factor, self.half_width * factor)

    def to_dict(self) -> dict:
        return {"d": self.d, "n": self.n, "half_width": self.half_width}


def _mesh(axis: np.ndarray, d: int) -> np.ndarray:
    return np.stack(np.meshgrid(*([axis] * d), indexing="ij"), axis=-1)


DEFAULT_PROFILES = {
    "default": {1: (64, 8.0), 2: (64, 8.0), 3: (32, 6.0), 4: (16, 5.0)},
    "fine": {1: (128, 8.0), 2: (128, 8.0), 3: (64, 6.0), 4: (32, 5.0)},
}


def default_spec(d: int, profile: str = "default") -> GridSpec:
    try:
        n, L = DEFAULT_PROFILES[profile][d]
    except KeyError:
        raise ValueError(f"no grid profile {profile!r} for d={d}") from None
    return GridSpec(d, n, L)


def _check_values(values: np.ndarray, spec: GridSpec, what: str) -> np.ndarray:
    values = np.asarray(values, dtype=complex)
    if values.shape != spec.shape:
        if values.size == spec.n**spec.d:
            values = values.reshape(spec.shape)
        else:
            raise ValueError(
                f"{what} needs {spec.n ** spec.d} values for {spec}, got {values.size}"
            )
    if not np.all(np.isfinite(values)):
        raise ValueError(f"{what} has non-finite entries")
    return values


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples of a function at the primal nodes of ``spec``."""

    spec: GridSpec
    values: np.ndarray
    clipped: bool = False

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.values, self.spec, "GridFunction"))

    def __add__(self, other: "GridFunction") -> "GridFunction":
        return GridFunction(self.spec, self.values + other.values)

    def __mul__(self, c) -> "GridFunction":
        return GridFunction(self.spec, c * self.values)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class SpectralFunction:
    """Samples of a spectrum at the dual nodes of ``spec`` (centred order)."""

    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "values", _check_values(self.values, self.spec, "SpectralFunction")
        )


@dataclass(frozen=True, eq=False)
class OffGridSpectrum:
    """Result of :func:`evaluate_spectrum_at`.

    ``beyond_nyquist[i]`` flags points outside the ball ``|xi| <= K``; their
    values are still the exact trigonometric sum but no longer approximate
    the continuous transform.
    """

    points: np.ndarray
    values: np.ndarray
    beyond_nyquist: np.ndarray

    @property
    def flagged(self) -> bool:
        return bool(np.any(self.beyond_nyquist))


def sample(field: Callable[[np.ndarray], np.ndarray], spec: GridSpec) -> GridFunction:
    """Evaluate ``field`` at every primal node.

    ``field`` receives an array of shape ``(..., d)`` and returns values of
    shape ``(...)``.
    """
    x = spec.nodes()
    values = np.asarray(field(x), dtype=complex)
    values = np.broadcast_to(values, spec.shape)
    bad = ~np.isfinite(values)
    if np.any(bad):
        idx = tuple(int(i) for i in np.argwhere(bad)[0])
        raise ValueError(f"field is not finite at node {idx} (x = {x[idx].tolist()})")
    return GridFunction(spec, np.array(values))


def _sign(spec: GridSpec) -> np.ndarray:
    # exp(-i x_n xi_m) = (-1)^m exp(-2 pi i n m / N) for x_n = -L + h n
    return (-1.0) ** np.arange(-spec.n // 2, spec.n // 2)


def _apply_axis_factor(a: np.ndarray, fac: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    for ax in axes:
        shape = [1] * a.ndim
        shape[ax] = fac.size
        a = a * fac.reshape(shape)
    return a


def fft_forward(values: np.ndarray, spec: GridSpec, axes: Sequence[int] | None = None) -> np.ndarray:
    """Unitary forward transform over ``axes`` (default: the trailing ``spec.d`` axes)."""
    if axes is None:
        axes = tuple(range(values.ndim - spec.d, values.ndim))
    out = np.fft.fftshift(np.fft.fftn(values, axes=axes), axes=axes)
    out = _apply_axis_factor(out, _sign(spec), axes)
    return out * ((2 * np.pi) ** (-spec.d / 2) * spec.h**spec.d)


def fft_inverse(values: np.ndarray, spec: GridSpec, axes: Sequence[int] | None = None) -> np.ndarray:
    if axes is None:
        axes = tuple(range(values.ndim - spec.d, values.ndim))
    tmp = _apply_axis_factor(values, _sign(spec), axes)
    out = np.fft.ifftn(np.fft.ifftshift(tmp, axes=axes), axes=axes)
    return out * ((2 * np.pi) ** (-spec.d / 2) * spec.dxi**spec.d * spec.n**spec.d)


def forward_ft(f: GridFunction) -> SpectralFunction:
    return SpectralFunction(f.spec, fft_forward(f.values, f.spec))


def inverse_ft(F: SpectralFunction) -> GridFunction:
    return GridFunction(F.spec, fft_inverse(F.values, F.spec))


def contract_phases(values: np.ndarray, phases: Sequence[np.ndarray]) -> np.ndarray:
    """Evaluate ``sum_m values[m] * prod_a phases[a][p, m_a]`` for every row ``p``.

    This is the workhorse of the direct NUDFT: ``phases[a]`` has shape
    ``(P, n)`` and holds the per-axis exponentials. The first contraction is a
    matrix product, the remaining ones are batched; summation order is fixed
    by the chunking, which depends only on the problem shape.
    """
    d = values.ndim
    n = values.shape[0]
    P = phases[0].shape[0]
    rest = n ** (d - 1)
    flat = values.reshape(n, rest)
    out = np.empty(P, dtype=complex)
    chunk = max(1, _CHUNK_ENTRIES // max(rest, 1))
    for lo in range(0, P, chunk):
        hi = min(P, lo + chunk)
        t = phases[0][lo:hi] @ flat
        for a in range(1, d):
            t = t.reshape(hi - lo, n, -1)
            t = np.matmul(phases[a][lo:hi, None, :], t)[:, 0, :]
        out[lo:hi] = t.reshape(hi - lo)
    return out


def evaluate_spectrum_at(f: GridFunction, points) -> OffGridSpectrum:
    """Direct nonuniform DFT of ``f`` at arbitrary frequency vectors.

    Parameters
    ----------
    f : GridFunction
    points : array_like, shape (P, d)

    Returns
    -------
    OffGridSpectrum
        Values of ``(2 pi)^(-d/2) h^d sum_x f(x) exp(-i x . xi)``; points
        beyond the Nyquist ball are flagged, not rejected.
    """
    spec = f.spec
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[-1] != spec.d:
        raise ValueError(f"points must have {spec.d} components, got shape {pts.shape}")
    x = spec.axis()
    phases = [np.exp(-1j * np.outer(pts[:, a], x)) for a in range(spec.d)]
    vals = contract_phases(f.values, phases)
    vals *= (2 * np.pi) ** (-spec.d / 2) * spec.h**spec.d
    outside = np.sqrt(np.sum(pts**2, axis=1)) > spec.nyquist * (1 + 1e-12)
    return OffGridSpectrum(pts, vals, outside)


def interpolate_at(f: GridFunction, points) -> np.ndarray:
    """Band-limited (trigonometric) interpolation of ``f`` at off-grid points.

    Uses the inverse sum over the dual grid, so it reproduces ``f`` exactly at
    the primal nodes.
    """
    spec = f.spec
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    F = forward_ft(f).values
    xi = spec.dual_axis()
    phases = [np.exp(1j * np.outer(pts[:, a], xi)) for a in range(spec.d)]
    vals = contract_phases(F, phases)
    return vals * ((2 * np.pi) ** (-spec.d / 2) * spec.dxi**spec.d)


def pad(f: GridFunction, factor: int) -> GridFunction:
    """Zero-extend ``f`` to :meth:`GridSpec.padded`; nodes keep their positions."""
    if int(factor) != factor or factor < 1:
        raise ValueError("padding factor must be a positive integer")
    big = f.spec.padded(int(factor))
    off = (big.n - f.spec.n) // 2
    out = np.zeros(big.shape, dtype=complex)
    out[(slice(off, off + f.spec.n),) * f.spec.d] = f.values
    return GridFunction(big, out, f.clipped)
