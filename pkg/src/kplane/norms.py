"""
Norms on R^d and on the affine Grassmannian as quadratures over the discrete
carriers.

Spatial integrals are Riemann sums on the primal grid; spectral integrals are
Riemann sums on the dual grid (spacing ``pi/L``). On the Grassmannian the
outer integral over subspaces uses the weights of the frame quadrature and
the inner one a Riemann sum over the fiber grid. Weighted Sobolev norms have
an ``|xi|^(t_w p)`` factor, which is integrated with corrected lattice
weights (see :mod:`kplane.lattice`) unless ``corrected=False``.

Functions on the Grassmannian accept ``with_error=True`` and then return
``(value, sigma)``, where ``sigma`` propagates the Monte Carlo standard error
of the outer integral (0 for deterministic rules).
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .grassmann import total_measure
from .grid import GridFunction, SpectralFunction, fft_forward
from .lattice import singular_weights
from .littlewood_paley import DyadicPartition, band_stack, fiber_band_stack
from .transform import FiberField, FiberSpectrum, fiber_ft

__all__ = [
    "lp_norm",
    "mixed_norm",
    "lq_norm_g",
    "sobolev",
    "sobolev_g",
    "weighted_sobolev",
    "weighted_sobolev_g",
    "besov",
    "tl",
    "besov_g",
    "tl_g",
    "sobolev_lower_constant",
    "NormResult",
]


def _check_exponent(name, x):
    if not (x >= 1):
        raise ValueError(f"exponent {name} must lie in [1, inf], got {x}")


def _lp_sum(values, p, cell, axes=None):
    a = np.abs(values)
    if math.isinf(p):
        return np.max(a, axis=axes)
    return (cell * np.sum(a**p, axis=axes)) ** (1.0 / p)


def _lr(x, r, axis=0):
    if math.isinf(r):
        return np.max(x, axis=axis)
    return np.sum(x**r, axis=axis) ** (1.0 / r)


def _outer(quad, per_frame, q, with_error):
    """``(sum_i w_i v_i)^(1/q)`` with delta-method error propagation."""
    if math.isinf(q):
        val = float(np.max(per_frame))
        return (val, 0.0) if with_error else val
    T, sig = quad.integrate(per_frame)
    val = T ** (1.0 / q) if T > 0 else 0.0
    if not with_error:
        return val
    err = val * sig / (q * T) if T > 0 else 0.0
    return val, err


def lp_norm(f: GridFunction, p) -> float:
    """``(h^d sum |f|^p)^(1/p)``, or the max for ``p = inf``."""
    _check_exponent("p", p)
    return float(_lp_sum(f.values, p, f.spec.h**f.spec.d))


def _mixed_values(values, quad, fiber, q, t, with_error=False):
    axes = tuple(range(1, fiber.d + 1))
    inner = _lp_sum(values, t, fiber.h**fiber.d, axes)
    per = inner if math.isinf(q) else inner**q
    return _outer(quad, per, q, with_error)


def mixed_norm(u: FiberField, q, t, with_error: bool = False):
    """``L^q_alpha(L^t_y)``: inner fiber norm, outer norm over subspaces."""
    _check_exponent("q", q)
    _check_exponent("t", t)
    return _mixed_values(u.values, u.quad, u.fiber, q, t, with_error)


def lq_norm_g(u: FiberField, q, with_error: bool = False):
    """``L^q`` on the affine Grassmannian as a single double integral."""
    _check_exponent("q", q)
    a = np.abs(u.values).reshape(len(u.quad), -1)
    if math.isinf(q):
        per = a.max(axis=1)
    else:
        per = u.fiber.h**u.fiber.d * np.sum(a**q, axis=1)
    return _outer(u.quad, per, q, with_error)


def _spectrum(f):
    if isinstance(f, SpectralFunction):
        return f.spec, f.values
    return f.spec, fft_forward(f.values, f.spec)


def _fiber_spectrum(u):
    if isinstance(u, FiberField):
        u = fiber_ft(u)
    return u


def sobolev(f, s: float) -> float:
    """``H^s(R^d)`` norm from the dual-grid sum of ``(1+|xi|^2)^s |f^|^2``."""
    spec, F = _spectrum(f)
    r2 = spec.dual_radii() ** 2
    return float(np.sqrt(spec.dxi**spec.d * np.sum((1 + r2) ** s * np.abs(F) ** 2)))


def sobolev_g(u, s: float, with_error: bool = False):
    """``H^s`` on the affine Grassmannian: fiber frequencies only."""
    U = _fiber_spectrum(u)
    fb = U.fiber
    w = (1 + fb.dual_radii() ** 2) ** s
    per = fb.dxi**fb.d * np.sum((w[None] * np.abs(U.values) ** 2).reshape(len(U.quad), -1), axis=1)
    return _outer(U.quad, per, 2, with_error)


def _weight_grid(spec, a, corrected):
    if corrected:
        return singular_weights(spec.d, spec.n, spec.dxi, a)
    r = spec.dual_radii()
    W = np.zeros_like(r)
    nz = r > 0
    W[nz] = spec.dxi**spec.d * r[nz] ** a
    if a == 0:
        W[~nz] = spec.dxi**spec.d
    return W


def _check_weighted(p, t_w, dim, where):
    if math.isinf(p) or not p >= 1:
        raise ValueError(f"weighted Sobolev norms need 1 <= p < inf, got {p}")
    if not t_w > -dim / p:
        raise ValueError(f"weight exponent t_w = {t_w} must exceed -{dim}/p = {-dim / p:.6g} {where}")


def weighted_sobolev(f, s: float, p: float, t_w: float, corrected: bool = True) -> float:
    """``H^{s,p}_{t_w}(R^d)``: L^p norm of ``|xi|^t_w (1+|xi|^2)^((s-t_w)/2) |f^|``.

    With ``corrected=False`` the plain dual-grid Riemann sum is used, the
    zero bin carrying weight 0 when ``t_w != 0``.
    """
    spec, F = _spectrum(f)
    _check_weighted(p, t_w, spec.d, "on R^d")
    W = _weight_grid(spec, t_w * p, corrected)
    g = (1 + spec.dual_radii() ** 2) ** ((s - t_w) * p / 2) * np.abs(F) ** p
    total = float(np.sum(W * g))
    return max(total, 0.0) ** (1.0 / p)


def weighted_sobolev_g(u, s: float, p: float, t_w: float, corrected: bool = True, with_error: bool = False):
    """Weighted Sobolev norm on the affine Grassmannian.

    The integral carries the prefactor ``(2 pi)^(-pk/2) / |G_{k,d-1}|`` which
    makes the k-plane transform an isometry between the weighted scales.
    """
    U = _fiber_spectrum(u)
    fb, quad = U.fiber, U.quad
    _check_weighted(p, t_w, fb.d, "on the fibers")
    W = _weight_grid(fb, t_w * p, corrected)
    g = (1 + fb.dual_radii() ** 2) ** ((s - t_w) * p / 2)
    per = np.sum((W * g)[None] * np.abs(U.values) ** p, axis=tuple(range(1, fb.d + 1)))
    per = per * (2 * np.pi) ** (-p * quad.k / 2) / total_measure(quad.k, quad.d - 1)
    return _outer(quad, np.maximum(per, 0.0), p, with_error)


def _dyadic(s, partition):
    return 2.0 ** (s * np.arange(partition.j_max + 1))


def besov(f: GridFunction, s: float, p, r, partition: DyadicPartition) -> float:
    """``B^s_{p,r}``: l^r over bands of ``2^(js) ||M_j f||_p``."""
    _check_exponent("p", p)
    _check_exponent("r", r)
    bands, _ = band_stack(f, partition)
    cell = f.spec.h**f.spec.d
    norms = np.array([_lp_sum(b, p, cell) for b in bands])
    return float(_lr(_dyadic(s, partition) * norms, r))


def tl(f: GridFunction, s: float, p, r, partition: DyadicPartition) -> float:
    """``F^s_{p,r}``: L^p norm of the pointwise l^r aggregate over bands."""
    _check_exponent("p", p)
    _check_exponent("r", r)
    bands, _ = band_stack(f, partition)
    w = _dyadic(s, partition).reshape((-1,) + (1,) * f.spec.d)
    env = _lr(w * np.abs(bands), r)
    return float(_lp_sum(env, p, f.spec.h**f.spec.d))


def besov_g(u: FiberField, s: float, q, t, r, partition: DyadicPartition) -> float:
    """Anisotropic Besov norm: l^r over bands of mixed norms."""
    for name, x in (("q", q), ("t", t), ("r", r)):
        _check_exponent(name, x)
    bands, _ = fiber_band_stack(u, partition)
    norms = np.array([_mixed_values(b, u.quad, u.fiber, q, t) for b in bands])
    return float(_lr(_dyadic(s, partition) * norms, r))


def tl_g(u: FiberField, s: float, q, t, r, partition: DyadicPartition) -> float:
    """Anisotropic Triebel-Lizorkin norm: pointwise l^r, then the mixed norm."""
    for name, x in (("q", q), ("t", t), ("r", r)):
        _check_exponent(name, x)
    bands, _ = fiber_band_stack(u, partition)
    w = _dyadic(s, partition).reshape((-1,) + (1,) * (u.fiber.d + 1))
    env = _lr(w * np.abs(bands), r)
    return float(_mixed_values(env, u.quad, u.fiber, q, t))


def sobolev_lower_constant(k: int, d: int) -> float:
    """``sqrt((2 pi)^k |G_{k,d-1}|)``, the sharp lower constant for ``P`` on H^s."""
    return math.sqrt((2 * math.pi) ** k * total_measure(k, d - 1))


def _json_number(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


@dataclass
class NormResult:
    """Serializable record of one norm evaluation."""

    norm_id: str
    params: dict
    value: float
    partition_id: str | None = None
    quad_id: dict | None = None
    error_budget: float = 0.0
    clipped: bool = False
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["params"] = {k: _json_number(v) for k, v in self.params.items()}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)
