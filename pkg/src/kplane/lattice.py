"""
Corrected lattice quadrature for integrands with an ``|x|^a`` factor.

A plain Riemann sum of ``|x|^a g(x)`` on a uniform grid through the origin
converges only like ``h^(a+D)`` when ``a`` is not an even integer. The
generalized Euler-Maclaurin (Navot) expansion gives the error explicitly,

    h^D sum_{m != 0} |mh|^a g(mh) - int |x|^a g
        = sum_beta Z_beta(a) h^(a+D+|beta|) d^beta g(0) / beta!,

where ``Z_beta(a)`` is the analytically continued lattice sum
``sum'_{m in Z^D} m^beta |m|^a``. Subtracting the leading terms, with the
derivatives of ``g`` taken by centred finite differences at the origin,
turns the rule into a set of modified weights on a few nodes around zero.

The lattice constants are obtained from the Gaussian-regularized sums
``S(eps) - I(eps)``, whose expansion in ``eps`` is a convergent power series
with constant term ``Z_beta(a)``; a polynomial fit in ``eps`` extrapolates it.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import numpy as np
from scipy.special import gammaln

__all__ = ["lattice_constant", "singular_weights"]

# fourth-order accurate d2/dx2 and d4/dx4 stencils on offsets -3..3 (second
# derivative uses a sixth-order stencil)
_D2_6 = np.array([1 / 90, -3 / 20, 3 / 2, -49 / 18, 3 / 2, -3 / 20, 1 / 90])
_D4_4 = np.array([-1 / 6, 2.0, -13 / 2, 28 / 3, -13 / 2, 2.0, -1 / 6])
_D2_4 = np.array([0.0, -1 / 12, 4 / 3, -5 / 2, 4 / 3, -1 / 12, 0.0])

_EPS = np.linspace(0.04, 0.3, 14)


def _sphere_moment(beta: tuple) -> float:
    """``int_{S^(D-1)} omega^beta d omega`` for all-even ``beta``."""
    D = len(beta)
    logv = np.log(2.0) + sum(gammaln((b + 1) / 2) for b in beta) - gammaln((sum(beta) + D) / 2)
    return float(np.exp(logv))


@lru_cache(maxsize=None)
def lattice_constant(D: int, a: float, beta: tuple = None) -> float:
    """Regularized lattice sum ``sum'_{m in Z^D} m^beta |m|^a``.

    ``beta`` defaults to the zero multi-index. Components of ``beta`` must be
    even (odd moments vanish by symmetry and are returned as 0).
    """
    if beta is None:
        beta = (0,) * D
    beta = tuple(int(b) for b in beta)
    if len(beta) != D:
        raise ValueError("beta must have D entries")
    if any(b % 2 for b in beta):
        return 0.0
    if a <= -D - sum(beta):
        raise ValueError(f"lattice sum undefined for a={a} in dimension {D}")
    nb = sum(beta)
    # radius where exp(-eps r^2) r^(a+|beta|) is negligible at the smallest eps
    rmax = int(np.ceil(np.sqrt((42.0 + 0.5 * max(a + nb, 0) * np.log(1e3)) / _EPS[0]))) + 2
    ax = np.arange(-rmax, rmax + 1, dtype=float)
    mesh = np.meshgrid(*([ax] * D), indexing="ij")
    r2 = sum(m * m for m in mesh).ravel()
    mono = np.ones_like(r2)
    for m, b in zip(mesh, beta):
        if b:
            mono = mono * m.ravel() ** b
    keep = r2 > 0
    r2, mono = r2[keep], mono[keep]
    base = mono * r2 ** (a / 2)
    e = (a + nb + D) / 2
    radial = np.exp(gammaln(e)) / 2
    sph = _sphere_moment(beta)
    diffs = []
    for eps in _EPS:
        s = float(np.sum(base * np.exp(-eps * r2)))
        diffs.append(s - sph * radial * eps ** (-e))
    coef = np.polynomial.polynomial.polyfit(_EPS, diffs, 9)
    return float(coef[0])


def _is_smooth_power(a: float) -> bool:
    return a >= 0 and abs(a / 2 - round(a / 2)) < 1e-13


def singular_weights(D: int, n: int, h: float, a: float, order: int = 4) -> np.ndarray:
    """Quadrature weights for ``int_{R^D} |x|^a g(x) dx`` on a centred grid.

    The grid has ``n`` nodes per axis with the origin at index ``n // 2``
    (primal and dual grids of :class:`~kplane.grid.GridSpec` both qualify).
    Returns an array ``W`` of shape ``(n,)*D`` such that ``sum(W * g)``
    approximates the integral for smooth ``g``. For ``a`` an even
    nonnegative integer this is the plain Riemann rule ``h^D |x|^a``.

    ``order`` selects which derivative corrections are used (0, 2 or 4).
    """
    if n < 8 or n % 2:
        raise ValueError("need an even grid with at least 8 nodes per axis")
    c = n // 2
    ax = h * (np.arange(n) - c)
    mesh = np.meshgrid(*([ax] * D), indexing="ij")
    r = np.sqrt(sum(m * m for m in mesh))
    if _is_smooth_power(a):
        return h**D * r**a
    W = np.zeros_like(r)
    nz = r > 0
    W[nz] = h**D * r[nz] ** a
    origin = (c,) * D
    hp = h ** (a + D)
    W[origin] -= lattice_constant(D, a) * hp
    if order >= 2:
        z2 = lattice_constant(D, a, _unit(D, 0, 2))
        for i in range(D):
            _add_axis_stencil(W, origin, i, -z2 * hp * h**2 / 2 * _D2_6 / h**2)
    if order >= 4:
        z4 = lattice_constant(D, a, _unit(D, 0, 4))
        for i in range(D):
            _add_axis_stencil(W, origin, i, -z4 * hp * h**4 / 24 * _D4_4 / h**4)
        if D >= 2:
            beta = [0] * D
            beta[0] = beta[1] = 2
            z22 = lattice_constant(D, a, tuple(beta))
            cross = np.outer(_D2_4, _D2_4) / h**4
            for i, j in combinations(range(D), 2):
                _add_plane_stencil(W, origin, i, j, -z22 * hp * h**4 / 4 * cross)
    return W


def _unit(D: int, i: int, power: int) -> tuple:
    beta = [0] * D
    beta[i] = power
    return tuple(beta)


def _add_axis_stencil(W, origin, axis, stencil):
    for off, w in zip(range(-3, 4), stencil):
        idx = list(origin)
        idx[axis] += off
        W[tuple(idx)] += w


def _add_plane_stencil(W, origin, i, j, stencil):
    for oi, row in zip(range(-3, 4), stencil):
        for oj, w in zip(range(-3, 4), row):
            if w == 0:
                continue
            idx = list(origin)
            idx[i] += oi
            idx[j] += oj
            W[tuple(idx)] += w
