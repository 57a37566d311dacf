"""Analytic test fields with closed-form spectra and plane integrals."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

__all__ = [
    "AnalyticField",
    "gaussian",
    "bump",
    "divergence_profile",
    "zero_field",
    "catalog",
    "CATALOG_KEYS",
    "aniso_matrix",
]


@dataclass(frozen=True, eq=False)
class AnalyticField:
    """A pointwise-evaluable field on R^d plus whatever oracles are known for it.

    Attributes
    ----------
    d : int
    eval : callable
        ``eval(x)`` for ``x`` of shape ``(..., d)`` returns complex ``(...)``.
    spectrum : callable or None
        Closed-form unitary Fourier transform, same calling convention.
    plane_integral : callable or None
        ``plane_integral(A, y)`` for an orthonormal ``(d, k)`` basis ``A`` of
        the plane direction and ambient offsets ``y`` of shape ``(..., d)``.
    support_radius : float or None
    decay : str or None
        ``"gaussian"`` or ``"compact"`` when the tail behaviour is known.
    description : str
    """

    d: int
    eval: Callable[[np.ndarray], np.ndarray]
    spectrum: Optional[Callable[[np.ndarray], np.ndarray]] = None
    plane_integral: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = None
    support_radius: Optional[float] = None
    decay: Optional[str] = None
    description: str = ""

    def __call__(self, x):
        return self.eval(np.asarray(x, dtype=float))

    def mass(self) -> Optional[complex]:
        """``int f`` from the closed-form spectrum, if there is one."""
        if self.spectrum is None:
            return None
        return complex((2 * np.pi) ** (self.d / 2) * self.spectrum(np.zeros(self.d)))


def gaussian(Q, center=None, frequency=None, description: str = "") -> AnalyticField:
    """``exp(-(x-c)^T Q (x-c)/2 + i w.x)`` with exact spectrum and plane integrals.

    ``frequency`` (``w``) is an optional modulation; it defaults to zero.
    """
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    d = Q.shape[0]
    if Q.shape != (d, d) or not np.allclose(Q, Q.T, rtol=0, atol=1e-14):
        raise ValueError("Q must be a symmetric square matrix")
    eig = np.linalg.eigvalsh(Q)
    if eig[0] <= 0:
        raise ValueError(f"Q is not positive definite: eigenvalue {eig[0]:.6g}")
    c = np.zeros(d) if center is None else np.asarray(center, dtype=float)
    w = np.zeros(d) if frequency is None else np.asarray(frequency, dtype=float)
    Qinv = np.linalg.inv(Q)
    det = float(np.prod(eig))

    def ev(x):
        z = x - c
        quad = np.einsum("...i,ij,...j->...", z, Q, z)
        return np.exp(-0.5 * quad + 1j * (x @ w))

    def spec(xi):
        z = np.asarray(xi, dtype=float) - w
        quad = np.einsum("...i,ij,...j->...", z, Qinv, z)
        return det**-0.5 * np.exp(-0.5 * quad - 1j * (z @ c))

    def plane(A, y):
        # complete the square in the plane coordinates u: x = A u + y
        A = np.asarray(A, dtype=float)
        k = A.shape[1]
        M = A.T @ Q @ A
        Minv = np.linalg.inv(M)
        z = np.asarray(y, dtype=float) - c
        b = z @ (Q @ A) - 1j * (A.T @ w)
        quad = np.einsum("...i,ij,...j->...", z, Q, z)
        lin = np.einsum("...i,ij,...j->...", b, Minv, b)
        pref = (2 * np.pi) ** (k / 2) / np.sqrt(np.linalg.det(M))
        return pref * np.exp(0.5 * lin - 0.5 * quad + 1j * (np.asarray(y) @ w))

    return AnalyticField(d, ev, spec, plane, None, "gaussian", description or "gaussian")


def bump(R: float, d: int, grid_half_width: float | None = None) -> AnalyticField:
    """Smooth bump ``exp(-1/(1-|x/R|^2))`` supported in the closed ball of radius R.

    No closed-form spectrum is attached.
    """
    if not R > 0:
        raise ValueError(f"bump radius must be positive, got {R}")
    if grid_half_width is not None and R >= grid_half_width:
        raise ValueError(f"bump radius {R} must be smaller than the grid half-width {grid_half_width}")

    def ev(x):
        r2 = np.sum(np.asarray(x, dtype=float) ** 2, axis=-1) / R**2
        out = np.zeros(r2.shape, dtype=complex)
        inside = r2 < 1
        out[inside] = np.exp(-1.0 / (1.0 - r2[inside]))
        return out

    return AnalyticField(d, ev, support_radius=float(R), decay="compact", description=f"bump:{R:g}")


def divergence_profile(a: float, delta: float, d: int) -> AnalyticField:
    """Radial profile ``(1+|x|)^(-a) (log(3+|x|))^(-delta)``."""
    if not a > 0:
        raise ValueError("decay exponent must be positive")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")

    def ev(x):
        r = np.sqrt(np.sum(np.asarray(x, dtype=float) ** 2, axis=-1))
        return ((1 + r) ** (-a) * np.log(3 + r) ** (-delta)).astype(complex)

    return AnalyticField(d, ev, description=f"divergence:{a:g}:{delta:g}")


def zero_field(d: int) -> AnalyticField:
    def ev(x):
        return np.zeros(np.shape(x)[:-1], dtype=complex)

    def plane(A, y):
        return np.zeros(np.shape(y)[:-1], dtype=complex)

    return AnalyticField(d, ev, ev, plane, 0.0, "compact", "zero")


def _rotation(d: int) -> np.ndarray:
    # fixed product of Givens rotations, so the anisotropic member is not axis aligned
    R = np.eye(d)
    for i in range(d - 1):
        th = 0.3 + 0.4 * i
        G = np.eye(d)
        G[i, i] = G[i + 1, i + 1] = np.cos(th)
        G[i, i + 1], G[i + 1, i] = -np.sin(th), np.sin(th)
        R = G @ R
    return R


def aniso_matrix(d: int) -> np.ndarray:
    """Precision matrix of ``gauss:aniso``.

    ``diag(1, 4)`` for d = 2; for d >= 3 a rotated ``diag(linspace(1, 2, d))``
    whose spectrum still decays below 1e-7 at the coarse d = 3 Nyquist radius.
    """
    if d == 1:
        return np.array([[2.0]])
    if d == 2:
        return np.diag([1.0, 4.0])
    R = _rotation(d)
    return R @ np.diag(np.linspace(1.0, 2.0, d)) @ R.T


CATALOG_KEYS = ("zero", "gauss:iso", "gauss:aniso", "gauss:shift", "gauss:wave", "bump:<R>", "divergence[:a:delta]")


def catalog(key: str, d: int, grid_half_width: float | None = None, k: int = 1) -> AnalyticField:
    """Look up a catalog field by string key.

    Keys: ``zero``, ``gauss:iso``, ``gauss:aniso``, ``gauss:shift`` (unit
    Gaussian centred off the origin), ``gauss:wave`` (modulated Gaussian),
    ``bump:R``, ``divergence`` or ``divergence:a:delta`` (``a`` defaults to
    ``k``, ``delta`` to 0.9).
    """
    key = key.strip()
    if key == "zero":
        return zero_field(d)
    if key == "gauss:iso":
        return gaussian(np.eye(d), description=key)
    if key == "gauss:aniso":
        return gaussian(aniso_matrix(d), description=key)
    if key == "gauss:shift":
        c = np.zeros(d)
        c[0], c[-1] = 0.75, -0.5
        return gaussian(np.eye(d), center=c, description=key)
    if key == "gauss:wave":
        w = np.zeros(d)
        w[0] = 1.5
        return gaussian(np.eye(d), frequency=w, description=key)
    if key.startswith("bump"):
        parts = key.split(":")
        R = float(parts[1]) if len(parts) > 1 else 2.0
        return bump(R, d, grid_half_width)
    if key.startswith("divergence"):
        parts = key.split(":")
        a = float(parts[1]) if len(parts) > 1 else float(k)
        delta = float(parts[2]) if len(parts) > 2 else 0.9
        return divergence_profile(a, delta, d)
    raise KeyError(f"unknown field key {key!r}; known: {', '.join(CATALOG_KEYS)}")
