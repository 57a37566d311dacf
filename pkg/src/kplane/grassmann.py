"""
Frames, invariant measure and quadrature on the Grassmannian G_{k,d}.

The measure is normalized to total mass ``|G_{k,d}|`` (not a probability),
with ``|G_{0,d}| = 1``, ``|G_{1,d}| = |S^{d-1}|/2`` and, for ``k >= 2``,

    |G_{k,d}| = |S^{d-1}| ... |S^{d-k}| / (2 |S^{k-1}| ... |S^1|).

With that normalization the polar formula

    int_{G_{k,d}} int_{alpha^perp} f(y) |y|^k dy d alpha = |G_{k,d-1}| int_{R^d} f

holds with no hidden constants.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from scipy.special import gammaln

__all__ = [
    "sphere_area",
    "total_measure",
    "Frame",
    "AffinePlane",
    "GrassmannQuadrature",
    "haar_sample",
    "circle_quadrature",
    "parse_quadrature",
    "PolarResidual",
    "polar_identity_residual",
]

_ORTHO_TOL = 1e-12


def sphere_area(n: int) -> float:
    """Surface area of the unit sphere ``S^n`` in R^(n+1)."""
    if n < 0:
        raise ValueError("sphere dimension must be >= 0")
    return float(2 * np.exp((n + 1) / 2 * np.log(np.pi) - gammaln((n + 1) / 2)))


def total_measure(k: int, d: int) -> float:
    if not (0 <= k <= d):
        raise ValueError(f"need 0 <= k <= d, got k={k}, d={d}")
    if k == 0:
        return 1.0
    num = np.prod([sphere_area(i) for i in range(d - k, d)])
    den = 2 * np.prod([sphere_area(i) for i in range(1, k)])
    return float(num / den)


@dataclass(frozen=True, eq=False)
class Frame:
    """Orthonormal basis ``A`` (d x k) of a subspace and ``B`` (d x (d-k)) of its complement."""

    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        B = np.asarray(self.B, dtype=float)
        if A.ndim == 1:
            A = A[:, None]
        if B.ndim == 1:
            B = B[:, None]
        if A.shape[0] != B.shape[0] or A.shape[1] + B.shape[1] != A.shape[0]:
            raise ValueError(f"incompatible frame shapes {A.shape} and {B.shape}")
        k = A.shape[1]
        err = max(
            np.max(np.abs(A.T @ A - np.eye(k))),
            np.max(np.abs(B.T @ B - np.eye(B.shape[1]))),
            np.max(np.abs(A.T @ B)) if A.size and B.size else 0.0,
        )
        if err > _ORTHO_TOL:
            raise ValueError(f"frame is not orthonormal (max deviation {err:.3g})")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def d(self) -> int:
        return self.A.shape[0]

    @property
    def k(self) -> int:
        return self.A.shape[1]

    def to_dict(self) -> dict:
        return {"A": self.A.tolist(), "B": self.B.tolist()}


@dataclass(frozen=True, eq=False)
class AffinePlane:
    """The affine plane ``alpha + y`` with ``y = B @ y_coords``."""

    frame: Frame
    y_coords: np.ndarray

    def __post_init__(self):
        y = np.atleast_1d(np.asarray(self.y_coords, dtype=float))
        if y.shape != (self.frame.B.shape[1],):
            raise ValueError(f"y_coords must have {self.frame.B.shape[1]} entries")
        object.__setattr__(self, "y_coords", y)

    @property
    def offset(self) -> np.ndarray:
        return self.frame.B @ self.y_coords


@dataclass(frozen=True, eq=False)
class GrassmannQuadrature:
    """Weighted frames approximating integration over ``G_{k,d}``.

    ``kind`` is a JSON-ready descriptor such as ``{"kind": "circle", "M": 64}``
    or ``{"kind": "monte_carlo", "count": 4096, "seed": 0, ...}``.
    """

    k: int
    d: int
    A: np.ndarray  # (N, d, k)
    B: np.ndarray  # (N, d, d-k)
    weights: np.ndarray
    kind: dict = field(default_factory=dict)

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if np.any(w <= 0):
            raise ValueError("quadrature weights must be positive")
        total = total_measure(self.k, self.d)
        if abs(w.sum() - total) > 1e-12 * total:
            raise ValueError(f"weights sum to {w.sum()}, expected |G_{{{self.k},{self.d}}}| = {total}")
        object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return self.weights.size

    @property
    def frames(self) -> list:
        return [Frame(a, b) for a, b in zip(self.A, self.B)]

    @property
    def is_monte_carlo(self) -> bool:
        return self.kind.get("kind") == "monte_carlo"

    def integrate(self, values) -> tuple:
        """Weighted sum of per-frame values and its Monte Carlo standard error.

        The error is 0 for deterministic rules.
        """
        v = np.asarray(values, dtype=float)
        total = float(np.sum(self.weights * v))
        if self.is_monte_carlo and v.size > 1:
            sigma = float(self.weights.sum() * np.std(v, ddof=1) / np.sqrt(v.size))
        else:
            sigma = 0.0
        return total, sigma

    def descriptor(self) -> dict:
        return dict(self.kind, k=self.k, d=self.d, count=len(self))

    def to_json(self) -> str:
        return json.dumps(self.descriptor(), sort_keys=True)


def _haar_frame(rng: np.random.Generator, d: int, k: int):
    resamples = 0
    while True:
        G = rng.standard_normal((d, d))
        Qm, R = np.linalg.qr(G)
        diag = np.diag(R)
        if np.min(np.abs(diag)) > 1e-10 * max(1.0, np.max(np.abs(diag))):
            break
        resamples += 1
    Qm = Qm * np.sign(diag)
    return Qm[:, :k], Qm[:, k:], resamples


def haar_sample(k: int, d: int, count: int, seed: int = 0) -> GrassmannQuadrature:
    """Monte Carlo rule from Haar-distributed orthogonal matrices.

    Sample ``i`` is drawn from its own stream ``SeedSequence(seed, spawn_key=(i,))``
    so any subset of samples can be generated independently.
    """
    if not (1 <= k <= d - 1):
        raise ValueError(f"need 1 <= k <= d-1, got k={k}, d={d}")
    if count < 1:
        raise ValueError("count must be >= 1")
    A = np.empty((count, d, k))
    B = np.empty((count, d, d - k))
    resamples = 0
    for i in range(count):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(i,)))
        A[i], B[i], r = _haar_frame(rng, d, k)
        resamples += r
    w = np.full(count, total_measure(k, d) / count)
    kind = {"kind": "monte_carlo", "seed": int(seed), "resamples": resamples}
    return GrassmannQuadrature(k, d, A, B, w, kind)


def circle_quadrature(M: int) -> GrassmannQuadrature:
    """Trapezoid rule on G_{1,2}: lines at angles ``i pi / M`` with weights ``pi / M``."""
    if M < 2:
        raise ValueError("M must be >= 2")
    th = np.arange(M) * np.pi / M
    c, s = np.cos(th), np.sin(th)
    A = np.stack([c, s], axis=-1)[:, :, None]
    B = np.stack([-s, c], axis=-1)[:, :, None]
    return GrassmannQuadrature(1, 2, A, B, np.full(M, np.pi / M), {"kind": "circle", "M": int(M)})


def parse_quadrature(text: str, k: int, d: int, seed: int = 0) -> GrassmannQuadrature:
    """Build a rule from ``circle:M`` or ``mc:count[:seed]``."""
    parts = text.split(":")
    if parts[0] == "circle":
        if (k, d) != (1, 2):
            raise ValueError("circle rules exist only for k=1, d=2")
        return circle_quadrature(int(parts[1]))
    if parts[0] in ("mc", "monte_carlo"):
        s = int(parts[2]) if len(parts) > 2 else seed
        return haar_sample(k, d, int(parts[1]), s)
    raise ValueError(f"unknown quadrature {text!r}; use circle:M or mc:count[:seed]")


class PolarResidual(NamedTuple):
    lhs: float
    rhs: float
    residual: float
    sigma: float


def polar_identity_residual(f, quad: GrassmannQuadrature, fiber, rhs_spec=None) -> PolarResidual:
    """Both sides of the polar integration formula for ``f``.

    Parameters
    ----------
    f : AnalyticField or GridFunction
    quad : GrassmannQuadrature
    fiber : GridSpec
        Uniform rule on each complement ``alpha^perp`` (dimension ``d-k``).
        The ``|y|^k`` factor is handled by the corrected lattice rule.
    rhs_spec : GridSpec, optional
        Grid for ``int f`` when ``f`` is an AnalyticField without a closed
        form mass.

    Returns
    -------
    PolarResidual
        ``sigma`` is the Monte Carlo standard error of ``lhs`` (0 for
        deterministic rules).
    """
    from .grid import GridFunction, interpolate_at, sample
    from .lattice import singular_weights

    k, d = quad.k, quad.d
    D = d - k
    if fiber.d != D:
        raise ValueError(f"fiber grid must have dimension {D}")
    W = singular_weights(D, fiber.n, fiber.h, k)
    y = fiber.nodes().reshape(-1, D)
    per_frame = np.empty(len(quad))
    for i in range(len(quad)):
        pts = y @ quad.B[i].T
        if isinstance(f, GridFunction):
            vals = interpolate_at(f, pts)
        else:
            vals = f(pts)
        per_frame[i] = np.real(np.sum(W.ravel() * vals))
    lhs, sigma = quad.integrate(per_frame)

    if isinstance(f, GridFunction):
        mass = np.real(np.sum(f.values)) * f.spec.h**d
    elif f.mass() is not None:
        mass = f.mass().real
    else:
        if rhs_spec is None:
            raise ValueError("need rhs_spec to integrate a field without closed-form mass")
        g = sample(f.eval, rhs_spec)
        mass = np.real(np.sum(g.values)) * rhs_spec.h**d
    rhs = total_measure(k, d - 1) * mass
    if rhs == 0 and lhs == 0:
        res = 0.0
    else:
        res = abs(lhs - rhs) / max(abs(rhs), np.finfo(float).tiny)
    return PolarResidual(lhs, rhs, res, sigma)
