"""
Verification suites: each checks one identity or inequality for the k-plane
transform numerically and returns :class:`SuiteReport` records.

Identity-class suites (Fourier slice, isometry, intertwining, vector-valued
inequality, polar formula) use tight tolerances from the discretization
budget. Inequality-class suites (two-sided Sobolev bound, Besov/TL
boundedness) check the explicit lower constant where one is known and
otherwise the stability of the ratio under grid refinement.

Every report is reproducible from its ``params`` block: seeds are fixed and
reductions run in a fixed order. Both sides of any identity share one frame
quadrature.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.integrate import quad as scipy_quad

from .admissibility import ExponentQuery, as_exponent, check
from .fields import catalog
from .grassmann import (
    AffinePlane,
    Frame,
    GrassmannQuadrature,
    haar_sample,
    parse_quadrature,
    polar_identity_residual,
    sphere_area,
)
from .grid import GridSpec, DEFAULT_PROFILES, pad, sample
from .littlewood_paley import (
    default_partition,
    project,
    project_fiber,
    sandwich_constants,
    sandwich_ratio,
)
from .norms import (
    besov,
    besov_g,
    sobolev,
    sobolev_g,
    sobolev_lower_constant,
    tl,
    tl_g,
    weighted_sobolev,
    weighted_sobolev_g,
)
from .transform import FiberGrid, fiber_ft, slice_spectrum, transform_direct, transform_slice

__all__ = [
    "DEFAULT_TOLERANCES",
    "Settings",
    "SuiteReport",
    "AdmissibilityError",
    "suite_fst",
    "suite_isometry",
    "suite_sobolev_bounds",
    "suite_besov_tl",
    "besov_tl_batch",
    "suite_props",
    "suite_intertwining",
    "suite_vector_valued",
    "suite_polar",
    "suite_fbh",
    "demo_divergence",
    "SUITES",
    "verify",
    "verify_all",
]

DEFAULT_TOLERANCES = {
    "fst_d2": 1e-6,
    "fst_d3": 1e-5,
    "isometry": 1e-4,
    "isometry_sigmas": 5.0,
    "isometry_floor": 1e-8,
    "sobolev_budget": 1e-3,
    "drift": 0.1,
    "intertwining": 1e-6,
    "vector_slack": 1e-10,
    "polar": 1e-4,
    "polar_sigmas": 3.0,
    "growth": 1.5,
    "convergence": 1.05,
    "tail": 1e-6,
}


@dataclass(frozen=True)
class Settings:
    """Grid profile, per-dimension overrides, tolerances and the default seed."""

    profile: str = "default"
    seed: int = 0
    grids: tuple = ()  # ((d, n, L), ...) overrides of the profile
    tolerances: tuple = ()  # ((name, value), ...) overrides

    def spec(self, d: int) -> GridSpec:
        for dd, n, L in self.grids:
            if dd == d:
                return GridSpec(d, n, L)
        try:
            n, L = DEFAULT_PROFILES[self.profile][d]
        except KeyError:
            raise ValueError(f"no grid profile {self.profile!r} for d={d}") from None
        return GridSpec(d, n, L)

    def tol(self, name: str) -> float:
        for k, v in self.tolerances:
            if k == name:
                return float(v)
        return DEFAULT_TOLERANCES[name]

    def to_dict(self) -> dict:
        return {
            "profile": self.profile,
            "seed": self.seed,
            "grids": [list(g) for g in self.grids],
            "tolerances": {k: v for k, v in self.tolerances},
        }


def _finite_or_none(x):
    if x is None:
        return None
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, dict):
        return {k: _finite_or_none(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_finite_or_none(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    return x


@dataclass
class SuiteReport:
    """Outcome of one check.

    ``ratio`` and ``tolerance`` are suite specific; ``status`` is ``pass``,
    ``fail`` or ``skipped`` (a skipped check is not a failure).
    """

    suite_id: str
    params: dict
    lhs: float | None
    rhs: float | None
    ratio: float | None
    tolerance: float | None
    passed: bool
    status: str = ""
    detail: dict = field(default_factory=dict)
    runtime_ms: float | None = None

    def __post_init__(self):
        if not self.status:
            self.status = "pass" if self.passed else "fail"

    def to_dict(self, timings: bool = False) -> dict:
        d = {
            "suite_id": self.suite_id,
            "params": _finite_or_none(self.params),
            "lhs": _finite_or_none(self.lhs),
            "rhs": _finite_or_none(self.rhs),
            "ratio": _finite_or_none(self.ratio),
            "tolerance": _finite_or_none(self.tolerance),
            "pass": bool(self.passed),
            "status": self.status,
            "detail": _finite_or_none(self.detail),
        }
        if timings:
            d["runtime_ms"] = self.runtime_ms
        return d

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True)


class AdmissibilityError(ValueError):
    """Raised when a suite needs admissible exponents and did not get them."""

    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__(
            f"exponents {verdict.query.to_dict()} are not known to be sufficient: "
            f"{verdict.status} {list(verdict.reasons)}"
        )


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        out = fn(*args, **kwargs)
        ms = 1000.0 * (time.perf_counter() - t0)
        for rep in out if isinstance(out, list) else [out]:
            rep.runtime_ms = ms
        return out

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.__wrapped__ = fn
    return wrapper


def _settings(settings):
    return Settings() if settings is None else settings


@lru_cache(maxsize=16)
def _quad(text: str, k: int, d: int, seed: int) -> GrassmannQuadrature:
    return parse_quadrature(text, k, d, seed)


def _default_quad(k, d, count):
    return "circle:%d" % count if (k, d) == (1, 2) else "mc:%d" % count


@lru_cache(maxsize=8)
def _sampled(key: str, spec: GridSpec, k: int):
    af = catalog(key, spec.d, spec.half_width, k)
    return af, sample(af.eval, spec)


@lru_cache(maxsize=8)
def _slice(key: str, spec: GridSpec, k: int, quad_text: str, seed: int):
    _, f = _sampled(key, spec, k)
    return slice_spectrum(f, _quad(quad_text, k, spec.d, seed))


def clear_caches():
    _quad.cache_clear()
    _sampled.cache_clear()
    _slice.cache_clear()


def _base_params(name, settings, d, k, key, quad_text=None, **extra):
    p = {"suite": name, "d": d, "k": k, "field": key, "grid": settings.spec(d).to_dict(), "seed": settings.seed}
    p["profile"] = settings.profile
    if quad_text is not None:
        q = _quad(quad_text, k, d, settings.seed)
        p["quadrature"] = q.descriptor()
    p.update(extra)
    return p


# ---------------------------------------------------------------- Fourier slice


@_timed
def suite_fst(field: str = "gauss:iso", d: int = 2, k: int = 1, quad: str | None = None, settings=None) -> SuiteReport:
    """Largest ``|u^ - (2pi)^(k/2) f^| / (1 + |f^|)`` over frames and fiber frequencies.

    ``u = P f`` is computed by the slice route and transformed along the
    fibers; ``f^`` is the closed form. Fiber frequencies outside the ambient
    Nyquist ball are not compared.
    """
    st = _settings(settings)
    spec = st.spec(d)
    quad = quad or _default_quad(k, d, 32)
    af, f = _sampled(field, spec, k)
    if af.spectrum is None:
        raise ValueError(f"field {field!r} has no closed-form spectrum")
    q = _quad(quad, k, d, st.seed)
    U = fiber_ft(transform_slice(f, q))
    fb = U.fiber
    inside = fb.dual_radii() <= spec.nyquist * (1 + 1e-12)
    eta = fb.dual_nodes()[inside]
    worst = 0.0
    for i in range(len(q)):
        exact = (2 * np.pi) ** (k / 2) * af.spectrum(eta @ q.B[i].T)
        res = np.abs(U.values[i][inside] - exact) / (1 + np.abs(exact))
        worst = max(worst, float(res.max()))
    tol = st.tol("fst_d2") if d == 2 else st.tol("fst_d3")
    params = _base_params("fst", st, d, k, field, quad)
    return SuiteReport(f"fst/{field}/d{d}k{k}", params, worst, 0.0, None, tol, worst <= tol)


# ---------------------------------------------------------------- isometry


@_timed
def suite_isometry(
    s: float = 0.0,
    p: float = 2.0,
    t_w: float = 0.0,
    field: str = "gauss:aniso",
    d: int = 2,
    k: int = 1,
    quad: str | None = None,
    settings=None,
) -> SuiteReport:
    """Weighted Sobolev isometry: ``lhs`` on the Grassmannian, ``rhs`` on R^d.

    ``tolerance`` bounds ``|lhs/rhs - 1|``: a fixed value for deterministic
    rules, ``isometry_sigmas`` Monte Carlo standard errors otherwise.
    """
    st = _settings(settings)
    spec = st.spec(d)
    if not t_w > -d / p:
        raise ValueError(f"weight exponent t_w = {t_w} must exceed -d/p = {-d / p:.6g}")
    quad = quad or _default_quad(k, d, 128 if d == 2 else 4096)
    _, f = _sampled(field, spec, k)
    q = _quad(quad, k, d, st.seed)
    U = _slice(field, spec, k, quad, st.seed)
    lhs, sigma = weighted_sobolev_g(U, s + k / p, p, t_w + k / p, with_error=True)
    rhs = weighted_sobolev(f, s, p, t_w)
    params = _base_params("isometry", st, d, k, field, quad, s=s, p=p, t_w=t_w)
    sid = f"isometry/d{d}k{k}/{field}/p{p:g}-s{s:g}-t{t_w:g}"
    if rhs == 0 and lhs == 0:
        return SuiteReport(sid, params, 0.0, 0.0, None, 0.0, True, detail={"sigma": 0.0})
    ratio = lhs / rhs
    if q.is_monte_carlo:
        tol = max(st.tol("isometry_sigmas") * sigma / rhs, st.tol("isometry_floor"))
    else:
        tol = st.tol("isometry")
    return SuiteReport(sid, params, lhs, rhs, ratio, tol, abs(ratio - 1) <= tol, detail={"sigma": sigma})


# ---------------------------------------------------------------- two-sided Sobolev


def _boundary_tail(f):
    v = np.abs(f.values)
    idx = [0, -1]
    tails = []
    for a in range(v.ndim):
        tails.append(np.take(v, idx, axis=a).max())
    return float(max(tails))


@_timed
def suite_sobolev_bounds(
    s: float = 0.0, field: str = "gauss:iso", d: int = 2, k: int = 1, quad: str | None = None, settings=None
) -> SuiteReport:
    """Lower bound ``c ||f||_{H^s} <= ||Pf||_{H^(s+k/2)}`` with the sharp ``c``
    and refinement stability of the upper ratio ``||Pf|| / ||f||``."""
    st = _settings(settings)
    spec = st.spec(d)
    af = catalog(field, d, spec.half_width, k)
    if af.decay not in ("gaussian", "compact"):
        raise ValueError(f"field {field!r} is neither compactly supported nor tagged with a decay rate")
    quad = quad or _default_quad(k, d, 64 if d == 2 else 256)
    q = _quad(quad, k, d, st.seed)
    c = sobolev_lower_constant(k, d)
    out = {}
    for label, sp in (("coarse", spec), ("fine", spec.refined(2))):
        _, f = _sampled(field, sp, k)
        tail = _boundary_tail(f)
        if af.decay == "gaussian" and tail > st.tol("tail"):
            raise ValueError(f"field {field!r} is not negligible at the box edge (|f| = {tail:.3g})")
        U = _slice(field, sp, k, quad, st.seed)
        nf = sobolev(f, s)
        ng, sig = sobolev_g(U, s + k / 2, with_error=True)
        out[label] = (nf, ng, sig, tail)
    nf, ng, sig, tail = out["coarse"]
    eps = st.tol("sobolev_budget")
    lower_ok = c * nf <= ng * (1 + eps)
    params = _base_params("sobolev", st, d, k, field, quad, s=s)
    sid = f"sobolev/d{d}k{k}/{field}/s{s:g}"
    if nf == 0:
        return SuiteReport(sid, params, 0.0, ng, None, eps, lower_ok and ng == 0)
    r_c = ng / nf
    r_f = out["fine"][1] / out["fine"][0]
    drift = abs(r_f / r_c - 1)
    detail = {
        "lower_constant": c,
        "lower_margin": ng / (c * nf) - 1,
        "upper_ratio": r_c,
        "upper_ratio_refined": r_f,
        "drift": drift,
        "drift_tolerance": st.tol("drift"),
        "sigma": sig,
        "edge_value": tail,
    }
    passed = bool(lower_ok and drift < st.tol("drift"))
    return SuiteReport(sid, params, c * nf, ng, r_c, eps, passed, detail=detail)


# ---------------------------------------------------------------- Besov / Triebel-Lizorkin


def _exp_float(x):
    x = as_exponent(x)
    return math.inf if x == math.inf else float(x)


def besov_tl_batch(
    s_values,
    r_values,
    d: int,
    k: int,
    p,
    q,
    t,
    field: str = "gauss:aniso",
    quad: str | None = None,
    settings=None,
    require_admissible: bool = True,
) -> list:
    """Ratio stability for ``B^s_{p,r} -> B^s_{(q,t),r}`` and the F analogue.

    One report per ``(s, r)``; transforms are shared between them. The dyadic
    partition is fixed by the coarse grid and reused on the refined grid.
    """
    st = _settings(settings)
    verdict = check(ExponentQuery(d, k, p, q, t))
    if require_admissible and not verdict.is_sufficient:
        raise AdmissibilityError(verdict)
    t0 = time.perf_counter()
    spec = st.spec(d)
    quad = quad or _default_quad(k, d, 64)
    part = default_partition(spec)
    pf, qf, tf = _exp_float(p), _exp_float(q), _exp_float(t)
    values = {}
    for label, sp in (("coarse", spec), ("fine", spec.refined(2))):
        _, f = _sampled(field, sp, k)
        u = transform_slice(f, _quad(quad, k, d, st.seed))
        for s in s_values:
            for r in r_values:
                values[label, s, r] = (
                    besov_g(u, s, qf, tf, r, part),
                    besov(f, s, pf, r, part),
                    tl_g(u, s, qf, tf, r, part),
                    tl(f, s, pf, r, part),
                )
    ms = 1000 * (time.perf_counter() - t0) / max(1, len(s_values) * len(r_values))
    reports = []
    tag = f"p{as_exponent(p)}-q{as_exponent(q)}-t{as_exponent(t)}".replace("/", "_")
    for s in s_values:
        for r in r_values:
            bg, br, fg, fr = values["coarse", s, r]
            bg2, br2, fg2, fr2 = values["fine", s, r]
            params = _base_params(
                "besov-tl", st, d, k, field, quad, s=s, r=r, p=str(as_exponent(p)), q=str(as_exponent(q)),
                t=str(as_exponent(t)), partition=part.to_dict()
            )
            sid = f"besov-tl/d{d}k{k}/{tag}/s{s:g}-r{r:g}"
            if br == 0 and bg == 0 and fr == 0 and fg == 0:
                rep = SuiteReport(sid, params, 0.0, 0.0, None, st.tol("drift"), True, detail={"verdict": verdict.to_dict()})
            else:
                rb, rb2 = bg / br, bg2 / br2
                rf, rf2 = fg / fr, fg2 / fr2
                db, df = abs(rb2 / rb - 1), abs(rf2 / rf - 1)
                finite = all(math.isfinite(x) for x in (rb, rb2, rf, rf2))
                detail = {
                    "besov_ratio_refined": rb2,
                    "besov_drift": db,
                    "tl_lhs": fg,
                    "tl_rhs": fr,
                    "tl_ratio": rf,
                    "tl_ratio_refined": rf2,
                    "tl_drift": df,
                    "verdict": verdict.to_dict(),
                    "policy": "ratio drift under n doubling below tolerance",
                }
                ok = finite and db < st.tol("drift") and df < st.tol("drift")
                rep = SuiteReport(sid, params, bg, br, rb, st.tol("drift"), bool(ok), detail=detail)
            rep.runtime_ms = ms
            reports.append(rep)
    return reports


def suite_besov_tl(
    s: float = 0.0,
    r: float = 2.0,
    d: int = 3,
    k: int = 1,
    p=2,
    q=4,
    t=4,
    field: str = "gauss:aniso",
    quad: str | None = None,
    settings=None,
    require_admissible: bool = True,
) -> SuiteReport:
    """Single ``(s, r)`` version of :func:`besov_tl_batch`."""
    return besov_tl_batch([s], [r], d, k, p, q, t, field, quad, settings, require_admissible)[0]


# ---------------------------------------------------------------- propositions


@_timed
def suite_intertwining(
    field: str = "gauss:aniso", d: int = 2, k: int = 1, quad: str = "circle:32", pad_factor: int = 16, settings=None
) -> SuiteReport:
    """``M_j (P f) = P (M_j f)`` for every band, worst relative L^2 gap.

    The ambient projection is computed on a zero-padded box (same spacing,
    ``pad_factor`` times wider) because the band kernels decay only like
    ``exp(-c sqrt|x|)`` and would otherwise wrap around the periodic box.
    """
    st = _settings(settings)
    spec = st.spec(d)
    q = _quad(quad, k, d, st.seed)
    part = default_partition(spec)
    fiber = FiberGrid(d - k, spec.n, spec.half_width)
    _, f = _sampled(field, spec, k)
    big = pad(f, pad_factor)
    u = transform_slice(big, q, fiber)
    gaps = []
    for j in range(part.j_max + 1):
        a = project_fiber(u, j, part).values
        b = transform_slice(project(big, j, part), q, fiber).values
        nb = np.linalg.norm(b)
        gaps.append(float(np.linalg.norm(a - b) / nb) if nb > 0 else float(np.linalg.norm(a)))
    worst = max(gaps)
    tol = st.tol("intertwining")
    params = _base_params("props", st, d, k, field, quad, check="intertwining", pad_factor=pad_factor,
                          partition=part.to_dict())
    return SuiteReport(f"props/intertwining/d{d}k{k}", params, worst, 0.0, None, tol, worst <= tol,
                       detail={"gaps": gaps})


VECTOR_FIELDS = ("gauss:iso", "gauss:aniso", "gauss:shift", "gauss:wave")


@_timed
def suite_vector_valued(
    r: float = 2.0, d: int = 2, k: int = 1, fields=VECTOR_FIELDS, planes: int = 20, settings=None
) -> SuiteReport:
    """``l^r_j |P h_j| <= P (l^r_j |h_j|)`` on shared plane quadrature nodes.

    Reports the largest excess of the left side over the right side.
    """
    st = _settings(settings)
    hs = [catalog(key, d, k=k) for key in fields]
    q = haar_sample(k, d, planes, st.seed)
    rng = np.random.default_rng(np.random.SeedSequence(st.seed, spawn_key=(planes, 7)))
    ys = rng.standard_normal((planes, d - k))
    plist = [AffinePlane(Frame(q.A[i], q.B[i]), ys[i]) for i in range(planes)]

    def envelope(x):
        vals = np.abs(np.stack([h(x) for h in hs]))
        return vals.max(axis=0) if math.isinf(r) else np.sum(vals**r, axis=0) ** (1 / r)

    parts = np.abs(np.stack([transform_direct(h, plist) for h in hs]))
    lhs = parts.max(axis=0) if math.isinf(r) else np.sum(parts**r, axis=0) ** (1 / r)
    rhs = np.real(transform_direct(envelope, plist))
    excess = float(np.max(lhs - rhs))
    tol = st.tol("vector_slack")
    params = _base_params("props", st, d, k, ",".join(fields), None, check="vector_valued", r=r, planes=planes,
                          plane_rule={"extent": 8.0, "nodes": 129})
    return SuiteReport(f"props/vector-valued/d{d}k{k}/r{r:g}", params, float(lhs.max()), float(rhs.max()), None,
                       tol, excess <= tol, detail={"max_excess": excess})


@_timed
def suite_polar(field: str = "gauss:aniso", d: int = 2, k: int = 1, quad: str | None = None, settings=None) -> SuiteReport:
    """Polar integration formula on the Grassmannian.

    Deterministic rules must reach ``polar``; Monte Carlo rules must lie
    within ``polar_sigmas`` standard errors. A one-frame rule is skipped.
    """
    st = _settings(settings)
    spec = st.spec(d)
    quad = quad or _default_quad(k, d, 128 if d == 2 else 1024)
    q = _quad(quad, k, d, st.seed)
    params = _base_params("props", st, d, k, field, quad, check="polar")
    sid = f"props/polar/d{d}k{k}/{field}"
    if len(q) < 2:
        return SuiteReport(sid, params, None, None, None, None, True, status="skipped",
                           detail={"reason": "insufficient quadrature"})
    af = catalog(field, d, spec.half_width, k)
    fiber = GridSpec(d - k, spec.n, spec.half_width)
    res = polar_identity_residual(af, q, fiber, rhs_spec=spec)
    if q.is_monte_carlo:
        tol = st.tol("polar_sigmas") * res.sigma / abs(res.rhs) if res.rhs else 0.0
    else:
        tol = st.tol("polar")
    ok = res.residual <= tol or (res.lhs == 0 and res.rhs == 0)
    return SuiteReport(sid, params, res.lhs, res.rhs, res.residual, tol, bool(ok), detail={"sigma": res.sigma})


@_timed
def suite_fbh(
    s: float = 0.0, field: str = "gauss:aniso", d: int = 2, k: int = 1, quad: str | None = None, settings=None
) -> SuiteReport:
    """``F^s_{2,2} / H^s`` on the Grassmannian lies in ``[sqrt(c_s), sqrt(C_s)]``.

    Also checks the sandwich pointwise on 10^4 radii.
    """
    st = _settings(settings)
    spec = st.spec(d)
    quad = quad or _default_quad(k, d, 32)
    part = default_partition(spec)
    _, f = _sampled(field, spec, k)
    u = transform_slice(f, _quad(quad, k, d, st.seed))
    lhs = tl_g(u, s, 2, 2, 2, part)
    rhs = sobolev_g(u, s)
    c, C = sandwich_constants(s, part)
    radii = np.linspace(0.0, part.validity_radius, 10_000)
    pr = sandwich_ratio(s, part, radii)
    margin = float(min((pr - c).min(), (C - pr).min()))
    ratio = lhs / rhs if rhs else None
    inside = ratio is None or (math.sqrt(c) <= ratio <= math.sqrt(C))
    params = _base_params("props", st, d, k, field, quad, check="F=B=H", s=s, partition=part.to_dict())
    detail = {"c_s": c, "C_s": C, "lower": math.sqrt(c), "upper": math.sqrt(C), "pointwise_margin": margin,
              "besov_ratio": besov_g(u, s, 2, 2, 2, part) / rhs if rhs else None}
    return SuiteReport(f"props/fbh/d{d}k{k}/s{s:g}", params, lhs, rhs, ratio, None, bool(inside and margin >= 0),
                       detail=detail)


def suite_props(d: int = 2, k: int = 1, settings=None) -> list:
    """Intertwining, vector-valued (r = 1, 2, inf), polar and F=B=H checks."""
    reps = [suite_intertwining(d=d, k=k, settings=settings)]
    reps += [suite_vector_valued(r, d=d, k=k, settings=settings) for r in (1.0, 2.0, math.inf)]
    reps.append(suite_polar(d=d, k=k, settings=settings))
    reps += [suite_fbh(s, d=d, k=k, settings=settings) for s in (-1.0, 0.0, 1.0, 2.0)]
    return reps


# ---------------------------------------------------------------- divergence demo


def _truncated_plane_integral(a, delta, k, R):
    # integral over a k-plane through the origin of the radial profile, |x| <= R
    g = lambda r: r ** (k - 1) * (1 + r) ** (-a) * math.log(3 + r) ** (-delta)
    val, _ = scipy_quad(g, 0.0, R, limit=400, epsabs=0.0, epsrel=1e-12)
    return sphere_area(k - 1) * val if k > 1 else 2.0 * val


@_timed
def demo_divergence(
    a: float | None = None,
    delta: float = 0.9,
    radii=(8.0, 16.0, 32.0, 64.0),
    d: int = 2,
    k: int = 1,
    growth: float | None = None,
    settings=None,
) -> SuiteReport:
    """Growth of truncated plane integrals of ``(1+|x|)^-a log(3+|x|)^-delta``.

    For ``a <= k`` the plane integral diverges and the check passes when
    ``I(R)`` increases and ``I(R_max)/I(R_min)`` exceeds ``growth``; for
    ``a > k`` it converges and the check passes when the ratio stays below
    the ``convergence`` tolerance.
    """
    st = _settings(settings)
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    a = float(k) if a is None else float(a)
    radii = sorted(float(r) for r in radii)
    if len(radii) < 2:
        raise ValueError("need at least two radii")
    I = [_truncated_plane_integral(a, delta, k, R) for R in radii]
    ratio = I[-1] / I[0]
    increasing = all(b > c for b, c in zip(I[1:], I[:-1]))
    regime = "divergent" if a <= k else "convergent"
    if regime == "divergent":
        tol = st.tol("growth") if growth is None else growth
        ok = increasing and ratio > tol
    else:
        tol = st.tol("convergence")
        ok = ratio < tol
    params = {"suite": "divergence", "a": a, "delta": delta, "radii": radii, "d": d, "k": k}
    return SuiteReport(f"divergence/d{d}k{k}/a{a:g}-delta{delta:g}", params, I[-1], I[0], ratio, tol, bool(ok),
                       detail={"integrals": I, "increasing": increasing, "regime": regime})


# ---------------------------------------------------------------- orchestration


def _fst_cases(st):
    return [
        suite_fst("gauss:iso", 2, 1, settings=st),
        suite_fst("gauss:aniso", 2, 1, settings=st),
        suite_fst("gauss:shift", 2, 1, settings=st),
        suite_fst("gauss:wave", 2, 1, settings=st),
        suite_fst("zero", 2, 1, settings=st),
        suite_fst("gauss:iso", 3, 1, settings=st),
        suite_fst("gauss:aniso", 3, 1, settings=st),
        suite_fst("gauss:iso", 3, 2, settings=st),
        suite_fst("gauss:aniso", 3, 2, settings=st),
    ]


ISOMETRY_CASES = ((2.0, 0.0, 0.0), (2.0, 1.0, 0.5), (1.0, 1.0, 0.5))


def _isometry_cases(st):
    out = []
    for d, k in ((2, 1), (3, 1), (3, 2)):
        for p, s, tw in ISOMETRY_CASES:
            out.append(suite_isometry(s, p, tw, "gauss:aniso", d, k, settings=st))
    return out


def _sobolev_cases(st):
    out = []
    for d, k in ((2, 1), (3, 2)):
        for key in ("bump:2", "gauss:iso", "gauss:aniso"):
            for s in (-1.0, 0.0, 1.0):
                out.append(suite_sobolev_bounds(s, key, d, k, settings=st))
    return out


BESOV_POINTS = (
    # (d, k, p, q, t, require_admissible)
    (2, 1, 1, 2, 2, False),
    (2, 1, Fraction(3, 2), 3, 3, True),
    (3, 1, 2, 4, 4, True),
)


def _besov_cases(st):
    out = []
    for d, k, p, q, t, req in BESOV_POINTS:
        out += besov_tl_batch((0.0, 1.0), (1.0, 2.0, math.inf), d, k, p, q, t, settings=st, require_admissible=req)
    return out


def _props_cases(st):
    out = suite_props(2, 1, settings=st)
    out.append(suite_polar("gauss:aniso", 3, 1, settings=st))
    out.append(suite_polar("gauss:aniso", 3, 2, settings=st))
    return out


SUITES = {
    "fst": _fst_cases,
    "isometry": _isometry_cases,
    "sobolev": _sobolev_cases,
    "besov-tl": _besov_cases,
    "props": _props_cases,
}


def verify(names, settings=None) -> list:
    """Run the named suites and return their reports sorted by ``suite_id``."""
    st = _settings(settings)
    if isinstance(names, str):
        names = list(SUITES) if names == "all" else [names]
    reports = []
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; known: {', '.join(SUITES)}, all")
        clear_caches()
        reports += SUITES[name](st)
    clear_caches()
    return sorted(reports, key=lambda r: r.suite_id)


def verify_all(settings=None) -> list:
    return verify("all", settings)
