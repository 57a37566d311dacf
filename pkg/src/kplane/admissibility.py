"""
Exact classification of exponent tuples ``(d, k, p, q, t)`` for mixed-norm
estimates ``||Pf||_{L^q_alpha(L^t_y)} <= C ||f||_{L^p}``.

All comparisons use :class:`fractions.Fraction`; ``math.inf`` is accepted for
``p``, ``q`` and ``t`` and handled symbolically (``1/inf = 0``).

Necessary conditions:

* ``p_range``: ``1 <= p < d/k``;
* ``scaling``: ``d/p - (d-k)/t = k``;
* ``q_bound``: ``q <= (d-k) p'`` with ``p' = p/(p-1)``.

Sufficient sources, in the order they are tried:

* ``fubini``: ``p = t = 1``, any ``q``;
* ``oberlin-stein``: ``k = d-1`` (the necessary conditions characterize);
* ``christ-A``: ``k <= d-2`` and ``p <= (d+1)/(k+1)``;
  ``christ-B``: ``k <= d-2`` and ``p <= 2``;
* ``drury-x-ray``: ``k = 1``, ``p < (d+1)/2`` (strict) and
  ``t = q = (d-1)p/(d-p)``;
  ``drury-k-plane``: ``k >= (d-1)/2``, ``p <= (d+1)/(k+1)`` and
  ``t = q = (d-k)p/(d-kp)``.

Anything that passes the necessary conditions and no source is reported as
open, without heuristics.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

__all__ = [
    "INF",
    "ExponentQuery",
    "Verdict",
    "as_exponent",
    "scaling_t",
    "check",
    "sweep",
    "sweep_csv",
]

INF = math.inf
Exponent = Union[Fraction, float]

NECESSARY_VIOLATED = "necessary_violated"
SUFFICIENT = "sufficient"
OPEN = "open"


def as_exponent(x) -> Exponent:
    """Parse ``x`` into an exact rational or ``inf``.

    Floats are converted through their shortest decimal representation, so
    ``1.5`` becomes ``3/2``. Strings such as ``"4/3"``, ``"inf"`` work too.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "infinity", "oo"):
            return INF
        return Fraction(s)
    if isinstance(x, float):
        if math.isinf(x) and x > 0:
            return INF
        if not math.isfinite(x):
            raise ValueError(f"invalid exponent {x!r}")
        return Fraction(repr(x))
    return Fraction(x)


def _inv(x: Exponent) -> Fraction:
    return Fraction(0) if x == INF else 1 / x


def _conj(p: Exponent) -> Exponent:
    if p == INF:
        return Fraction(1)
    if p == 1:
        return INF
    return p / (p - 1)


def _fmt(x) -> Optional[str]:
    if x is None:
        return None
    if x == INF:
        return "inf"
    return str(x)


@dataclass(frozen=True)
class ExponentQuery:
    d: int
    k: int
    p: Exponent
    q: Exponent
    t: Exponent

    def __post_init__(self):
        if int(self.d) != self.d or int(self.k) != self.k:
            raise ValueError("d and k must be integers")
        if self.d < 2:
            raise ValueError(f"need d >= 2, got d={self.d}")
        if not (1 <= self.k <= self.d - 1):
            raise ValueError(f"need 1 <= k <= d-1, got k={self.k}, d={self.d}")
        for name in ("p", "q", "t"):
            v = as_exponent(getattr(self, name))
            if v < 1:
                raise ValueError(f"exponent {name} must be >= 1, got {v}")
            object.__setattr__(self, name, v)
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "k", int(self.k))

    def to_dict(self) -> dict:
        return {"d": self.d, "k": self.k, "p": _fmt(self.p), "q": _fmt(self.q), "t": _fmt(self.t)}


@dataclass(frozen=True)
class Verdict:
    """Outcome of :func:`check`.

    ``source`` is the first sufficient source that fires; ``sources`` lists
    every applicable one.
    """

    query: ExponentQuery
    status: str
    reasons: tuple = ()
    source: Optional[str] = None
    sources: tuple = ()
    scaling_t: Optional[Exponent] = None
    notes: tuple = field(default=())

    def __post_init__(self):
        if self.status == NECESSARY_VIOLATED and not self.reasons:
            raise ValueError("a violated verdict needs at least one reason")
        if self.status == SUFFICIENT and (self.reasons or self.source is None):
            raise ValueError("a sufficient verdict needs a source and no violations")

    @property
    def is_sufficient(self) -> bool:
        return self.status == SUFFICIENT

    def to_dict(self) -> dict:
        return {
            "query": self.query.to_dict(),
            "status": self.status,
            "reasons": list(self.reasons),
            "source": self.source,
            "sources": list(self.sources),
            "scaling_t": _fmt(self.scaling_t),
            "notes": list(self.notes),
        }


def scaling_t(d: int, k: int, p) -> Optional[Exponent]:
    """The ``t`` solving ``d/p - (d-k)/t = k``, or None when ``d/p <= k``."""
    p = as_exponent(p)
    gap = d * _inv(p) - k
    if gap <= 0:
        return None
    return Fraction(d - k) / gap


def _necessary(q: ExponentQuery) -> list:
    d, k, p = q.d, q.k, q.p
    reasons = []
    if not p < Fraction(d, k):
        reasons.append("p_range")
    if d * _inv(p) - (d - k) * _inv(q.t) != k:
        reasons.append("scaling")
    bound = _conj(p)
    if bound != INF:
        bound = (d - k) * bound
    if bound != INF and (q.q == INF or q.q > bound):
        reasons.append("q_bound")
    return reasons


def _drury_diag(q: ExponentQuery) -> bool:
    d, k, p = q.d, q.k, q.p
    if p == INF or d - k * p <= 0:
        return False
    target = (d - k) * p / (d - k * p)
    return q.t == target and q.q == target


def _sources(q: ExponentQuery) -> list:
    d, k, p = q.d, q.k, q.p
    out = []
    if p == 1 and q.t == 1:
        out.append("fubini")
    if k == d - 1:
        out.append("oberlin-stein")
    if k <= d - 2:
        if p <= Fraction(d + 1, k + 1):
            out.append("christ-A")
        if p <= 2:
            out.append("christ-B")
    if k == 1 and p < Fraction(d + 1, 2) and _drury_diag(q):
        out.append("drury-x-ray")
    if 2 * k >= d - 1 and p <= Fraction(d + 1, k + 1) and _drury_diag(q):
        out.append("drury-k-plane")
    return out


def check(query: ExponentQuery) -> Verdict:
    """Classify ``query`` against the necessary and known sufficient conditions."""
    st = scaling_t(query.d, query.k, query.p)
    reasons = _necessary(query)
    if reasons:
        return Verdict(query, NECESSARY_VIOLATED, tuple(reasons), scaling_t=st)
    srcs = _sources(query)
    notes = []
    if query.k == 1 and "drury-x-ray" not in srcs and query.p == Fraction(query.d + 1, 2):
        notes.append("x-ray diagonal range is strict at p = (d+1)/2")
    if "christ-B" in srcs and query.d == 2 * query.k + 1:
        notes.append("d = 2k+1: the second range is 1 <= p <= 2")
    if srcs:
        return Verdict(query, SUFFICIENT, (), srcs[0], tuple(srcs), st, tuple(notes))
    return Verdict(query, OPEN, scaling_t=st, notes=tuple(notes))


def sweep(d: int, k: int, grid: int = 200, q_mode: str = "diagonal") -> list:
    """Rasterize the ``(p, 1/t)`` plane into verdict rows.

    ``p`` runs over ``grid`` equispaced rationals in ``[1, d/k]`` and ``1/t``
    over ``grid`` equispaced rationals in ``[0, 1]``. With ``q_mode =
    "diagonal"`` every cell uses ``q = t``; with ``"extremal"`` it uses the
    largest ``q`` allowed by the necessary bound.
    """
    if grid < 2:
        raise ValueError("grid must be >= 2")
    if q_mode not in ("diagonal", "extremal"):
        raise ValueError("q_mode must be 'diagonal' or 'extremal'")
    rows = []
    pmax = Fraction(d, k)
    for i in range(grid):
        p = 1 + (pmax - 1) * Fraction(i, grid - 1)
        for j in range(grid):
            inv_t = Fraction(j, grid - 1)
            t = INF if inv_t == 0 else 1 / inv_t
            if q_mode == "diagonal":
                qq = t
            else:
                c = _conj(p)
                qq = INF if c == INF else (d - k) * c
            v = check(ExponentQuery(d, k, p, qq, t))
            rows.append(
                {
                    "p": float(p),
                    "inv_t": float(inv_t),
                    "q": float(qq),
                    "status": v.status,
                    "source": v.source or "",
                    "reasons": "|".join(v.reasons),
                }
            )
    return rows


def sweep_csv(rows: list) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["p", "inv_t", "q", "status", "source", "reasons"], lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()
