"""
Command line interface ``kplane``.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for
configuration or usage errors.
"""
from __future__ import annotations

import argparse
import configparser
import json
import math
import os
import sys
import warnings

from . import __version__
from .admissibility import ExponentQuery, as_exponent, check, sweep, sweep_csv
from .fields import CATALOG_KEYS, catalog
from .grassmann import parse_quadrature
from .grid import sample
from .littlewood_paley import BandClippedWarning, default_partition
from .norms import (
    NormResult,
    besov,
    besov_g,
    lp_norm,
    lq_norm_g,
    mixed_norm,
    sobolev,
    sobolev_g,
    tl,
    tl_g,
    weighted_sobolev,
    weighted_sobolev_g,
)
from .suites import DEFAULT_TOLERANCES, SUITES, Settings, demo_divergence, verify
from .transform import fiberfield_to_json, transform_slice

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


def load_config(path: str) -> dict:
    """Read ``key = value`` lines (``#`` comments allowed) into a dict."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_string("[kplane]\n" + fh.read())
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return dict(parser["kplane"])


def build_settings(args) -> Settings:
    cfg = load_config(args.config) if getattr(args, "config", None) else {}
    profile = cfg.pop("profile", "default")
    if getattr(args, "profile", None):
        profile = args.profile
    seed = cfg.pop("seed", 0)
    env = os.environ.get("KPLANE_SEED")
    if env is not None:
        seed = env
    if getattr(args, "seed", None) is not None:
        seed = args.seed
    try:
        seed = int(seed)
    except ValueError:
        raise ConfigError(f"seed must be an integer, got {seed!r}") from None
    grids, tols = [], []
    for key, val in cfg.items():
        try:
            if key.startswith("grid.d"):
                n, L = (x.strip() for x in val.split(","))
                grids.append((int(key[len("grid.d"):]), int(n), float(L)))
            elif key.startswith("tol."):
                name = key[len("tol."):]
                if name not in DEFAULT_TOLERANCES:
                    raise ConfigError(f"unknown tolerance {name!r}")
                tols.append((name, float(val)))
            else:
                raise ConfigError(f"unknown config key {key!r}")
        except ValueError:
            raise ConfigError(f"malformed value for {key!r}: {val!r}") from None
    st = Settings(profile, seed, tuple(sorted(grids)), tuple(sorted(tols)))
    try:
        st.spec(2)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return st


def _add_common(p):
    p.add_argument("--profile", choices=["default", "fine"], default=None)
    p.add_argument("--config", help="key=value file with grid and tolerance overrides")
    p.add_argument("--seed", type=int, default=None, help="overrides KPLANE_SEED and the config file")


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_transform(args) -> int:
    st = build_settings(args)
    spec = st.spec(args.d)
    f = sample(catalog(args.field, args.d, spec.half_width, args.k).eval, spec)
    quad = args.quad or ("circle:64" if (args.k, args.d) == (1, 2) else "mc:64")
    q = parse_quadrature(quad, args.k, args.d, st.seed)
    u = transform_slice(f, q)
    _emit(fiberfield_to_json(u), args.out)
    return EXIT_PASS


def _exp(params, name, default=None):
    if name not in params:
        if default is None:
            raise ConfigError(f"missing parameter {name!r}")
        return default
    v = as_exponent(params[name])
    return math.inf if v == math.inf else float(v)


def compute_norm(space, side, params, field, d, k, quad_text, settings) -> NormResult:
    """Evaluate one norm of a catalog field (``side='g'`` uses its transform)."""
    spec = settings.spec(d)
    f = sample(catalog(field, d, spec.half_width, k).eval, spec)
    s = float(params.get("s", 0.0))
    quad_id = None
    err = 0.0
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", BandClippedWarning)
        part = default_partition(spec) if space in ("B", "F") else None
        if side == "rd":
            if space == "L":
                val = lp_norm(f, _exp(params, "p"))
            elif space == "H":
                val = sobolev(f, s)
            elif space == "Hw":
                val = weighted_sobolev(f, s, _exp(params, "p"), float(params.get("t_w", 0.0)))
            elif space == "B":
                val = besov(f, s, _exp(params, "p"), _exp(params, "r"), part)
            else:
                val = tl(f, s, _exp(params, "p"), _exp(params, "r"), part)
        else:
            q = parse_quadrature(quad_text, k, d, settings.seed)
            quad_id = q.descriptor()
            u = transform_slice(f, q)
            if space == "L":
                qq = _exp(params, "q")
                tt = _exp(params, "t", qq)
                val, err = mixed_norm(u, qq, tt, with_error=True) if tt != qq else lq_norm_g(u, qq, with_error=True)
            elif space == "H":
                val, err = sobolev_g(u, s, with_error=True)
            elif space == "Hw":
                val, err = weighted_sobolev_g(u, s, _exp(params, "p"), float(params.get("t_w", 0.0)), with_error=True)
            elif space == "B":
                val = besov_g(u, s, _exp(params, "q"), _exp(params, "t"), _exp(params, "r"), part)
            else:
                val = tl_g(u, s, _exp(params, "q"), _exp(params, "t"), _exp(params, "r"), part)
    clipped = any(issubclass(w.category, BandClippedWarning) for w in caught)
    norm_id = f"{space}:{side}"
    return NormResult(
        norm_id,
        dict(params, field=field, d=d, k=k),
        float(val),
        part.partition_id if part else None,
        quad_id,
        float(err),
        clipped,
    )


def cmd_norm(args) -> int:
    st = build_settings(args)
    try:
        params = json.loads(args.params)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"--params is not valid JSON: {exc}") from None
    if not isinstance(params, dict):
        raise ConfigError("--params must be a JSON object")
    quad = args.quad or ("circle:64" if (args.k, args.d) == (1, 2) else "mc:64")
    res = compute_norm(args.space, args.side, params, args.field, args.d, args.k, quad, st)
    _emit(res.to_json(), None)
    return EXIT_PASS


def cmd_verify(args) -> int:
    st = build_settings(args)
    reports = verify(args.suite, st)
    lines = "".join(r.to_json(timings=args.timings) + "\n" for r in reports)
    _emit(lines, args.out)
    if args.out:
        for r in reports:
            sys.stdout.write(f"{r.status.upper():7s} {r.suite_id}\n")
    return EXIT_PASS if all(r.status != "fail" for r in reports) else EXIT_FAIL


def cmd_admissible(args) -> int:
    v = check(ExponentQuery(args.d, args.k, args.p, args.q, args.t))
    _emit(json.dumps(v.to_dict(), sort_keys=True), None)
    return EXIT_PASS


def cmd_sweep(args) -> int:
    rows = sweep(args.d, args.k, args.grid, args.q_mode)
    _emit(sweep_csv(rows), args.out)
    return EXIT_PASS


def cmd_demo(args) -> int:
    st = build_settings(args)
    try:
        radii = [float(x) for x in args.radii.split(",")]
    except ValueError:
        raise ConfigError(f"--radii must be a comma separated list of numbers, got {args.radii!r}") from None
    rep = demo_divergence(args.a, args.delta, radii, args.d, args.k, args.growth, settings=st)
    _emit(rep.to_json(), None)
    if args.csv:
        rows = ["R,I"] + [f"{R!r},{I!r}" for R, I in zip(rep.params["radii"], rep.detail["integrals"])]
        _emit("\n".join(rows), args.csv)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kplane", description="k-plane transform toolkit")
    ap.add_argument("--version", action="version", version=f"kplane {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="sample a catalog field and write its k-plane transform")
    p.add_argument("--field", required=True, help="catalog key: " + ", ".join(CATALOG_KEYS))
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--quad", help="circle:M or mc:count[:seed]")
    p.add_argument("--out", help="output JSON file (default: stdout)")
    _add_common(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("norm", help="evaluate a norm of a catalog field or of its transform")
    p.add_argument("--space", choices=["L", "H", "Hw", "B", "F"], required=True)
    p.add_argument("--side", choices=["rd", "g"], required=True)
    p.add_argument("--params", default="{}", help='JSON object, e.g. {"s": 1, "p": 2, "t_w": 0.5}')
    p.add_argument("--field", required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--quad")
    _add_common(p)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("verify", help="run verification suites, one JSON line per report")
    p.add_argument("suite", choices=list(SUITES) + ["all"])
    p.add_argument("--out", help="write JSON lines here and a summary to stdout")
    p.add_argument("--timings", action="store_true", help="include runtime_ms (breaks byte reproducibility)")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("admissible", help="classify an exponent tuple")
    for name in ("d", "k"):
        p.add_argument(f"--{name}", type=int, required=True)
    for name in ("p", "q", "t"):
        p.add_argument(f"--{name}", type=as_exponent, required=True, help="rational such as 4/3, or inf")
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("sweep", help="rasterize verdicts over (p, 1/t) to CSV")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--grid", type=int, default=200)
    p.add_argument("--q-mode", choices=["diagonal", "extremal"], default="diagonal")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("demo", help="narrative demonstrations")
    dsub = p.add_subparsers(dest="demo", required=True)
    q = dsub.add_parser("divergence", help="growth of truncated plane integrals of a slowly decaying field")
    q.add_argument("--a", type=float, default=None, help="decay exponent (default k)")
    q.add_argument("--delta", type=float, default=0.9)
    q.add_argument("--radii", default="8,16,32,64")
    q.add_argument("--d", type=int, default=2)
    q.add_argument("--k", type=int, default=1)
    q.add_argument("--growth", type=float, default=None)
    q.add_argument("--csv", help="also write R,I(R) rows here")
    _add_common(q)
    q.set_defaults(func=cmd_demo)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_PASS
    try:
        return args.func(args)
    except (ConfigError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        sys.stderr.write(f"kplane: error: {msg}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
