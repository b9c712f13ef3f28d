"""Command-line front end: ``cosetym {reduce,action,classify,verify}``.

Exit codes: 0 success, 1 verification failure or non-convergence, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bundles, verify
from .action import ActionConfig, ConvergenceError, action_scan, find_extrema
from .connection import FIELD_SCALE, assemble_potential
from .coset_geometry import interior_grid
from .dump import curvature_rows, potential_rows, reduce_summary, write_csv, write_json
from .lie_core import PAIRING_CONSTANT

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- config file -------------------------------------------------------------

def read_config(path) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


def _apply_config(sub: argparse.ArgumentParser, values: dict[str, str]):
    """Install config values as defaults of ``sub``, converted by each flag's type."""
    actions = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, raw in values.items():
        action = actions.get(key)
        if action is None or key in ("help", "config"):
            raise UsageError(f"unknown config key {key!r}")
        conv = action.type or str
        try:
            defaults[key] = conv(raw)
        except (TypeError, ValueError, argparse.ArgumentTypeError) as exc:
            raise UsageError(f"bad value for {key}: {raw!r}") from exc
    sub.set_defaults(**defaults)


# -- argument types ---------------------------------------------------------

def _positive_float(text):
    x = float(text)
    if not x > 0 or not np.isfinite(x):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return x


def _positive_int(text):
    k = int(text)
    if k < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return k


def _finite_float(text):
    x = float(text)
    if not np.isfinite(x):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text}")
    return x


def parse_scan(spec: str) -> list[float]:
    """``start:stop:step`` (inclusive of stop) or a comma list of |f| values."""
    spec = spec.strip()
    if not spec:
        raise UsageError("empty scan spec")
    if ":" in spec:
        try:
            start, stop, step = (float(s) for s in spec.split(":"))
        except ValueError as exc:
            raise UsageError(f"bad scan spec {spec!r}; expected start:stop:step") from exc
        if not step > 0:
            raise UsageError("scan step must be positive")
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        values = [start + k * step for k in range(max(count, 0))]
    else:
        try:
            values = [float(s) for s in spec.split(",") if s.strip()]
        except ValueError as exc:
            raise UsageError(f"bad scan list {spec!r}") from exc
    if not values:
        raise UsageError(f"scan spec {spec!r} selects no values")
    return values


# -- commands ---------------------------------------------------------------

def _out_dir(args) -> Path:
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise UsageError(f"cannot create output directory {out}: {exc}") from exc
    return out


def cmd_reduce(args) -> int:
    f = complex(args.f_re, args.f_im)
    out = _out_dir(args)
    summary = reduce_summary(args.n, f, args.grid, args.scale)
    if summary["intertwiner_forced_zero"]:
        print(f"warning: intertwiner forced zero for n={args.n}; f={f} ignored, abelian output",
              file=sys.stderr)
    grid = interior_grid(args.grid, args.grid)
    pot = assemble_potential(args.n, summary["f_used_re"] + 1j * summary["f_used_im"], args.scale)
    write_csv(out / "potential.csv", *potential_rows(pot, grid))
    write_csv(out / "curvature.csv", *curvature_rows(args.n, pot.f, grid, args.scale))
    write_json(out / "summary.json", summary)
    print(json.dumps({"flat": summary["flat"], "sup_F": summary["sup_F"],
                      "patch_residual": summary["patch_residual"], "out": str(out),
                      "provenance": summary["provenance"]}, sort_keys=True))
    return EXIT_OK


def _seeds(count: int, seed: int):
    rng = np.random.default_rng(seed)
    radius = rng.uniform(0.1, 2.0, count)
    angle = rng.uniform(0.0, 2 * np.pi, count)
    return [complex(r * np.cos(a), r * np.sin(a)) for r, a in zip(radius, angle)]


def cmd_action(args) -> int:
    mags = parse_scan(args.scan)
    phase = np.exp(1j * args.phase)
    cfg = ActionConfig(n=args.n, radius=args.radius, coupling=args.coupling,
                       quadrature_order=args.quad_order, pairing_constant=args.pairing_constant,
                       scale=args.scale)
    out = _out_dir(args)
    rows = action_scan(cfg, [m * phase for m in mags])
    write_csv(out / "action_scan.csv", ["re_f", "im_f", "abs_f", "S", "analytic_S", "rel_err"],
              [[r.re_f, r.im_f, r.abs_f, r.S, r.analytic_S, r.rel_err] for r in rows])
    report = {"n": args.n, "radius": args.radius, "coupling": args.coupling,
              "max_rel_err": max(r.rel_err for r in rows), "provenance": "S-SU2", "extrema": []}
    if abs(args.n) == 1:
        try:
            found = (find_extrema(cfg, _seeds(args.seeds, args.seed), tol=args.tol)
                     + find_extrema(cfg, [args.ascent_seed], tol=args.tol, mode="ascent"))
        except ConvergenceError as exc:
            print(f"error: {exc}", file=sys.stderr)
            write_json(out / "extrema.json", {**report, "converged": False, "error": str(exc)})
            return EXIT_FAIL
        report["extrema"] = [
            {"f_re": e.f.real, "f_im": e.f.imag, "abs_f": abs(e.f), "S": e.S, "kind": e.kind,
             "iterations": e.iterations, "grad_norm": e.grad_norm,
             "seed_re": e.seed.real, "seed_im": e.seed.imag, "provenance": "S-SU2"}
            for e in found]
    report["converged"] = True
    write_json(out / "extrema.json", report)
    print(json.dumps({"max_rel_err": report["max_rel_err"], "n_extrema": len(report["extrema"]),
                      "out": str(out), "provenance": "S-SU2"}, sort_keys=True))
    return EXIT_OK


def cmd_classify(args) -> int:
    try:
        g = bundles.parse_group(args.group)
        m = bundles.parse_surface(args.surface)
        result = bundles.classify(g, m)
    except (bundles.UnknownGroupError, bundles.HypothesisError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    print(result.to_json())
    return EXIT_OK


def _parse_tolerances(items) -> dict[str, float]:
    tols = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"tolerance override {item!r} is not name=value")
        name, value = item.split("=", 1)
        if name not in verify.DEFAULT_TOLERANCES:
            raise UsageError(f"unknown check {name!r}")
        try:
            tols[name] = float(value)
        except ValueError as exc:
            raise UsageError(f"bad tolerance {value!r}") from exc
    return tols


def cmd_verify(args) -> int:
    tols = _parse_tolerances(args.tol)
    ctx = {}
    if args.pairing_constant is not None:
        ctx["pairing_constant"] = args.pairing_constant
    checks = verify.run(args.suite, tols, **ctx)
    ok = all(c.passed for c in checks)
    report = {"suite": args.suite, "passed": ok, "checks": [c.to_dict() for c in checks],
              "provenance": "verify"}
    text = json.dumps(report, sort_keys=True, indent=2)
    print(text)
    if args.out:
        write_json(args.out, report)
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status} {c.suite}.{c.name} residual={c.residual:.3e} tol={c.tol:.1e}",
              file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser -------------------------------------------------------------------

def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(prog="cosetym", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}

    def common(p):
        p.add_argument("--config", help="key = value file; flags override its values")
        p.add_argument("--n", type=int, default=1, help="monopole number of tau_n")
        p.add_argument("--scale", type=_positive_float, default=FIELD_SCALE,
                       help="field normalization (2 reproduces the standard matrices)")
        p.add_argument("--out", default="out", help="output directory")

    p = sub.add_parser("reduce", help="assemble the invariant potential and dump grids")
    common(p)
    p.add_argument("--f-re", type=_finite_float, default=0.0)
    p.add_argument("--f-im", type=_finite_float, default=0.0)
    p.add_argument("--grid", type=_positive_int, default=32, help="points per angle")
    p.set_defaults(func=cmd_reduce)
    subs["reduce"] = p

    p = sub.add_parser("action", help="scan the action over |f| and locate extrema")
    common(p)
    p.add_argument("--scan", default="0:2:0.1", help="start:stop:step or a comma list of |f|")
    p.add_argument("--phase", type=_finite_float, default=0.0, help="arg f for the scan")
    p.add_argument("--radius", type=_positive_float, default=1.0)
    p.add_argument("--coupling", type=_positive_float, default=1.0)
    p.add_argument("--quad-order", type=_positive_int, default=64)
    p.add_argument("--pairing-constant", type=_finite_float, default=PAIRING_CONSTANT)
    p.add_argument("--seeds", type=_positive_int, default=8, help="number of descent seeds")
    p.add_argument("--seed", type=int, default=0, help="RNG seed for descent seeds")
    p.add_argument("--ascent-seed", type=complex, default=0.05 + 0j)
    p.add_argument("--tol", type=_positive_float, default=1e-8, help="gradient-norm tolerance")
    p.set_defaults(func=cmd_action)
    subs["action"] = p

    p = sub.add_parser("classify", help="classify principal bundles over a surface")
    p.add_argument("group", help="SU(n), Sp(n), SO(n), U(n), discrete:H or explicit:pi0=..,pi1=..")
    p.add_argument("surface", help="sphere2, sphere:n, orientable:g or nonorientable:k")
    p.set_defaults(func=cmd_classify)
    subs["classify"] = p

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("suite", nargs="?", default="all", choices=[*verify.SUITES, "all"])
    p.add_argument("--config", help="key = value file; flags override its values")
    p.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override a tolerance")
    p.add_argument("--pairing-constant", type=_finite_float, default=None,
                   help="pairing constant used by the action suite")
    p.add_argument("--out", default=None, help="also write the JSON report here")
    p.set_defaults(func=cmd_verify)
    subs["verify"] = p
    return parser, subs


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subs = build_parser()
    try:
        pre = argparse.ArgumentParser(add_help=False)
        pre.add_argument("command", nargs="?")
        pre.add_argument("--config")
        known, _ = pre.parse_known_args(argv)
        if known.config and known.command in subs:
            _apply_config(subs[known.command], read_config(known.config))
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
