"""Command-line front end: every verification as a reproducible command.

Each subcommand reads a domain (inline JSON or a file path), runs one
verification, writes CSV/JSON artifacts stamped with the config hash, and
encodes the verdict in its exit status so CI can gate on paper-claim checks:
0 pass, 1 verification failure, 2 usage error, 3 invalid numerics.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, analytic, bounds, cluster as cl, fem, layer, rellich, reports
from .config import RunConfig, config_from_json, load_config
from .geometry import Disk, spec_from_json
from .verify import (cached_spectrum, emit_artifacts, loggrid, run_criteria,
                     _write_spectrum_csv)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


class NumericError(ValueError):
    pass


def _parse_domain(text: str):
    if text.strip().startswith("{"):
        return spec_from_json(json.loads(text))
    return spec_from_json(json.loads(Path(text).read_text()))


def _parse_grid(text: str, log: bool = True) -> np.ndarray:
    """'a:b:n' -> n points from a to b (log-spaced unless log=False)."""
    try:
        a, b, n = text.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError as exc:
        raise NumericError(f"bad grid spec {text!r}, expected a:b:n") from exc
    if n < 1 or b < a:
        raise NumericError(f"bad grid spec {text!r}")
    if n == 1:
        return np.array([a])
    return np.geomspace(a, b, n) if log else np.linspace(a, b, n)


def _parse_list(text: str) -> tuple:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise NumericError(f"bad list {text!r}, expected comma-separated numbers") from exc


def _config_for(args, domain) -> RunConfig:
    from .geometry import spec_to_json
    return RunConfig(domain=spec_to_json(domain),
                     seed=getattr(args, "seed", 7) or 7)


def _comment(cfg: RunConfig, domain) -> str:
    return reports.header_comment(domain.kind, cfg.effective_seed(), cfg.config_hash())


def _seeded_cluster(spectrum, lam: float, s: float, seed: int):
    # an empty window is the zero cluster, not an error
    return cl.assemble(spectrum, lam, s, seed=seed)


def cmd_spectrum(args) -> int:
    domain = _parse_domain(args.domain)
    cfg = _config_for(args, domain)
    out = Path(args.out)
    if args.fem:
        spectrum = fem.build_fem_spectrum(domain, args.h, args.count)
        rows = [{"lambda_h": p.lam, "residual": p.residual} for p in spectrum.pairs]
        reports.write_csv(out / "spectrum_fem.csv", _comment(cfg, domain),
                          ["lambda_h", "residual"], rows)
    else:
        pairs = analytic.eigenpairs_below(domain, args.below)
        _write_spectrum_csv(out / "spectrum.csv", _comment(cfg, domain), pairs)
    return EXIT_OK


def cmd_rellich(args) -> int:
    domain = _parse_domain(args.domain)
    cfg = _config_for(args, domain)
    spectrum = cached_spectrum(domain, args.lam + args.s + 0.5)
    u = _seeded_cluster(spectrum, args.lam, args.s, cfg.effective_seed())
    rep = rellich.rellich_check(u)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "rellich.json").write_text(rep.to_json() + "\n")
    return EXIT_OK if rep.valid else EXIT_VERIFICATION


def _sweep_command(args, which: str) -> int:
    domain = _parse_domain(args.domain)
    cfg = _config_for(args, domain)
    grid = _parse_grid(args.lambda_grid)
    cutoff = float(grid[-1]) + 1.0
    cols = ["lambda", "s", "members", "r_min", "r_max", "q_upper", "q_lower"]
    if which == "projector":
        spectrum = cached_spectrum(domain, cutoff)
        rows = bounds.projector_bound(spectrum, grid)
        cols = ["lambda", "members", "eig_max", "value"]
        name = "projector.csv"
    elif which == "hk":
        s = args.s
        spectrum = cached_spectrum(domain, cutoff + s)
        k_list = _parse_list(args.k_list)
        jobs = max(1, args.jobs)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(
                lambda lam: bounds.hk_sweep(spectrum, [lam], s, k_list), grid))
        rows = [r for chunk in chunks for r in chunk]
        cols = ["lambda", "s", "k", "members", "hk_max", "q_hk", "q_hk_flat"]
        name = "hk_sweep.csv"
    else:
        s_grid = _parse_list(args.s_grid)
        spectrum = cached_spectrum(domain, cutoff + max(s_grid))
        sweep = bounds.upper_sweep if which == "upper" else bounds.lower_sweep
        jobs = max(1, args.jobs)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(lambda lam: sweep(spectrum, [lam], s_grid), grid))
        rows = [r for chunk in chunks for r in chunk]
        name = f"{which}_sweep.csv"
    reports.write_csv(Path(args.out) / name, _comment(cfg, domain), cols, rows)
    return EXIT_OK


def cmd_counterexample(args) -> int:
    u, rep = bounds.counterexample_disk(args.n, args.k)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"counterexample_{args.n}_{args.k}.json").write_text(cl.to_json(u) + "\n")
    reports.write_json(out / f"counterexample_{args.n}_{args.k}_report.json", rep)
    return EXIT_OK if rep["achieved_ratio"] <= 1e-8 else EXIT_VERIFICATION


def cmd_ozawa(args) -> int:
    domain = _parse_domain(args.domain)
    if not isinstance(domain, Disk):
        raise NumericError("the Ozawa check runs on disk domains")
    cfg = _config_for(args, domain)
    spectrum = cached_spectrum(domain, args.lam + 0.5)
    thetas = 2.0 * math.pi * np.arange(args.points) / args.points
    rows = []
    for th in thetas:
        p = np.asarray(domain.center) + domain.radius * np.array([math.cos(th), math.sin(th)])
        ssum = bounds.ozawa_sum(spectrum, p, args.lam)
        pred = bounds.ozawa_prediction(args.lam)
        rows.append({"lambda": args.lam, "sum": ssum, "prediction": pred,
                     "ratio": ssum / pred})
    reports.write_csv(Path(args.out) / "ozawa.csv", _comment(cfg, domain),
                      ["lambda", "sum", "prediction", "ratio"], rows)
    mean_ratio = float(np.mean([r["ratio"] for r in rows]))
    return EXIT_OK if args.band_lo <= mean_ratio <= args.band_hi else EXIT_VERIFICATION


def cmd_layer(args) -> int:
    domain = Disk(radius=1.0)
    cfg = _config_for(args, domain)
    spectrum = cached_spectrum(domain, args.lam + args.s + 0.5)
    u = _seeded_cluster(spectrum, args.lam, args.s, cfg.effective_seed())
    rgrid = _parse_grid(args.rgrid, log=False)
    prof = layer.profile(u, rgrid)
    bd = layer.bdy_est_check(u, rgrid)
    en = layer.energy_bound_check(u, rgrid)
    di = layer.diff_ineq_check(u, rgrid)
    slack = np.full_like(prof.r, np.nan)
    slack[1:-1] = di["slack"]
    rows = [{"r": float(prof.r[i]), "L": float(prof.L[i]), "E": float(prof.E[i]),
             "rho_bdy": (None if not np.isfinite(bd["rho"][i]) else float(bd["rho"][i])),
             "rho_energy": float(en["ratio"][i]),
             "slack": (None if not np.isfinite(slack[i]) else float(slack[i]))}
            for i in range(len(prof.r))]
    out = Path(args.out)
    reports.write_csv(out / "layer_profile.csv", _comment(cfg, domain),
                      ["r", "L", "E", "rho_bdy", "rho_energy", "slack"], rows)
    reports.write_json(out / "layer_report.json", {
        "lambda": u.lam, "s": u.s, "seed": cfg.effective_seed(),
        "max_rho": bd["max_rho"], "max_energy_ratio": en["max_ratio"],
        "min_slack": di["min_slack"], "energy_constant": di["energy_constant"],
        "excluded_points": di["excluded"],
    })
    tol = 1e-4 * u.lam ** 4 * cl.norm_l2(u) ** 2
    return EXIT_OK if di["min_slack"] >= -tol else EXIT_VERIFICATION


def cmd_verify_all(args) -> int:
    cfg = load_config(args.config) if args.config else RunConfig()
    only = {int(v) for v in args.only.split(",")} if args.only else None
    results = run_criteria(cfg, only=only)
    outdir = Path(cfg.outdir)
    emit_artifacts(cfg, outdir)
    for r in results:
        print(r.line())
    summary = {
        "pass": all(r.passed for r in results),
        "fail": [r.cid for r in results if not r.passed],
        "details": {str(r.cid): {"name": r.name, "passed": r.passed,
                                 "runtime_s": r.runtime_s, **_as_plain(r.details)}
                    for r in results},
        "config_hash": cfg.config_hash(),
    }
    reports.write_json(outdir / "summary.json", summary)
    return EXIT_OK if summary["pass"] else EXIT_VERIFICATION


def _as_plain(details: dict) -> dict:
    import numpy as _np

    def conv(v):
        if isinstance(v, _np.generic):
            return v.item()
        if isinstance(v, _np.ndarray):
            return v.tolist()
        if isinstance(v, dict):
            return {k: conv(x) for k, x in v.items()}
        if isinstance(v, (list, tuple)):
            return [conv(x) for x in v]
        return v

    return {k: conv(v) for k, v in details.items()}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="clusterflux",
                                 description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"clusterflux {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    default_domain = '{"kind": "disk", "radius": 1.0}'

    def common(p, domain=True):
        if domain:
            p.add_argument("--domain", default=default_domain,
                           help="domain JSON (inline or a file path)")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--seed", type=int, default=7)
        p.add_argument("--jobs", type=int, default=1,
                       help="worker threads for sweep cells")

    p = sub.add_parser("spectrum", help="export eigenvalues below a cutoff")
    common(p)
    p.add_argument("--below", type=float, required=True)
    p.add_argument("--fem", action="store_true")
    p.add_argument("--h", type=float, default=0.05)
    p.add_argument("--count", type=int, default=10, help="FEM eigenpair count")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("rellich", help="check the multiplier identity on one cluster")
    common(p)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--s", type=float, required=True)
    p.set_defaults(func=cmd_rellich)

    for name, which in (("sweep-upper", "upper"), ("sweep-lower", "lower")):
        p = sub.add_parser(name, help=f"{which}-bound ratio sweep")
        common(p)
        p.add_argument("--lambda-grid", default="5:40:10", help="a:b:n, log-spaced")
        p.add_argument("--s-grid", default="0.05,0.2,1.0")
        p.set_defaults(func=lambda a, w=which: _sweep_command(a, w))

    p = sub.add_parser("projector", help="cumulative-window projector bound")
    common(p)
    p.add_argument("--lambda-grid", default="10:40:7")
    p.set_defaults(func=lambda a: _sweep_command(a, "projector"))

    p = sub.add_parser("hk", help="H^k trace-norm sweep (disk)")
    common(p)
    p.add_argument("--lambda-grid", default="5:40:10")
    p.add_argument("--s", type=float, default=0.2)
    p.add_argument("--k-list", default="0,0.5,1,2")
    p.set_defaults(func=lambda a: _sweep_command(a, "hk"))

    p = sub.add_parser("counterexample", help="wide-window trace cancellation")
    common(p, domain=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("ozawa", help="boundary Weyl sum against lam^4/(8 pi)")
    common(p)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--points", type=int, default=8)
    p.add_argument("--band-lo", type=float, default=0.85)
    p.add_argument("--band-hi", type=float, default=1.15)
    p.set_defaults(func=cmd_ozawa)

    p = sub.add_parser("layer", help="boundary-layer profile on the unit disk")
    common(p, domain=False)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--rgrid", default="0:0.333:400", help="a:b:n, linear")
    p.set_defaults(func=cmd_layer)

    p = sub.add_parser("verify-all", help="run the acceptance suite")
    p.add_argument("--config", default=None, help="RunConfig JSON file")
    p.add_argument("--only", default=None, help="comma-separated criterion ids")
    p.set_defaults(func=cmd_verify_all)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        code = args.func(args)
    except (NumericError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return code


if __name__ == "__main__":
    sys.exit(main())
