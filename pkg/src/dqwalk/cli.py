"""Command-line front end: observable grids, sweeps, CSV/JSON emitters.

Rows are always sorted by (r_d, t, s, k) and floats printed with 17
significant digits, so identical invocations produce byte-identical files.
Every CSV output gets a manifest JSON alongside recording the invocation.
Exit codes: 0 success, 1 invalid input, 2 numerical failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, core, fourier, spectral, validate, wigner
from .core import ModelParams
from .exceptions import BracketError, NumericalError, QuadratureLimitError

SCALAR_OBSERVABLES = ("purity", "entropy", "variance", "cf")


def _fmt(value: float) -> str:
    return format(value, ".17g")


def _parse_grid(text: str) -> np.ndarray:
    """Parse 'a:b:step' into an inclusive grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be 'a:b:step', got {text!r}")
    a, b, step = (float(x) for x in parts)
    if step <= 0 or b < a:
        raise ValueError(f"bad grid {text!r}")
    count = int(round((b - a) / step)) + 1
    return a + step * np.arange(count)


def _parse_range(text: str) -> tuple[int, int]:
    """Parse 'lo:hi' into an integer site range."""
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError(f"range must be 'lo:hi', got {text!r}")
    lo, hi = int(parts[0]), int(parts[1])
    if hi < lo:
        raise ValueError(f"empty range {text!r}")
    return lo, hi


def _parse_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _load_config(path: str | None) -> dict:
    defaults = {"mass_tol": 1e-12, "eps_tail": 1e-14, "quad_nodes": 256, "k_nodes": 256}
    if path is None:
        return defaults
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in defaults:
            raise ValueError(f"unknown config key {key!r}")
        caster = int if key in ("quad_nodes", "k_nodes") else float
        defaults[key] = caster(value.strip())
    return defaults


def _params_from_args(args, tprime: float | None = None) -> ModelParams:
    if args.omega_over_hbar is not None:
        if args.d_coeff is None or args.t is None:
            raise ValueError("--omega-over-hbar requires --d-coeff and --t")
        return ModelParams.from_physical(args.omega_over_hbar, args.d_coeff, args.t)
    if tprime is None:
        tprime = args.tprime
    if tprime is None or args.rd is None:
        raise ValueError("provide --tprime/--rd or --omega-over-hbar/--d-coeff/--t")
    return ModelParams(tprime=tprime, r_d=args.rd)


def _write_csv(path: str, header: list[str], rows: list[tuple]) -> None:
    out = Path(path)
    if out.parent != Path("."):
        out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(
                ",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row)
                + "\n"
            )


def _write_manifest(out_path: str, command: str, settings: dict, elapsed: float) -> None:
    manifest = {
        "command": command,
        "settings": settings,
        "outputs": [out_path],
        "tool_version": __version__,
        "wall_clock_seconds": elapsed,
    }
    Path(out_path + ".manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def _profile_rows(tprime: float, r_d: float, s_lo: int, s_hi: int) -> list[tuple]:
    p = ModelParams(tprime=tprime, r_d=r_d)
    trunc = core.truncation_for(p)
    sites = np.arange(s_lo, s_hi + 1)
    probs = core.probability_profile(sites, p, trunc)
    return [(float(tprime), float(r_d), int(s), float(v)) for s, v in zip(sites, probs)]


def cmd_prob(args, config) -> int:
    start = time.perf_counter()
    s_lo, s_hi = _parse_range(args.s_range)
    rd_values = _parse_list(args.rd_list) if args.rd_list else None
    rows = []
    if rd_values is not None:
        tprime = args.tprime
        if tprime is None:
            raise ValueError("--rd-list requires --tprime")
        for r_d in sorted(rd_values):
            rows += _profile_rows(tprime, r_d, s_lo, s_hi)
    else:
        p = _params_from_args(args)
        rows += _profile_rows(p.tprime, p.r_d, s_lo, s_hi)
    rows.sort(key=lambda r: (r[1], r[0], r[2]))
    _write_csv(args.out, ["t", "r_d", "s", "p"], rows)
    _write_manifest(
        args.out,
        "prob",
        {"s_range": args.s_range, "rd_list": rd_values, "tprime": args.tprime},
        time.perf_counter() - start,
    )
    return 0


def cmd_carpet(args, config) -> int:
    start = time.perf_counter()
    s_lo, s_hi = _parse_range(args.s_range)
    t_values = _parse_grid(args.t_grid)
    if args.rd is None:
        raise ValueError("carpet requires --rd")
    tasks = [(float(t), args.rd, s_lo, s_hi) for t in t_values]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            blocks = list(pool.map(_profile_rows_star, tasks))
    else:
        blocks = [_profile_rows(*task) for task in tasks]
    rows = [row for block in blocks for row in block]
    rows.sort(key=lambda r: (r[1], r[0], r[2]))
    _write_csv(args.out, ["t", "r_d", "s", "p"], rows)
    _write_manifest(
        args.out,
        "carpet",
        {"t_grid": args.t_grid, "rd": args.rd, "s_range": args.s_range, "jobs": args.jobs},
        time.perf_counter() - start,
    )
    return 0


def _profile_rows_star(task):
    return _profile_rows(*task)


def cmd_wigner(args, config) -> int:
    start = time.perf_counter()
    s_lo, s_hi = _parse_range(args.s_range)
    p = _params_from_args(args)
    n_k = args.k_nodes or config["k_nodes"]
    grid = wigner.wigner_grid(s_lo, s_hi, p, wigner.k_grid(n_k))
    w_max = float(grid.values.max())
    rows = []
    for i, s in enumerate(grid.sites):
        for j, k in enumerate(grid.k_nodes):
            w = float(grid.values[i, j])
            rows.append((p.tprime, p.r_d, int(s), float(k), w, w / w_max))
    rows.sort(key=lambda r: (r[1], r[0], r[2], r[3]))
    _write_csv(args.out, ["t", "r_d", "s", "k", "w", "w_normalized"], rows)
    _write_manifest(
        args.out,
        "wigner",
        {"s_range": args.s_range, "k_nodes": n_k, "tprime": p.tprime, "rd": p.r_d},
        time.perf_counter() - start,
    )
    return 0


def _scalar_value(name: str, p: ModelParams, xi: float, mass_tol: float) -> float:
    if name == "purity":
        return core.purity(p)
    if name == "entropy":
        return spectral.entropy(p, mass_tol)
    if name == "variance":
        return core.variance(p)
    return core.characteristic_function(xi, p)


def _scalar_task(task):
    name, tprime, r_d, xi, mass_tol = task
    value = _scalar_value(name, ModelParams(tprime=tprime, r_d=r_d), xi, mass_tol)
    return (tprime, r_d, value)


def cmd_scalar(name: str, args, config) -> int:
    start = time.perf_counter()
    t_values = _parse_grid(args.t_grid)
    rd_values = sorted(_parse_list(args.rd_list))
    if not rd_values:
        raise ValueError("empty --rd-list")
    tasks = [
        (name, float(t), float(r), args.xi, config["mass_tol"])
        for r in rd_values
        for t in t_values
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_scalar_task, tasks))
    else:
        rows = [_scalar_task(task) for task in tasks]
    rows.sort(key=lambda r: (r[1], r[0]))
    _write_csv(args.out, ["t", "r_d", "value"], rows)
    _write_manifest(
        args.out,
        name,
        {
            "t_grid": args.t_grid,
            "rd_list": rd_values,
            "xi": args.xi if name == "cf" else None,
            "mass_tol": config["mass_tol"],
            "jobs": args.jobs,
        },
        time.perf_counter() - start,
    )
    return 0


def cmd_critical_rd(args, config) -> int:
    value = wigner.critical_rd(args.t_star, args.lo, args.hi, args.tol)
    payload = json.dumps(
        {"r_d_c": value, "t_star": args.t_star, "tol": args.tol}, indent=2
    )
    if args.out:
        Path(args.out).write_text(payload + "\n")
    else:
        print(payload)
    return 0


def cmd_validate(args, config) -> int:
    report = validate.run_checks(args.level, quad_nodes=config["quad_nodes"])
    payload = json.dumps(report, indent=2)
    if args.out:
        Path(args.out).write_text(payload + "\n")
    else:
        print(payload)
    return 0 if report["passed"] else 2


def cmd_sweep(args, config) -> int:
    if args.observable not in SCALAR_OBSERVABLES:
        raise ValueError(
            f"observable must be one of {SCALAR_OBSERVABLES}, got {args.observable!r}"
        )
    return cmd_scalar(args.observable, args, config)


def _add_param_flags(parser) -> None:
    parser.add_argument("--tprime", type=float, help="dimensionless time t'")
    parser.add_argument("--rd", type=float, help="dissipation ratio r_D")
    parser.add_argument("--omega-over-hbar", type=float, help="hopping rate Omega/hbar")
    parser.add_argument("--d-coeff", type=float, help="diffusion constant D")
    parser.add_argument("--t", type=float, help="physical time t")


def _add_common_flags(parser) -> None:
    parser.add_argument("--out", required=True, help="output CSV path")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes")
    parser.add_argument("--config", help="key=value config file")
    parser.add_argument("--mass-tol", type=float, help="window mass tolerance")
    parser.add_argument("--eps-tail", type=float, help="series tail tolerance")
    parser.add_argument("--quad-nodes", type=int, help="quadrature nodes per axis")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dqwalk",
        description="Observables of a dissipative quantum walk on a 1D lattice",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prob", help="site probability profile")
    _add_param_flags(p)
    p.add_argument("--rd-list", help="comma-separated r_D values")
    p.add_argument("--s-range", dest="s_range", required=True, help="lo:hi")
    _add_common_flags(p)

    p = sub.add_parser("carpet", help="probability over a time grid")
    _add_param_flags(p)
    p.add_argument("--t-grid", dest="t_grid", required=True, help="a:b:step")
    p.add_argument("--s-range", dest="s_range", required=True, help="lo:hi")
    _add_common_flags(p)

    p = sub.add_parser("wigner", help="Wigner phase-space grid")
    _add_param_flags(p)
    p.add_argument("--s-range", dest="s_range", required=True, help="lo:hi")
    p.add_argument("--k-nodes", dest="k_nodes", type=int, help="momentum nodes")
    _add_common_flags(p)

    for name in SCALAR_OBSERVABLES:
        p = sub.add_parser(name, help=f"{name} over a (t', r_D) grid")
        _add_param_flags(p)
        p.add_argument("--t-grid", dest="t_grid", required=True, help="a:b:step")
        p.add_argument("--rd-list", dest="rd_list", required=True)
        p.add_argument("--xi", type=float, default=1.0, help="cf argument xi")
        _add_common_flags(p)

    p = sub.add_parser("sweep", help="generic scalar observable sweep")
    _add_param_flags(p)
    p.add_argument("--observable", required=True, choices=SCALAR_OBSERVABLES)
    p.add_argument("--t-grid", dest="t_grid", required=True)
    p.add_argument("--rd-list", dest="rd_list", required=True)
    p.add_argument("--xi", type=float, default=1.0)
    _add_common_flags(p)

    p = sub.add_parser("critical-rd", help="quantum-classical threshold by bisection")
    p.add_argument("--t-star", dest="t_star", type=float, default=1.9)
    p.add_argument("--lo", type=float, default=0.1)
    p.add_argument("--hi", type=float, default=2.0)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--out", help="write JSON here instead of stdout")

    p = sub.add_parser("validate", help="run the self-validation suite")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.add_argument("--out", help="write JSON report here instead of stdout")
    p.add_argument("--config", help="key=value config file")
    p.add_argument("--quad-nodes", type=int, help="quadrature nodes per axis")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(getattr(args, "config", None))
        for key, attr in (
            ("mass_tol", "mass_tol"),
            ("eps_tail", "eps_tail"),
            ("quad_nodes", "quad_nodes"),
        ):
            override = getattr(args, attr, None)
            if override is not None:
                config[key] = override

        if args.command == "prob":
            return cmd_prob(args, config)
        if args.command == "carpet":
            return cmd_carpet(args, config)
        if args.command == "wigner":
            return cmd_wigner(args, config)
        if args.command in SCALAR_OBSERVABLES:
            return cmd_scalar(args.command, args, config)
        if args.command == "sweep":
            return cmd_sweep(args, config)
        if args.command == "critical-rd":
            return cmd_critical_rd(args, config)
        if args.command == "validate":
            return cmd_validate(args, config)
        raise ValueError(f"unknown command {args.command!r}")
    except (BracketError, NumericalError, QuadratureLimitError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
