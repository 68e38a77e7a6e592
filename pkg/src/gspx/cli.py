"""``gspx`` command line.

Exit codes: 0 success, 1 usage error, 2 runtime error. Options may also be
supplied through ``--config file.json`` (keys are option names with
underscores); explicit flags win over the config file.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import experiments as ex
from .graphon import AnalyticKernel, AnalyticSignal, StepGraphon, StepSignal, discretize
from .homomorphism import (
    check_norm_sandwich,
    cut_norm_step,
    cycle_density_graph,
    cycle_density_graphon,
    hom_density_graph,
    hom_density_graphon_mc,
)
from .io import (
    coefficients_to_csv,
    fmt,
    load_graph,
    load_motif,
    load_signal,
    load_step_graphon,
    load_step_signal,
    parse_movielens,
    sampled_graph_to_dict,
    table_to_csv,
    table_to_json,
)
from .sampling import sample_graphon_signal, sample_w_random_graph
from .spectral import gft, step_spectrum, wft

MAX_SEED = (1 << 64) - 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    command: str
    output: str | None
    format: str
    seed: int
    params: dict = field(default_factory=dict)


def parse_graphon(spec: str):
    """``constant:p``, ``product``, ``soft-geometric:beta`` (alias ``pollution``) or a step-graphon JSON file."""
    name, _, arg = str(spec).partition(":")
    if name == "constant":
        return AnalyticKernel.constant(float(arg))
    if name == "product":
        return AnalyticKernel.product()
    if name in ("soft-geometric", "pollution"):
        return ex.pollution_graphon(float(arg) if arg else 3.0)
    if Path(spec).exists():
        return load_step_graphon(spec)
    raise UsageError(f"unknown graphon {spec!r}")


def parse_graphon_signal(spec: str):
    """``constant:c``, ``identity``, ``gaussian:sigma`` (alias ``pollution``) or a step-signal JSON file."""
    name, _, arg = str(spec).partition(":")
    if name == "constant":
        return AnalyticSignal.constant(float(arg))
    if name == "identity":
        return AnalyticSignal.identity()
    if name in ("gaussian", "pollution"):
        return ex.pollution_signal(float(arg) if arg else 0.3)
    if Path(spec).exists():
        return load_step_signal(spec)
    raise UsageError(f"unknown graphon signal {spec!r}")


def _int_list(text):
    if isinstance(text, (list, tuple)):
        return [int(v) for v in text]
    try:
        return [int(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _seed(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= v <= MAX_SEED:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=_seed, default=None)
    common.add_argument("--output", default=None, help="write results here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--config", default=None, help="JSON file with option defaults")

    p = _Parser(prog="gspx", description="Graph and graphon signal processing.")
    p.add_argument("--version", action="version", version=f"gspx {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sample-graph", parents=[common], help="sample a W-random graph")
    s.add_argument("--graphon", default=None)
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--stream", type=int, default=None)
    s.add_argument("--signal", default=None, help="graphon signal sampled at the same labels")

    s = sub.add_parser("gft", parents=[common], help="graph Fourier transform")
    s.add_argument("--graph", default=None)
    s.add_argument("--signal", default=None)

    s = sub.add_parser("wft", parents=[common], help="graphon Fourier transform")
    s.add_argument("--graphon", default=None)
    s.add_argument("--signal", default=None)
    s.add_argument("--resolution", type=int, default=None)
    s.add_argument("--top", type=int, default=None, help="only the TOP rows by |sigma|")

    s = sub.add_parser("hom-density", parents=[common], help="homomorphism density t(F, G) or t(F, W)")
    s.add_argument("--motif", default=None)
    s.add_argument("--graph", default=None)
    s.add_argument("--graphon", default=None)
    s.add_argument("--samples", type=int, default=None)

    s = sub.add_parser("cycle-density", parents=[common], help="cycle density via eigenvalues")
    s.add_argument("--k", type=int, default=None)
    s.add_argument("--graph", default=None)
    s.add_argument("--graphon", default=None)
    s.add_argument("--resolution", type=int, default=None)

    for name in ("cut-norm", "norm-sandwich"):
        s = sub.add_parser(name, parents=[common], help="exact cut norm" if name == "cut-norm" else "cut/operator norm bounds")
        s.add_argument("--graphon", default=None)
        s.add_argument("--resolution", type=int, default=None)

    e = sub.add_parser("experiment", help="convergence experiments").add_subparsers(dest="experiment", required=True, parser_class=_Parser)
    s = e.add_parser("pollution", parents=[common])
    s.add_argument("--beta", type=float, default=None)
    s.add_argument("--sigma-y", type=float, default=None)
    s.add_argument("--n-grid", type=_int_list, default=None)
    s.add_argument("--trials", type=int, default=None)
    s = e.add_parser("movielens", parents=[common])
    s.add_argument("--ratings", default=None, help="MovieLens u.data file")
    s.add_argument("--movie", type=int, default=None, help="1-based item id (1 = Toy Story)")
    s.add_argument("--n-grid", type=_int_list, default=None)
    s.add_argument("--trials", type=int, default=None)
    s.add_argument("--imputation", default=None)

    c = sub.add_parser("check", help="empirical checks").add_subparsers(dest="check", required=True, parser_class=_Parser)
    s = c.add_parser("theorem1", parents=[common], help="GFT -> WFT convergence on sampled graphs")
    s.add_argument("--graphon", default=None)
    s.add_argument("--signal", default=None)
    s.add_argument("--cutoff", type=float, default=None)
    s.add_argument("--n-grid", type=_int_list, default=None)
    s.add_argument("--trials", type=int, default=None)
    s.add_argument("--resolution", type=int, default=None)
    return p


DEFAULTS = {
    "seed": 0, "format": "csv", "stream": 0, "n": 100, "resolution": None, "samples": 100000,
    "beta": 3.0, "sigma_y": 0.3, "trials": None, "movie": 1, "imputation": "user-mean",
    "cutoff": 0.05, "graphon": None, "signal": None, "graph": None, "motif": None, "k": None,
    "top": None, "ratings": None, "n_grid": None,
}


def resolve_config(args) -> RunConfig:
    cfg = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(cfg, dict):
            raise UsageError("config file must hold a JSON object")
        cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    params = {}
    for key, value in vars(args).items():
        if key in ("command", "experiment", "check", "config"):
            continue
        if value is None:
            value = cfg.get(key, DEFAULTS.get(key))
        params[key] = value
    if params.get("n_grid") is not None:
        params["n_grid"] = _int_list(params["n_grid"])
    command = " ".join(v for v in (args.command, getattr(args, "experiment", None), getattr(args, "check", None)) if v)
    seed = _seed(params.pop("seed"))
    return RunConfig(command, params.pop("output"), params.pop("format"), seed, params)


def _need(params, *names):
    for n in names:
        if params.get(n) is None:
            raise UsageError(f"missing required option --{n.replace('_', '-')}")


def _emit(rc: RunConfig, columns, rows, manifest: bool = False):
    text = table_to_csv(columns, rows) if rc.format == "csv" else table_to_json(columns, rows)
    if rc.output:
        with open(rc.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        if manifest:
            m = {"command": rc.command, "seed": rc.seed, "version": __version__,
                 "config": {k: v for k, v in sorted(rc.params.items())}}
            with open(str(rc.output) + ".manifest.json", "w", encoding="utf-8", newline="\n") as fh:
                fh.write(json.dumps(m, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)


def _emit_scalar(rc: RunConfig, name: str, value, extra=()):
    if rc.output or rc.format == "json" or extra:
        _emit(rc, (name, *[k for k, _ in extra]), [(value, *[v for _, v in extra])])
    else:
        sys.stdout.write(fmt(value) + "\n")


def _step_input(params) -> StepGraphon:
    w = parse_graphon(params["graphon"])
    return w if isinstance(w, StepGraphon) else discretize(w, params["resolution"] or 500)


def _coeff_rows(c, top=None):
    rows = c.rows()
    return rows[:top] if top else rows


def run(rc: RunConfig) -> None:
    p = rc.params
    cmd = rc.command
    if cmd == "sample-graph":
        _need(p, "graphon")
        w = parse_graphon(p["graphon"])
        g, labels = sample_w_random_graph(w, p["n"], rc.seed, p["stream"])
        x = sample_graphon_signal(parse_graphon_signal(p["signal"]), labels) if p["signal"] else None
        text = json.dumps(sampled_graph_to_dict(g, labels, x)) + "\n"
        if rc.output:
            with open(rc.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    elif cmd == "gft":
        _need(p, "graph", "signal")
        g = load_graph(p["graph"])
        c = gft(g, load_signal(p["signal"]))
        _emit(rc, ("j", "sigma", "coeff"), c.rows())
    elif cmd == "wft":
        _need(p, "graphon", "signal")
        w = parse_graphon(p["graphon"])
        x = parse_graphon_signal(p["signal"])
        if isinstance(w, StepGraphon) and isinstance(x, StepSignal):
            _, c = wft(w, x)
        else:
            _, c = wft(w, x, p["resolution"] or 500)
        _emit(rc, ("j", "sigma", "coeff"), _coeff_rows(c, p["top"]))
    elif cmd == "hom-density":
        _need(p, "motif")
        f = load_motif(p["motif"])
        if p["graph"]:
            _emit_scalar(rc, "density", hom_density_graph(f, load_graph(p["graph"])))
        elif p["graphon"]:
            est, se = hom_density_graphon_mc(f, parse_graphon(p["graphon"]), p["samples"], rc.seed)
            _emit_scalar(rc, "density", est, (("stderr", se),))
        else:
            raise UsageError("hom-density needs --graph or --graphon")
    elif cmd == "cycle-density":
        _need(p, "k")
        if p["graph"]:
            _emit_scalar(rc, "density", cycle_density_graph(p["k"], load_graph(p["graph"])))
        elif p["graphon"]:
            _emit_scalar(rc, "density", cycle_density_graphon(p["k"], step_spectrum(_step_input(p))))
        else:
            raise UsageError("cycle-density needs --graph or --graphon")
    elif cmd == "cut-norm":
        _need(p, "graphon")
        r = cut_norm_step(_step_input(p))
        _emit(rc, ("cut_norm", "S", "T"), [(r.value, " ".join(map(str, r.S)), " ".join(map(str, r.T)))])
    elif cmd == "norm-sandwich":
        _need(p, "graphon")
        r = check_norm_sandwich(_step_input(p))
        _emit(rc, ("cut", "opnorm", "sqrt8cut", "holds"), [(r.cut, r.opnorm, float(np.sqrt(8 * r.cut)), r.holds)])
    elif cmd == "experiment pollution":
        cfg = ex.PollutionConfig(p["beta"], p["sigma_y"], tuple(p["n_grid"] or (50, 100, 200, 400, 800)),
                                 p["trials"] or 50, rc.seed)
        rows, _ = ex.run_pollution_experiment(cfg)
        _emit(rc, ("n", "q68", "q95", "q997"), rows, manifest=True)
    elif cmd == "experiment movielens":
        _need(p, "ratings")
        table = parse_movielens(p["ratings"])
        cfg = ex.TransferConfig(p["movie"] - 1, tuple(p["n_grid"] or (50, 100, 200, 400)), p["trials"] or 10,
                                rc.seed, p["imputation"])
        rows = ex.run_movielens_experiment(cfg, table)
        _emit(rc, ("n", "mean_rel_diff", "std_rel_diff"), rows, manifest=True)
    elif cmd == "check theorem1":
        w = parse_graphon(p["graphon"] or "pollution:3")
        x = parse_graphon_signal(p["signal"] or "pollution:0.3")
        n_grid = tuple(p["n_grid"] or (50, 100, 200, 400, 800))
        rows, _ = ex.run_theorem1_check(w, x, p["cutoff"], n_grid, p["trials"] or 20, rc.seed,
                                        p["resolution"])
        _emit(rc, ("n", "median_error", "mean_error"), rows, manifest=True)
    else:
        raise UsageError(f"unknown command {cmd!r}")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
        rc = resolve_config(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        run(rc)
    except UsageError as exc:
        print(f"gspx: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError, OSError, KeyError) as exc:
        print(f"gspx: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
