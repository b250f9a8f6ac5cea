"""Command-line interface.

Three subcommands:

* ``sweep``       evaluate a preset scenario's curves over its range
* ``estimate``    expected increments for one composition (or one sweep
                  position), by any mix of engines
* ``trajectory``  simulate consecutive periods and report cumulative
                  role capitals

Options may come from a JSON config file (``--config``); explicit flags
override config values.  Reports are CSV (default; ``#``-prefixed
metadata lines, then a header row) or JSON.  Output lands on stdout or,
with ``--out``, in a file written atomically (temp file + rename).
Reals are written with 17 significant digits, so reported values
round-trip to the computed doubles.  A given configuration always
produces byte-identical output.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .analytic import approx_single_group, exact_increments
from .backend import backend_name
from .landmarks import detect_landmarks, parse_landmark_request
from .model import Environment, SocietyComposition, VotingRule
from .montecarlo import McConfig, estimate_increments, simulate_trajectory
from .scenarios import (DEFAULT_MU, DEFAULT_SIGMA, SCENARIO_NAMES,
                        build_scenario, run_sweep)

_COLUMNS = ("x", "group1", "group1_se", "group2", "group2_se", "egoist",
            "egoist_se", "random", "random_se", "accept_rate")
_TRAJ_COLUMNS = ("step", "group1", "group2", "egoist", "random", "accepted")

_DEFAULTS = {
    "mu": DEFAULT_MU,
    "sigma": DEFAULT_SIGMA,
    "alpha": "1/2",
    "method": "exact",
    "trials": 10000,
    "seed": 0,
    "workers": 1,
    "format": "csv",
    "steps": 100,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alphavote",
        description="Expected capital increments under alpha-majority voting")
    parser.add_argument("--version", action="version",
                        version=f"alphavote {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE",
                        help="JSON file with option values; flags override it")
    common.add_argument("--scenario", choices=SCENARIO_NAMES,
                        help="preset scenario")
    common.add_argument("--egoists", type=int,
                        help="egoist count (custom composition, or fig5 override)")
    common.add_argument("--group", type=int, action="append", dest="groups",
                        metavar="SIZE",
                        help="group size; repeat for a second group "
                             "(custom composition, or fig2 group 1 override)")
    common.add_argument("--mu", type=float, help="mean proposal increment")
    common.add_argument("--sigma", type=float,
                        help="standard deviation of proposal increments")
    common.add_argument("--alpha", help="vote share to beat, e.g. 0.5 or 2/3")
    common.add_argument("--trials", type=int, help="Monte Carlo trials")
    common.add_argument("--seed", type=int, help="Monte Carlo seed")
    common.add_argument("--workers", type=int, help="Monte Carlo worker threads")
    common.add_argument("--out", metavar="FILE",
                        help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"),
                        help="output format (default csv)")

    p_sweep = sub.add_parser("sweep", parents=[common],
                             help="evaluate a scenario over its sweep range")
    p_sweep.add_argument("--method", choices=("exact", "approx", "mc"),
                         help="engine (default exact)")
    p_sweep.add_argument("--landmarks", metavar="SPECS",
                         help="comma-separated landmark requests, e.g. "
                              "'group1:argmax,random:zero,group1-egoist:crossing'")

    p_est = sub.add_parser("estimate", parents=[common],
                           help="expected increments for one composition")
    p_est.add_argument("--method",
                       help="engine, or comma-separated engines for "
                            "side-by-side rows (exact, approx, mc)")
    p_est.add_argument("--x", type=int,
                       help="sweep position when using --scenario")

    p_traj = sub.add_parser("trajectory", parents=[common],
                            help="simulate periods and track capital")
    p_traj.add_argument("--steps", type=int, help="number of periods")
    p_traj.add_argument("--x", type=int,
                        help="sweep position when using --scenario")
    return parser


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ValueError(f"config: cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"config: {path} is not valid JSON ({exc})") from exc
    if not isinstance(cfg, dict):
        raise ValueError("config: top level must be a JSON object")
    return cfg


def _resolve(args: argparse.Namespace) -> dict:
    """Merge flags over config-file values over defaults."""
    file_cfg = _load_config(args.config) if args.config else {}
    cfg = {"command": args.command}
    known = ("scenario", "egoists", "groups", "mu", "sigma", "alpha", "method",
             "trials", "seed", "workers", "out", "format", "landmarks", "x",
             "steps")
    for key in known:
        flag = getattr(args, key, None)
        if flag is not None:
            cfg[key] = flag
        elif key in file_cfg:
            cfg[key] = file_cfg[key]
        else:
            cfg[key] = _DEFAULTS.get(key)
    unknown = set(file_cfg) - set(known)
    if unknown:
        raise ValueError(f"config: unknown keys {sorted(unknown)}")
    if cfg["groups"] is not None and len(cfg["groups"]) > 2:
        raise ValueError("--group may be given at most twice")
    try:
        cfg["alpha"] = Fraction(str(cfg["alpha"]))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"alpha: cannot parse {cfg['alpha']!r}") from None
    return cfg


def _scenario_from(cfg: dict):
    overrides = {}
    if cfg["mu"] != _DEFAULTS["mu"]:
        overrides["mu"] = cfg["mu"]
    if cfg["sigma"] != _DEFAULTS["sigma"]:
        overrides["sigma"] = cfg["sigma"]
    if cfg["alpha"] != Fraction(str(_DEFAULTS["alpha"])):
        overrides["alpha"] = cfg["alpha"]
    if cfg["egoists"] is not None:
        overrides["egoists"] = cfg["egoists"]
    if cfg["groups"]:
        if len(cfg["groups"]) != 1:
            raise ValueError(
                "--group with --scenario overrides the pinned group and "
                "takes a single value")
        overrides["group1"] = cfg["groups"][0]
    return build_scenario(cfg["scenario"], **overrides)


def _custom_setup(cfg: dict):
    """(composition, env, rule) for a run without --scenario."""
    if cfg["egoists"] is None and not cfg["groups"]:
        raise ValueError("composition: give --scenario, or --egoists/--group")
    comp = SocietyComposition(
        egoists=cfg["egoists"] or 0,
        group_sizes=tuple(cfg["groups"] or ()))
    env = Environment(mu=cfg["mu"], sigma=cfg["sigma"])
    rule = VotingRule(alpha=cfg["alpha"])
    return comp, env, rule


def _point_setup(cfg: dict):
    """Composition and context for estimate/trajectory."""
    if cfg["scenario"]:
        sc = _scenario_from(cfg)
        if cfg["x"] is None:
            raise ValueError("--x is required with --scenario")
        return sc.composition_at(cfg["x"]), sc.env, sc.rule
    return _custom_setup(cfg)


def _mc_config(cfg: dict) -> McConfig:
    return McConfig(trials=cfg["trials"], seed=cfg["seed"],
                    workers=cfg["workers"])


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, str)):
        return str(value)
    return format(float(value), ".17g")


def _meta_pairs(cfg: dict, env: Environment, rule: VotingRule,
                extra: dict) -> list[tuple[str, str]]:
    """Resolved run configuration, echoed at the top of every report."""
    pairs = [("alphavote", __version__), ("command", cfg["command"])]
    if cfg["scenario"]:
        pairs.append(("scenario", cfg["scenario"]))
    for key, value in extra.items():
        pairs.append((key, value))
    pairs += [("mu", _fmt(env.mu)), ("sigma", _fmt(env.sigma)),
              ("alpha", str(rule.alpha))]
    if cfg.get("method"):
        pairs.append(("method", str(cfg["method"])))
    if _uses_mc(cfg):
        pairs += [("trials", str(cfg["trials"])), ("seed", str(cfg["seed"])),
                  ("workers", str(cfg["workers"])),
                  ("backend", backend_name())]
    return pairs


def _uses_mc(cfg: dict) -> bool:
    if cfg["command"] == "trajectory":
        return True
    method = cfg.get("method") or ""
    return "mc" in (method.split(",") if isinstance(method, str) else method)


def _increment_row(x, inc) -> list:
    return [x, inc.group1, inc.group1_se, inc.group2, inc.group2_se,
            inc.egoist, inc.egoist_se, inc.random_participant, inc.random_se,
            inc.accept_rate]


def _csv_text(meta, columns, rows, landmark_lines) -> str:
    buf = io.StringIO()
    for key, value in meta:
        buf.write(f"# {key} = {value}\n")
    for line in landmark_lines:
        buf.write(f"# {line}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _json_text(meta, columns, rows, landmarks) -> str:
    doc = {"meta": {k: v for k, v in meta}, "columns": list(columns),
           "rows": [[v for v in row] for row in rows]}
    if landmarks is not None:
        doc["landmarks"] = [
            {"kind": lm.kind, "roles": list(lm.roles), "x": lm.x,
             "value": lm.value} for lm in landmarks]
    return json.dumps(doc, indent=1) + "\n"


def _write_out(path, text: str) -> None:
    if not path:
        sys.stdout.write(text)
        return
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _emit(cfg, meta, columns, rows, landmarks=None) -> None:
    landmarks = landmarks if landmarks is not None else []
    lines = [f"landmark kind={lm.kind} roles={'-'.join(lm.roles)} "
             f"x={lm.x} value={_fmt(lm.value)}" for lm in landmarks]
    if cfg["format"] == "json":
        text = _json_text(meta, columns, rows, landmarks)
    else:
        text = _csv_text(meta, columns, rows, lines)
    _write_out(cfg["out"], text)


def _cmd_sweep(cfg: dict) -> int:
    sc = _scenario_from(cfg) if cfg["scenario"] else None
    if sc is None:
        raise ValueError("sweep requires --scenario")
    method = cfg["method"]
    mc = _mc_config(cfg) if method == "mc" else None
    results = run_sweep(sc, method=method, mc=mc)
    requests = []
    if cfg.get("landmarks"):
        requests = [parse_landmark_request(part)
                    for part in str(cfg["landmarks"]).split(",")]
    marks = detect_landmarks(results, requests) if requests else []
    meta = _meta_pairs(cfg, sc.env, sc.rule,
                       {"n": str(sc.n), "sweep": sc.description})
    rows = [_increment_row(r.x, r.increments) for r in results]
    _emit(cfg, meta, _COLUMNS, rows, marks)
    return 0


def _estimate_one(comp, env, rule, method, cfg):
    if method == "exact":
        return exact_increments(comp, env, rule)
    if method == "approx":
        return approx_single_group(comp, env, rule)
    if method == "mc":
        return estimate_increments(comp, env, rule, _mc_config(cfg))
    raise ValueError(f"method: unknown engine {method!r}")


def _cmd_estimate(cfg: dict) -> int:
    comp, env, rule = _point_setup(cfg)
    methods = [m.strip() for m in str(cfg["method"]).split(",") if m.strip()]
    if not methods:
        raise ValueError("method: give at least one engine")
    x = cfg["x"] if cfg["scenario"] else None
    rows = []
    for method in methods:
        inc = _estimate_one(comp, env, rule, method, cfg)
        rows.append(_increment_row(x, inc) + [method])
    meta = _meta_pairs(cfg, env, rule, {
        "egoists": str(comp.egoists),
        "groups": ",".join(str(g) for g in comp.group_sizes) or "none"})
    _emit(cfg, meta, _COLUMNS + ("method",), rows)
    return 0


def _cmd_trajectory(cfg: dict) -> int:
    comp, env, rule = _point_setup(cfg)
    steps = cfg["steps"]
    if steps is None or steps < 0:
        raise ValueError("steps: must be a nonnegative integer")
    records = simulate_trajectory(comp, env, rule, steps, _mc_config(cfg))
    rows = []
    for rec in records:
        caps = rec.per_role_cumulative_capital
        rows.append([rec.step_index, caps.get("group1"), caps.get("group2"),
                     caps.get("egoist"), caps.get("random"), rec.accepted])
    meta = _meta_pairs(cfg, env, rule, {
        "egoists": str(comp.egoists),
        "groups": ",".join(str(g) for g in comp.group_sizes) or "none",
        "steps": str(steps)})
    _emit(cfg, meta, _TRAJ_COLUMNS, rows)
    return 0


_HANDLERS = {"sweep": _cmd_sweep, "estimate": _cmd_estimate,
             "trajectory": _cmd_trajectory}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve(args)
        return _HANDLERS[args.command](cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
