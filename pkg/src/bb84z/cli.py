"""Command-line front end.

Exit codes: 0 ok, 1 inequality violated, 2 invalid input, 3 I/O failure,
4 nothing found.  Values given as flags override values from ``--config``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import secrets
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bounds, codes, protocol, quantum, verify

EXIT_OK, EXIT_VIOLATION, EXIT_INVALID, EXIT_IO, EXIT_NOT_FOUND = 0, 1, 2, 3, 4

PRESETS = ("identity", "flip-z", "rotation", "xrotation", "two-axis")

DEFAULTS = {
    "run": dict(n=8, nz=8, nx=8, paz=0.1, pax=0.1, attack="identity", theta=math.pi / 4,
                theta_x=0.0, code=None, r=None, m=1, trials=1),
    "bounds": dict(n=1000, nz=1000, nx=1000, paz=0.02, pax=0.02, eps_sec=0.05, eps_rel=0.05, rate=None),
    "threshold-curve": dict(points=101, eps_sec=0.0, eps_rel=0.0, n=None),
    "verify": dict(rhs_scale=1.0, hoeffding_max_len=12, mc_trials=2000),
    "code-search": dict(n=7, r=3, m=1, delta=0.14, t=1, max_iters=10_000),
}


class UsageError(Exception):
    """Invalid configuration; maps to exit code 2."""


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="master seed for all randomness")
    common.add_argument("--out", help="output file (default: standard output)")
    common.add_argument("--config", help="JSON file of option values; flags take precedence")

    parser = argparse.ArgumentParser(prog="bb84z", description="BB84-INFO-z simulator and bound calculator")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common], help="simulate protocol runs")
    run.add_argument("--n", type=int)
    run.add_argument("--nz", type=int)
    run.add_argument("--nx", type=int)
    run.add_argument("--paz", type=float)
    run.add_argument("--pax", type=float)
    run.add_argument("--attack", help=f"preset ({', '.join(PRESETS)}) or path to an attack JSON file")
    run.add_argument("--theta", type=float, help="rotation angle for rotation presets")
    run.add_argument("--theta-x", dest="theta_x", type=float, help="second angle for two-axis")
    run.add_argument("--code", help="code-pair file; a random pair is drawn when omitted")
    run.add_argument("--r", type=int, help="syndrome length of the random pair (default n // 2)")
    run.add_argument("--m", type=int, help="key length of the random pair")
    run.add_argument("--trials", type=int)

    bnd = sub.add_parser("bounds", parents=[common], help="evaluate finite-key bounds")
    bnd.add_argument("--n", type=int)
    bnd.add_argument("--nz", type=int)
    bnd.add_argument("--nx", type=int)
    bnd.add_argument("--paz", type=float)
    bnd.add_argument("--pax", type=float)
    bnd.add_argument("--eps-sec", dest="eps_sec", type=float)
    bnd.add_argument("--eps-rel", dest="eps_rel", type=float)
    bnd.add_argument("--rate", type=float, help="m/n; defaults to the secret key rate")

    cur = sub.add_parser("threshold-curve", parents=[common], help="emit the threshold curve as CSV")
    cur.add_argument("--points", type=int)
    cur.add_argument("--eps-sec", dest="eps_sec", type=float)
    cur.add_argument("--eps-rel", dest="eps_rel", type=float)
    cur.add_argument("--n", type=int, help="finite block length (adds 1/n slack)")

    ver = sub.add_parser("verify", parents=[common], help="run the exhaustive inequality suites")
    ver.add_argument("--rhs-scale", dest="rhs_scale", type=float, help=argparse.SUPPRESS)
    ver.add_argument("--hoeffding-max-len", dest="hoeffding_max_len", type=int)
    ver.add_argument("--mc-trials", dest="mc_trials", type=int)

    cs = sub.add_parser("code-search", parents=[common], help="random search for a code pair")
    cs.add_argument("--n", type=int)
    cs.add_argument("--r", type=int)
    cs.add_argument("--m", type=int)
    cs.add_argument("--delta", type=float)
    cs.add_argument("--t", type=int)
    cs.add_argument("--max-iters", dest="max_iters", type=int)
    return parser


def _resolve(args: argparse.Namespace) -> dict:
    """Merge flag values over config values over defaults."""
    config = {}
    if args.config:
        path = Path(args.config)
        if not path.is_file():
            raise UsageError(f"config file {path} does not exist")
        config = json.loads(path.read_text())
        if not isinstance(config, dict):
            raise UsageError("config file must hold a JSON object")
    out = {}
    for key, default in DEFAULTS[args.command].items():
        flag = getattr(args, key, None)
        out[key] = flag if flag is not None else config.get(key, default)
    for key in ("seed", "out"):
        flag = getattr(args, key)
        out[key] = flag if flag is not None else config.get(key)
    return out


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _load_attack(cfg: dict) -> quantum.AttackModel:
    name = cfg["attack"]
    if name == "identity":
        return quantum.identity_attack()
    if name == "flip-z":
        return quantum.flip_z_attack()
    if name == "rotation":
        return quantum.rotation_attack(cfg["theta"], "z")
    if name == "xrotation":
        return quantum.rotation_attack(cfg["theta"], "x")
    if name == "two-axis":
        return quantum.two_axis_attack(cfg["theta"], cfg["theta_x"])
    path = Path(name)
    if not path.is_file():
        raise UsageError(f"attack {name!r} is neither a preset ({', '.join(PRESETS)}) nor a file")
    return quantum.AttackModel.from_json(json.loads(path.read_text()), name=path.stem)


def _seed(cfg: dict) -> int:
    if cfg["seed"] is None:
        cfg["seed"] = secrets.randbelow(2**32)
        print(f"seed={cfg['seed']}", file=sys.stderr)
    return cfg["seed"]


def cmd_run(cfg: dict) -> int:
    for key in ("n", "nz", "nx", "trials", "m"):
        if cfg[key] is None or cfg[key] < 1:
            raise UsageError(f"--{key} must be a positive integer")
    seed = _seed(cfg)
    attack = _load_attack(cfg)
    n = cfg["n"]
    if cfg["code"]:
        if not Path(cfg["code"]).is_file():
            raise UsageError(f"code file {cfg['code']} does not exist")
        code = codes.CodePair.load(cfg["code"])
    else:
        r = n // 2 if cfg["r"] is None else cfg["r"]
        code = codes.search_code_pair(
            n, r, cfg["m"], Fraction(1, 2 * n), 0, np.random.default_rng([seed, 1]), max_iters=1000
        )
        if code is None:
            raise UsageError("could not draw an independent code pair")
    params = protocol.ProtocolParams(n, cfg["nz"], cfg["nx"], cfg["paz"], cfg["pax"], code)

    if cfg["trials"] == 1:
        tr = protocol.run_protocol(params, attack, np.random.default_rng(seed))
        _emit(json.dumps(tr.to_json(), indent=2, sort_keys=True) + "\n", cfg["out"])
        return EXIT_OK

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["trial", "aborted", "info_errors", "test_z_errors", "test_x_errors", "keys_match"])
    aborted = mismatched = 0
    for t, tr in enumerate(protocol.run_trials(params, attack, cfg["trials"], seed)):
        match = "" if tr.aborted else int(tr.keys_match)
        aborted += tr.aborted
        mismatched += (not tr.aborted) and not tr.keys_match
        writer.writerow([t, int(tr.aborted), tr.c_s.weight(), tr.c_z.weight(), tr.c_b.weight(), match])
    _emit(buf.getvalue(), cfg["out"])
    trials = cfg["trials"]
    print(
        f"trials={trials} aborted={aborted} abort_fraction={aborted / trials:.6f} "
        f"key_mismatches={mismatched}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_bounds(cfg: dict) -> int:
    rate = cfg["rate"]
    if rate is None:
        rate = bounds.secret_rate(cfg["paz"], cfg["pax"], cfg["eps_sec"], cfg["eps_rel"], 1.0 / cfg["n"])
        if rate <= 0:
            raise UsageError(f"no positive key rate ({rate:.6g}) at these parameters; pass --rate")
    p = bounds.BoundParams(
        cfg["n"], cfg["nz"], cfg["nx"], cfg["paz"], cfg["pax"], cfg["eps_sec"], cfg["eps_rel"], min(rate, 1.0)
    )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "n_z", "n_x", "p_az", "p_ax", "eps_sec", "eps_rel", "R", "delta",
                     "security_bound", "reliability_bound", "key_rate"])
    writer.writerow([p.n, p.n_z, p.n_x, _fmt(p.p_az), _fmt(p.p_ax), _fmt(p.eps_sec), _fmt(p.eps_rel),
                     _fmt(p.R), _fmt(p.delta), _fmt(bounds.security_exponent_bound(p)),
                     _fmt(bounds.reliability_bound(p)), _fmt(bounds.key_rate(p))])
    _emit(buf.getvalue(), cfg["out"])
    return EXIT_OK


def cmd_threshold_curve(cfg: dict) -> int:
    if cfg["points"] < 2:
        raise UsageError("--points must be at least 2")
    inv_n = 0.0 if cfg["n"] is None else 1.0 / cfg["n"]
    grid = bounds.default_grid(cfg["points"])
    grid.append(bounds.symmetric_threshold())
    rows = bounds.threshold_curve(sorted(set(grid)), cfg["eps_sec"], cfg["eps_rel"], inv_n)
    _emit(bounds.curve_csv(rows), cfg["out"])
    return EXIT_OK


def cmd_verify(cfg: dict) -> int:
    if cfg["seed"] is None:
        raise UsageError("verify needs an explicit --seed")
    checks = verify.run_all(cfg["seed"], cfg["rhs_scale"], cfg["hoeffding_max_len"], cfg["mc_trials"])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["suite", "instance", "lhs", "rhs", "ok"])
    for c in checks:
        writer.writerow([c.suite, c.instance, _fmt(c.lhs), _fmt(c.rhs), int(c.ok)])
    _emit(buf.getvalue(), cfg["out"])
    failed = [c for c in checks if not c.ok]
    for c in failed:
        print(f"VIOLATION {c.suite}: {c.instance} lhs={_fmt(c.lhs)} rhs={_fmt(c.rhs)}", file=sys.stderr)
    print(f"{len(checks)} instances, {len(failed)} violations", file=sys.stderr)
    return EXIT_VIOLATION if failed else EXIT_OK


def cmd_code_search(cfg: dict) -> int:
    seed = _seed(cfg)
    code = codes.search_code_pair(
        cfg["n"], cfg["r"], cfg["m"], cfg["delta"], cfg["t"], np.random.default_rng(seed), cfg["max_iters"]
    )
    if code is None:
        print("no code pair found", file=sys.stderr)
        return EXIT_NOT_FOUND
    _emit(code.to_text(), cfg["out"])
    print(f"found code pair: d_rm={code.d_rm} t_corr={code.t_corr}", file=sys.stderr)
    return EXIT_OK


COMMANDS = {
    "run": cmd_run,
    "bounds": cmd_bounds,
    "threshold-curve": cmd_threshold_curve,
    "verify": cmd_verify,
    "code-search": cmd_code_search,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        cfg = _resolve(args)
        return COMMANDS[args.command](cfg)
    except (UsageError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
