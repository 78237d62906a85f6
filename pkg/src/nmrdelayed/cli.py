"""Command-line interface.

Subcommands ``sweep``, ``verify``, ``tomo`` and ``show-state``. Exit codes:
0 success, 1 domain failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import datetime as _dt
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .angles import parse_angle, parse_angle_list
from .channels import DephaseSpec
from .experiment import DEFAULT_ALPHAS, LEVELS, DelayedChoiceConfig, default_thetas, expected_dephased_deviation
from .experiment import fit_fringes, ideal_final_state, run_circuit, run_sweep
from .fitting import FitError
from .numcore import I4, ValidationError
from .pulselang import EQUIVALENCES, GateName, NonUnitaryEventError, ParseError, ideal_gate, load_sequence
from .pulselang import verify_sequence
from .spinmodel import SpinSystem, full_density
from .svgplot import fringe_plot, matrix_bars
from .tomo import measure_expectations, perturb, reconstruct

ANGLE_HELP = "angles accept floats in radians or pi-expressions such as pi, pi/2, 3pi/4, -2*pi/3"
TARGETS = {
    "cnot": lambda: ideal_gate(GateName.CNOT_AS),
    "ch": lambda: ideal_gate(GateName.CH_AS),
    "pseudo_h": lambda: ideal_gate(GateName.PSEUDO_H_S),
    "pi_x_s": lambda: ideal_gate(GateName.PI_X_S),
    "identity": lambda: np.array(I4),
}


class DomainError(Exception):
    pass


def _angle(text):
    try:
        return parse_angle(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _angles(text):
    try:
        return parse_angle_list(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _thetas(text):
    if text.strip().isdigit():
        n = int(text)
        if n < 1:
            raise argparse.ArgumentTypeError("theta count must be positive")
        return list(default_thetas(n))
    return _angles(text)


def _global_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--j-coupling", type=float, default=215.1, metavar="HZ", help="scalar coupling J (default 215.1)")
    g.add_argument("--epsilon", type=float, default=1e-5, help="high-temperature ensemble scale (default 1e-5)")
    g.add_argument("--seed", type=int, default=0, help="seed for optional noise (default 0)")
    g.add_argument("--out", type=Path, default=Path("out"), help="output directory (default ./out)")
    g.add_argument("--format", choices=("csv", "json"), default="csv", help="record format (default csv)")
    g.add_argument("--config", type=Path, help="INI file mirroring the flags; flags win")
    return p


def _dephase_flags(p: argparse.ArgumentParser):
    p.add_argument("--level", choices=LEVELS, default="gate", help="ideal gate matrices or compiled pulses")
    p.add_argument("--dephase", choices=("ideal", "gradient"), default="ideal", help="measurement emulation")
    p.add_argument("--samples", type=int, default=8, help="gradient phase samples (default 8)")
    p.add_argument("--no-refocus", action="store_true", help="omit the 13C refocusing pulse")


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(
        prog="nmrdelayed",
        description="NMR quantum delayed-choice simulator.",
        epilog=ANGLE_HELP,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", parents=[common], help="detection-probability fringes over (alpha, theta)", epilog=ANGLE_HELP)
    sw.add_argument("--alphas", type=_angles, default=list(DEFAULT_ALPHAS), help="comma-separated alphas")
    sw.add_argument(
        "--thetas", type=_thetas, default=list(default_thetas()),
        help="point count on [0, 2pi] (default 17) or comma-separated thetas",
    )
    _dephase_flags(sw)
    sw.add_argument("--noise", type=float, default=0.0, help="Gaussian sigma added to each probability")
    sw.add_argument("--workers", type=int, default=1, help="parallel sweep workers")

    ve = sub.add_parser("verify", parents=[common], help="check a pulse file against a target gate")
    ve.add_argument("pulse_file", type=Path)
    ve.add_argument("--target", choices=sorted(TARGETS), required=True)
    ve.add_argument("--tol", type=float, default=1e-9)
    ve.add_argument(
        "--equivalence", choices=EQUIVALENCES, default="local-z",
        help="global: up to global phase; local-z: also allow a trailing z frame rotation per spin (default)",
    )

    to = sub.add_parser("tomo", parents=[common], help="reconstructed final deviation matrix", epilog=ANGLE_HELP)
    to.add_argument("--alpha", type=_angle, default=math.pi / 2)
    to.add_argument("--theta", type=_angle, default=0.0)
    _dephase_flags(to)
    to.add_argument("--noise", type=float, default=0.0, help="Gaussian sigma on the Pauli expectations")

    ss = sub.add_parser("show-state", parents=[common], help="closed-form final state and dephased deviation", epilog=ANGLE_HELP)
    ss.add_argument("--alpha", type=_angle, default=math.pi / 2)
    ss.add_argument("--theta", type=_angle, default=0.0)
    return parser


def _config_tokens(path: Path, command: str) -> list[str]:
    cp = configparser.ConfigParser()
    if not cp.read(path):
        raise SystemExit(f"nmrdelayed: error: cannot read config file {path}")
    tokens = []
    for section in ("global", command):
        if not cp.has_section(section):
            continue
        for key, value in cp.items(section):
            flag = "--" + key.replace("_", "-")
            if value.lower() in ("true", "yes", "on"):
                tokens.append(flag)
            elif value.lower() in ("false", "no", "off"):
                continue
            else:
                tokens += [flag, value]
    return tokens


def parse_args(argv) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config is not None:
        # Config values go first so explicit flags override them.
        argv = list(argv)
        i = argv.index(args.command)
        args = parser.parse_args(argv[: i + 1] + _config_tokens(args.config, args.command) + argv[i + 1 :])
    return args


def _system(args) -> SpinSystem:
    try:
        return SpinSystem(j_coupling=args.j_coupling, epsilon=args.epsilon)
    except ValidationError as exc:
        raise DomainError(str(exc)) from None


def _dephase(args) -> DephaseSpec:
    if args.samples < 2:
        raise DomainError("--samples must be at least 2")
    return DephaseSpec(args.dephase, args.samples, not args.no_refocus)


def _manifest(args, extra: dict) -> dict:
    echo = {k: (str(v) if isinstance(v, Path) else v) for k, v in vars(args).items()}
    return {
        "tool": "nmrdelayed",
        "version": __version__,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "config": echo,
        **extra,
    }


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(out: Path, files: dict[str, str]):
    out.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (out / name).write_text(text)


def cmd_sweep(args) -> int:
    sys_ = _system(args)
    records = run_sweep(
        args.alphas, args.thetas, args.level, _dephase(args), sys_,
        noise=args.noise, seed=args.seed, workers=args.workers,
    )
    fits = fit_fringes(records)

    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["alpha_rad", "theta_rad", "level", "p"])
        for r in records:
            w.writerow([repr(r.alpha), repr(r.theta), r.level, repr(r.p)])
        records_name, records_text = "sweep.csv", buf.getvalue()
    else:
        rows = [{"alpha_rad": r.alpha, "theta_rad": r.theta, "level": r.level, "p": r.p} for r in records]
        records_name, records_text = "sweep.json", _dump(rows)

    fit_rows = [{"alpha_rad": a, **f.to_dict()} for a, f in fits.items()]
    series = {}
    for r in records:
        series.setdefault(f"alpha = {r.alpha:.4f}", []).append((r.theta, r.p))
    _write(
        args.out,
        {
            records_name: records_text,
            "fits.json": _dump(fit_rows),
            "fringes.svg": fringe_plot(series, f"detection probability ({args.level} level)"),
            "manifest.json": _dump(_manifest(args, {"outputs": [records_name, "fits.json", "fringes.svg"]})),
        },
    )
    print(f"{len(records)} points -> {args.out / records_name}")
    print(f"{'alpha':>8} {'offset':>10} {'amplitude':>10} {'phase':>10} {'rms':>10}")
    for a, f in fits.items():
        print(f"{a:8.4f} {f.offset:10.6f} {f.amplitude:10.6f} {f.phase:10.6f} {f.rms:10.2e}")
    return 0


def cmd_verify(args) -> int:
    try:
        seq = load_sequence(args.pulse_file)
    except OSError as exc:
        print(f"nmrdelayed: error: {exc}", file=sys.stderr)
        return 2
    try:
        report = verify_sequence(seq, TARGETS[args.target](), _system(args), args.tol, args.equivalence)
    except NonUnitaryEventError as exc:
        raise DomainError(str(exc)) from None
    if args.format == "json":
        print(_dump({"file": str(args.pulse_file), "target": args.target, **report.to_dict()}), end="")
    else:
        print(f"file:              {args.pulse_file} ({len(seq)} events)")
        print(f"target:            {args.target}")
        print(report.format())
    return 0 if report.passed else 1


def _complex_json(m):
    m = np.asarray(m)
    return {"real": m.real.tolist(), "imag": m.imag.tolist()}


def cmd_tomo(args) -> int:
    sys_ = _system(args)
    cfg = DelayedChoiceConfig(args.alpha, args.theta, args.level, _dephase(args))
    d = run_circuit(cfg, sys_)
    e = measure_expectations(d)
    if args.noise > 0:
        e = perturb(e, args.noise, args.seed)
    rec = reconstruct(e)
    payload = {
        "alpha_rad": args.alpha,
        "theta_rad": args.theta,
        "level": args.level,
        "dephase": cfg.dephase.describe(),
        "expectations": dict(e),
        "deviation": _complex_json(rec.delta),
        "trace": rec.trace,
        "min_eigenvalue": rec.min_eigenvalue(),
        "normalization": rec.normalization.value,
    }
    if rec.normalization.name == "PROJECTOR":
        payload["full_density"] = _complex_json(full_density(sys_, rec))
    title = f"Re(delta), alpha = {args.alpha:.4f}, theta = {args.theta:.4f}"
    _write(
        args.out,
        {
            "tomo.json": _dump(payload),
            "tomo.svg": matrix_bars(rec.delta.real, title),
            "manifest.json": _dump(_manifest(args, {"outputs": ["tomo.json", "tomo.svg"]})),
        },
    )
    np.set_printoptions(precision=4, suppress=True)
    print(f"Re(delta) at alpha = {args.alpha:.4f}, theta = {args.theta:.4f}:")
    print(rec.delta.real)
    print(f"trace {rec.trace:.12f}, min eigenvalue {rec.min_eigenvalue():.3e} -> {args.out / 'tomo.json'}")
    return 0


def _fmt_c(z: complex) -> str:
    return f"{z.real:+.4f}{z.imag:+.4f}i"


def cmd_show_state(args) -> int:
    try:
        ket = ideal_final_state(args.alpha, args.theta)
        d = expected_dephased_deviation(args.alpha, args.theta)
    except ValidationError as exc:
        raise DomainError(str(exc)) from None
    if args.format == "json":
        print(_dump({"alpha_rad": args.alpha, "theta_rad": args.theta, "state": _complex_json(ket), "dephased_deviation": _complex_json(d.delta)}), end="")
        return 0
    print(f"final state at alpha = {args.alpha:.4f}, theta = {args.theta:.4f} (A x S basis):")
    for i, amp in enumerate(ket):
        print(f"  |{i:02b}>  {_fmt_c(amp)}")
    print("deviation matrix after ancilla sz measurement:")
    for row in d.delta:
        print("  " + "  ".join(_fmt_c(z) for z in row))
    return 0


COMMANDS = {"sweep": cmd_sweep, "verify": cmd_verify, "tomo": cmd_tomo, "show-state": cmd_show_state}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"nmrdelayed: error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, FitError, ValidationError) as exc:
        print(f"nmrdelayed: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
