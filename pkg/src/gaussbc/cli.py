"""Command-line interface.

Exit codes: 0 success, 2 bad input (parse or validation failure),
3 internal failure (certification or gauge resolution; always a bug).
"""

import argparse
import json
import sys

import numpy as np

from . import io, tolerances
from .attack import SweepRow, build_attack, concealment, sweep
from .errors import GaussianError
from .families import FAMILIES, family_sweep, generate, resolve_params
from .metrics import oracle_commuting
from .state import validate

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3


class InputError(Exception):
    pass


def _param(text):
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return key, json.loads(value)
    except json.JSONDecodeError:
        raise argparse.ArgumentTypeError(f"value of {key!r} is not a number: {value!r}") from None


def parse_grid(text):
    """``start:stop:num`` (inclusive linspace) or a comma-separated list."""
    text = text.strip()
    if not text:
        return []
    try:
        if ":" in text:
            start, stop, num = text.split(":")
            return [float(v) for v in np.linspace(float(start), float(stop), int(num))]
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise InputError(f"--grid: cannot parse {text!r}") from None


def _emit(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        io.atomic_write(out, text)


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def cmd_gen(args):
    params = dict(args.param or [])
    try:
        protocol, resolved = generate(args.family, params, seed=args.seed)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(str(exc).strip("'\"")) from None
    metadata = {"family": args.family, "seed": args.seed, "params": resolved}
    _emit(io.dumps(io.protocol_to_dict(protocol, metadata)), args.out)
    return EXIT_OK


def cmd_attack(args):
    try:
        protocol, metadata = io.parse_protocol(_read(args.input))
    except io.FormatError as exc:
        raise InputError(f"{args.input}: {exc}") from None
    report = build_attack(protocol)
    if args.format == "csv":
        family = FAMILIES.get(metadata.get("family"))
        params = metadata.get("params", {})
        param = params.get(family.sweep_param, "") if family else ""
        row = SweepRow(param, report.epsilon_lower, report.epsilon_upper, report.delta,
                       report.bound_rhs, report.certified)
        text = io.rows_to_csv([row])
    else:
        text = io.report_to_json(report, metadata)
    _emit(text, args.out)
    return EXIT_OK if report.certified else EXIT_INTERNAL


def cmd_sweep(args):
    grid = parse_grid(args.grid)
    try:
        resolve_params(args.family, dict(args.param or []))
    except KeyError as exc:
        raise InputError(str(exc).strip("'\"")) from None
    rows = sweep(family_sweep(args.family, dict(args.param or []), seed=args.seed), grid,
                 max_workers=args.workers)
    _emit(io.rows_to_csv(rows), args.out)
    return EXIT_OK


def cmd_oracle(args):
    try:
        result = oracle_commuting(args.x0, args.x1, tail=args.tail)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(io.dumps(result.to_dict()), args.out)
    return EXIT_OK


def cmd_validate(args):
    text = _read(args.input)
    try:
        _, states, _ = io.parse_protocol_raw(text)
    except io.FormatError as exc:
        raise InputError(f"{args.input}: {exc}") from None
    out = {}
    ok = True
    for name, (mu, gamma) in states.items():
        diag = validate(gamma, mu)
        ok = ok and diag.valid and diag.pure
        out[name] = diag.to_dict()
    if ok:
        protocol, _ = io.parse_protocol(text)
        lo, up = concealment(protocol)
        out["concealment"] = {"epsilon_lower": lo, "epsilon_upper": up}
    out["ok"] = ok
    _emit(io.dumps(out), args.out)
    if not ok:
        for name in ("psi0", "psi1"):
            for problem in out[name]["problems"] or (
                    [] if out[name]["pure"] else ["state is not pure"]):
                print(f"{args.input}: {name}.gamma: {problem}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_INPUT


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gaussbc",
        description="Gaussian bit-commitment toolkit: generate protocols, synthesize "
                    "and certify Alice's Gaussian cheating attack.",
        epilog=f"Environment: {tolerances.ENV_VAR} overrides default tolerances, "
               "either a float (tol-eig) or 'eig=..,dec=..,match=..,sym=..'.")
    parser.add_argument("--tol-eig", type=float, default=None,
                        help="Heisenberg slack and pure-mode threshold (default 1e-7)")
    parser.add_argument("--tol-dec", type=float, default=None,
                        help="decomposition residual tolerance (default 1e-8)")
    parser.add_argument("--tol-match", type=float, default=None,
                        help="accepted mismatch of reduced states (default 1e-6)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a protocol file")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("--param", action="append", type=_param, metavar="KEY=VALUE",
                   help="family parameter override (repeatable)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("attack", help="synthesize and certify the cheating attack")
    p.add_argument("input")
    p.add_argument("-o", "--out", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("sweep", help="attack a family over a parameter grid (CSV)")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("--grid", required=True, help="start:stop:num or v1,v2,...")
    p.add_argument("--param", action="append", type=_param, metavar="KEY=VALUE")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", help="Fock-series oracle for two thermal states")
    p.add_argument("x0", type=float)
    p.add_argument("x1", type=float)
    p.add_argument("--tail", type=float, default=1e-12)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("validate", help="check a protocol file and report diagnostics")
    p.add_argument("input")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with tolerances.using(eig=args.tol_eig, dec=args.tol_dec, match=args.tol_match):
            return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GaussianError as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
