"""Command-line entry point: ``confkg energy|table|sweep|wavefunction|verify``.

Exit codes: 0 success, 1 usage error, 2 invalid state, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import numpy as np

from .errors import ConfKGError, DomainError, NormalizationError
from .hulthen import (
    HulthenParams,
    energy,
    normalization_constant,
    transform_z_to_x,
    wavefunction,
)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def rational(text: str) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def real(text: str) -> float:
    return float(rational(text))


def _physics_flags(p, with_n=True):
    p.add_argument("--mu", type=rational, default=Fraction(1), help="fractional order in (0, 1], e.g. 1/2")
    p.add_argument("--q", type=real, required=False, help="deformation parameter")
    p.add_argument("--alpha", type=real, help="range parameter")
    p.add_argument("--S0", dest="s0", type=real, default=0.25, help="potential strength")
    p.add_argument("--m", type=real, default=None, help="rest mass")
    p.add_argument("--compton-units", action="store_true", help="set m = alpha")
    if with_n:
        p.add_argument("--n", type=int, default=0, help="quantum number")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="confkg", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key=value file; command-line flags take precedence")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("energy", help="energy level and auxiliary radicals")
    _physics_flags(p)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--strict", action="store_true", help="treat a negative radical R as invalid")

    p = sub.add_parser("table", help="recompute a published ground-state table as CSV")
    p.add_argument("which", type=int, choices=(1, 2, 3))

    p = sub.add_parser("sweep", help="ground-state energies over a parameter grid")
    p.add_argument("--alpha", type=real, action="append", help="repeatable")
    p.add_argument("--q", type=real, action="append", help="repeatable")
    p.add_argument("--mu", type=rational, action="append", help="repeatable; overrides --mu-steps")
    p.add_argument("--mu-steps", type=int, default=100, help="use mu = k/N, k = 1..N")
    p.add_argument("--S0", dest="s0", type=real, default=0.25)
    p.add_argument("--m", type=real, default=None)
    p.add_argument("--compton-units", action="store_true")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("wavefunction", help="tabulate psi(z) on the valid z range")
    _physics_flags(p)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--z-min", type=real, default=None)
    p.add_argument("--z-max", type=real, default=None)
    p.add_argument("--normalize", action="store_true", help="fix B_n by unit norm in x")
    p.add_argument("--out")

    p = sub.add_parser("verify", help="run numeric oracles and print a JSON report")
    p.add_argument("--suite", choices=("residual", "quantization", "fd", "all"), default="all")
    p.add_argument("--matrix", default="builtin", help="'builtin' or a JSON case list")
    return parser


# config handling

def read_config(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.lstrip("-").replace("-", "_")] = value.strip().strip('"')
    return out


def _apply_config(subparser: argparse.ArgumentParser, config: dict):
    by_dest = {a.dest: a for a in subparser._actions}
    by_dest.update({s.lstrip("-").replace("-", "_"): a
                    for a in subparser._actions for s in a.option_strings})
    defaults = {}
    for key, raw in config.items():
        action = by_dest.get(key)
        if action is None:
            raise UsageError(f"unknown config key {key!r}")
        if isinstance(action, argparse._StoreTrueAction):
            defaults[action.dest] = raw.lower() in ("1", "true", "yes", "on")
        elif isinstance(action, argparse._AppendAction):
            conv = action.type or str
            defaults[action.dest] = [conv(v) for v in raw.split(",") if v.strip()]
        else:
            conv = action.type or str
            defaults[action.dest] = conv(raw)
    subparser.set_defaults(**defaults)


def parse_args(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        config = read_config(args.config)
        subparser = parser._subparsers._group_actions[0].choices[args.command]
        _apply_config(subparser, config)
        args = parser.parse_args(argv)
    return args


# helpers

def _params(args) -> HulthenParams:
    if args.q is None or args.alpha is None:
        raise UsageError("--q and --alpha are required")
    if args.compton_units and args.m is not None:
        raise UsageError("--compton-units and --m are mutually exclusive")
    if not args.compton_units and args.m is None:
        raise UsageError("give --m or --compton-units")
    m = args.alpha if args.compton_units else args.m
    try:
        return HulthenParams(m=m, s0=args.s0, alpha=args.alpha, q=args.q, mu=args.mu)
    except DomainError as exc:
        raise UsageError(str(exc))


def _g6(v) -> str:
    return "null" if v is None else f"{v:.6g}"


def _frac(f: Fraction) -> str:
    return str(f)


def _write(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path!r}: {exc}")


# subcommands

def cmd_energy(args) -> int:
    p = _params(args)
    if p.q == 0:
        raise UsageError("q = 0 is singular in the closed-form spectrum")
    st = energy(args.n, p)
    record = {
        "n": st.n, "mu": _frac(p.mu), "q": p.q, "alpha": p.alpha, "S0": p.s0, "m": p.m,
        "energy": st.energy, "energy_sq": st.energy_sq, "eps_sq": st.eps_sq,
        "R": st.radical_R, "Q": st.radical_Q,
        "valid": {"real_energy": st.valid.real_energy, "nonneg_R": st.valid.nonneg_R,
                  "bound": st.valid.bound},
    }
    if args.json:
        print(json.dumps(record, sort_keys=True))
    else:
        print(_g6(st.energy))
        print(f"eps_sq={st.eps_sq:.6g} R={st.radical_R:.6g} Q={st.radical_Q:.6g} "
              f"real_energy={int(st.valid.real_energy)} nonneg_R={int(st.valid.nonneg_R)} "
              f"bound={int(st.valid.bound)}")
    if not st.valid.real_energy:
        print(f"invalid state: E^2 = {st.energy_sq:.6g} < 0", file=sys.stderr)
        return EXIT_INVALID
    if args.strict and not st.valid.nonneg_R:
        print(f"invalid state: R = {st.radical_R:.6g} < 0", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def table_csv(which: int) -> str:
    from .tables import cells, published

    data = published()
    by_q: dict = {}
    for c in cells(which):
        by_q.setdefault(c.q, []).append(c)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["q"] + [f"mu={m}" for m in data["mu"]])
    for q in data["q"]:
        w.writerow([f"{q:g}"] + [f"{c.computed:.6g}" for c in sorted(by_q[q], key=lambda c: c.mu)])
    return buf.getvalue()


def cmd_table(args) -> int:
    from .tables import misprints, published

    sys.stdout.write(table_csv(args.which))
    alpha = published()["tables"][str(args.which)]["alpha"]
    for mp in misprints(args.which):
        print(f"discrepancy: table {mp['table']} (alpha={alpha:g}) q={mp['q']:g} mu={mp['mu']}: "
              f"computed {mp['expected']}, printed {mp['printed']} ({mp['note']})", file=sys.stderr)
    return EXIT_OK


def cmd_sweep(args) -> int:
    from .sweep import SweepSpec, rows_to_csv, run_sweep

    if args.compton_units and args.m is not None:
        raise UsageError("--compton-units and --m are mutually exclusive")
    if not args.alpha or not args.q:
        raise UsageError("sweep needs at least one --alpha and one --q")
    mus = args.mu or SweepSpec.uniform_mu(args.mu_steps)
    try:
        spec = SweepSpec(mu_grid=mus, q_values=args.q, alpha_values=args.alpha, s0=args.s0,
                         n=args.n, compton_units=args.compton_units, m=args.m)
    except (ValueError, DomainError) as exc:
        raise UsageError(str(exc))
    _write(rows_to_csv(run_sweep(spec)), args.out)
    return EXIT_OK


def cmd_wavefunction(args) -> int:
    p = _params(args)
    if p.q == 0:
        raise UsageError("q = 0 is not supported: the wavefunction exponents contain 1/(mu q)")
    st = energy(args.n, p)
    if not st.valid.real_energy:
        print(f"invalid state ({st.valid.reason()}): no wavefunction", file=sys.stderr)
        return EXIT_INVALID
    if not st.valid.nonneg_R:
        print(f"warning: R = {st.radical_R:.6g} < 0, psi grows toward z = 0 and is not normalizable",
              file=sys.stderr)
    zmax = p.z_max
    hi = zmax * (1 - 1e-4)
    if args.z_max is not None:
        if args.z_max > hi:
            print(f"warning: z-max {args.z_max:g} clipped to {hi:.6g}", file=sys.stderr)
        else:
            hi = args.z_max
    lo = args.z_min if args.z_min is not None else zmax * 1e-6
    if not 0 < lo < hi:
        raise UsageError(f"need 0 < z-min < z-max, got {lo!r}, {hi!r}")
    norm = 1.0
    psi = wavefunction(args.n, p, st)
    if args.normalize:
        try:
            norm = normalization_constant(psi, p)
        except NormalizationError as exc:
            print(f"cannot normalize: {exc}", file=sys.stderr)
            return EXIT_INVALID
        psi = psi * norm
    z = np.geomspace(lo, hi, args.points)
    values = psi(z)
    buf = io.StringIO()
    buf.write(f"# n={st.n} mu={_frac(p.mu)} q={p.q!r} alpha={p.alpha!r} S0={p.s0!r} m={p.m!r}\n")
    buf.write(f"# energy={st.energy!r} R={st.radical_R!r} Q={st.radical_Q!r} z_max={zmax!r}\n")
    buf.write(f"# B_n={norm!r} ({'unit norm in x' if args.normalize else 'unnormalized'})\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["z", "x", "psi"])
    for zi, vi in zip(z, values):
        w.writerow([format(zi, ".17g"), format(transform_z_to_x(float(zi), p), ".17g"), format(vi, ".17g")])
    _write(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .suite import builtin_matrix, load_matrix, run_suite

    if args.matrix == "builtin":
        matrix = builtin_matrix()
    else:
        try:
            matrix = load_matrix(args.matrix)
        except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
            raise UsageError(f"bad matrix: {exc}")
    report = run_suite(args.suite, matrix)
    print(json.dumps(report, indent=1, sort_keys=True))
    return EXIT_OK if report["passed"] else EXIT_VERIFY


COMMANDS = {
    "energy": cmd_energy,
    "table": cmd_table,
    "sweep": cmd_sweep,
    "wavefunction": cmd_wavefunction,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    try:
        args = parse_args(sys.argv[1:] if argv is None else argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"confkg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, argparse.ArgumentTypeError) as exc:
        print(f"confkg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfKGError as exc:
        print(f"confkg: invalid state: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
