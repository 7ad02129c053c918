"""Command-line front end.

Exit codes: 0 success, 1 numerical or data failure, 2 usage error.
Tables go to ``--output`` or standard output in the CSV layouts of
:mod:`fareywave.signal_io`; scalar summaries (``riesz``,
``admissibility``) use a two-column ``quantity,value`` table.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from contextlib import contextmanager

import numpy as np

from .core import FUNCTION_NAMES, DomainError, get_function
from .quadrature import MajorantError, QuadratureError
from .signal_io import (
    CSVFormatError,
    FunctionTable,
    format_csv,
    format_real,
    read_csv,
    synthesize,
    tabulate,
    uniform_grid,
    with_metadata,
)
from .spectral import (
    admissibility,
    fourier_transform,
    overlap_gamma,
    riesz_bounds,
)
from .transform import CoefficientGrid, SampledSignal, ScaleGrid, cwt, dwt, icwt, series_partial_sum
from .verify import PROFILES, report_text, run_verify


class UsageError(ValueError):
    """Bad flag values (reported with exit code 2)."""


class NumericalFailure(RuntimeError):
    """A computation could not deliver a trustworthy result (exit code 1)."""


def _split(text: str, n: int, flag: str) -> list[str]:
    parts = text.split(":")
    if len(parts) != n:
        raise UsageError(f"{flag} expects {n} colon-separated fields, got {text!r}")
    return parts


def parse_grid(text: str) -> tuple[float, float, int]:
    lo, hi, n = _split(text, 3, "--grid")
    try:
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise UsageError(f"--grid expects lo:hi:n, got {text!r}") from None
    if not (lo < hi and n >= 2):
        raise UsageError(f"--grid needs lo < hi and n >= 2, got {text!r}")
    return lo, hi, n


def parse_scales(text: str) -> tuple[float, float, int]:
    lo, hi, per = _split(text, 3, "--scales")
    try:
        lo, hi, per = float(lo), float(hi), int(per)
    except ValueError:
        raise UsageError(f"--scales expects lo:hi:per-octave, got {text!r}") from None
    if not (0 < lo <= hi and per >= 1):
        raise UsageError(f"--scales needs 0 < lo <= hi and per-octave >= 1, got {text!r}")
    return lo, hi, per


def parse_int_range(text: str, flag: str) -> tuple[int, int]:
    a, b = _split(text, 2, flag)
    try:
        a, b = int(a), int(b)
    except ValueError:
        raise UsageError(f"{flag} expects two integers a:b, got {text!r}") from None
    if a > b:
        raise UsageError(f"{flag} needs a <= b, got {text!r}")
    return a, b


def parse_synth(text: str):
    """``kind[:name=value,...]``, e.g. ``bump:width=0.5,carrier=6``."""
    kind, _, rest = text.partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        name, eq, value = item.partition("=")
        if not eq:
            raise UsageError(f"--synth parameter {item!r} is not name=value")
        try:
            params[name.strip()] = float(value)
        except ValueError:
            raise UsageError(f"--synth parameter {name!r} is not a number: {value!r}") from None
    return kind, params


# ---------------------------------------------------------------- output

@contextmanager
def _sink(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _emit(text: str, path: str | None):
    with _sink(path) as fh:
        fh.write(text)


def _summary(pairs) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["quantity", "value"])
    for name, v in pairs:
        w.writerow([name, v if isinstance(v, str) else format_real(v)])
    return buf.getvalue()


# ---------------------------------------------------------------- commands

def _load_signal(args) -> SampledSignal:
    if args.input and args.synth:
        raise UsageError("give either --input or --synth, not both")
    if args.input:
        sig = read_csv(args.input)
        if not isinstance(sig, SampledSignal):
            raise UsageError(f"{args.input} is not a t,f signal file")
        return sig
    if args.synth:
        if not args.grid:
            raise UsageError("--synth needs --grid lo:hi:n")
        lo, hi, n = parse_grid(args.grid)
        kind, params = parse_synth(args.synth)
        try:
            return synthesize(kind, params, lo, (hi - lo) / (n - 1), n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError("a signal is required: --input FILE or --synth KIND --grid lo:hi:n")


def cmd_eval(args):
    fn = get_function(args.fn, args.convention)
    xs = []
    for item in args.x:
        for part in item.split(","):
            try:
                xs.append(float(part))
            except ValueError:
                raise UsageError(f"--x value {part!r} is not a number") from None
    x = np.array(xs)
    if args.fn == "farey" and np.any((x < 0) | (x > 1)):
        raise DomainError("the Farey map is defined on [0, 1]")
    values = np.atleast_1d(fn(x))
    if x.size == 1:
        _emit(format_real(values[0]) + "\n", args.output)
    else:
        lines = ["x,value"] + [f"{format_real(a)},{format_real(b)}" for a, b in zip(x, values)]
        _emit("\n".join(lines) + "\n", args.output)


def cmd_tabulate(args):
    if args.grid:
        lo, hi, n = parse_grid(args.grid)
    else:
        lo, hi, n = args.lo, args.hi, args.n
    if lo is None or hi is None or n is None:
        raise UsageError("tabulate needs --lo, --hi and --n (or --grid lo:hi:n)")
    if not (lo < hi and n >= 2):
        raise UsageError("tabulate needs lo < hi and n >= 2")
    _emit(format_csv(tabulate(args.fn, lo, hi, n, args.convention)), args.output)


def cmd_verify(args):
    report = run_verify(args.profile)
    sys.stdout.write(report_text(report))
    if args.output:
        with open(args.output, "w", newline="") as fh:
            report.to_csv(fh)
    return 0 if report.ok else 1


def cmd_fourier(args):
    lo, hi, n = parse_grid(args.grid or "-50:50:1001")
    xi = uniform_grid(lo, hi, n)
    if args.fn == "gamma":
        values = overlap_gamma(xi, args.truncation)
    else:
        fn = get_function(args.fn, args.convention)
        z = np.asarray(fourier_transform(fn, xi, args.method, args.tol), dtype=complex)
        values = {"real": z.real, "imag": z.imag, "abs": np.abs(z)}[args.part]
    _emit(format_csv(FunctionTable(xi, values)), args.output)


def cmd_cwt(args):
    sig = _load_signal(args)
    lo, hi, per = parse_scales(args.scales)
    grid = ScaleGrid.log_spaced(lo, hi, per, sig.times[:: args.stride])
    try:
        coeffs = cwt(sig, grid, args.fn, args.convention)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(format_csv(coeffs), args.output)


def _default_shifts(sig: SampledSignal, fn, levels):
    t0, t1 = sig.extent
    lo, hi = get_function(fn).support
    jmax = max(levels)
    return int(np.floor(t0 * 2.0 ** jmax - hi)), int(np.ceil(t1 * 2.0 ** jmax - lo))


def cmd_dwt(args):
    sig = _load_signal(args)
    levels = parse_int_range(args.levels, "--levels")
    shifts = parse_int_range(args.shifts, "--shifts") if args.shifts else _default_shifts(sig, args.fn, levels)
    try:
        coeffs = dwt(sig, levels, shifts, args.fn, args.convention)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(format_csv(coeffs), args.output)


def cmd_reconstruct(args):
    if not args.input or not args.grid:
        raise UsageError("reconstruct needs --input COEFFS.csv and --grid lo:hi:n of the analysed signal")
    lo, hi, n = parse_grid(args.grid)
    coeffs = read_csv(args.input)
    if not isinstance(coeffs, CoefficientGrid):
        raise UsageError(f"{args.input} is not a coefficient file")
    coeffs = with_metadata(coeffs, args.fn, args.convention, (lo, (hi - lo) / (n - 1), n))
    if coeffs.is_dyadic:
        out = series_partial_sum(coeffs)
    else:
        est = admissibility(get_function(args.fn, args.convention), args.tol)
        if est.divergent:
            raise NumericalFailure(
                f"{args.fn} has mean {est.mean:.6g}: its admissibility constant diverges, "
                "so the inverse transform needs a zero-mean wavelet such as psi-tilde"
            )
        out = icwt(coeffs, est)
    _emit(format_csv(out), args.output)


def cmd_riesz(args):
    r = riesz_bounds(args.trials, args.support, args.seed, truncation=args.truncation)
    _emit(_summary([
        ("a_paper", r.a_paper), ("b_paper", r.b_paper),
        ("a_gamma", r.a_gamma), ("b_gamma", r.b_gamma),
        ("empirical_min_ratio", r.empirical_min_ratio), ("empirical_max_ratio", r.empirical_max_ratio),
        ("trials", float(r.trials)), ("gamma_tail_bound", r.gamma_tail_bound),
    ]), args.output)


def cmd_admissibility(args):
    est = admissibility(get_function(args.fn, args.convention), args.tol)
    if est.divergent:
        _emit(_summary([("status", "DIVERGENT"), ("mean", est.mean)]), args.output)
        return 0
    _emit(_summary([
        ("status", "FINITE"), ("value", est.value), ("error_estimate", est.error_estimate),
        ("near_zero_part", est.near_zero_part), ("mid_part", est.mid_part), ("tail_part", est.tail_part),
        ("eta_split", est.eta_split), ("cutoff", est.cutoff), ("mean", est.mean),
        ("slope_at_zero", est.slope_at_zero), ("remainder_coefficient", est.remainder_coefficient),
    ]), args.output)


# ---------------------------------------------------------------- parser

def _common(p, fn_default="phi", fn_choices=FUNCTION_NAMES):
    p.add_argument("--fn", choices=fn_choices, default=fn_default)
    p.add_argument("--convention", choices=("sum", "piecewise"), default="sum")
    p.add_argument("--output", "-o", help="output file (default: standard output)")


def _signal_flags(p):
    p.add_argument("--input", help="signal CSV with header t,f")
    p.add_argument("--synth", help="synthetic signal kind[:name=value,...] (needs --grid)")
    p.add_argument("--grid", help="signal grid lo:hi:n for --synth")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fareywave", description="Farey scaling function and wavelet toolkit")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("eval", help="evaluate a function at points")
    _common(p)
    p.add_argument("--x", action="append", required=True, help="point(s), comma-separated or repeated")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("tabulate", help="uniform table of a function")
    _common(p)
    p.add_argument("--lo", type=float)
    p.add_argument("--hi", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--grid", help="lo:hi:n, alternative to --lo/--hi/--n")
    p.set_defaults(run=cmd_tabulate)

    p = sub.add_parser("verify", help="audit every claimed value")
    p.add_argument("--profile", choices=sorted(PROFILES), default="acceptance")
    p.add_argument("--output", "-o", help="also write the report as CSV")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("fourier", help="Fourier transform or overlap-function table")
    _common(p, fn_choices=FUNCTION_NAMES + ("gamma",))
    p.add_argument("--grid", help="frequency grid lo:hi:n (default -50:50:1001)")
    p.add_argument("--method", choices=("closed", "quadrature"), default="closed")
    p.add_argument("--part", choices=("real", "imag", "abs"), default="real")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--truncation", type=int, default=64, help="overlap-function truncation order")
    p.set_defaults(run=cmd_fourier)

    p = sub.add_parser("cwt", help="continuous wavelet transform of a signal")
    _common(p, fn_default="psi-tilde")
    _signal_flags(p)
    p.add_argument("--scales", default="0.0625:8:8", help="lo:hi:per-octave")
    p.add_argument("--stride", type=int, default=1, help="use every stride-th sample time as a position")
    p.set_defaults(run=cmd_cwt)

    p = sub.add_parser("dwt", help="dyadic wavelet coefficients of a signal")
    _common(p, fn_default="psi")
    _signal_flags(p)
    p.add_argument("--levels", default="0:3", help="jmin:jmax")
    p.add_argument("--shifts", help="kmin:kmax (default: every shift touching the signal)")
    p.set_defaults(run=cmd_dwt)

    p = sub.add_parser("reconstruct", help="inverse CWT or wavelet partial sum from a coefficient file")
    _common(p, fn_default="psi-tilde")
    p.add_argument("--input", help="coefficient CSV (scale,position,coefficient or j,k,coefficient)")
    p.add_argument("--grid", help="grid lo:hi:n of the analysed signal")
    p.add_argument("--tol", type=float, default=1e-8, help="admissibility tolerance")
    p.set_defaults(run=cmd_reconstruct)

    p = sub.add_parser("riesz", help="Riesz bounds of the integer translates of phi")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--support", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--truncation", type=int, default=64)
    p.add_argument("--output", "-o")
    p.set_defaults(run=cmd_riesz)

    p = sub.add_parser("admissibility", help="admissibility constant of a wavelet")
    _common(p, fn_default="psi-tilde")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(run=cmd_admissibility)
    return parser


# flags whose values may start with "-" (negative ranges)
_VALUE_FLAGS = ("--grid", "--scales", "--levels", "--shifts", "--x", "--lo", "--hi")


def _attach_values(argv: list[str]) -> list[str]:
    """Rewrite ``--grid -8:8:129`` as ``--grid=-8:8:129`` so argparse keeps the value."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1] != "-":
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def dispatch(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(_attach_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code = args.run(args)
    except (UsageError, DomainError) as exc:
        parser.print_usage(sys.stderr)
        print(f"fareywave {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (NumericalFailure, QuadratureError, MajorantError, CSVFormatError, OSError, ValueError) as exc:
        print(f"fareywave {args.command}: {exc}", file=sys.stderr)
        return 1
    return int(code or 0)


def main(argv=None):
    sys.exit(dispatch(argv))
