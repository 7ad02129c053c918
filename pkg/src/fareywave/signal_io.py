"""Function tables, synthetic signals and CSV persistence.

Three CSV layouts are understood, distinguished by their header line:

* ``x,value``: a function table,
* ``t,f``: a uniformly sampled signal,
* ``scale,position,coefficient`` or ``j,k,coefficient``: transform output.

Reals are written with 17 significant digits, which round-trips every
finite double exactly.
"""
from __future__ import annotations

import csv
import dataclasses
import enum
import io
import math
import os
from dataclasses import dataclass
from typing import Mapping, TextIO

import numpy as np

from .core import FUNCTION_NAMES, DomainError, SignConvention, get_function
from .transform import CoefficientGrid, SampledSignal, ScaleGrid

TABLE_HEADER = ("x", "value")
SIGNAL_HEADER = ("t", "f")
CWT_HEADER = ("scale", "position", "coefficient")
DWT_HEADER = ("j", "k", "coefficient")
_HEADERS = (TABLE_HEADER, SIGNAL_HEADER, CWT_HEADER, DWT_HEADER)


class CSVFormatError(ValueError):
    """A CSV file does not match any of the supported layouts."""


def format_real(v: float) -> str:
    # adding 0.0 folds -0 into 0, which compares equal anyway
    return f"{float(v) + 0.0:.17g}"


@dataclass(frozen=True)
class FunctionTable:
    x: np.ndarray
    values: np.ndarray
    column_names: tuple[str, str] = TABLE_HEADER

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if x.ndim != 1 or x.shape != v.shape:
            raise ValueError("x and values must be 1-d arrays of equal length")
        if x.size < 2:
            raise ValueError("a function table needs at least 2 rows")
        if np.any(np.diff(x) <= 0):
            i = int(np.nonzero(np.diff(x) <= 0)[0][0])
            raise ValueError(f"x must be strictly increasing (row {i + 2}: {x[i + 1]!r} after {x[i]!r})")
        x.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.x.size

    @property
    def rows(self) -> list[tuple[float, float]]:
        return list(zip(self.x.tolist(), self.values.tolist()))


def uniform_grid(lo: float, hi: float, n: int) -> np.ndarray:
    """``n`` points from ``lo`` to ``hi`` inclusive.

    Computed as ``lo + (hi - lo) * (i / (n - 1))`` so that dyadic fractions
    of the range (the knots of every built-in function) come out exact.
    """
    n = int(n)
    if n < 2:
        raise ValueError(f"need at least 2 points, got {n}")
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError(f"need finite lo < hi, got [{lo}, {hi}]")
    x = lo + (hi - lo) * (np.arange(n) / (n - 1))
    x[-1] = hi
    return x


def tabulate(fn_id: str, lo: float, hi: float, n: int, conv=SignConvention.SUM_FORM) -> FunctionTable:
    """Sample a built-in function on ``n`` uniform points of ``[lo, hi]``."""
    if fn_id not in FUNCTION_NAMES:
        raise ValueError(f"unknown function {fn_id!r}; choose from {', '.join(FUNCTION_NAMES)}")
    x = uniform_grid(lo, hi, n)
    if fn_id == "farey" and (lo < 0 or hi > 1):
        raise DomainError(f"the Farey map is defined on [0, 1], got [{lo}, {hi}]")
    fn = get_function(fn_id, SignConvention.parse(conv))
    return FunctionTable(x, fn(x))


class SignalKind(enum.Enum):
    CONSTANT = "constant"
    STEP = "step"
    SINE = "sine"
    CHIRP = "chirp"
    BUMP = "bump"

    @classmethod
    def parse(cls, kind) -> "SignalKind":
        if isinstance(kind, cls):
            return kind
        try:
            return cls(str(kind).lower())
        except ValueError:
            names = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown signal kind {kind!r}; choose from {names}") from None


# parameter names and defaults per signal family (None marks a required value)
_SIGNAL_PARAMS = {
    SignalKind.CONSTANT: {"c": 1.0},
    SignalKind.STEP: {"at": 0.0, "height": 1.0},
    SignalKind.SINE: {"freq": None, "amplitude": 1.0, "phase": 0.0},
    SignalKind.CHIRP: {"f0": None, "f1": None, "amplitude": 1.0},
    SignalKind.BUMP: {"center": 0.0, "width": 1.0, "carrier": 0.0, "amplitude": 1.0},
}


def _positive(params, *names):
    for name in names:
        if not params[name] > 0:
            raise ValueError(f"{name} must be positive, got {params[name]}")


def synthesize(kind, params: Mapping[str, float] | None, origin: float, step: float, n: int) -> SampledSignal:
    """Deterministic samples of a named signal family at ``origin + i*step``.

    * CONSTANT ``c``
    * STEP ``height`` for ``t >= at``, 0 before
    * SINE ``amplitude * sin(freq*t + phase)``
    * CHIRP linear sweep from angular frequency ``f0`` at the first sample
      to ``f1`` at the last
    * BUMP ``amplitude * exp(-((t-center)/width)**2 / 2) * cos(carrier*(t-center))``;
      ``carrier=0`` gives a plain Gaussian
    """
    kind = SignalKind.parse(kind)
    if int(n) < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    if not step > 0:
        raise ValueError(f"step must be positive, got {step}")
    spec = _SIGNAL_PARAMS[kind]
    given = dict(params or {})
    unknown = sorted(set(given) - set(spec))
    if unknown:
        raise ValueError(f"unknown parameter(s) for {kind.value}: {', '.join(unknown)}; "
                         f"accepted: {', '.join(spec)}")
    p = {}
    for name, default in spec.items():
        v = given.get(name, default)
        if v is None:
            raise ValueError(f"{kind.value} needs parameter {name!r}")
        v = float(v)
        if not math.isfinite(v):
            raise ValueError(f"parameter {name} must be finite")
        p[name] = v
    t = origin + step * np.arange(int(n))
    if kind is SignalKind.CONSTANT:
        f = np.full(t.size, p["c"])
    elif kind is SignalKind.STEP:
        f = np.where(t >= p["at"], p["height"], 0.0)
    elif kind is SignalKind.SINE:
        _positive(p, "freq")
        f = p["amplitude"] * np.sin(p["freq"] * t + p["phase"])
    elif kind is SignalKind.CHIRP:
        _positive(p, "f0", "f1")
        tau = t - t[0]
        span = t[-1] - t[0]
        f = p["amplitude"] * np.sin(p["f0"] * tau + 0.5 * (p["f1"] - p["f0"]) * tau ** 2 / span)
    else:
        _positive(p, "width")
        if p["carrier"] < 0:
            raise ValueError(f"carrier must be non-negative, got {p['carrier']}")
        z = t - p["center"]
        f = p["amplitude"] * np.exp(-0.5 * (z / p["width"]) ** 2) * np.cos(p["carrier"] * z)
    return SampledSignal(float(origin), float(step), f)


# ---------------------------------------------------------------- writing

def _rows(value):
    if isinstance(value, SampledSignal):
        yield SIGNAL_HEADER
        for t, f in zip(value.times, value.samples):
            yield format_real(t), format_real(f)
    elif isinstance(value, FunctionTable):
        yield value.column_names
        for x, v in zip(value.x, value.values):
            yield format_real(x), format_real(v)
    elif isinstance(value, CoefficientGrid):
        c = value.coefficients
        if value.is_dyadic:
            yield DWT_HEADER
            for i, j in enumerate(value.levels):
                for p, k in enumerate(value.shifts):
                    yield str(int(j)), str(int(k)), format_real(c[i, p])
        else:
            yield CWT_HEADER
            for i, s in enumerate(value.grid.scales):
                for p, u in enumerate(value.grid.positions):
                    yield format_real(s), format_real(u), format_real(c[i, p])
    else:
        raise TypeError(f"cannot write {type(value).__name__} as CSV")


def format_csv(value) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(_rows(value))
    return buf.getvalue()


def write_csv(value, path: str | os.PathLike | TextIO) -> None:
    """Write a signal, table or coefficient grid; ``path`` may be an open text stream."""
    text = format_csv(value)
    if hasattr(path, "write"):
        path.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


# ---------------------------------------------------------------- reading

def _parse_cell(cell: str, line: int, column: str, integer: bool = False):
    try:
        v = int(cell) if integer else float(cell)
    except ValueError:
        kind = "integer" if integer else "numeric"
        raise CSVFormatError(f"line {line}, column {column!r}: non-{kind} cell {cell!r}") from None
    if not integer and not math.isfinite(v):
        raise CSVFormatError(f"line {line}, column {column!r}: non-finite value {cell!r}")
    return v


def recover_step(t: np.ndarray, rtol: float = 1e-9) -> float:
    """Step ``h`` with ``t[0] + h*i`` reproducing the sample times.

    Each time confines ``h`` to a small interval; the doubles around the
    centre of their intersection are tried, nearest to the mean spacing
    first, and the first that gives every time back exactly is returned (always possible for files this
    module wrote; several steps may qualify, all yielding the same grid).
    Hand-written files whose times carry decimal rounding are accepted when
    uniform to relative tolerance ``rtol``.
    """
    n = t.size
    idx = np.arange(n)
    guess = (t[-1] - t[0]) / (n - 1)
    if not guess > 0:
        raise CSVFormatError("t must be strictly increasing")
    # each time pins h to an interval of width ~ulp(t_i)/i; intersect them
    i = idx[1:]
    half = 0.5 * np.spacing(np.abs(t[1:]))
    lo = float(np.max(((t[1:] - t[0]) - half) / i))
    hi = float(np.min(((t[1:] - t[0]) + half) / i))
    centre = 0.5 * (lo + hi) if lo <= hi else guess
    cand = [np.array([centre, guess])]
    up = down = np.array([centre, guess])
    for _ in range(32):
        up = np.nextafter(up, math.inf)
        down = np.nextafter(down, 0.0)
        cand += [up, down]
    cand = np.unique(np.concatenate(cand))
    cand = cand[np.argsort(np.abs(cand - guess), kind="stable")]
    best, best_dev = guess, math.inf
    for h in cand:
        dev = float(np.max(np.abs(t[0] + h * idx - t)))
        if dev == 0.0:
            return float(h)
        if dev < best_dev:
            best, best_dev = float(h), dev
    if best_dev > rtol * guess * max(1.0, n):
        bad = int(np.argmax(np.abs(t[0] + best * idx - t)))
        raise CSVFormatError(f"line {bad + 2}, column 't': samples are not uniformly spaced")
    return best


def _read_rows(fh: TextIO, source: str):
    reader = csv.reader(fh)
    try:
        header = next(reader)
    except StopIteration:
        raise CSVFormatError(f"{source}: empty file, expected a header line") from None
    header = tuple(h.strip() for h in header)
    if header not in _HEADERS:
        options = "; ".join(",".join(h) for h in _HEADERS)
        raise CSVFormatError(f"{source}, line 1: malformed header {','.join(header)!r}; expected one of: {options}")
    rows = []
    for line, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise CSVFormatError(f"{source}, line {line}: expected {len(header)} cells, found {len(row)}")
        rows.append((line, [c.strip() for c in row]))
    if not rows:
        raise CSVFormatError(f"{source}: no data rows")
    return header, rows


def _columns(header, rows, integer_cols=()):
    cols = []
    for ci, name in enumerate(header):
        cols.append([_parse_cell(r[ci], line, name, name in integer_cols) for line, r in rows])
    return cols


def _check_increasing(values, rows, column):
    for i in range(1, len(values)):
        if not values[i] > values[i - 1]:
            raise CSVFormatError(
                f"line {rows[i][0]}, column {column!r}: {values[i]!r} does not exceed previous value {values[i - 1]!r}"
            )


def read_csv(path: str | os.PathLike | TextIO, wavelet: str = "unspecified",
             convention=SignConvention.SUM_FORM, signal_grid=(0.0, 1.0, 0)):
    """Read a CSV in one of the supported layouts.

    Returns a :class:`SampledSignal`, :class:`FunctionTable` or
    :class:`~fareywave.transform.CoefficientGrid`.  Coefficient files do
    not record the wavelet or the analysed grid, so those can be supplied
    here.
    """
    if hasattr(path, "read"):
        header, rows = _read_rows(path, getattr(path, "name", "<stream>"))
    else:
        with open(path, newline="") as fh:
            header, rows = _read_rows(fh, str(path))
    if header == TABLE_HEADER:
        x, v = _columns(header, rows)
        if len(x) < 2:
            raise CSVFormatError("a function table needs at least 2 data rows")
        _check_increasing(x, rows, "x")
        return FunctionTable(np.array(x), np.array(v))
    if header == SIGNAL_HEADER:
        t, f = _columns(header, rows)
        if len(t) == 1:
            raise CSVFormatError("a signal needs at least 2 samples to define its step")
        _check_increasing(t, rows, "t")
        t = np.array(t)
        return SampledSignal(float(t[0]), recover_step(t), np.array(f))
    dyadic = header == DWT_HEADER
    a, b, c = _columns(header, rows, integer_cols=("j", "k") if dyadic else ())
    rows_a = sorted(set(a))
    cols_b = sorted(set(b))
    if len(a) != len(rows_a) * len(cols_b):
        raise CSVFormatError(f"coefficients do not form a full {header[0]} x {header[1]} grid")
    mat = np.full((len(rows_a), len(cols_b)), np.nan)
    ia = {v: i for i, v in enumerate(rows_a)}
    ib = {v: i for i, v in enumerate(cols_b)}
    for (line, _), va, vb, vc in zip(rows, a, b, c):
        if not math.isnan(mat[ia[va], ib[vb]]):
            raise CSVFormatError(f"line {line}: duplicate entry for ({va}, {vb})")
        mat[ia[va], ib[vb]] = vc
    conv = SignConvention.parse(convention)
    if dyadic:
        levels = np.array(rows_a, dtype=int)
        grid = ScaleGrid(2.0 ** (-levels[::-1].astype(float)), np.array([0.0]))
        return CoefficientGrid(grid, mat, wavelet, conv, tuple(signal_grid), levels, np.array(cols_b, dtype=int))
    return CoefficientGrid(ScaleGrid(np.array(rows_a), np.array(cols_b)), mat, wavelet, conv, tuple(signal_grid))


def with_metadata(coeffs: CoefficientGrid, wavelet: str, convention, signal_grid) -> CoefficientGrid:
    """Attach the wavelet and analysed grid to coefficients read from a file."""
    return dataclasses.replace(
        coeffs, wavelet_id=wavelet, convention=SignConvention.parse(convention), signal_grid=tuple(signal_grid)
    )
