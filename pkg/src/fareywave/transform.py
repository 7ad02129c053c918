"""Continuous and dyadic wavelet transforms of uniformly sampled signals.

All integrals are composite trapezoidal sums on the sample grid; the signal
is zero outside its sampled extent.  Wavelets are sampled with the mean of
their one-sided limits, so a jump that falls on a sample is weighted
correctly by the trapezoidal rule.

The dyadic transform integrates each ``psi_{j,k}`` directly rather than
running a filter-bank pyramid: the Farey refinement relation only holds at
half-integers, so a pyramid would compute something else.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import PiecewiseFunction, SignConvention, get_function
from .spectral import AdmissibilityEstimate

# positions within this many sample steps of the grid count as aligned
_ALIGN_TOL = 1e-9


@dataclass(frozen=True)
class SampledSignal:
    origin: float
    step: float
    samples: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=float)
        if s.ndim != 1 or s.size == 0:
            raise ValueError("samples must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(s)):
            raise ValueError("samples must be finite")
        if not (self.step > 0 and math.isfinite(self.step)):
            raise ValueError(f"step must be positive, got {self.step}")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    def __len__(self):
        return self.samples.size

    @property
    def times(self) -> np.ndarray:
        return self.origin + self.step * np.arange(self.samples.size)

    @property
    def extent(self) -> tuple[float, float]:
        return self.origin, self.origin + self.step * (self.samples.size - 1)

    def trapezoid_weights(self) -> np.ndarray:
        w = np.full(self.samples.size, self.step)
        w[0] *= 0.5
        w[-1] *= 0.5
        return w

    def shifted(self, offset: float) -> "SampledSignal":
        return SampledSignal(self.origin + offset, self.step, self.samples)


@dataclass(frozen=True)
class ScaleGrid:
    scales: np.ndarray
    positions: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.scales, dtype=float)
        p = np.asarray(self.positions, dtype=float)
        if s.ndim != 1 or s.size == 0 or np.any(s <= 0):
            raise ValueError("scales must be a non-empty list of positive values")
        if np.any(np.diff(s) <= 0):
            raise ValueError("scales must be sorted ascending without repeats")
        if p.ndim != 1 or p.size == 0:
            raise ValueError("positions must be a non-empty list")
        object.__setattr__(self, "scales", s)
        object.__setattr__(self, "positions", p)

    @classmethod
    def log_spaced(cls, lo: float, hi: float, per_octave: int, positions) -> "ScaleGrid":
        """Scales ``lo * 2**(i/per_octave)`` up to ``hi`` inclusive."""
        octaves = math.log2(hi / lo)
        n = int(round(octaves * per_octave))
        return cls(lo * 2.0 ** (np.arange(n + 1) / per_octave), positions)


@dataclass(frozen=True)
class CoefficientGrid:
    """Transform output, one row per scale (or level) and one column per position (or shift).

    For a dyadic transform ``levels``/``shifts`` hold ``j`` and ``k`` and
    ``grid.scales`` is ``2**-j``.  ``signal_grid`` records
    ``(origin, step, length)`` of the analysed signal.
    """

    grid: ScaleGrid
    coefficients: np.ndarray
    wavelet_id: str
    convention: SignConvention
    signal_grid: tuple[float, float, int]
    levels: np.ndarray | None = field(default=None)
    shifts: np.ndarray | None = field(default=None)

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=float)
        rows = self.levels.size if self.levels is not None else self.grid.scales.size
        cols = self.shifts.size if self.shifts is not None else self.grid.positions.size
        if c.shape != (rows, cols):
            raise ValueError(f"coefficient matrix {c.shape} does not match grid {(rows, cols)}")
        object.__setattr__(self, "coefficients", c)

    @property
    def is_dyadic(self) -> bool:
        return self.levels is not None

    def scaled(self, alpha: float) -> "CoefficientGrid":
        return CoefficientGrid(
            self.grid, alpha * self.coefficients, self.wavelet_id, self.convention,
            self.signal_grid, self.levels, self.shifts,
        )


def resolve_wavelet(wavelet, conv: SignConvention | str = SignConvention.SUM_FORM) -> PiecewiseFunction:
    if isinstance(wavelet, PiecewiseFunction):
        return wavelet
    return get_function(str(wavelet), SignConvention.parse(conv))


def _layout(origin: float, step: float, fn: PiecewiseFunction, scale: float, positions: np.ndarray):
    """Sample-index geometry of the kernels ``fn((t - u)/scale)`` for each ``u``.

    Returns ``(m, aligned, r0, width)``: fractional sample index of each
    position, whether all of them sit on the sample grid, the offset of the
    first sample under the support and the number of samples spanned.
    """
    lo, hi = fn.support
    m = (np.asarray(positions, dtype=float) - origin) / step
    rounded = np.round(m)
    aligned = bool(np.all(np.abs(m - rounded) <= _ALIGN_TOL))
    if aligned:
        m = rounded
    r0 = int(math.floor(lo * scale / step))
    width = int(math.ceil(hi * scale / step)) - r0 + 2
    return m, aligned, r0, width


def _correlate(signal: SampledSignal, fn: PiecewiseFunction, scale: float, positions: np.ndarray, amp: float):
    """``sum_n w_n f_n amp fn((t_n - u)/scale)`` for every position ``u``.

    On grid-aligned positions the kernel depends only on the index offset,
    and the sum runs over offsets in a fixed order, so shifting the signal
    by whole samples shifts the output exactly.
    """
    h = signal.step
    n = signal.samples.size
    m, aligned, r0, width = _layout(signal.origin, h, fn, scale, positions)
    weighted = signal.samples * signal.trapezoid_weights()
    if aligned:
        kernel = fn.average((r0 + np.arange(width)) * h / scale)
        base = m.astype(np.int64) + r0
        padded = np.concatenate([np.zeros(width), weighted, np.zeros(width)])
        idx = np.clip(base + width, 0, padded.size - width)
        inside = (base + width >= 0) & (base + width <= padded.size - width)
        acc = np.zeros(positions.size)
        for j in range(width):
            acc += padded[idx + j] * kernel[j]
        return amp * np.where(inside, acc, 0.0)
    first = np.floor(m).astype(np.int64) + r0
    offsets = np.arange(width + 1)
    out = np.empty(positions.size)
    chunk = max(1, 2_000_000 // (width + 1))
    for start in range(0, positions.size, chunk):
        sl = slice(start, start + chunk)
        idx = first[sl, None] + offsets[None, :]
        args = (idx - m[sl, None]) * h / scale
        vals = np.where((idx >= 0) & (idx < n), weighted[np.clip(idx, 0, n - 1)], 0.0)
        out[sl] = np.sum(vals * fn.average(args), axis=1)
    return amp * out


def _spread(out: np.ndarray, origin: float, step: float, fn: PiecewiseFunction, scale: float,
            positions: np.ndarray, amps: np.ndarray):
    """Add ``amps[p] fn((t_n - u_p)/scale)`` into ``out`` (the adjoint of :func:`_correlate`)."""
    n = out.size
    m, aligned, r0, width = _layout(origin, step, fn, scale, positions)
    if aligned:
        offsets = np.arange(width)
        idx = m.astype(np.int64)[:, None] + r0 + offsets[None, :]
        vals = amps[:, None] * fn.average((r0 + offsets) * step / scale)[None, :]
    else:
        offsets = np.arange(width + 1)
        idx = np.floor(m).astype(np.int64)[:, None] + r0 + offsets[None, :]
        vals = amps[:, None] * fn.average((idx - m[:, None]) * step / scale)
    keep = (idx >= 0) & (idx < n)
    out += np.bincount(idx[keep], weights=vals[keep], minlength=n)


def cwt(signal: SampledSignal, grid: ScaleGrid, wavelet="psi-tilde", conv=SignConvention.SUM_FORM) -> CoefficientGrid:
    """``d[u, s] = integral s**-0.5 psi((t - u)/s) f(t) dt`` on every grid point.

    Scales below two sample steps are rejected.
    """
    conv = SignConvention.parse(conv)
    fn = resolve_wavelet(wavelet, conv)
    too_fine = grid.scales[grid.scales < 2.0 * signal.step]
    if too_fine.size:
        raise ValueError(
            f"scale {too_fine[0]:.6g} is below the resolution limit 2*step = {2.0 * signal.step:.6g}"
        )
    coeffs = np.empty((grid.scales.size, grid.positions.size))
    for i, s in enumerate(grid.scales):
        coeffs[i] = _correlate(signal, fn, s, grid.positions, 1.0 / math.sqrt(s))
    return CoefficientGrid(grid, coeffs, fn.name, conv, (signal.origin, signal.step, signal.samples.size))


def _as_value(admissibility) -> float:
    if isinstance(admissibility, AdmissibilityEstimate):
        if admissibility.divergent:
            raise ValueError(
                "admissibility constant diverges: the wavelet has nonzero mean "
                f"({admissibility.mean:.6g}); use a zero-mean wavelet such as psi-tilde"
            )
        return admissibility.value
    a = float(admissibility)
    if not (math.isfinite(a) and a > 0):
        raise ValueError(
            f"admissibility constant must be finite and positive, got {a}; "
            "a divergent constant means the wavelet does not have zero mean"
        )
    return a


def _trapezoid_spacing(x: np.ndarray) -> np.ndarray:
    if x.size == 1:
        return np.ones(1)
    d = np.diff(x)
    w = np.empty(x.size)
    w[0] = 0.5 * d[0]
    w[-1] = 0.5 * d[-1]
    w[1:-1] = 0.5 * (d[:-1] + d[1:])
    return w


def icwt(coeffs: CoefficientGrid, admissibility) -> SampledSignal:
    """Invert a CWT on the analysed signal's sample grid.

    ``f(x) = (1/A) sum_s sum_u d[u, s] s**-0.5 psi((x - u)/s) du ds / s**2``
    with trapezoidal weights in ``u`` and in ``log s`` (``ds/s**2 = dlog s / s``).
    """
    a = _as_value(admissibility)
    if coeffs.is_dyadic:
        raise ValueError("icwt needs continuous-transform coefficients")
    fn = resolve_wavelet(coeffs.wavelet_id, coeffs.convention)
    origin, step, n = coeffs.signal_grid
    scales = coeffs.grid.scales
    positions = coeffs.grid.positions
    du = _trapezoid_spacing(positions)
    dlog = _trapezoid_spacing(np.log(scales))
    out = np.zeros(n)
    for i, s in enumerate(scales):
        amps = coeffs.coefficients[i] * du * (dlog[i] / s) / math.sqrt(s)
        _spread(out, origin, step, fn, s, positions, amps)
    return SampledSignal(origin, step, out / a)


def dwt(signal: SampledSignal, j_range, k_range, wavelet="psi", conv=SignConvention.SUM_FORM) -> CoefficientGrid:
    """``d[j, k] = integral 2**(j/2) psi(2**j t - k) f(t) dt`` by direct quadrature.

    ``j_range`` and ``k_range`` are inclusive ``(lo, hi)`` integer pairs.
    """
    conv = SignConvention.parse(conv)
    fn = resolve_wavelet(wavelet, conv)
    levels = np.arange(int(j_range[0]), int(j_range[1]) + 1)
    shifts = np.arange(int(k_range[0]), int(k_range[1]) + 1)
    if not levels.size or not shifts.size:
        raise ValueError(f"empty dyadic range j={tuple(j_range)}, k={tuple(k_range)}")
    lo, hi = fn.support
    t0, t1 = signal.extent
    hit = False
    coeffs = np.zeros((levels.size, shifts.size))
    for i, j in enumerate(levels):
        s = 2.0 ** (-float(j))
        positions = shifts * s
        a, b = positions + lo * s, positions + hi * s
        active = (b > t0) & (a < t1)
        if not np.any(active):
            continue
        hit = True
        coeffs[i, active] = _correlate(signal, fn, s, positions[active], 2.0 ** (0.5 * j))
    if not hit:
        raise ValueError("no dyadic wavelet in the requested range overlaps the signal extent")
    grid = ScaleGrid(2.0 ** (-levels[::-1].astype(float)), np.array([0.0]))
    return CoefficientGrid(
        grid, coeffs, fn.name, conv, (signal.origin, signal.step, signal.samples.size), levels, shifts
    )


def series_partial_sum(coeffs: CoefficientGrid) -> SampledSignal:
    """``sum_j sum_k d[j, k] psi_{j,k}(t)`` on the analysed signal's grid.

    Only an orthonormal wavelet (Haar) gives back the signal's projection;
    for the Farey wavelets this is a diagnostic approximation.
    """
    if not coeffs.is_dyadic:
        raise ValueError("series_partial_sum needs dyadic coefficients")
    fn = resolve_wavelet(coeffs.wavelet_id, coeffs.convention)
    origin, step, n = coeffs.signal_grid
    out = np.zeros(n)
    for i, j in enumerate(coeffs.levels):
        s = 2.0 ** (-float(j))
        _spread(out, origin, step, fn, s, coeffs.shifts * s, coeffs.coefficients[i] / math.sqrt(s))
    return SampledSignal(origin, step, out)
