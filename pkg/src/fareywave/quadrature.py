"""Adaptive Gauss-Kronrod (7/15) quadrature.

This is the independent numerical oracle used to check every closed form
in the package.  All panels created in one refinement sweep are evaluated
in a single vectorised call of the integrand, so the
integrand must accept a 1-d numpy array.  Constant or scalar-returning
integrands are broadcast.

Refinement is global: the panels carrying the largest error estimates are
bisected until the summed estimate drops below the tolerance, or until
only roundoff-limited panels remain.  Panel contributions are summed with
``math.fsum`` in left-to-right panel order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

# QUADPACK qk15 nodes and weights on [-1, 1]
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])  # 15 nodes, ascending
_KWEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GWEIGHTS = np.zeros(15)
_GWEIGHTS[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])

_EPS = np.finfo(float).eps


class QuadratureError(RuntimeError):
    """Adaptive refinement did not reach the requested tolerance.

    ``result`` holds the best estimate obtained.
    """

    def __init__(self, msg: str, result: "QuadratureResult"):
        super().__init__(msg)
        self.result = result


class MajorantError(ValueError):
    """A sample of the integrand exceeds the declared tail majorant."""


@dataclass(frozen=True)
class QuadratureResult:
    value: float | complex
    error_estimate: float
    subdivisions: int
    tail_bound: float = 0.0

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class TailMajorant:
    """Bound ``|f(w)| <= coefficient / w**exponent`` beyond the cutoff."""

    coefficient: float
    exponent: float

    def __post_init__(self):
        if not self.coefficient > 0:
            raise ValueError("majorant coefficient must be positive")
        if not self.exponent > 1:
            raise ValueError("majorant exponent must exceed 1 for an integrable tail")

    def __call__(self, w):
        return self.coefficient / np.asarray(w, dtype=float) ** self.exponent

    def tail_integral(self, cutoff: float) -> float:
        p = self.exponent
        return self.coefficient / ((p - 1.0) * cutoff ** (p - 1.0))

    def cutoff_for(self, bound: float) -> float:
        """Smallest cutoff L with tail integral <= bound."""
        p = self.exponent
        return (self.coefficient / ((p - 1.0) * bound)) ** (1.0 / (p - 1.0))


def _evaluate(f, x: np.ndarray) -> np.ndarray:
    y = np.asarray(f(x))
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    return y


def _panel_rules(f, lo: np.ndarray, hi: np.ndarray):
    centre = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = centre[:, None] + half[:, None] * _NODES[None, :]
    y = _evaluate(f, x.ravel()).reshape(x.shape)
    kron = half * (y @ _KWEIGHTS)
    gauss = half * (y @ _GWEIGHTS)
    # QUADPACK error heuristic
    mean = kron / (2.0 * half)
    resasc = np.abs(half) * (np.abs(y - mean[:, None]) @ _KWEIGHTS)
    resabs = np.abs(half) * (np.abs(y) @ _KWEIGHTS)
    err = np.abs(kron - gauss)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc != 0) & (err != 0), scaled, err)
    floor = 50.0 * _EPS * resabs
    return kron, np.maximum(err, floor), floor


def _breakpoints(f, a: float, b: float, points: Iterable[float] | None) -> list[float]:
    pts = set()
    if points is not None:
        pts.update(float(p) for p in points)
    knots = getattr(f, "knots", None)
    if knots is not None:
        pts.update(float(p) for p in knots)
    inner = sorted(p for p in pts if a < p < b)
    return [a, *inner, b]


def integrate(
    f: Callable,
    a: float,
    b: float,
    tol: float = 1e-12,
    points: Iterable[float] | None = None,
    max_subdivisions: int = 200_000,
    initial_panels: int = 1,
) -> QuadratureResult:
    """Integrate ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    The interval is first split at ``points`` and, for a
    :class:`~fareywave.core.PiecewiseFunction` integrand, at its knots.
    ``initial_panels`` further subdivides each piece uniformly, which helps
    with long oscillatory ranges.
    """
    a, b = float(a), float(b)
    if not b >= a:
        raise ValueError(f"need a <= b, got [{a}, {b}]")
    if not tol > 0:
        raise ValueError("tol must be positive")
    if a == b:
        return QuadratureResult(0.0, 0.0, 0)
    edges = _breakpoints(f, a, b, points)
    lo_list, hi_list = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        e = np.linspace(lo, hi, initial_panels + 1)
        lo_list.append(e[:-1])
        hi_list.append(e[1:])
    lo = np.concatenate(lo_list)
    hi = np.concatenate(hi_list)
    val, err, floor = _panel_rules(f, lo, hi)
    scale = max(abs(a), abs(b), 1.0)
    subdivisions = 0
    while True:
        total = math.fsum(err)
        if total <= tol:
            break
        splittable = (err > 1.5 * floor) & ((hi - lo) > 64.0 * _EPS * scale)
        if not np.any(splittable):
            # roundoff-limited: nothing left that refinement can improve
            break
        cand = np.nonzero(splittable)[0]
        cand = cand[np.argsort(-err[cand], kind="stable")]
        need = total - 0.5 * tol
        upto = int(np.searchsorted(np.cumsum(err[cand]), need)) + 1
        pick = np.sort(cand[:upto])
        subdivisions += pick.size
        if subdivisions > max_subdivisions:
            best = _collect(lo, val, err, subdivisions)
            raise QuadratureError(
                f"no convergence on [{a}, {b}] after {subdivisions} subdivisions "
                f"(estimate {best.value!r} +/- {best.error_estimate:.3g})",
                best,
            )
        plo, phi_ = lo[pick], hi[pick]
        mid = 0.5 * (plo + phi_)
        nlo = np.concatenate([plo, mid])
        nhi = np.concatenate([mid, phi_])
        nval, nerr, nfloor = _panel_rules(f, nlo, nhi)
        keep = np.ones(lo.size, dtype=bool)
        keep[pick] = False
        lo = np.concatenate([lo[keep], nlo])
        hi = np.concatenate([hi[keep], nhi])
        val = np.concatenate([val[keep], nval])
        err = np.concatenate([err[keep], nerr])
        floor = np.concatenate([floor[keep], nfloor])
    return _collect(lo, val, err, subdivisions)


def _collect(lo, val, err, subdivisions) -> QuadratureResult:
    order = np.argsort(lo, kind="stable")
    val = val[order]
    if np.iscomplexobj(val):
        value = complex(math.fsum(val.real), math.fsum(val.imag))
    else:
        value = math.fsum(val)
    return QuadratureResult(value, math.fsum(err), subdivisions)


def integrate_tail(
    f: Callable,
    a: float,
    majorant: TailMajorant,
    tol: float = 1e-10,
    samples: int = 257,
    panel_width: float | None = None,
) -> QuadratureResult:
    """Integrate ``f`` over ``[a, inf)`` using a power-law majorant for the tail.

    The range is truncated at the smallest L whose majorant tail is at most
    ``tol/2``; ``[a, L]`` is integrated to ``tol/2``.  The returned value is
    the finite part, ``tail_bound`` is the majorant tail beyond L, and
    ``error_estimate`` includes it.  Before integrating, ``|f|`` is checked
    against the majorant on a geometric grid over ``[a, 4L]``.
    """
    if not a > 0:
        raise ValueError("tail integration needs a positive lower limit")
    cutoff = max(float(a), majorant.cutoff_for(tol / 2.0))
    probe = np.geomspace(a, 4.0 * cutoff, samples)
    vals = np.abs(_evaluate(f, probe))
    bad = np.nonzero(vals > majorant(probe) * (1.0 + 1e-12))[0]
    if bad.size:
        w = probe[bad[0]]
        raise MajorantError(
            f"|f({w:.6g})| = {vals[bad[0]]:.6g} exceeds majorant {float(majorant(w)):.6g}"
        )
    panels = 1
    if panel_width is not None and cutoff > a:
        panels = max(1, int(math.ceil((cutoff - a) / panel_width)))
    head = integrate(f, a, cutoff, tol / 2.0, initial_panels=panels)
    bound = majorant.tail_integral(cutoff)
    return QuadratureResult(head.value, head.error_estimate + bound, head.subdivisions, bound)
