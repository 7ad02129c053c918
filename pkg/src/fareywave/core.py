"""Closed-form Farey map, scaling function and wavelet variants.

Every function here is a compactly supported piecewise rational function,
stored as a :class:`PiecewiseFunction`.  Evaluation is vectorised over
numpy arrays and returns plain floats for scalar input.

Knot ownership: on an internal knot the branch to its *left* is used
(intervals are ``[k0, k1], (k1, k2], ...``).  The functions that are
continuous do not care; the discontinuous ones (``psi-antisym``,
``psi-tilde`` at its support ends, ``haar``) expose :meth:`one_sided` and
:meth:`average` for quadrature rules that need the jump midpoint.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

LN2 = math.log(2.0)

#: normalisation of the Farey map, 1/(4 ln2 - 2)
K = 1.0 / (4.0 * LN2 - 2.0)
#: wavelet prefactor (4 ln2 - 2)/sqrt(3 - 4 ln2)
K0 = (4.0 * LN2 - 2.0) / math.sqrt(3.0 - 4.0 * LN2)
#: explicit-form constant 1/sqrt(3 - 4 ln2) (equals K*K0)
K1 = 1.0 / math.sqrt(3.0 - 4.0 * LN2)
#: the mean-correction constant as printed, (2 ln2 - 1)/6
C_PAPER = (2.0 * LN2 - 1.0) / 6.0

FUNCTION_NAMES = ("farey", "phi", "psi", "psi-tilde", "psi-antisym", "haar")


class DomainError(ValueError):
    """Argument outside the domain of a map defined only on [0, 1]."""


class SignConvention(enum.Enum):
    """Global sign of the mother wavelet.

    ``SUM_FORM`` is ``K0*(-phi(2x)/3 + phi(2x-1) - phi(2x-2)/3)``; its
    Fourier transform is exactly ``M1(xi/2) * phi_hat(xi/2)``.
    ``PIECEWISE_FORM`` is the four-branch explicit formula, which is the
    negative of the sum form.
    """

    SUM_FORM = "sum"
    PIECEWISE_FORM = "piecewise"

    @property
    def sign(self) -> float:
        return 1.0 if self is SignConvention.SUM_FORM else -1.0

    @classmethod
    def parse(cls, value: "SignConvention | str") -> "SignConvention":
        if isinstance(value, cls):
            return value
        for member in cls:
            if value.lower() in (member.value, member.name.lower()):
                return member
        raise ValueError(f"unknown sign convention {value!r}")


@dataclass(frozen=True)
class FareyConstants:
    k: float
    k0: float
    k1: float
    c_paper: float
    psi_mean: float
    c_corrected: float


def constants(conv: SignConvention | str = SignConvention.SUM_FORM) -> FareyConstants:
    conv = SignConvention.parse(conv)
    mean = conv.sign * K0 / 6.0
    return FareyConstants(k=K, k0=K0, k1=K1, c_paper=C_PAPER, psi_mean=mean, c_corrected=mean / 2.0)


Branch = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class PiecewiseFunction:
    """Compactly supported function given branch by branch.

    ``knots`` has one more entry than ``branches``; branch ``i`` lives on
    ``[knots[i], knots[i+1]]``.  Outside ``[knots[0], knots[-1]]`` the value
    is exactly 0, and with ``open_support`` the two support endpoints
    evaluate to 0 as well.
    """

    name: str
    knots: tuple[float, ...]
    branches: tuple[Branch, ...]
    open_support: bool = False
    convention: SignConvention | None = None
    continuous: bool = True
    _probe: int = field(default=9, repr=False, compare=False)

    def __post_init__(self):
        if len(self.knots) != len(self.branches) + 1:
            raise ValueError("need exactly one more knot than branches")
        if any(b <= a for a, b in zip(self.knots, self.knots[1:])):
            raise ValueError("knots must be strictly increasing")
        # denominators must stay away from zero on each closed branch interval
        for (lo, hi), br in zip(self.intervals, self.branches):
            vals = br(np.linspace(lo, hi, self._probe))
            if not np.all(np.isfinite(vals)):
                raise ValueError(f"{self.name}: branch on [{lo}, {hi}] is singular")

    @property
    def support(self) -> tuple[float, float]:
        return self.knots[0], self.knots[-1]

    @property
    def intervals(self) -> list[tuple[float, float]]:
        return list(zip(self.knots[:-1], self.knots[1:]))

    def _branch_eval(self, x: np.ndarray, idx: np.ndarray) -> np.ndarray:
        out = np.zeros_like(x)
        for i, br in enumerate(self.branches):
            m = idx == i
            if np.any(m):
                out[m] = br(x[m])
        return out

    def one_sided(self, x, side: str = "left"):
        """Left or right limit at ``x`` (equal to the value off the knots)."""
        xa = np.asarray(x, dtype=float)
        flat = np.atleast_1d(xa).ravel()
        kn = np.asarray(self.knots)
        if side == "left":
            idx = np.searchsorted(kn, flat, side="left") - 1
        elif side == "right":
            idx = np.searchsorted(kn, flat, side="right") - 1
        else:
            raise ValueError("side must be 'left' or 'right'")
        idx = np.where((idx < 0) | (idx >= len(self.branches)), -1, idx)
        out = self._branch_eval(flat, idx).reshape(np.shape(xa))
        return float(out) if out.ndim == 0 else out

    def __call__(self, x):
        xa = np.asarray(x, dtype=float)
        flat = np.atleast_1d(xa).ravel()
        kn = np.asarray(self.knots)
        idx = np.searchsorted(kn, flat, side="left") - 1
        idx[flat == kn[0]] = 0
        idx = np.where((idx < 0) | (idx >= len(self.branches)), -1, idx)
        if self.open_support:
            idx[(flat == kn[0]) | (flat == kn[-1])] = -1
        out = self._branch_eval(flat, idx).reshape(np.shape(xa))
        return float(out) if out.ndim == 0 else out

    def average(self, x):
        """Mean of the one-sided limits; the natural sample value at a jump."""
        out = 0.5 * (np.asarray(self.one_sided(x, "left")) + np.asarray(self.one_sided(x, "right")))
        return float(out) if out.ndim == 0 else out

    def jumps(self) -> list[tuple[float, float]]:
        """(knot, right limit - left limit) for every knot, support ends included."""
        out = []
        for kn in self.knots:
            out.append((kn, float(self.one_sided(kn, "right") - self.one_sided(kn, "left"))))
        return out

    def total_variation(self, per_branch: int = 2049) -> float:
        """Total variation over the real line, jumps included."""
        tv = sum(abs(j) for _, j in self.jumps())
        for (lo, hi), br in self.intervals_with_branches():
            tv += float(np.sum(np.abs(np.diff(br(np.linspace(lo, hi, per_branch))))))
        return tv

    def intervals_with_branches(self):
        return list(zip(self.intervals, self.branches))


# ---------------------------------------------------------------------------
# branch formulas


def _farey_left(x):
    return K * x / (1.0 - x)


def _farey_right(x):
    return K * (1.0 - x) / x


def _phi_left(x):
    return K * (1.0 + x) / (1.0 - x)


def _phi_right(x):
    return K * (1.0 - x) / (1.0 + x)


def _psi_b1(x):
    return K1 / 3.0 * (1.0 + 2.0 * x) / (1.0 - 2.0 * x)


def _psi_b2(x):
    return K1 * ((1.0 - 2.0 * x) / (3.0 * (1.0 + 2.0 * x)) - x / (1.0 - x))


def _psi_b3(x):
    return K1 * ((x - 1.0) / x - (1.0 - 2.0 * x) / (3.0 * (3.0 - 2.0 * x)))


def _psi_b4(x):
    return -K1 / 3.0 * (3.0 - 2.0 * x) / (1.0 - 2.0 * x)


_PSI_KNOTS = (-0.5, 0.0, 0.5, 1.0, 1.5)
_PSI_PIECEWISE = (_psi_b1, _psi_b2, _psi_b3, _psi_b4)


def _scaled(branch: Branch, factor: float, shift: float = 0.0) -> Branch:
    return lambda x: factor * branch(x) - shift


@lru_cache(maxsize=None)
def get_function(name: str, conv: SignConvention | str = SignConvention.SUM_FORM) -> PiecewiseFunction:
    """Return one of the built-in functions by identifier.

    Identifiers: ``farey``, ``phi``, ``psi``, ``psi-tilde``, ``psi-antisym``
    and ``haar``.  ``conv`` only affects ``psi`` and ``psi-tilde``.
    """
    conv = SignConvention.parse(conv)
    name = name.replace("_", "-").lower()
    if name == "farey":
        return PiecewiseFunction("farey", (0.0, 0.5, 1.0), (_farey_left, _farey_right))
    if name == "phi":
        return PiecewiseFunction("phi", (-1.0, 0.0, 1.0), (_phi_left, _phi_right))
    if name == "psi":
        s = -conv.sign
        return PiecewiseFunction(
            "psi", _PSI_KNOTS, tuple(_scaled(b, s) for b in _PSI_PIECEWISE), convention=conv
        )
    if name == "psi-tilde":
        s = -conv.sign
        c = constants(conv).c_corrected
        return PiecewiseFunction(
            "psi-tilde",
            _PSI_KNOTS,
            tuple(_scaled(b, s, c) for b in _PSI_PIECEWISE),
            open_support=True,
            convention=conv,
            continuous=False,
        )
    if name == "psi-antisym":
        return PiecewiseFunction(
            "psi-antisym",
            (0.0, 0.5, 1.0),
            (lambda x: x / (1.0 - x), lambda x: -(1.0 - x) / x),
            continuous=False,
        )
    if name == "haar":
        return PiecewiseFunction(
            "haar",
            (0.0, 0.5, 1.0),
            (lambda x: np.ones_like(x), lambda x: -np.ones_like(x)),
            continuous=False,
        )
    raise ValueError(f"unknown function {name!r}; expected one of {', '.join(FUNCTION_NAMES)}")


# ---------------------------------------------------------------------------
# public evaluators


def _scalar_or_array(a):
    a = np.asarray(a, dtype=float)
    return float(a) if a.ndim == 0 else a


def _check_unit_interval(x):
    xa = np.asarray(x, dtype=float)
    if np.any(~((xa >= 0.0) & (xa <= 1.0))):
        raise DomainError(f"argument outside [0, 1]: {x!r}")
    return xa


def eval_farey(x):
    """Normalised Farey map ``K x/(1-x)`` on [0, 1/2], ``K (1-x)/x`` on [1/2, 1]."""
    _check_unit_interval(x)
    return get_function("farey")(x)


@dataclass(frozen=True)
class GaugeSpec:
    """Branch pair (h on [0, a], h_bar on [a, 1]) of a generalised Farey map."""

    h: Callable
    h_bar: Callable
    a: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.a < 1.0:
            raise ValueError(f"breakpoint must lie in (0, 1), got {self.a}")


def eval_generalized_farey(gauge: GaugeSpec, x):
    xa = _check_unit_interval(x)
    flat = np.atleast_1d(xa).ravel()
    out = np.empty_like(flat)
    left = flat <= gauge.a
    for mask, fn in ((left, gauge.h), (~left, gauge.h_bar)):
        if np.any(mask):
            out[mask] = np.broadcast_to(np.asarray(fn(flat[mask]), dtype=float), mask.sum())
    out = out.reshape(xa.shape)
    return float(out) if out.ndim == 0 else out


def eval_phi(x):
    """Scaling function: the Farey map recentred on [-1, 1] (even, unit mean)."""
    return get_function("phi")(x)


def eval_psi(x, conv: SignConvention | str = SignConvention.SUM_FORM):
    return get_function("psi", conv)(x)


def eval_psi_tilde(x, conv: SignConvention | str = SignConvention.SUM_FORM):
    """Mother wavelet with its mean removed on the open support (-1/2, 3/2)."""
    return get_function("psi-tilde", conv)(x)


def eval_psi_antisym(x):
    """Unnormalised antisymmetric Farey wavelet on [0, 1]."""
    return get_function("psi-antisym")(x)


@dataclass(frozen=True)
class FilterCoefficients:
    h_taps: dict
    g_taps: dict
    g_rule_sign: int

    def h(self, k: int) -> float:
        return self.h_taps.get(k, 0.0)

    def g(self, k: int) -> float:
        return self.g_taps.get(k, 0.0)


def filters(conv: SignConvention | str = SignConvention.SUM_FORM) -> FilterCoefficients:
    """Low-pass taps h_k and the matching high-pass taps g_k.

    ``SUM_FORM`` uses ``g_k = (-1)**(k-1) h_{1-k}`` and ``PIECEWISE_FORM``
    uses ``g_k = (-1)**k h_{1-k}``; each reproduces its own psi.
    """
    conv = SignConvention.parse(conv)
    r2 = math.sqrt(2.0)
    h = {-1: 1.0 / (3.0 * r2), 0: 1.0 / r2, 1: 1.0 / (3.0 * r2)}
    rule = -1 if conv is SignConvention.SUM_FORM else 1
    g = {k: rule * (-1) ** k * h[1 - k] for k in (0, 1, 2)}
    return FilterCoefficients(h_taps=h, g_taps=g, g_rule_sign=rule)


def eval_dyadic(fn: PiecewiseFunction, j: int, k: int, x):
    """L2-normalised dyadic copy ``2**(j/2) fn(2**j x - k)``."""
    scale = 2.0 ** j
    return _scalar_or_array(math.sqrt(scale) * np.asarray(fn(scale * np.asarray(x, dtype=float) - k)))


def psi_from_sum(x, conv: SignConvention | str = SignConvention.SUM_FORM):
    """psi assembled from dilated scaling functions and the g taps."""
    conv = SignConvention.parse(conv)
    g = filters(conv)
    x = np.asarray(x, dtype=float)
    total = sum(g.g(k) * eval_phi(2.0 * x - k) for k in (0, 1, 2))
    return _scalar_or_array(K0 * math.sqrt(2.0) * total)


def two_scale_residual(x, taps: FilterCoefficients | None = None):
    """phi(x) minus its claimed refinement sum sqrt(2) sum_k h_k phi(2x - k).

    Vanishes at -1, -1/2, 0, 1/2 and 1 but not in between; e.g. 7K/45 at 1/4.
    """
    taps = taps or filters()
    x = np.asarray(x, dtype=float)
    rhs = sum(math.sqrt(2.0) * taps.h(k) * eval_phi(2.0 * x - k) for k in taps.h_taps)
    return _scalar_or_array(eval_phi(x) - rhs)


def knots_of(*fns: PiecewiseFunction, j: int = 0, k: int = 0) -> Sequence[float]:
    """Knot set of dyadic copies, for pre-splitting quadrature."""
    pts = set()
    for fn in fns:
        pts.update((kn + k) / 2.0 ** j for kn in fn.knots)
    return sorted(pts)
