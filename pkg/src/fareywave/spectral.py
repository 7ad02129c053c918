"""Fourier-domain side of the Farey wavelets.

Convention: ``f_hat(xi) = integral f(x) exp(-i xi x) dx`` (angular
frequency, no normalisation); the inverse carries ``1/(2 pi)``.

Closed forms are built from the two-point integrals

    Ci(xi) = integral_xi^{2 xi} cos(t)/t dt,    Si(xi) = integral_xi^{2 xi} sin(t)/t dt,

and every closed form has a quadrature counterpart (``method="quadrature"``)
that integrates the piecewise definition directly.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import sici

from .core import (
    K,
    K0,
    PiecewiseFunction,
    FilterCoefficients,
    SignConvention,
    constants,
    filters,
    get_function,
)
from .quadrature import TailMajorant, integrate, integrate_tail

TWO_PI = 2.0 * math.pi

# below this |xi| the two-point integrals switch to their Taylor series
SERIES_THRESHOLD = 1e-4


class FourierMethod(enum.Enum):
    CLOSED_FORM = "closed"
    SYMBOL = "symbol"
    QUADRATURE = "quadrature"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        for member in cls:
            if value.lower() in (member.value, member.name.lower()):
                return member
        raise ValueError(f"unknown method {value!r}")


def _out(a):
    a = np.asarray(a)
    return a.item() if a.ndim == 0 else a


def _sinc(x):
    # sin(x)/x with the removable point filled in
    return np.sinc(np.asarray(x, dtype=float) / math.pi)


# ---------------------------------------------------------------------------
# special functions


def ci_si(xi):
    """Two-point cosine and sine integrals over ``[xi, 2 xi]``.

    Returns ``(Ci, Si)``; ``Ci`` is even with ``Ci(0) = ln 2`` and ``Si`` is
    odd with ``Si(0) = 0``.
    """
    x = np.asarray(xi, dtype=float)
    ax = np.abs(x)
    small = ax < SERIES_THRESHOLD
    safe = np.where(small, 1.0, ax)
    s2, c2 = sici(2.0 * safe)
    s1, c1 = sici(safe)
    x2 = ax * ax
    ci = np.where(small, math.log(2.0) - 0.75 * x2 + 15.0 / 96.0 * x2 * x2, c2 - c1)
    si = np.where(small, ax * (1.0 - 7.0 / 18.0 * x2 + 31.0 / 600.0 * x2 * x2), s2 - s1)
    return _out(ci), _out(np.sign(x) * si)


# ---------------------------------------------------------------------------
# transforms of the built-in functions


def _phi_hat_closed(xi):
    x = np.asarray(xi, dtype=float)
    ci, si = ci_si(x)
    return K * (4.0 * np.cos(x) * ci + 4.0 * np.sin(x) * si - 2.0 * _sinc(x))


def phi_hat_as_printed(xi):
    """The transform formula exactly as printed, without the K factor and
    with ``-4 sin(xi) Si(xi)``.  Kept only to quantify the discrepancy."""
    x = np.asarray(xi, dtype=float)
    ci, si = ci_si(x)
    return _out(4.0 * np.cos(x) * ci - 4.0 * np.sin(x) * si - 2.0 * _sinc(x))


def _half_interval_exp(xi):
    # integral_0^{1/2} exp(-i xi x) dx
    x = np.asarray(xi, dtype=float)
    return np.exp(-0.25j * x) * 0.5 * _sinc(0.25 * x)


def _antisym_hat_closed(xi):
    x = np.asarray(xi, dtype=float)
    ci, si = ci_si(0.5 * x)
    # H(xi) = integral_0^{1/2} x/(1-x) exp(-i xi x) dx
    h = -_half_interval_exp(x) + np.exp(-1j * x) * (ci + 1j * si)
    return h - np.exp(-1j * x) * np.conj(h)


def symbols(xi):
    """Refinement symbols ``(M0(xi), M1(xi))``.

    ``M0 = (1 + (2/3) cos xi)/2`` is real and ``M1 = (K0/6)(3 - 2 cos xi)
    exp(-i xi)`` is complex.
    """
    x = np.asarray(xi, dtype=float)
    m0 = 0.5 * (1.0 + 2.0 / 3.0 * np.cos(x))
    m1 = K0 / 6.0 * (3.0 - 2.0 * np.cos(x)) * np.exp(-1j * x)
    return _out(m0), _out(m1)


def _psi_hat_symbol(xi, conv: SignConvention):
    x = np.asarray(xi, dtype=float)
    _, m1 = symbols(0.5 * x)
    return conv.sign * np.asarray(m1) * _phi_hat_closed(0.5 * x)


def _closed_form(fn: PiecewiseFunction):
    conv = fn.convention or SignConvention.SUM_FORM
    if fn.name == "phi":
        return _phi_hat_closed
    if fn.name == "farey":
        return lambda x: 0.5 * np.exp(-0.5j * np.asarray(x, dtype=float)) * _phi_hat_closed(0.5 * np.asarray(x, dtype=float))
    if fn.name == "psi":
        return lambda x: _psi_hat_symbol(x, conv)
    if fn.name == "psi-tilde":
        c = constants(conv).c_corrected

        def tilde(x):
            x = np.asarray(x, dtype=float)
            return _psi_hat_symbol(x, conv) - c * 2.0 * _sinc(x) * np.exp(-0.5j * x)

        return tilde
    if fn.name == "psi-antisym":
        return _antisym_hat_closed
    if fn.name == "haar":
        return lambda x: _half_interval_exp(x) * (1.0 - np.exp(-0.5j * np.asarray(x, dtype=float)))
    return None


def _quadrature_transform(fn: PiecewiseFunction, xi: float, tol: float) -> complex:
    lo, hi = fn.support
    res = integrate(lambda x: fn(x) * np.exp(-1j * xi * x), lo, hi, tol, points=fn.knots)
    return res.value


def fourier_transform(fn: PiecewiseFunction, xi, method="closed", tol: float = 1e-12):
    """Fourier transform of a built-in function at ``xi`` (scalar or array).

    ``method="closed"`` uses the sine/cosine-integral closed form (only for
    the built-in functions); ``"quadrature"`` integrates the definition.
    """
    method = FourierMethod.parse(method)
    if method is FourierMethod.QUADRATURE:
        x = np.asarray(xi, dtype=float)
        vals = np.array([_quadrature_transform(fn, float(v), tol) for v in x.ravel()])
        return _out(vals.reshape(x.shape))
    closed = _closed_form(fn)
    if closed is None:
        raise ValueError(f"no closed-form transform for {fn.name!r}; use method='quadrature'")
    return _out(np.asarray(closed(xi), dtype=complex))


def phi_hat(xi, method="closed", tol: float = 1e-12):
    """Transform of the scaling function (real and even).

    The closed form is ``K (4 cos(xi) Ci(xi) + 4 sin(xi) Si(xi) - 2 sin(xi)/xi)``
    with the value 1 at ``xi = 0``.  The quadrature route evaluates
    ``2K integral_0^1 (1-x)/(1+x) cos(xi x) dx``.
    """
    method = FourierMethod.parse(method)
    if method is FourierMethod.QUADRATURE:
        x = np.asarray(xi, dtype=float)
        g = lambda t: K * (1.0 - t) / (1.0 + t)
        vals = [2.0 * integrate(lambda t: g(t) * np.cos(v * t), 0.0, 1.0, tol).value for v in x.ravel()]
        return _out(np.reshape(vals, x.shape))
    return _out(_phi_hat_closed(xi))


def psi_hat(xi, conv: SignConvention | str = SignConvention.SUM_FORM, method="symbol", tol: float = 1e-12):
    """Transform of the mother wavelet: ``sign * M1(xi/2) phi_hat(xi/2)``,
    or the direct quadrature of the explicit formula."""
    conv = SignConvention.parse(conv)
    method = FourierMethod.parse(method)
    if method is FourierMethod.QUADRATURE:
        return fourier_transform(get_function("psi", conv), xi, "quadrature", tol)
    return _out(_psi_hat_symbol(xi, conv))


def refinement_residual(
    xi,
    scaling: PiecewiseFunction | None = None,
    taps: FilterCoefficients | None = None,
    tol: float = 1e-12,
) -> float:
    """``|f_hat(xi) - M0(xi/2) f_hat(xi/2)|`` with quadrature transforms.

    ``M0(xi) = sum_k h_k exp(-i k xi)/sqrt(2)`` is built from ``taps``.
    Defaults are the Farey scaling function and its taps, for which the
    residual is 1/6 at ``xi = 0``.
    """
    scaling = scaling or get_function("phi")
    taps = taps or filters()
    xi = float(xi)
    m0 = sum(h * np.exp(-1j * k * xi / 2.0) for k, h in taps.h_taps.items()) / math.sqrt(2.0)
    full = _quadrature_transform(scaling, xi, tol)
    half = _quadrature_transform(scaling, xi / 2.0, tol)
    return abs(full - m0 * half)


# ---------------------------------------------------------------------------
# moments and admissibility


def moment(fn: PiecewiseFunction, p: int, tol: float = 1e-14) -> float:
    """``integral x**p fn(x) dx`` over the support of ``fn``."""
    if p < 0:
        raise ValueError("moment order must be non-negative")
    lo, hi = fn.support
    return integrate(lambda x: x ** p * fn(x), lo, hi, tol, points=fn.knots).value


@dataclass(frozen=True)
class AdmissibilityEstimate:
    """Three-way split of ``integral_0^inf |f_hat(w)|^2 / w dw``.

    ``value`` is ``inf`` and ``divergent`` is set when the mean is nonzero.
    ``tail_part`` is half the majorant bound beyond ``cutoff`` (the
    integrand is non-negative, so the true tail lies in ``[0, 2*tail_part]``).
    """

    value: float
    divergent: bool
    near_zero_part: float
    mid_part: float
    tail_part: float
    eta_split: float
    cutoff: float
    error_estimate: float
    mean: float
    slope_at_zero: float
    remainder_coefficient: float


def admissibility(fn: PiecewiseFunction, tol: float = 1e-6, eta: float = 0.5) -> AdmissibilityEstimate:
    """Admissibility constant of ``fn``.

    ``[0, eta]`` is integrated directly; there ``|f_hat(w)|^2/w`` behaves like
    ``|f_hat'(0)|^2 w`` with ``|f_hat'(0)| = |first moment|``, reported as
    ``slope_at_zero``.  ``remainder_coefficient`` is the largest observed
    ``|f_hat(w) - f_hat'(0) w| / w^2`` on ``(0, eta]``, an empirical bound on
    the little-o term.  ``[eta, L]`` uses :func:`integrate_tail` with the
    majorant ``TV(fn)^2 / w^3``, valid because ``|f_hat(w)| <= TV / |w|``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    mean = moment(fn, 0)
    slope = abs(moment(fn, 1))
    if abs(mean) > tol:
        return AdmissibilityEstimate(
            math.inf, True, math.inf, math.nan, math.nan, eta, math.nan, math.nan, mean, slope, math.nan
        )
    closed = _closed_form(fn)
    if closed is None:
        transform = lambda w: np.array([_quadrature_transform(fn, float(v), 1e-13) for v in np.ravel(w)])
    else:
        transform = closed

    def integrand(w):
        w = np.asarray(w, dtype=float)
        return np.abs(transform(w)) ** 2 / w

    near = integrate(integrand, 0.0, eta, tol / 2.0)
    w = np.linspace(eta / 512.0, eta, 512)
    first = -1j * moment(fn, 1)
    remainder = float(np.max(np.abs(transform(w) - first * w) / w ** 2))

    majorant = TailMajorant(fn.total_variation() ** 2, 3.0)
    lo, hi = fn.support
    mid = integrate_tail(integrand, eta, majorant, tol / 2.0, panel_width=math.pi / (hi - lo))
    tail = 0.5 * mid.tail_bound
    value = near.value + mid.value + tail
    err = near.error_estimate + (mid.error_estimate - mid.tail_bound) + tail
    cutoff = max(eta, majorant.cutoff_for(tol / 4.0))
    return AdmissibilityEstimate(
        value, False, near.value, mid.value, tail, eta, cutoff, err, mean, slope, remainder
    )


# ---------------------------------------------------------------------------
# overlap function, orthonormalisation and Riesz bounds

#: |phi_hat(xi)| <= PHI_HAT_DECAY / xi^2: two integrations by parts, with the
#: derivative jumps (K/2 + 4K + K/2) plus the variation of phi' inside the
#: branches (3K/2 + 3K/2)
PHI_HAT_DECAY = 8.0 * K


@dataclass(frozen=True)
class OverlapProfile:
    grid: np.ndarray
    values: np.ndarray
    truncation_order: int
    tail_bound: float


def _reduce(omega):
    # representative in [-pi, pi); the truncated sum is then symmetric
    w = np.asarray(omega, dtype=float)
    return np.mod(w + math.pi, TWO_PI) - math.pi


def overlap_tail_bound(truncation: int) -> float:
    """Bound on the neglected terms ``|k| > truncation`` of the overlap sum."""
    n = int(truncation)
    if n < 1:
        raise ValueError("truncation must be at least 1")
    # |w + 2 pi k| >= pi (2|k| - 1) for |w| <= pi; sum over both signs of k
    return 2.0 * PHI_HAT_DECAY ** 2 / math.pi ** 4 / (6.0 * (2 * n - 1) ** 3)


def overlap_gamma(omega, truncation: int = 64):
    """Overlap function ``sum_{|k| <= N} |phi_hat(w + 2 pi k)|^2``.

    ``omega`` is first reduced to ``[-pi, pi)``, so the result is exactly
    2 pi-periodic.  Neglected terms total at most
    :func:`overlap_tail_bound`.
    """
    if truncation < 0:
        raise ValueError("truncation must be non-negative")
    w = _reduce(omega)
    k = np.arange(-truncation, truncation + 1)
    vals = _phi_hat_closed(w[..., None] + TWO_PI * k) ** 2
    return _out(np.sum(vals, axis=-1))


def overlap_profile(points: int = 1024, truncation: int = 64) -> OverlapProfile:
    grid = np.linspace(0.0, TWO_PI, points, endpoint=False)
    return OverlapProfile(grid, np.asarray(overlap_gamma(grid, truncation)), truncation, overlap_tail_bound(truncation))


def orthonormalized_phi_hat(xi, truncation: int = 64):
    """``phi_hat / sqrt(Gamma)``: transform of the orthonormalised scaling function."""
    gamma = np.asarray(overlap_gamma(xi, truncation))
    if np.any(gamma <= 0):
        raise ArithmeticError("overlap function is not positive; orthonormalisation undefined")
    return _out(_phi_hat_closed(xi) / np.sqrt(gamma))


def periodized_energy(xi, truncation: int = 64, resum_truncation: int = 128):
    """``sum_{|n| <= M} |Phi_hat(xi + 2 pi n)|^2``, which should be 1."""
    x = np.asarray(xi, dtype=float)
    n = np.arange(-resum_truncation, resum_truncation + 1)
    shifted = x[..., None] + TWO_PI * n
    return _out(np.sum(np.asarray(orthonormalized_phi_hat(shifted, truncation)) ** 2, axis=-1))


def gram_phi_orthonormal(l: int, tol: float = 1e-10, truncation: int = 64, resum_truncation: int = 128) -> float:
    """``<Phi_0, Phi_l>`` as ``(1/2pi) integral_{-pi}^{pi} cos(l xi) sum_n |Phi_hat(xi + 2 pi n)|^2 dxi``.

    The periodisation uses ``resum_truncation`` terms while Gamma itself uses
    ``truncation``, so the check is not a tautology of the division.
    """
    res = integrate(
        lambda x: np.cos(l * x) * periodized_energy(x, truncation, resum_truncation),
        -math.pi,
        math.pi,
        tol,
    )
    return res.value / TWO_PI


def phi_inner(m: int, tol: float = 1e-14) -> float:
    """``<phi, phi(. - m)>``; zero for ``|m| >= 2``."""
    m = abs(int(m))
    if m >= 2:
        return 0.0
    phi = get_function("phi")
    return integrate(lambda x: phi(x) * phi(x - m), m - 1.0, 1.0, tol, points=[0.0, float(m)]).value


def synthesis_norm_squared(coeffs, method: str = "gram", tol: float = 1e-13) -> float:
    """``|| sum_k c_k phi(. - k) ||^2`` for coefficients at shifts 0, 1, ...

    ``"gram"`` uses the tridiagonal Gram matrix, ``"quadrature"`` integrates
    the synthesised function directly.
    """
    c = np.asarray(coeffs, dtype=float)
    if method == "gram":
        return float(phi_inner(0) * c @ c + 2.0 * phi_inner(1) * c[:-1] @ c[1:])
    if method == "quadrature":
        phi = get_function("phi")
        shifts = np.arange(c.size)

        def g(x):
            x = np.asarray(x, dtype=float)
            return np.sum(c[:, None] * phi(x[None, :] - shifts[:, None]), axis=0) ** 2

        pts = np.arange(-1.0, c.size + 1.0)
        return integrate(g, -1.0, float(c.size), tol, points=pts).value
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class RieszBoundEstimate:
    a_paper: float
    b_paper: float
    a_gamma: float
    b_gamma: float
    empirical_min_ratio: float
    empirical_max_ratio: float
    trials: int
    gamma_tail_bound: float


def riesz_bounds(
    sample_count: int = 1000,
    max_support: int = 8,
    seed: int = 0,
    grid_points: int = 1024,
    truncation: int = 64,
) -> RieszBoundEstimate:
    """Riesz constants of the integer translates of phi, three ways.

    ``a_paper``/``b_paper`` are ``||phi||^2`` and
    ``||phi||^2 + <phi, phi_{-1} + phi_1>``; ``a_gamma``/``b_gamma`` are the
    extremes of the overlap function on a grid of ``[0, 2 pi)``; the
    empirical values are extremes of ``||sum c_k phi_k||^2 / sum c_k^2`` over
    random Gaussian coefficient vectors of length ``1..max_support``.
    """
    if sample_count < 100:
        raise ValueError("need at least 100 random trials")
    g0, g1 = phi_inner(0), phi_inner(1)
    profile = overlap_profile(grid_points, truncation)
    rng = np.random.default_rng(seed)
    ratios = np.empty(sample_count)
    for i in range(sample_count):
        c = rng.standard_normal(rng.integers(1, max_support + 1))
        ratios[i] = (g0 * c @ c + 2.0 * g1 * c[:-1] @ c[1:]) / (c @ c)
    return RieszBoundEstimate(
        a_paper=g0,
        b_paper=g0 + 2.0 * g1,
        a_gamma=float(profile.values.min()),
        b_gamma=float(profile.values.max()),
        empirical_min_ratio=float(ratios.min()),
        empirical_max_ratio=float(ratios.max()),
        trials=sample_count,
        gamma_tail_bound=profile.tail_bound,
    )
