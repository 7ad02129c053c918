"""Numerical audit of every claimed property of the Farey wavelets.

Each check compares a claimed value with an independent computation and
is marked PASS, FAIL, or DISCREPANCY_DOCUMENTED.  The last status is
reserved for six known inconsistencies in the published derivation (the
``c`` constant, the missing ``K`` in the closed-form transform of phi,
``M0(0)``, the two-scale residual, the support remark and the Riesz lower
bound); the report still shows the claimed value next to the computed one.
"""
from __future__ import annotations

import csv
import enum
import io
import math
import time
from dataclasses import dataclass, field
from typing import Callable, TextIO

import numpy as np

from .core import (
    C_PAPER,
    K,
    K0,
    K1,
    LN2,
    SignConvention,
    filters,
    get_function,
    two_scale_residual,
)
from .quadrature import integrate
from .signal_io import synthesize, tabulate
from .spectral import (
    admissibility,
    gram_phi_orthonormal,
    overlap_gamma,
    overlap_tail_bound,
    phi_hat,
    phi_hat_as_printed,
    phi_inner,
    psi_hat,
    riesz_bounds,
    symbols,
)
from .transform import ScaleGrid, SampledSignal, cwt, dwt, icwt, series_partial_sum


class Status(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    DISCREPANCY_DOCUMENTED = "DISCREPANCY_DOCUMENTED"


@dataclass(frozen=True)
class Check:
    name: str
    paper_value: float | None
    computed: float
    abs_error: float | None
    tolerance: float
    status: Status
    note: str = ""


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status is Status.FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            expected = "NONE" if c.paper_value is None else f"{c.paper_value:.12g}"
            err = "NONE" if c.abs_error is None else f"{c.abs_error:.3e}"
            out.append(f"{c.name} expected={expected} computed={c.computed:.12g} error={err} {c.status.value}")
        return out

    def to_csv(self, fh: TextIO) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["name", "paper_value", "computed", "abs_error", "tolerance", "status", "note"])
        for c in self.checks:
            w.writerow([
                c.name,
                "" if c.paper_value is None else f"{c.paper_value:.17g}",
                f"{c.computed:.17g}",
                "" if c.abs_error is None else f"{c.abs_error:.17g}",
                f"{c.tolerance:.3g}",
                c.status.value,
                c.note,
            ])


@dataclass(frozen=True)
class TolerancePolicy:
    """Sampling density of the audit.  The pass tolerances never change."""

    xi_step: float = 0.1
    quad_tol: float = 1e-11
    riesz_trials: int = 1000
    gamma_points: int = 100


PROFILES = {
    "acceptance": TolerancePolicy(),
    "quick": TolerancePolicy(xi_step=0.5, riesz_trials=200, gamma_points=50),
}


class _Builder:
    def __init__(self):
        self.checks: list[Check] = []

    def compare(self, name, expected, computed, tol, note=""):
        err = abs(computed - expected)
        self.checks.append(Check(name, expected, computed, err, tol, Status.PASS if err <= tol else Status.FAIL, note))

    def bound(self, name, computed, limit, note=""):
        """Pass when ``computed <= limit`` (no claimed value)."""
        ok = computed <= limit
        self.checks.append(Check(name, None, computed, None, limit, Status.PASS if ok else Status.FAIL, note))

    def flag(self, name, ok, computed, note=""):
        self.checks.append(Check(name, None, float(computed), None, 0.0, Status.PASS if ok else Status.FAIL, note))

    def discrepancy(self, name, claimed, computed, note):
        self.checks.append(
            Check(name, claimed, computed, abs(computed - claimed), 0.0, Status.DISCREPANCY_DOCUMENTED, note)
        )


def _xi_grid(step: float) -> np.ndarray:
    n = int(round(50.0 / step))
    return np.arange(-n, n + 1) * step


# ---------------------------------------------------------------- groups

def _core_checks(b: _Builder, pol: TolerancePolicy):
    phi = get_function("phi")
    psi = get_function("psi")
    b.compare("phi_hat_zero", 1.0, integrate(phi, -1, 1, 1e-13).value, 1e-10, "integral of phi")
    b.compare("psi_l2_norm", 1.0, integrate(lambda x: psi(x) ** 2, -0.5, 1.5, 1e-13, points=psi.knots).value, 1e-8)
    h = filters()
    r2 = math.sqrt(2.0)
    for k, expected in ((-1, 1 / (3 * r2)), (0, 1 / r2), (1, 1 / (3 * r2)), (5, 0.0)):
        b.compare(f"filter_tap_h{k}", expected, h.h(k), 0.0)
    res = two_scale_residual(np.array([-1.0, -0.5, 0.0, 0.5, 1.0]))
    b.bound("two_scale_residual_half_integers", float(np.max(np.abs(res))), 1e-13)
    quarter = two_scale_residual(0.25)
    b.compare("two_scale_residual_quarter", 7 * K / 45, quarter, 1e-12, "hand substitution 3K/5 - 4K/9")
    b.discrepancy("two_scale_identity", 0.0, quarter, "refinement relation claimed as an identity; holds only at half-integers")
    b.discrepancy("psi_support_lower_end", -1.0, psi.support[0],
                  "support remark gives [-1, 1]; the explicit formula is supported on [-1/2, 3/2]")


def _fourier_checks(b: _Builder, pol: TolerancePolicy):
    xi = _xi_grid(pol.xi_step)
    dev = np.max(np.abs(psi_hat(xi) - psi_hat(xi, method="quadrature", tol=pol.quad_tol)))
    b.bound("psi_hat_symbol_vs_quadrature", float(dev), 1e-8, "max over [-50, 50]")
    dev = np.max(np.abs(phi_hat(xi) - phi_hat(xi, "quadrature", pol.quad_tol)))
    b.bound("phi_hat_closed_vs_quadrature", float(dev), 1e-8, "K-corrected closed form, max over [-50, 50]")
    b.compare("phi_hat_printed_zero_value", 4 * LN2 - 2, phi_hat_as_printed(0.0), 1e-12,
              "limit of the printed closed form at 0")
    b.discrepancy("phi_hat_missing_K", 1.0, phi_hat_as_printed(0.0),
                  "printed closed form lacks K and has the wrong sign on the Si term")
    m0, m1 = symbols(0.0)
    b.compare("m1_zero", K0 / 6, abs(m1), 1e-15)
    b.discrepancy("m0_zero", 1.0, m0, "low-pass symbol at 0 is 5/6; a refinable function needs 1")
    b.compare("psi_hat_zero_sum_form", K0 / 6, psi_hat(0.0).real, 1e-15)


def _moment_checks(b: _Builder, pol: TolerancePolicy):
    from .spectral import moment
    anti = get_function("psi-antisym")
    b.compare("moment_antisym_0", 0.0, moment(anti, 0), 1e-11)
    b.compare("moment_antisym_1", LN2 - 0.75, moment(anti, 1), 1e-9)
    tilde = get_function("psi-tilde")
    b.compare("psi_tilde_zero_mean", 0.0, moment(tilde, 0), 1e-10, "c = K0/12")
    psi = get_function("psi")
    mean = moment(psi, 0)
    residual = abs(mean - 2 * C_PAPER)
    b.compare("c_paper_residual_value", abs(K0 / 6 - (2 * LN2 - 1) / 3), residual, 1e-9)
    b.discrepancy("c_paper_zero_mean", 0.0, residual, "printed c misses a factor K1 and a sign")


def _admissibility_checks(b: _Builder, pol: TolerancePolicy):
    for name in ("psi-tilde", "psi-antisym"):
        fn = get_function(name)
        ests = [admissibility(fn, t) for t in (1e-4, 1e-6, 1e-8)]
        finite = all(math.isfinite(e.value) and not e.divergent for e in ests)
        gaps = [abs(a.value - c.value) - (a.error_estimate + c.error_estimate) for a, c in zip(ests, ests[1:])]
        b.flag(f"admissibility_{name.replace('-', '_')}_converges", finite and max(gaps) <= 0, ests[-1].value,
               "successive estimates within combined error bounds")
    est = admissibility(get_function("psi"), 1e-6)
    b.flag("admissibility_psi_divergent", est.divergent, est.mean, "nonzero mean forces divergence")
    b.compare("psi_mean_modulus", K0 / 6, abs(est.mean), 1e-12)
    slope = admissibility(get_function("psi-antisym"), 1e-6).slope_at_zero
    b.compare("antisym_slope_at_zero", (4 * LN2 - 1) / 4, slope, 1e-6,
              "claimed |F_hat'(0)|; the first moment gives 3/4 - ln2")


def _overlap_checks(b: _Builder, pol: TolerancePolicy):
    w = np.linspace(0.0, 2 * math.pi, pol.gamma_points, endpoint=False)
    g = overlap_gamma(w)
    b.bound("gamma_periodicity", float(np.max(np.abs(g - overlap_gamma(w + 2 * math.pi)))), 1e-12)
    diff = float(np.max(np.abs(g - overlap_gamma(w, 128))))
    b.bound("gamma_truncation_64_vs_128", diff, overlap_tail_bound(64), "limit is the analytic tail bound")
    b.flag("gamma_bounded_below", g.min() > 0 and math.isfinite(g.max()), g.min(), "inf on the grid")
    for l in (0, 1, -1, 2, -2, 3, -3):
        b.compare(f"orthonormal_gram_{l}", 1.0 if l == 0 else 0.0, gram_phi_orthonormal(l), 1e-6)


def _riesz_checks(b: _Builder, pol: TolerancePolicy):
    r = riesz_bounds(pol.riesz_trials)
    b.compare("phi_l2_norm_squared", 2 * (3 - 4 * LN2) / (4 * LN2 - 2) ** 2, r.a_paper, 1e-12)
    b.flag("riesz_sandwich", r.empirical_min_ratio >= r.a_gamma - 1e-6 and r.empirical_max_ratio <= r.b_gamma + 1e-6,
           r.empirical_min_ratio, f"{r.trials} trials inside [inf Gamma, sup Gamma]")
    pair = phi_inner(0) - phi_inner(1)
    b.discrepancy("riesz_lower_bound", r.a_paper, pair, "ratio of (1, -1) on adjacent shifts is below ||phi||^2")


def _haar_psi_tail(a):
    """integral_a^inf of the Haar wavelet."""
    a = np.asarray(a, dtype=float)
    return np.where(a <= 0, 0.0, np.where(a <= 0.5, -a, np.where(a < 1, a - 1.0, 0.0)))


def haar_step_control(levels=(0, 5), shifts=(-8, 70), J=7):
    """Max error of sampled Haar coefficients of a unit step against the analytic ones.

    The grid is offset by half a step so every dyadic breakpoint of the
    Haar copies (and the jump at 1/4) falls between two samples; the
    trapezoidal rule is then exact on the piecewise-constant products.
    """
    h = 2.0 ** -J
    sig = synthesize("step", {"at": 0.25}, -1 + h / 2, h, 3 * 2 ** J)
    t_end = sig.extent[1]
    c = dwt(sig, levels, shifts, "haar")
    err = 0.0
    for i, j in enumerate(c.levels):
        k = c.shifts
        exact = 2.0 ** (-j / 2) * (_haar_psi_tail(2.0 ** j * 0.25 - k) - _haar_psi_tail(2.0 ** j * t_end - k))
        err = max(err, float(np.max(np.abs(exact - c.coefficients[i]))))
    return err


def haar_reconstruction_control(J=7):
    """Relative L2 error of the Haar series of a zero-mean dyadic step signal."""
    h = 2.0 ** -J
    t = -1 + h / 2 + h * np.arange(3 * 2 ** J)
    box = lambda a, b: ((t >= a) & (t < b)).astype(float)
    f = box(0, 0.5) - box(0.5, 1) + 0.5 * (box(0.25, 0.375) - box(0.375, 0.5)) - 0.25 * (box(0.5, 0.75) - box(0.75, 1))
    sig = SampledSignal(t[0], h, f)
    rec = series_partial_sum(dwt(sig, (0, 6), (-2, 70), "haar"))
    return float(np.linalg.norm(rec.samples - f) / np.linalg.norm(f))


def bump_round_trip(n=512, length=16.0, width=1.0, carrier=6.0):
    """icwt(cwt(bump)) relative L2 error with psi-tilde, scales 2^-4..2^3 at 32 per octave."""
    h = length / n
    sig = synthesize("bump", {"width": width, "carrier": carrier}, -length / 2, h, n)
    grid = ScaleGrid.log_spaced(2.0 ** -4, 2.0 ** 3, 32, sig.times)
    a = admissibility(get_function("psi-tilde"), 1e-8)
    rec = icwt(cwt(sig, grid, "psi-tilde"), a)
    return float(np.linalg.norm(rec.samples - sig.samples) / np.linalg.norm(sig.samples))


def _transform_checks(b: _Builder, pol: TolerancePolicy):
    b.bound("haar_step_coefficients", haar_step_control(), 1e-10)
    b.bound("haar_series_reconstruction", haar_reconstruction_control(), 1e-10)
    rng = np.random.default_rng(7)
    h = 1 / 64
    f, g = rng.standard_normal(256), rng.standard_normal(256)
    alpha, beta = 0.7, -1.3
    sf, sg, mix = (SampledSignal(0.0, h, v) for v in (f, g, alpha * f + beta * g))
    grid = ScaleGrid.log_spaced(2 * h, 1.0, 4, sf.times[::4])
    lin = np.max(np.abs(cwt(mix, grid).coefficients - alpha * cwt(sf, grid).coefficients - beta * cwt(sg, grid).coefficients))
    b.bound("cwt_linearity", float(lin), 1e-12)
    d = lambda s: dwt(s, (0, 4), (-2, 40)).coefficients
    b.bound("dwt_linearity", float(np.max(np.abs(d(mix) - alpha * d(sf) - beta * d(sg)))), 1e-12)
    shifted = cwt(sf.shifted(8 * h), grid).coefficients
    base = cwt(sf, grid).coefficients
    b.bound("cwt_shift_covariance", float(np.max(np.abs(shifted[:, 2:] - base[:, :-2]))), 0.0, "8 samples = 2 position cells")
    b.bound("icwt_bump_round_trip", bump_round_trip(), 0.1, "Gaussian-enveloped bump, relative L2")


def _figure_checks(b: _Builder, pol: TolerancePolicy):
    f = tabulate("farey", 0, 1, 401)
    b.compare("table_farey_half", K, float(f.values[200]), 0.0)
    p = tabulate("phi", -1, 1, 401)
    b.compare("table_phi_zero", K, float(p.values[200]), 0.0)
    s = tabulate("psi", -0.5, 1.5, 401, SignConvention.PIECEWISE_FORM)
    b.compare("table_psi_half_piecewise", -K1, float(s.values[200]), 0.0)


GROUPS: dict[str, Callable[[_Builder, TolerancePolicy], None]] = {
    "core": _core_checks,
    "fourier": _fourier_checks,
    "moments": _moment_checks,
    "admissibility": _admissibility_checks,
    "overlap": _overlap_checks,
    "riesz": _riesz_checks,
    "transform": _transform_checks,
    "figures": _figure_checks,
}


def run_verify(tolerance_profile: str | TolerancePolicy = "acceptance", groups=None) -> VerificationReport:
    """Run the audit and return the report (failures are entries, not exceptions)."""
    pol = PROFILES[tolerance_profile] if isinstance(tolerance_profile, str) else tolerance_profile
    b = _Builder()
    start = time.perf_counter()
    for name in groups or GROUPS:
        GROUPS[name](b, pol)
    return VerificationReport(b.checks, time.perf_counter() - start)


def report_text(report: VerificationReport) -> str:
    buf = io.StringIO()
    for line in report.lines():
        buf.write(line + "\n")
    return buf.getvalue()
