import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as sp_integrate

from fareywave.core import K, K0, LN2, FilterCoefficients, PiecewiseFunction, SignConvention, get_function
from fareywave.spectral import (
    PHI_HAT_DECAY,
    admissibility,
    ci_si,
    fourier_transform,
    gram_phi_orthonormal,
    moment,
    orthonormalized_phi_hat,
    overlap_gamma,
    overlap_profile,
    overlap_tail_bound,
    periodized_energy,
    phi_hat,
    phi_hat_as_printed,
    phi_inner,
    psi_hat,
    refinement_residual,
    riesz_bounds,
    symbols,
    synthesis_norm_squared,
)

XI = np.arange(-500, 501) * 0.1


def scipy_ci_si(xi):
    c = sp_integrate.quad(lambda t: math.cos(t) / t, xi, 2 * xi, epsabs=1e-14)[0]
    s = sp_integrate.quad(lambda t: math.sin(t) / t, xi, 2 * xi, epsabs=1e-14)[0]
    return c, s


class TestCiSi:
    def test_zero(self):
        assert ci_si(0.0) == (pytest.approx(LN2, abs=1e-16), 0.0)
        c, s = scipy_ci_si(1e-6)
        assert ci_si(1e-6)[0] == pytest.approx(c, abs=1e-12)
        assert ci_si(1e-6)[1] == pytest.approx(s, abs=1e-12)

    @pytest.mark.parametrize("xi", [1.0, 0.3, 2.5, 17.0, 1e-3])
    def test_against_scipy_quad(self, xi):
        c, s = ci_si(xi)
        rc, rs = scipy_ci_si(xi)
        assert c == pytest.approx(rc, abs=1e-12) and s == pytest.approx(rs, abs=1e-12)

    @given(st.floats(-40, 40))
    def test_symmetry(self, xi):
        c1, s1 = ci_si(xi)
        c2, s2 = ci_si(-xi)
        assert c1 == c2 and s1 == -s2

    def test_series_crossover_continuous(self):
        # both branches at the switch point
        lo = ci_si(np.nextafter(1e-4, 0))
        hi = ci_si(np.nextafter(1e-4, 1))
        assert abs(lo[0] - hi[0]) <= 1e-10 and abs(lo[1] - hi[1]) <= 1e-10


class TestPhiHat:
    def test_at_zero(self):
        assert phi_hat(0.0) == 1.0
        assert phi_hat_as_printed(0.0) == pytest.approx(4 * LN2 - 2, abs=1e-15)
        assert phi_hat_as_printed(0.0) == pytest.approx(0.772589, abs=1e-6)

    def test_closed_vs_quadrature(self):
        dev = np.max(np.abs(phi_hat(XI) - phi_hat(XI, "quadrature", 1e-11)))
        assert dev <= 1e-8

    def test_three(self):
        assert phi_hat(3.0) == pytest.approx(phi_hat(3.0, "quadrature"), abs=1e-8)

    def test_printed_form_disagrees_away_from_zero(self):
        # the Si term of the printed formula carries the wrong sign
        assert abs(K * phi_hat_as_printed(3.0) - phi_hat(3.0)) > 0.1

    @given(st.floats(-60, 60))
    def test_real_and_even(self, xi):
        assert isinstance(phi_hat(xi), float)
        assert abs(phi_hat(xi) - phi_hat(-xi)) <= 1e-12

    @given(st.floats(1, 500))
    def test_decay_envelopes(self, xi):
        assert abs(phi_hat(xi)) <= 6 * K / xi
        assert abs(phi_hat(xi)) <= PHI_HAT_DECAY / xi ** 2


class TestSymbols:
    def test_values(self):
        m0, m1 = symbols(0.0)
        assert m0 == pytest.approx(5 / 6, abs=2e-16) and m1 == pytest.approx(K0 / 6, abs=2e-16)
        assert symbols(math.pi)[0] == pytest.approx(1 / 6, abs=1e-16)
        m0, m1 = symbols(math.pi / 2)
        assert m0 == pytest.approx(0.5, abs=1e-16) and abs(m1) == pytest.approx(K0 / 2, abs=1e-15)


class TestPsiHat:
    def test_zero(self):
        assert psi_hat(0.0) == pytest.approx(K0 / 6, abs=1e-15)
        assert psi_hat(0.0) == pytest.approx(0.270017, abs=1e-6)
        assert psi_hat(0.0, "piecewise") == pytest.approx(-K0 / 6, abs=1e-15)

    def test_symbol_vs_quadrature(self):
        dev = np.max(np.abs(psi_hat(XI) - psi_hat(XI, method="quadrature", tol=1e-11)))
        assert dev <= 1e-8

    def test_four(self):
        assert psi_hat(4.0) == pytest.approx(psi_hat(4.0, method="quadrature"), abs=1e-8)

    def test_plancherel(self):
        # (1/2pi) integral |psi_hat|^2 over [-W, W]; the rest is bounded by the
        # decay |psi_hat| <= 2|M1| PHI_HAT_DECAY / (xi/2)^2
        W = 400.0
        body = sp_integrate.quad(lambda x: abs(psi_hat(x)) ** 2, 0, W, limit=4000, epsabs=1e-12)[0] / math.pi
        c = (5 * K0 / 6) * PHI_HAT_DECAY * 4
        tail = 2 * c ** 2 / (3 * W ** 3) / (2 * math.pi)
        assert abs(body - 1) <= tail + 1e-9

    @pytest.mark.parametrize("name", ["psi-tilde", "psi-antisym", "farey", "haar"])
    def test_other_closed_forms(self, name):
        fn = get_function(name)
        xi = np.linspace(-30, 30, 121)
        dev = np.max(np.abs(fourier_transform(fn, xi) - fourier_transform(fn, xi, "quadrature", 1e-12)))
        assert dev <= 1e-10


class TestRefinement:
    def test_residual_at_zero(self):
        assert refinement_residual(0.0) == pytest.approx(1 / 6, abs=1e-12)

    def test_exact_control(self):
        hat = PiecewiseFunction("hat", (-1.0, 0.0, 1.0), (lambda x: 1 + x, lambda x: 1 - x))
        # hat(x) = hat(2x+1)/2 + hat(2x) + hat(2x-1)/2, i.e. h = (1/2, 1, 1/2)/sqrt(2)
        taps = FilterCoefficients({-1: 0.5 / math.sqrt(2), 0: 1 / math.sqrt(2), 1: 0.5 / math.sqrt(2)}, {}, 1)
        for xi in (0.0, 1.3, 7.0):
            assert refinement_residual(xi, hat, taps) <= 1e-12

    @given(st.floats(1, 100))
    @settings(max_examples=20)
    def test_residual_envelope(self, xi):
        bound = abs(phi_hat(xi)) + (5 / 6) * abs(phi_hat(xi / 2))
        assert refinement_residual(xi) <= bound + 1e-12


class TestMoments:
    def test_antisym(self):
        anti = get_function("psi-antisym")
        assert abs(moment(anti, 0)) <= 1e-11
        assert moment(anti, 1) == pytest.approx(LN2 - 0.75, abs=1e-9)
        assert moment(anti, 1) == pytest.approx(-0.0568528, abs=1e-7)

    @pytest.mark.parametrize("conv", list(SignConvention))
    def test_tilde_zero_mean(self, conv):
        assert abs(moment(get_function("psi-tilde", conv), 0)) <= 1e-10

    def test_psi_mean(self):
        assert moment(get_function("psi"), 0) == pytest.approx(K0 / 6, abs=1e-13)

    def test_tilde_has_second_vanishing_moment(self):
        assert abs(moment(get_function("psi-tilde"), 1)) <= 1e-12

    def test_negative_order(self):
        with pytest.raises(ValueError):
            moment(get_function("phi"), -1)


class TestAdmissibility:
    @pytest.mark.parametrize("name", ["psi-tilde", "psi-antisym"])
    def test_finite_and_converging(self, name):
        ests = [admissibility(get_function(name), t) for t in (1e-4, 1e-6, 1e-8)]
        for e in ests:
            assert not e.divergent and math.isfinite(e.value)
            assert e.value == pytest.approx(e.near_zero_part + e.mid_part + e.tail_part, abs=1e-15)
        for a, b in zip(ests, ests[1:]):
            assert abs(a.value - b.value) <= a.error_estimate + b.error_estimate

    def test_independent_value(self):
        # direct scipy integration of the closed-form transform
        fn = get_function("psi-antisym")
        f = lambda w: abs(fourier_transform(fn, w)) ** 2 / w
        edges = [1e-12, 1.0] + list(np.arange(10.0, 10001.0, 10.0))
        ref = math.fsum(sp_integrate.quad(f, a, b, limit=200, epsabs=1e-13)[0] for a, b in zip(edges, edges[1:]))
        ref += 16 / (2 * 1e4 ** 2) / 2
        est = admissibility(fn, 1e-8)
        assert abs(est.value - ref) <= 1e-6

    def test_psi_divergent(self):
        est = admissibility(get_function("psi"), 1e-6)
        assert est.divergent and math.isinf(est.value)
        assert abs(est.mean) == pytest.approx(K0 / 6, abs=1e-12)

    def test_slope_is_first_moment(self):
        est = admissibility(get_function("psi-antisym"), 1e-6)
        assert est.slope_at_zero == pytest.approx(0.75 - LN2, abs=1e-12)
        w = 1e-4
        num = abs(fourier_transform(get_function("psi-antisym"), w)) / w
        assert num == pytest.approx(est.slope_at_zero, abs=1e-5)

    def test_tolerance_validated(self):
        with pytest.raises(ValueError):
            admissibility(get_function("psi-tilde"), 0.0)


class TestOverlap:
    def test_single_term(self):
        assert overlap_gamma(0.0, 0) >= 1.0

    def test_periodic(self):
        w = np.linspace(0, 2 * math.pi, 100, endpoint=False)
        assert np.max(np.abs(overlap_gamma(w) - overlap_gamma(w + 2 * math.pi))) <= 1e-12
        assert abs(overlap_gamma(0.7) - overlap_gamma(0.7 + 2 * math.pi)) <= 1e-12

    def test_truncation_convergence(self):
        w = np.linspace(0, 2 * math.pi, 100, endpoint=False)
        assert np.max(np.abs(overlap_gamma(w, 64) - overlap_gamma(w, 128))) <= overlap_tail_bound(64)

    def test_poisson_closed_form(self):
        # Gamma(w) = sum_m <phi, phi_m> e^{-i m w} with only m in {-1, 0, 1} nonzero
        w = np.linspace(0, 2 * math.pi, 64, endpoint=False)
        exact = phi_inner(0) + 2 * phi_inner(1) * np.cos(w)
        assert np.max(np.abs(overlap_gamma(w, 64) - exact)) <= overlap_tail_bound(64)

    def test_profile(self):
        p = overlap_profile(256)
        assert p.values.min() > 0 and np.isfinite(p.values.max())
        assert p.grid[0] == 0 and p.grid[-1] < 2 * math.pi
        assert p.tail_bound == overlap_tail_bound(64)


class TestOrthonormal:
    @pytest.mark.parametrize("l", [0, 1, -1, 2, -2, 3, -3])
    def test_gram(self, l):
        assert abs(gram_phi_orthonormal(l) - (l == 0)) <= 1e-6

    def test_resummation(self):
        # both truncations err by at most a tail bound, divided by inf Gamma > 1/2
        for xi in (0.0, 0.4, 2.0, -3.0):
            assert abs(periodized_energy(xi) - 1) <= 2 * overlap_tail_bound(64) / 0.5

    def test_at_zero(self):
        assert orthonormalized_phi_hat(0.0) == pytest.approx(1 / math.sqrt(overlap_gamma(0.0)), abs=1e-15)

    def test_not_periodic(self):
        assert abs(orthonormalized_phi_hat(1.0) - orthonormalized_phi_hat(1.0 + 2 * math.pi)) > 1e-3


class TestRiesz:
    def test_norm(self):
        assert phi_inner(0) == pytest.approx(2 * (3 - 4 * LN2) / (4 * LN2 - 2) ** 2, abs=1e-13)

    def test_inner_products_vanish_beyond_neighbours(self):
        assert phi_inner(2) == 0.0 and phi_inner(-3) == 0.0
        assert phi_inner(1) == phi_inner(-1)

    def test_bounds(self):
        r = riesz_bounds(1000)
        assert 0 < r.a_gamma <= r.b_gamma < math.inf
        assert r.a_gamma - 1e-6 <= r.empirical_min_ratio
        assert r.empirical_max_ratio <= r.b_gamma + 1e-6
        assert r.trials == 1000

    def test_single_term_vector(self):
        assert synthesis_norm_squared([0, 1, 0]) == pytest.approx(phi_inner(0), abs=1e-15)

    def test_adjacent_pair_beats_printed_lower_bound(self):
        ratio = synthesis_norm_squared([1, -1]) / 2
        assert ratio == pytest.approx(phi_inner(0) - phi_inner(1), abs=1e-14)
        assert ratio < riesz_bounds(100).a_paper

    def test_gram_matches_quadrature(self):
        c = [0.3, -1.2, 0.8, 2.0]
        assert synthesis_norm_squared(c) == pytest.approx(synthesis_norm_squared(c, "quadrature"), abs=1e-10)

    @given(st.lists(st.floats(-5, 5), min_size=1, max_size=8).filter(lambda c: sum(x * x for x in c) > 1e-6))
    @settings(max_examples=50)
    def test_sandwich_property(self, c):
        r = riesz_bounds(100)
        ratio = synthesis_norm_squared(c) / sum(x * x for x in c)
        assert r.a_gamma - 1e-6 <= ratio <= r.b_gamma + 1e-6

    def test_minimum_trials(self):
        with pytest.raises(ValueError):
            riesz_bounds(10)
