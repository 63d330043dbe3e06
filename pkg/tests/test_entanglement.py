import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import gaussent as ge
from helpers import (
    pt_symplectic_eigs_oracle,
    random_physical_cm,
    rotation,
    simon_oracle_exact,
    squeezer,
)

# rounded random symmetric matrix whose PT symplectic spectrum is a complex
# quartet (seralian^2 - 4 det < 0); found by search, frozen here
COMPLEX_PAIR_EXAMPLE = np.array(
    [
        [0.329, 0.187, 1.294, 0.329],
        [0.187, -2.204, -0.283, 0.809],
        [1.294, -0.283, 1.822, -0.636],
        [0.329, 0.809, -0.636, 2.002],
    ]
)


def two_mode_squeezed(r: float) -> ge.CovarianceMatrix:
    ch = 0.5 * math.cosh(2 * r)
    sh = 0.5 * math.sinh(2 * r)
    return ge.covariance_from_entries(
        {
            "sigma_xx": ch,
            "sigma_pxpx": ch,
            "sigma_yy": ch,
            "sigma_pypy": ch,
            "sigma_xy": sh,
            "sigma_pxpy": -sh,
        }
    )


def thermal_product(c: float) -> ge.CovarianceMatrix:
    return ge.CovarianceMatrix(0.5 * c * np.eye(4))


class TestSimonFunction:
    def test_thermal_product(self):
        # det A = det B = 1 at C = 2: S = 1 + 1/16 - 1/2
        assert ge.simon_function(thermal_product(2.0)) == pytest.approx(0.5625, abs=1e-15)

    def test_squeezed_preset_on_boundary(self):
        assert ge.simon_function(ge.presets.initial_state("fig1")) == pytest.approx(
            0.0, abs=1e-16
        )

    def test_entangled_squeezed_preset(self):
        sigma = ge.presets.initial_state("fig3")
        value = ge.simon_function(sigma)
        reference = -133.0 / 576.0
        assert value == pytest.approx(reference, rel=1e-15)
        # term-by-term evaluation in exact rational arithmetic on the same floats
        oracle = simon_oracle_exact(sigma.entries)
        assert value == pytest.approx(float(oracle), rel=1e-15)
        assert abs(oracle - Fraction(-133, 576)) < Fraction(1, 10**12)

    def test_vacuum_boundary(self):
        assert ge.simon_function(thermal_product(1.0)) == pytest.approx(0.0, abs=1e-16)


class TestPtSpectrum:
    def test_vacuum(self):
        spectrum = ge.symplectic_spectrum_pt(thermal_product(1.0))
        assert not spectrum.complex_pair
        assert spectrum.delta_tilde == pytest.approx(0.5, abs=1e-15)
        assert spectrum.nu_minus_sq == pytest.approx(0.25, abs=1e-12)
        assert spectrum.nu_plus_sq == pytest.approx(0.25, abs=1e-12)

    def test_two_mode_squeezed(self):
        r = 0.5
        spectrum = ge.symplectic_spectrum_pt(two_mode_squeezed(r))
        assert math.sqrt(spectrum.nu_minus_sq) == pytest.approx(
            0.5 * math.exp(-2 * r), rel=1e-12
        )
        # independent eigenvalue-based evaluation of the PT spectrum
        nus = pt_symplectic_eigs_oracle(two_mode_squeezed(r).entries)
        assert math.sqrt(spectrum.nu_minus_sq) == pytest.approx(nus[0], rel=1e-10)
        assert math.sqrt(spectrum.nu_plus_sq) == pytest.approx(nus[1], rel=1e-10)

    def test_entangled_mixed_preset_degenerate(self):
        sigma = ge.presets.initial_state("fig4")
        assert np.linalg.det(sigma.entries) == pytest.approx(0.0, abs=1e-15)
        spectrum = ge.symplectic_spectrum_pt(sigma)
        assert spectrum.delta_tilde == pytest.approx(1.5, abs=1e-15)
        assert spectrum.nu_minus_sq == pytest.approx(0.0, abs=1e-15)

    def test_complex_pair_flagged(self):
        spectrum = ge.symplectic_spectrum_pt(ge.CovarianceMatrix(COMPLEX_PAIR_EXAMPLE))
        assert spectrum.complex_pair
        assert math.isnan(spectrum.nu_minus_sq)
        assert math.isnan(spectrum.nu_plus_sq)


class TestLogNegativity:
    def test_vacuum_separable(self):
        assert ge.log_negativity(thermal_product(1.0)) == 0.0

    def test_two_mode_squeezed_value(self):
        r = 0.5
        value = ge.log_negativity(two_mode_squeezed(r))
        assert value == pytest.approx(2 * r / math.log(2), abs=1e-12)

    def test_degenerate_returns_none(self):
        assert ge.log_negativity(ge.presets.initial_state("fig4")) is None

    def test_complex_pair_returns_none(self):
        assert ge.log_negativity(ge.CovarianceMatrix(COMPLEX_PAIR_EXAMPLE)) is None


class TestMetrics:
    def test_vacuum(self):
        met = ge.metrics(thermal_product(1.0))
        assert met.simon_s == pytest.approx(0.0, abs=1e-16)
        assert met.log_negativity == 0.0
        assert met.separable
        assert met.boundary

    def test_two_mode_squeezed(self):
        met = ge.metrics(two_mode_squeezed(0.5))
        assert met.simon_s < 0
        assert met.log_negativity == pytest.approx(1.4426950408889634, abs=1e-12)
        assert not met.separable
        assert not met.boundary

    def test_thermal_product(self):
        met = ge.metrics(thermal_product(2.0))
        assert met.simon_s == pytest.approx(0.5625, abs=1e-15)
        assert met.log_negativity == 0.0
        assert met.separable

    def test_degenerate_carries_marker(self):
        met = ge.metrics(ge.presets.initial_state("fig4"))
        assert met.log_negativity is None
        assert met.nu_tilde_minus_sq == pytest.approx(0.0, abs=1e-15)


def _thermal_grid():
    for lam in (0.05, 0.1, 0.2):
        for c in (1.0, 1.1, 1.5, 2.0):
            for d_xpy in (0.0, 0.02, 0.049):
                for d_xy in (0.0, 0.005):
                    yield ge.thermal_environment(lam, c, d_xy, d_xpy)


class TestAsymptoticSimon:
    def test_zero_cross_zero_temperature(self):
        assert ge.asymptotic_simon(ge.thermal_environment(0.1, 1.0)) == 0.0

    def test_entangled_asymptote(self):
        env = ge.thermal_environment(0.1, 1.0, 0.0, 0.049)
        d = 0.049**2 / 1.01
        assert ge.asymptotic_simon(env) == pytest.approx(d * d - d, rel=1e-14)
        assert ge.asymptotic_simon(env) == pytest.approx(-2.37158e-3, rel=1e-4)

    def test_separable_asymptote(self):
        env = ge.thermal_environment(0.1, 1.2, 0.0, 0.049)
        d = 0.049**2 / 1.01
        expected = (0.11 + d) ** 2 - d * 1.44
        assert ge.asymptotic_simon(env) == pytest.approx(expected, rel=1e-12)
        assert expected == pytest.approx(9.206e-3, rel=1e-3)

    def test_matches_lyapunov_route_on_grid(self):
        for env in _thermal_grid():
            direct = ge.simon_function(ge.steady_covariance(env))
            assert ge.asymptotic_simon(env) == pytest.approx(direct, abs=1e-10), env

    def test_matches_lyapunov_route_off_unit_mass(self):
        env = ge.thermal_environment(0.08, 1.3, 0.002, 0.03, m=0.5, omega=2.0)
        direct = ge.simon_function(ge.steady_covariance(env))
        assert ge.asymptotic_simon(env) == pytest.approx(direct, abs=1e-12)

    def test_rejects_non_thermal(self):
        env = ge.EnvironmentSpec(
            m=1.0, omega=1.0, lam=0.1, thermal_c=1.0,
            d_xx=0.06, d_xpx=0.0, d_pxpx=0.05, d_xy=0.0, d_xpy=0.0, d_pxpy=0.0,
        )
        with pytest.raises(ValueError, match="thermal"):
            ge.asymptotic_simon(env)


class TestAsymptoticThreshold:
    def test_benchmark_threshold(self):
        env = ge.thermal_environment(0.1, 1.0, 0.0, 0.049)
        result = ge.asymptotic_threshold(env)
        assert result.c_threshold == pytest.approx(1 + 0.098 / math.sqrt(1.01), abs=1e-15)
        assert result.constraint_ok  # lam/2 * C = 0.05 >= 0.049

    def test_no_cross_coefficient(self):
        result = ge.asymptotic_threshold(ge.thermal_environment(0.1, 1.5))
        assert result.c_threshold == 1.0
        assert result.c_lower_rule == -1.0

    def test_constraint_flag(self):
        env = ge.thermal_environment(0.1, 1.0, 0.0, 0.051)
        assert not ge.asymptotic_threshold(env).constraint_ok

    def test_rejects_position_cross(self):
        env = ge.thermal_environment(0.1, 1.0, 0.01, 0.0)
        with pytest.raises(ValueError, match="d_xy"):
            ge.asymptotic_threshold(env)

    @pytest.mark.parametrize("lam,d_xpy", [(0.05, 0.02), (0.1, 0.049), (0.2, 0.03)])
    def test_bisection_root_matches(self, lam, d_xpy):
        def s_of_c(c):
            return ge.asymptotic_simon(ge.thermal_environment(lam, c, 0.0, d_xpy))

        lo, hi = 1.0 + 1e-15, 3.0
        assert s_of_c(lo) < 0 < s_of_c(hi)
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if s_of_c(mid) < 0:
                lo = mid
            else:
                hi = mid
        root = 0.5 * (lo + hi)
        expected = 1.0 + 2.0 * d_xpy / math.hypot(lam, 1.0)
        assert root == pytest.approx(expected, abs=1e-10)


class TestAsymptoticLogNegativity:
    def test_benchmark_value(self):
        env = ge.thermal_environment(0.1, 1.0, 0.0, 0.049)
        expected = -math.log2(1.0 - 0.098 / math.sqrt(1.01))
        value = ge.asymptotic_log_negativity(env)
        assert value == pytest.approx(expected, abs=1e-15)
        assert value == pytest.approx(0.14802297474805887, abs=1e-12)

    def test_zero_cross_reports_zero_degree(self):
        # raw closed form is -log2(C) <= 0; the reported degree clamps at 0
        assert ge.asymptotic_log_negativity(ge.thermal_environment(0.1, 2.0)) == 0.0

    def test_zero_at_threshold(self):
        threshold = ge.asymptotic_threshold(
            ge.thermal_environment(0.1, 1.0, 0.0, 0.049)
        ).c_threshold
        env = ge.thermal_environment(0.1, threshold, 0.0, 0.049)
        assert abs(ge.asymptotic_log_negativity(env)) <= 1e-10

    def test_degenerate_argument_returns_none(self):
        d_star = 0.5 * math.sqrt(1.01)  # makes |C - 2 d/sqrt(...)| vanish at C = 1
        env = ge.thermal_environment(0.1, 1.0, 0.0, d_star)
        assert ge.asymptotic_log_negativity(env) is None

    @pytest.mark.parametrize("c", [1.0, 1.05, 1.2, 1.6])
    def test_matches_steady_state_route(self, c):
        env = ge.thermal_environment(0.1, c, 0.0, 0.049)
        direct = ge.log_negativity(ge.steady_covariance(env))
        assert ge.asymptotic_log_negativity(env) == pytest.approx(direct, abs=1e-10)

    def test_initial_state_independence(self):
        env = ge.thermal_environment(0.1, 1.0, 0.0, 0.049)
        expected = ge.asymptotic_log_negativity(env)
        values = [
            ge.log_negativity(ge.evolve(ge.presets.initial_state(name), env, 300.0 / 0.1))
            for name in ("fig1", "fig2", "vacuum")
        ]
        for value in values:
            assert value == pytest.approx(expected, abs=1e-6)
        assert max(values) - min(values) <= 1e-6


def test_asymptotic_entanglement_bundle():
    env = ge.thermal_environment(0.1, 1.0, 0.0, 0.049)
    bundle = ge.asymptotic_entanglement(env)
    assert bundle.entangled_at_infinity
    assert bundle.s_infinity == pytest.approx(ge.asymptotic_simon(env), abs=0)
    assert bundle.l_infinity == pytest.approx(0.14802297474805887, abs=1e-12)
    assert bundle.c_threshold == pytest.approx(1 + 0.098 / math.sqrt(1.01), abs=1e-15)


class TestInvariantProperties:
    @given(data=st.lists(st.floats(-2.0, 2.0), min_size=10, max_size=10))
    @settings(max_examples=120, deadline=None)
    def test_f_equals_pt_eigenvalue(self, data):
        sigma = ge.covariance_from_entries(dict(zip(ge.ENTRY_NAMES, data)))
        spectrum = ge.symplectic_spectrum_pt(sigma)
        assume(not spectrum.complex_pair)
        from gaussent.entanglement import _pt_f

        f = _pt_f(sigma)
        assert f is not None
        assert abs(f - spectrum.nu_minus_sq) <= 1e-12 * max(1.0, abs(f))

    @given(seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=100, deadline=None)
    def test_ppt_sign_agreement_on_physical_states(self, seed):
        rng = np.random.default_rng(seed)
        sigma = ge.CovarianceMatrix(random_physical_cm(rng))
        met = ge.metrics(sigma)
        assert met.log_negativity is not None
        if abs(met.simon_s) > 1e-12:
            assert (met.simon_s < 0) == (met.log_negativity > 0)

    @given(
        seed=st.integers(0, 2**32 - 1),
        thetas=st.tuples(st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi)),
        squeezes=st.tuples(st.floats(-1.0, 1.0), st.floats(-1.0, 1.0)),
    )
    @settings(max_examples=100, deadline=None)
    def test_local_symplectic_invariance(self, seed, thetas, squeezes):
        rng = np.random.default_rng(seed)
        sigma = random_physical_cm(rng)
        local = np.zeros((4, 4))
        local[:2, :2] = rotation(thetas[0]) @ squeezer(squeezes[0])
        local[2:, 2:] = rotation(thetas[1]) @ squeezer(squeezes[1])
        transformed = local @ sigma @ local.T
        transformed = 0.5 * (transformed + transformed.T)
        s_before = ge.simon_function(ge.CovarianceMatrix(sigma))
        s_after = ge.simon_function(ge.CovarianceMatrix(transformed))
        assert s_after == pytest.approx(s_before, abs=1e-10 * max(1.0, abs(s_before)))
        l_before = ge.log_negativity(ge.CovarianceMatrix(sigma))
        l_after = ge.log_negativity(ge.CovarianceMatrix(transformed))
        assert l_after == pytest.approx(l_before, abs=1e-10)
