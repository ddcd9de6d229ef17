import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shearflow.exact import (
    ExactShearFlow,
    heat_evolve,
    heat_limit_error,
    phase_rotation,
    shear_flow_eval,
    transport_evolve,
)
from shearflow.initial_data import sign_samples, square_wave_shear
from shearflow.spectral import Grid1D, Grid2D, l2_norm, to_physical, to_spectral


def random_field(grid, seed):
    return to_spectral(np.random.default_rng(seed).standard_normal(grid.shape), grid)


class TestShearFlow:
    def test_sine_sheared_by_sign(self):
        g = Grid2D(32, 32)
        x1, x2 = g.points
        v3 = to_spectral(np.sin(2 * np.pi * x1), g)
        v1 = sign_samples(g.axes[1].points)
        for t in (0.13, 0.5, 2.7):
            got = to_physical(shear_flow_eval(v1, v3, t))
            want = np.sin(2 * np.pi * (x1 - t * v1[None, :]))
            assert np.max(np.abs(got - want)) < 1e-12

    def test_identity_at_zero_time(self):
        g = Grid2D(16, 8)
        v3 = random_field(g, 0)
        out = shear_flow_eval(np.random.default_rng(1).standard_normal(8), v3, 0.0)
        np.testing.assert_allclose(out.coeffs, v3.coeffs, atol=1e-16)

    def test_x2_only_data_is_static(self):
        g = Grid2D(16, 16)
        _, x2 = g.points
        v3 = to_spectral(np.cos(2 * np.pi * x2) + 0.3 * np.sin(6 * np.pi * x2), g)
        for t in (0.1, 1.0, 10.0):
            out = shear_flow_eval(sign_samples(g.axes[1].points), v3, t)
            np.testing.assert_allclose(out.coeffs, v3.coeffs, atol=1e-16)

    def test_exact_flow_object(self):
        g1, g2 = Grid1D(64), Grid2D(16, 16)
        v1 = square_wave_shear(g1)
        v3 = to_spectral(np.sin(2 * np.pi * g2.points[0]), g2)
        flow = ExactShearFlow(v1, v3)
        assert flow.pressure == 0.0
        u1, u2, u3 = flow.velocity(0.3)
        assert not np.any(u2)
        np.testing.assert_allclose(u1[0], to_physical(v1)[::4])
        assert l2_norm(flow.u3(0.3)) == pytest.approx(l2_norm(v3), rel=1e-14)
        with pytest.raises(ValueError):
            ExactShearFlow(square_wave_shear(Grid1D(24)), v3)


class TestTransport:
    def test_semigroup_is_exact(self):
        g = Grid2D(32, 16)
        w0 = random_field(g, 3)
        v = np.random.default_rng(4).standard_normal(16)
        a = transport_evolve(w0, v, 0.9)
        b = transport_evolve(transport_evolve(w0, v, 0.4), v, 0.5)
        assert np.max(np.abs(a.coeffs - b.coeffs)) < 1e-13

    def test_constant_velocity_is_rigid_translation(self):
        g = Grid2D(16, 16)
        w0 = random_field(g, 5)
        c, t = 0.3, 1.1
        out = transport_evolve(w0, np.full(16, c), t)
        m = g.axes[0].wavenumbers.astype(float)
        m[8] = 0.0
        want = w0.coeffs * np.exp(-2j * np.pi * m * c * t)[:, None]
        np.testing.assert_allclose(out.coeffs, want, atol=1e-15)

    def test_phase_factors_unit_modulus(self):
        g = Grid2D(16, 8)
        p = phase_rotation(g, np.linspace(-1, 1, 8), 0.77)
        np.testing.assert_allclose(np.abs(p), 1.0, atol=1e-15)

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**31), t=st.floats(0, 50), n1=st.sampled_from([8, 16, 64]), n2=st.sampled_from([8, 32]))
    def test_l2_conserved(self, seed, t, n1, n2):
        g = Grid2D(n1, n2)
        w0 = random_field(g, seed)
        v = np.random.default_rng(seed + 1).uniform(-2, 2, n2)
        assert l2_norm(transport_evolve(w0, v, t)) == pytest.approx(l2_norm(w0), abs=1e-13)

    def test_real_fields_stay_real(self):
        g = Grid2D(16, 16)
        w = transport_evolve(random_field(g, 6), np.random.default_rng(7).standard_normal(16), 0.8)
        raw = np.fft.ifftn(w.coeffs * g.shift) * w.coeffs.size
        assert np.max(np.abs(raw.imag)) < 1e-14


class TestHeat:
    def test_zero_viscosity_is_identity(self):
        u = random_field(Grid1D(32), 0)
        np.testing.assert_array_equal(heat_evolve(u, 0.0, 3.0).coeffs, u.coeffs)

    def test_sine_decay_factor(self):
        g = Grid1D(32)
        u = to_spectral(np.sin(2 * np.pi * g.points), g)
        factor = math.exp(-4 * math.pi**2 * 0.01 * 1.0)
        assert factor == pytest.approx(0.67383, abs=5e-6)
        out = to_physical(heat_evolve(u, 0.01, 1.0))
        np.testing.assert_allclose(out, factor * np.sin(2 * np.pi * g.points), atol=1e-15)

    def test_constant_unchanged(self):
        g = Grid1D(16)
        u = to_spectral(np.full(16, 0.7), g)
        np.testing.assert_allclose(heat_evolve(u, 0.5, 2.0).coeffs, u.coeffs, atol=1e-16)

    def test_rejects_negative(self):
        u = random_field(Grid1D(8), 0)
        with pytest.raises(ValueError):
            heat_evolve(u, -1e-3, 1.0)
        with pytest.raises(ValueError):
            heat_evolve(u, 1e-3, -1.0)

    def test_semigroup_and_dissipation(self):
        u = random_field(Grid1D(64), 8)
        a = heat_evolve(u, 0.02, 0.5)
        b = heat_evolve(heat_evolve(u, 0.02, 0.2), 0.02, 0.3)
        assert np.max(np.abs(a.coeffs - b.coeffs)) < 1e-15
        norms = [l2_norm(heat_evolve(u, 0.02, t)) for t in np.linspace(0, 1, 11)]
        assert all(y < x for x, y in zip(norms, norms[1:]))


def mode_sum_oracle(nu, t, kmax):
    """||e^{t nu d^2} sign - sign|| from the sine series, summed term by term."""
    total = 0.0
    for k in range(1, kmax + 1, 2):
        b = 4.0 / (math.pi * k)
        total += 0.5 * b * b * (1.0 - math.exp(-nu * (2 * math.pi * k) ** 2 * t)) ** 2
    return math.sqrt(total)


class TestHeatLimitError:
    def test_trivial_cases(self):
        g = Grid1D(96)
        assert heat_limit_error(0.0, 1.0, g) == 0.0
        assert heat_limit_error(0.1, 0.0, g) == 0.0

    @pytest.mark.parametrize("nu", [1e-1, 1e-3, 1e-5])
    def test_matches_field_evolution(self, nu):
        g = Grid1D(1024)
        v1 = square_wave_shear(g)
        direct = l2_norm(heat_evolve(v1, nu, 1.0) - v1)
        assert heat_limit_error(nu, 1.0, g) == pytest.approx(direct, rel=1e-12)

    def test_quarter_rate(self):
        g = Grid1D(30000)  # cutoff 10000 modes
        nus = np.array([1e-1, 1e-2, 1e-3, 1e-4, 1e-5])
        errs = np.array([heat_limit_error(nu, 1.0, g) for nu in nus])
        oracle = np.array([mode_sum_oracle(nu, 1.0, 10000) for nu in nus])
        np.testing.assert_allclose(errs, oracle, rtol=1e-12)
        slope = np.polyfit(np.log(nus), np.log(oracle), 1)[0]
        assert slope == pytest.approx(0.25, abs=0.03)
        assert np.all(np.diff(errs) < 0)
