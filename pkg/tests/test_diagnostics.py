import dataclasses

import numpy as np
import pytest

from shearflow.diagnostics import (
    ConvergenceReport,
    TestFunction,
    admissibility_check,
    euler_residual,
    fit_rate,
    strong_error,
    test_family,
    u1_error,
    weak_pairing,
    weak_pairings,
)
from shearflow.exact import ExactShearFlow, heat_limit_error
from shearflow.initial_data import ShearDatum, band_limited_1d, sample_v3, square_wave_shear
from shearflow.solver import SolverConfig, solve
from shearflow.spectral import Grid1D, Grid2D, to_spectral

SINE_V1 = ShearDatum(v1="band_limited", v1_params={"modes": {1: -0.5j}})


def run(datum, nu, n=32, T=0.5, dt=1e-2, stride=1, mode="pointwise_sign"):
    traj = solve(datum, nu, SolverConfig(T=T, dt=dt, snapshot_stride=stride, velocity_mode=mode), (Grid1D(n), Grid2D(n, n)))
    return traj, ExactShearFlow(traj.v1, traj.u3[0])


class TestTestFunctions:
    def test_family_size_and_band(self):
        fam = test_family(3, 2, T=0.5)
        assert len(fam) == 7 * 7 * 5
        assert {f.time_mode for f in fam} == {-2, -1, 0, 1, 2}
        with pytest.raises(ValueError):
            TestFunction(5, 0).spatial(Grid2D(8, 8))

    def test_profiles(self):
        phi = TestFunction(1, 1, 2, T=0.5, profile="polynomial")
        assert phi.theta(0.25) == pytest.approx(0.25)
        assert phi.dtheta(0.25) == pytest.approx(2.0)
        f = TestFunction(0, 0, 1, T=0.5)
        assert f.theta(0.25) == pytest.approx(-1.0)
        with pytest.raises(ValueError):
            TestFunction(0, 0, 0, profile="spline")


class TestStrongError:
    def test_inviscid_run_is_exact(self):
        traj, flow = run(ShearDatum(), 0.0)
        errs, sup = strong_error(traj, flow)
        assert sup < 1e-12 and len(errs) == len(traj.times)

    def test_zero_v3(self):
        traj, flow = run(ShearDatum(v3="zero"), 1e-2)
        errs, sup = strong_error(traj, flow)
        assert sup == 0.0

    def test_smaller_viscosity_smaller_error(self):
        sups = {}
        for nu in (1e-2, 1e-3):
            traj, flow = run(SINE_V1, nu, n=64, dt=1e-3, stride=50)
            fine, fine_flow = run(SINE_V1, nu, n=128, dt=5e-4, stride=100)
            sups[nu] = strong_error(traj, flow)[1]
            assert sups[nu] == pytest.approx(strong_error(fine, fine_flow)[1], abs=1e-4)
        assert sups[1e-3] < sups[1e-2]

    def test_grid_mismatch(self):
        traj, _ = run(ShearDatum(), 0.0, n=16, T=0.1)
        _, other = run(ShearDatum(), 0.0, n=32, T=0.1)
        with pytest.raises(ValueError):
            strong_error(traj, other)


class TestWeakPairing:
    def test_constant_test_function(self):
        traj, flow = run(ShearDatum(v3="random_band_limited", v3_params={"max_mode": 4, "seed": 1}), 1e-2)
        assert abs(weak_pairing(traj, flow, TestFunction(0, 0, 0, 0.5))) < 1e-12

    def test_vanishes_for_exact_run(self):
        traj, flow = run(ShearDatum(), 0.0)
        assert np.max(np.abs(weak_pairings(traj, flow, test_family(3, 2, 0.5)))) < 1e-12

    def test_decreases_along_ladder(self):
        phi = TestFunction(1, 1, 0, T=0.5)
        coarse, fine = [], []
        for nu in (1e-1, 1e-2, 1e-3):
            traj, flow = run(ShearDatum(), nu, n=64, dt=1e-3, stride=10)
            coarse.append(abs(weak_pairing(traj, flow, phi)))
            traj, flow = run(ShearDatum(), nu, n=64, dt=1e-3, stride=5)
            fine.append(abs(weak_pairing(traj, flow, phi)))
        np.testing.assert_allclose(coarse, fine, rtol=0.05)
        assert coarse[0] > coarse[1] > coarse[2]

    def test_vectorised_matches_single(self):
        traj, flow = run(ShearDatum(), 1e-2)
        fam = test_family(2, 1, 0.5)
        many = weak_pairings(traj, flow, fam)
        for phi, val in zip(fam[::7], many[::7]):
            assert val == pytest.approx(weak_pairing(traj, flow, phi), abs=1e-15)
        running = weak_pairings(traj, flow, fam, upto=True)
        np.testing.assert_allclose(running[-1], many, atol=1e-15)

    def test_conjugate_linear_and_additive(self):
        rng = np.random.default_rng(0)
        traj, flow = run(ShearDatum(), 1e-2)
        phi = TestFunction(1, -2, 1, 0.5)
        base = weak_pairing(traj, flow, phi)
        a = 0.7 - 0.4j
        scaled = dataclasses.replace(traj, u3=[u * a + flow.u3(t) * (1 - a) for u, t in zip(traj.u3, traj.times)])
        assert weak_pairing(scaled, flow, phi) == pytest.approx(a * base, abs=1e-12)
        extra = [to_spectral(rng.standard_normal((32, 32)), Grid2D(32, 32)) for _ in traj.times]
        shifted = dataclasses.replace(traj, u3=[u + e for u, e in zip(traj.u3, extra)])
        zero = dataclasses.replace(traj, u3=[flow.u3(t) + e for t, e in zip(traj.times, extra)])
        assert weak_pairing(shifted, flow, phi) == pytest.approx(base + weak_pairing(zero, flow, phi), abs=1e-12)

    def test_bounded_by_strong_error(self):
        traj, flow = run(ShearDatum(), 3e-2)
        _, sup = strong_error(traj, flow)
        vals = np.abs(weak_pairings(traj, flow, test_family(3, 2, 0.5)))
        # |theta| = 1 so ||phi(t)|| = 1 and the time integral is at most T * sup
        assert np.all(vals <= 0.5 * sup + 1e-14)


class TestAdmissibility:
    def test_heat_only(self):
        traj, _ = run(ShearDatum(v3="zero"), 1e-1)
        rep = admissibility_check(traj)
        assert rep.passed and rep.max_violation <= 0

    def test_energy_conserved_for_constant_shear(self):
        datum = ShearDatum(v1="band_limited", v1_params={"modes": {0: 1.0}})
        traj, _ = run(datum, 0.0)
        rep = admissibility_check(traj)
        assert rep.passed
        assert np.max(np.abs(traj.energy - traj.energy[0])) < 1e-13

    def test_detects_violation(self):
        traj, _ = run(ShearDatum(), 1e-2)
        bumped = traj.energy.copy()
        bumped[3] = bumped[0] + 1e-9
        rep = admissibility_check(dataclasses.replace(traj, energy=bumped))
        assert not rep.passed and rep.max_violation == pytest.approx(1e-9, rel=1e-6)


class TestEulerResidual:
    g1, g2 = Grid1D(32), Grid2D(32, 32)

    def flow(self, v1, v3="single_mode", params=None):
        params = params or {"m1": 1, "m2": 0, "amplitude": 1.0}
        return ExactShearFlow(v1, sample_v3(ShearDatum(v3=v3, v3_params=params), self.g2))

    def test_static_x2_data(self):
        f = self.flow(square_wave_shear(self.g1), "band_limited", {"modes": {(0, 1): 0.5, (0, 3): 0.2j}})
        assert euler_residual(f, test_family(3, 2, 0.5), 0.5) < 1e-14

    def test_band_limited_shear(self):
        f = self.flow(band_limited_1d({1: -0.5j}, self.g1))
        fam = test_family(3, 2, 0.5)
        r = euler_residual(f, fam, 0.5, n_quad=32)
        assert r <= 1e-8
        assert euler_residual(f, fam, 0.5, n_quad=64) <= 1e-8

    def test_trapezoid_converges_second_order(self):
        f = self.flow(band_limited_1d({1: -0.5j}, self.g1))
        fam = test_family(2, 1, 0.5)
        r1 = euler_residual(f, fam, 0.5, n_quad=201, quadrature="trapezoid")
        r2 = euler_residual(f, fam, 0.5, n_quad=401, quadrature="trapezoid")
        assert r2 < 1e-3
        assert r1 / r2 == pytest.approx(4.0, rel=0.05)

    def test_travelling_wave(self):
        f = self.flow(band_limited_1d({0: 0.6}, self.g1))
        assert euler_residual(f, test_family(3, 2, 0.5), 0.5) <= 1e-10

    def test_polynomial_profiles(self):
        f = self.flow(band_limited_1d({1: -0.5j, 2: 0.1}, self.g1))
        fam = [TestFunction(m1, m2, j, 0.5, "polynomial") for m1 in (-1, 1, 2) for m2 in (0, 1) for j in (0, 1, 2)]
        assert euler_residual(f, fam, 0.5) <= 1e-8


class TestFitRate:
    def test_square_root(self):
        nus = np.logspace(-5, -1, 5)
        slope, intercept, resid = fit_rate(nus, nus**0.5)
        assert slope == pytest.approx(0.5, abs=1e-12)
        assert resid < 1e-12

    def test_constant(self):
        slope, _, _ = fit_rate([1e-1, 1e-2, 1e-3], [0.3, 0.3, 0.3])
        assert slope == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("nus,errs", [([1e-1, 1e-2], [1, 2]), ([1e-1, 0.0, 1e-3], [1, 2, 3]), ([1, 2, 3], [1, -1, 2])])
    def test_rejects(self, nus, errs):
        with pytest.raises(ValueError):
            fit_rate(nus, errs)

    def test_heat_rate_from_solver(self):
        nus = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5]
        datum = ShearDatum(v3="zero")
        errs = []
        for nu in nus:
            traj = solve(datum, nu, SolverConfig(T=1.0, dt=0.5, velocity_mode="truncated_series"),
                         (Grid1D(30000), Grid2D(8, 8)))
            errs.append(u1_error(traj)[0][-1])
            assert errs[-1] == pytest.approx(heat_limit_error(nu, 1.0, Grid1D(30000)), rel=1e-10)
        assert fit_rate(nus, errs)[0] == pytest.approx(0.25, abs=0.03)


class TestReport:
    def test_ladder_must_decrease(self):
        with pytest.raises(ValueError):
            ConvergenceReport([1e-2, 1e-1])
        ConvergenceReport([1e-1, 1e-2, 0.0])
