"""Error measures, weak pairings, energy audits and rate fits."""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field

import numpy as np

from .exact import ExactShearFlow
from .solver import ViscousTrajectory
from .spectral import (
    TWO_PI,
    SpectralField,
    dealias,
    derivative,
    l2_inner,
    l2_norm,
    to_physical,
    to_spectral,
)

ADMISSIBILITY_SLACK = 1e-12


@dataclass(frozen=True)
class TestFunction:
    """phi(x, t) = theta(t) exp(2 pi i (m1 x1 + m2 x2)) on [0, T].

    ``profile`` is ``"fourier"`` (theta = exp(2 pi i j t / T)) or
    ``"polynomial"`` (theta = (t / T)^j), with ``j = time_mode``.
    """

    __test__ = False  # not a pytest class

    m1: int
    m2: int
    time_mode: int = 0
    T: float = 1.0
    profile: str = "fourier"

    def __post_init__(self):
        if self.profile not in ("fourier", "polynomial"):
            raise ValueError(f"unknown temporal profile {self.profile!r}")
        if self.profile == "polynomial" and self.time_mode < 0:
            raise ValueError("polynomial degree must be nonnegative")

    def theta(self, t):
        t = np.asarray(t, dtype=float)
        if self.profile == "fourier":
            return np.exp(1j * TWO_PI * self.time_mode * t / self.T)
        return (t / self.T) ** self.time_mode + 0j

    def dtheta(self, t):
        t = np.asarray(t, dtype=float)
        j = self.time_mode
        if self.profile == "fourier":
            return 1j * TWO_PI * j / self.T * self.theta(t)
        if j == 0:
            return np.zeros_like(t) + 0j
        return j / self.T * (t / self.T) ** (j - 1) + 0j

    def spatial(self, grid) -> SpectralField:
        n1, n2 = grid.shape
        if 3 * abs(self.m1) > n1 or 3 * abs(self.m2) > n2:
            raise ValueError(f"test mode ({self.m1}, {self.m2}) is beyond the resolved band of {grid}")
        c = np.zeros(grid.shape, dtype=complex)
        c[self.m1 % n1, self.m2 % n2] = 1.0
        return SpectralField(grid, c, real=False)

    def norm(self, times) -> float:
        """L2 norm over space-time, by trapezoid on ``times``."""
        return float(np.sqrt(np.trapezoid(np.abs(self.theta(times)) ** 2, times)))


def test_family(max_space_mode: int = 3, max_time_mode: int = 2, T: float = 1.0) -> list[TestFunction]:
    """All Fourier test functions with |m_i| <= max_space_mode, |j| <= max_time_mode."""
    ms = range(-max_space_mode, max_space_mode + 1)
    js = range(-max_time_mode, max_time_mode + 1)
    return [TestFunction(m1, m2, j, T) for m1, m2, j in itertools.product(ms, ms, js)]


test_family.__test__ = False


def _check_times(traj: ViscousTrajectory, exact: ExactShearFlow):
    if traj.u3[0].grid != exact.v3.grid:
        raise ValueError(f"grid mismatch: {traj.u3[0].grid} vs {exact.v3.grid}")


def differences(traj: ViscousTrajectory, exact: ExactShearFlow) -> list[SpectralField]:
    """u3^nu(t_j) - u3(t_j) at every snapshot."""
    _check_times(traj, exact)
    return [u - exact.u3(t) for u, t in zip(traj.u3, traj.times)]


def strong_error(traj: ViscousTrajectory, exact: ExactShearFlow, diffs=None) -> tuple[np.ndarray, float]:
    """Per-snapshot L2 distance to the shear flow and its maximum."""
    diffs = differences(traj, exact) if diffs is None else diffs
    errs = np.array([l2_norm(d) for d in diffs])
    return errs, float(errs.max())


def u1_error(traj: ViscousTrajectory, v1: SpectralField | None = None) -> tuple[np.ndarray, float]:
    """Per-snapshot ||u1^nu - v1||_L2(T) and the space-time L2 norm over [0, T]."""
    v1 = traj.v1 if v1 is None else v1
    errs = np.array([l2_norm(u - v1) for u in traj.u1])
    return errs, float(np.sqrt(np.trapezoid(errs**2, traj.times)))


def weak_pairing(traj: ViscousTrajectory, exact: ExactShearFlow, phi: TestFunction, diffs=None) -> complex:
    """int_0^T <u3^nu - u3, phi(t)> dt, trapezoid over the snapshots."""
    diffs = differences(traj, exact) if diffs is None else diffs
    spatial = phi.spatial(diffs[0].grid)
    theta = phi.theta(traj.times)
    vals = np.array([l2_inner(d, spatial) for d in diffs]) * np.conj(theta)
    return complex(np.trapezoid(vals, traj.times))


def _mode_index(grid, family: list[TestFunction]) -> tuple[np.ndarray, np.ndarray]:
    n1, n2 = grid.shape
    for phi in family:
        if 3 * abs(phi.m1) > n1 or 3 * abs(phi.m2) > n2:
            raise ValueError(f"test mode ({phi.m1}, {phi.m2}) is beyond the resolved band of {grid}")
    return np.array([phi.m1 % n1 for phi in family]), np.array([phi.m2 % n2 for phi in family])


def _mode_series(fields: list[SpectralField], family: list[TestFunction]) -> np.ndarray:
    """Coefficient of each family mode in each field, shape (n_fields, n_family)."""
    idx = _mode_index(fields[0].grid, family)
    return np.array([f.coeffs[idx] for f in fields])


def weak_pairings(
    traj: ViscousTrajectory, exact: ExactShearFlow, family: list[TestFunction], diffs=None, upto=False
) -> np.ndarray:
    """Pairings against every member of ``family``.

    With ``upto=True`` returns the running integrals over [0, t_j], shape
    (n_snapshots, n_family); otherwise the full-interval values.
    """
    diffs = differences(traj, exact) if diffs is None else diffs
    t = traj.times
    coeffs = _mode_series(diffs, family)
    theta = np.array([phi.theta(t) for phi in family]).T
    vals = coeffs * np.conj(theta)
    if not upto:
        return np.trapezoid(vals, t, axis=0)
    dt = np.diff(t)[:, None]
    steps = 0.5 * (vals[1:] + vals[:-1]) * dt
    return np.vstack([np.zeros((1, len(family)), dtype=complex), np.cumsum(steps, axis=0)])


@dataclass(frozen=True)
class AdmissibilityReport:
    passed: bool
    max_violation: float


def admissibility_check(traj: ViscousTrajectory, slack: float = ADMISSIBILITY_SLACK) -> AdmissibilityReport:
    """Weak energy inequality E(t_j) <= E(0) at every snapshot."""
    e = np.asarray(traj.energy)
    violation = float(np.max(e - e[0]))
    return AdmissibilityReport(passed=violation <= slack, max_violation=violation)


def euler_residual(
    exact: ExactShearFlow,
    family: list[TestFunction],
    T: float,
    n_quad: int = 64,
    quadrature: str = "gauss",
    dealias_product: bool = True,
) -> float:
    """Max over ``family`` of |<d_t u3 + v1 d_x1 u3, phi>| for the shear flow.

    The time derivative is moved onto the test function,

        [<u3, phi>]_0^T - int <u3, d_t phi> dt + int <v1 d_x1 u3, phi> dt,

    so the check never differentiates u3 in time. Time integrals use
    Gauss-Legendre (default) or the trapezoid rule on ``n_quad`` nodes. The
    product is formed from physical samples and dealiased.
    """
    if quadrature == "gauss":
        x, w = np.polynomial.legendre.leggauss(n_quad)
        times, weights = 0.5 * T * (x + 1.0), 0.5 * T * w
    elif quadrature == "trapezoid":
        times = np.linspace(0.0, T, n_quad)
        weights = np.full(n_quad, T / (n_quad - 1))
        weights[[0, -1]] *= 0.5
    else:
        raise ValueError(f"unknown quadrature {quadrature!r}")
    grid = exact.v3.grid
    v1 = exact.v1_samples[None, :]
    idx = _mode_index(grid, family)
    a, b = [], []
    for t in times:
        u3 = exact.u3(t)
        prod = to_spectral(v1 * to_physical(derivative(u3, axis=0)), grid)
        if dealias_product:
            prod = dealias(prod)
        a.append(u3.coeffs[idx])
        b.append(prod.coeffs[idx])
    a, b = np.array(a), np.array(b)
    theta = np.array([phi.theta(times) for phi in family]).T
    dtheta = np.array([phi.dtheta(times) for phi in family]).T
    a0, a1 = exact.u3(0.0).coeffs[idx], exact.u3(T).coeffs[idx]
    boundary = a1 * np.conj(theta_at(family, T)) - a0 * np.conj(theta_at(family, 0.0))
    res = boundary + weights @ (b * np.conj(theta) - a * np.conj(dtheta))
    return float(np.max(np.abs(res)))


def theta_at(family: list[TestFunction], t: float) -> np.ndarray:
    return np.array([phi.theta(t) for phi in family])


def fit_rate(nus, errors) -> tuple[float, float, float]:
    """Least-squares line through (log nu, log error).

    Returns (slope, intercept, rms residual of the fit in log space).
    """
    x = np.asarray(nus, dtype=float)
    y = np.asarray(errors, dtype=float)
    if x.shape != y.shape or x.size < 3:
        raise ValueError("need at least three (nu, error) pairs")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("viscosities and errors must be positive")
    lx, ly = np.log(x), np.log(y)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    return float(slope), float(intercept), float(np.sqrt(np.mean(resid**2)))


@dataclass
class LadderEntry:
    nu: float
    sup_l2_err_u3: float
    l2t_err_u1: float
    weak_pair_max_abs: float
    energy0: float
    energy_final: float
    admissible: bool
    max_violation: float


@dataclass
class ConvergenceReport:
    nu_ladder: list[float]
    entries: list[LadderEntry] = field(default_factory=list)
    rates: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        ladder = list(self.nu_ladder)
        if any(b >= a for a, b in zip(ladder, ladder[1:])):
            raise ValueError(f"viscosity ladder must be strictly decreasing: {ladder}")

    def fit_rates(self) -> dict:
        """Slopes of each error against nu over the positive-nu entries."""
        pos = [e for e in self.entries if e.nu > 0]
        rates = {}
        for key in ("sup_l2_err_u3", "l2t_err_u1", "weak_pair_max_abs"):
            errs = [getattr(e, key) for e in pos]
            if len(pos) >= 3 and all(x > 0 for x in errs):
                rates[key] = fit_rate([e.nu for e in pos], errs)[0]
        self.rates = rates
        return rates

    @property
    def all_admissible(self) -> bool:
        return all(e.admissible for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "nu_ladder": list(self.nu_ladder),
            "entries": [asdict(e) for e in self.entries],
            "rates": dict(self.rates),
            "metadata": dict(self.metadata),
        }


def assess(traj: ViscousTrajectory, exact: ExactShearFlow, family: list[TestFunction], v1_limit=None):
    """Everything a sweep records for one trajectory.

    Returns (LadderEntry, per-snapshot rows as dicts).
    """
    diffs = differences(traj, exact)
    errs3, sup3 = strong_error(traj, exact, diffs)
    errs1, l2t1 = u1_error(traj, v1_limit)
    running = np.abs(weak_pairings(traj, exact, family, diffs, upto=True)).max(axis=1)
    adm = admissibility_check(traj)
    entry = LadderEntry(
        nu=traj.nu,
        sup_l2_err_u3=sup3,
        l2t_err_u1=l2t1,
        weak_pair_max_abs=float(running[-1]),
        energy0=traj.energy0,
        energy_final=float(traj.energy[-1]),
        admissible=adm.passed,
        max_violation=adm.max_violation,
    )
    rows = [
        {
            "nu": traj.nu,
            "t": float(t),
            "l2_err_u3": float(e3),
            "l2_err_u1": float(e1),
            "weak_pair_max_abs": float(w),
            "energy": float(e),
            "energy0": traj.energy0,
        }
        for t, e3, e1, w, e in zip(traj.times, errs3, errs1, running, traj.energy)
    ]
    return entry, rows

