"""Solver for the two-and-half Navier-Stokes system with shear data.

    d_t u1 - nu d_x2^2 u1 = 0
    d_t u3 + u1 d_x1 u3 - nu (d_x1^2 + d_x2^2) u3 = 0

u1 is never time-stepped: it is the exact heat evolution of v1. u3 is
advanced by Strang splitting of two exactly integrated pieces, so the only
time discretisation error is the O(dt^2) splitting error.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .exact import heat_evolve, heat_multiplier, phase_rotation, samples_on_x2
from .initial_data import VELOCITY_MODES, ShearDatum, sample_v3, v1_field
from .spectral import (
    Grid1D,
    Grid2D,
    SpectralField,
    dealias,
    from_mixed,
    l2_norm,
    to_mixed,
)

log = logging.getLogger(__name__)

ENERGY_SLACK = 1e-12


class SolverIntegrityError(RuntimeError):
    """Raised when the discrete energy ledger increases beyond round-off."""

    def __init__(self, nu: float, index: int, increase: float):
        super().__init__(f"energy increased by {increase:.3e} at snapshot {index} (nu={nu:g})")
        self.nu = nu
        self.index = index
        self.increase = increase


def default_dt(n1: int) -> float:
    return min(1e-3, 1.0 / (4 * n1))


@dataclass(frozen=True)
class SolverConfig:
    """Time stepping settings; ``dt=None`` selects ``default_dt(n1)``."""

    T: float = 0.5
    dt: float | None = None
    snapshot_stride: int = 10
    velocity_mode: str = "pointwise_sign"
    dealias_advect: bool = False

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError(f"T must be positive, got {self.T}")
        if self.dt is not None:
            self.n_steps_for(self.dt)
        if int(self.snapshot_stride) != self.snapshot_stride or self.snapshot_stride < 1:
            raise ValueError(f"snapshot_stride must be a positive integer, got {self.snapshot_stride}")
        if self.velocity_mode not in VELOCITY_MODES:
            raise ValueError(f"unknown velocity_mode {self.velocity_mode!r}")

    def n_steps_for(self, dt: float) -> int:
        if not dt > 0:
            raise ValueError(f"dt must be positive, got {dt}")
        ratio = self.T / dt
        n = round(ratio)
        if n < 1 or abs(ratio - n) > 1e-9 * max(1.0, ratio):
            raise ValueError(f"T/dt = {ratio!r} is not an integer")
        return n

    def resolve_dt(self, grid: Grid2D) -> float:
        return self.dt if self.dt is not None else default_dt(grid.n1)


@dataclass(frozen=True, eq=False)
class ViscousTrajectory:
    nu: float
    dt: float
    times: np.ndarray
    u1: list
    u3: list
    energy: np.ndarray
    v1: SpectralField
    velocity_mode: str = "truncated_series"
    metadata: dict = field(default_factory=dict)

    @property
    def energy0(self) -> float:
        return float(self.energy[0])


@lru_cache(maxsize=64)
def _diffusion_factor(grid: Grid2D, nu: float, tau: float) -> np.ndarray:
    m = heat_multiplier(grid, nu, tau)
    m.flags.writeable = False
    return m


def advect_substep(u3: SpectralField, u1_samples, tau: float) -> SpectralField:
    """Exact advection over ``tau`` with the velocity frozen in time."""
    w = to_mixed(u3) * phase_rotation(u3.grid, u1_samples, tau)
    return from_mixed(w, u3.grid, u3.real)


def diffuse_substep(u3: SpectralField, nu: float, tau: float) -> SpectralField:
    return SpectralField(u3.grid, u3.coeffs * _diffusion_factor(u3.grid, float(nu), float(tau)), u3.real)


def velocity_at(v1: SpectralField, nu: float, t: float, grid: Grid2D) -> np.ndarray:
    return samples_on_x2(heat_evolve(v1, nu, t), grid)


def step(
    u3: SpectralField, v1: SpectralField, t: float, nu: float, dt: float, dealias_advect: bool = False
) -> SpectralField:
    """One Strang step from ``t`` to ``t + dt``.

    The velocity is frozen at the midpoint value u1(t + dt/2), computed
    exactly from the initial profile ``v1``.
    """
    u1_mid = velocity_at(v1, nu, t + 0.5 * dt, u3.grid)
    w = diffuse_substep(u3, nu, 0.5 * dt)
    w = advect_substep(w, u1_mid, dt)
    if dealias_advect:
        w = dealias(w)
    return diffuse_substep(w, nu, 0.5 * dt)


def energy(u1: SpectralField, u3: SpectralField) -> float:
    return 0.5 * (l2_norm(u1) ** 2 + l2_norm(u3) ** 2)


def integrate(v1: SpectralField, v3: SpectralField, nu: float, config: SolverConfig) -> ViscousTrajectory:
    """Evolve the pair (v1, v3) to ``config.T``.

    Snapshots are kept every ``snapshot_stride`` steps and at the final time.
    Raises SolverIntegrityError if the energy ledger ever rises by more
    than 1e-12.
    """
    if nu < 0:
        raise ValueError(f"viscosity must be nonnegative, got {nu}")
    grid = v3.grid
    samples_on_x2(v1, grid)  # validates the profile/2D grid pairing early
    dt = config.resolve_dt(grid)
    n_steps = config.n_steps_for(dt)
    stride = config.snapshot_stride

    times, u1s, u3s, energies = [], [], [], []

    def record(j, w):
        t = j * dt
        u1 = heat_evolve(v1, nu, t)
        e = energy(u1, w)
        if energies and e > energies[-1] + ENERGY_SLACK:
            raise SolverIntegrityError(nu, len(energies), e - energies[-1])
        times.append(t)
        u1s.append(u1)
        u3s.append(w)
        energies.append(e)

    u3 = v3
    record(0, u3)
    for j in range(n_steps):
        u3 = step(u3, v1, j * dt, nu, dt, config.dealias_advect)
        if (j + 1) % stride == 0 or j + 1 == n_steps:
            record(j + 1, u3)
    log.debug("nu=%g: %d steps, %d snapshots", nu, n_steps, len(times))
    return ViscousTrajectory(
        nu=float(nu),
        dt=dt,
        times=np.array(times),
        u1=u1s,
        u3=u3s,
        energy=np.array(energies),
        v1=v1,
        velocity_mode=config.velocity_mode,
    )


def solve(
    datum: ShearDatum, nu: float, config: SolverConfig, grids: tuple[Grid1D, Grid2D]
) -> ViscousTrajectory:
    g1, g2 = grids
    v1 = v1_field(datum, g1, config.velocity_mode)
    v3 = sample_v3(datum, g2)
    return integrate(v1, v3, nu, config)


def discrete_divergence(u1: SpectralField, u3: SpectralField) -> float:
    """Max |d_x1 u1 + d_x2 u2 + d_x3 u3| for the shear ansatz.

    u1 depends on x2 only, u2 = 0 and u3 has no x3 dependence, so only the
    x1 derivative of the lifted u1 can contribute.
    """
    g = u3.grid
    lifted = np.zeros(g.shape, dtype=complex)
    n = u1.grid.n
    k2 = g.axes[1].wavenumbers
    if n >= g.n2:
        lifted[0, :] = u1.coeffs[k2 % n]
    m = g.axis_wavenumbers(0)
    return float(np.max(np.abs(2j * math.pi * m * lifted)))
