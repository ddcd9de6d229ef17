"""Closed-form reference evolutions.

* ``heat_evolve``: exact spectral heat semigroup, used for the shear profile.
* ``transport_evolve`` / ``shear_flow_eval``: exact solution of
  dw/dt + v1(x2) dw/dx1 = 0 by rotating each x1-mode's phase pointwise in x2.
* ``ExactShearFlow``: the Euler shear flow (v1(x2), 0, v3(x1 - t v1(x2), x2))
  with zero pressure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import (
    TWO_PI,
    Grid1D,
    Grid2D,
    SpectralField,
    from_mixed,
    to_mixed,
    to_physical,
    to_spectral,
)


def _sum_k2(grid) -> np.ndarray:
    if grid.ndim == 1:
        return grid.wavenumbers.astype(float) ** 2
    return grid.axis_wavenumbers(0) ** 2 + grid.axis_wavenumbers(1) ** 2.0


def heat_multiplier(grid, nu: float, t: float) -> np.ndarray:
    """exp(-nu (2 pi)^2 |k|^2 t) on ``grid``."""
    if nu < 0:
        raise ValueError(f"viscosity must be nonnegative, got {nu}")
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    return np.exp(-nu * TWO_PI**2 * _sum_k2(grid) * t)


def heat_evolve(u0: SpectralField, nu: float, t: float) -> SpectralField:
    return SpectralField(u0.grid, u0.coeffs * heat_multiplier(u0.grid, nu, t), u0.real)


def advection_wavenumbers(grid: Grid2D) -> np.ndarray:
    """x1-wavenumbers seen by the discrete d/dx1 (Nyquist mode does not move)."""
    m = grid.axes[0].wavenumbers.astype(float)
    m[grid.n1 // 2] = 0.0
    return m


def phase_rotation(grid: Grid2D, v1_samples, t: float) -> np.ndarray:
    """Unit-modulus factors exp(-2 pi i m v1(x2_j) t), shape (n1, n2)."""
    v = np.asarray(v1_samples, dtype=float)
    if v.shape != (grid.n2,):
        raise ValueError(f"v1 samples must have shape ({grid.n2},), got {v.shape}")
    m = advection_wavenumbers(grid)
    return np.exp(-1j * TWO_PI * t * np.multiply.outer(m, v))


def transport_evolve(w0: SpectralField, v1_samples, t: float) -> SpectralField:
    """Unique solution of the shear transport equation at time ``t``."""
    w = to_mixed(w0) * phase_rotation(w0.grid, v1_samples, t)
    return from_mixed(w, w0.grid, w0.real)


def shear_flow_eval(v1_samples, v3: SpectralField, t: float) -> SpectralField:
    """Third velocity component of the shear flow at time ``t``."""
    return transport_evolve(v3, v1_samples, t)


def samples_on_x2(u1: SpectralField, grid: Grid2D) -> np.ndarray:
    """Values of a 1D profile at the x2 points of ``grid``.

    The profile grid must be a multiple of ``grid.n2`` so that every x2
    collocation point is also a point of the profile grid.
    """
    n = u1.grid.n
    if n % grid.n2:
        raise ValueError(f"profile grid n={n} is not a multiple of n2={grid.n2}")
    return to_physical(u1)[:: n // grid.n2].real


def heat_limit_error(nu: float, t: float, grid: Grid1D) -> float:
    """L2 distance between the heat-evolved truncated square wave and itself.

    Sums b_k^2/2 (1 - exp(-nu (2 pi k)^2 t))^2 over odd k <= n/3 with sine
    coefficients b_k = 4/(pi k).
    """
    if nu < 0 or t < 0:
        raise ValueError("viscosity and time must be nonnegative")
    k = np.arange(1, grid.n // 3 + 1, 2, dtype=float)
    b2 = (4.0 / (np.pi * k)) ** 2
    gap = -np.expm1(-nu * (TWO_PI * k) ** 2 * t)
    return float(np.sqrt(np.sum(0.5 * b2 * gap**2)))


@dataclass(frozen=True, eq=False)
class ExactShearFlow:
    """Euler shear flow for data (v1(x2), 0, v3(x1, x2)); pressure is zero."""

    v1: SpectralField
    v3: SpectralField
    pressure: float = 0.0

    def __post_init__(self):
        # cache the profile at the x2 collocation points
        object.__setattr__(self, "v1_samples", samples_on_x2(self.v1, self.v3.grid))

    @classmethod
    def from_samples(cls, v1_samples, v3: SpectralField) -> ExactShearFlow:
        v1 = to_spectral(np.asarray(v1_samples, dtype=float), Grid1D(v3.grid.n2))
        return cls(v1, v3)

    def u3(self, t: float) -> SpectralField:
        return shear_flow_eval(self.v1_samples, self.v3, t)

    def velocity(self, t: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Physical samples of (u1, u2, u3) on the 2D grid."""
        u3 = to_physical(self.u3(t))
        u1 = np.broadcast_to(self.v1_samples[None, :], u3.shape)
        return u1, np.zeros_like(u3), u3
