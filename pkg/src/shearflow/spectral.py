"""Fourier grids and fields on the unit-period torus (-1/2, 1/2)^d.

A field is stored by its coefficients under

    f(x) = sum_k c_k exp(2*pi*i k.x),    k in {-n/2+1, ..., n/2},

held in numpy FFT order. Grid points are ``x_j = -1/2 + j/n``, so the shift
from the FFT origin contributes a factor ``(-1)^k`` to every coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

TWO_PI = 2.0 * np.pi


def _wavenumbers(n: int) -> np.ndarray:
    k = np.fft.fftfreq(n, 1.0 / n).astype(int)
    k[n // 2] = n // 2
    return k


@dataclass(frozen=True)
class Grid1D:
    """Equispaced grid of ``n`` points on (-1/2, 1/2)."""

    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 8 or self.n % 2:
            raise ValueError(f"grid size must be an even integer >= 8, got {self.n}")

    @property
    def shape(self) -> tuple[int]:
        return (self.n,)

    @property
    def ndim(self) -> int:
        return 1

    @cached_property
    def points(self) -> np.ndarray:
        return -0.5 + np.arange(self.n) / self.n

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        """Integer wavenumbers in FFT order; the Nyquist mode is +n/2."""
        return _wavenumbers(self.n)

    @cached_property
    def shift(self) -> np.ndarray:
        return np.where(self.wavenumbers % 2, -1.0, 1.0)

    def axis_wavenumbers(self, axis: int = 0) -> np.ndarray:
        if axis != 0:
            raise ValueError(f"axis {axis} out of range for a 1D grid")
        return self.wavenumbers


@dataclass(frozen=True)
class Grid2D:
    """Tensor grid; array axis 0 is x1 and axis 1 is x2."""

    n1: int
    n2: int

    def __post_init__(self):
        # validates both sizes
        Grid1D(self.n1), Grid1D(self.n2)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n1, self.n2)

    @property
    def ndim(self) -> int:
        return 2

    @cached_property
    def axes(self) -> tuple[Grid1D, Grid1D]:
        return Grid1D(self.n1), Grid1D(self.n2)

    @cached_property
    def points(self) -> tuple[np.ndarray, np.ndarray]:
        return tuple(np.meshgrid(self.axes[0].points, self.axes[1].points, indexing="ij"))

    @cached_property
    def shift(self) -> np.ndarray:
        return np.outer(self.axes[0].shift, self.axes[1].shift)

    def axis_wavenumbers(self, axis: int) -> np.ndarray:
        """Wavenumbers along ``axis`` shaped to broadcast against the grid."""
        if axis == 0:
            return self.axes[0].wavenumbers[:, None]
        if axis == 1:
            return self.axes[1].wavenumbers[None, :]
        raise ValueError(f"axis {axis} out of range for a 2D grid")


Grid = Grid1D | Grid2D


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Periodic scalar field held by its Fourier coefficients.

    ``real`` marks fields whose physical values are real; ``to_physical``
    then drops the (round-off) imaginary part.
    """

    grid: Grid
    coeffs: np.ndarray
    real: bool = True

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.shape != self.grid.shape:
            raise ValueError(f"coefficient shape {c.shape} does not match grid {self.grid.shape}")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def ndim(self) -> int:
        return self.grid.ndim

    def coeff(self, *k: int) -> complex:
        """Coefficient at integer wavenumber(s) ``k``; negative k wrap."""
        if len(k) != self.ndim:
            raise ValueError(f"expected {self.ndim} wavenumbers, got {len(k)}")
        idx = tuple(int(ki) % n for ki, n in zip(k, self.grid.shape))
        return complex(self.coeffs[idx])

    def _check(self, other: SpectralField):
        if other.grid != self.grid:
            raise ValueError(f"grid mismatch: {self.grid} vs {other.grid}")

    def __add__(self, other: SpectralField) -> SpectralField:
        self._check(other)
        return SpectralField(self.grid, self.coeffs + other.coeffs, self.real and other.real)

    def __sub__(self, other: SpectralField) -> SpectralField:
        self._check(other)
        return SpectralField(self.grid, self.coeffs - other.coeffs, self.real and other.real)

    def __mul__(self, scalar) -> SpectralField:
        return SpectralField(self.grid, self.coeffs * scalar, self.real and np.isrealobj(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> SpectralField:
        return SpectralField(self.grid, -self.coeffs, self.real)


SpectralField1D = SpectralField
SpectralField2D = SpectralField


def zeros(grid: Grid) -> SpectralField:
    return SpectralField(grid, np.zeros(grid.shape, dtype=complex))


def to_spectral(samples, grid: Grid) -> SpectralField:
    """Coefficients of the trigonometric interpolant through ``samples``."""
    a = np.asarray(samples)
    if a.shape != grid.shape:
        raise ValueError(f"samples of shape {a.shape} do not match grid {grid.shape}")
    c = np.fft.fftn(a) * (grid.shift / a.size)
    return SpectralField(grid, c, real=bool(np.isrealobj(a)))


def to_physical(field: SpectralField) -> np.ndarray:
    """Values of ``field`` at the grid points."""
    a = np.fft.ifftn(field.coeffs * field.grid.shift) * field.coeffs.size
    return a.real if field.real else a


def to_mixed(field: SpectralField) -> np.ndarray:
    """2D field as x1-coefficients sampled at the x2 grid points, w[m, j]."""
    g = field.grid
    if g.ndim != 2:
        raise ValueError("mixed representation needs a 2D field")
    return np.fft.ifft(field.coeffs * g.axes[1].shift[None, :], axis=1) * g.n2


def from_mixed(w: np.ndarray, grid: Grid2D, real: bool = True) -> SpectralField:
    c = np.fft.fft(w, axis=1) * (grid.axes[1].shift[None, :] / grid.n2)
    return SpectralField(grid, c, real)


def derivative(field: SpectralField, axis: int = 0, order: int = 1) -> SpectralField:
    """Spectral derivative of ``order`` 1 or 2 along ``axis``.

    The Nyquist coefficient is zeroed for odd orders.
    """
    if order not in (1, 2):
        raise ValueError(f"unsupported derivative order {order}")
    g = field.grid
    k = g.axis_wavenumbers(axis)
    mult = (1j * TWO_PI * k) ** order
    if order % 2:
        mult = np.where(np.abs(k) == g.shape[axis] // 2, 0.0, mult)
    return SpectralField(g, field.coeffs * mult, field.real)


def dealias_mask(grid: Grid) -> np.ndarray:
    """Boolean mask keeping |k| <= n/3 along every axis."""
    mask = np.ones(grid.shape, dtype=bool)
    for axis, n in enumerate(grid.shape):
        mask &= 3 * np.abs(grid.axis_wavenumbers(axis)) <= n
    return mask


def dealias(field: SpectralField) -> SpectralField:
    return SpectralField(field.grid, np.where(dealias_mask(field.grid), field.coeffs, 0.0), field.real)


def l2_norm(field: SpectralField) -> float:
    return float(np.sqrt(np.sum(np.abs(field.coeffs) ** 2)))


def l2_inner(f: SpectralField, g: SpectralField) -> complex:
    """Inner product sum_k f_k conj(g_k), linear in the first argument."""
    f._check(g)
    return complex(np.vdot(g.coeffs, f.coeffs))
