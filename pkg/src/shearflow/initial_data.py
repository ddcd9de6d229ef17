"""Shear-type initial data v0(x) = (v1(x2), 0, v3(x1, x2)).

The velocity profile v1 is a 1D field in x2 and the third component v3 a 2D
field on (x1, x2). Both are described by a ``kind`` plus parameters so they
can be addressed from a flat run configuration.

Random fields use numpy's PCG64 generator (``np.random.default_rng(seed)``)
with independent complex Gaussian amplitudes per mode, symmetrised so the
field is real.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .spectral import (
    Grid1D,
    Grid2D,
    SpectralField,
    dealias,
    l2_norm,
    to_spectral,
    zeros,
)

V1_KINDS = ("square_wave", "band_limited", "custom", "zero")
V3_KINDS = ("single_mode", "band_limited", "periodized_bump", "random_band_limited", "zero")
VELOCITY_MODES = ("pointwise_sign", "truncated_series")


@dataclass(frozen=True)
class ShearDatum:
    """Kinds and parameters for v1 and v3.

    v1 params: ``modes`` ({k: c_k}, k > 0 or k == 0) for band_limited,
    ``samples`` for custom.
    v3 params: ``m1, m2, amplitude`` for single_mode; ``modes``
    ({(m1, m2): c}) for band_limited; ``center, width`` for
    periodized_bump; ``max_mode, seed`` for random_band_limited.
    """

    v1: str = "square_wave"
    v3: str = "single_mode"
    v1_params: dict = field(default_factory=dict)
    v3_params: dict = field(default_factory=lambda: {"m1": 1, "m2": 0, "amplitude": 1.0})

    def __post_init__(self):
        if self.v1 not in V1_KINDS:
            raise ValueError(f"unknown v1 kind {self.v1!r}; expected one of {V1_KINDS}")
        if self.v3 not in V3_KINDS:
            raise ValueError(f"unknown v3 kind {self.v3!r}; expected one of {V3_KINDS}")


def _check_band(k: int, n: int, what: str):
    if 3 * abs(k) > n:
        raise ValueError(f"{what} mode {k} lies beyond the dealias cutoff {n // 3} for n={n}")


def square_wave_shear(grid: Grid1D) -> SpectralField:
    """Fourier projection of sign(x2), truncated at the dealias cutoff.

    c_k = -2i/(pi k) for odd k with |k| <= n/3, zero otherwise.
    """
    k = grid.wavenumbers
    odd = (k % 2 == 1) & (3 * np.abs(k) <= grid.n)
    c = np.zeros(grid.n, dtype=complex)
    c[odd] = -2j / (np.pi * k[odd])
    return SpectralField(grid, c)


def sign_samples(points: np.ndarray) -> np.ndarray:
    """sign(x) on (-1/2, 1/2); the jump points x = 0 and x = -1/2 map to 0."""
    x = np.asarray(points, dtype=float)
    return np.where(np.abs(x) == 0.5, 0.0, np.sign(x))


def band_limited_1d(modes: dict, grid: Grid1D) -> SpectralField:
    c = np.zeros(grid.n, dtype=complex)
    for k, a in modes.items():
        k = int(k)
        _check_band(k, grid.n, "v1")
        if k == 0:
            if complex(a).imag != 0:
                raise ValueError("mean mode of a real field must be real")
            c[0] = complex(a).real
            continue
        c[k % grid.n] = a
        c[-k % grid.n] = np.conj(a)
    return SpectralField(grid, c)


def v1_field(datum: ShearDatum, grid: Grid1D, velocity_mode: str = "truncated_series") -> SpectralField:
    """The shear profile as used by the solvers.

    For the square wave, ``pointwise_sign`` interpolates the samples of
    sign(x2) while ``truncated_series`` takes the truncated Fourier series.
    """
    if velocity_mode not in VELOCITY_MODES:
        raise ValueError(f"unknown velocity mode {velocity_mode!r}")
    if datum.v1 == "zero":
        return zeros(grid)
    if datum.v1 == "square_wave":
        if velocity_mode == "pointwise_sign":
            return to_spectral(sign_samples(grid.points), grid)
        return square_wave_shear(grid)
    if datum.v1 == "band_limited":
        return band_limited_1d(datum.v1_params["modes"], grid)
    samples = np.asarray(datum.v1_params["samples"], dtype=float)
    f = to_spectral(samples, grid)
    return f if velocity_mode == "pointwise_sign" else dealias(f)


def _periodized_gaussian(x1, x2, center, width, images: int = 3):
    c1, c2 = center
    out = np.zeros(np.broadcast(x1, x2).shape)
    for i in range(-images, images + 1):
        for j in range(-images, images + 1):
            r2 = (x1 - c1 - i) ** 2 + (x2 - c2 - j) ** 2
            out += np.exp(-r2 / (2.0 * width**2))
    return out


def periodized_bump(x1, x2, center=0.0, width=0.1):
    """Gaussian bump exp(-|x - c|^2 / (2 w^2)) summed over periodic images.

    Its integral over the torus is 2 pi w^2.
    """
    center = np.broadcast_to(np.asarray(center, dtype=float), (2,))
    if not 0 < width <= 0.25:
        raise ValueError(f"bump width must lie in (0, 0.25], got {width}")
    return _periodized_gaussian(x1, x2, center, width)


def sample_v3(datum: ShearDatum, grid: Grid2D) -> SpectralField:
    kind, p = datum.v3, datum.v3_params
    if kind == "zero":
        return zeros(grid)
    if kind == "single_mode":
        m1, m2 = int(p.get("m1", 1)), int(p.get("m2", 0))
        _check_band(m1, grid.n1, "v3 x1")
        _check_band(m2, grid.n2, "v3 x2")
        modes = {(m1, m2): -0.5j * float(p.get("amplitude", 1.0))}
        return _band_limited_2d(modes, grid)
    if kind == "band_limited":
        return _band_limited_2d(p["modes"], grid)
    if kind == "periodized_bump":
        x1, x2 = grid.points
        return to_spectral(periodized_bump(x1, x2, p.get("center", 0.0), float(p.get("width", 0.1))), grid)
    return _random_band_limited(int(p.get("max_mode", 4)), int(p.get("seed", 0)), grid)


def _band_limited_2d(modes: dict, grid: Grid2D) -> SpectralField:
    c = np.zeros(grid.shape, dtype=complex)
    for (m1, m2), a in modes.items():
        _check_band(m1, grid.n1, "v3 x1")
        _check_band(m2, grid.n2, "v3 x2")
        if m1 == 0 and m2 == 0:
            c[0, 0] += complex(a).real
            continue
        c[m1 % grid.n1, m2 % grid.n2] += a
        c[-m1 % grid.n1, -m2 % grid.n2] += np.conj(a)
    return SpectralField(grid, c)


def _random_band_limited(max_mode: int, seed: int, grid: Grid2D) -> SpectralField:
    _check_band(max_mode, min(grid.n1, grid.n2), "v3 random")
    rng = np.random.default_rng(seed)
    size = 2 * max_mode + 1
    a = (rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))) / np.sqrt(2.0)
    # index i <-> wavenumber i - max_mode; a[::-1, ::-1] is the (-m1, -m2) entry
    a = 0.5 * (a + np.conj(a[::-1, ::-1]))
    m = np.arange(-max_mode, max_mode + 1)
    c = np.zeros(grid.shape, dtype=complex)
    c[np.ix_(m % grid.n1, m % grid.n2)] = a
    return SpectralField(grid, c)


def initial_energy(
    datum: ShearDatum, grids: tuple[Grid1D, Grid2D], velocity_mode: str = "truncated_series"
) -> float:
    """Half the squared L2 norm of (v1, 0, v3) as discretised on ``grids``."""
    g1, g2 = grids
    v1 = v1_field(datum, g1, velocity_mode)
    v3 = sample_v3(datum, g2)
    return 0.5 * (l2_norm(v1) ** 2 + l2_norm(v3) ** 2)
