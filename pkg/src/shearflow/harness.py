"""Run configuration, viscosity sweeps and the verification suite.

Configuration files are flat ``key = value`` lines; ``#`` starts a comment.
Recognised keys and their defaults are listed in ``KEYS``.
"""

from __future__ import annotations

import json
import logging
import math
import os
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import solver, spectral
from .diagnostics import ConvergenceReport, assess, euler_residual, test_family
from .exact import ExactShearFlow, heat_evolve, transport_evolve
from .initial_data import VELOCITY_MODES, ShearDatum, sample_v3, square_wave_shear, v1_field
from .solver import SolverConfig, SolverIntegrityError, default_dt
from .spectral import Grid1D, Grid2D, SpectralField, l2_norm, to_physical, to_spectral

log = logging.getLogger(__name__)

OUTPUT_DIR_ENV = "SHEARFLOW_OUTPUT_DIR"
SNAPSHOT_HEADER = "nu,t,l2_err_u3,l2_err_u1,weak_pair_max_abs,energy,energy0"
SUMMARY_HEADER = "nu,sup_l2_err_u3,l2t_err_u1,weak_pair_max_abs,rate_context"

EXIT_OK, EXIT_CONFIG, EXIT_INTEGRITY, EXIT_CHECK = 0, 2, 3, 4


class ConfigError(ValueError):
    pass


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(","))


def _ladder(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def parse_modes(text: str) -> dict:
    """``"1=-0.5j, 3=0.2"`` -> {1: -0.5j, 3: 0.2}; 2D keys are written ``m1/m2``."""
    modes = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, _, val = item.partition("=")
        if not val:
            raise ValueError(f"mode entry {item!r} is not of the form k=amplitude")
        key = key.strip()
        k = tuple(int(p) for p in key.split("/")) if "/" in key else int(key)
        modes[k] = complex(val.strip().replace(" ", ""))
    return modes


# dotted key -> (attribute, parser, default)
KEYS = {
    "grid.n1": ("n1", int, 256),
    "grid.n2": ("n2", int, 256),
    "grid.n_shear": ("n_shear", int, None),
    "time.T": ("T", float, 0.5),
    "time.dt": ("dt", float, None),
    "time.snapshot_stride": ("snapshot_stride", int, 10),
    "viscosity.ladder": ("ladder", _ladder, [1e-1, 3e-2, 1e-2, 3e-3, 1e-3]),
    "datum.v1": ("v1", str, "square_wave"),
    "datum.v1.modes": ("v1_modes", parse_modes, None),
    "datum.v3": ("v3", str, "single_mode"),
    "datum.v3.m1": ("v3_m1", int, 1),
    "datum.v3.m2": ("v3_m2", int, 0),
    "datum.v3.amplitude": ("v3_amplitude", float, 1.0),
    "datum.v3.modes": ("v3_modes", parse_modes, None),
    "datum.v3.center": ("v3_center", _floats, (0.0, 0.0)),
    "datum.v3.width": ("v3_width", float, 0.1),
    "datum.v3.max_mode": ("v3_max_mode", int, 4),
    "datum.v3.seed": ("seed", int, 0),
    "velocity_mode": ("velocity_mode", str, "pointwise_sign"),
    "solver.dealias_advect": ("dealias_advect", _bool, False),
    "test_family.max_space_mode": ("max_space_mode", int, 3),
    "test_family.max_time_mode": ("max_time_mode", int, 2),
    "output.dir": ("output_dir", str, "results"),
    "output.format": ("output_format", str, "csv"),
}
_ATTR_TO_KEY = {attr: key for key, (attr, _, _) in KEYS.items()}


@dataclass
class RunConfig:
    n1: int = 256
    n2: int = 256
    n_shear: int | None = None
    T: float = 0.5
    dt: float | None = None
    snapshot_stride: int = 10
    ladder: list = field(default_factory=lambda: [1e-1, 3e-2, 1e-2, 3e-3, 1e-3])
    v1: str = "square_wave"
    v1_modes: dict | None = None
    v3: str = "single_mode"
    v3_m1: int = 1
    v3_m2: int = 0
    v3_amplitude: float = 1.0
    v3_modes: dict | None = None
    v3_center: tuple = (0.0, 0.0)
    v3_width: float = 0.1
    v3_max_mode: int = 4
    seed: int = 0
    velocity_mode: str = "pointwise_sign"
    dealias_advect: bool = False
    max_space_mode: int = 3
    max_time_mode: int = 2
    output_dir: str = "results"
    output_format: str = "csv"
    defaulted: list = field(default_factory=list)

    def __post_init__(self):
        if self.n_shear is None:
            self.n_shear = self.n2
        if self.dt is None:
            self.dt = default_dt(self.n1)

    # -- validation --------------------------------------------------------
    def validate(self) -> RunConfig:
        def bad(attr, msg):
            raise ConfigError(f"{_ATTR_TO_KEY[attr]}: {msg}")

        for attr in ("n1", "n2", "n_shear"):
            n = getattr(self, attr)
            if n < 8 or n % 2:
                bad(attr, f"grid size must be an even integer >= 8, got {n}")
        if self.n_shear % self.n2:
            bad("n_shear", f"must be a multiple of grid.n2={self.n2}, got {self.n_shear}")
        for attr in ("T", "dt", "v3_width"):
            if not getattr(self, attr) > 0:
                bad(attr, f"must be positive, got {getattr(self, attr)}")
        for attr in ("snapshot_stride", "max_space_mode", "v3_max_mode"):
            if getattr(self, attr) < 1:
                bad(attr, f"must be positive, got {getattr(self, attr)}")
        if self.max_time_mode < 0:
            bad("max_time_mode", "must be nonnegative")
        if not self.ladder:
            bad("ladder", "must contain at least one viscosity")
        if any(nu < 0 or not math.isfinite(nu) for nu in self.ladder):
            bad("ladder", f"viscosities must be finite and nonnegative: {self.ladder}")
        if any(b >= a for a, b in zip(self.ladder, self.ladder[1:])):
            bad("ladder", f"must be strictly decreasing: {self.ladder}")
        if self.velocity_mode not in VELOCITY_MODES:
            bad("velocity_mode", f"expected one of {VELOCITY_MODES}, got {self.velocity_mode!r}")
        if self.output_format not in ("csv", "json", "both"):
            bad("output_format", f"expected csv, json or both, got {self.output_format!r}")
        if 3 * self.max_space_mode > min(self.n1, self.n2):
            bad("max_space_mode", "test modes must lie within the dealiased band")
        try:
            self.solver_config()
        except ValueError as exc:
            bad("dt", str(exc))
        try:
            self.datum()
            sample_v3(self.datum(), self.grids()[1])
            v1_field(self.datum(), self.grids()[0], self.velocity_mode)
        except (ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"datum: {exc}") from exc
        return self

    # -- derived objects ---------------------------------------------------
    def grids(self) -> tuple[Grid1D, Grid2D]:
        return Grid1D(self.n_shear), Grid2D(self.n1, self.n2)

    def solver_config(self) -> SolverConfig:
        return SolverConfig(
            T=self.T,
            dt=self.dt,
            snapshot_stride=self.snapshot_stride,
            velocity_mode=self.velocity_mode,
            dealias_advect=self.dealias_advect,
        )

    def datum(self) -> ShearDatum:
        v1_params = {}
        if self.v1 == "band_limited":
            if not self.v1_modes:
                raise ValueError("band_limited v1 needs datum.v1.modes")
            v1_params["modes"] = self.v1_modes
        if self.v3 == "band_limited" and not self.v3_modes:
            raise ValueError("band_limited v3 needs datum.v3.modes")
        v3_params = {
            "single_mode": {"m1": self.v3_m1, "m2": self.v3_m2, "amplitude": self.v3_amplitude},
            "band_limited": {"modes": self.v3_modes},
            "periodized_bump": {"center": self.v3_center, "width": self.v3_width},
            "random_band_limited": {"max_mode": self.v3_max_mode, "seed": self.seed},
            "zero": {},
        }.get(self.v3, {})
        return ShearDatum(v1=self.v1, v3=self.v3, v1_params=v1_params, v3_params=v3_params)

    def resolved(self) -> dict[str, str]:
        """Every key with its value as it would be written in a config file."""
        out = {}
        for key, (attr, _, _) in KEYS.items():
            val = getattr(self, attr)
            if val is None:
                continue
            if isinstance(val, (list, tuple)):
                val = ",".join(repr(float(x)) for x in val)
            elif isinstance(val, dict):
                val = ",".join(f"{'/'.join(map(str, k)) if isinstance(k, tuple) else k}={v!r}" for k, v in val.items())
            elif isinstance(val, bool):
                val = "true" if val else "false"
            elif isinstance(val, float):
                val = repr(val)
            out[key] = str(val)
        return out


def _apply(values: dict, key: str, raw: str, where: str):
    if key not in KEYS:
        raise ConfigError(f"{where}: unknown key {key!r}")
    attr, parse, _ = KEYS[key]
    try:
        values[attr] = parse(raw.strip())
    except ValueError as exc:
        raise ConfigError(f"{where}: bad value for {key}: {exc}") from exc


def parse_config(text: str = "", overrides: dict[str, str] | None = None) -> RunConfig:
    """Parse flat ``key = value`` text, apply ``overrides`` and validate."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, raw = line.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key = key.strip()
        if key == "datum.v1" and raw.strip().startswith("band_limited:"):
            _, _, modes = raw.partition(":")
            _apply(values, "datum.v1.modes", modes, f"line {lineno}")
            raw = "band_limited"
        _apply(values, key, raw, f"line {lineno}")
    for key, raw in (overrides or {}).items():
        _apply(values, key, raw, f"override --{key}")
    defaulted = [key for key, (attr, _, _) in KEYS.items() if attr not in values]
    if "max_space_mode" not in values:
        n = min(values.get("n1", 256), values.get("n2", 256))
        values["max_space_mode"] = max(1, min(3, n // 3))
    return RunConfig(**values, defaulted=defaulted).validate()


# -- sweeps -----------------------------------------------------------------


@dataclass
class SweepResult:
    report: ConvergenceReport
    rows: list[dict]
    files: list[Path]
    exit_code: int
    failure: str = ""


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _header_lines(config: RunConfig) -> list[str]:
    lines = [f"# shearflow {__version__}"]
    lines += [f"# {k} = {v}" for k, v in config.resolved().items()]
    if config.defaulted:
        lines.append(f"# defaulted = {','.join(config.defaulted)}")
    return lines


def _write_atomic(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def output_dir(config: RunConfig) -> Path:
    if "output.dir" in config.defaulted and os.environ.get(OUTPUT_DIR_ENV):
        return Path(os.environ[OUTPUT_DIR_ENV])
    return Path(config.output_dir)


def run_sweep(config: RunConfig, write: bool = True) -> SweepResult:
    """One viscous solve per ladder entry, assessed against the shear flow."""
    g1, g2 = config.grids()
    datum = config.datum()
    scfg = config.solver_config()
    v1 = v1_field(datum, g1, config.velocity_mode)
    v3 = sample_v3(datum, g2)
    reference = ExactShearFlow(v1, v3)
    family = test_family(config.max_space_mode, config.max_time_mode, config.T)

    report = ConvergenceReport(list(config.ladder))
    report.metadata = {
        "version": __version__,
        "config": config.resolved(),
        "defaulted": list(config.defaulted),
        "grids": {"n1": config.n1, "n2": config.n2, "n_shear": config.n_shear},
        "dt": scfg.resolve_dt(g2),
        "seed": config.seed,
        "velocity_mode": config.velocity_mode,
    }
    rows, code, failure = [], EXIT_OK, ""
    for nu in config.ladder:
        try:
            traj = solver.integrate(v1, v3, nu, scfg)
        except SolverIntegrityError as exc:
            code, failure = EXIT_INTEGRITY, f"nu={nu!r}: {exc}"
            log.error("solver integrity failure: %s", failure)
            break
        entry, snap_rows = assess(traj, reference, family)
        report.entries.append(entry)
        rows.extend(snap_rows)
        log.info("nu=%g sup_l2_err_u3=%.3e weak=%.3e", nu, entry.sup_l2_err_u3, entry.weak_pair_max_abs)
        if not entry.admissible:
            code, failure = EXIT_CHECK, f"nu={nu!r}: energy inequality violated by {entry.max_violation:.3e}"
    report.fit_rates()

    files = write_outputs(config, report, rows) if write else []
    return SweepResult(report, rows, files, code, failure)


def rate_context(report: ConvergenceReport) -> str:
    if not report.rates:
        return "na"
    return ";".join(f"{k}={v!r}" for k, v in sorted(report.rates.items()))


def write_outputs(config: RunConfig, report: ConvergenceReport, rows: list[dict]) -> list[Path]:
    out = output_dir(config)
    header = "\n".join(_header_lines(config)) + "\n"
    files = []
    if config.output_format in ("csv", "both"):
        cols = SNAPSHOT_HEADER.split(",")
        body = "".join(",".join(_fmt(r[c]) for c in cols) + "\n" for r in rows)
        _write_atomic(out / "snapshots.csv", header + SNAPSHOT_HEADER + "\n" + body)
        ctx = rate_context(report)
        body = "".join(
            f"{_fmt(e.nu)},{_fmt(e.sup_l2_err_u3)},{_fmt(e.l2t_err_u1)},{_fmt(e.weak_pair_max_abs)},{ctx}\n"
            for e in report.entries
        )
        _write_atomic(out / "summary.csv", header + SUMMARY_HEADER + "\n" + body)
        files += [out / "snapshots.csv", out / "summary.csv"]
    if config.output_format in ("json", "both"):
        payload = report.to_dict()
        payload["snapshots"] = rows
        _write_atomic(out / "report.json", json.dumps(payload, indent=2, sort_keys=True) + "\n")
        files.append(out / "report.json")
    return files


# -- verification suite -----------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _direct_dft(samples: np.ndarray, grid: Grid1D) -> np.ndarray:
    x, k = grid.points, grid.wavenumbers
    return np.exp(-2j * np.pi * np.outer(k, x)) @ samples / grid.n


def _check_roundtrip(config, rng):
    worst = 0.0
    for n in (8, 16, 32, 64, 128, 256, 512, 1024, 12, 48):
        g = Grid1D(n)
        f = rng.standard_normal(n)
        c = to_spectral(f, g)
        worst = max(worst, np.max(np.abs(to_physical(c) - f)) / np.max(np.abs(f)))
        if n <= 64:
            worst = max(worst, np.max(np.abs(c.coeffs - _direct_dft(f, g))))
    g = Grid2D(config.n1, config.n2)
    f = rng.standard_normal(g.shape)
    worst = max(worst, np.max(np.abs(to_physical(to_spectral(f, g)) - f)))
    return worst < 1e-12, f"max error {worst:.2e}"


def _check_parseval(config, rng):
    worst = 0.0
    for n in (8, 32, 128, 512):
        g = Grid1D(n)
        f = rng.standard_normal(n)
        lhs, rhs = l2_norm(to_spectral(f, g)) ** 2, np.mean(f**2)
        worst = max(worst, abs(lhs - rhs) / rhs)
    return worst < 1e-12, f"max relative error {worst:.2e}"


def _check_derivative(config, rng):
    worst = 0.0
    for n in (8, 16, 64, 256, 512):
        g = Grid1D(n)
        for k in range(-n // 2 + 1, n // 2 + 1):
            c = np.zeros(n, dtype=complex)
            c[k % n] = 1.0
            f = SpectralField(g, c, real=False)
            for order in (1, 2):
                got = spectral.derivative(f, 0, order).coeff(k)
                want = 0.0 if (order == 1 and k == n // 2) else (2j * np.pi * k) ** order
                worst = max(worst, abs(got - want) / max(1.0, abs(want)))
        # sampled data: round-off is amplified by up to the largest eigenvalue
        x = g.points
        scale = (np.pi * n) ** 2
        for k in (1, 2):
            d2 = to_physical(spectral.derivative(to_spectral(np.sin(2 * np.pi * k * x), g), 0, 2))
            err = np.max(np.abs(d2 + (2 * np.pi * k) ** 2 * np.sin(2 * np.pi * k * x))) / scale
            worst = max(worst, err)
    return worst < 1e-12, f"max relative error {worst:.2e}"


def _check_dealias(config, rng):
    ok = True
    for n in (8, 12, 64, 512):
        g = Grid1D(n)
        f = to_spectral(rng.standard_normal(n), g)
        d = spectral.dealias(f)
        keep = 3 * np.abs(g.wavenumbers) <= n
        ok &= np.array_equal(d.coeffs[keep], f.coeffs[keep]) and not np.any(d.coeffs[~keep])
    return bool(ok), "2/3 mask applied exactly"


def _check_square_wave(config, rng):
    g = Grid1D(max(config.n_shear, 64))
    c = square_wave_shear(g)
    b1 = -2 * c.coeff(1).imag
    ok = abs(b1 - 4 / np.pi) < 1e-14 and c.coeff(2) == 0 and c.coeff(0) == 0
    ok &= np.max(np.abs(c.coeffs.real)) == 0.0
    return bool(ok), f"b_1 = {b1!r}"


def _check_heat_semigroup(config, rng):
    g = Grid1D(config.n_shear)
    u = to_spectral(rng.standard_normal(g.n), g)
    a = heat_evolve(u, 0.01, 0.3)
    b = heat_evolve(heat_evolve(u, 0.01, 0.1), 0.01, 0.2)
    err = np.max(np.abs(a.coeffs - b.coeffs))
    norms = [l2_norm(heat_evolve(u, 0.01, t)) for t in (0.0, 0.1, 0.2, 0.3)]
    ok = err < 1e-13 and all(y < x for x, y in zip(norms, norms[1:]))
    return bool(ok), f"semigroup error {err:.2e}"


def _check_transport(config, rng):
    g2 = Grid2D(config.n1, config.n2)
    w0 = to_spectral(rng.standard_normal(g2.shape), g2)
    v = rng.standard_normal(g2.n2)
    a = transport_evolve(w0, v, 0.7)
    b = transport_evolve(transport_evolve(w0, v, 0.3), v, 0.4)
    semi = np.max(np.abs(a.coeffs - b.coeffs))
    cons = abs(l2_norm(a) - l2_norm(w0))
    # constant velocity: rigid translation by pointwise substitution
    x1, x2 = g2.points
    c, t = 0.37, 0.9
    w = to_spectral(np.sin(2 * np.pi * (x1 + 2 * x2)), g2)
    moved = to_physical(transport_evolve(w, np.full(g2.n2, c), t))
    subst = np.max(np.abs(moved - np.sin(2 * np.pi * (x1 - c * t + 2 * x2))))
    ok = semi < 1e-13 and cons < 1e-13 and subst < 1e-12
    return bool(ok), f"semigroup {semi:.2e}, norm drift {cons:.2e}, substitution {subst:.2e}"


def _check_diffusion(config, rng):
    g2 = Grid2D(config.n1, config.n2)
    u = to_spectral(rng.standard_normal(g2.shape), g2)
    nu = 0.02
    a = solver.diffuse_substep(u, nu, 0.25)
    b = solver.diffuse_substep(solver.diffuse_substep(u, nu, 0.1), nu, 0.15)
    semi = np.max(np.abs(a.coeffs - b.coeffs))
    # x2-only fields must follow the 1D heat semigroup
    prof = to_spectral(rng.standard_normal(g2.n2), Grid1D(g2.n2))
    lifted = SpectralField(g2, np.vstack([prof.coeffs[None, :], np.zeros((g2.n1 - 1, g2.n2))]))
    d2 = solver.diffuse_substep(lifted, nu, 0.25).coeffs[0]
    oracle = np.max(np.abs(d2 - heat_evolve(prof, nu, 0.25).coeffs))
    contractive = l2_norm(a) <= l2_norm(u)
    ok = semi < 1e-13 and oracle < 1e-13 and contractive
    return bool(ok), f"semigroup {semi:.2e}, heat oracle {oracle:.2e}, contractive={contractive}"


def _small_setup(config, v3="random_band_limited"):
    g1, g2 = config.grids()
    m = max(1, min(3, config.n1 // 3, config.n2 // 3))
    datum = ShearDatum(v1="square_wave", v3=v3, v3_params={"max_mode": m, "seed": config.seed})
    return datum, g1, g2


def _small_solver(config, T=0.1):
    dt = T / 50
    return SolverConfig(T=T, dt=dt, snapshot_stride=5, velocity_mode=config.velocity_mode)


def _check_energy(config, rng):
    datum, g1, g2 = _small_setup(config)
    worst = -np.inf
    for nu in (0.0, 1e-3, 1e-1):
        traj = solver.solve(datum, nu, _small_solver(config), (g1, g2))
        worst = max(worst, float(np.max(np.diff(traj.energy))))
    return worst <= 1e-12, f"largest ledger increase {worst:.2e}"


def _check_exactness(config, rng):
    datum, g1, g2 = _small_setup(config)
    scfg = _small_solver(config)
    traj = solver.solve(datum, 0.0, scfg, (g1, g2))
    ref = ExactShearFlow(traj.v1, traj.u3[0])
    err = max(l2_norm(u - ref.u3(t)) for u, t in zip(traj.u3, traj.times))
    return err < 1e-12, f"max L2 deviation from shear flow {err:.2e}"


def _check_decoupling(config, rng):
    datum, g1, g2 = _small_setup(config)
    scfg = _small_solver(config)
    v1 = v1_field(datum, g1, config.velocity_mode)
    v3 = sample_v3(datum, g2)
    full = solver.integrate(v1, v3, 1e-2, scfg)
    m0 = 1
    only = np.zeros_like(v3.coeffs)
    only[m0] = v3.coeffs[m0]
    part = solver.integrate(v1, SpectralField(g2, only, real=False), 1e-2, scfg)
    err = max(np.max(np.abs(a.coeffs[m0] - b.coeffs[m0])) for a, b in zip(full.u3, part.u3))
    leak = max(np.max(np.abs(np.delete(b.coeffs, m0, axis=0))) for b in part.u3)
    return bool(err < 1e-12 and leak < 1e-12), f"mode mismatch {err:.2e}, leakage {leak:.2e}"


def _check_mean_and_coupling(config, rng):
    datum, g1, g2 = _small_setup(config)
    scfg = _small_solver(config)
    traj = solver.solve(datum, 1e-2, scfg, (g1, g2))
    mean_drift = max(abs(u.coeff(0, 0) - traj.u3[0].coeff(0, 0)) for u in traj.u3)
    coupled = all(
        np.array_equal(u.coeffs, heat_evolve(traj.v1, traj.nu, t).coeffs) for u, t in zip(traj.u1, traj.times)
    )
    div = max(solver.discrete_divergence(a, b) for a, b in zip(traj.u1, traj.u3))
    ok = mean_drift < 1e-14 and coupled and div == 0.0
    return bool(ok), f"mean drift {mean_drift:.1e}, u1 bit-identical={coupled}, divergence {div}"


def _check_euler_residual(config, rng):
    g1, g2 = config.grids()
    v1 = to_spectral(np.sin(2 * np.pi * g1.points), g1)
    v3 = sample_v3(ShearDatum(v3="single_mode"), g2)
    fam = test_family(min(config.max_space_mode, g2.n1 // 3, g2.n2 // 3), config.max_time_mode, 0.5)
    res = euler_residual(ExactShearFlow(v1, v3), fam, 0.5)
    return res < 1e-10, f"max residual {res:.2e}"


CHECKS = [
    ("spectral_roundtrip", _check_roundtrip),
    ("parseval", _check_parseval),
    ("derivative_eigen", _check_derivative),
    ("dealias", _check_dealias),
    ("square_wave_coefficients", _check_square_wave),
    ("heat_semigroup", _check_heat_semigroup),
    ("transport_semigroup", _check_transport),
    ("diffuse_semigroup", _check_diffusion),
    ("energy_inequality", _check_energy),
    ("zero_viscosity_exactness", _check_exactness),
    ("mode_decoupling", _check_decoupling),
    ("mean_coupling_divergence", _check_mean_and_coupling),
    ("euler_residual", _check_euler_residual),
]


def verify(config: RunConfig | None = None, echo=print) -> list[CheckResult]:
    """Run the invariant suite at the sizes in ``config`` and report each check."""
    config = config or parse_config("grid.n1 = 32\ngrid.n2 = 32")
    results = []
    for name, check in CHECKS:
        rng = np.random.default_rng(config.seed)
        start = time.perf_counter()
        try:
            passed, detail = check(config, rng)
        except Exception as exc:  # a crashing check is a failing check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        res = CheckResult(name, bool(passed), detail, time.perf_counter() - start)
        results.append(res)
        if echo:
            echo(f"{'PASS' if res.passed else 'FAIL'} {name:<26} {res.detail} ({res.seconds:.2f} s)")
    return results
