"""Wave and Darboux propagators built from spherical means.

At order alpha = (3-n)/2 the mean's Bessel order is 1/2 in every dimension,
so the scaled symbol collapses to the universal wave factor
sin(2 pi t |xi|)/(2 pi |xi|). With the normalization c_n = 1/F(0) the scaled
mean c_n * t * M_t f solves u_tt = Laplacian u with u(0) = 0, u_t(0) = f, and
c_n * M_t f solves the Darboux equation with u(0) = f. A leapfrog
finite-difference integrator serves as the independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InstabilityError, PreconditionError
from .grid import (
    GridFunction,
    apply_radial_multiplier,
    dirichlet_energy,
    frequency_lattice,
    l2_norm,
    max_norm,
)
from .mellin import MultiplierSpec
from .operators import spherical_mean
from .varlp import VariableExponent, check_bound_hypotheses, luxemburg_norm


def default_t_grid(sizes, side=1.0, points=64):
    """64 geometric radii between half a cell and half the box."""
    n_max = max(sizes)
    return tuple(np.geomspace(side / (2 * n_max), side / 2.0, points))


@dataclass(frozen=True)
class WaveConfig:
    """Dimension, derived order/normalization, and the radii to scan.

    n = 1 is accepted for smoke testing only (the boundedness statements
    need n >= 2); in_theorem_range flags it.
    """

    n: int
    t_grid: tuple[float, ...]

    def __post_init__(self):
        if not 1 <= self.n <= 4:
            raise PreconditionError(f"dimension {self.n} outside 1..4")
        grid = tuple(float(t) for t in self.t_grid)
        if not grid or any(t <= 0 for t in grid) or any(
            b <= a for a, b in zip(grid, grid[1:])
        ):
            raise PreconditionError("t_grid must be strictly increasing and positive")
        object.__setattr__(self, "t_grid", grid)

    @property
    def alpha(self) -> float:
        return (3.0 - self.n) / 2.0

    @property
    def c_n(self) -> float:
        # 1/F(0) = Gamma(3/2)/pi^(n/2); fixes the eigenmode coefficient
        # sin(2 pi |k| t)/(2 pi |k|) and the small-time limit u/t -> f.
        return float(math.gamma(1.5) / np.pi ** (self.n / 2.0))

    @property
    def in_theorem_range(self) -> bool:
        return self.n >= 2

    @property
    def spec(self) -> MultiplierSpec:
        return MultiplierSpec(self.alpha, self.n)


def config_for(f: GridFunction, t_grid=None, points=64) -> WaveConfig:
    if t_grid is None:
        t_grid = default_t_grid(f.sizes, f.side, points)
    return WaveConfig(f.dim, tuple(t_grid))


def _check_dim(f: GridFunction, cfg: WaveConfig):
    if f.dim != cfg.n:
        raise PreconditionError(f"grid dimension {f.dim} does not match config n = {cfg.n}")


def wave_propagate(f: GridFunction, t: float, cfg: WaveConfig) -> GridFunction:
    """u(., t) with u(., 0) = 0 and initial velocity f."""
    _check_dim(f, cfg)
    if t < 0.0:
        raise PreconditionError("t must be >= 0")
    if t == 0.0:
        return f.with_samples(np.zeros(f.sizes, dtype=np.complex128))
    u = spherical_mean(f, t, cfg.alpha)
    return u.with_samples((cfg.c_n * t) * u.samples)


def wave_velocity(f: GridFunction, t: float, cfg: WaveConfig) -> GridFunction:
    """Time derivative of wave_propagate: multiplier cos(2 pi t |xi|)."""
    _check_dim(f, cfg)
    if t < 0.0:
        raise PreconditionError("t must be >= 0")
    if t == 0.0:
        return f
    return apply_radial_multiplier(
        f, lambda lam: np.cos(2.0 * np.pi * t * lam), zero_mode=1.0
    )


def darboux_solution(f: GridFunction, t: float, cfg: WaveConfig) -> GridFunction:
    """Normalized spherical mean c_n M_t f; equals f at t = 0."""
    _check_dim(f, cfg)
    if t < 0.0:
        raise PreconditionError("t must be >= 0")
    if t == 0.0:
        return f
    u = spherical_mean(f, t, cfg.alpha)
    return u.with_samples(cfg.c_n * u.samples)


def wave_energy(f: GridFunction, t: float, cfg: WaveConfig) -> float:
    """Discrete energy ||u_t||_2^2 + ||grad u||_2^2 at time t."""
    u = wave_propagate(f, t, cfg)
    v = wave_velocity(f, t, cfg)
    return l2_norm(v) ** 2 + dirichlet_energy(u)


def fd_stability_bound(sizes, side, n) -> float:
    """Documented step ceiling (L/N)/(2 pi sqrt(n)); four times below the
    spectral leapfrog's actual CFL limit, so admissible steps are safely stable."""
    return (side / max(sizes)) / (2.0 * np.pi * np.sqrt(n))


def wave_fd_oracle(f: GridFunction, t: float, dt: float) -> GridFunction:
    """Leapfrog integration of u_tt = Laplacian u, independent of the multiplier route.

    The Laplacian is applied spectrally; time stepping is plain second-order
    central differencing started with the cubic Taylor step, so the overall
    error is O(dt^2). dt is shrunk to divide t exactly. Norm growth past ten
    times the linear bound t*||f||_2 aborts with an instability error.
    """
    if t <= 0.0:
        raise PreconditionError("t must be positive")
    bound = fd_stability_bound(f.sizes, f.side, f.dim)
    if not 0.0 < dt <= bound:
        raise PreconditionError(f"dt = {dt} outside (0, {bound}] (stability ceiling)")
    steps = max(1, math.ceil(t / dt))
    dt = t / steps
    lat = frequency_lattice(f.sizes, f.side)
    symbol = -((2.0 * np.pi * lat.xi_abs) ** 2)

    def lap(arr):
        return np.fft.ifftn(symbol * np.fft.fftn(arr))

    guard = 10.0 * t * l2_norm(f) + 1e-300
    vol = np.sqrt(f.cell_volume)
    prev = np.zeros(f.sizes, dtype=np.complex128)
    cur = dt * f.samples + (dt**3 / 6.0) * lap(f.samples)
    for _ in range(steps - 1):
        prev, cur = cur, 2.0 * cur - prev + dt**2 * lap(cur)
        if vol * np.linalg.norm(cur) > guard:
            raise InstabilityError("finite-difference run exceeded 10x the linear norm bound")
    return f.with_samples(cur)


def a_priori_ratio(f: GridFunction, p: VariableExponent, cfg: WaveConfig) -> float:
    """||sup_t |u(., t)|/t||_p(.) divided by ||f||_p(.) over cfg.t_grid.

    Only defined when the wave-range hypothesis check passes for p; the
    constant in the underlying estimate is non-constructive, so the ratio is
    reported as an observation, not compared against any claimed bound.
    """
    _check_dim(f, cfg)
    report = check_bound_hypotheses(p, cfg.alpha, cfg.n, "cor36_wave")
    if not report.passed:
        raise PreconditionError(f"wave-range hypothesis fails: {report.chain}")
    denom = luxemburg_norm(f, p)
    if denom == 0.0:
        raise PreconditionError("zero initial data")
    sup = None
    for t in cfg.t_grid:
        mag = np.abs(wave_propagate(f, t, cfg).samples) / t
        sup = mag if sup is None else np.maximum(sup, mag)
    return luxemburg_norm(GridFunction(sup, f.side), p) / denom


def small_time_limit_error(f: GridFunction, cfg: WaveConfig, t: float) -> float:
    """max-norm distance between u(., t)/t and the initial velocity f."""
    _check_dim(f, cfg)
    if t <= 0.0:
        raise PreconditionError("t must be positive")
    u = wave_propagate(f, t, cfg)
    return float(np.max(np.abs(u.samples / t - f.samples)))


def write_wave_trace(f: GridFunction, cfg: WaveConfig, path, comment: str) -> None:
    """CSV trace along cfg.t_grid: t, L2 norm, max norm, energy."""
    _check_dim(f, cfg)
    lines = [f"# {comment}", "t,l2_norm,max_norm,energy"]
    for t in cfg.t_grid:
        u = wave_propagate(f, t, cfg)
        lines.append(
            f"{t!r},{l2_norm(u)!r},{max_norm(u)!r},{wave_energy(f, t, cfg)!r}"
        )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
