"""Grid realizations of the maximal and multiplier operators.

Everything here is a radial Fourier multiplier or a pointwise supremum of
them. The zero mode is pinned per operator: annihilated for the Riesz
potential (the mean has no negative power), preserved for the unimodular
imaginary powers, and set to the kernel mass F(0) for spherical means.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .grid import GridFunction, apply_radial_multiplier
from .mellin import MultiplierSpec, f_alpha


def riesz_potential(f: GridFunction, alpha: float) -> GridFunction:
    """Multiplier (2 pi |xi|)^(-alpha), zero mode annihilated."""
    if not 0.0 < alpha < f.dim:
        raise PreconditionError(f"alpha = {alpha} outside (0, {f.dim})")
    return apply_radial_multiplier(
        f, lambda lam: (2.0 * np.pi * lam) ** (-alpha), zero_mode=0.0
    )


def imaginary_power(f: GridFunction, u: float) -> GridFunction:
    """Unimodular multiplier (2 pi |xi|)^(-iu); an exact L^2 isometry.

    u = 0 short-circuits to the input itself, so the identity is bit-exact
    rather than merely within rounding.
    """
    if u == 0.0:
        return f
    return apply_radial_multiplier(
        f,
        lambda lam: np.exp(-1j * u * np.log(2.0 * np.pi * lam)),
        zero_mode=1.0,
    )


def spherical_mean(f: GridFunction, t: float, alpha: float) -> GridFunction:
    """Mean of f over the sphere of radius t, at fractional order alpha.

    Realized as the multiplier F(t|xi|); the order window comes from the
    symbol itself (Bessel order >= -1/2), not from any boundedness theorem.
    """
    if t <= 0.0:
        raise PreconditionError("radius t must be positive")
    spec = MultiplierSpec(alpha, f.dim)
    return apply_radial_multiplier(
        f, lambda lam: f_alpha(t * lam, spec), zero_mode=spec.value_at_zero
    )


@dataclass(frozen=True)
class MaximalResult:
    """Pointwise supremum field together with the t that achieved it."""

    values: GridFunction
    t_grid: tuple[float, ...]
    argmax_t: np.ndarray

    def __post_init__(self):
        idx = np.ascontiguousarray(self.argmax_t, dtype=np.intp)
        idx.flags.writeable = False
        object.__setattr__(self, "argmax_t", idx)


def _running_max(fields, t_grid, side) -> MaximalResult:
    best = None
    arg = None
    for i, mag in enumerate(fields):
        if best is None:
            best = mag.copy()
            arg = np.zeros(mag.shape, dtype=np.intp)
        else:
            better = mag > best
            best[better] = mag[better]
            arg[better] = i
    return MaximalResult(GridFunction(best, side), tuple(float(t) for t in t_grid), arg)


def spherical_maximal(f: GridFunction, alpha: float, t_grid) -> MaximalResult:
    """sup over the given radii of |spherical mean|, argmax recorded."""
    t_grid = list(t_grid)
    if not t_grid:
        raise PreconditionError("t_grid must be nonempty")
    if any(t <= 0 for t in t_grid) or any(b <= a for a, b in zip(t_grid, t_grid[1:])):
        raise PreconditionError("t_grid must be strictly increasing and positive")
    fields = (np.abs(spherical_mean(f, t, alpha).samples) for t in t_grid)
    return _running_max(fields, t_grid, f.side)


def hardy_littlewood_maximal(f: GridFunction, radii) -> GridFunction:
    """Max over the given radii of the |f|-average on discrete periodic balls.

    The ball at radius r collects lattice points within minimum-image
    distance r; averages over all centers come from one circular convolution
    per radius. radii must start at 0 so the point value participates.
    """
    radii = [float(r) for r in radii]
    if not radii or radii[0] != 0.0 or any(b <= a for a, b in zip(radii, radii[1:])):
        raise PreconditionError("radii must be increasing and include 0 first")
    from .grid import _min_image_dist2  # lattice metric helper

    dist = np.sqrt(_min_image_dist2(f.sizes, f.side, np.zeros(f.dim)))
    absf = np.abs(f.samples)
    spectrum = np.fft.fftn(absf)
    best = np.zeros_like(absf)
    tol = 1e-10 * f.side
    for r in radii:
        mask = (dist <= r + tol).astype(float)
        count = mask.sum()
        avg = np.fft.ifftn(spectrum * np.fft.fftn(mask)).real / count
        np.maximum(best, avg, out=best)
    return GridFunction(best, f.side)


def gaussian_part(f: GridFunction, t: float, alpha: float, n: int) -> GridFunction:
    """The F(0) e^(-(t|xi|)^2) piece split off the spherical-mean symbol."""
    if t <= 0.0:
        raise PreconditionError("t must be positive")
    if n != f.dim:
        raise PreconditionError(f"declared dimension {n} does not match the grid ({f.dim})")
    f0 = MultiplierSpec(alpha, n).value_at_zero
    return apply_radial_multiplier(
        f, lambda lam: f0 * np.exp(-((t * lam) ** 2)), zero_mode=f0
    )


def star_part(f: GridFunction, t: float, alpha: float) -> GridFunction:
    """Complement of the Gaussian part: multiplier F*(t|xi|), zero mode 0."""
    if t <= 0.0:
        raise PreconditionError("t must be positive")
    from .mellin import f_star

    spec = MultiplierSpec(alpha, f.dim)
    return apply_radial_multiplier(f, lambda lam: f_star(t * lam, spec), zero_mode=0.0)


def smoothing_maximal(f: GridFunction, kind: str, t_grid) -> MaximalResult:
    """sup over t of the heat (e^(-(t|xi|)^2)) or Poisson (e^(-2 pi t |xi|))
    smoothing applied to |f|; both fix the mean, so constants pass through."""
    if kind not in ("heat", "poisson"):
        raise PreconditionError(f"kind must be 'heat' or 'poisson', got {kind!r}")
    t_grid = list(t_grid)
    if not t_grid:
        raise PreconditionError("t_grid must be nonempty")
    absf = f.with_samples(np.abs(f.samples))
    if kind == "heat":
        mult = lambda t: (lambda lam: np.exp(-((t * lam) ** 2)))
    else:
        mult = lambda t: (lambda lam: np.exp(-2.0 * np.pi * t * lam))
    fields = (
        np.abs(apply_radial_multiplier(absf, mult(t), zero_mode=1.0).samples)
        for t in t_grid
    )
    return _running_max(fields, t_grid, f.side)
