"""Periodic sampled fields and radial Fourier multipliers.

The domain is the cube torus [0, L)^n sampled on a uniform lattice of
power-of-two sizes, n = 1..4. The discrete transform is unitary
(norm="ortho"), frequencies live at xi = k/L in fftfreq layout, and every
operator in this toolkit is a radial multiplier applied through
apply_radial_multiplier with an explicit value at the zero mode.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import MultiplierEvaluationError, PreconditionError

FORMAT_VERSION = 1


def _check_sizes(sizes):
    if not 1 <= len(sizes) <= 4:
        raise PreconditionError(f"dimension {len(sizes)} outside 1..4")
    for n in sizes:
        if n < 2 or (n & (n - 1)) != 0:
            raise PreconditionError(f"grid size {n} is not a power of two >= 2")


@dataclass(frozen=True)
class GridFunction:
    """Complex samples of a function on the periodic lattice."""

    samples: np.ndarray
    side: float = 1.0

    def __post_init__(self):
        if self.side <= 0:
            raise PreconditionError(f"side length {self.side} must be positive")
        arr = np.ascontiguousarray(self.samples, dtype=np.complex128)
        _check_sizes(arr.shape)
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "side", float(self.side))

    @property
    def sizes(self) -> tuple[int, ...]:
        return self.samples.shape

    @property
    def dim(self) -> int:
        return self.samples.ndim

    @property
    def cell_volume(self) -> float:
        return float(np.prod([self.side / n for n in self.sizes]))

    def with_samples(self, samples) -> "GridFunction":
        return GridFunction(samples, self.side)


def coordinate_axes(sizes, side=1.0):
    """Per-axis sample coordinates j*L/N, j = 0..N-1."""
    return tuple(np.arange(n) * (side / n) for n in sizes)


def l2_norm(f: GridFunction) -> float:
    return float(np.sqrt(f.cell_volume) * np.linalg.norm(f.samples))


def max_norm(f: GridFunction) -> float:
    return float(np.max(np.abs(f.samples)))


def riemann_sum(values, cell_volume: float):
    """Cell-volume-weighted sum; the discrete stand-in for an integral."""
    return cell_volume * np.sum(values)


def dirichlet_energy(f: GridFunction) -> float:
    """Squared L2 norm of the spectral gradient, sum over modes of (2 pi |xi| |f^|)^2."""
    lat = frequency_lattice(f.sizes, f.side)
    spectrum = np.fft.fftn(f.samples, norm="ortho")
    weight = (2.0 * np.pi * lat.xi_abs) ** 2
    return float(f.cell_volume * np.sum(weight * np.abs(spectrum) ** 2))


@dataclass(frozen=True)
class FrequencyLattice:
    sizes: tuple[int, ...]
    side: float
    axes: tuple[np.ndarray, ...]
    xi_abs: np.ndarray


@lru_cache(maxsize=64)
def frequency_lattice(sizes: tuple[int, ...], side: float) -> FrequencyLattice:
    axes = tuple(np.fft.fftfreq(n, d=side / n) for n in sizes)
    mesh = np.meshgrid(*axes, indexing="ij", sparse=True)
    xi_abs = np.sqrt(sum(m**2 for m in mesh))
    xi_abs.flags.writeable = False
    return FrequencyLattice(tuple(sizes), float(side), axes, xi_abs)


@lru_cache(maxsize=64)
def _radial_decomposition(sizes: tuple[int, ...], side: float):
    lat = frequency_lattice(sizes, side)
    radii, inverse = np.unique(lat.xi_abs, return_inverse=True)
    radii.flags.writeable = False
    inverse.flags.writeable = False
    return radii, inverse


def apply_radial_multiplier(f: GridFunction, multiplier, zero_mode) -> GridFunction:
    """Apply the Fourier multiplier m(|xi|) with a pinned value at xi = 0.

    multiplier is called once on the sorted nonzero radii (vectorized when
    possible); any non-finite output aborts with the offending radius named,
    rather than silently corrupting the field.
    """
    radii, inverse = _radial_decomposition(f.sizes, f.side)
    pos = radii[1:]  # radii[0] is the zero mode by construction
    try:
        vals = np.asarray(multiplier(pos), dtype=np.complex128)
        if vals.shape != pos.shape:
            raise TypeError
    except TypeError:
        vals = np.array([multiplier(r) for r in pos], dtype=np.complex128)
    if not np.all(np.isfinite(vals)):
        bad = pos[~np.isfinite(vals)][0]
        raise MultiplierEvaluationError(f"multiplier non-finite at |xi| = {bad}")
    table = np.concatenate(([complex(zero_mode)], vals))
    spectrum = np.fft.fftn(f.samples, norm="ortho")
    spectrum *= table[inverse].reshape(f.sizes)
    return f.with_samples(np.fft.ifftn(spectrum, norm="ortho"))


def plane_wave(k, sizes, side=1.0) -> GridFunction:
    """exp(2*pi*i k.x/L) sampled on the lattice; k an integer mode vector."""
    sizes = tuple(sizes)
    _check_sizes(sizes)
    kvec = np.atleast_1d(np.asarray(k, dtype=int))
    if kvec.shape != (len(sizes),):
        raise PreconditionError(f"mode vector {k} does not match dimension {len(sizes)}")
    for ki, n in zip(kvec, sizes):
        if not -n // 2 <= ki < n // 2:
            raise PreconditionError(f"mode {ki} outside representable range for size {n}")
    axes = coordinate_axes(sizes, side)
    phase = sum(
        ki * ax.reshape((-1,) + (1,) * (len(sizes) - 1 - i))
        for i, (ki, ax) in enumerate(zip(kvec, axes))
    )
    return GridFunction(np.exp(2j * np.pi * phase / side), side)


def _min_image_dist2(sizes, side, center):
    axes = coordinate_axes(sizes, side)
    total = np.zeros(sizes)
    for i, (ax, c) in enumerate(zip(axes, center)):
        d = np.abs(ax - c)
        d = np.minimum(d, side - d)
        total = total + (d**2).reshape((-1,) + (1,) * (len(sizes) - 1 - i))
    return total


def gaussian_bump(center, width, sizes, side=1.0) -> GridFunction:
    """Periodic Gaussian exp(-d(x, center)^2 / (2 width^2)), minimum-image metric."""
    sizes = tuple(sizes)
    _check_sizes(sizes)
    if width <= 0:
        raise PreconditionError("width must be positive")
    center = np.broadcast_to(np.asarray(center, dtype=float), (len(sizes),))
    d2 = _min_image_dist2(sizes, side, center)
    return GridFunction(np.exp(-d2 / (2.0 * width**2)), side)


def random_band_limited(seed, cutoff, sizes, side=1.0, real=False) -> GridFunction:
    """Random field with spectrum supported on integer modes |k| <= cutoff.

    cutoff must leave a margin below the Nyquist index so the band is
    unambiguous on the lattice.
    """
    sizes = tuple(sizes)
    _check_sizes(sizes)
    if not 1 <= cutoff <= min(sizes) // 2 - 1:
        raise PreconditionError(f"cutoff {cutoff} outside [1, {min(sizes) // 2 - 1}]")
    modes = np.meshgrid(
        *(np.fft.fftfreq(n, d=1.0 / n) for n in sizes), indexing="ij", sparse=True
    )
    band = sum(m**2 for m in modes) <= cutoff**2
    rng = np.random.default_rng(seed)
    coeff = rng.standard_normal(sizes) + 1j * rng.standard_normal(sizes)
    coeff *= band
    field = np.fft.ifftn(coeff, norm="ortho")
    if real:
        field = field.real.astype(np.complex128)
    return GridFunction(field, side)


def write_grid_file(f: GridFunction, path) -> None:
    """JSON container with flat row-major [re, im] sample pairs.

    Floats serialize via repr, so read_grid_file round-trips bit-exactly and
    rerunning a writer on identical input yields identical bytes.
    """
    flat = f.samples.ravel()
    pairs = np.empty(2 * flat.size)
    pairs[0::2] = flat.real
    pairs[1::2] = flat.imag
    doc = {
        "format_version": FORMAT_VERSION,
        "dim": f.dim,
        "sizes": list(f.sizes),
        "side": f.side,
        "dtype": "complex",
        "samples": pairs.tolist(),
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def _read_container(path, expect_dtype):
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("format_version") != FORMAT_VERSION:
        raise PreconditionError(f"unsupported format_version {doc.get('format_version')}")
    if doc.get("dtype") != expect_dtype:
        raise PreconditionError(f"expected dtype {expect_dtype!r}, found {doc.get('dtype')!r}")
    sizes = tuple(int(n) for n in doc["sizes"])
    if len(sizes) != int(doc["dim"]):
        raise PreconditionError("dim field disagrees with sizes")
    return doc, sizes


def read_grid_file(path) -> GridFunction:
    doc, sizes = _read_container(path, "complex")
    pairs = np.asarray(doc["samples"], dtype=float)
    if pairs.size != 2 * int(np.prod(sizes)):
        raise PreconditionError("sample count disagrees with sizes")
    samples = (pairs[0::2] + 1j * pairs[1::2]).reshape(sizes)
    return GridFunction(samples, float(doc["side"]))
