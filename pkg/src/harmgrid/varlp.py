"""Variable-exponent Lebesgue machinery on the periodic grid.

An exponent field assigns each cell a value p(x) in [1, inf]; the modular
integrates (|f|/lambda)^p(x) over the finite-exponent region and takes an
ess-sup over the rest, and the norm is the Luxemburg infimum. On top of that
sit the diagnostics the boundedness theorems need: log-Holder constants, the
interpolation-style exponent transform onto the L^2 line, and exact-rational
range checks for each theorem's hypothesis window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import PreconditionError
from .grid import GridFunction, _check_sizes, _read_container, FORMAT_VERSION
import json

_SENTINEL = -1.0  # encodes p = inf in files; in memory the samples hold np.inf


@dataclass(frozen=True)
class VariableExponent:
    """Exponent field p(x) on the lattice; np.inf marks the ess-sup region.

    p_infinity is the nominal value at infinity used by the decay diagnostic;
    when omitted it defaults to the mean of the finite samples.
    """

    samples: np.ndarray
    side: float = 1.0
    p_infinity: float | None = None

    def __post_init__(self):
        if self.side <= 0:
            raise PreconditionError(f"side length {self.side} must be positive")
        arr = np.ascontiguousarray(self.samples, dtype=float)
        _check_sizes(arr.shape)
        if np.any(np.isnan(arr)) or np.any(arr < 1.0):
            raise PreconditionError("exponent samples must lie in [1, inf]")
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "side", float(self.side))
        finite = np.isfinite(arr)
        if self.p_infinity is None:
            p_inf = float(np.mean(arr[finite])) if np.any(finite) else np.inf
        else:
            p_inf = float(self.p_infinity)
            if not p_inf >= 1.0:
                raise PreconditionError("p_infinity must lie in [1, inf]")
        object.__setattr__(self, "p_infinity", p_inf)

    @property
    def sizes(self) -> tuple[int, ...]:
        return self.samples.shape

    @property
    def dim(self) -> int:
        return self.samples.ndim

    @property
    def finite_mask(self) -> np.ndarray:
        return np.isfinite(self.samples)

    @property
    def p_minus(self) -> float:
        finite = self.samples[self.finite_mask]
        return float(np.min(finite)) if finite.size else np.inf

    @property
    def p_plus(self) -> float:
        # the essential sup counts the infinite region
        return float(np.max(self.samples))

    @property
    def cell_volume(self) -> float:
        return float(np.prod([self.side / n for n in self.sizes]))


def constant_exponent(value, sizes, side=1.0) -> VariableExponent:
    return VariableExponent(np.full(tuple(sizes), float(value)), side)


def sine_exponent(base, amplitude, sizes, side=1.0) -> VariableExponent:
    """p(x) = base + amplitude*sin(2 pi x_1 / L), varying along the first axis."""
    sizes = tuple(sizes)
    x1 = np.arange(sizes[0]) * (side / sizes[0])
    profile = base + amplitude * np.sin(2.0 * np.pi * x1 / side)
    shape = (sizes[0],) + (1,) * (len(sizes) - 1)
    return VariableExponent(np.broadcast_to(profile.reshape(shape), sizes).copy(), side)


def step_exponent(p_first, p_second, sizes, side=1.0) -> VariableExponent:
    """p_first on the first half of axis 0, p_second on the second half."""
    sizes = tuple(sizes)
    arr = np.full(sizes, float(p_second))
    arr[: sizes[0] // 2] = float(p_first)
    return VariableExponent(arr, side)


def _match_grids(f: GridFunction, p: VariableExponent):
    if f.sizes != p.sizes or f.side != p.side:
        raise PreconditionError(
            f"grid mismatch: field {f.sizes}/{f.side} vs exponent {p.sizes}/{p.side}"
        )


def modular(f: GridFunction, p: VariableExponent, lam: float = 1.0) -> float:
    """rho(f/lam): integral of (|f|/lam)^p over the finite region plus the
    ess-sup of |f|/lam over the p = inf region."""
    _match_grids(f, p)
    if lam <= 0:
        raise PreconditionError("lambda must be positive")
    mag = np.abs(f.samples) / lam
    finite = p.finite_mask
    with np.errstate(over="ignore"):  # inf is a fine answer for a tiny lambda
        total = float(p.cell_volume * np.sum(mag[finite] ** p.samples[finite]))
    if not np.all(finite):
        total += float(np.max(mag[~finite]))
    return total


def luxemburg_norm(f: GridFunction, p: VariableExponent) -> float:
    """inf{lam > 0 : rho(f/lam) <= 1}, located by bracketing and bisection.

    rho is strictly decreasing in lam wherever f is nonzero, so a bracket
    around rho = 1 pins the infimum; the bracket starts at the ess-sup of |f|
    scaled by the volume heuristic and is widened geometrically if needed.
    Bisection runs to 1e-12 relative width, comfortably inside the 1e-10
    contract.
    """
    _match_grids(f, p)
    peak = float(np.max(np.abs(f.samples)))
    if peak == 0.0:
        return 0.0
    vol = p.cell_volume * float(np.prod(p.sizes))
    p_plus = p.p_plus
    scale = 1.0 if np.isinf(p_plus) else vol ** (1.0 / p_plus)
    hi = lo = peak * min(1.0, scale)
    for _ in range(200):
        if modular(f, p, hi) <= 1.0:
            break
        hi *= 2.0
    else:
        raise ArithmeticError("failed to bracket the unit modular from above")
    for _ in range(200):
        if modular(f, p, lo) > 1.0:
            break
        lo /= 2.0
    else:
        raise ArithmeticError("failed to bracket the unit modular from below")
    while hi - lo > 1e-12 * hi:
        mid = 0.5 * (lo + hi)
        if modular(f, p, mid) <= 1.0:
            hi = mid
        else:
            lo = mid
    return hi


def dual_exponent(p: VariableExponent) -> VariableExponent:
    """Pointwise conjugate 1/p + 1/p' = 1, with 1 <-> inf."""
    arr = p.samples
    out = np.empty_like(arr)
    inf_mask = ~np.isfinite(arr)
    one_mask = arr == 1.0
    rest = ~(inf_mask | one_mask)
    out[inf_mask] = 1.0
    out[one_mask] = np.inf
    out[rest] = arr[rest] / (arr[rest] - 1.0)
    if np.isinf(p.p_infinity):
        dual_inf = 1.0
    elif p.p_infinity == 1.0:
        dual_inf = np.inf
    else:
        dual_inf = p.p_infinity / (p.p_infinity - 1.0)
    return VariableExponent(out, p.side, dual_inf)


@dataclass(frozen=True)
class LogHolderConstants:
    c1: float
    c2: float


def log_holder_constants(p: VariableExponent) -> LogHolderConstants:
    """Brute-force moduli of log-continuity and log-decay of 1/p.

    c1 scans every pair closer than 1/2 in the minimum-image metric
    (quadratic cost, so the grid is capped at 64^2 points); c2 measures the
    deviation from 1/p_infinity against log(e + |x|) with coordinates taken
    relative to the box center.
    """
    if not np.all(p.finite_mask):
        raise PreconditionError("log-Holder diagnostics need a finite exponent")
    sizes = p.sizes
    if int(np.prod(sizes)) > 4096:
        raise PreconditionError("brute-force scan capped at 4096 grid points")
    r = 1.0 / p.samples
    side = p.side
    c1 = 0.0
    for offset in np.ndindex(sizes):
        if all(o == 0 for o in offset):
            continue
        d2 = 0.0
        for o, n in zip(offset, sizes):
            step = min(o, n - o) * (side / n)
            d2 += step * step
        dist = np.sqrt(d2)
        if dist >= 0.5:
            continue
        gap = float(np.max(np.abs(r - np.roll(r, offset, axis=tuple(range(len(sizes)))))))
        c1 = max(c1, gap * np.log(np.e + 1.0 / dist))
    centered = [np.arange(n) * (side / n) - side / 2.0 for n in sizes]
    mesh = np.meshgrid(*centered, indexing="ij", sparse=True)
    radius = np.sqrt(sum(m**2 for m in mesh))
    r_inf = 0.0 if np.isinf(p.p_infinity) else 1.0 / p.p_infinity
    c2 = float(np.max(np.abs(r - r_inf) * np.log(np.e + radius)))
    return LogHolderConstants(c1=c1, c2=c2)


@dataclass(frozen=True)
class ExponentTransform:
    """Decomposition data mapping p onto the L^2 line: 1/p = (1-theta)/2 + theta/p_tilde."""

    theta: float
    theta0: float
    delta: float
    r: np.ndarray
    p_tilde: VariableExponent
    alpha: float
    n: int


def exponent_transform(p: VariableExponent, alpha: float, n: int) -> ExponentTransform:
    """Deterministic choice of (theta0, theta, p_tilde) inside the admissible window.

    With r(x) = 1/p(x) - 1/2 and the window half-width W/2 = 1/2 - (1-alpha)/n,
    the range hypothesis puts r strictly inside (-W/2, W/2). delta is half the
    smaller slack, theta0 = delta, theta = W - theta0, and 1/p_tilde = 1/2 + r/theta.
    That keeps |r|/theta < 1/2, so p_tilde stays strictly inside (1, inf), and
    makes the log-continuity modulus of 1/p_tilde exactly that of 1/p over theta.
    """
    if not np.all(p.finite_mask):
        raise PreconditionError("exponent transform needs a finite exponent")
    if not 1.0 - n / 2.0 < alpha < 1.0:
        raise PreconditionError(f"alpha = {alpha} outside (1 - {n}/2, 1)")
    pm, pp = p.p_minus, p.p_plus
    lo = n / (n - 1.0 + alpha)
    hi = n / (1.0 - alpha)
    if not pm > lo:
        raise PreconditionError(f"p_minus = {pm} not above {lo} = n/(n-1+alpha)")
    if not pp < hi:
        raise PreconditionError(f"p_plus = {pp} not below {hi} = n/(1-alpha)")
    r = 1.0 / p.samples - 0.5
    w_half = 0.5 - (1.0 - alpha) / n
    delta = 0.5 * min(float(np.min(r)) + w_half, w_half - float(np.max(r)))
    theta0 = delta
    theta = 2.0 * w_half - theta0
    tilde = 1.0 / (0.5 + r / theta)
    tilde_inf = 1.0 / (0.5 + (1.0 / p.p_infinity - 0.5) / theta)
    p_tilde = VariableExponent(tilde, p.side, tilde_inf)
    r.flags.writeable = False
    return ExponentTransform(
        theta=theta, theta0=theta0, delta=delta, r=r, p_tilde=p_tilde,
        alpha=float(alpha), n=int(n),
    )


@dataclass(frozen=True)
class CheckItem:
    description: str
    passed: bool


@dataclass(frozen=True)
class HypothesisReport:
    claim: str
    passed: bool
    chain: str
    checks: tuple[CheckItem, ...]
    witnesses: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def summary_line(self) -> str:
        return self.chain

    def to_json_dict(self) -> dict:
        return {
            "claim": self.claim,
            "passed": self.passed,
            "chain": self.chain,
            "checks": [{"description": c.description, "passed": c.passed} for c in self.checks],
            "witnesses": {k: v for k, v in self.witnesses.items() if not isinstance(v, VariableExponent)},
            "notes": list(self.notes),
        }


def _g(x) -> str:
    return "%g" % float(x)


_CLAIMS = ("thm32", "thm34", "cor35", "cor36_wave")


def check_bound_hypotheses(p: VariableExponent, alpha: float, n: int, claim: str) -> HypothesisReport:
    """Exact-rational verdict on one theorem's hypothesis window.

    All comparisons run in Fraction arithmetic on the binary values of the
    inputs, so verdicts carry no rounding slop. Failures are report entries,
    never exceptions; every report is labeled a sufficient-condition check
    (membership in the full maximal-boundedness class is not decidable from
    samples).
    """
    if claim not in _CLAIMS:
        raise PreconditionError(f"unknown claim {claim!r}; expected one of {_CLAIMS}")
    pm = Fraction(p.p_minus) if np.isfinite(p.p_minus) else None
    pp = Fraction(p.p_plus) if np.isfinite(p.p_plus) else None
    fa = Fraction(alpha)
    checks: list[CheckItem] = []
    notes = ["sufficient-condition check only"]
    witnesses: dict = {}

    def item(desc, ok):
        checks.append(CheckItem(desc, bool(ok)))
        return bool(ok)

    finite = item("exponent bounded (p_plus < inf)", pp is not None)
    if not finite:
        chain = "fail p_plus = inf"
        return HypothesisReport(claim, False, chain, tuple(checks), witnesses, tuple(notes))

    if claim == "thm32":
        ok_alpha = item(f"1 - n/2 < alpha < 1 (alpha = {_g(alpha)})", Fraction(1) - Fraction(n, 2) < fa < 1)
        lo, hi = (Fraction(n) / (n - 1 + fa), Fraction(n) / (1 - fa)) if ok_alpha else (None, None)
    elif claim == "thm34":
        item(f"n >= 2 (n = {n})", n >= 2)
        ok_alpha = item(f"0 <= alpha < 1 (alpha = {_g(alpha)})", 0 <= fa < 1)
        lo = Fraction(n) / (n - 1 + fa) if ok_alpha else None
        hi = pm * (n - 1 + fa) / (1 - fa) if ok_alpha else None
    elif claim == "cor35":
        item(f"n >= 3 (n = {n})", n >= 3)
        lo, hi = Fraction(n, n - 1) if n >= 2 else None, pm * (n - 1)
        notes.append("order-zero maximal bound; the alpha argument is not used")
    else:  # cor36_wave
        item(f"n >= 2 (n = {n})", n >= 2)
        if n >= 2:
            lo, hi = Fraction(2 * n, n + 1), Fraction(2 * n, n - 1)
        else:
            lo = hi = None
        notes.append("wave range at order (3-n)/2; the underlying estimate is stated for dimension >= 3")

    if lo is not None and hi is not None:
        item(f"{_g(lo)} < p_minus", lo < pm)
        item("p_minus <= p_plus", pm <= pp)
        item(f"p_plus < {_g(hi)}", pp < hi)
        verdict = all(c.passed for c in checks)
        chain = f"{'pass' if verdict else 'fail'} {_g(lo)} < {_g(pm)} <= {_g(pp)} < {_g(hi)}"
    else:
        verdict = False
        chain = f"fail window preconditions for {claim}"

    if verdict and claim == "thm32":
        tr = exponent_transform(p, float(alpha), n)
        witnesses.update(
            theta=tr.theta, theta0=tr.theta0, delta=tr.delta,
            p_tilde_minus=tr.p_tilde.p_minus, p_tilde_plus=tr.p_tilde.p_plus,
        )
    if verdict and claim == "thm34":
        cap = float(min(pm * (n - 1 + fa) / n, pm * (n - 1 + fa) / ((1 - fa) * pp)))
        gamma = 0.5 * (1.0 + cap)
        scale = gamma * n / float(pm * (n - 1 + fa))
        p_bar = VariableExponent(p.samples * scale, p.side, p.p_infinity * scale)
        witnesses.update(
            gamma=gamma, gamma_upper=cap,
            p_bar_minus=p_bar.p_minus, p_bar_plus=p_bar.p_plus, p_bar=p_bar,
        )
    return HypothesisReport(claim, bool(verdict), chain, tuple(checks), witnesses, tuple(notes))


def write_exponent_file(p: VariableExponent, path) -> None:
    """Same JSON container as the field writer, dtype "exponent"; inf -> -1."""
    flat = p.samples.ravel().copy()
    flat[~np.isfinite(flat)] = _SENTINEL
    doc = {
        "format_version": FORMAT_VERSION,
        "dim": p.dim,
        "sizes": list(p.sizes),
        "side": p.side,
        "dtype": "exponent",
        "samples": flat.tolist(),
        "p_infinity": None if np.isinf(p.p_infinity) else p.p_infinity,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def read_exponent_file(path) -> VariableExponent:
    doc, sizes = _read_container(path, "exponent")
    flat = np.asarray(doc["samples"], dtype=float)
    if flat.size != int(np.prod(sizes)):
        raise PreconditionError("sample count disagrees with sizes")
    flat = flat.copy()
    flat[flat == _SENTINEL] = np.inf
    p_inf = doc.get("p_infinity")
    return VariableExponent(
        flat.reshape(sizes), float(doc["side"]),
        np.inf if p_inf is None else float(p_inf),
    )
