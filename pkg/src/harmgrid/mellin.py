"""Radial symbol of the spherical mean and its Mellin decomposition.

The symbol at radius lam >= 0 is

    F(lam) = pi^(1-alpha) * lam^(1-n/2-alpha) * J_nu(2*pi*lam),   nu = n/2+alpha-1,

continuous at 0 with F(0) = pi^(n/2)/Gamma(n/2+alpha). Subtracting the
Gaussian anchor F(0)*exp(-lam^2) leaves a remainder F* that vanishes at both
ends of (0, inf) and therefore has an absolutely convergent Mellin expansion

    F*(lam) = integral A(u) lam^(iu) du,
    A(u) = (1/2pi) integral F*(e^s) e^(-ius) ds.

A(u) is computed two independent ways: a closed form assembled from
log-gamma (a_alpha_closed) and direct oscillatory quadrature of the defining
integral (a_alpha_quadrature). Their agreement, and the inversion check in
mellin_reconstruct, are the module's internal consistency tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import PreconditionError

_LOG_PI = np.log(np.pi)


def _psi(k: int, x: float) -> float:
    import scipy.special as _sc

    return float(_sc.polygamma(k, x)) if k else float(_sc.digamma(x))


@dataclass(frozen=True)
class MultiplierSpec:
    """Order/dimension pair for one radial symbol.

    alpha may sit anywhere in the closed window [1-n/2, 1]; the endpoints
    occur in the wave reductions (alpha = (3-n)/2 hits 1 at n = 1) and keep
    the Bessel order nu = n/2+alpha-1 >= -1/2.
    """

    alpha: float
    n: int

    def __post_init__(self):
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 1):
            raise PreconditionError(f"dimension {self.n} must be a positive integer")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "alpha", float(self.alpha))
        # the profile needs Bessel order nu = n/2 + alpha - 1 >= -1/2;
        # theorem windows are narrower and checked where theorems are used
        lo = (1.0 - self.n) / 2.0
        if not lo <= self.alpha <= 1.0:
            raise PreconditionError(
                f"alpha = {self.alpha} outside [{lo}, 1] for n = {self.n}"
            )

    @property
    def a(self) -> float:
        return self.alpha + self.n / 2.0

    @property
    def nu(self) -> float:
        return self.n / 2.0 + self.alpha - 1.0

    @property
    def value_at_zero(self) -> float:
        """F(0) = pi^(n/2)/Gamma(n/2+alpha), the total mass of the kernel."""
        return float(np.pi ** (self.n / 2.0) / specfun.gamma(self.a))


def f_alpha(lam, spec: MultiplierSpec):
    """The radial symbol F(lam) for lam >= 0 (scalar or array)."""
    arr = np.asarray(lam, dtype=float)
    if np.any(arr < 0.0):
        raise PreconditionError("radius must be >= 0")
    out = np.full(arr.shape, spec.value_at_zero)
    nz = arr > 0.0
    if np.any(nz):
        x = arr[nz]
        out[nz] = (
            np.pi ** (1.0 - spec.alpha)
            * x ** (1.0 - spec.n / 2.0 - spec.alpha)
            * specfun.bessel_j(spec.nu, 2.0 * np.pi * x)
        )
    if np.isscalar(lam) or arr.ndim == 0:
        return float(out[()] if out.ndim == 0 else out)
    return out


def f_star(lam, spec: MultiplierSpec):
    """Gaussian-anchored remainder F(lam) - F(0) exp(-lam^2); vanishes at 0."""
    arr = np.asarray(lam, dtype=float)
    out = f_alpha(arr, spec) - spec.value_at_zero * np.exp(-(arr**2))
    if np.isscalar(lam) or arr.ndim == 0:
        return float(out)
    return out


def _expm1_complex(z):
    # exp(z) - 1 without cancellation for small |z|; the cos-1 piece is
    # rewritten as a square so every term carries full relative accuracy.
    x, y = z.real, z.imag
    return (
        np.expm1(x) * np.cos(y)
        - 2.0 * np.sin(y / 2.0) ** 2
        + 1j * np.exp(x) * np.sin(y)
    )


def a_alpha_closed(u, spec: MultiplierSpec):
    """Mellin coefficient function A(u), assembled from log-gamma values.

    A(u) = (pi^(n/2-1)/4) * Gamma(-iu/2) * [pi^(iu)/Gamma(a+iu/2) - 1/Gamma(a)],
    a = alpha + n/2. The simple pole of Gamma(-iu/2) at u = 0 cancels against
    the bracket's zero; for |u| <= 8 that cancellation is taken exactly via
    Gamma(1-iu/2)/(-iu/2) and a complex expm1 of the phase difference, and at
    u = 0 the digamma limit (pi^(n/2-1)/4) (psi(a) - 2 log pi)/Gamma(a) is
    returned. For larger |u| the terms are combined in log space, where the
    exponentially small factors cancel between numerator and denominator.
    """
    arr = np.asarray(u, dtype=float)
    a = spec.a
    pref = np.pi ** (spec.n / 2.0 - 1.0) / 4.0
    log_ga = specfun.log_gamma(a)
    out = np.empty(arr.shape, dtype=complex)

    small = np.abs(arr) <= 8.0
    if np.any(small):
        us = arr[small]
        z = 0.5j * us
        # log Gamma(a+z) - log Gamma(a): the direct difference loses relative
        # accuracy once |z| is tiny, so below |u| = 1e-3 it is replaced by its
        # quartic Taylor polynomial in z (truncation < 1e-18 there).
        tiny = np.abs(us) <= 1e-3
        diff = np.where(
            tiny,
            z * (_psi(0, a) + z * (_psi(1, a) / 2 + z * (_psi(2, a) / 6 + z * _psi(3, a) / 24))),
            specfun.log_gamma(a + np.where(tiny, 1.0, z)) - log_ga,
        )
        dphi = 1j * us * _LOG_PI - diff
        bracket = np.exp(-log_ga) * _expm1_complex(dphi)
        g1 = np.exp(specfun.log_gamma(1.0 - z))
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = pref * g1 * bracket / (-z)
        limit = pref * (specfun.digamma(a) - 2.0 * _LOG_PI) * np.exp(-log_ga)
        out[small] = np.where(us == 0.0, complex(limit), vals)

    big = ~small
    if np.any(big):
        ub = arr[big]
        log_gm = specfun.log_gamma(-0.5j * ub)
        t1 = np.exp(log_gm + 1j * ub * _LOG_PI - specfun.log_gamma(a + 0.5j * ub))
        # t2 underflows once |u| is large; it is exponentially smaller than t1,
        # so flushing to zero there is the correct limit.
        with np.errstate(under="ignore"):
            t2 = np.exp(log_gm - log_ga)
        out[big] = pref * (t1 - t2)

    if np.isscalar(u) or arr.ndim == 0:
        return complex(out[()] if out.ndim == 0 else out)
    return out


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    tail_bound: float
    warning: str | None = None


def a_alpha_quadrature(
    u: float,
    spec: MultiplierSpec,
    s_max: float = 20.0,
    steps: int = 200_000,
    tol: float = 1e-3,
) -> QuadratureResult:
    """A(u) by trapezoid quadrature of (1/2pi) int F*(e^s) e^(-ius) ds.

    Restricted to the window where the truncated integral is trustworthy:
    |u| <= 20 and (n-1)/2 + alpha >= 1, which makes the integrand decay at
    least like e^(-s) on the right. tail_bound combines the analytic
    truncation tails with a Richardson estimate of the trapezoid
    discretization error (factor-4 safety margin); the warning field is set
    when that bound exceeds tol.
    """
    if abs(u) > 20.0:
        raise PreconditionError(f"|u| = {abs(u)} outside the validated window [0, 20]")
    beta = (spec.n - 1) / 2.0 + spec.alpha
    if beta < 1.0:
        raise PreconditionError(
            f"(n-1)/2 + alpha = {beta} < 1; quadrature window not validated there"
        )
    if s_max <= 0.0:
        raise PreconditionError("s_max must be positive")
    if steps < 16 or steps % 2:
        raise PreconditionError("steps must be an even integer >= 16")

    s = np.linspace(-s_max, s_max, steps + 1)
    lam = np.exp(s)
    g = f_star(lam, spec) * np.exp(-1j * u * s) / (2.0 * np.pi)
    h = 2.0 * s_max / steps
    value = np.trapezoid(g, dx=h)
    coarse = np.trapezoid(g[::2], dx=2.0 * h)
    discretization = 4.0 * (4.0 / 3.0) * abs(value - coarse)

    f0 = spec.value_at_zero
    # |F(lam)| <= pi^(-alpha) lam^(-beta) from the Bessel envelope sqrt(2/(pi x)).
    right = np.pi ** (-spec.alpha) * np.exp(-beta * s_max) / beta
    big_lam = np.exp(s_max)
    right += f0 * np.exp(-big_lam**2) / (2.0 * big_lam**2)
    # |F*(lam)| <= C2 lam^2 near zero: both lam^2 Taylor coefficients, summed.
    c2 = f0 * (np.pi**2 / spec.a + 1.0)
    left = c2 * np.exp(-2.0 * s_max) / 2.0
    tail = (right + left) / (2.0 * np.pi)

    bound = float(tail + discretization)
    warning = None
    if bound > tol:
        warning = f"error bound {bound:.3e} exceeds tol {tol:.3e}"
    return QuadratureResult(complex(value), bound, warning)


def mellin_reconstruct(
    lam: float,
    spec: MultiplierSpec,
    u_max: float = 200.0,
    du: float = 0.01,
) -> float:
    """Invert the expansion: trapezoid of A(u) lam^(iu) over a symmetric grid.

    The grid is symmetric about u = 0 so conjugate symmetry cancels the
    imaginary part structurally; a residual above 1e-8 signals a broken
    evaluator and raises.
    """
    if lam <= 0.0:
        raise PreconditionError("radius must be positive")
    if u_max <= 0.0 or du <= 0.0 or du > u_max:
        raise PreconditionError("need 0 < du <= u_max")
    m = int(round(u_max / du))
    grid = np.linspace(-m * du, m * du, 2 * m + 1)
    vals = a_alpha_closed(grid, spec) * np.exp(1j * grid * np.log(lam))
    integral = np.trapezoid(vals, dx=du)
    if abs(integral.imag) > 1e-8:
        raise ArithmeticError(
            f"inversion lost conjugate symmetry: imaginary part {integral.imag:.3e}"
        )
    return float(integral.real)


def decay_exponent_fit(
    spec: MultiplierSpec,
    u_lo: float = 100.0,
    u_hi: float = 1000.0,
    points: int = 200,
) -> float:
    """Least-squares slope of log|A(u)| against log u on a geometric grid.

    The expansion coefficients decay polynomially with rate -(alpha + n/2);
    the fitted slope should land within a tenth of that.
    """
    if not 0.0 < u_lo < u_hi:
        raise PreconditionError("need 0 < u_lo < u_hi")
    if points < 2:
        raise PreconditionError("need at least two sample points")
    u = np.geomspace(u_lo, u_hi, points)
    mag = np.abs(a_alpha_closed(u, spec))
    slope = np.polyfit(np.log(u), np.log(mag), 1)[0]
    return float(slope)


@dataclass(frozen=True)
class IntegrabilityReport:
    """Decay bookkeeping for the composed coefficient-times-norm-growth bound.

    The product decays like u^exponent with
    exponent = -alpha - n/2 + theta n/2 + theta delta; the integral over u
    converges iff exponent < -1.
    """

    alpha: float
    n: int
    theta: float
    delta: float
    exponent: float
    integrable: bool


def integrability_report(alpha, n, theta, delta) -> IntegrabilityReport:
    exponent = -alpha - n / 2.0 + theta * n / 2.0 + theta * delta
    return IntegrabilityReport(
        alpha=float(alpha),
        n=int(n),
        theta=float(theta),
        delta=float(delta),
        exponent=float(exponent),
        integrable=bool(exponent < -1.0),
    )


@dataclass(frozen=True)
class MellinTable:
    spec: MultiplierSpec
    u: np.ndarray
    values: np.ndarray
    method: str


def build_mellin_table(spec: MultiplierSpec, u_values, method: str = "closed", **quad_kw) -> MellinTable:
    u = np.asarray(u_values, dtype=float)
    if method == "closed":
        vals = a_alpha_closed(u, spec)
    elif method == "quadrature":
        vals = np.array([a_alpha_quadrature(x, spec, **quad_kw).value for x in u])
    else:
        raise PreconditionError(f"unknown method {method!r}")
    return MellinTable(spec=spec, u=u, values=np.asarray(vals), method=method)


def write_mellin_table(tables, path, comment: str) -> None:
    """CSV with one leading comment line (configuration) and a header row.

    Accepts one table or a sequence (e.g. closed and quadrature blocks in one
    file). Floats are written with repr so identical runs produce identical
    bytes.
    """
    if isinstance(tables, MellinTable):
        tables = [tables]
    lines = [f"# {comment}", "u,re_a,im_a,abs_a,method,alpha,n"]
    for table in tables:
        for ui, vi in zip(table.u, table.values):
            vi = complex(vi)
            lines.append(
                f"{float(ui)!r},{vi.real!r},{vi.imag!r},{abs(vi)!r},"
                f"{table.method},{table.spec.alpha!r},{table.spec.n}"
            )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
