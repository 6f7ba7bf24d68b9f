"""Gamma and Bessel evaluations used by the radial symbols.

Thin validation layer over scipy.special: the toolkit needs principal-branch
log-gamma on the complex plane (imaginary powers live on the line Re z = 0,
where naive gamma overflows/underflows long before the quantities of interest
do) and Bessel J of real order >= -1/2 on the half-line. Everything downstream
composes these two.
"""

from __future__ import annotations

import numpy as np
import scipy.special as _sc

from .errors import GammaPoleError, PreconditionError

__all__ = ["log_gamma", "gamma", "bessel_j", "digamma"]


def _first_pole(z):
    re = np.real(z)
    im = np.imag(z)
    on_axis = im == 0.0
    at_int = re == np.floor(re)
    pole = on_axis & at_int & (re <= 0.0)
    if np.any(pole):
        return np.asarray(re)[pole].flat[0]
    return None


def log_gamma(z):
    """Principal branch of log Gamma.

    Accepts scalars or arrays. Nonpositive-integer inputs raise
    GammaPoleError naming the offending point; negative non-integer reals
    are promoted to complex so the branch is taken instead of returning nan.
    """
    arr = np.asarray(z)
    bad = _first_pole(arr)
    if bad is not None:
        raise GammaPoleError(bad)
    if not np.iscomplexobj(arr) and np.any(arr < 0.0):
        arr = arr.astype(complex)
    out = _sc.loggamma(arr)
    if np.isscalar(z) or arr.ndim == 0:
        return out[()] if isinstance(out, np.ndarray) else out
    return out


def gamma(z):
    """Gamma via exp(log_gamma); inherits the pole handling."""
    return np.exp(log_gamma(z))


def digamma(x):
    """Logarithmic derivative of Gamma (real arguments)."""
    arr = np.asarray(x, dtype=float)
    bad = _first_pole(arr)
    if bad is not None:
        raise GammaPoleError(bad)
    return _sc.digamma(x)


def bessel_j(nu, x):
    """Bessel function of the first kind, order nu >= -1/2, argument x >= 0.

    The order floor matches the range where the radial symbols below are
    defined; there is no analytic need for anything smaller and the
    oscillatory cancellation gets worse there, so it is rejected outright.
    """
    if nu < -0.5:
        raise PreconditionError(f"bessel order {nu} below -1/2")
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0):
        raise PreconditionError("bessel argument must be >= 0")
    out = _sc.jv(nu, arr)
    if np.isscalar(x) or arr.ndim == 0:
        return float(out)
    return out
