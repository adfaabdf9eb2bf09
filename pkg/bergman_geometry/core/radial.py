# core/radial.py

"""
Diagonal (radial) geometry of one-dimensional factors by truncated Taylor arithmetic.

On the diagonal K(z, z) = f(x) with x = |z|^2, and every quantity of the form
d dbar log F equals (x F'/F)' in the variable x. Carrying Taylor coefficients in x
through products, quotients and that operator gives values and x-derivatives of
the metric, its curvature and the tilde metric on whole arrays of points at once.
"""

import math
from typing import Optional, Tuple

import numpy as np

from .domains import DomainSpec, Truncation
from .kernel import series_derivatives


def taylor_coefficients(factor: DomainSpec, x: np.ndarray, order: int,
                        trunc: Truncation = Truncation()) -> np.ndarray:
    """Coefficients f^(m)(x)/m!, m = 0..order, shape (order+1, N)."""
    x = np.asarray(x, dtype=float)
    derivs, _ = series_derivatives(factor, x, order, trunc)
    scale = np.array([math.factorial(m) for m in range(order + 1)], dtype=float)
    return np.real(derivs) / scale.reshape((-1,) + (1,) * x.ndim)


def _mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    size = min(a.shape[0], b.shape[0])
    out = np.zeros((size,) + a.shape[1:])
    for k in range(size):
        for i in range(k + 1):
            out[k] += a[i] * b[k - i]
    return out


def _div(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    size = min(a.shape[0], b.shape[0])
    out = np.zeros((size,) + a.shape[1:])
    for k in range(size):
        acc = a[k].copy()
        for i in range(1, k + 1):
            acc -= b[i] * out[k - i]
        out[k] = acc / b[0]
    return out


def _deriv(a: np.ndarray) -> np.ndarray:
    k = np.arange(1, a.shape[0]).reshape((-1,) + (1,) * (a.ndim - 1))
    return k * a[1:]


def _times_x(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    out = x * a
    out[1:] += a[:-1]
    return out


def log_laplacian(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Series of (x (log F)')' from the series of F; one order shorter."""
    return _deriv(_times_x(_div(_deriv(a), a[:-1]), x))


def bergman_profile(factor: DomainSpec, x: np.ndarray, trunc: Truncation = Truncation(),
                    gradient: bool = False) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """Metric density T(x) and, on request, dT/dx."""
    x = np.asarray(x, dtype=float)
    series = log_laplacian(taylor_coefficients(factor, x, 3 if gradient else 2, trunc), x)
    return series[0], (series[1] if gradient else None)


def curvature_profile(
    factor: DomainSpec,
    x: np.ndarray,
    trunc: Truncation = Truncation(),
    gradient: bool = False,
) -> Tuple[np.ndarray, np.ndarray, Optional[np.ndarray], Optional[np.ndarray]]:
    """
    Metric density and Lambda = d dbar log T on the diagonal.

    Returns:
        (T, Lambda, dT/dx, dLambda/dx); the derivatives are None unless gradient=True.
        Ricci curvature is -Lambda and the tilde density in dimension n is (n+1)T + Lambda.
    """
    x = np.asarray(x, dtype=float)
    metric = log_laplacian(taylor_coefficients(factor, x, 5 if gradient else 4, trunc), x)
    lam = log_laplacian(metric, x)
    if gradient:
        return metric[0], lam[0], metric[1], lam[1]
    return metric[0], lam[0], None, None


def defect_series(factor: DomainSpec, x: np.ndarray, order: int,
                  trunc: Truncation = Truncation()) -> np.ndarray:
    """Series of h = f (x f')' - x f'^2, the diagonal determinant K K_11 - K_1 K_1bar."""
    x = np.asarray(x, dtype=float)
    f = taylor_coefficients(factor, x, order + 2, trunc)
    df = _deriv(f)
    g = _deriv(_times_x(df, x))
    return _mul(f, g) - _times_x(_mul(df, df), x)[: g.shape[0]]


def tilde_profile_direct(factor: DomainSpec, x: np.ndarray,
                         trunc: Truncation = Truncation()) -> np.ndarray:
    """One-dimensional tilde density d dbar log h computed straight from h."""
    x = np.asarray(x, dtype=float)
    return log_laplacian(defect_series(factor, x, 2, trunc), x)[0]
