"""Laguerre polynomials, oscillator eigenfunctions and log-factorials.

Everything here is evaluated by upward three-term recurrences, which are
stable for the non-negative arguments used in this package (``4|alpha|^2``
and bounded quadrature grids).
"""

import math
from dataclasses import dataclass

import numpy as np

_EXACT_FACTORIAL_MAX = 20


@dataclass(frozen=True)
class LaguerreOrder:
    """Degree ``n`` and association index ``a`` of ``L_n^{(a)}``."""

    n: int
    a: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"Laguerre degree must be a non-negative integer, got {self.n}")
        if int(self.a) != self.a or self.a < 0:
            raise ValueError(f"association index must be a non-negative integer, got {self.a}")


def laguerre(order, x, a=0):
    """Associated Laguerre polynomial ``L_n^{(a)}(x)``.

    Parameters
    ----------
    order : int or LaguerreOrder
        Degree ``n`` (an int) or a full ``LaguerreOrder``; in the latter case
        ``a`` is taken from it.
    x : float or array_like
        Real, finite argument(s).
    a : int, optional
        Association index when ``order`` is a plain int.

    Returns
    -------
    float or ndarray
        Same shape as ``x``.
    """
    if not isinstance(order, LaguerreOrder):
        order = LaguerreOrder(order, a)
    n, a = order.n, order.a
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("laguerre argument must be finite")

    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + a - x
    for j in range(1, n):
        prev, cur = cur, ((2 * j + 1 + a - x) * cur - (j + a) * prev) / (j + 1)
    return cur if cur.ndim else float(cur)


def laguerre_table(nmax, x, a=0):
    """All of ``L_0^{(a)} .. L_nmax^{(a)}`` at ``x``; shape ``(nmax + 1,) + x.shape``."""
    LaguerreOrder(nmax, a)
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = 1.0 + a - x
    for j in range(1, nmax):
        out[j + 1] = ((2 * j + 1 + a - x) * out[j] - (j + a) * out[j - 1]) / (j + 1)
    return out


def oscillator_table(nmax, x):
    """Hermite functions ``phi_0 .. phi_nmax`` at ``x``.

    ``phi_n(x) = H_n(x) exp(-x^2/2) / sqrt(2^n n! sqrt(pi))``, the position
    eigenfunctions of the number states for ``[x, p] = i``.
    """
    if nmax < 0:
        raise ValueError(f"oscillator index must be non-negative, got {nmax}")
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = np.pi**-0.25 * np.exp(-0.5 * x * x)
    if nmax >= 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for n in range(1, nmax):
        out[n + 1] = np.sqrt(2.0 / (n + 1)) * x * out[n] - np.sqrt(n / (n + 1)) * out[n - 1]
    return out


def oscillator_eigenfunction(n, x):
    """Single harmonic-oscillator eigenfunction ``phi_n(x)``."""
    if int(n) != n or n < 0:
        raise ValueError(f"oscillator index must be a non-negative integer, got {n}")
    val = oscillator_table(int(n), x)[-1]
    return val if val.ndim else float(val)


def log_factorial(n):
    """``ln(n!)``; exact integer factorial below 21, ``lgamma`` above."""
    if int(n) != n or n < 0:
        raise ValueError(f"log_factorial needs a non-negative integer, got {n}")
    n = int(n)
    if n <= _EXACT_FACTORIAL_MAX:
        return math.log(math.factorial(n))
    return math.lgamma(n + 1)
