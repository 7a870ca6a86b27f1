"""Closed-form quadrature wavefunctions: polynomial x fixed complex Gaussian.

The two-mode squeezed vacuum in position space is

    Psi(x, y) = exp(Q(x, y)) / sqrt((1 - eta^2) pi cosh^2 r),
    Q(x, y)   = [2 x y eta - (x^2 + y^2) eta^2] / (1 - eta^2) - (x^2 + y^2) / 2,

with ``eta = e^{i theta} tanh r``. Applying ``(x - d/dx)`` keeps the Gaussian
and only changes the polynomial, so every photon-subtracted state is an exact
``PolyGauss``.
"""

from dataclasses import dataclass

import numpy as np

from . import _quadrature
from .fock import SqueezeParams


@dataclass(frozen=True)
class QuadraturePoint:
    x: float
    y: float

    def __post_init__(self):
        if not (np.isfinite(self.x) and np.isfinite(self.y)):
            raise ValueError("quadrature point must be finite")


@dataclass(frozen=True)
class PolyGauss:
    """``prefactor * sum_ij poly[i, j] x^i y^j * exp(Q(x, y))``."""

    prefactor: complex
    eta: complex
    poly: np.ndarray
    k: int = 0

    def __post_init__(self):
        if not abs(self.eta) < 1:
            raise ValueError(f"|eta| must be < 1, got {abs(self.eta)}")
        poly = np.array(self.poly, dtype=complex, ndmin=2)
        poly.setflags(write=False)
        object.__setattr__(self, "poly", poly)

    @property
    def degree(self):
        nz = np.argwhere(np.abs(self.poly) > 0)
        return int(nz.sum(axis=1).max()) if len(nz) else 0

    def quad_form(self, x, y):
        eta = self.eta
        s = x * x + y * y
        return (2 * x * y * eta - s * eta**2) / (1 - eta**2) - 0.5 * s

    def polynomial(self, x, y):
        """The bare polynomial factor (Horner in x, then y)."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape, dtype=complex)
        for i in range(self.poly.shape[0] - 1, -1, -1):
            row = np.zeros_like(out)
            for j in range(self.poly.shape[1] - 1, -1, -1):
                row = row * y + self.poly[i, j]
            out = out * x + row
        return out

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        val = self.prefactor * self.polynomial(x, y) * np.exp(self.quad_form(x, y))
        return val if val.ndim else complex(val)

    def scaled(self, factor):
        return PolyGauss(self.prefactor * factor, self.eta, self.poly, self.k)

    def conjugate(self):
        """Pointwise complex conjugate (x, y are real)."""
        return PolyGauss(np.conj(self.prefactor), np.conj(self.eta), np.conj(self.poly), self.k)

    def intensity_form(self):
        """Positive-definite ``M`` with ``|exp(Q)|^2 = exp(-[x y] M [x y]^T)``."""
        eta = self.eta
        a = np.real(-(eta**2) / (1 - eta**2)) - 0.5
        b = np.real(eta / (1 - eta**2))
        return -2.0 * np.array([[a, b], [b, a]])

    def norm(self, L0=7.0, order=64):
        """L2 norm by Gauss-Legendre quadrature along the envelope's axes."""
        M = self.intensity_form()

        def dens(pts):
            return np.abs(self(pts[:, 0], pts[:, 1])) ** 2

        # |P|^2 raises the effective width; L0 = 7 keeps the tail < 1e-12 for k <= 6
        return np.sqrt(_quadrature.integrate(dens, M, None, L0 + 0.5 * self.k, order))

    def normalized(self, **kw):
        return self.scaled(1.0 / self.norm(**kw))


def evaluate(pg, pt):
    return pg(pt.x, pt.y)


def _sqrt_principal(z):
    return np.sqrt(complex(z))


def tmsv_wavefunction(params):
    """Position-space wavefunction of the two-mode squeezed vacuum."""
    eta = params.eta
    pref = 1.0 / _sqrt_principal((1 - eta**2) * np.pi * np.cosh(params.r) ** 2)
    return PolyGauss(pref, eta, np.ones((1, 1)), 0)


def _apply_raising(poly, eta):
    """``P -> (2x - 2 eta (y - eta x)/(1 - eta^2)) P - dP/dx`` on a coefficient table."""
    n = poly.shape[0]
    out = np.zeros((n + 1, n + 1), dtype=complex)
    cx = 2.0 / (1 - eta**2)
    cy = -2.0 * eta / (1 - eta**2)
    out[1:, :n] += cx * poly
    out[:n, 1:] += cy * poly
    i = np.arange(1, n)[:, None]
    out[: n - 1, :n] -= i * poly[1:, :]
    return out


def subtracted_wavefunction(params, k):
    """``e^{ik theta} / (2^{k/2} cosh r) * (x - d/dx)^k Psi_tmsv``, unnormalized as printed."""
    if int(k) != k or k < 0:
        raise ValueError(f"k must be a non-negative integer, got {k}")
    base = tmsv_wavefunction(params)
    poly = np.ones((1, 1), dtype=complex)
    for _ in range(int(k)):
        poly = _apply_raising(poly, params.eta)
    if k == 0:
        return base
    pref = base.prefactor * np.exp(1j * k * params.theta) / (2 ** (k / 2) * np.cosh(params.r))
    return PolyGauss(pref, params.eta, poly, int(k))


def single_subtracted_closed_form(params, x, y):
    """Direct expression of the one-photon-subtracted wavefunction.

    sqrt(2) e^{i theta} (x - eta y) / ((1 - eta^2)^{3/2} sqrt(pi) cosh^2 r) * exp(Q)
    """
    eta = params.eta
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    one_m = complex(1 - eta**2)
    s = x * x + y * y
    q = (2 * x * y * eta - s * eta**2) / one_m - 0.5 * s
    return (
        np.sqrt(2.0) * np.exp(1j * params.theta) * (x - eta * y)
        / (one_m**1.5 * np.sqrt(np.pi) * np.cosh(params.r) ** 2)
        * np.exp(q)
    )


def exact_norm_sq(params, k):
    """``||Psi_k||^2 = k! cosh^{2k-2} r`` for the printed (unnormalized) state.

    Follows from ``Psi_k = e^{ik theta} / cosh r * a^dag^k Psi`` and
    ``||a^dag^k |xi>||^2 = k! cosh^{2k} r``; the k = 0 state is normalized.
    """
    from math import factorial

    if k == 0:
        return 1.0
    return factorial(k) * np.cosh(params.r) ** (2 * k - 2)


def zero_radius_bound(pg):
    """Radius enclosing every real zero of a subtracted-state polynomial.

    The polynomial is ``lambda^{k/2} H_k(sqrt(lambda) u)`` with
    ``u = x - eta y`` and ``lambda = 1/(1 - eta^2)``; Hermite zeros satisfy
    ``|h| < sqrt(2k + 1)``, and ``|x - eta y| >= s_min |(x, y)|``.
    """
    if pg.k == 0:
        return 1.0
    eta = pg.eta
    u_max = np.sqrt(2 * pg.k + 1) * abs(np.sqrt(complex(1 - eta**2)))
    A = np.array([[1.0, -eta.real], [0.0, -eta.imag]])
    s_min = np.linalg.svd(A, compute_uv=False).min()
    if s_min < 1e-12:
        return np.inf
    return u_max / s_min


def intensity_phase_grid(pg, grid):
    """``(|Psi|^2, arg Psi)`` on ``grid``; arrays indexed ``[ix, iy]``."""
    X, Y = grid.mesh()
    psi = pg(X, Y)
    return np.abs(psi) ** 2, np.angle(psi)


__all__ = [
    "PolyGauss",
    "QuadraturePoint",
    "SqueezeParams",
    "evaluate",
    "exact_norm_sq",
    "intensity_phase_grid",
    "single_subtracted_closed_form",
    "subtracted_wavefunction",
    "tmsv_wavefunction",
    "zero_radius_bound",
]
