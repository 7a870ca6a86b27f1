"""Tensor-product Gauss-Legendre rules on linearly mapped boxes.

The integrands in this package are polynomial x exp(-z^T Q z). The default
box is laid out along the eigenvectors of Q (an orthogonal change of
variables) with per-axis half-widths ``L0 / sqrt(lambda_i)``.
"""

import itertools

import numpy as np

from .errors import ConvergenceError


def envelope_axes(Q):
    """Eigenvalues and orthonormal eigenvectors (columns) of symmetric ``Q``."""
    Q = np.asarray(Q, dtype=float)
    lam, vecs = np.linalg.eigh(0.5 * (Q + Q.T))
    if lam.min() <= 0:
        raise ValueError("envelope quadratic form must be positive definite")
    return lam, vecs


def tensor_rule(func, frame, half_widths, orders, center=None, chunk=500_000):
    """``int func(z) dz`` with ``z = center + frame @ w`` and ``w`` on a box.

    ``w_i`` runs over ``[-half_widths[i], half_widths[i]]`` with ``orders[i]``
    Gauss-Legendre nodes; the Jacobian ``|det frame|`` is applied.
    """
    frame = np.asarray(frame, dtype=float)
    d = frame.shape[1]
    center = np.zeros(frame.shape[0]) if center is None else np.asarray(center, dtype=float)
    nodes, weights = [], []
    for h, n in zip(half_widths, orders):
        t, w = np.polynomial.legendre.leggauss(int(n))
        nodes.append(t * h)
        weights.append(w * h)

    # trailing axes form one vectorized block; leading axes are looped
    split = d
    size = 1
    while split > 0 and size * len(nodes[split - 1]) <= chunk:
        split -= 1
        size *= len(nodes[split])
    tail = list(range(split, d))
    mesh = np.meshgrid(*[nodes[i] for i in tail], indexing="ij")
    tail_pts = np.stack([m.ravel() for m in mesh], axis=-1) if tail else np.zeros((1, 0))
    tail_w = np.ones(len(tail_pts))
    for i, wm in zip(tail, np.meshgrid(*[weights[i] for i in tail], indexing="ij")):
        tail_w = tail_w * wm.ravel()

    total = 0.0
    w_coords = np.empty((len(tail_pts), d))
    w_coords[:, tail] = tail_pts
    for idx in itertools.product(*[range(len(nodes[i])) for i in range(split)]):
        w_lead = 1.0
        for ax, j in enumerate(idx):
            w_coords[:, ax] = nodes[ax][j]
            w_lead *= weights[ax][j]
        pts = center + w_coords @ frame.T
        total += w_lead * float(np.dot(tail_w, func(pts)))
    return total * abs(np.linalg.det(frame))


def integrate(func, Q, center=None, L0=6.0, order=40):
    """Integrate ``func`` over R^d on a box adapted to ``exp(-z^T Q z)``."""
    lam, vecs = envelope_axes(Q)
    orders = [order] * len(lam) if np.isscalar(order) else order
    return tensor_rule(func, vecs, L0 / np.sqrt(lam), orders, center)


def integrate_converged(func, Q, center=None, L0=6.0, order=24, tol=1e-8, max_order=96,
                        stage="quadrature"):
    """Order-doubling wrapper around :func:`integrate`.

    Returns ``(value, error_estimate, order_used)``. Raises ``ConvergenceError``
    if two successive orders still disagree by more than ``tol`` at
    ``max_order``.
    """
    prev = integrate(func, Q, center, L0, order)
    while True:
        order *= 2
        cur = integrate(func, Q, center, L0, order)
        err = abs(cur - prev)
        if err <= tol:
            return cur, err, order
        if order >= max_order:
            raise ConvergenceError(
                f"quadrature not converged: |I_{order} - I_{order // 2}| = {err:.3g} > {tol:g}",
                stage=stage,
            )
        prev = cur
