"""Phase-singularity detection by plaquette winding numbers.

Charges are counted positive for counterclockwise circulation in the
``(x, y)`` plane. For ``PolyGauss`` inputs only the polynomial factor is
sampled: the Gaussian is nonvanishing and single-valued, so it contributes no
winding, and skipping it avoids underflow far from the origin.
"""

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ConvergenceError
from .grid import GridSpec
from .states import PolyGauss, QuadraturePoint, zero_radius_bound

ZERO_TOL = 1e-14
NON_VORTEX = "non-vortex zero manifold"


@dataclass(frozen=True)
class Singularity:
    location: QuadraturePoint
    charge: int

    def __post_init__(self):
        if self.charge == 0:
            raise ValueError("a singularity must carry nonzero charge")


@dataclass(frozen=True)
class ChargeResult:
    singularities: list = dc_field(default_factory=list)
    total_charge: int = 0
    boundary_charge: int = 0
    flag: str = ""
    grid: GridSpec = None

    @property
    def count(self):
        return len(self.singularities)


def _wrap(d):
    return (d + np.pi) % (2 * np.pi) - np.pi


def _winding_from_values(vals):
    """Winding of a closed sequence of complex samples (last joins first)."""
    vals = np.asarray(vals, dtype=complex)
    if np.any(np.abs(vals) <= ZERO_TOL):
        raise ValueError("field vanishes on the contour; perturb the contour")
    ph = np.angle(vals)
    total = np.sum(_wrap(np.diff(np.append(ph, ph[0])))) / (2 * np.pi)
    n = int(np.rint(total))
    if abs(total - n) > 1e-6:
        raise ValueError(f"winding sum {total} is not an integer")
    return n


def winding_number(field, loop):
    """Winding of ``field`` around ``loop``, a closed list of ``(i, j)`` indices.

    The contour is closed implicitly (last vertex connects to the first).
    """
    field = np.asarray(field)
    idx = np.asarray(loop, dtype=int)
    if idx.ndim != 2 or idx.shape[1] != 2 or len(idx) < 3:
        raise ValueError("loop must be a sequence of at least three (i, j) pairs")
    return _winding_from_values(field[idx[:, 0], idx[:, 1]])


def boundary_loop(nx, ny):
    """Counterclockwise index contour along the edge of an ``nx`` by ``ny`` array."""
    bottom = [(i, 0) for i in range(nx - 1)]
    right = [(nx - 1, j) for j in range(ny - 1)]
    top = [(i, ny - 1) for i in range(nx - 1, 0, -1)]
    left = [(0, j) for j in range(ny - 1, 0, -1)]
    return bottom + right + top + left


def _sampler(pg):
    if isinstance(pg, PolyGauss):
        pref = pg.prefactor
        return lambda X, Y: pref * pg.polynomial(X, Y)
    return pg


def _has_zero_lines(vals):
    v = vals.ravel()
    i = int(np.argmax(np.abs(v)))
    if abs(v[i]) == 0:
        return True
    u = v * np.conj(v[i]) / abs(v[i])
    if float(np.max(np.abs(u.imag))) > 1e-12 * float(np.max(np.abs(u))):
        return False
    # a real field without a sign change has no zeros at all
    return bool(np.any(u.real < 0))


def _plaquettes(vals):
    """Per-cell winding (shape ``(nx-1, ny-1)``) and max edge jump magnitude."""
    ph = np.angle(vals)
    dx = _wrap(np.diff(ph, axis=0))  # (nx-1, ny)
    dy = _wrap(np.diff(ph, axis=1))  # (nx, ny-1)
    circ = dx[:, :-1] + dy[1:, :] - dx[:, 1:] - dy[:-1, :]
    w = np.rint(circ / (2 * np.pi)).astype(int)
    return w, max(np.abs(dx).max(), np.abs(dy).max())


def _scan(sample, grid, shift):
    hx = (grid.x_range[1] - grid.x_range[0]) / (grid.nx - 1)
    hy = (grid.y_range[1] - grid.y_range[0]) / (grid.ny - 1)
    X, Y = grid.mesh()
    X = X + shift * hx
    Y = Y + shift * hy
    vals = sample(X, Y)
    if np.any(np.abs(vals) <= ZERO_TOL):
        return None
    w, jump = _plaquettes(vals)
    if jump > np.pi - 1e-3:
        return None
    ii, jj = np.nonzero(w)
    sings = [
        Singularity(QuadraturePoint(float(X[i, j] + 0.5 * hx), float(Y[i, j] + 0.5 * hy)), int(w[i, j]))
        for i, j in zip(ii, jj)
    ]
    bc = winding_number(vals, boundary_loop(grid.nx, grid.ny))
    return sings, bc, vals


def _scan_shifted(sample, grid):
    # an exact zero on a vertex or an edge straddling a zero makes phases ambiguous
    for shift in (0.0, 0.137, 0.311, 0.419):
        out = _scan(sample, grid, shift)
        if out is not None:
            return out
    raise ConvergenceError("no lattice offset avoids an ambiguous phase jump", stage="vortex-scan")


def _same(a, b, h):
    if len(a) != len(b):
        return False
    used = set()
    for s in a:
        match = None
        for j, t in enumerate(b):
            if j in used or t.charge != s.charge:
                continue
            if abs(t.location.x - s.location.x) <= 2 * h and abs(t.location.y - s.location.y) <= 2 * h:
                match = j
                break
        if match is None:
            return False
        used.add(match)
    return True


def locate_singularities(pg, grid=GridSpec(), max_doublings=4):
    """Plaquette-winding scan of ``pg`` on ``grid``, refined until stable.

    A field that is real up to a global phase has line zeros rather than
    point vortices; it is reported with no singularities and
    ``flag == "non-vortex zero manifold"``.
    """
    sample = _sampler(pg)
    X, Y = grid.mesh()
    probe = sample(X, Y)
    if _has_zero_lines(probe):
        return ChargeResult([], 0, 0, NON_VORTEX, grid)

    sings, bc, _ = _scan_shifted(sample, grid)
    current = grid
    for _ in range(max_doublings):
        finer = current.refined(2)
        f_sings, f_bc, _ = _scan_shifted(sample, finer)
        h = (current.x_range[1] - current.x_range[0]) / (current.nx - 1)
        if _same(sings, f_sings, h) and bc == f_bc:
            total = sum(s.charge for s in sings)
            return ChargeResult(sings, total, bc, "", current)
        sings, bc, current = f_sings, f_bc, finer
    raise ConvergenceError(
        f"singularity set still changing after {max_doublings} grid doublings", stage="vortex-refine"
    )


def circle_loop(radius, n=256, center=(0.0, 0.0)):
    t = 2 * np.pi * np.arange(n) / n
    return np.column_stack([center[0] + radius * np.cos(t), center[1] + radius * np.sin(t)])


def square_loop(half_width, center=(0.0, 0.0)):
    cx, cy = center
    h = half_width
    return np.array([[cx - h, cy - h], [cx + h, cy - h], [cx + h, cy + h], [cx - h, cy + h]])


def _densify(vertices, per_edge):
    v = np.asarray(vertices, dtype=float)
    nxt = np.roll(v, -1, axis=0)
    s = np.arange(per_edge) / per_edge
    pts = v[:, None, :] + s[None, :, None] * (nxt - v)[:, None, :]
    return pts.reshape(-1, 2)


def total_charge(pg, loop=None, max_points=1 << 20):
    """Winding of ``pg`` around a closed polygon in the ``(x, y)`` plane.

    ``loop`` is an ``(M, 2)`` array of vertices (counterclockwise), a radius,
    or ``None`` for a square enclosing every zero by the analytic bound.
    Edges are subdivided until no sampled phase step exceeds ``pi / 4``.
    """
    sample = _sampler(pg)
    if loop is None:
        R = zero_radius_bound(pg) if isinstance(pg, PolyGauss) else np.inf
        if not np.isfinite(R):
            raise ValueError("no finite zero bound; supply an explicit loop")
        loop = square_loop(1.5 * R + 0.5)
    elif np.isscalar(loop):
        loop = circle_loop(float(loop), 64)
    vertices = np.asarray(loop, dtype=float)
    per_edge = 16
    while True:
        pts = _densify(vertices, per_edge)
        vals = sample(pts[:, 0], pts[:, 1])
        ph = np.angle(vals)
        if np.all(np.abs(vals) > ZERO_TOL):
            steps = np.abs(_wrap(np.diff(np.append(ph, ph[0]))))
            if steps.max() < np.pi / 4:
                return _winding_from_values(vals)
        else:
            raise ValueError("field vanishes on the contour; perturb the contour")
        per_edge *= 2
        if per_edge * len(vertices) > max_points:
            raise ConvergenceError("contour phase steps did not resolve", stage="total-charge")


__all__ = [
    "ChargeResult",
    "GridSpec",
    "NON_VORTEX",
    "Singularity",
    "boundary_loop",
    "circle_loop",
    "locate_singularities",
    "square_loop",
    "total_charge",
    "winding_number",
]
