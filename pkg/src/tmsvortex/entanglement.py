"""Entanglement measures on Schmidt-band states ``sum_m c_m |m + k, m>``.

Two coefficient conventions coexist:

``paper_literal``
    ``c_p = tanh^p r sqrt(p + k) / cosh^2 r`` exactly as printed.
``operator_derived``
    ``c_m ~ tanh^m r sqrt((m + k)! / m!)``, the amplitudes of
    ``a^dag^k |xi>``; its squared norm is ``k! cosh^{2k+2} r``.

They coincide for ``k = 1``. Normalization is a separate switch: ``False``
(raw), ``True`` (unit ``sum c^2``), or ``"operator"`` (divide the bare
sequence ``tanh^p r g(p)`` by ``sqrt(k!) cosh^{k+1} r``, the exact norm of
``a^dag^k |xi>``). The last one is what the ratio curve is built on.
"""

from dataclasses import dataclass
from enum import Enum
from math import factorial

import numpy as np
from scipy.special import gammaln

from .errors import ConvergenceError, CutoffError
from .fock import SchmidtState, SqueezeParams

LOG2E = 1.0 / np.log(2.0)


class MeasureKind(str, Enum):
    LOG_NEGATIVITY = "log_negativity"
    LOG_NEGATIVITY_PAPER_LITERAL = "log_negativity_paper_literal"
    NEGATIVITY_RATIO = "negativity_ratio"
    EF_PAPER = "ef_paper"
    ENTROPY_NORMALIZED = "entropy_normalized"


@dataclass(frozen=True)
class CoefficientSource:
    kind: str = "operator_derived"
    normalize: object = True

    def __post_init__(self):
        if self.kind not in ("paper_literal", "operator_derived"):
            raise ValueError(f"unknown coefficient source {self.kind!r}")
        if self.normalize not in (True, False, "operator"):
            raise ValueError("normalize must be True, False or 'operator'")


PAPER_RAW = CoefficientSource("paper_literal", False)
RATIO_CONVENTION = CoefficientSource("paper_literal", "operator")


@dataclass(frozen=True)
class EntanglementCurve:
    r_values: np.ndarray
    values: np.ndarray
    k: int
    measure: str
    source: CoefficientSource = None

    def __post_init__(self):
        r = np.asarray(self.r_values, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if r.shape != v.shape:
            raise ValueError("r_values and values must have equal length")
        if np.any(np.diff(r) <= 0):
            raise ValueError("r_values must be strictly increasing")
        object.__setattr__(self, "r_values", r)
        object.__setattr__(self, "values", v)

    def argmax(self):
        i = int(np.argmax(self.values))
        return float(self.r_values[i]), float(self.values[i])


def _bare_sequence(t, k, kind, n):
    """``tanh^p r * g(p)`` for p in ``n`` (no cosh prefactors)."""
    with np.errstate(divide="ignore"):
        logt = np.log(t) if t > 0 else -np.inf
    p = n.astype(float)
    if kind == "paper_literal":
        log_g = 0.5 * np.log(p + k)
    else:
        log_g = 0.5 * (gammaln(p + k + 1) - gammaln(p + 1))
    with np.errstate(invalid="ignore"):
        log_pow = np.where(n == 0, 0.0, n * logt)
    return np.exp(log_pow + log_g)


def _ratio_bound(t, k, kind, p):
    """Upper bound on ``c_{q+1} / c_q`` for all ``q >= p`` (monotone in q)."""
    if kind == "paper_literal":
        g = np.sqrt((p + k + 1) / (p + k)) if p + k > 0 else np.inf
    else:
        g = np.sqrt((p + k + 1) / (p + 1))
    return t * g


def auto_cutoff(r, k, kind="operator_derived", tol=1e-12, power=2):
    """Smallest N so that the dropped tail of ``sum c^power`` is below ``tol`` (relative)."""
    t = np.tanh(r)
    if t == 0.0:
        return max(1, k)
    # walk outward in doubling steps on a log-scale estimate, then check
    N = max(16, int(np.ceil(np.log(tol) / (power * np.log(t)))))
    while True:
        n = np.arange(N + 2)
        c = _bare_sequence(t, k, kind, n)
        q = _ratio_bound(t, k, kind, N + 1) ** power
        if q < 1:
            tail = c[-1] ** power / (1 - q)
            if tail < tol * np.sum(c[:-1] ** power):
                return N
        N = int(N * 1.5) + 1


def tmsv_coefficients(params, cutoff=None, tol=1e-12):
    """Normalized ``tanh^n r / cosh r`` of the squeezed vacuum."""
    N = auto_cutoff(params.r, 0, "operator_derived", tol, power=1) if cutoff is None else cutoff
    n = np.arange(N + 1)
    c = np.tanh(params.r) ** n / np.cosh(params.r)
    return SchmidtState(0, c / np.sqrt(np.sum(c * c)), True, n * params.theta)


def coefficients(params, k, source=CoefficientSource(), cutoff=None, tol=1e-12):
    """Schmidt coefficient sequence of the k-subtracted state per ``source``."""
    if int(k) != k or k < 0:
        raise ValueError(f"k must be a non-negative integer, got {k}")
    if k == 0:
        # both conventions describe the squeezed vacuum itself
        s = tmsv_coefficients(params, cutoff, tol)
        if source.normalize is not True:
            return SchmidtState(0, s.coefficients, False, s.phases)
        return s
    r, t = params.r, np.tanh(params.r)
    if cutoff is None:
        cutoff = auto_cutoff(r, k, source.kind, tol, power=1)
    n = np.arange(cutoff + 1)
    bare = _bare_sequence(t, k, source.kind, n)
    if t > 0:
        # the summed-amplitude measures need sum c itself converged, not just sum c^2
        nxt = _bare_sequence(t, k, source.kind, np.array([cutoff + 1]))[0]
        q = _ratio_bound(t, k, source.kind, cutoff + 1)
        tail = nxt / (1 - q) if q < 1 else np.inf
        if tail >= tol * np.sum(bare):
            raise CutoffError(
                f"cutoff {cutoff} drops relative tail {tail / np.sum(bare):.3g} >= {tol:g} "
                f"at r={r}, k={k}; use >= {auto_cutoff(r, k, source.kind, tol, power=1)}"
            )
    if source.normalize is True:
        c = bare / np.sqrt(np.sum(bare**2))
        normalized = True
    elif source.normalize == "operator":
        c = bare / (np.sqrt(factorial(k)) * np.cosh(r) ** (k + 1))
        normalized = False
    else:
        c = bare / np.cosh(r) ** 2 if source.kind == "paper_literal" else bare / np.cosh(r)
        normalized = False
    if normalized and abs(np.sum(c * c) - 1) > 1e-12:
        c = c / np.sqrt(np.sum(c * c))
    return SchmidtState(int(k), c, normalized, n * params.theta)


def log_negativity(s, formula="summed_amplitude"):
    """``log2((sum c)^2)`` (pure-state result) or ``log2((sum c^2)^2)`` as printed."""
    c = s.coefficients
    if c.size == 0:
        raise ValueError("empty coefficient list")
    if formula == "summed_amplitude":
        if not s.normalized:
            raise ValueError("summed_amplitude log negativity needs normalized coefficients")
        return max(0.0, 2.0 * np.log2(np.sum(c)))
    if formula == "paper_literal":
        return 2.0 * np.log2(np.sum(c * c))
    raise ValueError(f"unknown formula {formula!r}")


def entanglement_entropy(s):
    """von Neumann entropy ``-sum c^2 log2 c^2`` of the reduced state, in bits."""
    if not s.normalized:
        raise ValueError("entropy needs normalized coefficients")
    p = s.coefficients**2
    p = p[p > 0]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def tmsv_entropy_closed_form(r):
    """``cosh^2 r log2 cosh^2 r - sinh^2 r log2 sinh^2 r``."""
    c2, s2 = np.cosh(r) ** 2, np.sinh(r) ** 2
    return c2 * np.log2(c2) - (s2 * np.log2(s2) if s2 > 0 else 0.0)


def negativity_ratio(params, k, source=None, formula="log_ratio"):
    """``eps_k / eps_0`` with the summed-amplitude log negativity on unit-normalized c.

    ``formula="closed_form"`` returns :func:`ratio_closed_form` instead. A
    ``source`` of None picks each formula's own default convention.
    """
    if params.r <= 0:
        raise ValueError("ratio undefined at r = 0 (both log negativities vanish)")
    if formula == "closed_form":
        return ratio_closed_form(params, k, RATIO_CONVENTION if source is None else source)
    if formula != "log_ratio":
        raise ValueError(f"unknown formula {formula!r}")
    source = CoefficientSource() if source is None else source
    src = CoefficientSource(source.kind, True)
    eps_k = log_negativity(coefficients(params, k, src))
    eps_0 = log_negativity(tmsv_coefficients(params))
    return eps_k / eps_0


def ratio_closed_form(params, k, source=RATIO_CONVENTION):
    """``(sum_n c_n e^{-r})^2``, the printed closed form of the ratio."""
    if params.r <= 0:
        raise ValueError("ratio undefined at r = 0")
    s = coefficients(params, k, source)
    return float((np.sum(s.coefficients) * np.exp(-params.r)) ** 2)


def ef_paper(params, k, cutoff=None, terms=None, tol=1e-12):
    """``(sum_n c_n)(sum_m c_m) * (-sum_p c_p^2 log2 c_p^2)`` on raw printed c's.

    With ``terms=None`` every sum is converged: the cutoff is raised until the
    dropped tails of ``sum c`` and of ``sum |c^2 log2 c^2|`` are below ``tol``
    relative (``CutoffError`` if an explicit ``cutoff`` is too small).
    ``terms=N`` instead sums ``p = 0..N`` and nothing more, a deliberately
    truncated series.
    """
    r = params.r
    t = np.tanh(r)
    if terms is not None:
        n = np.arange(int(terms) + 1)
    else:
        need = auto_cutoff(r, k, "paper_literal", tol, power=1) if t > 0 else max(1, k)
        if cutoff is None:
            cutoff = need
        elif cutoff < need:
            raise CutoffError(f"cutoff {cutoff} too small at r={r}, k={k}; need >= {need}")
        n = np.arange(cutoff + 1)
    c = _bare_sequence(t, k, "paper_literal", n) / np.cosh(r) ** 2
    p = c * c
    nz = p > 0
    ent = -np.sum(p[nz] * np.log2(p[nz]))
    return float(np.sum(c) ** 2 * ent)


_MEASURES = {
    MeasureKind.LOG_NEGATIVITY: lambda p, k, src: log_negativity(
        coefficients(p, k, CoefficientSource(src.kind, True))),
    MeasureKind.LOG_NEGATIVITY_PAPER_LITERAL: lambda p, k, src: log_negativity(
        coefficients(p, k, src), "paper_literal"),
    MeasureKind.NEGATIVITY_RATIO: negativity_ratio,
    MeasureKind.EF_PAPER: lambda p, k, src, **kw: ef_paper(p, k, **kw),
    MeasureKind.ENTROPY_NORMALIZED: lambda p, k, src: entanglement_entropy(
        coefficients(p, k, CoefficientSource(src.kind, True))),
}


def measure_value(measure, params, k, source=CoefficientSource()):
    return _MEASURES[MeasureKind(measure)](params, k, source)


def scan(measure, params_template, k, r_grid, source=CoefficientSource(), **options):
    """Evaluate ``measure`` at every r of ``r_grid`` (strictly increasing, positive).

    Extra keyword ``options`` are forwarded to the measure (e.g. ``formula``).
    """
    r_grid = np.asarray(r_grid, dtype=float)
    if np.any(r_grid <= 0) or np.any(np.diff(r_grid) <= 0):
        raise ValueError("r_grid must be positive and strictly increasing")
    fn = _MEASURES[MeasureKind(measure)]
    vals = np.empty_like(r_grid)
    for i, r in enumerate(r_grid):
        try:
            vals[i] = fn(params_template.with_r(r), k, source, **options)
        except (CutoffError, ConvergenceError, ValueError, OverflowError) as exc:
            raise ConvergenceError(f"{measure} failed at r={r:g}: {exc}", stage="scan") from exc
    return EntanglementCurve(r_grid, vals, int(k), MeasureKind(measure).value, source)


def refine_argmax(fn, curve, factor=10):
    """Re-locate the maximum of ``fn(r)`` on a ``factor``-times finer grid
    spanning one coarse step either side of the curve's argmax."""
    r = curve.r_values
    i = int(np.argmax(curve.values))
    lo, hi = r[max(i - 1, 0)], r[min(i + 1, len(r) - 1)]
    step = (r[1] - r[0]) / factor if len(r) > 1 else 0.0
    fine = np.arange(lo, hi + 0.5 * step, step) if step > 0 else np.array([r[i]])
    vals = np.array([fn(x) for x in fine])
    j = int(np.argmax(vals))
    return float(fine[j]), float(vals[j])


__all__ = [
    "CoefficientSource",
    "EntanglementCurve",
    "MeasureKind",
    "PAPER_RAW",
    "RATIO_CONVENTION",
    "SqueezeParams",
    "auto_cutoff",
    "coefficients",
    "ef_paper",
    "entanglement_entropy",
    "log_negativity",
    "measure_value",
    "negativity_ratio",
    "ratio_closed_form",
    "refine_argmax",
    "scan",
    "tmsv_coefficients",
    "tmsv_entropy_closed_form",
]
