"""Truncated two-mode Fock space: squeezed vacuum, ladder operators, heralding.

This is the brute-force side of every closed-form check in the package.
Mode ``a`` is the signal (first array axis), mode ``b`` the idler.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .errors import CutoffError
from .specfun import oscillator_table


def _canonical_angle(theta):
    # map into (-pi, pi]
    t = float(np.mod(theta + np.pi, 2 * np.pi) - np.pi)
    return np.pi if t == -np.pi else t


@dataclass(frozen=True)
class SqueezeParams:
    """Squeezing magnitude ``r >= 0`` and phase ``theta`` of ``xi = r e^{i theta}``."""

    r: float
    theta: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.r) or self.r < 0:
            raise ValueError(f"squeezing magnitude r must be finite and >= 0, got {self.r}")
        if not np.isfinite(self.theta):
            raise ValueError("squeezing phase must be finite")
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "theta", _canonical_angle(self.theta))

    @property
    def eta(self):
        """Complex two-mode correlation ``e^{i theta} tanh r``."""
        return np.exp(1j * self.theta) * np.tanh(self.r)

    def with_r(self, r):
        return SqueezeParams(r, self.theta)


@dataclass(frozen=True)
class FockState2:
    """Dense two-mode amplitudes ``amplitudes[n_a, n_b]``, ``0 <= n <= cutoff``.

    ``tail_bound`` bounds the probability weight discarded by the truncation.
    ``empty`` marks the flagged zero vector returned by failed heralding or by
    annihilating the vacuum.
    """

    cutoff: int
    amplitudes: np.ndarray
    tail_bound: float = 0.0
    empty: bool = False

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        n = self.cutoff + 1
        if self.cutoff < 1 or amps.shape != (n, n):
            raise ValueError(f"amplitudes must have shape ({n}, {n}) for cutoff {self.cutoff}")
        if self.tail_bound < 0:
            raise ValueError("tail_bound must be non-negative")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm_sq(self):
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    @classmethod
    def basis(cls, n_a, n_b, cutoff):
        amps = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
        amps[n_a, n_b] = 1.0
        return cls(cutoff, amps)

    def embed(self, cutoff):
        """Zero-pad to a larger cutoff."""
        if cutoff < self.cutoff:
            raise ValueError("embed only enlarges the cutoff")
        amps = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
        amps[: self.cutoff + 1, : self.cutoff + 1] = self.amplitudes
        return FockState2(cutoff, amps, self.tail_bound, self.empty)


@dataclass(frozen=True)
class SchmidtState:
    """Band-diagonal bipartite state ``sum_m c_m e^{i m phase} |m + k, m>``.

    ``coefficients`` are non-negative; the relative phase ramp sits in
    ``phases`` (radians per index) and never enters a measure.
    """

    k: int
    coefficients: np.ndarray
    normalized: bool = False
    phases: np.ndarray = field(default=None, compare=False)

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=float)
        if self.k < 0:
            raise ValueError("photon-number offset k must be >= 0")
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficient sequence must be a non-empty 1-D array")
        if np.any(c < 0):
            raise ValueError("Schmidt coefficients must be non-negative")
        if self.normalized and abs(np.sum(c * c) - 1.0) > 1e-12:
            raise ValueError("coefficients flagged normalized but sum c^2 != 1")
        object.__setattr__(self, "coefficients", c)
        if self.phases is None:
            object.__setattr__(self, "phases", np.zeros_like(c))

    def normalize(self):
        c = self.coefficients / np.sqrt(np.sum(self.coefficients**2))
        return SchmidtState(self.k, c, True, self.phases)


@dataclass(frozen=True)
class HeraldConfig:
    """Cascade of ``stages`` beam splitters, each followed by an ideal
    single-photon projection of its ancilla port."""

    transmittance: float = 0.99
    stages: int = 1
    ancilla_cutoff: int = 2

    def __post_init__(self):
        if not (0.0 < self.transmittance <= 1.0):
            raise ValueError(f"transmittance must lie in (0, 1], got {self.transmittance}")
        if self.stages < 1:
            raise ValueError("stages must be >= 1")
        if self.ancilla_cutoff < 1:
            raise ValueError("ancilla register must hold at least one photon")


def suggest_cutoff(r, k=0, tol=1e-10):
    """Smallest ``N`` with ``tanh^{2(N+1)} r * (N + k)^k < tol``."""
    t2 = np.tanh(r) ** 2
    if t2 == 0.0:
        return max(1, k)
    n = 1
    while t2 ** (n + 1) * float(n + k) ** k >= tol:
        n += 1
    return n


def tmsv(params, cutoff, tol=1e-6):
    """Two-mode squeezed vacuum ``sum_n e^{i n theta} tanh^n r / cosh r |n, n>``."""
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    t = np.tanh(params.r)
    tail = t ** (2 * (cutoff + 1))
    if tail > tol:
        raise CutoffError(
            f"cutoff {cutoff} leaves tail {tail:.3g} > {tol:g} at r={params.r}; "
            f"try suggest_cutoff -> {suggest_cutoff(params.r, 0, tol)}"
        )
    n = np.arange(cutoff + 1)
    amps = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    amps[n, n] = np.exp(1j * n * params.theta) * t**n / np.cosh(params.r)
    return FockState2(cutoff, amps, float(tail))


def normalize(state):
    """Unit-norm copy of ``state``; empty states come back unchanged."""
    nrm = np.sqrt(state.norm_sq)
    if nrm == 0.0:
        return FockState2(state.cutoff, state.amplitudes, state.tail_bound, True)
    return FockState2(state.cutoff, state.amplitudes / nrm, state.tail_bound / nrm**2, state.empty)


def apply_ladder(state, mode, kind, count=1, overflow_tol=1e-12):
    """Apply ``a``/``a^dagger`` (or ``b``/``b^dagger``) ``count`` times.

    The result is not renormalized. Creation that would push more than
    ``overflow_tol`` of probability weight past the cutoff raises
    ``CutoffError``; smaller spill is dropped and folded into ``tail_bound``.
    Annihilating the vacuum returns the flagged empty state.
    """
    if mode not in ("a", "b"):
        raise ValueError(f"mode must be 'a' or 'b', got {mode!r}")
    if kind not in ("create", "annihilate"):
        raise ValueError(f"kind must be 'create' or 'annihilate', got {kind!r}")
    if count < 1:
        raise ValueError("count must be >= 1")

    N = state.cutoff
    amps = np.array(state.amplitudes)
    if mode == "b":
        amps = amps.T
    n = np.arange(N + 1)[:, None]
    spill = 0.0
    for _ in range(count):
        out = np.zeros_like(amps)
        if kind == "create":
            spill += float(np.sum(np.abs(amps[N]) ** 2)) * (N + 1)
            out[1:] = np.sqrt(n[1:]) * amps[:-1]
        else:
            out[:-1] = np.sqrt(n[1:]) * amps[1:]
        amps = out
    if spill > overflow_tol:
        raise CutoffError(
            f"creation pushes {spill:.3g} probability past cutoff {N}; raise the cutoff"
        )
    if mode == "b":
        amps = amps.T

    growth = float(np.prod(np.arange(N + 1, N + count + 1, dtype=float)))
    tail = (state.tail_bound + spill) * growth
    empty = not np.any(amps)
    return FockState2(N, amps, tail, empty or state.empty)


@lru_cache(maxsize=64)
def _herald_kernel(transmittance, cutoff):
    """Amplitude ``<n-1|_a <1|_c U |n>_a |0>_c`` for ``n = 0..cutoff``.

    ``U = exp(phi (a^dag c - a c^dag))`` with ``cos phi = sqrt(T)``, built
    exactly inside each fixed-total-photon block.
    """
    phi = np.arccos(np.sqrt(transmittance))
    kern = np.zeros(cutoff + 1)
    for s in range(1, cutoff + 1):
        # block basis |s - j>_a |j>_c, j = 0..s
        j = np.arange(s + 1)
        gen = np.zeros((s + 1, s + 1))
        # a^dag c: |s-j, j> -> sqrt(s-j+1) sqrt(j) |s-j+1, j-1>
        gen[j[1:] - 1, j[1:]] += np.sqrt(s - j[1:] + 1) * np.sqrt(j[1:])
        # -a c^dag: |s-j, j> -> -sqrt(s-j) sqrt(j+1) |s-j-1, j+1>
        gen[j[:-1] + 1, j[:-1]] -= np.sqrt(s - j[:-1]) * np.sqrt(j[:-1] + 1)
        kern[s] = expm(phi * gen)[1, 0]
    return kern


def herald_subtract(state, config, mode="a"):
    """Heralded photon subtraction from ``mode`` through ``config.stages`` splitters.

    Returns ``(conditioned_state, success_probability)``. A zero heralding
    probability gives ``(flagged empty state, 0.0)``.
    """
    if abs(state.norm_sq - 1.0) > 1e-10:
        raise ValueError("herald_subtract expects a normalized input state")
    kern = _herald_kernel(float(config.transmittance), state.cutoff)
    amps = np.array(state.amplitudes)
    if mode == "b":
        amps = amps.T
    prob = 1.0
    for _ in range(config.stages):
        out = np.zeros_like(amps)
        out[:-1] = kern[1:, None] * amps[1:]
        p = float(np.sum(np.abs(out) ** 2))
        if p <= 1e-300:
            empty = FockState2(state.cutoff, np.zeros_like(amps), state.tail_bound, True)
            return empty, 0.0
        prob *= p
        amps = out / np.sqrt(p)
    if mode == "b":
        amps = amps.T
    return FockState2(state.cutoff, amps, state.tail_bound / prob), prob


def schmidt_coefficients(state, tol=1e-10):
    """Read the Schmidt form off a state supported on one photon-number band.

    A band ``n_a - n_b = -k`` (surplus in mode ``b``) is accepted and reported
    with offset ``k``; every measure is symmetric under exchanging the modes.
    """
    amps = state.amplitudes
    total = state.norm_sq
    if total == 0.0:
        raise ValueError("cannot take Schmidt coefficients of the zero vector")
    N = state.cutoff
    for offset in range(-N, N + 1):
        band = np.diagonal(amps, offset=-offset)
        if total - float(np.sum(np.abs(band) ** 2)) < tol * total:
            break
    else:
        raise ValueError("state is not supported on a single photon-number band")
    c = np.abs(band)
    c = c / np.sqrt(np.sum(c * c))
    phases = np.angle(band)
    return SchmidtState(abs(offset), c, True, phases)


def fidelity(x, y):
    """``|<x|y>|^2`` of two normalized states with the same cutoff."""
    if x.cutoff != y.cutoff:
        raise ValueError(f"cutoff mismatch: {x.cutoff} vs {y.cutoff}")
    ov = np.vdot(x.amplitudes, y.amplitudes)
    return float(min(1.0, abs(ov) ** 2))


def wavefunction_from_fock(state, x, y):
    """Position-space wavefunction ``sum A[n_a, n_b] phi_{n_a}(x) phi_{n_b}(y)``.

    ``x`` and ``y`` broadcast against each other; the result has their
    broadcast shape.
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    shape = x.shape
    N = state.cutoff
    phx = oscillator_table(N, x.ravel())
    phy = oscillator_table(N, y.ravel())
    vals = np.einsum("ip,ij,jp->p", phx, state.amplitudes, phy)
    return vals.reshape(shape) if shape else complex(vals[0])
