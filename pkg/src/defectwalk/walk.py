"""Exact unitary evolution of the one-defect Hadamard walk on the integer line.

The coin is the Hadamard matrix everywhere except at the origin, where it
carries an extra phase omega = exp(2*pi*i*phi).  The walker starts at the
origin with a normalized two-component coin state.  This module provides the
state type, single-step evolution, instantaneous measures, return
probabilities, and time-averaged measures.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SQRT2 = np.sqrt(2.0)

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / SQRT2


class DomainError(ValueError):
    """Raised when a parameter is outside its admissible range."""


@dataclass(frozen=True)
class WalkParams:
    """Defect phase and initial coin state.

    ``phi`` lives in [0, 1); phi = 0 is the homogeneous Hadamard baseline.
    The coin state (alpha, beta) must be normalized to 1 within 1e-12.
    """

    phi: float
    alpha: complex
    beta: complex

    def __post_init__(self):
        if not 0.0 <= self.phi < 1.0:
            raise DomainError(f"phi must lie in [0, 1), got {self.phi}")
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise DomainError(
                f"initial coin state not normalized: |alpha|^2+|beta|^2 = {norm}"
            )

    @property
    def omega(self) -> complex:
        return np.exp(2j * np.pi * self.phi)

    @classmethod
    def preset(cls, eta: int, phi: float) -> "WalkParams":
        """Symmetric initial state [1/sqrt2, eta*i/sqrt2] with eta = +1 or -1."""
        if eta not in (1, -1):
            raise DomainError(f"eta must be +1 or -1, got {eta}")
        return cls(phi=phi, alpha=1 / SQRT2, beta=eta * 1j / SQRT2)


@dataclass(frozen=True)
class WalkState:
    """Finite-support amplitude field.

    ``amps[i]`` is the (left, right) chirality pair at site ``offset + i``.
    Support is always contained in [-time, time]; sites with x + time odd
    carry exact zeros.
    """

    offset: int
    amps: np.ndarray  # shape (nsites, 2), complex128
    time: int

    def amplitude(self, x: int) -> np.ndarray:
        """Amplitude pair at site x (zero outside the stored support)."""
        i = x - self.offset
        if 0 <= i < len(self.amps):
            return self.amps[i].copy()
        return np.zeros(2, dtype=complex)

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))


@dataclass(frozen=True)
class Measure:
    """Nonnegative site weights with integer offset."""

    offset: int
    values: np.ndarray

    def at(self, x: int) -> float:
        i = x - self.offset
        if 0 <= i < len(self.values):
            return float(self.values[i])
        return 0.0

    def total(self) -> float:
        return float(np.sum(self.values))


def coin_at(x: int, phi: float) -> np.ndarray:
    """Coin matrix at site x: Hadamard, times exp(2*pi*i*phi) at the origin."""
    if not 0.0 <= phi < 1.0:
        raise DomainError(f"phi must lie in [0, 1), got {phi}")
    if x == 0:
        return np.exp(2j * np.pi * phi) * _HADAMARD
    return _HADAMARD.copy()


def initial_state(params: WalkParams) -> WalkState:
    amps = np.array([[params.alpha, params.beta]], dtype=complex)
    return WalkState(offset=0, amps=amps, time=0)


def step(state: WalkState, params: WalkParams) -> WalkState:
    """One walk update: coin everywhere, then chirality-conditioned shift.

    The left component of the coined state moves one site left, the right
    component one site right; total mass is preserved.
    """
    ell = state.amps[:, 0]
    arr = state.amps[:, 1]
    # Hadamard rows applied sitewise.
    a = (ell + arr) / SQRT2
    b = (ell - arr) / SQRT2
    i0 = -state.offset
    if 0 <= i0 < len(a):
        omega = params.omega
        a = a.copy()
        b = b.copy()
        a[i0] *= omega
        b[i0] *= omega
    n = len(a)
    out = np.zeros((n + 2, 2), dtype=complex)
    out[:n, 0] = a       # left-movers land at x-1
    out[2:, 1] = b       # right-movers land at x+1
    return WalkState(offset=state.offset - 1, amps=out, time=state.time + 1)


def evolve(params: WalkParams, n: int) -> WalkState:
    """State after n steps from the origin."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    state = initial_state(params)
    for _ in range(n):
        state = step(state, params)
    return state


def measure(state: WalkState) -> Measure:
    values = np.sum(np.abs(state.amps) ** 2, axis=1)
    return Measure(offset=state.offset, values=values)


def return_probability(params: WalkParams, n: int) -> float:
    """Probability of finding the walker at the origin at time n."""
    return measure(evolve(params, n)).at(0)


def time_average(params: WalkParams, T: int, xmax: int) -> Measure:
    """Average of the site measures over times 0 .. T-1, restricted to |x| <= xmax.

    Runs a single evolution, accumulating running sums; no re-evolution per T.
    """
    if T < 1:
        raise DomainError(f"T must be >= 1, got {T}")
    if xmax < 0:
        raise DomainError(f"xmax must be >= 0, got {xmax}")
    acc = np.zeros(2 * xmax + 1)
    state = initial_state(params)
    for t in range(T):
        if t > 0:
            state = step(state, params)
        mu = np.sum(np.abs(state.amps) ** 2, axis=1)
        # overlap of the support [offset, offset+len-1] with [-xmax, xmax]
        lo = max(state.offset, -xmax)
        hi = min(state.offset + len(mu) - 1, xmax)
        if lo <= hi:
            acc[lo + xmax : hi + xmax + 1] += mu[lo - state.offset : hi - state.offset + 1]
    return Measure(offset=-xmax, values=acc / T)
