"""Exact-rational power series for the first-return structure of the walk.

Everything here is about walks on the half line that hit the origin for the
first time at step n.  Their matrix weights, expanded in the orthonormal
matrix basis {P, Q, R, S}, have rational coefficients generated by
(-1 + sqrt(1 + z^4)) / z.  The combined two-sided first-return coefficients
r*_n, generated by (-1 - z^2 + sqrt(1 + z^4)) / z, drive a renewal
convolution that reconstructs the origin amplitude of the defect walk at
every even time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .walk import DomainError, WalkParams

_RENEWAL_MATRIX = np.array([[-1.0, 1.0], [-1.0, -1.0]], dtype=complex)


@dataclass(frozen=True)
class PowerSeries:
    """Truncated formal power series with exact rational coefficients."""

    coeffs: tuple  # Fraction entries, index = power of z

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        if 0 <= n <= self.order:
            return self.coeffs[n]
        raise IndexError(f"coefficient {n} beyond truncation order {self.order}")

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        order = min(self.order, other.order)
        return PowerSeries(
            tuple(self.coeffs[k] + other.coeffs[k] for k in range(order + 1))
        )

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        order = min(self.order, other.order)
        return PowerSeries(
            tuple(self.coeffs[k] - other.coeffs[k] for k in range(order + 1))
        )

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        order = min(self.order, other.order)
        out = [Fraction(0)] * (order + 1)
        for i, ci in enumerate(self.coeffs[: order + 1]):
            if ci == 0:
                continue
            for j in range(order + 1 - i):
                cj = other.coeffs[j]
                if cj != 0:
                    out[i + j] += ci * cj
        return PowerSeries(tuple(out))

    def shift_down(self, k: int = 1) -> "PowerSeries":
        """Divide by z^k; the k lowest coefficients must vanish."""
        if any(c != 0 for c in self.coeffs[:k]):
            raise ValueError("series not divisible by z^k")
        return PowerSeries(self.coeffs[k:])

    def sqrt(self) -> "PowerSeries":
        """Square root with constant term 1 (requires coeffs[0] == 1)."""
        if self.coeffs[0] != 1:
            raise ValueError("sqrt requires constant term 1")
        out = [Fraction(1)] + [Fraction(0)] * self.order
        for n in range(1, self.order + 1):
            s = sum(out[j] * out[n - j] for j in range(1, n))
            out[n] = (self.coeffs[n] - s) / 2
        return PowerSeries(tuple(out))

    @staticmethod
    def from_ints(*vals: int) -> "PowerSeries":
        return PowerSeries(tuple(Fraction(v) for v in vals))


def sqrt1z4_series(N: int) -> PowerSeries:
    """Binomial expansion of (1 + z^4)^(1/2) through z^N."""
    if N < 0:
        raise DomainError(f"N must be >= 0, got {N}")
    out = [Fraction(0)] * (N + 1)
    c = Fraction(1)
    out[0] = c
    k = 1
    while 4 * k <= N:
        c = c * (Fraction(1, 2) - (k - 1)) / k
        out[4 * k] = c
        k += 1
    return PowerSeries(tuple(out))


def rstar(n: int) -> Fraction:
    """Two-sided first-return coefficient r*_n.

    Nonzero only at n = 1 (value -1) and n = 4m - 1, where it equals
    (-1)^(m-1) * (2m-2)! / (2^(2m-1) * (m-1)! * m!).  This closed form is the
    one forced by the generating function (-1 - z^2 + sqrt(1 + z^4)) / z; the
    triple-equivalence tests pin it against both the series expansion and
    direct path enumeration.
    """
    if n <= 0:
        raise DomainError(f"n must be >= 1, got {n}")
    if n == 1:
        return Fraction(-1)
    if n % 4 != 3:
        return Fraction(0)
    m = (n + 1) // 4
    num = (-1) ** (m - 1) * _factorial(2 * m - 2)
    den = 2 ** (2 * m - 1) * _factorial(m - 1) * _factorial(m)
    return Fraction(num, den)


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def rstar_series(N: int) -> PowerSeries:
    """Coefficients of (-1 - z^2 + sqrt(1 + z^4)) / z through z^N."""
    s = sqrt1z4_series(N + 1)
    base = list(s.coeffs)
    base[0] -= 1
    base[2] -= 1
    return PowerSeries(tuple(base)).shift_down(1)


def first_return_series(N: int) -> PowerSeries:
    """Half-line first-return coefficients: (-1 + sqrt(1 + z^4)) / z.

    The mirror half-line series is the coefficientwise negation.
    """
    s = sqrt1z4_series(N + 1)
    base = list(s.coeffs)
    base[0] -= 1
    return PowerSeries(tuple(base)).shift_down(1)


# Integer-scaled step matrices: sqrt(2) * P and sqrt(2) * Q.
_P2 = ((1, 1), (0, 0))
_Q2 = ((0, 0), (1, -1))


def _mat_mul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _mat_add(a, b):
    return (
        (a[0][0] + b[0][0], a[0][1] + b[0][1]),
        (a[1][0] + b[1][0], a[1][1] + b[1][1]),
    )


PATH_ORACLE_MAX_N = 23


def path_oracle_coefficients(n: int) -> tuple:
    """Brute-force expansion of the length-n first-passage matrix sum.

    Enumerates every step sequence that starts at site 1, stays >= 1 until
    time n - 1, and lands on 0 at time n, accumulating the ordered product of
    the half-line step matrices along each path (a pruned depth-first walk of
    the full 2^(n-1) sequence tree, no memoization).  The sum is resolved in
    the orthonormal basis {P, Q, R, S} under <A|B> = tr(A* B); returns the
    four coefficients (p, q, r, s) as exact rationals.
    """
    if not 1 <= n <= PATH_ORACLE_MAX_N:
        raise DomainError(
            f"path enumeration supports 1 <= n <= {PATH_ORACLE_MAX_N}, got {n}"
        )
    if n % 2 == 0:
        # a path from 1 to 0 has odd length; the matrix sum is empty
        return (Fraction(0),) * 4

    ident = ((1, 0), (0, 1))
    total = [((0, 0), (0, 0))]

    def walk(t: int, x: int, prod):
        if t == n:
            if x == 0:
                total[0] = _mat_add(total[0], prod)
            return
        remaining = n - t
        # must be able to reach 0 in the remaining steps
        if x > remaining:
            return
        # left step; leaving the half line is allowed only as the final move
        if x - 1 >= 1 or (x - 1 == 0 and t + 1 == n):
            walk(t + 1, x - 1, _mat_mul(_P2, prod))
        # right step
        if x + 1 <= n - (t + 1):
            walk(t + 1, x + 1, _mat_mul(_Q2, prod))

    walk(0, 1, ident)
    m = total[0]
    # m = sqrt(2)^n * Xi; coefficients of Xi in {P,Q,R,S} pick up 1/sqrt(2)
    # from each basis matrix, so every value is integer / 2^((n+1)/2).
    den = 2 ** ((n + 1) // 2)
    p = Fraction(m[0][0] + m[0][1], den)
    r = Fraction(m[0][0] - m[0][1], den)
    s = Fraction(m[1][0] + m[1][1], den)
    q = Fraction(m[1][0] - m[1][1], den)
    return (p, q, r, s)


def path_oracle_first_return(n: int) -> Fraction:
    """R-coefficient of the first-passage sum; matches first_return_series."""
    return path_oracle_coefficients(n)[2]


def xi_star(n: int, phi: float) -> np.ndarray:
    """Combined first-return matrix at time n for the defect walk.

    Zero for odd n; for even n it is (omega * r*_{n-1} / 2) [[-1,1],[-1,-1]].
    """
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if n % 2 == 1:
        return np.zeros((2, 2), dtype=complex)
    omega = np.exp(2j * np.pi * phi)
    return (omega * float(rstar(n - 1)) / 2.0) * _RENEWAL_MATRIX


def psi_origin_sequence(nmax: int, params: WalkParams) -> list:
    """Origin amplitudes at times 0, 2, ..., 2*nmax via the renewal convolution.

    Psi_{2n}(0) = sum_{a=1}^{n} Xi*_{2a} Psi_{2(n-a)}(0) with Psi_0(0) the
    initial coin state.  This telescopes the sum over return-epoch
    compositions in O(nmax^2) total instead of enumerating them.
    """
    if nmax < 0:
        raise DomainError(f"n must be >= 0, got {nmax}")
    omega = params.omega
    coeff = [omega * float(rstar(2 * a - 1)) / 2.0 for a in range(1, nmax + 1)]
    vecs = [np.array([params.alpha, params.beta], dtype=complex)]
    for k in range(1, nmax + 1):
        acc = np.zeros(2, dtype=complex)
        for a in range(1, k + 1):
            c = coeff[a - 1]
            if c != 0:
                acc += c * vecs[k - a]
        vecs.append(_RENEWAL_MATRIX @ acc)
    return vecs


def psi_origin(n: int, params: WalkParams) -> np.ndarray:
    """Origin amplitude at time 2n via the renewal convolution."""
    return psi_origin_sequence(n, params)[n]
