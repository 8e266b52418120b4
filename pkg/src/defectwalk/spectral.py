"""Generating-function spectral apparatus for the defect walk.

The at-origin resolvent of the walk is a 2x2 matrix series whose denominator
L0(z) = 1 - sqrt(2) w f(z) + w^2 f(z)^2  (w = exp(2*pi*i*phi)) has simple
zeros on the unit circle.  Those zeros carry the point-mass (localized) part
of the time-averaged measure: each contributes the squared norm of the
corresponding residue.  This module computes f(z), the decay factor
lambda(z), the singular points with closed-form placement plus Newton
polishing, and the numeric residue norms at the origin.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .series import sqrt1z4_series
from .walk import DomainError

SQRT2 = math.sqrt(2.0)

BRANCH_EPS_PLUS = "eps_plus"    # f(z) = exp(-i(2*pi*phi + pi/4)) root family
BRANCH_EPS_MINUS = "eps_minus"  # f(z) = exp(-i(2*pi*phi - pi/4)) root family


@dataclass(frozen=True)
class SpectralPoint:
    """One unit-circle zero of L0 and its residue data.

    ``branch`` is "eps_plus:+", "eps_plus:-", "eps_minus:+" or "eps_minus:-"
    (root family and sign of the antipodal pair).  ``lambda_sq`` is the
    geometric decay factor |lambda(e^{i theta_s})|^2 of the measure away from
    the origin; ``residue_prefactor`` is |Res(1/L0)|^2 = 1/(2|1 + d(phi~)/d
    theta|^2) at the point.
    """

    theta_s: float
    branch: str
    lambda_sq: float
    residue_prefactor: float

    @property
    def z(self) -> complex:
        return cmath.exp(1j * self.theta_s)


def f_tilde(z: complex) -> complex:
    """f(z) = (z^2 + 1 - sqrt(z^4 + 1)) / sqrt(2), principal branch from f(0)=0.

    The principal square root is continuous on the closed unit disk except at
    the four branch points z^4 = -1, where z^4 + 1 vanishes.
    """
    z = complex(z)
    return (z * z + 1 - cmath.sqrt(z ** 4 + 1)) / SQRT2


def f_tilde_deriv(z: complex) -> complex:
    """d f / dz = sqrt(2) z (1 - z^2 / sqrt(z^4 + 1))."""
    z = complex(z)
    return SQRT2 * z * (1 - z * z / cmath.sqrt(z ** 4 + 1))


def lambda_tilde(z: complex) -> complex:
    """lambda(z) = z / (f(z) - sqrt(2)); |f| <= 1 on the closed disk keeps the
    denominator away from zero."""
    f = f_tilde(z)
    d = f - SQRT2
    assert abs(d) > 0.1, "f(z) approached sqrt(2) inside the closed disk"
    return complex(z) / d


def lambda_sq_circle(theta: float) -> float:
    """|lambda(e^{i theta})|^2 = 3 - 4 cos^2 - 2 sqrt(2) |sin| sqrt(1 - 2 cos^2).

    Valid on the band 2 sin^2 theta >= 1 where |f| = 1.
    """
    c = math.cos(theta)
    s = math.sin(theta)
    band = 1 - 2 * c * c
    if band < -1e-12:
        raise DomainError("circle formula needs 2 sin^2(theta) >= 1")
    return 3 - 4 * c * c - 2 * SQRT2 * abs(s) * math.sqrt(max(band, 0.0))


def phi_tilde(theta: float) -> float:
    """Phase lag of f on the circle: f(e^{i theta}) = e^{i(theta + phi~)}.

    Defined on the band 2 sin^2 theta >= 1 by cos(phi~) = sqrt(2) cos(theta),
    sin(phi~) = sgn(sin theta) sqrt(2 sin^2 theta - 1).
    """
    s = math.sin(theta)
    band = 2 * s * s - 1
    if band < -1e-12:
        raise DomainError("phi~ needs 2 sin^2(theta) >= 1")
    # sin(theta) = 0 would put theta outside the band, so sgn is well defined
    assert abs(s) > 1e-12
    sgn = 1.0 if s > 0 else -1.0
    return math.atan2(sgn * math.sqrt(max(band, 0.0)), SQRT2 * math.cos(theta))


def phi_tilde_deriv(theta: float) -> float:
    """d(phi~)/d theta = sqrt(2) sin(theta) / (sgn(sin theta) sqrt(2 sin^2 - 1))."""
    s = math.sin(theta)
    band = 2 * s * s - 1
    if band <= 0:
        raise DomainError("phi~ derivative needs 2 sin^2(theta) > 1")
    sgn = 1.0 if s > 0 else -1.0
    return SQRT2 * s / (sgn * math.sqrt(band))


def big_lambda0(z: complex, phi: float) -> complex:
    """L0(z) = 1 - sqrt(2) w f(z) + w^2 f(z)^2 with w = exp(2*pi*i*phi).

    Factors as (1 - w f e^{i pi/4})(1 - w f e^{-i pi/4}), so zeros sit where
    w f(z) = e^{+-i pi/4}.
    """
    w = cmath.exp(2j * math.pi * phi)
    f = f_tilde(z)
    return 1 - SQRT2 * w * f + (w * f) ** 2


def big_lambda0_deriv(z: complex, phi: float) -> complex:
    """dL0/dz = (-sqrt(2) w + 2 w^2 f(z)) f'(z)."""
    w = cmath.exp(2j * math.pi * phi)
    return (-SQRT2 * w + 2 * w * w * f_tilde(z)) * f_tilde_deriv(z)


def _polish_root(theta: float, phi: float, iters: int = 8) -> float:
    """Newton refinement of theta -> L0(e^{i theta}) toward a circle zero."""
    for _ in range(iters):
        z = cmath.exp(1j * theta)
        h = big_lambda0(z, phi)
        hp = big_lambda0_deriv(z, phi) * 1j * z
        if hp == 0:
            break
        delta = (h / hp).real
        theta -= delta
        if abs(delta) < 1e-15:
            break
    return theta


def _branch_points(eps: float) -> list:
    """Appendix-style closed form: both antipodal (cos, sin) pairs for one
    root-family angle eps."""
    den = math.sqrt(3 - 2 * SQRT2 * math.cos(eps))
    c = math.sin(eps) / den
    s = (math.cos(eps) - SQRT2) / den
    return [(c, s, "+"), (-c, -s, "-")]


def singular_points(phi: float) -> list:
    """Unit-circle zeros of L0 (at most four), with residue prefactors.

    The eps_plus family (angle 2*pi*phi + pi/4) exists for phi in (0, 3/4);
    the eps_minus family (angle 2*pi*phi - pi/4) for phi in (1/4, 1) --
    exactly where the corresponding point-mass weight is positive.  Each
    closed-form point is polished by Newton iteration and must satisfy
    |L0(e^{i theta_s})| <= 1e-10.
    """
    if not 0.0 < phi < 1.0:
        raise DomainError(f"phi must lie in (0, 1), got {phi}")
    families = []
    if 0.0 < phi < 0.75:
        families.append((BRANCH_EPS_PLUS, 2 * math.pi * phi + math.pi / 4))
    if 0.25 < phi < 1.0:
        families.append((BRANCH_EPS_MINUS, 2 * math.pi * phi - math.pi / 4))
    points = []
    for name, eps in families:
        for c, s, sign in _branch_points(eps):
            theta = _polish_root(math.atan2(s, c), phi)
            z = cmath.exp(1j * theta)
            resid = abs(big_lambda0(z, phi))
            if resid > 1e-10:
                raise ArithmeticError(
                    f"singular point failed to converge: |L0| = {resid:.3e} "
                    f"at phi={phi}, branch {name}{sign}"
                )
            lam_sq = abs(lambda_tilde(z)) ** 2
            pref = 1.0 / (2.0 * abs(1.0 + phi_tilde_deriv(theta)) ** 2)
            points.append(
                SpectralPoint(
                    theta_s=theta,
                    branch=f"{name}:{sign}",
                    lambda_sq=lam_sq,
                    residue_prefactor=pref,
                )
            )
    return points


def _origin_numerator(z: complex, phi: float, alpha: complex, beta: complex):
    """Numerator vector of the at-origin resolvent applied to the coin state."""
    w = cmath.exp(2j * math.pi * phi)
    g = w * f_tilde(z) / SQRT2
    return (alpha * (1 - g) - beta * g, alpha * g + beta * (1 - g))


def residue_norms_origin(phi: float, alpha: complex, beta: complex) -> list:
    """Squared residue norms of the origin resolvent, one per singular point.

    Computed from the actual residue (numerator over dL0/dz at the pole), not
    from the closed form, so the sum is an independent route to the
    time-averaged limit measure at the origin.  Returned in the same order as
    ``singular_points(phi)``.
    """
    out = []
    for pt in singular_points(phi):
        z = pt.z
        n1, n2 = _origin_numerator(z, phi, alpha, beta)
        dsq = abs(big_lambda0_deriv(z, phi)) ** 2
        out.append((abs(n1) ** 2 + abs(n2) ** 2) / dsq)
    return out


def xi_tilde0_series(phi: float, N: int) -> np.ndarray:
    """Power-series expansion of the at-origin resolvent through z^N.

    Returns an array of shape (N+1, 2, 2); the z^(2n) coefficient applied to
    the initial coin state reproduces the renewal origin amplitude at time 2n.
    Built by composing the rational sqrt(1+z^4) series into f, then inverting
    1/L0 term by term.
    """
    if N < 0:
        raise DomainError(f"N must be >= 0, got {N}")
    s4 = np.array([float(c) for c in sqrt1z4_series(N).coeffs])
    f = -s4 / SQRT2
    f[0] += 1 / SQRT2
    if N >= 2:
        f[2] += 1 / SQRT2
    f = f.astype(complex)
    w = cmath.exp(2j * math.pi * phi)
    fsq = np.convolve(f, f)[: N + 1]
    lam = -SQRT2 * w * f + w * w * fsq
    lam[0] += 1.0
    # geometric inversion of L0 (constant term 1)
    inv = np.zeros(N + 1, dtype=complex)
    inv[0] = 1.0 / lam[0]
    for n in range(1, N + 1):
        inv[n] = -np.dot(lam[1 : n + 1], inv[n - 1 :: -1][:n]) / lam[0]
    g = w * f / SQRT2
    out = np.zeros((N + 1, 2, 2), dtype=complex)
    ig = np.convolve(inv, g)[: N + 1]
    out[:, 0, 0] = inv - ig
    out[:, 0, 1] = -ig
    out[:, 1, 0] = ig
    out[:, 1, 1] = inv - ig
    return out
