import math
from fractions import Fraction

import numpy as np
import pytest

from defectwalk import series, walk
from defectwalk.series import PowerSeries
from defectwalk.walk import DomainError, WalkParams


def test_sqrt1z4_low_coefficients():
    s = series.sqrt1z4_series(12)
    assert s[0] == 1
    assert s[4] == Fraction(1, 2)
    assert s[8] == Fraction(-1, 8)
    assert all(s[n] == 0 for n in range(13) if n % 4 != 0)


def test_sqrt1z4_squares_back():
    n = 40
    s = series.sqrt1z4_series(n)
    sq = s * s
    for k in range(n + 1):
        expected = Fraction(1) if k in (0, 4) else Fraction(0)
        assert sq[k] == expected


def test_powerseries_shift_requires_divisibility():
    with pytest.raises(ValueError):
        PowerSeries.from_ints(1, 2, 3).shift_down()
    assert PowerSeries.from_ints(0, 2, 3).shift_down().coeffs == (
        Fraction(2),
        Fraction(3),
    )


def test_powerseries_sqrt_requires_unit_constant():
    with pytest.raises(ValueError):
        PowerSeries.from_ints(2, 1).sqrt()


def test_rstar_reference_values():
    assert series.rstar(1) == -1
    assert series.rstar(3) == Fraction(1, 2)
    assert series.rstar(7) == Fraction(-1, 8)
    for n in (2, 4, 5, 6, 8, 9, 10):
        assert series.rstar(n) == 0


def test_rstar_rejects_nonpositive():
    with pytest.raises(DomainError):
        series.rstar(0)
    with pytest.raises(DomainError):
        series.rstar(-3)


def test_first_return_series_coefficients():
    fr = series.first_return_series(12)
    assert fr[3] == Fraction(1, 2)
    assert fr[7] == Fraction(-1, 8)
    assert fr[2] == 0
    assert all(fr[n] == 0 for n in range(13) if n % 4 != 3)


def test_half_line_mirror_is_negation():
    # the mirror half-line series (1 - sqrt(1+z^4))/z is minus the direct one
    fr = series.first_return_series(20)
    s4 = series.sqrt1z4_series(21)
    mirror = PowerSeries(
        tuple(Fraction(1 if k == 0 else 0) - s4[k] for k in range(22))
    ).shift_down(1)
    for n in range(21):
        assert mirror[n] == -fr[n]


def test_path_oracle_basics():
    p, q, r, s = series.path_oracle_coefficients(1)
    assert (p, q, r, s) == (1, 0, 0, 0)
    assert series.path_oracle_first_return(3) == Fraction(1, 2)
    assert series.path_oracle_first_return(5) == 0
    assert series.path_oracle_first_return(7) == Fraction(-1, 8)


def test_path_oracle_q_s_vanish():
    for n in range(1, 14):
        _, q, _, s = series.path_oracle_coefficients(n)
        assert q == 0
        assert s == 0


def test_path_oracle_budget():
    with pytest.raises(DomainError):
        series.path_oracle_first_return(0)
    with pytest.raises(DomainError):
        series.path_oracle_first_return(series.PATH_ORACLE_MAX_N + 1)


def test_triple_equivalence():
    # closed form == generating function == path enumeration, exactly
    gf = series.rstar_series(19)
    for n in range(1, 20):
        from_paths = series.path_oracle_first_return(n)
        if n == 1:
            from_paths -= 1
        assert series.rstar(n) == gf[n] == from_paths


def test_xi_star_matches_direct_enumeration_small_n():
    # unified display (omega r*_{n-1}/2) M against the two-step product
    for phi in (0.1, 0.5, 0.8):
        omega = np.exp(2j * np.pi * phi)
        got = series.xi_star(2, phi)
        expected = (-omega / 2) * np.array([[-1, 1], [-1, -1]])
        assert np.allclose(got, expected, atol=1e-14)


def test_xi_star_vanishing_cases():
    assert np.all(series.xi_star(3, 0.3) == 0)
    assert np.all(series.xi_star(6, 0.3) == 0)  # r*_5 = 0
    with pytest.raises(DomainError):
        series.xi_star(1, 0.3)


def test_renewal_matrix_eigenvectors():
    m = np.array([[-1, 1], [-1, -1]])
    for eta in (1, -1):
        v = np.array([1, eta * 1j])
        assert np.allclose(m @ v, (-1 + eta * 1j) * v, atol=0)


def test_psi_origin_time_zero():
    params = WalkParams(phi=0.3, alpha=0.6, beta=0.8j)
    assert np.allclose(series.psi_origin(0, params), [0.6, 0.8j])


def test_psi_origin_first_epoch_closed_form():
    params = WalkParams.preset(1, 0.3)
    omega = params.omega
    expected = (1 / math.sqrt(2)) * (-1) * (omega * (-1 + 1j) / 2) * np.array([1, 1j])
    assert np.allclose(series.psi_origin(1, params), expected, atol=1e-14)
    assert np.allclose(
        series.psi_origin(1, params), walk.evolve(params, 2).amplitude(0), atol=1e-14
    )


def test_psi_origin_matches_four_step_evolution():
    params = WalkParams(phi=0.62, alpha=0.28 + 0.45j, beta=complex(math.sqrt(1 - 0.28**2 - 0.45**2)))
    assert np.allclose(
        series.psi_origin(2, params), walk.evolve(params, 4).amplitude(0), atol=1e-12
    )


def _random_states(count, seed=7):
    rng = np.random.default_rng(seed)
    vs = rng.normal(size=(count, 2)) + 1j * rng.normal(size=(count, 2))
    return vs / np.linalg.norm(vs, axis=1, keepdims=True)


def test_renewal_matches_evolution_across_grid():
    worst = 0.0
    for phi in (0.125, 1 / 3, 0.5, 0.9):
        for v in _random_states(5):
            params = WalkParams(phi=phi, alpha=complex(v[0]), beta=complex(v[1]))
            state = walk.initial_state(params)
            for n in range(0, 101):
                if n > 0:
                    state = walk.step(state, params)
                    state = walk.step(state, params)
                d = np.max(
                    np.abs(series.psi_origin(n, params) - state.amplitude(0))
                )
                worst = max(worst, d)
    assert worst <= 1e-10
