import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mayernicf.special import bernoulli_numbers, hurwitz_zeta, hurwitz_zeta_table, pow_sq, principal_power


def test_known_values():
    assert hurwitz_zeta(2, 1) == pytest.approx(math.pi**2 / 6, rel=1e-14)
    assert hurwitz_zeta(4, 2) == pytest.approx(math.pi**4 / 90 - 1, rel=1e-13)


def test_zeta2_against_direct_sum():
    # 10^6 terms plus the integral tail bound 1/N
    n = np.arange(1, 10**6 + 1, dtype=float)
    partial = np.sum(1 / n[::-1] ** 2)
    tail = 1 / (10**6 + 0.5)
    assert abs(hurwitz_zeta(2, 1) - (partial + tail)) < 1e-12


@pytest.mark.parametrize("a", [0.3, 1.0, 2.5, 7.0])
def test_constant_term(a):
    assert abs(hurwitz_zeta(0, a) - (0.5 - a)) < 1e-12


@settings(max_examples=200, deadline=None)
@given(st.floats(1.6, 6.0), st.floats(-20, 20), st.floats(0.05, 8.0))
def test_against_mpmath_convergent(sr, si, a):
    s = complex(sr, si)
    ref = complex(mp.zeta(mp.mpc(sr, si), a))
    assert abs(hurwitz_zeta(s, a) - ref) <= 1e-11 * max(1.0, abs(ref))


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, 1.5), st.floats(-25, 25), st.floats(0.1, 5.0))
def test_against_mpmath_strip(sr, si, a):
    s = complex(sr, si)
    if abs(s - 1) < 1e-3:
        return
    ref = complex(mp.zeta(mp.mpc(sr, si), a))
    assert abs(hurwitz_zeta(s, a) - ref) <= 1e-10 * max(1.0, abs(ref))


@settings(max_examples=100, deadline=None)
@given(st.floats(0.1, 3.0), st.floats(-20, 20), st.floats(0.1, 6.0))
def test_recurrence(sr, si, a):
    s = complex(sr, si)
    if abs(s - 1) < 1e-3:
        return
    lhs = hurwitz_zeta(s, a)
    rhs = a ** (-s) + hurwitz_zeta(s, a + 1)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


def test_complex_argument():
    a = np.array([0.7 + 0.2j, 2.0 - 0.5j])
    s = 1.3 + 4j
    ref = [complex(mp.zeta(mp.mpc(1.3, 4), mp.mpc(z.real, z.imag))) for z in a]
    assert np.max(np.abs(hurwitz_zeta(s, a) - ref)) < 1e-11


def test_table_matches_scalar():
    s = 0.9 + 13j
    a = np.array([0.4, 1.7, 3.2 + 0.1j])
    tab = hurwitz_zeta_table(s, 12, a)
    for k in range(12):
        assert np.max(np.abs(tab[:, k] - hurwitz_zeta(s + k, a))) < 1e-12 * np.max(np.abs(tab[:, k]))


def test_principal_power():
    assert principal_power(4, -0.5) == pytest.approx(0.5)


@settings(max_examples=100, deadline=None)
@given(st.floats(-0.5, 2.5), st.integers(1, 30), st.floats(0.05, 1.0))
def test_pow_sq_positive_for_positive_base(x, n, s):
    v = pow_sq(x + n, s)
    assert abs(v.imag) == 0 and v.real > 0
    assert v.real == pytest.approx(abs(x + n) ** (-2 * s), rel=1e-13)


def test_pow_sq_conjugate_symmetry():
    u, s = 2 + 0.3j, 0.5 + 9j
    assert abs(pow_sq(np.conj(u), np.conj(s)) - np.conj(pow_sq(u, s))) < 1e-15
    # even in u on the real line
    assert pow_sq(-2.0, s) == pytest.approx(pow_sq(2.0, s))


def test_bernoulli_numbers():
    B = bernoulli_numbers(12)
    assert B[1] == Fraction(-1, 2)
    assert B[12] == Fraction(-691, 2730)
    for k in range(13):
        assert float(B[k]) == pytest.approx(float(mp.bernoulli(k)), abs=1e-15)
