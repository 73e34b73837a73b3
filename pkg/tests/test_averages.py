import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mayernicf.averages import AvHyperbolic, AvParabolic, PoleError, regularized_shift_sum
from mayernicf.mobius import ETA, T
from mayernicf.special import hurwitz_zeta
from mayernicf.verify import analytic_test_function, suite_averages

strip = st.tuples(st.floats(0.1, 0.9), st.floats(-15, 15)).map(lambda p: complex(*p)).filter(
    lambda s: abs(s - 0.5) > 0.05)


def test_shift_sum_of_constant_is_hurwitz():
    x = np.array([0.4, 1.3, 2.9])
    for s in (0.3, 0.75, 0.5 + 9.5j):
        v = regularized_shift_sum(lambda u: 1 + 0 * u, +1, s, x)
        assert np.max(np.abs(v - hurwitz_zeta(2 * s, x))) < 1e-11


def test_shift_sum_of_identity():
    # q(u) = u turns ((x+n)^2)^{-s} into (x+n)^{-2s-1}
    x = np.array([0.4, 1.3, 2.9])
    v = regularized_shift_sum(lambda u: u, +1, 0.4, x)
    ref = [float(mp.zeta(1.8, xx)) for xx in x]
    assert np.max(np.abs(v - ref)) < 1e-11


def test_pole_at_one_half():
    with pytest.raises(PoleError):
        regularized_shift_sum(lambda u: 1 + 0 * u, +1, 0.5, np.array([1.0]))
    with pytest.raises(PoleError):
        AvParabolic(analytic_test_function(0.5, 0.2, 1.0), +1)(np.array([1.0]))


@pytest.mark.parametrize("sign", [+1, -1])
def test_parabolic_average_brute_force(sign):
    # absolutely convergent for Re s > 1/2: compare with mpmath summation
    s, a, b = 0.8 + 3j, 0.3, 1.2
    f = analytic_test_function(s, a, b)
    av = AvParabolic(f, sign)
    with mp.workdps(25):
        g = lambda y: ((y - a) ** 2 + b * b) ** (-mp.mpc(s))  # noqa: E731
        for x in (0.7, 2.5, -1.1):
            if sign > 0:
                ref = mp.nsum(lambda n: g(x + n), [0, mp.inf], method="euler-maclaurin")
            else:
                ref = -mp.nsum(lambda n: g(x - n), [1, mp.inf], method="euler-maclaurin")
            assert abs(av(np.array([x]))[0] - complex(ref)) < 1e-10 * max(1, abs(complex(ref)))


@settings(max_examples=25, deadline=None)
@given(strip, st.floats(-1, 1), st.floats(0.5, 2.0), st.sampled_from([+1, -1]))
def test_parabolic_telescoping(s, a, b, sign):
    # f|Av^{+-} - (f|Av^{+-})|T = f throughout the strip
    f = analytic_test_function(s, a, b)
    av = AvParabolic(f, sign)
    x = np.array([0.31, 1.7, 4.2]) if sign > 0 else np.array([-0.31, -1.7, -4.2])
    lhs = av(x) - (av | T)(x)
    assert np.max(np.abs(lhs - f(x))) < 1e-9 * max(1.0, float(np.max(np.abs(f(x)))))


@settings(max_examples=25, deadline=None)
@given(strip, st.floats(-1, 1), st.floats(0.5, 2.0), st.sampled_from([+1, -1]))
def test_hyperbolic_telescoping(s, a, b, sign):
    f = analytic_test_function(s, a, b)
    av = AvHyperbolic(f, ETA, sign)
    x = np.array([0.2, 0.9, 3.1, -0.4])
    lhs = av(x) - (av | ETA)(x)
    assert np.max(np.abs(lhs - f(x))) < 1e-9 * max(1.0, float(np.max(np.abs(f(x)))))


def test_hyperbolic_average_direct_sum():
    # for real s the orbit sum converges geometrically; sum it in extended precision
    s, a, b = 0.7, 0.1, 0.8
    av = AvHyperbolic(analytic_test_function(s, a, b), ETA, +1)
    with mp.workdps(30):
        E = mp.matrix([[ETA.a, ETA.b], [ETA.c, ETA.d]])
        for x in (0.25, -3.0, 7.5):
            A, total = mp.eye(2), mp.mpf(0)
            for _ in range(80):
                num, den = A[0, 0] * x + A[0, 1], A[1, 0] * x + A[1, 1]
                total += abs(den) ** (-2 * s) * ((num / den - a) ** 2 + b * b) ** (-s)
                A = A * E
            assert abs(av(np.array([x]))[0] - float(total)) < 1e-13 * float(total)


def test_average_suite_passes():
    rep = suite_averages(seed=3)
    assert rep.passed, "\n".join(rep.lines())


@settings(max_examples=20, deadline=None)
@given(strip, st.floats(-1, 1), st.floats(0.5, 2.0))
def test_periodic_difference_vanishes(s, a, b):
    # constructed case: c = v|(1-T) and b = -c with v analytic on the projective line, so
    # b|Av+ + c|Av- = 0 is analytic at infinity and c|Av+ - c|Av- must vanish
    v = analytic_test_function(s, a, b)
    c = v - (v | T)
    plus, minus = AvParabolic(c, +1), AvParabolic(c, -1)
    x = np.array([-3.3, -0.7, 0.45, 2.2])
    scale = max(1.0, float(np.max(np.abs(v(x)))))
    assert np.max(np.abs(plus(x) - minus(x))) < 1e-8 * scale
    assert np.max(np.abs(AvParabolic(-c, +1)(x) + minus(x))) < 1e-8 * scale
