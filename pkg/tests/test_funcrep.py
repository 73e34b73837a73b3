import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mayernicf.averages import ResolutionError
from mayernicf.funcrep.analytic import AnalyticFn, analytic_across, coefficient_decay, fit, fit_chart
from mayernicf.funcrep.asymptotics import fit_asymptotic
from mayernicf.funcrep.chebyshev import cgl_nodes, clenshaw, to_unit, values_to_coeffs
from mayernicf.funcrep.separation import separate_singularities
from mayernicf.funcrep.vfn import (FuncFn, PiecewiseFn, ZeroFn, build_piecewise, constant, from_dict,
                                   in_cyclic, restrict, to_dict)
from mayernicf.mobius import IDENTITY, S, T, apply_word, ring, ring_combine

words = st.lists(st.sampled_from(["S", "T", "Tinv"]), max_size=6)


def test_fit_polynomial_is_exact():
    f = fit(lambda x: x**2, (-1, 1), N=16)
    c = f.coeffs
    assert abs(c[0] - 0.5) < 1e-14 and abs(c[2] - 0.5) < 1e-14
    assert np.max(np.abs(np.delete(c, [0, 2]))) < 1e-14


def test_fit_geometric_decay():
    # 1/(1+x) on [0,1]: pole at -1, Bernstein parameter 3 + 2 sqrt 2
    f = fit(lambda x: 1 / (1 + x), (0, 1), N=32)
    rho = 3 + 2 * np.sqrt(2)
    k = np.arange(3, 12)
    ratio = np.abs(f.coeffs[k + 1] / f.coeffs[k])
    assert np.allclose(ratio, 1 / rho, rtol=1e-6)
    x = np.linspace(0.013, 0.987, 57)
    assert np.max(np.abs(f(x) - 1 / (1 + x))) < 1e-13


def test_fit_complex_evaluation():
    f = fit(np.exp, (-1, 1), N=32)
    z = np.array([0.3 + 0.2j, -0.5 - 0.1j])
    assert np.max(np.abs(f(z) - np.exp(z))) < 1e-13


def test_fit_rejects_singular_data():
    with pytest.raises(ResolutionError):
        fit(lambda x: np.abs(x) ** 0.5, (-1, 1), N=16)


def test_coefficient_decay_detects_singularity():
    assert coefficient_decay(lambda x: 1 / (2 + x), (-1, 1)) < 1e-12
    assert coefficient_decay(lambda x: np.abs(x) ** 1.5, (-1, 1)) > 1e-6


def test_chebyshev_roundtrip():
    x = cgl_nodes(20, -2, 3)
    v = np.cos(x)
    c = values_to_coeffs(v)
    assert np.max(np.abs(clenshaw(c, to_unit(x, -2, 3)) - v)) < 1e-14


def test_constant_slash_S():
    one = constant(1.0, 0.5)
    assert (one | S)(np.array([2.0]))[0] == pytest.approx(0.5)


def test_S_squared_acts_trivially():
    f = FuncFn(lambda x: 1 / (1 + x * x) + x, 0.3 + 2j, sing=())
    x = np.linspace(-3, 3, 13) + 0.01
    assert np.max(np.abs((f | S | S)(x) - f(x))) < 1e-14


@settings(max_examples=60, deadline=None)
@given(words, words, st.floats(0.1, 0.9), st.floats(-10, 10))
def test_right_action(w1, w2, sr, si):
    s = complex(sr, si)
    f = FuncFn(lambda x: np.exp(-x * x) * (1 + 0.5j * x), s)
    g, h = apply_word(w1), apply_word(w2)
    x = np.array([0.37, -1.21, 2.9, 0.011]) + 0.0
    lhs = (f | g | h)(x)
    rhs = (f | (g @ h))(x)
    ok = np.isfinite(lhs) & np.isfinite(rhs)
    assert np.allclose(lhs[ok], rhs[ok], rtol=1e-9, atol=1e-12)


def test_periodic_function_killed_by_one_minus_T():
    f = FuncFn(lambda x: np.sin(2 * np.pi * x), 0.7)
    g = f.slash_ring(ring_combine(ring(IDENTITY), ring(T), -1, "add"))
    x = np.linspace(-2, 2, 9) + 0.1
    assert np.max(np.abs(g(x))) < 1e-14


def test_zero_function():
    z = ZeroFn(0.5)
    assert np.all((z | S)(np.array([1.0, 2.0])) == 0)


def test_in_cyclic_across_infinity():
    x = np.array([3.0, -3.0, 0.0, np.inf])
    assert list(in_cyclic(x, 2.0, -2.0)) == [True, True, False, True]


def test_asymptotic_fit_at_infinity():
    s = 0.5 + 3j
    # |x|^{-2s} (1 + 1/x)^{-2s} for x > 0: c_0 = 1, c_1 = -2s
    f = FuncFn(lambda x: np.abs(x + 1) ** (-2 * s), s)
    A = fit_asymptotic(f, "inf", s=s, M=6)
    assert A.ok
    assert abs(A.c(-1)) < 1e-8
    assert abs(A.c(0) - 1) < 1e-6
    assert abs(A.c(1) + 2 * s) < 1e-4


def test_asymptotic_fit_at_zero():
    s = 0.3
    f = FuncFn(lambda x: 2 / x + 3 - x, s)
    A = fit_asymptotic(f, "0", s=s, M=4)
    assert A.ok
    assert abs(A.c(-1) - 2) < 1e-10 and abs(A.c(0) - 3) < 1e-10 and abs(A.c(1) + 1) < 1e-9


def test_asymptotic_fit_flags_log_terms():
    f = FuncFn(lambda x: np.log(np.abs(x)), 0.5)
    assert not fit_asymptotic(f, "0", s=0.5, M=6).ok


def test_analytic_across_infinity():
    s = 0.5 + 2j
    f = FuncFn(lambda x: 1 / (1 + x * x) ** s, s,
               at_inf=lambda u: (1 + u * u) ** (-s))
    assert analytic_across(f, np.inf) < 1e-10
    g = FuncFn(lambda x: np.abs(x) ** (-2 * s) * np.abs(np.sin(1 / x)), s)
    assert analytic_across(g, np.inf) > 1e-6


def test_restrict_refuses_singularity():
    f = FuncFn(lambda x: 1 / x, 1.0, sing=(0.0,))
    with pytest.raises(ValueError):
        restrict(f, (-1, 1))
    r = restrict(f, (0.5, 2))
    assert isinstance(r, AnalyticFn) and abs(r(np.array([1.3]))[0] - 1 / 1.3) < 1e-12


def test_inverted_chart_matches():
    s = 0.5
    # (1 + x^2)^{-s} is analytic at infinity in weight s: its chart function is (1 + u^2)^{-s}
    F = fit(lambda x: (1 + x * x) ** (-s), (-0.5, 0.5), chart="inverted", s=s)
    x = np.array([3.0, -5.0, 11.0])
    assert np.max(np.abs(F(x) - (1 + x * x) ** (-s))) < 1e-12


def test_build_piecewise_checks_overlaps():
    s = 0.5
    f1 = FuncFn(lambda x: 1 / x, s, sing=(0.0,))
    f2 = FuncFn(lambda x: 1 / x + 1e-3, s, sing=(0.0,))
    with pytest.raises(ValueError):
        build_piecewise([(0.5, 3.0, f1), (1.0, 5.0, f2)], [0.0], check_points=10)
    F = build_piecewise([(0.5, 3.0, f1), (1.0, 5.0, f1)], [0.0], check_points=10)
    assert F(np.array([4.0]))[0] == pytest.approx(0.25)


def test_separate_singularities():
    s = 1.0
    # chart at infinity: |u|^{-2} F(-1/u) = -1/(1+u)
    F = FuncFn(lambda x: 1 / x - 1 / (x - 1), s, sing=(0.0, 1.0), at_inf=lambda u: -1 / (1 + u))
    F_xi, F_eta = separate_singularities(F, 0.0, 1.0)
    x = np.array([-2.3, 0.4, 0.71, 3.3])
    assert np.max(np.abs(F_eta(x) - F_xi(x) - F(x))) < 1e-10
    # F_xi is regular at 1, F_eta regular at 0; residues carried over
    assert analytic_across(F_xi, 1.0, half=0.2) < 1e-9
    assert analytic_across(F_eta, 0.0, half=0.2) < 1e-9
    eps = 1e-6
    assert abs(eps * F_xi(np.array([eps]))[0] + 1) < 1e-4  # F_xi ~ -1/x
    assert abs(eps * F_eta(np.array([1 + eps]))[0] + 1) < 1e-4  # F_eta ~ -1/(x-1)


def test_json_roundtrip():
    s = 0.5 + 9j
    a = fit(lambda x: np.cos(x) / (3 + x), (-1, 2), N=32, s=s)
    b = fit(lambda x: (1 + x * x) ** (-s), (-0.2, 0.2), chart="inverted", s=s)
    F = PiecewiseFn([(-1.0, 2.0, a), (1.5, -0.9, b)], [], s)
    G = from_dict(json.loads(json.dumps(to_dict(F))))
    x = np.array([-0.5, 0.3, 1.9, 7.0, -40.0])
    assert np.array_equal(F(x), G(x))
    assert isinstance(from_dict(to_dict(ZeroFn(s))), ZeroFn)
    with pytest.raises(TypeError):
        to_dict(FuncFn(np.sin, s))


def test_inverted_chart_constant_carries_the_weight():
    # the stored chart function is 1, so the plane value at x is |x|^{-2s}
    s = 0.3 + 2j
    F = fit_chart(lambda u: 1 + 0 * u, (-0.01, 0.01), chart="inverted", s=s)
    u = -1 / 1e3
    assert abs(F.eval_chart(np.array([u]))[0] - 1) < 1e-14
    assert abs(F(np.array([1e3]))[0] - 1e3 ** (-2 * s)) < 1e-14
