from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mayernicf.mobius import (C, ETA, IDENTITY, INF, PHI, PHI_FLOAT, S, T, T_INV, T_PRIME, GroupElem,
                              QuadSurd, act, apply_word, classify_and_fixed_points, compose,
                              derivative_abs, parse_word, ring, ring_combine)

letters = st.sampled_from(["S", "T", "Tinv"])
words = st.lists(letters, max_size=12)
rationals = st.fractions(min_value=-50, max_value=50, max_denominator=60)


def test_compose_examples():
    assert compose(S, S) == IDENTITY
    assert compose(T, IDENTITY) == T
    assert compose(compose(T, S), apply_word("T^2")) == GroupElem(1, 1, 1, 2)
    assert GroupElem(1, 1, 1, 2) == ETA


def test_act_examples():
    assert act(S, 0) is INF
    assert act(ETA, -PHI) == -PHI
    assert act(T, PHI) == PHI * PHI
    assert PHI * PHI == PHI + 1


def test_classification():
    kind, alpha, omega = classify_and_fixed_points(ETA)
    assert kind == "hyperbolic"
    assert alpha == -PHI and omega == PHI - 1  # phi^-1 = phi - 1
    assert classify_and_fixed_points(T) == ("parabolic", INF, INF)
    assert classify_and_fixed_points(S)[0] == "elliptic"
    assert classify_and_fixed_points(S)[1] is None


def test_attracting_point_attracts():
    x = 2.7
    for _ in range(40):
        x = (x + 1) / (x + 2)  # TST^2
    assert abs(x - 1 / PHI_FLOAT) < 1e-12


def test_word_examples():
    assert apply_word(["S", "T", "S", "T", "S", "T"]).is_identity()
    assert apply_word(["T", "S", "T"]) == T_PRIME == GroupElem(1, 0, 1, 1)
    assert apply_word([]).is_identity()
    assert apply_word("T S T") == apply_word("S Tinv S")
    assert parse_word("S T^-2 S") == ["S", "Tinv", "Tinv", "S"]
    assert apply_word("T^3") == GroupElem(1, 3, 0, 1)


def test_parity_involution():
    assert (C @ C).is_identity()
    assert act(C, Fraction(2, 7)) == Fraction(7, 2)


def test_ring_examples():
    xi = ring(IDENTITY, apply_word("S T^2"))
    prod = ring_combine(xi, ring(S), 1, "mul")
    assert prod == ring(S, apply_word("S T^2 S"))
    assert ring_combine(xi, xi, -1, "add").is_zero()
    four = ring_combine(ring(apply_word("Tinv S T^-2 S T")), ring(apply_word("S T^2 S T^2")), -1, "add")
    assert four.is_zero()


def test_canonical_form():
    g = GroupElem(-2, -4, -6, -10)
    assert (g.a, g.b, g.c, g.d) == (1, 2, 3, 5)
    assert GroupElem(0, -1, 1, 0) == S
    with pytest.raises(ValueError):
        GroupElem(0, 0, 0, 0)


def test_quadratic_surds():
    x = QuadSurd(Fraction(1, 3), 2)
    assert (x / x) == 1
    assert x * x.conjugate() == x.norm()
    assert abs(float(PHI) - PHI_FLOAT) < 1e-15


@settings(max_examples=200, deadline=None)
@given(words, words)
def test_word_concatenation(w1, w2):
    assert apply_word(w1 + w2) == compose(apply_word(w1), apply_word(w2))


@settings(max_examples=300, deadline=None)
@given(words, words, rationals)
def test_left_action(w1, w2, p):
    g, h = apply_word(w1), apply_word(w2)
    assert act(g @ h, p) == act(g, act(h, p))


@settings(max_examples=200, deadline=None)
@given(words)
def test_inverse(w):
    g = apply_word(w)
    assert (g @ g.inverse()).is_identity()
    assert abs(g.det) == 1


@settings(max_examples=100, deadline=None)
@given(words, st.integers(0, 12), st.sampled_from(["S S", "S T S T S T", "T S T S T S", "T Tinv"]))
def test_relator_insertion(w, pos, rel):
    pos = min(pos, len(w))
    assert apply_word(w[:pos] + rel.split() + w[pos:]) == apply_word(w)


@settings(max_examples=100, deadline=None)
@given(words, rationals)
def test_derivative_matches_finite_difference(w, p):
    g = apply_word(w)
    x = float(p)
    if g.c * x + g.d == 0 or abs(g.c * x + g.d) < 1e-2:
        return
    h = 1e-6
    f = lambda y: (g.a * y + g.b) / (g.c * y + g.d)  # noqa: E731
    fd = abs(f(x + h) - f(x - h)) / (2 * h)
    assert derivative_abs(g, p) == pytest.approx(fd, rel=1e-5)


def test_group_elements_match_matrices():
    assert np.array_equal(T_INV.as_array(), np.array([[1, -1], [0, 1]]))
