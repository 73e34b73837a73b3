import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mayernicf.cohomology import (THETA_INTERVALS, Cocycle, cocycle_value, orbit_value, parabolic_normalize,
                                  parabolic_obstruction, theta, verify_generator_relations)
from mayernicf.funcrep.analytic import fit
from mayernicf.funcrep.vfn import FuncFn, ZeroFn
from mayernicf.mobius import apply_word
from mayernicf.verify import analytic_test_function, suite_cohomology

X = np.concatenate([np.linspace(-3.3, 3.3, 23), [-8.1, 9.7]]) + 0.0123
words = st.lists(st.sampled_from(["S", "T", "Tinv"]), max_size=6)


def _sup(F, x=X):
    v = np.asarray(F(x), dtype=complex)
    return float(np.max(np.abs(v[np.isfinite(v)])))


@pytest.fixture(scope="module")
def cob():
    s = complex(0.3, 4.0)
    return Cocycle.coboundary(analytic_test_function(s, 0.2, 1.1))


def test_identity_and_relator_values(cob):
    assert isinstance(cocycle_value(cob, []), ZeroFn)
    scale = _sup(cob.psi_S)
    assert _sup(cocycle_value(cob, "S T S T S T")) < 1e-12 * scale
    assert _sup(cocycle_value(cob, "S S")) < 1e-12 * scale


@settings(max_examples=40, deadline=None)
@given(words, words)
def test_cocycle_law(w1, w2):
    s = complex(0.3, 4.0)
    c = Cocycle.coboundary(analytic_test_function(s, 0.2, 1.1))
    lhs = cocycle_value(c, w1 + w2)
    rhs = cocycle_value(c, w1) | apply_word(w2)
    rhs = rhs + cocycle_value(c, w2)
    x = np.array([-2.1, -0.4, 0.35, 1.7])
    a, b = lhs(x), rhs(x)
    ok = np.isfinite(a) & np.isfinite(b)
    assert np.allclose(a[ok], b[ok], rtol=1e-8, atol=1e-10)


def test_coboundary_value_matches_definition(cob):
    v = analytic_test_function(cob.s, 0.2, 1.1)
    g = apply_word("T S T^2")
    assert _sup(cocycle_value(cob, "T S T^2") - (v - (v | g))) < 1e-12 * _sup(v)


def test_parabolic_values_along_TST2():
    s = complex(0.5, 9.5)
    Pt = FuncFn(lambda x: 1 / (1 + x * x) ** s, s)
    c = Cocycle(Pt, ZeroFn(s), s, "parabolic")
    assert _sup(cocycle_value(c, "T S T^2") - (Pt | apply_word("T^2"))) < 1e-14


def test_generator_relations(cob):
    r = verify_generator_relations(cob)
    assert max(r.values()) < 1e-12
    assert verify_generator_relations(Cocycle.zero(0.3)) == {"S": 0.0, "TinvS": 0.0}
    bad = Cocycle(analytic_test_function(cob.s, 0.2, 1.1), ZeroFn(cob.s), cob.s)
    assert min(verify_generator_relations(bad).values()) > 0.1


def test_orbit_value_is_homogeneous(cob):
    # c_{g^-1 a, d^-1 a} = psi_{g d^-1}|d
    assert _sup(orbit_value(cob, "S", []) - cob.psi_S) < 1e-14
    lhs = orbit_value(cob, "T", "S")
    rhs = cocycle_value(cob, "T S") | apply_word("S")
    assert _sup(lhs - rhs) < 1e-12


def test_theta_of_zero():
    res = theta(ZeroFn(0.4 + 3j))
    assert isinstance(res.cocycle.psi_S, ZeroFn) and res.max_reassembly == 0


def test_theta_rejects_non_solutions():
    s = complex(0.5, 9.5)
    g = fit(lambda x: np.cos(x) + 0j, (-2.7, 1.7), N=48, s=s)
    with pytest.raises(ValueError):
        theta(g, s)
    res = theta(g, s, check=False)
    assert res.max_reassembly > 1e-3


def test_theta_of_eigenfunction(zeros):
    for z in zeros:
        res = theta(z.g1, z.s)
        assert set(res.reassembly) == set(THETA_INTERVALS)
        assert res.max_reassembly < 1e-7 and res.far_residual < 1e-7
        assert max(res.analyticity.values()) < 1e-7
        assert max(verify_generator_relations(res.cocycle).values()) < 1e-7


def test_parabolic_normalize_fixed_point():
    s = complex(0.5, 9.5)
    Pt = FuncFn(lambda x: 1 / (1 + x * x) ** s, s)
    c = Cocycle(Pt, ZeroFn(s), s)
    out = parabolic_normalize(c)
    assert out.cocycle.psi_S is Pt and isinstance(out.cocycle.psi_T, ZeroFn)


def test_parabolic_normalize_coboundary(cob):
    # v analytic: psi_T|Av^+ = v, so the normalized cocycle vanishes
    out = parabolic_normalize(cob)
    assert out.mismatch < 1e-12
    assert _sup(out.cocycle.psi_S) < 1e-12 * _sup(cob.psi_S)
    assert parabolic_obstruction(cob).sup < 1e-12


def test_parabolic_normalize_rejects_non_parabolic():
    s = complex(0.3, 4.0)
    c = Cocycle(ZeroFn(s), analytic_test_function(s, 0.2, 1.1), s)
    with pytest.raises(ValueError):
        parabolic_normalize(c)


def test_obstruction_of_zero():
    assert parabolic_obstruction(Cocycle.zero(0.3 + 1j)).sup == 0


def test_cocycle_json_roundtrip():
    s = complex(0.5, 9.5)
    a = fit(lambda x: 1 / (3 + x), (-1, 1), N=32, s=s)
    c = Cocycle(a, ZeroFn(s), s, "parabolic")
    d = Cocycle.from_dict(json.loads(json.dumps(c.to_dict())))
    x = np.linspace(-0.9, 0.9, 7)
    assert np.array_equal(c.psi_S(x), d.psi_S(x)) and d.flavor == "parabolic"


@pytest.mark.parametrize("index", [0, 1])
def test_cohomology_suite(index):
    from mayernicf.transfer.spectral import REFERENCE_ZEROS

    rep = suite_cohomology(seed=index, s=complex(0.5, REFERENCE_ZEROS[index]))
    assert rep.passed, "\n".join(rep.lines())


RELATORS = [["S", "S"], ["S", "T"] * 3, ["T", "Tinv"], ["Tinv", "T"]]


@settings(max_examples=100, deadline=None)
@given(words, words, st.sampled_from(range(len(RELATORS))))
def test_word_representative_independence(w1, w2, k):
    # inserting a relator does not change the group element, so the value must not change
    s = complex(0.3, 4.0)
    c = Cocycle.coboundary(analytic_test_function(s, 0.2, 1.1))
    a = cocycle_value(c, w1 + w2)(X)
    b = cocycle_value(c, w1 + RELATORS[k] + w2)(X)
    ok = np.isfinite(a) & np.isfinite(b)
    assert np.allclose(a[ok], b[ok], rtol=1e-8, atol=1e-8 * max(1.0, float(np.max(np.abs(a[ok]), initial=0))))
