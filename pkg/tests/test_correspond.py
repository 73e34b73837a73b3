import json

import numpy as np
import pytest

from mayernicf.correspond import ChainError, correspondence_report, mayer_to_nicf, nicf_to_mayer
from mayernicf.funcrep.vfn import ZeroFn
from mayernicf.transfer.spectral import mayer_eigenfunction, nicf_eigenpair

DOWN_STAGES = ["eigen", "cocycle", "separation", "average", "four-term"]
UP_STAGES = ["eigen", "theta", "separation", "analytic", "obstruction", "parabolic", "parity"]


@pytest.mark.slow
def test_round_trip_at_zeros(zeros):
    for z in zeros:
        rt = z.round_trip()
        assert rt.down.report.passed and rt.up.report.passed
        assert rt.down.report.stage_names[:len(DOWN_STAGES)] == DOWN_STAGES
        assert rt.up.report.stage_names == UP_STAGES
        assert rt.correlation > 1 - 1e-4
        assert rt.nicf_correlation > 1 - 1e-4
        # the returned eigenfunction has the parity of the input and nothing else
        dims = rt.up.report.dims
        assert dims["mayer"] == 1 and dims["plus" if z.eps > 0 else "minus"] == 1


@pytest.mark.slow
def test_upward_chain_at_zeros(zeros):
    for z in zeros:
        up = z.upward()
        assert up.report.passed and up.dimension == 1
        ob = {st.name: st for st in up.report.stages}["obstruction"]
        assert ob.residuals["sup"] < 1e-7 and ob.residuals["periodicity"] < 1e-7
        # the upward image lives in the parity part of the known Mayer eigenfunction
        eps, f = up.nonzero_part()
        assert eps == z.eps
        x = np.linspace(0.05, 0.95, 9)
        c = np.vdot(f(x), z.f(x)) / (np.linalg.norm(f(x)) * np.linalg.norm(z.f(x)))
        assert abs(c) > 1 - 1e-4


@pytest.mark.slow
def test_report_serializes(zeros):
    rep = zeros[0].upward().report
    d = json.loads(rep.to_json())
    assert d["passed"] and [st["name"] for st in d["stages"]] == UP_STAGES
    assert d["s"] == [0.5, zeros[0].t]


def test_zero_input_maps_to_zero():
    s = complex(0.5, 7.1)
    up = nicf_to_mayer((ZeroFn(s), ZeroFn(s)), s)
    assert up.report.passed and up.dimension == 0
    down = mayer_to_nicf(ZeroFn(s), +1, s)
    x = np.linspace(-0.9, 0.9, 5)
    assert np.all(down.g1(x) == 0) and down.report.passed


def test_bad_parity():
    with pytest.raises(ValueError):
        mayer_to_nicf(ZeroFn(0.5 + 1j), 0, 0.5 + 1j)


@pytest.mark.parametrize("s", [0.5 + 11.3j, 0.7 + 2.2j])
def test_generic_points_refused_at_eigen_stage(s):
    g1, g2, _ = nicf_eigenpair(s, tol=np.inf)
    with pytest.raises(ChainError) as exc:
        nicf_to_mayer((g1, g2), s)
    assert exc.value.stage == "eigen" and exc.value.report.stage_names == ["eigen"]
    for eps in (+1, -1):
        f, _ = mayer_eigenfunction(s, eps, tol=np.inf)
        with pytest.raises(ChainError) as exc:
            mayer_to_nicf(f, eps, s)
        assert exc.value.stage == "eigen"


def test_correspondence_report_generic_point():
    rep = correspondence_report(0.3 + 5j)
    assert rep.dims == {"mayer+1": 0, "mayer-1": 0, "nicf": 0}
    assert rep.dimension_equality and rep.passed and rep.chains == {}
    json.dumps(rep.to_dict())


@pytest.mark.slow
def test_obstruction_detects_perturbed_input(zero1):
    # a bump that solves nothing: theta rejects it, and with the checks relaxed the
    # obstruction is far from zero while the unperturbed input gives none
    from mayernicf.cohomology import Cocycle, parabolic_obstruction, theta
    from mayernicf.correspond import TINV_S
    from mayernicf.funcrep.separation import separate_singularities
    from mayernicf.funcrep.vfn import FuncFn
    from mayernicf.mobius import PHI_FLOAT as PHI
    from mayernicf.mobius import S

    s = zero1.s

    def obstruction(g):
        th = theta(g, s, check=False)
        _, K = separate_singularities(th.c_phi_phiinv, 1 / PHI, -PHI, rho=0.85, M=64)
        ct = Cocycle.from_S_TinvS(-th.c_phi_phiinv + K - (K | S), -th.c_phi_phi + K - (K | TINV_S), s)
        return th.max_reassembly, parabolic_obstruction(ct).sup

    bumped = FuncFn(lambda x: zero1.g1(x) + 1e-3 * np.exp(-np.asarray(x, dtype=complex) ** 2), s)
    with pytest.raises(ValueError):
        theta(bumped, s)
    reassembly, sup = obstruction(bumped)
    assert reassembly > 1e-5 and sup > 1e-5
    assert obstruction(zero1.g1)[1] < 1e-7
