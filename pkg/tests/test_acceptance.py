"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line."""

import time

import numpy as np
import pytest

from mayernicf.cohomology import theta
from mayernicf.correspond import ChainError, correspondence_report, mayer_to_nicf, nicf_to_mayer
from mayernicf.feq import four_term_residual, three_term_residual
from mayernicf.transfer.operators import build_operator
from mayernicf.transfer.spectral import (channel_det, eigenpairs, find_zero, mayer_eigenfunction,
                                         nicf_eigenpair)
from mayernicf.verify import suite_averages, suite_identities

BRACKETS = [(9.4, 9.7), (13.6, 13.9)]
GENERIC_POINTS = [0.5 + 11.3j, 0.3 + 5j, 0.7 + 2.2j, 0.5 + 7.1j, 0.25 + 12.4j]


def test_01_gauss_fixed_point(report_line):
    t0 = time.perf_counter()
    op = build_operator("mayer", 1.0, N=24)
    w, V = eigenpairs(op, 1)
    v = V[:, 0] / V[0, 0]
    ref = 1 / (1 + op.nodes)
    vec_err = float(np.max(np.abs(v - ref / ref[0])))
    dt = time.perf_counter() - t0
    lam_err = abs(w[0] - 1)
    ok = lam_err < 1e-10 and vec_err < 1e-8 and dt < 1
    report_line("1 Gauss fixed point", ok,
                f"|lambda-1|={lam_err:.2e} (<1e-10), eigenvector err={vec_err:.2e} (<1e-8), {dt:.2f}s (<1s)")
    assert ok


def test_02_subleading_stability(report_line):
    t0 = time.perf_counter()
    lam = [eigenpairs(build_operator("mayer", 1.0, N=n), 2)[0][1] for n in (32, 48)]
    dt = time.perf_counter() - t0
    diff = abs(lam[0] - lam[1])
    ok = diff < 1e-8 and dt < 5
    report_line("2 subleading eigenvalue", ok,
                f"lambda2={lam[1].real:.11f}, |N32-N48|={diff:.2e} (<1e-8), {dt:.2f}s (<5s)")
    assert ok


def test_03_determinant_identity(report_line):
    rng = np.random.default_rng(0)
    t0 = time.perf_counter()
    worst, where = 0.0, None
    for _ in range(20):
        s = complex(rng.uniform(0.1, 0.9), rng.uniform(-15, 15))
        lhs = channel_det("nicf", s) / channel_det("kcomp", s)
        rhs = channel_det("mayer", s)
        err = abs(lhs - rhs) / abs(rhs)
        if err > worst:
            worst, where = err, s
    dt = time.perf_counter() - t0
    ok = worst < 1e-6 and dt < 120
    report_line("3 determinant identity", ok,
                f"worst relative error {worst:.2e} (<1e-6) at s={where:.4f}, 20 points, {dt:.1f}s (<120s)")
    assert ok


def test_04_zero_agreement(report_line):
    t0 = time.perf_counter()
    msgs, ok = [], True
    for lo, hi in BRACKETS:
        t = {(ch, N): find_zero(ch, lo, hi, N=N).t for ch in ("nicf", "mayer") for N in (40, 56)}
        agree = abs(t["nicf", 40] - t["mayer", 40])
        stable = max(abs(t[ch, 40] - t[ch, 56]) for ch in ("nicf", "mayer"))
        ok &= agree < 1e-6 and stable < 1e-6
        msgs.append(f"t={t['nicf', 40]:.9f}: nicf-mayer {agree:.1e}, N40->56 {stable:.1e}")
    dt = time.perf_counter() - t0
    ok &= dt < 300
    report_line("4 zero agreement", ok, "; ".join(msgs) + f" (<1e-6), {dt:.0f}s (<300s)")
    assert ok


def test_05_dimension_equality(zeros, report_line):
    msgs, ok = [], True
    for z in zeros:
        t0 = time.perf_counter()
        rep = correspondence_report(z.s, run_chains=False)
        dt = time.perf_counter() - t0
        d = rep.dims
        good = d["nicf"] == d["mayer+1"] + d["mayer-1"] == 1 and dt < 60
        ok &= good
        msgs.append(f"t={z.t:.6f}: nicf {d['nicf']}, mayer +1/-1 {d['mayer+1']}/{d['mayer-1']}, {dt:.1f}s")
    report_line("5 dimension equality", ok, "; ".join(msgs))
    assert ok


def test_06_functional_equations(zeros, report_line):
    msgs, ok = [], True
    for z in zeros:
        r3 = three_term_residual(z.P)
        r4 = four_term_residual(z.g1)
        ok &= r3 < 1e-8 and r4 < 1e-8
        msgs.append(f"t={z.t:.4f}: three-term {r3:.1e}, four-term {r4:.1e}")
    report_line("6 functional equations (50 points)", ok, "; ".join(msgs) + " (<1e-8)")
    assert ok


def test_07_average_identities(report_line):
    rep = suite_averages(seed=0)
    worst = max((c for c in rep.checks if 0 < c.tol and c.value <= c.tol), key=lambda c: c.value / c.tol)
    report_line("7 average identities", rep.passed,
                f"{len(rep.checks)} checks at s in {{0.3, 0.75, 0.5+9.5i}}, closest to tolerance: "
                f"{worst.name} {worst.value:.1e} (tol {worst.tol:.0e})"
                + ("" if rep.passed else "; failed: " + ", ".join(c.name for c in rep.failed())))
    assert rep.passed, "\n".join(rep.lines())


def test_08_symbolic_identities(report_line):
    rep = suite_identities(seed=0)
    report_line("8 symbolic identities", rep.passed,
                f"{len(rep.checks)} exact checks" + ("" if rep.passed else "; failed: "
                                                     + ", ".join(c.name for c in rep.failed())))
    assert rep.passed, "\n".join(rep.lines())


def test_09_theta_reassembly(zeros, report_line):
    msgs, ok = [], True
    for z in zeros:
        res = theta(z.g1, z.s)
        reas = res.max_reassembly
        ana = max(res.analyticity.values())
        ok &= reas < 1e-7 and ana < 1e-7 and len(res.reassembly) == 3
        msgs.append(f"t={z.t:.4f}: reassembly {reas:.1e} on {len(res.reassembly)} intervals, "
                    f"analyticity {ana:.1e}")
    report_line("9 theta reassembly", ok, "; ".join(msgs) + " (<1e-7)")
    assert ok


@pytest.mark.slow
def test_10_end_to_end(zeros, report_line):
    msgs, ok = [], True
    for z in zeros:
        t0 = time.perf_counter()
        rt = z.round_trip()
        up = z.upward()
        dt = time.perf_counter() - t0
        stage = max(rt.down.report.max_residual(), rt.up.report.max_residual(), up.report.max_residual())
        obs = max(float(r.residuals["sup"]) for r in (rt.up.report, up.report)
                  for r in [{st.name: st for st in r.stages}["obstruction"]])
        good = (rt.down.report.passed and rt.up.report.passed and up.report.passed
                and stage < 1e-5 and obs < 1e-7 and rt.correlation > 1 - 1e-4 and dt < 600)
        ok &= good
        msgs.append(f"t={z.t:.4f}: stages {stage:.1e}, obstruction {obs:.1e}, "
                    f"1-corr {1 - rt.correlation:.1e}, {dt:.0f}s")
    report_line("10 end-to-end correspondence", ok, "; ".join(msgs))
    assert ok


def test_11_negative_controls(report_line):
    msgs, ok = [], True
    for s in GENERIC_POINTS:
        rep = correspondence_report(s, run_chains=False)
        empty = all(v == 0 for v in rep.dims.values())
        stages = []
        g1, g2, _ = nicf_eigenpair(s, tol=np.inf)
        try:
            nicf_to_mayer((g1, g2), s)
            stages.append(None)
        except ChainError as exc:
            stages.append(exc.stage)
        for eps in (+1, -1):
            f, _ = mayer_eigenfunction(s, eps, tol=np.inf)
            try:
                mayer_to_nicf(f, eps, s)
                stages.append(None)
            except ChainError as exc:
                stages.append(exc.stage)
        good = empty and stages == ["eigen"] * 3
        ok &= good
        if not good:
            msgs.append(f"s={s}: dims {rep.dims}, refusals {stages}")
    report_line("11 negative controls", ok,
                f"{len(GENERIC_POINTS)} generic points: empty kernels, all chains refused at stage 'eigen'"
                if ok else "; ".join(msgs))
    assert ok
