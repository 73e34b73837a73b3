"""Both directions of the correspondence between the two transfer operators.

Downward (Mayer -> nearest-integer):

    f  ->  P = f|T^{-1}  ->  parabolic cocycle with psi_S = P~ = {P; -P|S}
       ->  separate P~ at {0, inf}, cohomologous cocycle psi~ with analytic values
       ->  A = psi~_{TST^2} | Av^+_{TST^2}
       ->  g = A|T - A|ST^{-1} - psi~_{ST^{-2}}|T,   pair (g, g|T^{-1}).

Upward (nearest-integer -> Mayer):

    (g1, g2)  ->  extend to the maximal intervals  ->  theta(g): h, k, Fibonacci cocycle
       ->  separate the two generator values at their singular pairs
       ->  analytic cocycle psi~  ->  obstruction P = 0 ?
       ->  parabolic normalisation psi_S  ->  P = psi_S on (0, inf)
       ->  parity parts f^{+-} = P^{+-}|T.

Every stage records its residuals in a :class:`ChainReport`; a failing
stage raises :class:`ChainError` naming the stage.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .averages import AvHyperbolic, AvParabolic
from .cohomology import Cocycle, cocycle_value, parabolic_normalize, parabolic_obstruction, theta, \
    verify_generator_relations
from .feq import extend_to_max_interval, four_term_residual, pair_shift_residual, parity_decompose, \
    parity_residual, three_term_residual
from .funcrep.analytic import analytic_across, fit
from .funcrep.asymptotics import fit_asymptotic
from .funcrep.separation import separate_singularities
from .funcrep.vfn import PiecewiseFn, VFn, ZeroFn
from .mobius import ETA, PHI_FLOAT, S, T, T_INV, T_PRIME, apply_word
from .transfer.direct import mayer_relation_residual, nicf_relation_residual

PHI = PHI_FLOAT
W = apply_word
TINV_S = W("Tinv S")
ST = W("S T")
S_TINV = W("S Tinv")
T2 = W("T^2")

DEFAULT_TOL = 1e-5
FIT_WINDOW = (-0.9877, 0.9923)  # asymmetric: no node on the break points 0, +-1


class ChainError(RuntimeError):
    """A chain stage failed; ``stage`` names it and ``report`` holds the stages run so far."""

    def __init__(self, stage: str, message: str, report: "ChainReport | None" = None):
        super().__init__(f"stage '{stage}' failed: {message}")
        self.stage = stage
        self.report = report


@dataclass
class StageResult:
    name: str
    passed: bool
    residuals: dict
    seconds: float
    message: str = ""


@dataclass
class ChainReport:
    direction: str
    s: complex
    stages: list = field(default_factory=list)
    dims: dict = field(default_factory=dict)
    scalar: complex | None = None
    correlation: float | None = None

    @property
    def passed(self) -> bool:
        return bool(self.stages) and all(st.passed for st in self.stages)

    @property
    def stage_names(self) -> list:
        return [st.name for st in self.stages]

    def max_residual(self) -> float:
        vals = [v for st in self.stages for v in st.residuals.values() if isinstance(v, float)]
        return max(vals) if vals else 0.0

    def to_dict(self) -> dict:
        d = {
            "direction": self.direction,
            "s": [self.s.real, self.s.imag],
            "passed": self.passed,
            "stages": [asdict(st) for st in self.stages],
            "dims": dict(self.dims),
            "correlation": self.correlation,
        }
        if self.scalar is not None:
            d["scalar"] = [complex(self.scalar).real, complex(self.scalar).imag]
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


class _Stages:
    """Runs named stages, timing them and turning failures into :class:`ChainError`."""

    def __init__(self, report: ChainReport, tol: float):
        self.report = report
        self.tol = tol

    def record(self, name: str, residuals: dict, t0: float, limits: dict | None = None):
        limits = limits or {}
        residuals = {k: float(v) for k, v in residuals.items()}
        bad = [k for k, v in residuals.items() if not (v <= limits.get(k, self.tol))]
        msg = ", ".join(f"{k}={residuals[k]:.2e} > {limits.get(k, self.tol):.0e}" for k in bad)
        self.report.stages.append(StageResult(name, not bad, residuals, time.perf_counter() - t0, msg))
        if bad:
            raise ChainError(name, msg, self.report)

    def fail(self, name: str, exc: Exception, t0: float):
        self.report.stages.append(StageResult(name, False, {}, time.perf_counter() - t0, str(exc)))
        raise ChainError(name, str(exc), self.report) from exc


def _sup(F, x) -> float:
    v = np.asarray(F(x), dtype=complex)
    v = v[np.isfinite(v)]
    return float(np.max(np.abs(v))) if len(v) else np.inf


def _is_zero_input(f, x) -> bool:
    if isinstance(f, ZeroFn):
        return True
    return _sup(f, x) == 0.0


def correlation(a, b) -> float:
    """``|<a, b>| / (|a| |b|)`` of two sample vectors (1 for proportional vectors)."""
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        return 0.0
    return float(abs(np.vdot(a, b)) / (na * nb))


def _translated(f, k: int):
    """``f|T^k`` keeping the fast path of eigenfunction components."""
    if hasattr(f, "translated"):
        return f.translated(k)
    return f | W(f"T^{k}")


# ---------------------------------------------------------------------------
# Mayer -> nearest-integer
# ---------------------------------------------------------------------------

@dataclass
class DownwardResult:
    g1: VFn
    g2: VFn
    report: ChainReport
    P: VFn | None = None
    cocycle: Cocycle | None = None
    analytic_cocycle: Cocycle | None = None
    A: VFn | None = None
    g_direct: VFn | None = None  # the composite expression for g (slow to evaluate)


def mayer_to_nicf(f, eps: int, s, tol: float = DEFAULT_TOL, rho: float = 0.85, M: int = 64,
                  n_points: int = 20) -> DownwardResult:
    """Image of a Mayer eigenfunction ``f`` (eigenvalue ``eps``) under the downward chain.

    ``f`` must be evaluable on ``(-1, inf)`` (complex arguments near the
    real axis allowed).  Returns the pair ``(g, g|T^{-1})`` on
    ``(-phi^2, phi)``, ``(-phi, phi^2)``: ``g`` is computed from the
    cocycle, fitted on ``(-1, 1)`` (and ``g|T^{-1}`` likewise) and continued
    to the maximal intervals by the eigen-relation.  Stage residuals above ``tol``
    raise :class:`ChainError`.
    """
    s = complex(s)
    if eps not in (+1, -1):
        raise ValueError("eps must be +1 or -1")
    report = ChainReport("mayer_to_nicf", s)
    run = _Stages(report, tol)
    x01 = np.linspace(0.0, 1.0, n_points)

    # (1) eigenfunction and period function
    t0 = time.perf_counter()
    if _is_zero_input(f, x01):
        for name in ("eigen", "cocycle", "separation", "average", "four-term"):
            run.record(name, {}, t0)
        z = ZeroFn(s)
        return DownwardResult(z, z, report)
    try:
        eig = mayer_relation_residual(f, s, eps, x01)
        P = _translated(f, -1)
        xp = np.geomspace(0.05, 20, 50)
        pscale = _sup(P, xp)
        res = {"eigen": eig,
               "three_term": three_term_residual(P, s, xp) / pscale,
               "parity": parity_residual(P, eps)}
        xa = np.array([0.13, 0.5, 1.7, 4.2])
        avP = AvParabolic(P | T_PRIME, +1)
        res["T'Av+"] = _sup(avP - P, xa) / pscale
    except Exception as exc:  # numerical failure inside the stage
        run.fail("eigen", exc, t0)
    run.record("eigen", res, t0)

    # (2) parabolic cocycle
    t0 = time.perf_counter()
    Pt = PiecewiseFn([(0, np.inf, P), (-np.inf, 0, -(P | S))], [0, np.inf], s)
    psi = Cocycle(Pt, ZeroFn(s), s, "parabolic")
    rel = verify_generator_relations(psi)
    x = np.array([-3.1, -1.7, -0.6, -0.21, 0.37, 0.8, 1.3, 2.9])
    eta_val = cocycle_value(psi, "T S T^2")
    rel["TST^2"] = _sup(eta_val - (Pt | T2), x) / pscale
    run.record("cocycle", rel, t0)

    # (3) separation of singularities at {0, inf}
    t0 = time.perf_counter()
    try:
        F0, Finf = separate_singularities(Pt, 0.0, np.inf, rho=rho, M=M)
    except Exception as exc:
        run.fail("separation", exc, t0)
    ct = psi.shifted(Finf)
    ana = {"psi_S@0": analytic_across(ct.psi_S, 0.0, abs_scale=pscale),
           "psi_S@inf": analytic_across(ct.psi_S, np.inf, abs_scale=pscale),
           "psi_T@inf": analytic_across(ct.psi_T, np.inf, abs_scale=pscale),
           "psi_TinvS@0": analytic_across(ct.psi_TinvS, 0.0, abs_scale=pscale)}
    run.record("separation", ana, t0)

    # (4) hyperbolic average
    t0 = time.perf_counter()
    pe = cocycle_value(ct, "T S T^2")
    try:
        A = AvHyperbolic(pe, ETA, +1)
        xt = np.array([-2.3, -0.9, -0.2, 0.4, 1.1])
        tele = _sup(A - (A | ETA) - pe, xt) / max(_sup(pe, xt), 1e-300)
    except Exception as exc:
        run.fail("average", exc, t0)
    run.record("average", {"telescoping": tele}, t0)

    # (5) the nearest-integer eigenfunction: g on (-1, 1) and (-2, 0) is fitted
    # and extended to the maximal intervals by the eigen-relation
    t0 = time.perf_counter()
    pst = cocycle_value(ct, "S T^-2")
    g = (A | T) - (A | S_TINV) - (pst | T)
    try:
        xg = np.linspace(-PHI + 0.02, PHI - 0.02, 50)
        gscale = _sup(g, xg)
        fourt = four_term_residual(g, s, xg) / gscale
        q1 = fit(g, FIT_WINDOW, N=64, tol=1e-12)
        q2 = fit(g | T_INV, FIT_WINDOW, N=64, tol=1e-12)
        g1, g2 = extend_to_max_interval(q1, q2, s, eps=0.0, check_tol=tol)
        res = {"four_term": fourt,
               "nicf_eigen": nicf_relation_residual(g1, g2, s, 1.0),
               "extension": _sup(g1 - g, xg) / gscale}
    except Exception as exc:
        run.fail("four-term", exc, t0)
    run.record("four-term", res, t0)
    return DownwardResult(g1, g2, report, P, psi, ct, A, g)


# ---------------------------------------------------------------------------
# nearest-integer -> Mayer
# ---------------------------------------------------------------------------

@dataclass
class UpwardResult:
    f_plus: VFn
    f_minus: VFn
    report: ChainReport
    g: VFn | None = None
    fib_cocycle: Cocycle | None = None
    analytic_cocycle: Cocycle | None = None
    obstruction: VFn | None = None
    cocycle: Cocycle | None = None
    P: VFn | None = None

    @property
    def dimension(self) -> int:
        return int(self.report.dims.get("mayer", 0))

    def nonzero_part(self):
        """``(eps, f^eps)`` for the larger parity part."""
        n = self.report.dims
        return (+1, self.f_plus) if n.get("norm_plus", 0) >= n.get("norm_minus", 0) else (-1, self.f_minus)


def nicf_to_mayer(pair, s, tol: float = DEFAULT_TOL, pre_tol: float = 1e-7, rho: float = 0.85,
                  M: int = 64, domains=((1.0, 1.0), (1.0, 1.0)), zero_ratio: float = 1e-6,
                  obstruction_tol: float = 1e-7) -> UpwardResult:
    """Image of a nearest-integer 1-eigenfunction ``(g1, g2)`` under the upward chain.

    The pair needs to be known on ``(-a1, b1)``, ``(-a2, b2)`` (``domains``).
    Returns ``(f^+, f^-)``, the parity parts of the resulting Mayer
    eigenfunction; a part whose sup is below ``zero_ratio`` times the
    other counts as zero in ``report.dims``.
    """
    s = complex(s)
    g1, g2 = pair
    report = ChainReport("nicf_to_mayer", s)
    run = _Stages(report, tol)
    xin = np.linspace(-0.9, 0.9, 19)

    # (1) input check and extension
    t0 = time.perf_counter()
    if _is_zero_input(g1, xin) and _is_zero_input(g2, xin):
        for name in ("eigen", "theta", "separation", "analytic", "obstruction", "parabolic", "parity"):
            run.record(name, {}, t0)
        report.dims = {"mayer": 0, "plus": 0, "minus": 0}
        z = ZeroFn(s)
        return UpwardResult(z, z, report)
    try:
        eig = nicf_relation_residual(g1, g2, s, 1.0)
        xs = np.linspace(-0.9, 0.0, 10)
        shift = _sup(g1 - (g2 | T), xs) / max(_sup(g1, xs), 1e-300)
    except Exception as exc:
        run.fail("eigen", exc, t0)
    if eig > pre_tol or shift > pre_tol:
        run.record("eigen", {"nicf_eigen": eig, "pair_shift": shift}, t0,
                   {"nicf_eigen": pre_tol, "pair_shift": pre_tol})
    try:
        # Chebyshev fits of the input make the many leaf evaluations cheap
        (a1, b1), (a2, b2) = domains
        q1 = fit(g1, (FIT_WINDOW[0] * a1, FIT_WINDOW[1] * b1), N=64, s=s, tol=1e-12)
        q2 = fit(g2, (FIT_WINDOW[0] * a2, FIT_WINDOW[1] * b2), N=64, s=s, tol=1e-12)
        h1, h2 = extend_to_max_interval(q1, q2, s, domains, eps=0.0)
        ext = pair_shift_residual(h1, h2)
    except Exception as exc:
        run.fail("eigen", exc, t0)
    run.record("eigen", {"nicf_eigen": eig, "pair_shift": shift, "extended_pair_shift": ext}, t0,
               {"nicf_eigen": pre_tol, "pair_shift": pre_tol})
    g = h1

    # (2) Fibonacci cocycle
    t0 = time.perf_counter()
    try:
        th = theta(g, s, tol=tol, check=False)
    except Exception as exc:
        run.fail("theta", exc, t0)
    res = dict(th.reassembly)
    res["far"] = th.far_residual
    res.update({f"analytic{k}": v for k, v in th.analyticity.items()})
    run.record("theta", res, t0)
    gscale = _sup(g, np.linspace(-PHI**2 + 0.01, PHI - 0.01, 120))

    # (3) separation of the generator values
    t0 = time.perf_counter()
    try:
        _, K = separate_singularities(th.c_phi_phiinv, 1 / PHI, -PHI, rho=rho, M=M)
        _, H = separate_singularities(th.c_phi_phi, PHI, -PHI, rho=rho, M=M)
    except Exception as exc:
        run.fail("separation", exc, t0)
    run.record("separation", {"K-H@-phi": analytic_across(K - H, -PHI, abs_scale=gscale)}, t0)

    # (4) analytic cocycle
    t0 = time.perf_counter()
    c1, c2 = th.c_phi_phiinv, th.c_phi_phi
    ct = Cocycle.from_S_TinvS(-c1 + K - (K | S), -c2 + K - (K | TINV_S), s)
    res = {}
    for name, F in (("psi_S", ct.psi_S), ("psi_TinvS", ct.psi_TinvS), ("psi_T", ct.psi_T)):
        for label, p in (("-phi", -PHI), ("1/phi", 1 / PHI), ("phi", PHI), ("-1/phi", -1 / PHI),
                         ("0", 0.0), ("inf", np.inf)):
            res[f"{name}@{label}"] = analytic_across(F, p, abs_scale=gscale)
    res.update({f"rel_{k}": v for k, v in verify_generator_relations(ct).items()})
    run.record("analytic", res, t0)

    # (5) obstruction
    t0 = time.perf_counter()
    try:
        ob = parabolic_obstruction(ct)
    except Exception as exc:
        run.fail("obstruction", exc, t0)
    run.record("obstruction", {"sup": ob.sup / gscale, "periodicity": ob.periodicity / gscale}, t0,
               {"sup": obstruction_tol})

    # (6) parabolic normalisation
    t0 = time.perf_counter()
    try:
        pr = parabolic_normalize(ct, tol=tol, check=False)
        psi = pr.cocycle
        P = psi.psi_S
        xp = np.geomspace(0.05, 20, 50)
        pscale = _sup(P, xp)
        res = {"av_mismatch": pr.mismatch, "three_term": three_term_residual(P, s, xp) / pscale}
        res.update({f"rel_{k}": v for k, v in verify_generator_relations(psi).items()})
        a_inf = fit_asymptotic(P, "inf", s, M=8, X=1e3)
        a_0 = fit_asymptotic(P, "0", s, M=8, delta=1e-3)
        res["asym_inf"], res["asym_0"] = a_inf.residual, a_0.residual
    except Exception as exc:
        run.fail("parabolic", exc, t0)
    run.record("parabolic", res, t0)

    # (7) parity split
    t0 = time.perf_counter()
    Pp, Pm = parity_decompose(P, s)
    fp, fm = Pp | T, Pm | T
    x01 = np.linspace(0.0, 1.0, 20)
    n_p, n_m = _sup(fp, x01), _sup(fm, x01)
    big = max(n_p, n_m)
    res = {}
    dims = {"norm_plus": n_p, "norm_minus": n_m}
    for eps, fe, n in ((+1, fp, n_p), (-1, fm, n_m)):
        nonzero = big > 0 and n > zero_ratio * big
        dims["plus" if eps > 0 else "minus"] = int(nonzero)
        if nonzero:
            try:
                res[f"mayer_eigen{eps:+d}"] = mayer_relation_residual(fe, s, eps, x01)
            except Exception as exc:
                run.fail("parity", exc, t0)
    dims["mayer"] = dims["plus"] + dims["minus"]
    report.dims = dims
    run.record("parity", res, t0)
    return UpwardResult(fp, fm, report, g, th.cocycle, ct, ob.P, psi, P)


# ---------------------------------------------------------------------------
# Round trips and the dimension table
# ---------------------------------------------------------------------------

@dataclass
class RoundTrip:
    down: DownwardResult
    up: UpwardResult
    correlation: float  # of the returned Mayer eigenfunction with the input
    scalar: complex  # out ~ scalar * in
    nicf_correlation: float | None = None  # of the intermediate g with an independent eigenpair


def round_trip(f, eps: int, s, tol: float = DEFAULT_TOL, reference_pair=None,
               points=None) -> RoundTrip:
    """``nicf_to_mayer(mayer_to_nicf(f))`` compared with ``f`` (scalar match on ``[0, 1]``)."""
    down = mayer_to_nicf(f, eps, s, tol)
    up = nicf_to_mayer((down.g1, down.g2), s, tol)
    x = np.linspace(0.0, 1.0, 30) if points is None else np.asarray(points, dtype=float)
    out = (up.f_plus if eps > 0 else up.f_minus)(x)
    fin = np.asarray(f(x), dtype=complex)
    corr = correlation(out, fin)
    scalar = complex(np.vdot(fin, out) / np.vdot(fin, fin))
    ncorr = None
    if reference_pair is not None:
        xg = np.linspace(-PHI**2 + 0.05, PHI - 0.05, 40)
        ncorr = correlation(down.g1(xg), reference_pair[0](xg))
    for rep in (down.report, up.report):
        rep.correlation, rep.scalar = corr, scalar
    return RoundTrip(down, up, corr, scalar, ncorr)


@dataclass
class CorrespondenceReport:
    s: complex
    N: int
    dims: dict  # mayer+1, mayer-1, nicf
    dets: dict
    eigenvalues: dict  # closest eigenvalue per channel
    chains: dict = field(default_factory=dict)  # name -> ChainReport dict
    errors: dict = field(default_factory=dict)

    @property
    def dimension_equality(self) -> bool:
        return self.dims["mayer+1"] + self.dims["mayer-1"] == self.dims["nicf"]

    @property
    def passed(self) -> bool:
        return self.dimension_equality and not self.errors and all(c["passed"] for c in self.chains.values())

    def to_dict(self) -> dict:
        cx = lambda z: [complex(z).real, complex(z).imag]  # noqa: E731
        return {"s": cx(self.s), "N": self.N, "dims": self.dims,
                "dets": {k: cx(v) for k, v in self.dets.items()},
                "eigenvalues": {k: cx(v) for k, v in self.eigenvalues.items()},
                "dimension_equality": self.dimension_equality, "chains": self.chains,
                "errors": self.errors, "passed": self.passed}


def correspondence_report(s, N: int = 40, rank_tol: float = 1e-4, run_chains: bool = True,
                          tol: float = DEFAULT_TOL) -> CorrespondenceReport:
    """Kernel dimensions, determinants and (when a kernel is present) both chain runs at ``s``."""
    from .transfer.operators import build_operator
    from .transfer.spectral import fredholm_det, kernel_basis, mayer_eigenfunction, nicf_eigenpair

    s = complex(s)
    mop = build_operator("mayer", s, N)
    nop = build_operator("nicf", s, N)
    dims, eigs = {}, {}
    for name, op, eps in (("mayer+1", mop, +1), ("mayer-1", mop, -1), ("nicf", nop, +1)):
        V, w = kernel_basis(op, eps, rank_tol)
        dims[name] = int(V.shape[1])
        allw = np.linalg.eigvals(op.matrix)
        eigs[name] = complex(allw[np.argmin(np.abs(allw - eps))])
    dets = {"mayer+1": fredholm_det(mop, +1), "mayer-1": fredholm_det(mop, -1), "nicf": fredholm_det(nop, +1)}
    rep = CorrespondenceReport(s, N, dims, dets, eigs)
    if not run_chains:
        return rep
    reference = None
    if dims["nicf"] > 0:
        g1, g2, _ = nicf_eigenpair(s, N, rank_tol)
        reference = (g1, g2)
        try:
            rep.chains["nicf_to_mayer"] = nicf_to_mayer(reference, s, tol).report.to_dict()
        except ChainError as exc:
            rep.errors["nicf_to_mayer"] = str(exc)
    for eps in (+1, -1):
        if dims[f"mayer{eps:+d}"] == 0:
            continue
        f, _ = mayer_eigenfunction(s, eps, N, rank_tol)
        try:
            rt = round_trip(f, eps, s, tol, reference)
            rep.chains[f"mayer_to_nicf{eps:+d}"] = rt.down.report.to_dict()
            rep.chains[f"round_trip{eps:+d}"] = rt.up.report.to_dict()
        except ChainError as exc:
            rep.errors[f"round_trip{eps:+d}"] = str(exc)
    return rep


__all__ = [
    "ChainError", "StageResult", "ChainReport", "DownwardResult", "UpwardResult", "RoundTrip",
    "CorrespondenceReport", "mayer_to_nicf", "nicf_to_mayer", "round_trip", "correspondence_report",
    "correlation",
]
