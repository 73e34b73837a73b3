"""Three- and four-term functional equations, parity, asymptotics, domain extension.

* three-term equation  ``P = P|T + P|T'``          (``T' = TST``, ``x -> x/(x+1)``)
* four-term equation   ``g + g|ST^2 = g|T^{-1} + g|T^{-1}ST^{-2}``
* parity               ``P|C = +-P``  with ``C: x -> 1/x`` (weight ``2s``)
"""

from __future__ import annotations

import math

import numpy as np

from .averages import ResolutionError
from .funcrep.analytic import fit_chart
from .funcrep.asymptotics import AsymExpansion, fit_asymptotic
from .funcrep.chebyshev import bernstein_rho
from .funcrep.vfn import VFn
from .mobius import C, PHI_FLOAT, T, T_INV, T_PRIME, apply_word
from .transfer.eigenfunctions import EigenComponent, RelationEvaluator
from .transfer.operators import NICF_TERMS

PHI = PHI_FLOAT
ST2 = apply_word("S T^2")
TINV_ST_2 = apply_word("Tinv S T^-2")


def _pts(points):
    return np.atleast_1d(np.asarray(points, dtype=float))


def three_term_residual(P: VFn, s=None, points=None) -> float:
    """``max |P - P|T - P|T'|`` over ``points`` (default: 50 points in ``(0.05, 20)``)."""
    x = np.geomspace(0.05, 20, 50) if points is None else _pts(points)
    r = P(x) - (P | T)(x) - (P | T_PRIME)(x)
    return float(np.max(np.abs(r)))


def four_term_residual(g: VFn, s=None, points=None) -> float:
    """``max |g + g|ST^2 - g|T^{-1} - g|T^{-1}ST^{-2}|`` (default: 50 points in ``(-phi, phi)``
    kept away from the ends so that every translate lies in ``(-phi^2, phi)``)."""
    x = np.linspace(-PHI + 0.02, PHI - 0.02, 50) if points is None else _pts(points)
    r = g(x) + (g | ST2)(x) - (g | T_INV)(x) - (g | TINV_ST_2)(x)
    return float(np.max(np.abs(r)))


def parity_decompose(P: VFn, s=None, window=(0.1, 10.0)):
    """``P = P^+ + P^-`` with ``P^{+-} = (P +- P|C)/2``, so ``P^{+-}|C = +-P^{+-}``.

    ``window`` documents the region where the parts are used; it must be
    invariant under ``x -> 1/x``.
    """
    a, b = window
    if not (0 < a < b and math.isclose(a * b, 1.0, rel_tol=1e-12)):
        raise ValueError("parity window must be of the form [1/X, X]")
    PC = P | C
    return 0.5 * (P + PC), 0.5 * (P - PC)


def parity_residual(P: VFn, eps: int, points=None) -> float:
    """``max |P|C - eps P|`` relative to ``max |P|``."""
    x = np.geomspace(0.1, 10, 41) if points is None else _pts(points)
    a, b = (P | C)(x), P(x)
    return float(np.max(np.abs(a - eps * b)) / max(np.max(np.abs(b)), 1e-300))


def check_simple_asymptotics(P: VFn, s, delta: float = 1e-3, X: float = 1e3, M: int = 8,
                             rtol: float = 1e-6) -> tuple[bool, AsymExpansion, AsymExpansion]:
    """Fit the expansions of ``P`` at ``+inf`` and ``0+``; true iff both fits pass."""
    c_inf = fit_asymptotic(P, "inf", s, M=M, X=X, rtol=rtol)
    c_0 = fit_asymptotic(P, "0", s, M=M, delta=delta, rtol=rtol)
    return bool(c_inf.ok and c_0.ok), c_inf, c_0


# ---------------------------------------------------------------------------
# Extension of nearest-integer eigenpairs to the maximal intervals
# ---------------------------------------------------------------------------

def endpoint_orbit(a1: float, b2: float, a2: float = 1.0, b1: float = 1.0, steps: int = 40):
    """Successive domains ``(-a1, b1)``, ``(-a2, b2)`` reached by the eigen-relation.

    ``a1 -> 3 - 1/a1``, ``b2 -> 3 - 1/b2``, ``b1 = b2 - 1``, ``a2 = a1 - 1``;
    both ``a1`` and ``b2`` increase to ``phi^2``.
    """
    out = [(a1, b1, a2, b2)]
    for _ in range(steps):
        a1, b2 = 3 - 1 / a1, 3 - 1 / b2
        b1, a2 = b2 - 1, a1 - 1
        out.append((a1, b1, a2, b2))
    return out


def _taylor_fft(f, r: float, K: int) -> np.ndarray:
    M = max(64, 2 * K)
    z = r * np.exp(2j * np.pi * np.arange(M) / M)
    c = np.fft.fft(np.asarray(f(z), dtype=complex)) / M
    return c[:K] / r ** np.arange(K)


def extend_to_max_interval(f1, f2, s, domains=((1.0, 1.0), (1.0, 1.0)), lam: complex = 1.0,
                           eps: float = 1e-3, n_direct: int = 24, k_tail: int = 28,
                           check_tol: float = 1e-7, n_check: int = 16, accelerate: bool = True):
    """Extend an eigenpair known on ``(-a1, b1)``, ``(-a2, b2)`` to the maximal intervals.

    ``f1``, ``f2`` are callables (complex arguments allowed) on their
    initial domains ``domains = ((a1, b1), (a2, b2))``.  The eigen-relation
    ``(f1, f2) = (1/lam) L (f1, f2)`` is used as extension formula; the
    relation is first checked on the initial domains and a
    ``ValueError`` is raised if it fails by more than ``check_tol``.
    Returns ``(h1, h2)`` on ``(-phi^2+eps, phi-eps)`` and ``(-phi+eps, phi^2-eps)``.
    With ``accelerate`` the extension is tabulated once by Chebyshev fits on
    most of the maximal intervals, which makes later evaluations cheap.
    """
    (a1, b1), (a2, b2) = domains
    if not (PHI**-2 < a1 < PHI**2 and PHI**-2 < b2 < PHI**2 and 0 < a2 <= 1 and 0 < b1 <= 1):
        raise ValueError("initial domains outside the admissible range")
    dom = [(-a1, b1), (-a2, b2)]
    leaves = [f1, f2]
    margin = 0.95

    def inside(c, z):
        lo, hi = dom[c]
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo) * margin
        return (np.abs(z.real - mid) < half) & (np.abs(z.imag) < 0.05 * half)

    # eigenfunctions grow quickly off the real axis for large |Im s|: keep the
    # Taylor circle small so the FFT coefficients are accurate
    radius = [0.2 * min(-dom[c][0], dom[c][1], 1.0) for c in range(2)]
    taylor = [_taylor_fft(leaves[c], radius[c], k_tail) for c in range(2)]
    ev = RelationEvaluator(s, NICF_TERMS, lam, leaf=lambda c, z: np.asarray(leaves[c](z), dtype=complex),
                           inside=inside, taylor=taylor, radius=radius, n_direct=n_direct)
    # the initial data must satisfy the relation where both sides are available
    for c in range(2):
        lo, hi = dom[c]
        z = np.linspace(lo, hi, n_check + 2)[1:-1] * 0.9
        lhs = np.asarray(leaves[c](z), dtype=complex)
        rhs = ev.apply(c, z.astype(complex)) / complex(lam)
        err = np.max(np.abs(lhs - rhs)) / max(np.max(np.abs(lhs)), 1e-300)
        if err > check_tol:
            raise ValueError(f"input is not an eigenpair (relation residual {err:.1e} on component {c + 1})")
    if accelerate:
        ev = _accelerated(ev, s, lam, k_tail, n_direct)
    h1 = EigenComponent(ev, 0, domain=(-PHI**2 + eps, PHI - eps))
    h2 = EigenComponent(ev, 1, domain=(-PHI + eps, PHI**2 - eps))
    return h1, h2


# Chebyshev windows for the accelerated evaluator: the maximal intervals minus
# a margin, evaluated inside a Bernstein ellipse well below the convergence one
_ACCEL_MARGIN = 0.32
_ACCEL_N = 128
_ACCEL_RHO = 1.04


def _accelerated(ev: RelationEvaluator, s, lam, k_tail: int, n_direct: int) -> RelationEvaluator:
    """Same extension, with Chebyshev fits on most of the maximal intervals as leaves.

    The first-stage evaluator recurses for every point outside the initial
    domains; the fits replace that by a Clenshaw sum except near the ends of
    the maximal intervals.
    """
    m = _ACCEL_MARGIN
    wins = [(-PHI**2 + m, PHI - m), (-PHI + m, PHI**2 - m)]
    fits = [fit_chart(lambda z, c=c: ev(c, z), wins[c], N=_ACCEL_N, s=s, tol=1e-13)
            for c in range(2)]

    def inside(c, z):
        return bernstein_rho(z, *wins[c]) < _ACCEL_RHO

    radius = [0.2, 0.2]
    taylor = [_taylor_fft(fits[c], radius[c], k_tail) for c in range(2)]
    return RelationEvaluator(s, NICF_TERMS, lam, leaf=lambda c, z: fits[c].eval_chart(z),
                             inside=inside, taylor=taylor, radius=radius, n_direct=n_direct)


def pair_shift_residual(h1: VFn, h2: VFn, points=None) -> float:
    """``max |h1 - h2|T|`` relative (the pair has the form ``(g, g|T^{-1})``)."""
    x = np.linspace(-PHI**2 + 0.05, PHI - 0.05, 40) if points is None else _pts(points)
    a, b = h1(x), (h2 | T)(x)
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(a)), 1e-300))


__all__ = [
    "three_term_residual", "four_term_residual", "parity_decompose", "parity_residual",
    "check_simple_asymptotics", "endpoint_orbit", "extend_to_max_interval",
    "pair_shift_residual", "ResolutionError",
]
