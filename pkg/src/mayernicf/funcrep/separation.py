"""Separation of singularities: ``F = F_eta - F_xi`` with one singular point each.

Work in the circle model: the Cayley map ``zeta = (x-i)/(x+i)`` sends
``P^1(R)`` to the unit circle and ``H(zeta) = (1+x^2)^s F(x)`` is holomorphic
on an annulus around the circle, except along the two radial slits through
the images ``p_xi``, ``p_eta`` of the singular points (the two one-sided
branches of ``F`` at a singular point are in general *different* analytic
functions, so ``H`` is not single-valued on a punctured disc there).

Cut the annulus along two radial segments ``l_a``, ``l_b`` placed at the
angular midpoints of the arcs between ``p_xi`` and ``p_eta``.  With the
Cauchy integrals

    D(w) = Phi_a(w) - Phi_b(w),   Phi_l(w) = (1/2 pi i) int_l H(t)/(t-w) dt,

(both segments oriented outwards) the functions

    f_eta = -D + H * 1[U_eta],     f_xi = -D - H * 1[U_xi]

are holomorphic across both cuts (the jump of ``D`` cancels the jump of the
indicator), so ``f_eta`` is singular only at ``p_eta`` and ``f_xi`` only at
``p_xi``, and ``f_eta - f_xi = H``.  Pulling back with ``(1+x^2)^{-s}``
gives the decomposition.  The parts are unique up to adding one function
that is analytic on all of ``P^1(R)``.
"""

from __future__ import annotations

import numpy as np

from ..averages import ResolutionError
from ..special import pow_sq
from .vfn import VFn


def cayley(x):
    """``zeta = (x - i)/(x + i)``; ``inf`` maps to 1."""
    x = np.asarray(x, dtype=complex)
    out = np.ones(x.shape, dtype=complex)
    fin = np.isfinite(x)
    out[fin] = (x[fin] - 1j) / (x[fin] + 1j)
    return out


def cayley_inv(z):
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        return 1j * (1 + z) / (1 - z)


def point_angle(p) -> float:
    """Angle of the image of a real point (or ``inf``) on the unit circle, in ``[0, 2 pi)``."""
    if p is None or np.isinf(p):
        return 0.0
    return float(np.angle(cayley(np.array([p]))[0]) % (2 * np.pi))


def _ccw(a, b):
    """Counter-clockwise angular distance from a to b in ``[0, 2 pi)``."""
    return (b - a) % (2 * np.pi)


class _Splitter:
    """Shared quadrature data for one decomposition."""

    def __init__(self, F: VFn, xi, eta, rho: float, M: int):
        self.F = F
        self.s = F.s
        self.th_xi = point_angle(xi)
        self.th_eta = point_angle(eta)
        if abs(_ccw(self.th_xi, self.th_eta)) < 1e-12:
            raise ValueError("the two singular points must be distinct")
        self.th_a = self.th_xi + 0.5 * _ccw(self.th_xi, self.th_eta)
        self.th_b = self.th_eta + 0.5 * _ccw(self.th_eta, self.th_xi)
        self.rho = rho
        self.M = M
        r, w = np.polynomial.legendre.leggauss(M)
        lo, hi = rho, 1.0 / rho
        self.r = 0.5 * (hi - lo) * r + 0.5 * (hi + lo)
        self.w = 0.5 * (hi - lo) * w
        self.cuts = []
        for th in (self.th_a, self.th_b):
            e = np.exp(1j * th)
            t = self.r * e
            self.cuts.append((e, t, self.H(t), lo * e, hi * e))

    def H(self, zeta):
        """Model function ``(1+x^2)^s F(x)`` at points of the annulus."""
        return self.H_x(cayley_inv(np.asarray(zeta, dtype=complex)))

    def H_x(self, x):
        """Model function in terms of the plane variable.

        For ``|x| > 1`` the chart at infinity is used,
        ``(1+x^2)^s F(x) = (1+u^2)^s (F|S)(u)`` with ``u = -1/x``, so that the
        principal powers never meet their branch cut near the circle.
        """
        x = np.asarray(x, dtype=complex)
        out = np.empty(x.shape, dtype=complex)
        big = ~np.isfinite(x) | (np.abs(x) > 1)
        sm = ~big
        if np.any(sm):
            xs = x[sm]
            out[sm] = np.exp(self.s * np.log(1 + xs * xs)) * self.F._eval(xs)
        if np.any(big):
            with np.errstate(divide="ignore", invalid="ignore"):
                u = np.where(np.isfinite(x[big]), -1.0 / x[big], 0)
            out[big] = np.exp(self.s * np.log(1 + u * u)) * self.F.at_inf(u)
        return out

    def _phi(self, k, w, Hw):
        """Cauchy integral over cut ``k`` with singularity subtraction."""
        e, t, Ht, A, B = self.cuts[k]
        d = t[None, :] - w[:, None]
        integ = (Ht[None, :] - Hw[:, None]) / d
        val = (integ * (e * self.w)[None, :]).sum(axis=1) + Hw * np.log((B - w) / (A - w))
        return val / (2j * np.pi)

    def D(self, w, Hw):
        return self._phi(0, w, Hw) - self._phi(1, w, Hw)

    def region_eta(self, w) -> np.ndarray:
        """Indicator of the sector between the cuts that contains ``p_eta``."""
        th = np.angle(w) % (2 * np.pi)
        return _ccw(self.th_a, th) < _ccw(self.th_a, self.th_b)


class SeparatedPart(VFn):
    """One part of a decomposition computed by :func:`separate_singularities`."""

    def __init__(self, sp: _Splitter, which: str, sing):
        self.sp = sp
        self.which = which
        self.s = sp.s
        self.sing = tuple(sing)

    def _model(self, zeta, Hw):
        sp = self.sp
        D = sp.D(zeta, Hw)
        in_eta = sp.region_eta(zeta)
        if self.which == "eta":
            return -D + np.where(in_eta, Hw, 0)
        return -D - np.where(in_eta, 0, Hw)

    def _eval(self, x):
        x = np.asarray(x, dtype=complex)
        out = np.empty(x.shape, dtype=complex)
        big = np.abs(x) > 1
        sm = ~big
        if np.any(sm):
            xs = x[sm]
            out[sm] = np.exp(-self.s * np.log(1 + xs * xs)) * self._model(cayley(xs), self.sp.H_x(xs))
        if np.any(big):
            out[big] = pow_sq(x[big], self.s) * self.at_inf(-1.0 / x[big])
        return out

    def at_inf(self, u):
        u = np.atleast_1d(np.asarray(u, dtype=complex))
        zeta = (1 + 1j * u) / (1 - 1j * u)
        with np.errstate(divide="ignore", invalid="ignore"):
            x = np.where(u == 0, np.inf, -1.0 / np.where(u == 0, 1, u))
        Hw = self.sp.H_x(x)
        return np.exp(-self.s * np.log(1 + u * u)) * self._model(zeta, Hw)


def separate_singularities(F: VFn, xi, eta, rho: float = 0.85, M: int = 64,
                           check: bool = True, tol: float = 1e-8):
    """Split ``F`` (singular at most at ``xi`` and ``eta``) as ``F = F_eta - F_xi``.

    Returns ``(F_xi, F_eta)`` with ``sing F_xi <= {xi}`` and
    ``sing F_eta <= {eta}``.  ``rho`` sets the radial extent ``[rho, 1/rho]``
    of the two cuts in the circle model (``F`` must continue analytically
    to the corresponding complex neighbourhood).  With ``check`` the
    quadrature is repeated with ``2M`` nodes at a few points and a
    :class:`~mayernicf.averages.ResolutionError` is raised if the results
    differ by more than ``tol`` (relative).
    """
    sp = _Splitter(F, xi, eta, rho, M)
    F_xi = SeparatedPart(sp, "xi", [xi])
    F_eta = SeparatedPart(sp, "eta", [eta])
    if check:
        fine = _Splitter(F, xi, eta, rho, 2 * M)
        probe = np.tan(np.linspace(-1.4, 1.4, 9) + 0.05)
        probe = probe[[min(abs(probe[i] - p) for p in (xi, eta) if np.isfinite(p)) > 0.05
                       if any(np.isfinite(p) for p in (xi, eta)) else True
                       for i in range(len(probe))]]
        a = F_eta(probe)
        b = SeparatedPart(fine, "eta", [eta])(probe)
        scale = max(1.0, float(np.nanmax(np.abs(a))))
        if np.nanmax(np.abs(a - b)) > tol * scale:
            raise ResolutionError("separation quadrature not converged "
                                  f"(doubling M changes the result by {np.nanmax(np.abs(a - b)):.1e})")
    return F_xi, F_eta
