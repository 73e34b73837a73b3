"""Regularized one-sided averages.

The parabolic averages

    f|Av_T^+ = sum_{n>=0} f|T^n,        f|Av_T^- = -sum_{n<=-1} f|T^n

only converge for Re s > 1/2.  Writing ``f|S = q`` (so that
``f(x) = |x|^{-2s} q(-1/x)``) turns the tail of the series into

    sum_{n>=n0} ((x+n)^2)^{-s} q(sigma/(x+n))
        = sum_k q_k sigma^k zeta(2s+k, x+n0)

which is the analytic continuation to the whole strip (the ``k = 0`` term
carries the pole at ``s = 1/2``).  :func:`shift_sum_matrix` is the
workhorse; it is shared with the transfer operators.

The hyperbolic average over ``eta = T S T^2`` is a geometric-type sum that
converges for Re s > 0 because ``eta`` contracts towards its attracting
fixed point ``1/phi``.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .mobius import ETA, GroupElem, PHI_FLOAT
from .special import hurwitz_zeta_table, pow_sq


class PoleError(ValueError):
    """Raised at the pole s = 1/2 of the regularized averages."""


class ResolutionError(RuntimeError):
    """A truncation (Chebyshev degree, tail order, recursion) did not converge."""


def check_not_pole(s: complex, tol: float = 1e-12) -> None:
    if abs(complex(s) - 0.5) < tol:
        raise PoleError("regularized averages have a pole at s = 1/2")


def shift_sum_matrix(x, s: complex, sigma: int, n0: int, n_direct: int, k_tail: int,
                     basis, taylor: np.ndarray | None = None) -> np.ndarray:
    """Matrix of the linear map  q(node values) -> sum_{n>=n0} ((x+n)^2)^{-s} q(sigma/(x+n)).

    ``q`` is represented in ``basis`` (a :class:`~mayernicf.funcrep.contour.ContourBasis`
    whose interior contains 0).  At least ``n_direct`` terms are summed
    explicitly -- more if needed so that the remaining arguments lie well
    inside the Taylor disc -- and the remainder through Taylor coefficients
    of ``q`` at 0 and Hurwitz zeta values.  Requires ``Re(x + n0) > 0``.
    """
    check_not_pole(s)
    x = np.atleast_1d(np.asarray(x, dtype=complex))
    if np.any((x + n0).real <= 0):
        raise ValueError("shift sum needs Re(x + n0) > 0 (branch check)")
    r = basis.taylor_radius()
    if taylor is None:
        taylor = basis.taylor0(k_tail, r)
    # tail arguments must satisfy |1/(x+n)| < r/1.3 for the Taylor series
    need = int(math.ceil(1.3 / r - float(np.min(x.real)) - n0))
    n_dir = max(n_direct, need)
    out = np.zeros((len(x), basis.N), dtype=complex)
    for n in range(n0, n0 + n_dir):
        u = x + n
        out += pow_sq(u, s)[:, None] * basis.interp(sigma / u)
    a = x + n0 + n_dir
    Z = hurwitz_zeta_table(2 * s, k_tail, a) * float(sigma) ** np.arange(k_tail)
    out += Z @ taylor[:k_tail]
    return out


def regularized_shift_sum(q: Callable, sigma: int, s: complex, x, n0: int = 0,
                          n_direct: int = 24, k_tail: int = 28,
                          radius: float = 0.25, tol: float = 1e-12,
                          taylor: str | np.ndarray = "fft") -> np.ndarray:
    """``sum_{n>=n0} ((x+n)^2)^{-s} q(sigma/(x+n))``, continued to Re s > 0.

    ``q`` is a callable analytic on a disc of radius ``radius`` around 0.
    Its Taylor coefficients come from a Cauchy FFT on that circle
    (``taylor="fft"``, needs complex evaluation), from a Chebyshev fit on
    ``[-radius, radius]`` (``taylor="real"``, real samples only), or are given
    directly as an array.  Direct terms are added until the remaining
    arguments lie inside ``radius/1.3``.
    """
    check_not_pole(s)
    x = np.atleast_1d(np.asarray(x, dtype=complex))
    if np.any((x + n0).real <= 0):
        raise ValueError("shift sum needs Re(x + n0) > 0")
    if isinstance(taylor, str):
        if taylor == "fft":
            M = max(64, 2 * k_tail)
            zc = radius * np.exp(2j * np.pi * np.arange(M) / M)
            coef = np.fft.fft(np.asarray(q(zc), dtype=complex)) / M
            coef = coef[:k_tail] / radius ** np.arange(k_tail)
        elif taylor == "real":
            coef = taylor_from_real(q, radius, k_tail)
        else:
            raise ValueError(f"unknown Taylor mode {taylor!r}")
    else:
        coef = np.asarray(taylor, dtype=complex)[:k_tail]
    n_dir = max(n_direct, int(math.ceil(1.3 / radius - float(np.min(x.real)) - n0)))
    total = np.zeros(len(x), dtype=complex)
    for n in range(n0, n0 + n_dir):
        u = x + n
        total += pow_sq(u, s) * np.asarray(q(sigma / u), dtype=complex)
    a = x + n0 + n_dir
    terms = hurwitz_zeta_table(2 * s, len(coef), a) * (coef * float(sigma) ** np.arange(len(coef)))
    total += terms.sum(axis=1)
    last = float(np.max(np.abs(terms[:, -1]))) if len(coef) else 0.0
    if last > tol * max(1.0, float(np.max(np.abs(total)))):
        raise ResolutionError(f"tail truncation not converged (last term {last:.2e})")
    return total


# ---------------------------------------------------------------------------
# Averages acting on function objects
# ---------------------------------------------------------------------------

def _vfn_base():
    from .funcrep.vfn import VFn

    return VFn


def taylor_from_real(q, delta: float, k_tail: int, fit_tol: float = 1e-13) -> np.ndarray:
    """Taylor coefficients at 0 of ``q`` using only real samples on ``[-delta, delta]``.

    ``q`` is interpolated by a Chebyshev series (degree adapted until the
    trailing coefficients fall below ``fit_tol``); the polynomial is then
    sampled on the circle of radius ``delta/4`` (where it is still well
    conditioned) and the coefficients come from an FFT.
    """
    from .funcrep.analytic import fit_chart
    from .funcrep.chebyshev import clenshaw

    fitted = fit_chart(q, (-delta, delta), N=32, tol=fit_tol)
    c = fitted.coeffs
    keep = np.nonzero(np.abs(c) > 1e-17 * np.max(np.abs(c)))[0] if np.any(c) else []
    c = c[: keep[-1] + 1] if len(keep) else c[:1]
    r = delta / 4
    M = max(64, 2 * k_tail)
    zc = r * np.exp(2j * np.pi * np.arange(M) / M)
    coef = np.fft.fft(clenshaw(c, zc / delta)) / M
    return coef[:k_tail] / r ** np.arange(k_tail)


def taylor_at_inf(f, delta: float, k_tail: int, fit_tol: float = 1e-13) -> np.ndarray:
    """Taylor coefficients at 0 of ``q = f|S`` from real samples on ``[-delta, delta]``."""
    return taylor_from_real(f.at_inf, delta, k_tail, fit_tol)


def _inf_radius(f) -> float:
    """Half the distance from 0 to the nearest singularity of ``f|S``, capped at 1/4."""
    delta = 0.25
    for p in getattr(f, "sing", ()):
        if p is None:
            continue
        if np.isinf(p):
            raise ValueError("function is singular at infinity; the parabolic average is undefined")
        if p != 0:
            delta = min(delta, 0.5 / abs(p))
    return delta


class AvParabolic:
    """``f | Av_T^{sign}`` as a lazily evaluated function.

    ``sign=+1``: ``sum_{n>=0} f(x+n)``, valid on ``(a, inf)``;
    ``sign=-1``: ``-sum_{n>=1} f(x-n)``, valid on ``(-inf, b+1)``,
    where ``(a, b)_c`` is a cyclic interval around ``inf`` on which ``f`` is
    analytic.  Both series are continued to ``Re s > 0`` (``s != 1/2``) by
    Hurwitz zeta tails.
    """

    def __new__(cls, *args, **kwargs):
        # create a VFn subclass lazily to avoid a circular import
        VFn = _vfn_base()
        if not issubclass(cls, VFn):
            cls = type(cls.__name__, (cls, VFn), {})
        return object.__new__(cls)

    def __init__(self, f, sign: int = +1, k_tail: int = 28, delta: float | None = None):
        if sign not in (+1, -1):
            raise ValueError("sign must be +1 or -1")
        check_not_pole(f.s)
        self.base = f
        self.sign = sign
        self.s = f.s
        self.k_tail = k_tail
        self.delta = _inf_radius(f) if delta is None else delta
        self.sing = tuple(p for p in f.sing if np.isfinite(p))
        self._coef = None

    @property
    def coef(self) -> np.ndarray:
        if self._coef is None:
            self._coef = taylor_at_inf(self.base, self.delta, self.k_tail)
        return self._coef

    def _eval(self, x):
        x = np.asarray(x, dtype=complex)
        if x.size == 0:
            return np.zeros(0, dtype=complex)
        s, sg = self.s, self.sign
        # tail starts where |1/(x+n)| <= delta/8, i.e. twice inside the Cauchy circle
        xs = x if sg > 0 else -x
        n_first = 0 if sg > 0 else 1
        n1 = max(n_first + 1, int(math.ceil(8.0 / self.delta - float(np.min(xs.real)))))
        n = np.arange(n_first, n1)
        X = x[:, None] + sg * n[None, :]
        direct = self.base._eval(X.ravel()).reshape(X.shape).sum(axis=1)
        a = xs + n1
        sigma = -1 if sg > 0 else +1
        K = len(self.coef)
        terms = hurwitz_zeta_table(2 * s, K, a) * (self.coef * float(sigma) ** np.arange(K))
        last = float(np.max(np.abs(terms[:, -1]))) if K else 0.0
        total = direct + terms.sum(axis=1)
        if last > 1e-12 * max(1.0, float(np.max(np.abs(total)))):
            raise ResolutionError(f"parabolic average tail not converged (last term {last:.1e})")
        return total if sg > 0 else -total


class AvHyperbolic:
    """``f | Av_g^{sign}`` for a hyperbolic ``g`` (default ``eta = T S T^2``).

    ``sign=+1``: ``sum_{n>=0} f|g^n``; converges for ``Re s > 0`` at every
    point other than the repelling fixed point, provided ``f`` is analytic
    at the attracting fixed point.  The orbit is followed until it reaches
    the attracting fixed point to machine precision; the rest of the series
    is summed as a geometric series with ratio ``g'(omega)^s``.
    ``sign=-1``: ``-sum_{n>=1} f|g^{-n}``.
    """

    def __new__(cls, *args, **kwargs):
        VFn = _vfn_base()
        if not issubclass(cls, VFn):
            cls = type(cls.__name__, (cls, VFn), {})
        return object.__new__(cls)

    def __init__(self, f, g: GroupElem = ETA, sign: int = +1, maxit: int = 400):
        from .mobius import classify_and_fixed_points, to_float

        if sign not in (+1, -1):
            raise ValueError("sign must be +1 or -1")
        kind, alpha, omega = classify_and_fixed_points(g if sign > 0 else g.inverse())
        if kind != "hyperbolic":
            raise ValueError("hyperbolic average needs a hyperbolic element")
        self.g = g if sign > 0 else g.inverse()
        self.base = f if sign > 0 else f.slash(self.g)
        self.sign = sign
        self.s = f.s
        self.alpha, self.omega = to_float(alpha), to_float(omega)
        if not np.isfinite(self.omega):
            raise ValueError("attracting fixed point at infinity is not supported")
        for p in f.sing:
            if p is not None and np.isfinite(p) and abs(p - self.omega) < 1e-12:
                raise ValueError("f must be analytic at the attracting fixed point")
        self.maxit = maxit
        self.sing = (self.alpha,)
        a, b, c, d = (float(v) for v in (self.g.a, self.g.b, self.g.c, self.g.d))
        self._abcd = (a, b, c, d, abs(a * d - b * c))
        self.ratio = complex(self._abcd[4] ** self.s * pow_sq(c * self.omega + d, self.s))
        self.last_terms = 0

    def _eval(self, x):
        x = np.asarray(x, dtype=complex)
        return self._sum(x.copy(), np.ones(len(x), dtype=complex))

    def at_inf(self, u):
        # (f|Av)|S = sum_n f|g^n S : start the orbit at S(u) = (-1 : u)
        u = np.atleast_1d(np.asarray(u, dtype=complex))
        return self._sum(-np.ones(len(u), dtype=complex), u.copy())

    def _sum(self, num, den):
        """Sum over the orbit of the homogeneous points ``(num : den)``."""
        a, b, c, d, det = self._abcd
        s, om = self.s, self.omega
        # homogeneous coordinates (num, den) = g^n (x, 1), rescaled by exp(L)
        x = num
        L = np.zeros(len(num))
        idx = np.arange(len(num))
        rec = []  # (owner, num, den, L, n)
        tail_w = np.zeros(len(num), dtype=complex)
        done = np.zeros(len(num), dtype=bool)
        for n in range(self.maxit):
            with np.errstate(divide="ignore", invalid="ignore"):
                conv = np.abs(num - om * den) <= 1e-15 * max(1.0, abs(om)) * np.abs(den)
            if np.any(conv):
                tail_w[idx[conv]] = (det ** (n * s) * np.exp(-2 * s * L[conv])
                                     * pow_sq(den[conv], s))
                done[idx[conv]] = True
                keep = ~conv
                num, den, L, idx = num[keep], den[keep], L[keep], idx[keep]
            if len(idx) == 0:
                break
            rec.append((idx, num, den, L, n))
            num, den = a * num + b * den, c * num + d * den
            m = np.maximum(np.abs(num), np.abs(den))
            num, den, L = num / m, den / m, L + np.log(m)
        self.last_terms = n + 1
        out = np.zeros(len(x), dtype=complex)
        if rec:
            own = np.concatenate([r[0] for r in rec])
            NU = np.concatenate([r[1] for r in rec])
            DE = np.concatenate([r[2] for r in rec])
            LL = np.concatenate([r[3] for r in rec])
            NN = np.concatenate([np.full(len(r[0]), r[4]) for r in rec])
            pref = det ** (NN * s) * np.exp(-2 * s * LL)
            vals = np.empty(len(own), dtype=complex)
            chart = np.abs(DE) < 1e-9 * np.abs(NU)
            reg = ~chart
            vals[reg] = pref[reg] * pow_sq(DE[reg], s) * self.base._eval(NU[reg] / DE[reg])
            if np.any(chart):
                vals[chart] = (pref[chart] * pow_sq(NU[chart], s)
                               * self.base.at_inf(-DE[chart] / NU[chart]))
            np.add.at(out, own, vals)
        f_om = complex(self.base._eval(np.array([om], dtype=complex))[0])
        out += tail_w * f_om / (1.0 - self.ratio)
        out[~done] = np.nan  # orbit did not reach omega (point at or too close to alpha)
        return out if self.sign > 0 else -out


def av_parabolic(f, sign: int = +1, s=None, **kw):
    """``f | Av_T^{sign}`` (see :class:`AvParabolic`)."""
    return AvParabolic(f, sign, **kw)


def av_hyperbolic(f, g: GroupElem = ETA, sign: int = +1, s=None, **kw):
    """``f | Av_g^{sign}`` (see :class:`AvHyperbolic`)."""
    return AvHyperbolic(f, g, sign, **kw)


class AvMerged:
    """The single function ``f|Av_T^+ = f|Av_T^-`` of a parabolic ``f``.

    ``f`` must be analytic on the cyclic interval ``(a, b)_c`` around
    ``inf`` (``a > b``).  ``f|Av^+`` is used on ``(a, inf)``, ``f|Av^-`` on
    ``(-inf, b+1)`` and the recursion ``v(x) = f(x) + v(x+1)`` in between.
    The two averages agree (and this defines one function with finitely
    many singularities) exactly when the parabolic obstruction vanishes;
    :meth:`mismatch` measures the disagreement.
    """

    def __new__(cls, *args, **kwargs):
        VFn = _vfn_base()
        if not issubclass(cls, VFn):
            cls = type(cls.__name__, (cls, VFn), {})
        return object.__new__(cls)

    def __init__(self, f, a: float, b: float, **kw):
        if not a > b:
            raise ValueError("need a cyclic interval (a, b)_c around infinity with a > b")
        self.base = f
        self.a, self.b = float(a), float(b)
        self.s = f.s
        self.plus = AvParabolic(f, +1, **kw)
        self.minus = AvParabolic(f, -1, **kw)
        self.sing = tuple(p for p in f.sing if np.isfinite(p))

    def _eval(self, x):
        x = np.asarray(x, dtype=complex)
        out = np.empty(len(x), dtype=complex)
        right = x.real > self.a
        left = x.real < self.b + 1
        mid = ~(right | left)
        if np.any(right):
            out[right] = self.plus._eval(x[right])
        if np.any(left & ~right):
            out[left & ~right] = self.minus._eval(x[left & ~right])
        if np.any(mid):
            xm = x[mid]
            m = np.floor(self.a - xm.real).astype(int) + 1  # x + m > a
            mmax = int(m.max())
            j = np.arange(mmax)
            X = xm[:, None] + j[None, :]
            use = j[None, :] < m[:, None]
            vals = np.zeros(X.shape, dtype=complex)
            vals[use] = self.base._eval(X[use])
            out[mid] = vals.sum(axis=1) + self.plus._eval(xm + m)
        return out

    def mismatch(self, x) -> float:
        """``max |f|Av^+ - f|Av^-|`` over points ``x`` where both series are valid."""
        x = np.asarray(x, dtype=complex)
        return float(np.max(np.abs(self.plus._eval(x) - self.minus._eval(x))))
