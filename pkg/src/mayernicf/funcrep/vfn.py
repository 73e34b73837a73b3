"""Lazy principal-series vectors and the weight-2s slash action.

A :class:`VFn` is a function on (parts of) the projective line ``P^1(R)``
that can be evaluated at arrays of real or complex points.  Operations such
as slashing, linear combination and piecewise assembly build new ``VFn``
objects without resampling; values are computed on demand.  This keeps the
long compositions in the correspondence chains exact up to the accuracy of
the leaves (eigenfunctions, Chebyshev fits, quadratures).

Conventions
-----------
* ``(h|g)(x) = |det g|^s |cx+d|^{-2s} h(gx)`` -- a right action.  Off the
  real axis ``|u|^{-2s}`` is continued holomorphically (:func:`pow_sq`).
* The chart at infinity: ``h(x) = |x|^{-2s} (h|S)(-1/x)``;
  :meth:`VFn.at_inf` returns ``h|S`` near 0.
* Points where a function is not defined evaluate to ``nan``.
* Cyclic intervals ``(a, b)_c`` of ``P^1(R)`` are pairs of floats
  (``+-inf`` allowed).  If ``a < b`` it is the ordinary interval; if
  ``a >= b`` it is ``{x > a} U {inf} U {x < b}``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Number

import numpy as np

from ..mobius import GroupElem, GroupRingElem, S as S_ELEM
from ..special import pow_sq


def _is_exact(x) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


def _int_weight(s) -> int | None:
    """``s`` as an int if it is an integer (needed for exact evaluation)."""
    s = complex(s)
    if s.imag == 0 and float(s.real).is_integer():
        return int(s.real)
    return None


def in_cyclic(x, a: float, b: float, closed: bool = False) -> np.ndarray:
    """Membership of real (parts of) points in the cyclic interval ``(a, b)_c``."""
    x = np.real(np.asarray(x, dtype=complex))
    if a < b:
        return (x >= a) & (x <= b) if closed else (x > a) & (x < b)
    return (x >= a) | (x <= b) if closed else (x > a) | (x < b)


def project_real(z) -> np.ndarray:
    """Real point in the same circle-model sector as ``z``.

    Points of the upper/lower half plane are moved along the radius of the
    Cayley image ``(z-i)/(z+i)`` to the unit circle; this is the natural way to
    decide which piece of a piecewise function continues to ``z``.  Real
    inputs are returned unchanged.
    """
    z = np.asarray(z, dtype=complex)
    out = z.real.copy()
    cplx = z.imag != 0
    if np.any(cplx):
        zc = z[cplx]
        th = np.angle((zc - 1j) / (zc + 1j))
        with np.errstate(divide="ignore"):
            out[cplx] = -1.0 / np.tan(th / 2)
    return out


def cyclic_contains_inf(a: float, b: float) -> bool:
    return a >= b or np.isinf(a) and a > 0 or np.isinf(b) and b < 0


class VFn:
    """Base class: a (partially defined) function of weight ``2s``."""

    s: complex = 0j
    sing: tuple = ()

    # -- evaluation ------------------------------------------------------
    def __call__(self, x):
        if _is_exact(x):
            return self._eval_exact(Fraction(x))
        arr = np.asarray(x, dtype=complex)
        out = self._eval(arr.ravel())
        return out.reshape(arr.shape) if arr.ndim else complex(out[0])

    def _eval(self, x: np.ndarray) -> np.ndarray:  # pragma: no cover - abstract
        raise NotImplementedError

    def _eval_exact(self, x: Fraction):
        raise TypeError(f"{type(self).__name__} does not support exact evaluation")

    def at_inf(self, u):
        """``(h|S)(u)``, the function in the chart at infinity."""
        u = np.atleast_1d(np.asarray(u, dtype=complex))
        with np.errstate(divide="ignore", invalid="ignore"):
            return pow_sq(u, self.s) * self._eval(-1.0 / u)

    # -- algebra ---------------------------------------------------------
    def slash(self, g: GroupElem) -> "VFn":
        return SlashFn(self, g)

    def slash_ring(self, xi: GroupRingElem) -> "VFn":
        return LinComb([(c, self.slash(g)) for g, c in xi.terms.items()], self.s)

    def __or__(self, g):
        if isinstance(g, GroupRingElem):
            return self.slash_ring(g)
        return self.slash(g)

    def __add__(self, other):
        return LinComb([(1, self), (1, other)], self.s)

    def __sub__(self, other):
        return LinComb([(1, self), (-1, other)], self.s)

    def __neg__(self):
        return LinComb([(-1, self)], self.s)

    def __mul__(self, c):
        if not isinstance(c, Number):
            return NotImplemented
        return LinComb([(c, self)], self.s)

    __rmul__ = __mul__


class FuncFn(VFn):
    """Wrap a vectorized callable ``f(x)`` (optionally with an at-infinity chart)."""

    def __init__(self, f, s, sing=(), at_inf=None, name: str = ""):
        self.f = f
        self.s = complex(s)
        self.sing = tuple(sing)
        self._inf = at_inf
        self.name = name

    def _eval(self, x):
        return np.asarray(self.f(x), dtype=complex) * np.ones(x.shape)

    def _eval_exact(self, x):
        return self.f(x)

    def at_inf(self, u):
        if self._inf is not None:
            u = np.atleast_1d(np.asarray(u, dtype=complex))
            return np.asarray(self._inf(u), dtype=complex) * np.ones(u.shape)
        return super().at_inf(u)

    def __repr__(self):
        return f"FuncFn({self.name or self.f!r})"


class ZeroFn(VFn):
    def __init__(self, s):
        self.s = complex(s)

    def _eval(self, x):
        return np.zeros(x.shape, dtype=complex)

    def _eval_exact(self, x):
        return Fraction(0)

    def at_inf(self, u):
        return np.zeros(np.shape(np.atleast_1d(u)), dtype=complex)


class SlashFn(VFn):
    """``base | g``."""

    def __init__(self, base: VFn, g: GroupElem):
        self.base = base
        self.g = g
        self.s = base.s
        self.sing = tuple(_preimage(g, p) for p in base.sing)

    def _eval(self, x):
        a, b, c, d = (float(v) for v in (self.g.a, self.g.b, self.g.c, self.g.d))
        det = abs(a * d - b * c)
        den = c * x + d
        num = a * x + b
        out = np.empty(x.shape, dtype=complex)
        near = np.abs(den) < 1e-9 * np.abs(num)
        far = ~near
        if np.any(far):
            out[far] = det**self.s * pow_sq(den[far], self.s) * self.base._eval(num[far] / den[far])
        if np.any(near):
            # route through the chart at infinity: h|g = (h|S)|(S g)
            u = -den[near] / num[near]
            out[near] = det**self.s * pow_sq(num[near], self.s) * self.base.at_inf(u)
        return out

    def _eval_exact(self, x):
        w = _int_weight(self.s)
        if w is None:
            raise TypeError("exact evaluation needs an integer weight parameter")
        g = self.g
        den = g.c * x + g.d
        if den == 0:
            raise ZeroDivisionError("exact evaluation at the pole of the slash")
        det = abs(g.a * g.d - g.b * g.c)
        return Fraction(det) ** w * Fraction(den * den) ** (-w) * self.base._eval_exact(
            Fraction(g.a * x + g.b) / den)

    def at_inf(self, u):
        # (h|g)|S = h|(gS)
        return SlashFn(self.base, self.g @ S_ELEM)._eval(np.atleast_1d(np.asarray(u, dtype=complex)))

    def slash(self, g):
        return SlashFn(self.base, self.g @ g)


def _preimage(g: GroupElem, p):
    """``g^{-1}(p)`` for a real point or ``inf``."""
    a, b, c, d = (float(v) for v in (g.a, g.b, g.c, g.d))
    # g^{-1} = [[d, -b], [-c, a]]
    if p is None:
        return None
    if np.isinf(p):
        return np.inf if c == 0 else -d / c
    den = -c * p + a
    return np.inf if den == 0 else (d * p - b) / den


class LinComb(VFn):
    """``sum_i c_i f_i``; undefined wherever any summand is undefined."""

    def __init__(self, terms, s):
        flat = []
        for c, f in terms:
            if isinstance(f, LinComb):
                flat.extend((c * c2, f2) for c2, f2 in f.terms)
            else:
                flat.append((c, f))
        self.terms = [(c, f) for c, f in flat if c != 0]
        self.s = complex(s)
        sing = []
        for _, f in self.terms:
            for p in f.sing:
                if p not in sing:
                    sing.append(p)
        self.sing = tuple(sing)

    def _eval(self, x):
        out = np.zeros(x.shape, dtype=complex)
        for c, f in self.terms:
            out += c * f._eval(x)
        return out

    def _eval_exact(self, x):
        return sum((c * f._eval_exact(x) for c, f in self.terms), Fraction(0))

    def at_inf(self, u):
        u = np.atleast_1d(np.asarray(u, dtype=complex))
        out = np.zeros(u.shape, dtype=complex)
        for c, f in self.terms:
            out += c * f.at_inf(u)
        return out


class PiecewiseFn(VFn):
    """Function on ``P^1(R)`` minus ``sing`` given by pieces on cyclic intervals.

    A point is evaluated with the first piece whose (open) cyclic interval
    contains its projection to the real line (:func:`project_real`).  Real
    points in ``sing`` and points not covered give ``nan``.
    """

    def __init__(self, pieces, sing, s):
        self.pieces = [(float(a), float(b), f) for a, b, f in pieces]
        self.sing = tuple(sorted(float(p) for p in sing))
        self.s = complex(s)

    def _eval(self, x):
        out = np.full(x.shape, np.nan, dtype=complex)
        todo = np.ones(x.shape, dtype=bool)
        xr = project_real(x)
        for a, b, f in self.pieces:
            m = todo & in_cyclic(xr, a, b)
            if np.any(m):
                out[m] = f._eval(x[m])
                todo &= ~m
        # non-real points projecting exactly onto a piece boundary: take the
        # piece just to the right (e.g. purely imaginary points and sing 0)
        tie = todo & (np.imag(x) != 0) & np.isfinite(xr)
        if np.any(tie):
            xt = xr + 1e-9 * (1.0 + np.abs(xr))
            for a, b, f in self.pieces:
                m = tie & in_cyclic(xt, a, b)
                if np.any(m):
                    out[m] = f._eval(x[m])
                    tie &= ~m
        return out

    def _eval_exact(self, x):
        for a, b, f in self.pieces:
            if in_cyclic(float(x), a, b):
                return f._eval_exact(x)
        raise ValueError(f"{x} is not covered by the pieces")

    def at_inf(self, u):
        # each point u is handled by the piece containing x = -1/u (u = 0 is inf)
        u = np.atleast_1d(np.asarray(u, dtype=complex))
        out = np.full(u.shape, np.nan, dtype=complex)
        zero = u == 0
        with np.errstate(divide="ignore", invalid="ignore"):
            x = np.where(zero, 0, -1.0 / np.where(zero, 1, project_real(u)))
        todo = np.ones(u.shape, dtype=bool)
        for a, b, f in self.pieces:
            m = todo & np.where(zero, cyclic_contains_inf(a, b) and np.inf not in self.sing,
                                in_cyclic(x, a, b))
            if np.any(m):
                out[m] = f.at_inf(u[m])
                todo &= ~m
        return out

    def piece_at(self, x: float) -> VFn:
        for a, b, f in self.pieces:
            if in_cyclic(x, a, b):
                return f
        raise ValueError(f"{x} is not covered by the pieces")

    def to_dict(self) -> dict:
        """JSON-friendly form; every piece must itself be serializable (see :func:`to_dict`)."""
        return {"type": "PiecewiseFn", "s": [self.s.real, self.s.imag],
                "sing": [_enc_float(p) for p in self.sing],
                "pieces": [[_enc_float(a), _enc_float(b), to_dict(f)] for a, b, f in self.pieces]}

    @classmethod
    def from_dict(cls, d: dict) -> "PiecewiseFn":
        return cls([(_dec_float(a), _dec_float(b), from_dict(f)) for a, b, f in d["pieces"]],
                   [_dec_float(p) for p in d["sing"]], complex(*d["s"]))


def build_piecewise(pieces, sing, s=None, check_points: int = 0, tol: float = 1e-9) -> PiecewiseFn:
    """Assemble a :class:`PiecewiseFn`; optionally check agreement on overlaps.

    ``pieces`` is a list of ``(a, b, fn)``.  With ``check_points > 0`` the
    pieces are compared on overlapping cyclic intervals (away from ``sing``)
    and a ``ValueError`` is raised on relative mismatch above ``tol``.
    """
    if s is None:
        s = pieces[0][2].s
    F = PiecewiseFn(pieces, sing, s)
    if check_points:
        for i in range(len(pieces)):
            for j in range(i + 1, len(pieces)):
                pts = _overlap_points(pieces[i][:2], pieces[j][:2], sing, check_points)
                if len(pts) == 0:
                    continue
                vi, vj = pieces[i][2](pts), pieces[j][2](pts)
                scale = max(1.0, float(np.max(np.abs(vi))))
                if np.max(np.abs(vi - vj)) > tol * scale:
                    raise ValueError(f"pieces {i} and {j} disagree on their overlap")
    return F


def _overlap_points(I, J, sing, n):
    grid = np.concatenate([np.linspace(-8, 8, 8 * n), 1.0 / np.linspace(-0.12, 0.12, 2 * n)])
    m = in_cyclic(grid, *I) & in_cyclic(grid, *J)
    pts = grid[m]
    for p in sing:
        if np.isfinite(p):
            pts = pts[np.abs(pts - p) > 1e-3]
    return pts[:n] if len(pts) > n else pts


def restrict(F: VFn, interval, N: int = 48, chart: str = "identity", tol: float = 1e-10):
    """Refit ``F`` on a closed interval free of singular points as an :class:`AnalyticFn`."""
    from .analytic import fit

    a, b = interval
    for p in getattr(F, "sing", ()):
        if np.isfinite(p) and a <= p <= b:
            raise ValueError(f"cannot restrict across the singular point {p}")
    return fit(F, (a, b), chart=chart, N=N, s=F.s, tol=tol)


def slash(f: VFn, g: GroupElem, s=None) -> VFn:
    """``f | g`` (``s`` is implied by ``f``; accepted for interface symmetry)."""
    return f.slash(g)


def slash_ring(f: VFn, xi: GroupRingElem, s=None) -> VFn:
    """``f | xi`` for an element of the group ring."""
    return f.slash_ring(xi)


def constant(c, s) -> FuncFn:
    return FuncFn(lambda x: c + 0 * x, s, name=f"const {c}")


# ---------------------------------------------------------------------------
# JSON serialization (finite data only: fitted series, piecewise assemblies, zero)
# ---------------------------------------------------------------------------

def _enc_float(x: float):
    return "inf" if x == np.inf else "-inf" if x == -np.inf else float(x)


def _dec_float(x) -> float:
    return float(x)


def to_dict(f: VFn) -> dict:
    """Serialize ``f``: :class:`AnalyticFn`, :class:`PiecewiseFn` of those, or :class:`ZeroFn`.

    Lazily evaluated functions (slashes, linear combinations, eigenfunction
    components) have no finite description; fit them first.
    """
    if isinstance(f, ZeroFn):
        return {"type": "ZeroFn", "s": [f.s.real, f.s.imag]}
    if hasattr(f, "to_dict") and type(f).__name__ in ("AnalyticFn", "PiecewiseFn"):
        return f.to_dict()
    raise TypeError(f"{type(f).__name__} is not serializable; fit it to an AnalyticFn first")


def from_dict(d: dict) -> VFn:
    kind = d.get("type")
    if kind == "ZeroFn":
        return ZeroFn(complex(*d["s"]))
    if kind == "PiecewiseFn":
        return PiecewiseFn.from_dict(d)
    if kind == "AnalyticFn":
        from .analytic import AnalyticFn
        return AnalyticFn.from_dict(d)
    raise ValueError(f"unknown function type {kind!r}")
