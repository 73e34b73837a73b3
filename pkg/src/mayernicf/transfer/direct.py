"""Operators applied to function callables, independently of the collocation matrices.

Used as oracles: the matrix path works on node values and analytic
continuation through the contour basis, while these routines call the input
functions directly and regularize the sums with their own Taylor data.
"""

from __future__ import annotations

import numpy as np

from ..averages import regularized_shift_sum
from ..special import pow_sq
from .dynamics import inverse_branches
from .operators import MAYER_TERMS, NICF_TERMS


def _apply_terms(terms, funcs, s, z, n_direct, k_tail, radius, taylor="fft"):
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    out = [np.zeros(len(z), dtype=complex) for _ in range(max(t.dst for t in terms) + 1)]
    for t in terms:
        out[t.dst] += regularized_shift_sum(funcs[t.src], t.sigma, s, t.flip * z, t.n0,
                                            n_direct, k_tail, radius, taylor=taylor)
    return out


def apply_operator_direct(kind: str, f, s: complex, z, n_direct: int = 40, k_tail: int = 28,
                          radius: float = 0.25, variant: str = "duplicated", taylor: str = "fft"):
    """Values of ``L f`` at points ``z``.

    ``f`` is one callable for ``mayer`` and a pair ``(f1, f2)`` for ``nicf``
    and ``kcomp``; callables must be analytic on the disc ``|w| <= radius``
    (for the Hurwitz tail) and at the branch points used.  With
    ``taylor="real"`` the tail data is taken from real samples only (for
    functions that are only evaluated on the real line).  Returns an array
    (``mayer``) or a pair of arrays.
    """
    s = complex(s)
    if kind == "mayer":
        return _apply_terms(MAYER_TERMS, [f], s, z, n_direct, k_tail, radius, taylor)[0]
    if kind == "nicf":
        return tuple(_apply_terms(NICF_TERMS, list(f), s, z, n_direct, k_tail, radius, taylor))
    if kind == "kcomp":
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        u = z + 3
        first = pow_sq(u, s) * np.asarray(f[0](-1.0 / u), dtype=complex)
        second = first if variant == "duplicated" else pow_sq(u, s) * np.asarray(f[1](-1.0 / u), dtype=complex)
        return first, second
    raise ValueError(f"unknown operator kind {kind!r}")


def f3_transfer(f, s: complex, x: float, n_max: int = 40, k_tail: int = 28,
                radius: float = 0.25) -> complex:
    """Transfer operator of the map ``f3``: ``sum_{f3(y) = x} |dy/dx|^s f(y)``.

    Branches with ``|digit| < n_max`` are enumerated explicitly (and checked
    against ``f3``); the remaining ones, ``y = -1/(x+n)`` and
    ``y = 1/(n-x)`` for ``n >= n_max``, are summed with Hurwitz tails.
    """
    s = complex(s)
    total = 0j
    for y, d in inverse_branches(x, n_max):
        total += d**s * complex(f(y))
    xa = np.array([x], dtype=complex)
    total += regularized_shift_sum(f, -1, s, xa, n_max, 1, k_tail, radius)[0]
    total += regularized_shift_sum(f, +1, s, -xa, n_max, 1, k_tail, radius)[0]
    return total


def mayer_relation_residual(f, s: complex, eps: complex, points=None, **kw) -> float:
    """``max |L f - eps f| / max |f|`` at real points (default 20 points in ``[0, 1]``)."""
    x = np.linspace(0, 1, 20) if points is None else np.asarray(points, dtype=float)
    kw.setdefault("taylor", "real")
    lf = apply_operator_direct("mayer", f, s, x, **kw)
    fx = np.asarray(f(x), dtype=complex)
    return float(np.max(np.abs(lf - eps * fx)) / max(np.max(np.abs(fx)), 1e-300))


def nicf_relation_residual(g1, g2, s: complex, lam: complex = 1.0, points=None, **kw) -> float:
    """Relative residual of ``(g1, g2) = (1/lam) L (g1, g2)`` at real points of ``(-1, 1)``."""
    x = np.linspace(-0.95, 0.95, 20) if points is None else np.asarray(points, dtype=float)
    kw.setdefault("taylor", "real")
    l1, l2 = apply_operator_direct("nicf", (g1, g2), s, x, **kw)
    a, b = np.asarray(g1(x), dtype=complex), np.asarray(g2(x), dtype=complex)
    scale = max(np.max(np.abs(a)), np.max(np.abs(b)), 1e-300)
    return float(max(np.max(np.abs(l1 - lam * a)), np.max(np.abs(l2 - lam * b))) / scale)
