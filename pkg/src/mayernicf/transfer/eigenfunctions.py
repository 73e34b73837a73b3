"""Eigenfunctions of the discretized operators, evaluated anywhere on their natural domains.

Node values of an eigenvector only determine the eigenfunction near the
collocation contour.  Everywhere else the eigen-relation ``f = (1/lambda) L f``
is used as an extension formula: a point outside the contour is replaced by
the weighted sum over its preimages ``sigma/(flip*z + n)``, most of which land
inside the contour; the few that do not are treated recursively.  Because
every branch is contracting towards the contour, the recursion terminates;
its depth grows only logarithmically as ``z`` approaches the ends of the
domain (``-1`` for Mayer's operator, ``-phi^2`` / ``phi`` and ``-phi`` /
``phi^2`` for the two nearest-integer components).
"""

from __future__ import annotations

import math

import numpy as np

from ..averages import ResolutionError
from ..funcrep.vfn import VFn
from ..special import hurwitz_zeta_table, pow_sq
from .operators import TransferOperator

MAX_DEPTH = 40


class RelationEvaluator:
    """Extend functions by ``f_i = (1/lam) sum_terms ...`` (the operator relation).

    ``leaf(comp, z)`` evaluates component ``comp`` where ``inside(comp, z)``
    holds; everywhere else the relation is applied recursively.  ``taylor``
    holds Taylor coefficients at 0 of every component (for Hurwitz tails)
    and ``radius`` the radius of the disc on which they were computed.
    """

    def __init__(self, s, terms, lam, leaf, inside, taylor, radius, n_direct=24):
        self.s = complex(s)
        self.terms = tuple(terms)
        self.lam = complex(lam)
        self.leaf = leaf
        self.inside = inside
        self.taylor = taylor
        self.radius = radius
        self.n_direct = n_direct
        self.max_depth_seen = 0

    def __call__(self, comp: int, z) -> np.ndarray:
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        return self._eval(comp, z.ravel(), 0).reshape(z.shape)

    def _eval(self, comp: int, z: np.ndarray, depth: int) -> np.ndarray:
        out = np.empty(len(z), dtype=complex)
        if len(z) == 0:
            return out
        ins = self.inside(comp, z)
        if np.any(ins):
            out[ins] = self.leaf(comp, z[ins])
        rest = ~ins
        if not np.any(rest):
            return out
        if depth >= MAX_DEPTH:
            raise ResolutionError("eigenfunction extension did not terminate (point too close to "
                                  "the end of the domain)")
        self.max_depth_seen = max(self.max_depth_seen, depth + 1)
        out[rest] = self.apply(comp, z[rest], depth) / self.lam
        return out

    def apply(self, comp: int, z: np.ndarray, depth: int = 0) -> np.ndarray:
        """``(L f)_comp(z)`` with the input ``f`` evaluated recursively."""
        s = self.s
        acc = np.zeros(len(z), dtype=complex)
        for t in self.terms:
            if t.dst != comp:
                continue
            x = t.flip * z
            if np.any((x + t.n0).real <= 0):
                raise ResolutionError("point outside the domain of the eigenfunction")
            r = self.radius[t.src]
            n1 = max(t.n0 + self.n_direct, int(math.ceil(t.n0 + 1.3 / r - float(np.min(x.real)))))
            n = np.arange(t.n0, n1)
            U = x[:, None] + n[None, :]
            vals = self._eval(t.src, (t.sigma / U).ravel(), depth + 1).reshape(U.shape)
            acc += np.sum(pow_sq(U, s) * vals, axis=1)
            c = np.asarray(self.taylor[t.src], dtype=complex)
            Z = hurwitz_zeta_table(2 * s, len(c), x + n1)
            acc += Z @ (c * float(t.sigma) ** np.arange(len(c)))
        return acc


class EigenEvaluator(RelationEvaluator):
    """Evaluate the components of an eigenvector ``v`` of ``op`` (eigenvalue ``lam``)."""

    def __init__(self, op: TransferOperator, v: np.ndarray, lam: complex):
        self.op = op
        N = op.N
        self.v = [np.asarray(v[i * N:(i + 1) * N], dtype=complex) for i in range(op.ncomp)]
        super().__init__(
            op.s, op.terms, lam,
            leaf=lambda c, z: op.bases[c].interp(z) @ self.v[c],
            inside=lambda c, z: op.bases[c].inside(z),
            taylor=[op._taylor[i] @ self.v[i] for i in range(op.ncomp)],
            radius=[b.taylor_radius() for b in op.bases],
            n_direct=op.n_direct,
        )


class EigenComponent(VFn):
    """One component of an eigenfunction as a :class:`~mayernicf.funcrep.vfn.VFn`.

    ``shift`` realizes slashing by a translation without losing the
    recursive evaluator: the value at ``x`` is the component at ``x + shift``.
    """

    def __init__(self, ev: EigenEvaluator, comp: int, scale: complex = 1.0, shift: float = 0.0,
                 domain=(-np.inf, np.inf)):
        self.ev = ev
        self.comp = comp
        self.scale = complex(scale)
        self.shift = float(shift)
        self.s = ev.s
        self.domain = domain
        self.sing = tuple(p - shift for p in domain if np.isfinite(p))

    def _eval(self, x):
        x = np.asarray(x, dtype=complex)
        y = x + self.shift
        out = np.full(len(x), np.nan, dtype=complex)
        a, b = self.domain
        ok = (y.real > a) & (y.real < b)
        if np.any(ok):
            out[ok] = self.scale * self.ev(self.comp, y[ok])
        return out

    def scaled(self, c) -> "EigenComponent":
        return EigenComponent(self.ev, self.comp, self.scale * c, self.shift, self.domain)

    def translated(self, k: float) -> "EigenComponent":
        """``self | T^k``: the function ``x -> self(x + k)``."""
        return EigenComponent(self.ev, self.comp, self.scale, self.shift + k, self.domain)
