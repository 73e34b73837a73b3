"""Collocation matrices of the Gauss-map and nearest-integer transfer operators.

Mayer's operator

    (L_s f)(z) = sum_{n>=1} (z+n)^{-2s} f(1/(z+n))

and the nearest-integer operator acting on pairs ``(f1, f2)``

    (Lf)_1(z) = sum_{n>=3} (z+n)^{-2s} f1(-1/(z+n)) + sum_{n>=2} (n-z)^{-2s} f2(1/(n-z))
    (Lf)_2(z) = sum_{n>=2} (z+n)^{-2s} f1(-1/(z+n)) + sum_{n>=3} (n-z)^{-2s} f2(1/(n-z))

are both sums of *shift terms*

    sum_{n>=n0} (flip*z + n)^{-2s} f_j(sigma/(flip*z + n)),

described by :class:`ShiftTerm`.  The correction operator ``K_s`` is built
from ``g |-> g|ST^3 = (z+3)^{-2s} g(-1/(z+3))``.  Infinite sums are
regularized with Hurwitz zeta tails, so the matrices are valid on the whole
strip ``0 < Re s < 1``, ``s != 1/2``.

Functions are represented by values at contour nodes (see
:mod:`mayernicf.funcrep.contour`).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..averages import check_not_pole, shift_sum_matrix
from ..funcrep.contour import ContourBasis, mayer_basis, nicf_bases
from ..special import pow_sq

DEFAULT_N = 40
DEFAULT_N_DIRECT = 24
DEFAULT_K_TAIL = 28

KINDS = ("mayer", "nicf", "kcomp")
KCOMP_VARIANTS = ("duplicated", "diagonal")


@dataclass(frozen=True)
class ShiftTerm:
    """``sum_{n>=n0} (flip*z+n)^{-2s} f_src(sigma/(flip*z+n))`` contributing to component ``dst``."""

    dst: int
    src: int
    flip: int
    sigma: int
    n0: int


MAYER_TERMS = (ShiftTerm(0, 0, +1, +1, 1),)
NICF_TERMS = (
    ShiftTerm(0, 0, +1, -1, 3),
    ShiftTerm(0, 1, -1, +1, 2),
    ShiftTerm(1, 0, +1, -1, 2),
    ShiftTerm(1, 1, -1, +1, 3),
)

# Real intervals on which the components are natural objects
MAYER_DOMAIN = (-1.0, np.inf)
PHI = (1 + 5**0.5) / 2
NICF_DOMAINS = ((-PHI**2, PHI), (-PHI, PHI**2))


class TransferOperator:
    """A transfer operator given by shift terms, with its collocation data."""

    def __init__(self, kind: str, s: complex, bases: list[ContourBasis], terms,
                 n_direct: int = DEFAULT_N_DIRECT, k_tail: int = DEFAULT_K_TAIL):
        check_not_pole(s)
        self.kind = kind
        self.s = complex(s)
        self.bases = list(bases)
        self.terms = tuple(terms)
        self.n_direct = n_direct
        self.k_tail = k_tail
        self._taylor = [b.taylor0(k_tail) for b in self.bases]

    @property
    def ncomp(self) -> int:
        return len(self.bases)

    @property
    def N(self) -> int:
        return self.bases[0].N

    def term_matrix(self, term: ShiftTerm, z) -> np.ndarray:
        """``(P, N)`` matrix of one shift term evaluated at points ``z``."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        b = self.bases[term.src]
        return shift_sum_matrix(term.flip * z, self.s, term.sigma, term.n0, self.n_direct,
                                self.k_tail, b, self._taylor[term.src])

    def rows(self, dst: int, z) -> list[np.ndarray]:
        """Blocks ``B_j`` with ``(Lf)_dst(z) = sum_j B_j @ f_j``."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        out = [np.zeros((len(z), b.N), dtype=complex) for b in self.bases]
        for t in self.terms:
            if t.dst == dst:
                out[t.src] += self.term_matrix(t, z)
        return out

    def matrix(self) -> np.ndarray:
        return np.block([self.rows(i, self.bases[i].nodes) for i in range(self.ncomp)])


def mayer_operator(s, N=DEFAULT_N, n_direct=DEFAULT_N_DIRECT, k_tail=DEFAULT_K_TAIL):
    return TransferOperator("mayer", s, [mayer_basis(N)], MAYER_TERMS, n_direct, k_tail)


def nicf_operator(s, N=DEFAULT_N, n_direct=DEFAULT_N_DIRECT, k_tail=DEFAULT_K_TAIL):
    return TransferOperator("nicf", s, list(nicf_bases(N)), NICF_TERMS, n_direct, k_tail)


def kcomp_block(s: complex, basis: ContourBasis, z) -> np.ndarray:
    """Matrix of ``g |-> (g|ST^3)(z) = (z+3)^{-2s} g(-1/(z+3))`` on node values of g."""
    u = np.atleast_1d(np.asarray(z, dtype=complex)) + 3.0
    return pow_sq(u, s)[:, None] * basis.interp(-1.0 / u)


@dataclass
class OperatorMatrix:
    """Dense collocation matrix together with its basis data."""

    kind: str
    s: complex
    matrix: np.ndarray
    bases: list
    truncation: tuple[int, int, int]
    variant: str = "duplicated"
    meta: dict = field(default_factory=dict)

    @property
    def N(self) -> int:
        return self.bases[0].N

    @property
    def ncomp(self) -> int:
        return len(self.bases)

    @property
    def nodes(self) -> np.ndarray:
        return np.concatenate([b.nodes for b in self.bases])

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "s": [self.s.real, self.s.imag],
            "variant": self.variant,
            "truncation": list(self.truncation),
            "bases": [b.to_dict() for b in self.bases],
            "matrix_re": self.matrix.real.tolist(),
            "matrix_im": self.matrix.imag.tolist(),
        }


def build_operator(kind: str, s: complex, N: int = DEFAULT_N,
                   n_direct: int = DEFAULT_N_DIRECT, k_tail: int = DEFAULT_K_TAIL,
                   variant: str = "duplicated") -> OperatorMatrix:
    """Assemble the collocation matrix of ``kind`` in {"mayer", "nicf", "kcomp"}.

    ``variant`` only matters for ``kcomp``: ``"duplicated"`` uses
    ``(g1|ST^3, g1|ST^3)`` (the choice for which
    ``det(1-L_nicf)/det(1-K) = det(1-L_s)det(1+L_s)`` holds), ``"diagonal"``
    uses ``(g1|ST^3, g2|ST^3)``.
    """
    s = complex(s)
    check_not_pole(s)
    if N < 8:
        raise ValueError("N must be at least 8")
    if n_direct < 1 or k_tail < 1:
        raise ValueError("n_direct and k_tail must be positive")
    trunc = (N, n_direct, k_tail)
    if kind == "mayer":
        op = mayer_operator(s, N, n_direct, k_tail)
        return OperatorMatrix("mayer", s, op.matrix(), op.bases, trunc)
    if kind == "nicf":
        op = nicf_operator(s, N, n_direct, k_tail)
        return OperatorMatrix("nicf", s, op.matrix(), op.bases, trunc)
    if kind == "kcomp":
        if variant not in KCOMP_VARIANTS:
            raise ValueError(f"unknown kcomp variant {variant!r}")
        b1, b2 = nicf_bases(N)
        Z = np.zeros((N, N), dtype=complex)
        K11 = kcomp_block(s, b1, b1.nodes)
        K21 = kcomp_block(s, b1, b2.nodes)
        if variant == "duplicated":
            M = np.block([[K11, Z], [K21, Z]])
        else:
            M = np.block([[K11, Z], [Z, kcomp_block(s, b2, b2.nodes)]])
        return OperatorMatrix("kcomp", s, M, [b1, b2], trunc, variant=variant)
    raise ValueError(f"unknown operator kind {kind!r}")
