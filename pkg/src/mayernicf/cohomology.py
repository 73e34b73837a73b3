"""Cocycles of ``PSL(2, Z)`` with values in functions of weight ``2s``.

A cocycle is stored by its values on the generators ``S`` and ``T``; the
value on any word follows from the cocycle law

    psi_{gamma delta} = psi_gamma | delta + psi_delta ,

with ``psi_{T^{-1}} = -psi_T | T^{-1}``.  On the orbit of ``-phi`` the
associated homogeneous cocycle is ``c_{gamma^{-1}(-phi), delta^{-1}(-phi)} =
psi_{gamma delta^{-1}} | delta``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .averages import AvParabolic
from .funcrep.analytic import analytic_across
from .funcrep.vfn import PiecewiseFn, VFn, ZeroFn
from .funcrep.vfn import from_dict as vfn_from_dict
from .funcrep.vfn import to_dict as vfn_to_dict
from .mobius import PHI_FLOAT, S, T, T_INV, GroupElem, apply_word, parse_word

PHI = PHI_FLOAT
W = apply_word
TINV_S = W("Tinv S")
ST = W("S T")
STS = W("S T S")
ST2 = W("S T^2")


def _is_zero(f) -> bool:
    return isinstance(f, ZeroFn)


def _default_points() -> np.ndarray:
    x = np.concatenate([np.linspace(-3.3, 3.3, 37), [-11.3, -5.7, 5.3, 12.1]])
    return x + 0.0123  # stay off the golden-ratio orbit points


def _sup(F: VFn, x) -> float:
    v = np.asarray(F(x), dtype=complex)
    v = v[np.isfinite(v)]
    return float(np.max(np.abs(v))) if len(v) else np.inf


@dataclass
class Cocycle:
    psi_S: VFn
    psi_T: VFn
    s: complex
    flavor: str = "plain"  # plain | parabolic | fib
    meta: dict = field(default_factory=dict)

    @classmethod
    def from_S_TinvS(cls, psi_S: VFn, psi_TinvS: VFn, s, flavor: str = "plain") -> "Cocycle":
        """Cocycle with given values on ``S`` and ``T^{-1}S``; ``psi_T = (psi_S - psi_{T^{-1}S})|ST``."""
        return cls(psi_S, (psi_S - psi_TinvS) | ST, complex(s), flavor)

    @classmethod
    def zero(cls, s) -> "Cocycle":
        return cls(ZeroFn(s), ZeroFn(s), complex(s))

    @classmethod
    def coboundary(cls, v: VFn, s=None) -> "Cocycle":
        """``gamma -> v|(1 - gamma)``."""
        s = v.s if s is None else s
        return cls(v - (v | S), v - (v | T), complex(s))

    @property
    def psi_TinvS(self) -> VFn:
        if _is_zero(self.psi_T):
            return self.psi_S
        return self.psi_S - (self.psi_T | TINV_S)

    def generator(self, letter: str) -> VFn:
        if letter == "S":
            return self.psi_S
        if letter == "T":
            return self.psi_T
        if letter == "Tinv":
            return ZeroFn(self.s) if _is_zero(self.psi_T) else -(self.psi_T | T_INV)
        raise ValueError(f"{letter!r} is not a generator of PSL(2, Z)")

    def value(self, word) -> VFn:
        return cocycle_value(self, word)

    def shifted(self, F: VFn) -> "Cocycle":
        """Cohomologous cocycle ``gamma -> psi_gamma - F|(1 - gamma)``."""
        return Cocycle(self.psi_S - F + (F | S), self.psi_T - F + (F | T), self.s, self.flavor)

    def __add__(self, other: "Cocycle") -> "Cocycle":
        return Cocycle(self.psi_S + other.psi_S, self.psi_T + other.psi_T, self.s)

    def __sub__(self, other: "Cocycle") -> "Cocycle":
        return Cocycle(self.psi_S - other.psi_S, self.psi_T - other.psi_T, self.s)

    def to_dict(self) -> dict:
        """Generator values as JSON (they must be serializable, see :func:`~mayernicf.funcrep.vfn.to_dict`)."""
        return {"type": "Cocycle", "s": [self.s.real, self.s.imag], "flavor": self.flavor,
                "psi_S": vfn_to_dict(self.psi_S), "psi_T": vfn_to_dict(self.psi_T)}

    @classmethod
    def from_dict(cls, d: dict) -> "Cocycle":
        return cls(vfn_from_dict(d["psi_S"]), vfn_from_dict(d["psi_T"]), complex(*d["s"]), d["flavor"])

    def sample_dict(self, points=None) -> dict:
        """Generator values sampled on ``points`` (JSON-friendly)."""
        x = _default_points() if points is None else np.asarray(points, dtype=float)
        out = {"s": [self.s.real, self.s.imag], "flavor": self.flavor, "x": x.tolist()}
        for name, f in (("psi_S", self.psi_S), ("psi_T", self.psi_T)):
            v = np.asarray(f(x), dtype=complex)
            out[name] = [[z.real, z.imag] if np.isfinite(z) else None for z in v]
        return out


def cocycle_value(c: Cocycle, word) -> VFn:
    """``psi_gamma`` for a word in ``S``, ``T``, ``T^{-1}`` (left-to-right product)."""
    letters = parse_word(word) if isinstance(word, str) else list(word)
    total: VFn | None = None
    tail = W([])  # product of the letters to the right
    for letter in reversed(letters):
        term = c.generator(letter)
        if not _is_zero(term):
            piece = term if tail.is_identity() else term | tail
            total = piece if total is None else piece + total
        tail = W([letter]) @ tail
    return ZeroFn(c.s) if total is None else total


def orbit_value(c: Cocycle, gamma, delta) -> VFn:
    """Homogeneous cocycle ``c_{gamma^{-1}(-phi), delta^{-1}(-phi)} = psi_{gamma delta^{-1}}|delta``."""
    g = parse_word(gamma) if isinstance(gamma, str) else list(gamma)
    d = parse_word(delta) if isinstance(delta, str) else list(delta)
    inv = {"S": ["S"], "T": ["Tinv"], "Tinv": ["T"]}
    d_inv = [y for x in reversed(d) for y in inv[x]]
    val = cocycle_value(c, g + d_inv)
    return val if not d else val | W(d)


def verify_generator_relations(c: Cocycle, points=None) -> dict:
    """Sup residuals of the relations ``psi_S|(1+S) = 0`` and
    ``psi_{T^{-1}S}|(1 + T^{-1}S + ST) = 0`` (plus ``psi_S = psi_S|(T + T')``
    and ``psi_T = 0`` for the parabolic flavour), relative to ``sup |psi_S|``."""
    x = _default_points() if points is None else np.asarray(points, dtype=float)
    scale = max(_sup(c.psi_S, x), _sup(c.psi_TinvS, x), 1e-300)
    if not np.isfinite(scale):
        scale = 1.0
    ps, pts = c.psi_S, c.psi_TinvS
    out = {
        "S": _sup(ps + (ps | S), x) / scale,
        "TinvS": _sup(pts + (pts | TINV_S) + (pts | ST), x) / scale,
    }
    if c.flavor == "parabolic":
        out["parabolic"] = _sup(ps - (ps | T) - (ps | W("T S T")), x) / scale
        out["T"] = _sup(c.psi_T, x) / scale if not _is_zero(c.psi_T) else 0.0
    if scale == 1e-300:
        out = {k: 0.0 for k in out}
    return out


# ---------------------------------------------------------------------------
# The map theta: four-term solutions -> cocycles on the Fibonacci orbit
# ---------------------------------------------------------------------------

@dataclass
class ThetaResult:
    cocycle: Cocycle
    h: VFn
    k: VFn
    c_phi_phiinv: PiecewiseFn  # c_{-phi, phi^{-1}}
    c_phi_phi: PiecewiseFn  # c_{-phi, phi}
    c_big: VFn  # c_{-phi^2, phi}
    reassembly: dict  # sub-interval -> relative sup mismatch with g
    far_residual: float  # on (phi, -phi^2)_c against -k|ST - h|T^{-1}S
    analyticity: dict  # point -> refit decay of c_big

    @property
    def max_reassembly(self) -> float:
        return max(self.reassembly.values())


THETA_INTERVALS = {
    "(-phi^2,-phi)": (-PHI**2, -PHI),
    "(-phi,-phi^-2)": (-PHI, -PHI**-2),
    "(-phi^-2,phi)": (-PHI**-2, PHI),
}


def theta(g: VFn, s=None, tol: float = 1e-7, check: bool = True, n_points: int = 40,
          analytic_tol: float = 1e-7) -> ThetaResult:
    """Fibonacci cocycle of a four-term solution ``g`` on ``(-phi^2, phi)``.

    ``h = g|(1 + ST^2)``, ``k = g|T^{-1} + h|STS``;
    ``c_{-phi,phi^{-1}} = {k; -k|S}``, ``c_{-phi,phi} = {h; -h|(T^{-1}S + ST)}``;
    ``psi_S = -c_{-phi,phi^{-1}}``, ``psi_{T^{-1}S} = -c_{-phi,phi}``.
    The reassembled ``c_{-phi^2,phi} = c_{-phi,phi^{-1}}|T + c_{-phi,phi}|(1 + ST)``
    is compared with ``g`` on the three sub-intervals of ``(-phi^2, phi)``
    and tested for analyticity across ``-phi`` and ``-phi^{-2}``; on
    ``(phi, -phi^2)_c`` it must equal ``-k|ST - h|T^{-1}S``.  With
    ``check`` a mismatch above ``tol`` raises ``ValueError``.
    """
    s = g.s if s is None else complex(s)
    if _is_zero(g):
        z = ZeroFn(s)
        return ThetaResult(Cocycle.zero(s), z, z, z, z, z, {k: 0.0 for k in THETA_INTERVALS}, 0.0,
                           {"-phi": 0.0, "-phi^-2": 0.0})
    h = g + (g | ST2)
    k = (g | T_INV) + (h | STS)
    c1 = PiecewiseFn([(-PHI, 1 / PHI, k), (1 / PHI, -PHI, -(k | S))], [-PHI, 1 / PHI], s)
    c2 = PiecewiseFn([(-PHI, PHI, h), (PHI, -PHI, -(h | TINV_S) - (h | ST))], [-PHI, PHI], s)
    coc = Cocycle.from_S_TinvS(-c1, -c2, s, "fib")
    c_big = (c1 | T) + c2 + (c2 | ST)
    gscale = _sup(g, np.linspace(-PHI**2 + 0.01, PHI - 0.01, 3 * n_points))
    reas = {}
    for name, (a, b) in THETA_INTERVALS.items():
        d = 1e-3 * (b - a)
        x = np.linspace(a + d, b - d, n_points)
        reas[name] = _sup(c_big - g, x) / gscale
    xf = np.concatenate([np.linspace(PHI + 0.01, 6, n_points // 2), np.linspace(-6, -PHI**2 - 0.01, n_points // 2)])
    # on the complementary arc the pieces combine to -k|ST - h|T^{-1}S
    far = _sup(c_big + (k | ST) + (h | TINV_S), xf) / gscale
    ana = {"-phi": analytic_across(c_big, -PHI, 0.1, abs_scale=gscale),
           "-phi^-2": analytic_across(c_big, -PHI**-2, 0.1, abs_scale=gscale)}
    res = ThetaResult(coc, h, k, c1, c2, c_big, reas, far, ana)
    if check:
        if res.max_reassembly > tol or far > tol:
            raise ValueError(f"theta reassembly mismatch {max(res.max_reassembly, far):.1e} "
                             "(input does not solve the four-term equation)")
        if max(ana.values()) > analytic_tol:
            raise ValueError("reassembled cocycle is not analytic across -phi / -phi^-2")
    return res


# ---------------------------------------------------------------------------
# Parabolic cocycles
# ---------------------------------------------------------------------------

@dataclass
class ParabolicResult:
    cocycle: Cocycle  # with psi_T = 0
    v: VFn  # psi~_T | Av^+
    mismatch: float  # sup |psi~_T|Av^+ - psi~_T|Av^-| (relative)


def parabolic_normalize(ct: Cocycle, tol: float = 1e-7, points=None, check: bool = True) -> ParabolicResult:
    """``psi_gamma = psi~_gamma - v|(1 - gamma)`` with ``v = psi~_T|Av^+``, so ``psi_T = 0``.

    Requires analytic cocycle values.  ``psi~_T|Av^+ = psi~_T|Av^-`` is
    checked (certificate of parabolicity); with ``check`` a mismatch above
    ``tol`` (relative) raises ``ValueError``.
    """
    s = ct.s
    if _is_zero(ct.psi_T):
        return ParabolicResult(Cocycle(ct.psi_S, ct.psi_T, s, "parabolic"), ZeroFn(s), 0.0)
    v = AvParabolic(ct.psi_T, +1)
    vm = AvParabolic(ct.psi_T, -1)
    x = np.array([-7.3, -2.9, -1.1, -0.3, 0.2, 0.7, 1.9, 4.1, 8.3]) if points is None else np.asarray(points)
    a, b = v(x), vm(x)
    mism = float(np.max(np.abs(a - b)) / max(np.max(np.abs(a)), 1e-300))
    if check and mism > tol:
        raise ValueError(f"Av+ and Av- of psi_T differ by {mism:.1e}: the cocycle is not parabolic")
    psi_S = ct.psi_S - v + (v | S)
    return ParabolicResult(Cocycle(psi_S, ZeroFn(s), s, "parabolic"), v, mism)


@dataclass
class ObstructionResult:
    P: VFn
    sup: float  # sup over one period
    periodicity: float  # sup |P - P|T|


def parabolic_obstruction(ct: Cocycle, points=None) -> ObstructionResult:
    """``P = psi~_{TST}|(S - T^{-1}S) + psi~_T|(T^{-1}S + 1) - psi~_T|Av^+ - psi~_{TST}|S Av^-``.

    ``P`` is periodic and vanishes exactly when the class comes from a
    1-eigenfunction of the nearest-integer operator.
    """
    s = ct.s
    if _is_zero(ct.psi_T) and _is_zero(ct.psi_S):
        z = ZeroFn(s)
        return ObstructionResult(z, 0.0, 0.0)
    p_tst = cocycle_value(ct, "T S T")
    pt = ct.psi_T
    P = (p_tst | S) - (p_tst | TINV_S) + (pt | TINV_S) + pt
    if not _is_zero(pt):
        P = P - AvParabolic(pt, +1)
    P = P - AvParabolic(p_tst | S, -1)
    x = np.linspace(0.013, 1.013, 21) if points is None else np.asarray(points)
    vals = P(x)
    per = float(np.max(np.abs(vals - (P | T)(x))))
    return ObstructionResult(P, float(np.max(np.abs(vals))), per)
