"""Exact arithmetic in PGL(2, Z), its group ring, and the Moebius action.

Group elements are integer matrices taken modulo scalars.  Points of the
projective line are either ``INF``, exact numbers (``int``/``Fraction``),
elements of Q(sqrt 5) (:class:`QuadSurd`, so that golden-ratio fixed points
stay exact), or floats/complex numbers.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np


class _Infinity:
    """The point at infinity of P^1."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __float__(self) -> float:
        return math.inf

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


@dataclass(frozen=True)
class QuadSurd:
    """Element ``a + b*phi`` of Q(sqrt 5), phi the golden ratio."""

    a: Fraction
    b: Fraction

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    @staticmethod
    def coerce(x) -> "QuadSurd":
        if isinstance(x, QuadSurd):
            return x
        return QuadSurd(Fraction(x), 0)

    def __add__(self, other):
        o = QuadSurd.coerce(other)
        return QuadSurd(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-QuadSurd.coerce(other))

    def __rsub__(self, other):
        return QuadSurd.coerce(other) - self

    def __mul__(self, other):
        o = QuadSurd.coerce(other)
        # phi^2 = phi + 1
        bb = self.b * o.b
        return QuadSurd(self.a * o.a + bb, self.a * o.b + self.b * o.a + bb)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadSurd":
        # phi -> 1 - phi
        return QuadSurd(self.a + self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a + self.a * self.b - self.b * self.b

    def __truediv__(self, other):
        o = QuadSurd.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt5)")
        p = self * o.conjugate()
        return QuadSurd(p.a / n, p.b / n)

    def __rtruediv__(self, other):
        return QuadSurd.coerce(other) / self

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadSurd(other)
        if not isinstance(other, QuadSurd):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * PHI_FLOAT

    def sign(self) -> int:
        v = float(self)
        if abs(v) > 1e-9:
            return 1 if v > 0 else -1
        # exact: a + b*phi = 0 only when a = b = 0
        if self.is_zero():
            return 0
        return 1 if (self.a + self.b * Fraction(1618033988749895, 10**15)) > 0 else -1

    def __repr__(self) -> str:
        return f"QuadSurd({self.a}, {self.b})"


PHI_FLOAT = (1.0 + math.sqrt(5.0)) / 2.0
PHI = QuadSurd(0, 1)

ProjPoint = Union[_Infinity, int, Fraction, QuadSurd, float, complex]


def _canon(a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    g = math.gcd(math.gcd(abs(a), abs(b)), math.gcd(abs(c), abs(d)))
    if g == 0:
        raise ValueError("zero matrix")
    a, b, c, d = a // g, b // g, c // g, d // g
    for e in (a, b, c, d):
        if e != 0:
            if e < 0:
                a, b, c, d = -a, -b, -c, -d
            break
    return a, b, c, d


@dataclass(frozen=True)
class GroupElem:
    """Integer 2x2 matrix modulo scalars, in canonical form."""

    a: int
    b: int
    c: int
    d: int

    def __init__(self, a: int, b: int, c: int, d: int):
        if a * d - b * c == 0:
            raise ValueError("singular matrix")
        a, b, c, d = _canon(int(a), int(b), int(c), int(d))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __matmul__(self, other: "GroupElem") -> "GroupElem":
        return compose(self, other)

    def __mul__(self, other):
        if isinstance(other, GroupElem):
            return compose(self, other)
        return NotImplemented

    def inverse(self) -> "GroupElem":
        return GroupElem(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> "GroupElem":
        base = self if n >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(n)):
            out = compose(out, base)
        return out

    def is_identity(self) -> bool:
        return self == IDENTITY

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)

    def __repr__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def compose(g: GroupElem, h: GroupElem) -> GroupElem:
    """Canonical representative of the matrix product ``g h``."""
    return GroupElem(
        g.a * h.a + g.b * h.c,
        g.a * h.b + g.b * h.d,
        g.c * h.a + g.d * h.c,
        g.c * h.b + g.d * h.d,
    )


IDENTITY = GroupElem(1, 0, 0, 1)
S = GroupElem(0, -1, 1, 0)
T = GroupElem(1, 1, 0, 1)
T_INV = GroupElem(1, -1, 0, 1)
T_PRIME = GroupElem(1, 0, 1, 1)  # TST = ST^{-1}S
C = GroupElem(0, 1, 1, 0)
ETA = GroupElem(1, 1, 1, 2)  # TST^2, stabilizer of -phi

_GENERATORS = {"S": S, "T": T, "Tinv": T_INV, "C": C, "1": IDENTITY}

_TOKEN = re.compile(r"\s*(Tinv|T'|T\^?\{?(-?\d+)\}?|S|T|C|1)\s*")


def parse_word(text: str) -> list[str]:
    """Split a word like ``"T^-1 S T^-2 S T"`` or ``"TST2"`` into generators.

    Recognised tokens: ``S``, ``T``, ``Tinv``, ``C``, ``T'`` and powers
    ``T^k`` / ``Tk``.  The result is a list over ``{"S", "T", "Tinv", "C"}``.
    """
    out: list[str] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse word {text!r} at {pos}")
        tok = m.group(1)
        pos = m.end()
        if tok in ("S", "C"):
            out.append(tok)
        elif tok == "Tinv":
            out.append("Tinv")
        elif tok == "T'":
            out.extend(["T", "S", "T"])
        elif tok == "1":
            pass
        elif tok == "T":
            # a bare T may be followed by a power without caret, handled by regex
            out.append("T")
        else:
            k = int(m.group(2))
            out.extend(["T"] * k if k >= 0 else ["Tinv"] * (-k))
    return out


def apply_word(word: Sequence[str] | str) -> GroupElem:
    """Product of the generators in ``word`` (left to right)."""
    if isinstance(word, str):
        word = parse_word(word)
    out = IDENTITY
    for w in word:
        out = compose(out, _GENERATORS[w])
    return out


def _as_exact(p):
    if isinstance(p, bool):
        raise TypeError("bool is not a point")
    if isinstance(p, int):
        return Fraction(p)
    return p


def act(g: GroupElem, p: ProjPoint) -> ProjPoint:
    """Moebius image ``(a p + b)/(c p + d)``, with infinity handled projectively.

    Exact inputs give exact outputs; floats/complex and numpy arrays are
    mapped in floating point (division by zero gives ``inf``).
    """
    a, b, c, d = g.a, g.b, g.c, g.d
    if p is INF:
        return INF if c == 0 else Fraction(a, c)
    if isinstance(p, np.ndarray):
        with np.errstate(divide="ignore", invalid="ignore"):
            return (a * p + b) / (c * p + d)
    if isinstance(p, (float, complex, np.floating, np.complexfloating)):
        den = c * p + d
        if den == 0:
            return INF
        return (a * p + b) / den
    p = _as_exact(p)
    if isinstance(p, Fraction):
        den = c * p + d
        if den == 0:
            return INF
        return (a * p + b) / den
    if isinstance(p, QuadSurd):
        den = p * c + d
        if den.is_zero():
            return INF
        out = (p * a + b) / den
        return out.a if out.b == 0 else out
    raise TypeError(f"unsupported point type {type(p)!r}")


def to_float(p: ProjPoint) -> float:
    """Floating value of a projective point (``inf`` for infinity)."""
    if p is INF:
        return math.inf
    return float(p)


def points_equal(p: ProjPoint, q: ProjPoint, tol: float = 0.0) -> bool:
    if p is INF or q is INF:
        return p is q
    if tol == 0.0 and not isinstance(p, (float, complex)) and not isinstance(q, (float, complex)):
        return QuadSurd.coerce(p) == QuadSurd.coerce(q)
    return abs(complex(float(p) if not isinstance(p, complex) else p)
               - complex(float(q) if not isinstance(q, complex) else q)) <= tol


def derivative_abs(g: GroupElem, p: ProjPoint) -> float:
    """|g'(p)| = |det| / (c p + d)^2, infinity treated through the chart -1/x."""
    if p is INF:
        # local coordinate u = -1/x on both sides: derivative at infinity is
        # |det| / a^2 when g(inf) = inf, otherwise it is the derivative of
        # u -> g(-1/u) at u = 0, i.e. |det|/c^2.
        if g.c == 0:
            return abs(g.det) / g.a**2
        return abs(g.det) / g.c**2
    x = to_float(p)
    den = g.c * x + g.d
    if den == 0:
        return math.inf
    return abs(g.det) / den**2


def _sqrt_disc(disc: int):
    """Exact sqrt of ``disc`` when it is a square or 5 times a square."""
    r = math.isqrt(disc)
    if r * r == disc:
        return Fraction(r)
    if disc % 5 == 0:
        q = disc // 5
        r = math.isqrt(q)
        if r * r == q:
            # r*sqrt5 = r*(2*phi - 1)
            return QuadSurd(-r, 2 * r)
    return None


def classify_and_fixed_points(g: GroupElem):
    """Return ``(kind, alpha, omega)``.

    ``kind`` is ``"elliptic"``, ``"parabolic"`` or ``"hyperbolic"``; for a
    hyperbolic element ``alpha`` is the repelling and ``omega`` the
    attracting fixed point, for a parabolic element both are the single
    fixed point, and for an elliptic element both are ``None``.
    """
    if g.is_identity():
        raise ValueError("identity has no classification")
    tr2 = g.trace**2
    four_det = 4 * abs(g.det)
    if g.det > 0 and tr2 < four_det:
        return "elliptic", None, None
    if g.det > 0 and tr2 == four_det:
        if g.c == 0:
            return "parabolic", INF, INF
        x = Fraction(g.a - g.d, 2 * g.c)
        return "parabolic", x, x
    a, b, c, d = g.a, g.b, g.c, g.d
    disc = (a - d) ** 2 + 4 * b * c
    if c == 0:
        p1: ProjPoint = INF
        p2: ProjPoint = Fraction(b, d - a) if d != a else INF
    else:
        root = _sqrt_disc(disc)
        if root is None:
            root_f = math.sqrt(disc)
            p1 = ((a - d) + root_f) / (2 * c)
            p2 = ((a - d) - root_f) / (2 * c)
        else:
            num1 = QuadSurd.coerce(root) + (a - d)
            num2 = -QuadSurd.coerce(root) + (a - d)
            p1 = num1 / (2 * c)
            p2 = num2 / (2 * c)
            p1 = p1.a if p1.b == 0 else p1
            p2 = p2.a if p2.b == 0 else p2
    if derivative_abs(g, p1) > 1.0:
        return "hyperbolic", p1, p2
    return "hyperbolic", p2, p1


class GroupRingElem:
    """Finite complex linear combination of group elements."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[complex, GroupElem]] | dict | GroupElem | None = None):
        acc: dict[GroupElem, complex] = {}
        if terms is None:
            items: Iterable = ()
        elif isinstance(terms, GroupElem):
            items = [(1.0, terms)]
        elif isinstance(terms, dict):
            items = [(v, k) for k, v in terms.items()]
        else:
            items = terms
        for coef, elem in items:
            acc[elem] = acc.get(elem, 0) + coef
        self.terms = {k: v for k, v in acc.items() if v != 0}

    def __iter__(self):
        return iter((v, k) for k, v in self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = _as_ring(other)
        return GroupRingElem(list(self) + list(other))

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElem([(-c, g) for c, g in self])

    def __sub__(self, other):
        return self + (-_as_ring(other))

    def __rsub__(self, other):
        return _as_ring(other) - self

    def scale(self, z: complex) -> "GroupRingElem":
        return GroupRingElem([(z * c, g) for c, g in self])

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        other = _as_ring(other)
        return GroupRingElem([(c1 * c2, compose(g1, g2)) for c1, g1 in self for c2, g2 in other])

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        return _as_ring(other) * self

    def __eq__(self, other):
        if not isinstance(other, GroupRingElem):
            other = _as_ring(other)
        return self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{g}" for c, g in self)


def _as_ring(x) -> GroupRingElem:
    if isinstance(x, GroupRingElem):
        return x
    if isinstance(x, GroupElem):
        return GroupRingElem(x)
    if isinstance(x, (int, float, complex)):
        return GroupRingElem([(x, IDENTITY)])
    raise TypeError(f"cannot coerce {type(x)!r} to a group ring element")


def ring(*terms) -> GroupRingElem:
    """Build a group ring element from ``GroupElem``s, words or ``(coef, elem)``."""
    out = []
    for t in terms:
        if isinstance(t, tuple):
            c, g = t
            out.append((c, apply_word(g) if isinstance(g, str) else g))
        elif isinstance(t, str):
            out.append((1.0, apply_word(t)))
        else:
            out.append((1.0, t))
    return GroupRingElem(out)


def ring_combine(a: GroupRingElem, b: GroupRingElem, scalar: complex = 1.0, op: str = "add") -> GroupRingElem:
    """``a + scalar*b`` (op="add") or ``a*b`` (op="mul")."""
    if op == "add":
        return a + b.scale(scalar)
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")
