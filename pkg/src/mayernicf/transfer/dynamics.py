"""The nearest-integer continued fraction map on ``I = [-1/2, 1/2]``.

    f3(x) = Sx - floor(Sx + 1/2),     Sx = -1/x,

with the modified floor ``n <= y < n+1`` for ``y > 0`` but ``n < y <= n+1``
for ``y <= 0``.  Exact arithmetic is used for ``int``/``Fraction`` input.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational


def nicf_floor(y):
    """Floor with the convention ``n < y <= n+1`` for ``y <= 0``."""
    if y > 0:
        return math.floor(y)
    return math.ceil(y) - 1


def standard_floor(y):
    return math.floor(y)


def _exact(x) -> bool:
    return isinstance(x, Rational)


def nicf_digit(x, standard: bool = False) -> int:
    """Integer part ``a`` with ``-1/x = a + f3(x)``."""
    if x == 0:
        raise ZeroDivisionError("the orbit hit 0 (rational input terminates)")
    y = (Fraction(-1) / Fraction(x)) if _exact(x) else -1.0 / x
    fl = standard_floor if standard else nicf_floor
    return int(fl(y + (Fraction(1, 2) if _exact(x) else 0.5)))


def nicf_map(x, standard: bool = False):
    """``f3(x)``; ``standard=True`` uses the ordinary floor instead."""
    if abs(x) > 0.5:
        raise ValueError("nicf_map is defined on [-1/2, 1/2]")
    a = nicf_digit(x, standard)
    y = (Fraction(-1) / Fraction(x)) if _exact(x) else -1.0 / x
    return y - a


def nicf_digits(x, k: int, standard: bool = False) -> list[int]:
    """First ``k`` digits ``a_1, a_2, ...`` with ``x = -1/(a_1 - 1/(a_2 - ...))``.

    In the notation ``x_{i-1} = -1/(a_i + x_i)``.  Raises
    ``ZeroDivisionError`` if the orbit reaches 0 before ``k`` digits.
    """
    out = []
    for _ in range(k):
        a = nicf_digit(x, standard)
        x = nicf_map(x, standard)
        out.append(a)
    return out


def nicf_reconstruct(digits) -> float:
    """Backward evaluation ``-1/(a_1 + -1/(a_2 + ... -1/a_k))``."""
    x = 0.0
    for a in reversed(list(digits)):
        x = -1.0 / (a + x)
    return x


def inverse_branches(x: float, n_max: int) -> list[tuple[float, float]]:
    """Preimages ``y`` of ``x`` under ``f3`` with ``|digit| < n_max``, with ``|dy/dx|``.

    Candidates are ``y = -1/(x+n)``; a candidate is kept iff it lies in
    ``I`` and ``f3(y) = x`` (checked with the map itself).
    """
    out = []
    for n in range(-n_max + 1, n_max):
        u = x + n
        if u == 0:
            continue
        y = -1.0 / u
        if abs(y) > 0.5 or y == 0:
            continue
        if abs(nicf_map(y) - x) < 1e-9:
            out.append((y, 1.0 / (u * u)))
    return out
