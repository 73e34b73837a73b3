"""Special functions needed by the transfer operators.

* Hurwitz zeta ``zeta(s, a)`` for complex ``s`` and (complex) ``a`` with
  ``Re a > 0``, by Euler--Maclaurin summation after shifting ``a``.
* Powers ``|x|^{-2s}`` continued holomorphically off the real axis, and the
  principal branch ``z^w``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import bernoulli

# Euler--Maclaurin order: B_2 ... B_{2*EM_TERMS}
EM_TERMS = 20


@lru_cache(maxsize=None)
def _bernoulli_even() -> np.ndarray:
    """B_{2k} / (2k)!  for k = 1..EM_TERMS."""
    b = bernoulli(2 * EM_TERMS)
    return np.array([b[2 * k] / math.factorial(2 * k) for k in range(1, EM_TERMS + 1)])


def bernoulli_numbers(n: int) -> list[Fraction]:
    """Exact Bernoulli numbers B_0..B_n (convention B_1 = -1/2)."""
    B = [Fraction(0)] * (n + 1)
    B[0] = Fraction(1)
    for m in range(1, n + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * B[k]
        B[m] = -acc / (m + 1)
    return B


def hurwitz_zeta(s: complex, a, *, shift: int | None = None) -> np.ndarray | complex:
    """Hurwitz zeta ``sum_{n>=0} (n + a)^{-s}``.

    ``a`` may be a scalar or an array (evaluated element-wise; complex ``a``
    allowed as long as ``Re a > 0``).  Powers use the principal branch,
    which for ``Re a > 0`` agrees with the analytic continuation from real
    ``a``.

    Raises ``ValueError`` at the pole ``s = 1`` and for ``Re a <= 0``.
    """
    s = complex(s)
    if s == 1:
        raise ValueError("Hurwitz zeta has a pole at s = 1")
    scalar = np.ndim(a) == 0
    a = np.atleast_1d(np.asarray(a, dtype=complex))
    if np.any(a.real <= 0):
        raise ValueError("Hurwitz zeta needs Re a > 0")
    # shift so that the asymptotic tail is accurate; the bound grows with
    # |s| because the Euler--Maclaurin terms scale like (s)_{2k} / a^{2k}.
    if shift is None:
        target = 15.0 + 0.5 * abs(s)
        shift = int(max(0, math.ceil(target - float(np.min(a.real)))))
    n = np.arange(shift)
    head = np.exp(-s * np.log(a[:, None] + n[None, :])).sum(axis=1) if shift else 0.0
    x = a + shift
    logx = np.log(x)
    xs = np.exp(-s * logx)  # x^{-s}
    tail = x * xs / (s - 1) + 0.5 * xs
    # sum_k B_2k/(2k)! (s)_{2k-1} x^{-s-2k+1}
    b = _bernoulli_even()
    poch = s  # (s)_{1}
    xpow = xs / x  # x^{-s-1}
    inv_x2 = 1.0 / (x * x)
    for k in range(1, EM_TERMS + 1):
        tail = tail + b[k - 1] * poch * xpow
        poch = poch * (s + 2 * k - 1) * (s + 2 * k)
        xpow = xpow * inv_x2
    out = head + tail
    return complex(out[0]) if scalar else out


def hurwitz_zeta_table(s: complex, K: int, a) -> np.ndarray:
    """``zeta(s + k, a)`` for ``k = 0..K-1`` at every ``a``: array of shape ``(len(a), K)``.

    Same method as :func:`hurwitz_zeta`, with the logarithms shared between
    the ``K`` exponents (the shift is chosen for the largest ``|s + k|``).
    """
    s = complex(s)
    ks = np.arange(K)
    if np.any(s + ks == 1):
        raise ValueError("Hurwitz zeta has a pole at s = 1")
    a = np.atleast_1d(np.asarray(a, dtype=complex)).ravel()
    out = np.zeros((len(a), K), dtype=complex)
    if len(a) == 0 or K == 0:
        return out
    if np.any(a.real <= 0):
        raise ValueError("Hurwitz zeta needs Re a > 0")
    target = 15.0 + 0.5 * abs(s + K - 1)
    shift = int(max(0, math.ceil(target - float(np.min(a.real)))))
    if shift:
        L = np.log(a[:, None] + np.arange(shift)[None, :])
        cur = np.exp(-s * L)
        step = np.exp(-L)
        for k in range(K):
            out[:, k] = cur.sum(axis=1)
            cur = cur * step
    x = (a + shift)[:, None]
    sk = s + ks[None, :]
    xs = np.exp(-sk * np.log(x))  # x^{-s-k}
    tail = x * xs / (sk - 1) + 0.5 * xs
    b = _bernoulli_even()
    poch = sk
    xpow = xs / x
    inv_x2 = 1.0 / (x * x)
    for j in range(1, EM_TERMS + 1):
        tail = tail + b[j - 1] * poch * xpow
        poch = poch * (sk + 2 * j - 1) * (sk + 2 * j)
        xpow = xpow * inv_x2
    return out + tail


def principal_power(z, w):
    """``z**w = exp(w Log z)`` with the principal logarithm."""
    z = np.asarray(z, dtype=complex)
    return np.exp(w * np.log(z))


def pow_sq(u, s):
    """Holomorphic continuation of ``|u|^{-2s}`` off the real axis.

    For real ``u`` this is ``|u|^{-2s}``; for complex ``u`` it is
    ``(+-u)^{-2s}`` on the principal branch with the sign chosen so that
    ``Re(+-u) > 0``.  This is the weight of the slash action ``|_s``.
    """
    u = np.asarray(u, dtype=complex)
    v = np.where(u.real >= 0, u, -u)
    return np.exp(-2.0 * s * np.log(v))
