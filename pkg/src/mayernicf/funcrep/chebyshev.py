"""Chebyshev--Gauss--Lobatto interpolation on a real interval.

Everything here works on *node values*: an interpolant is determined by its
values at the N Lobatto points of ``[a, b]``.  Evaluation off the nodes uses
the barycentric formula (stable for complex points inside the Bernstein
ellipse), coefficients come from a DCT-I computed with an FFT.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=64)
def _unit_nodes(n: int) -> np.ndarray:
    if n == 1:
        return np.zeros(1)
    return np.cos(np.pi * np.arange(n) / (n - 1))


def cgl_nodes(n: int, a: float, b: float) -> np.ndarray:
    """The ``n`` Lobatto points of ``[a, b]``, ordered from ``b`` down to ``a``."""
    return 0.5 * (a + b) + 0.5 * (b - a) * _unit_nodes(n)


@lru_cache(maxsize=64)
def bary_weights(n: int) -> np.ndarray:
    w = (-1.0) ** np.arange(n)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def interp_matrix(nodes: np.ndarray, y) -> np.ndarray:
    """Matrix ``E`` with ``E @ values = interpolant(y)``.

    Row ``i`` holds the cardinal functions ``l_j(y_i)``.  Points that
    coincide with a node give the corresponding unit row.
    """
    y = np.atleast_1d(np.asarray(y, dtype=complex))
    w = bary_weights(len(nodes))
    diff = y[:, None] - nodes[None, :]
    exact = diff == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        q = w[None, :] / diff
        E = q / q.sum(axis=1, keepdims=True)
    hit = exact.any(axis=1)
    if np.any(hit):
        E[hit] = exact[hit].astype(float)
    return E


def values_to_coeffs(values: np.ndarray) -> np.ndarray:
    """Chebyshev coefficients of the interpolant through CGL node values.

    Works along the first axis, so a matrix of column vectors can be
    converted at once.
    """
    v = np.asarray(values)
    n = v.shape[0]
    if n == 1:
        return v.copy()
    ext = np.concatenate([v, v[-2:0:-1]], axis=0)
    c = np.fft.fft(ext, axis=0)[:n] / (n - 1)
    if not np.iscomplexobj(v):
        c = c.real
    c[0] *= 0.5
    c[-1] *= 0.5
    return c


def coeffs_to_values(coeffs: np.ndarray) -> np.ndarray:
    """Inverse of :func:`values_to_coeffs` (1-D)."""
    c = np.asarray(coeffs)
    out = clenshaw(c, _unit_nodes(len(c)))
    return out if np.iscomplexobj(c) else out.real


def clenshaw(coeffs: np.ndarray, t) -> np.ndarray:
    """Evaluate ``sum_k c_k T_k(t)`` for (complex) ``t`` in the unit variable."""
    t = np.asarray(t, dtype=complex)
    b1 = np.zeros_like(t)
    b2 = np.zeros_like(t)
    for ck in coeffs[:0:-1]:
        b1, b2 = 2.0 * t * b1 - b2 + ck, b1
    return t * b1 - b2 + coeffs[0]


def to_unit(x, a: float, b: float):
    return (2.0 * np.asarray(x) - (a + b)) / (b - a)


def bernstein_rho(x, a: float, b: float) -> np.ndarray:
    """Bernstein ellipse parameter of the point(s) ``x`` w.r.t. ``[a, b]``."""
    t = np.asarray(to_unit(x, a, b), dtype=complex)
    r = t + np.sqrt(t - 1) * np.sqrt(t + 1)
    return np.maximum(np.abs(r), 1.0 / np.abs(r))


def taylor_matrix(nodes: np.ndarray, center: complex, radius: float, K: int,
                  M: int | None = None) -> np.ndarray:
    """Taylor coefficients at ``center`` of all cardinal functions.

    Returns a ``(K, N)`` matrix ``A`` so that ``A @ values`` are the first
    ``K`` Taylor coefficients of the interpolant.  Computed by the FFT of
    samples on the circle ``|z - center| = radius``; exact up to rounding
    for ``M >= N`` since the interpolant is a polynomial.
    """
    n = len(nodes)
    if M is None:
        M = max(2 * n, 2 * K, 64)
    z = center + radius * np.exp(2j * np.pi * np.arange(M) / M)
    E = interp_matrix(nodes, z)  # (M, N)
    A = np.fft.fft(E, axis=0) / M
    A = A[:K] / radius ** np.arange(K)[:, None]
    return A
