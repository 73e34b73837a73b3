"""Spectra, Fredholm determinants and zeros of the discretized operators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..averages import ResolutionError
from .operators import DEFAULT_K_TAIL, DEFAULT_N, DEFAULT_N_DIRECT, OperatorMatrix, build_operator

CHANNELS = ("nicf", "mayer", "kcomp")

# Imaginary parts of the first two zeros on Re s = 1/2, as located by
# :func:`find_zero` at the default truncation (both channels agree to 1e-9).
# Used as default evaluation points by the verification suites.
REFERENCE_ZEROS = (9.533695261353557, 13.779751351890738)


def eigenpairs(op: OperatorMatrix, k: int | None = None):
    """Eigenvalues sorted by decreasing modulus and the matching eigenvectors (columns)."""
    w, V = np.linalg.eig(op.matrix)
    order = np.argsort(-np.abs(w))
    w, V = w[order], V[:, order]
    if k is not None:
        w, V = w[:k], V[:, :k]
    return w, V


def fredholm_det(op: OperatorMatrix, sign: int = +1) -> complex:
    """``det(1 - sign * L)`` of the collocation matrix."""
    n = op.matrix.shape[0]
    return complex(np.linalg.det(np.eye(n) - sign * op.matrix))


def kernel_basis(op: OperatorMatrix, eps: int = +1, tol: float = 1e-4):
    """Eigenvectors of ``L`` with eigenvalue within ``tol`` of ``eps``.

    Returns ``(vectors, eigenvalues)``; the number of columns is the
    numerical dimension of ``ker(1 - eps L)``.
    """
    w, V = np.linalg.eig(op.matrix)
    sel = np.abs(w - eps) < tol
    return V[:, sel], w[sel]


def channel_det(channel: str, s: complex, N: int = DEFAULT_N, n_direct: int = DEFAULT_N_DIRECT,
                k_tail: int = DEFAULT_K_TAIL, variant: str = "duplicated") -> complex:
    """Determinant whose zeros are tracked in ``channel``.

    ``nicf``  : det(1 - L_nicf)
    ``mayer`` : det(1 - L_s) det(1 + L_s)
    ``kcomp`` : det(1 - K_s)
    """
    if channel == "nicf":
        return fredholm_det(build_operator("nicf", s, N, n_direct, k_tail))
    if channel == "mayer":
        op = build_operator("mayer", s, N, n_direct, k_tail)
        return fredholm_det(op, +1) * fredholm_det(op, -1)
    if channel == "kcomp":
        return fredholm_det(build_operator("kcomp", s, N, n_direct, k_tail, variant))
    raise ValueError(f"unknown channel {channel!r}")


def scan_line(channel: str, t_values, sigma: float = 0.5, **kw) -> np.ndarray:
    """Determinant values along ``s = sigma + i t``."""
    return np.array([channel_det(channel, complex(sigma, t), **kw) for t in t_values])


@dataclass
class ZeroResult:
    channel: str
    t: float
    s: complex  # complex zero of the determinant (Re s close to 1/2)
    det_abs: float
    iterations: int
    N: int

    def to_dict(self):
        return {"channel": self.channel, "t": self.t, "s": [self.s.real, self.s.imag],
                "det_abs": self.det_abs, "iterations": self.iterations, "N": self.N}


def refine_zero(channel: str, t0: float, t1: float, sigma: float = 0.5, tol: float = 1e-11,
                maxit: int = 40, **kw) -> ZeroResult:
    """Secant iteration for ``det(s) = 0`` in the complex ``s`` plane.

    Started from ``s = sigma + i t0`` and ``sigma + i t1``.  The reported
    ``t`` is ``Im s`` of the complex zero; ``Re s - sigma`` is a diagnostic of
    discretization error for zeros on the line.
    """
    f = lambda s: channel_det(channel, s, **kw)
    s0, s1 = complex(sigma, t0), complex(sigma, t1)
    f0, f1 = f(s0), f(s1)
    for it in range(1, maxit + 1):
        if f1 == f0:
            break
        s2 = s1 - f1 * (s1 - s0) / (f1 - f0)
        s0, f0 = s1, f1
        s1, f1 = s2, f(s2)
        if abs(s1 - s0) < tol:
            break
    else:
        raise ResolutionError(f"secant iteration for the {channel} zero did not converge")
    return ZeroResult(channel, s1.imag, s1, abs(f(complex(sigma, s1.imag))), it,
                      kw.get("N", DEFAULT_N))


def find_zero(channel: str, t_lo: float, t_hi: float, sigma: float = 0.5, n_scan: int = 31,
              **kw) -> ZeroResult:
    """Locate the zero of ``|det|`` on ``[t_lo, t_hi]``: coarse scan, then secant."""
    ts = np.linspace(t_lo, t_hi, n_scan)
    vals = np.abs(scan_line(channel, ts, sigma, **kw))
    i = int(np.argmin(vals))
    if i == 0 or i == n_scan - 1:
        raise ResolutionError(f"no sign of a minimum of |det| in [{t_lo}, {t_hi}]")
    h = ts[1] - ts[0]
    res = refine_zero(channel, ts[i], ts[i] + 0.25 * h, sigma, **kw)
    if not (t_lo - h <= res.t <= t_hi + h):
        raise ResolutionError(f"zero left the bracket [{t_lo}, {t_hi}] (t = {res.t})")
    return res


def local_minima(t_values, det_abs) -> list[int]:
    """Indices of interior local minima of a sampled ``|det|``."""
    a = np.asarray(det_abs)
    return [i for i in range(1, len(a) - 1) if a[i] <= a[i - 1] and a[i] <= a[i + 1]]


# ---------------------------------------------------------------------------
# Eigenfunctions as function objects
# ---------------------------------------------------------------------------

def _normalize(comp, grid) -> complex:
    """Scale making the sup over ``grid`` equal to 1 and the largest sample real positive."""
    vals = comp(grid)
    i = int(np.nanargmax(np.abs(vals)))
    return 1.0 / vals[i]


def mayer_eigenfunction(s: complex, eps: int = +1, N: int = DEFAULT_N, tol: float = 1e-4,
                        n_direct: int = DEFAULT_N_DIRECT, k_tail: int = DEFAULT_K_TAIL):
    """Eigenfunction of Mayer's operator for the eigenvalue closest to ``eps``.

    Returns ``(f, lam)`` with ``f`` an :class:`EigenComponent` on ``(-1, inf)``,
    normalized to unit sup on ``[0, 1]``.  Raises ``ValueError`` if no
    eigenvalue lies within ``tol`` of ``eps`` (empty kernel).
    """
    from .eigenfunctions import EigenComponent, EigenEvaluator
    from .operators import mayer_operator

    op = mayer_operator(s, N, n_direct, k_tail)
    w, V = np.linalg.eig(op.matrix())
    i = int(np.argmin(np.abs(w - eps)))
    if abs(w[i] - eps) >= tol:
        raise ValueError(f"no eigenvalue within {tol} of {eps} (closest {w[i]:.6g})")
    ev = EigenEvaluator(op, V[:, i], w[i])
    f = EigenComponent(ev, 0, domain=(-1.0, np.inf))
    return f.scaled(_normalize(f, np.linspace(0, 1, 41))), complex(w[i])


def nicf_eigenpair(s: complex, N: int = DEFAULT_N, tol: float = 1e-4,
                   n_direct: int = DEFAULT_N_DIRECT, k_tail: int = DEFAULT_K_TAIL):
    """Eigenpair ``(g1, g2)`` of the nearest-integer operator for the eigenvalue closest to 1.

    ``g1`` lives on ``(-phi^2, phi)`` and ``g2`` on ``(-phi, phi^2)``; both
    share one scale (unit sup of ``g1`` on ``[-1, 1]``).
    """
    from .eigenfunctions import EigenComponent, EigenEvaluator
    from .operators import NICF_DOMAINS, nicf_operator

    op = nicf_operator(s, N, n_direct, k_tail)
    w, V = np.linalg.eig(op.matrix())
    i = int(np.argmin(np.abs(w - 1)))
    if abs(w[i] - 1) >= tol:
        raise ValueError(f"no eigenvalue within {tol} of 1 (closest {w[i]:.6g})")
    ev = EigenEvaluator(op, V[:, i], w[i])
    g1 = EigenComponent(ev, 0, domain=NICF_DOMAINS[0])
    g2 = EigenComponent(ev, 1, domain=NICF_DOMAINS[1])
    c = _normalize(g1, np.linspace(-1, 1, 41))
    return g1.scaled(c), g2.scaled(c), complex(w[i])
