"""Polynomial interpolation on complex contours, used to discretize transfer operators.

A :class:`ContourBasis` represents a holomorphic function by its values at
N points on a closed curve Gamma (Fejer points of an ellipse or a circle).
The interpolating polynomial -- in a chosen variable ``v = var(z)`` -- is
evaluated with the barycentric formula, which is stable inside Gamma.

Why contours and not the real interval?  The Gauss-map branch
``z -> 1/(z+1)`` expands near the left end of any real interval that
contains 0, so a real-line collocation matrix carries spurious eigenvalues
(of size ~0.1-0.4 for practical N) that spoil Fredholm determinants.  On a
curve that is mapped strictly inside itself by every branch, the
collocation matrix approximates a nuclear operator and its spectrum
converges geometrically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chebyshev import bernstein_rho


def barycentric_weights(nodes: np.ndarray) -> np.ndarray:
    """Weights ``1/prod_{k != j}(x_j - x_k)``, rescaled to avoid overflow."""
    d = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(d, 1.0)
    lw = -np.sum(np.log(d), axis=1)
    lw -= lw.real.max()
    return np.exp(lw)


def bary_matrix(nodes: np.ndarray, weights: np.ndarray, y) -> np.ndarray:
    """Rows of cardinal-function values ``l_j(y_i)`` (second barycentric form)."""
    y = np.atleast_1d(np.asarray(y, dtype=complex))
    d = y[:, None] - nodes[None, :]
    exact = d == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        q = weights[None, :] / d
        E = q / q.sum(axis=1, keepdims=True)
    hit = exact.any(axis=1)
    if np.any(hit):
        E[hit] = exact[hit].astype(float)
    return E


@dataclass
class ContourBasis:
    """Interpolation at N points of a contour, in the variable ``var(z)``.

    kind:
      ``"disk"``         nodes ``c + R exp(2 pi i j/N)``, variable z;
      ``"ellipse-log"``  Fejer points of the Bernstein ellipse ``E_rho`` of
                         ``[log(1+a), log(1+b)]`` in the variable ``log(1+z)``.
    """

    kind: str
    N: int
    params: tuple
    nodes: np.ndarray = None  # in z
    vnodes: np.ndarray = None  # in the interpolation variable
    weights: np.ndarray = None
    inside_level: float = 0.9

    def __post_init__(self):
        N = self.N
        if self.kind == "disk":
            c, R = self.params
            self.vnodes = c + R * np.exp(2j * np.pi * np.arange(N) / N)
            self.nodes = self.vnodes
        elif self.kind == "ellipse-log":
            a, b, rho = self.params
            va, vb = np.log1p(a), np.log1p(b)
            w = rho * np.exp(2j * np.pi * (np.arange(N) + 0.5) / N)
            self.vnodes = 0.5 * (va + vb) + 0.25 * (vb - va) * (w + 1.0 / w)
            self.nodes = np.expm1(self.vnodes)
        else:
            raise ValueError(f"unknown contour kind {self.kind!r}")
        self.weights = barycentric_weights(self.vnodes)

    # -- variable and geometry -------------------------------------------
    def var(self, z):
        z = np.asarray(z, dtype=complex)
        if self.kind == "ellipse-log":
            return np.log1p(z)
        return z

    def level(self, z) -> np.ndarray:
        """Relative contour level of z: < 1 inside, 1 on the node contour."""
        z = np.asarray(z, dtype=complex)
        if self.kind == "disk":
            c, R = self.params
            return np.abs(z - c) / R
        a, b, rho = self.params
        v = np.log1p(z)
        r = bernstein_rho(v, np.log1p(a), np.log1p(b))
        # map rho in [1, rho_nodes] to [0, 1] (the segment itself has level 0)
        return (r - 1.0) / (rho - 1.0)

    def inside(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if self.kind == "ellipse-log":
            ok = (z.real > -0.999)
            lev = np.full(z.shape, np.inf)
            lev[ok] = self.level(z[ok])
            inner = ok & (lev <= self.inside_level)
            a, b, _ = self.params
            # the real segment itself is safely inside
            seg = (np.abs(z.imag) < 1e-300) & (z.real >= a) & (z.real <= b)
            return inner | seg
        return self.level(z) <= self.inside_level

    # -- interpolation ---------------------------------------------------
    def interp(self, z) -> np.ndarray:
        return bary_matrix(self.vnodes, self.weights, self.var(z))

    def taylor_radius(self) -> float:
        """Radius of a circle about 0 that lies well inside the contour."""
        if self.kind == "disk":
            c, R = self.params
            return 0.5 * (self.inside_level * R - abs(c))
        return 0.03

    def taylor0(self, K: int, radius: float | None = None) -> np.ndarray:
        """``(K, N)`` matrix mapping node values to Taylor coefficients at 0."""
        r = self.taylor_radius() if radius is None else radius
        M = max(64, 2 * K)
        z = r * np.exp(2j * np.pi * np.arange(M) / M)
        A = np.fft.fft(self.interp(z), axis=0) / M
        return A[:K] / r ** np.arange(K)[:, None]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "N": self.N, "params": list(self.params)}


def mayer_basis(N: int) -> ContourBasis:
    """Default contour for the Gauss-map operator (contains 0, mapped inside by all branches)."""
    return ContourBasis("ellipse-log", N, (-0.05, 1.2, 1.5))


def nicf_bases(N: int) -> tuple[ContourBasis, ContourBasis]:
    """Default discs for the two components of the nearest-integer operator."""
    return ContourBasis("disk", N, (-0.25, 0.35)), ContourBasis("disk", N, (0.25, 0.35))
