"""One-sided asymptotic expansions at ``0`` and ``inf``.

At infinity a vector of weight ``2s`` is expected to behave like

    f(x) ~ sum_{m >= -1} c_m |x|^{-2s} x^{-m}        (x -> +inf or -inf),

and at zero like ``f(x) ~ sum_{m >= -1} c_m x^m``.  The coefficients are
obtained by linear least squares on geometrically spaced sample points;
the fit residual decides whether the expansion exists ("simple" behaviour).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MAX_TERMS = 12


@dataclass
class AsymExpansion:
    location: str  # "0" or "inf"
    coeffs: np.ndarray  # c_{-1}, c_0, ..., c_M
    side: int = +1
    residual: float = 0.0
    scale: float = 1.0
    ok: bool = True
    window: tuple = field(default=(0.0, 0.0))

    @property
    def M(self) -> int:
        return len(self.coeffs) - 2

    def c(self, m: int) -> complex:
        """Coefficient ``c_m`` (``m >= -1``)."""
        return complex(self.coeffs[m + 1])

    def __call__(self, x, s) -> np.ndarray:
        """Evaluate the truncated expansion."""
        x = np.asarray(x, dtype=float)
        m = np.arange(-1, self.M + 1)
        if self.location == "inf":
            basis = np.abs(x[..., None]) ** (-2 * complex(s)) * x[..., None] ** (-m)
        else:
            basis = x[..., None] ** m
        return basis @ self.coeffs

    def to_dict(self) -> dict:
        return {"location": self.location, "side": self.side, "residual": self.residual,
                "scale": self.scale, "ok": self.ok,
                "coeffs": [[c.real, c.imag] for c in np.asarray(self.coeffs, dtype=complex)]}


def _sample(lo: float, hi: float, n: int, spacing: str) -> np.ndarray:
    if spacing == "geometric":
        return np.geomspace(lo, hi, n)
    if spacing == "chebyshev":
        k = np.arange(n)
        return 0.5 * (lo + hi) - 0.5 * (hi - lo) * np.cos((k + 0.5) * np.pi / n)
    raise ValueError(f"unknown spacing {spacing!r}")


def fit_asymptotic(f, location: str = "inf", s=0.5, M: int = 8, side: int = +1,
                   delta: float = 1e-3, X: float = 1e3, n_points: int = 24,
                   near: float | None = None, rtol: float = 1e-6,
                   spacing: str = "chebyshev") -> AsymExpansion:
    """Least-squares fit of the one-sided expansion of ``f`` at ``location``.

    Samples ``n_points`` points between ``near`` and the end of the window
    (``X`` at infinity, ``delta`` at zero) on the given side.  With
    ``spacing="chebyshev"`` (default) the points are Chebyshev points in the
    local variable (``1/|x|`` resp. ``|x|``), which keeps the monomial
    least-squares problem well conditioned; ``"geometric"`` spaces them
    geometrically.  Defaults for ``near``: 10 at infinity, 0.1 at zero.  The
    expansion is accepted (``ok``) if the relative residual is below
    ``rtol``; a large residual is the "not simple" signal.
    """
    if M + 2 > MAX_TERMS + 2:
        raise ValueError(f"at most {MAX_TERMS} coefficients beyond c_0 are supported")
    if n_points < M + 4:
        raise ValueError("need at least M + 4 sample points")
    s = complex(s)
    m = np.arange(-1, M + 1)
    if location == "inf":
        near = 10.0 if near is None else near
        u = _sample(1.0 / X, 1.0 / near, n_points, spacing)
        x = side / u
        # |x|^{2s} f(x) = sum c_m x^{-m};  multiply by |x|^{-1} to get a polynomial in u
        y = np.abs(x) ** (2 * s) * np.asarray(f(x), dtype=complex)
        A = (np.sign(x)[:, None] ** (-m)) * u[:, None] ** (m + 1)
        rhs = y * u
        window = (near, X)
    elif location == "0":
        near = 0.1 if near is None else near
        x = side * _sample(delta, near, n_points, spacing)
        y = np.asarray(f(x), dtype=complex)
        A = x[:, None] ** (m + 1)
        rhs = y * x
        window = (delta, near)
    else:
        raise ValueError("location must be '0' or 'inf'")
    if not np.all(np.isfinite(rhs)):
        return AsymExpansion(location, np.full(M + 2, np.nan, dtype=complex), side, np.inf,
                             np.nan, False, window)
    # column scaling for conditioning
    cs = np.max(np.abs(A), axis=0)
    coef, *_ = np.linalg.lstsq(A / cs, rhs, rcond=None)
    coef = coef / cs
    fitted = A @ coef
    scale = float(np.max(np.abs(rhs))) or 1.0
    resid = float(np.max(np.abs(fitted - rhs))) / scale
    return AsymExpansion(location, coef, side, resid, scale, resid < rtol, window)
