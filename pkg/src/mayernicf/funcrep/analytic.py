"""Chebyshev representations of analytic functions on real intervals.

An :class:`AnalyticFn` stores Chebyshev coefficients of a function on
``[a, b]`` in one of two charts of ``P^1(R)``:

* ``identity``: the stored function is ``h(x)`` itself;
* ``inverted``: the stored function is ``q(u) = (h|S)(u)`` in ``u = -1/x``,
  so ``h(x) = |x|^{-2s} q(-1/x)``.  This covers neighbourhoods of ``inf``
  with bounded intervals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..averages import ResolutionError
from ..special import pow_sq
from .chebyshev import bernstein_rho, cgl_nodes, clenshaw, to_unit, values_to_coeffs
from .vfn import VFn

DEFAULT_FIT_N = 48
MAX_FIT_N = 512


class ExtrapolationError(ValueError):
    """Evaluation outside the region where the Chebyshev series is certified."""


@dataclass
class AnalyticFn(VFn):
    chart: str
    interval: tuple[float, float]
    coeffs: np.ndarray
    s: complex = 0j
    strict: bool = False  # raise instead of extrapolating past the certified ellipse

    def __post_init__(self):
        if self.chart not in ("identity", "inverted"):
            raise ValueError(f"unknown chart {self.chart!r}")
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        self.s = complex(self.s)
        self.sing = ()

    # -- resolution diagnostics -----------------------------------------
    @property
    def N(self) -> int:
        return len(self.coeffs)

    def scale(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.N else 0.0

    def trailing(self) -> float:
        """Largest of the last few coefficient magnitudes, relative to the maximum."""
        sc = self.scale()
        if sc == 0:
            return 0.0
        k = max(2, self.N // 8)
        return float(np.max(np.abs(self.coeffs[-k:]))) / sc

    def decay_rho(self) -> float:
        """Estimated Bernstein parameter from the coefficient envelope."""
        c = np.abs(self.coeffs)
        sc = c.max() if len(c) else 0.0
        if sc == 0:
            return np.inf
        k = np.arange(len(c))
        keep = c > 1e-15 * sc
        if keep.sum() < 3:
            return np.inf
        env = np.maximum.accumulate(c[::-1])[::-1]  # monotone envelope
        sl = np.polyfit(k[keep], np.log(env[keep]), 1)[0]
        return float(np.exp(-sl)) if sl < 0 else 1.0

    def certified(self, z, tol: float = 1e-8) -> np.ndarray:
        """Points where the truncation error estimate is below ``tol`` (relative)."""
        v = self._chart_var(np.asarray(z, dtype=complex))
        r = bernstein_rho(v, *self.interval)
        rho = self.decay_rho()
        inside = r <= 1.0 + 1e-12
        if not np.isfinite(rho):
            return np.ones(np.shape(v), dtype=bool)
        with np.errstate(over="ignore", divide="ignore"):
            est = (r / rho) ** self.N + self.trailing() * r**self.N
        return inside | (est < tol)

    # -- evaluation --------------------------------------------------------
    def _chart_var(self, x):
        if self.chart == "identity":
            return x
        with np.errstate(divide="ignore", invalid="ignore"):
            return -1.0 / x

    def eval_chart(self, v) -> np.ndarray:
        """Evaluate the stored series in its own chart variable."""
        v = np.asarray(v, dtype=complex)
        return clenshaw(self.coeffs, to_unit(v, *self.interval))

    def _eval(self, x):
        if self.strict:
            ok = self.certified(x)
            if not np.all(ok):
                raise ExtrapolationError("evaluation point outside the certified Bernstein ellipse")
        if self.chart == "identity":
            return self.eval_chart(x)
        u = self._chart_var(x)
        return pow_sq(x, self.s) * self.eval_chart(u)

    def at_inf(self, u):
        u = np.atleast_1d(np.asarray(u, dtype=complex))
        if self.chart == "inverted":
            return self.eval_chart(u)
        return super().at_inf(u)

    def derivative(self) -> "AnalyticFn":
        """Derivative in the chart variable (as a new series)."""
        c = np.polynomial.chebyshev.chebder(self.coeffs) * 2.0 / (self.interval[1] - self.interval[0])
        return AnalyticFn(self.chart, self.interval, c, self.s)

    def to_dict(self) -> dict:
        return {
            "type": "AnalyticFn",
            "chart": self.chart,
            "interval": [float(self.interval[0]), float(self.interval[1])],
            "s": [self.s.real, self.s.imag],
            "coeffs": [[c.real, c.imag] for c in self.coeffs],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AnalyticFn":
        return cls(d["chart"], tuple(d["interval"]), [complex(*c) for c in d["coeffs"]],
                   complex(*d["s"]))


def fit_chart(q, interval, chart: str = "identity", N: int = DEFAULT_FIT_N, s=0j,
              tol: float = 1e-10, adaptive: bool = True) -> AnalyticFn:
    """Chebyshev interpolant of ``q`` given directly in the chart variable.

    The degree is doubled (up to ``MAX_FIT_N``) until the trailing
    coefficients fall below ``tol`` relative to the largest one; otherwise a
    :class:`~mayernicf.averages.ResolutionError` is raised (no decay means the
    input is not analytic on a neighbourhood of the interval).
    """
    a, b = map(float, interval)
    if not a < b:
        raise ValueError("interval must satisfy a < b")
    n = N
    while True:
        x = cgl_nodes(n, a, b)
        vals = np.asarray(q(x), dtype=complex)
        if not np.all(np.isfinite(vals)):
            raise ResolutionError("non-finite samples while fitting")
        c = values_to_coeffs(vals)
        f = AnalyticFn(chart, (a, b), c, s)
        if f.trailing() < tol:
            return f
        if not adaptive or 2 * n > MAX_FIT_N:
            raise ResolutionError(
                f"Chebyshev coefficients do not decay (trailing {f.trailing():.1e} at N={n})")
        n *= 2


def fit(f, interval, chart: str = "identity", N: int = DEFAULT_FIT_N, s=None,
        tol: float = 1e-10, adaptive: bool = True) -> AnalyticFn:
    """Fit a plane-variable callback ``f(x)`` on ``interval`` in the given chart.

    For ``chart="inverted"`` the interval refers to ``u = -1/x`` and the
    samples are ``q(u) = |u|^{-2s} f(-1/u)``; it must not contain ``u = 0``
    unless ``f`` provides ``at_inf``.
    """
    if s is None:
        s = getattr(f, "s", 0j)
    if chart == "identity":
        return fit_chart(f, interval, chart, N, s, tol, adaptive)
    if isinstance(f, VFn):
        q = f.at_inf
    else:
        def q(u):
            u = np.asarray(u, dtype=complex)
            return pow_sq(u, s) * np.asarray(f(-1.0 / u), dtype=complex)
    return fit_chart(q, interval, chart, N, s, tol, adaptive)


def coefficient_decay(F, interval, N: int = 64) -> float:
    """Trailing/maximal coefficient ratio of a degree-N fit: a refit analyticity test.

    Small values (< 1e-8 or so) certify analyticity on a neighbourhood of
    ``interval``; a singularity inside the interval produces algebraic decay.
    """
    a, b = interval
    x = cgl_nodes(N, a, b)
    c = values_to_coeffs(np.asarray(F(x), dtype=complex))
    sc = np.max(np.abs(c))
    if sc == 0:
        return 0.0
    k = max(2, N // 8)
    return float(np.max(np.abs(c[-k:])) / sc)


def analytic_across(F, p, half: float = 0.1, N: int = 64, abs_scale: float = 0.0) -> float:
    """Refit test for analyticity of ``F`` across the point ``p`` (``inf`` allowed).

    Fits ``F`` on a slightly asymmetric interval straddling ``p`` (so that
    ``p`` itself is not a node; in the chart at infinity for ``p = inf``)
    and returns the trailing/maximal coefficient ratio.  The ratio is taken
    relative to ``max(max coefficient, abs_scale)``, so a function that
    vanishes identically (up to rounding) passes.
    """
    if np.isinf(p):
        q, I = F.at_inf, (-half, 1.07 * half)
    else:
        q, I = F, (p - half, p + 1.07 * half)
    x = cgl_nodes(N, *I)
    vals = np.asarray(q(x), dtype=complex)
    if not np.all(np.isfinite(vals)):
        return np.inf
    c = values_to_coeffs(vals)
    sc = max(float(np.max(np.abs(c))), abs_scale)
    if sc == 0:
        return 0.0
    k = max(2, N // 8)
    return float(np.max(np.abs(c[-k:])) / sc)
