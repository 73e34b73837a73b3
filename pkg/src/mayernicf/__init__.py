"""Transfer operators of the Gauss and nearest-integer continued fraction maps.

Mayer's transfer operator ``L_s`` and the transfer operator of the
nearest-integer continued fraction map are discretized by Chebyshev
collocation; their Fredholm determinants share zeros on ``Re s = 1/2``, and
the eigenfunctions at such zeros are mapped into each other through period
functions, group cohomology of ``PSL(2, Z)`` and one-sided averages.

Subpackages and modules:

* :mod:`mayernicf.mobius`      -- ``PGL(2, Z)`` elements, words, group ring, exact action
* :mod:`mayernicf.special`     -- Hurwitz zeta, weights ``|u|^{-2s}``
* :mod:`mayernicf.funcrep`     -- function representations (Chebyshev fits, piecewise, asymptotics)
* :mod:`mayernicf.averages`    -- one-sided parabolic and hyperbolic averages
* :mod:`mayernicf.transfer`    -- operators, determinants, zeros, eigenfunctions, the nicf map
* :mod:`mayernicf.feq`         -- three- and four-term functional equations
* :mod:`mayernicf.cohomology`  -- cocycles, the map theta, parabolic normalization
* :mod:`mayernicf.correspond`  -- both directions of the correspondence
* :mod:`mayernicf.verify`      -- verification suites
* :mod:`mayernicf.cli`         -- command line
"""

from .averages import AvHyperbolic, AvParabolic, PoleError, ResolutionError
from .cohomology import Cocycle, cocycle_value, parabolic_normalize, parabolic_obstruction, theta
from .correspond import ChainError, ChainReport, correspondence_report, mayer_to_nicf, nicf_to_mayer, \
    round_trip
from .feq import extend_to_max_interval, four_term_residual, parity_decompose, three_term_residual
from .funcrep.analytic import AnalyticFn, fit
from .funcrep.vfn import FuncFn, PiecewiseFn, ZeroFn
from .mobius import PHI, GroupElem, apply_word, parse_word
from .special import hurwitz_zeta
from .transfer.operators import build_operator
from .transfer.spectral import REFERENCE_ZEROS, channel_det, find_zero, mayer_eigenfunction, nicf_eigenpair

__version__ = "0.1.0"

__all__ = [
    "AvHyperbolic", "AvParabolic", "PoleError", "ResolutionError", "Cocycle", "cocycle_value",
    "parabolic_normalize", "parabolic_obstruction", "theta", "ChainError", "ChainReport",
    "correspondence_report", "mayer_to_nicf", "nicf_to_mayer", "round_trip", "extend_to_max_interval",
    "four_term_residual", "parity_decompose", "three_term_residual", "AnalyticFn", "fit", "FuncFn",
    "PiecewiseFn", "ZeroFn", "PHI", "GroupElem", "apply_word", "parse_word", "hurwitz_zeta",
    "build_operator", "REFERENCE_ZEROS", "channel_det", "find_zero", "mayer_eigenfunction",
    "nicf_eigenpair", "__version__",
]
