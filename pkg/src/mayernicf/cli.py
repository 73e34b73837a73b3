"""Command-line front end.

    mayernicf scan       --t-min 9 --t-max 10 --steps 200 [--re 0.5] [--operator both]
    mayernicf find-zero  --t-min 9.4 --t-max 9.7
    mayernicf eigs       --s 1 --operator mayer --N 24
    mayernicf correspond --s 0.5+9.5337i
    mayernicf verify     identities|averages|feq|cohomology|chain [--seed 0]
    mayernicf digits     --x 3/7 --k 10

Exit codes: 0 success, 1 verification failure (or no zero found), 2 usage error.
Options can also come from a JSON file (``--config``); flags given on the
command line override it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .transfer.operators import DEFAULT_K_TAIL, DEFAULT_N, DEFAULT_N_DIRECT

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SCAN_HEADER = ("t", "det_nicf_abs", "det_mayer_prod_abs", "det_kcomp_abs")
OPERATOR_CHANNELS = {
    None: ("nicf", "mayer", "kcomp"),
    "both": ("nicf", "mayer"),
    "nicf": ("nicf",),
    "mayer": ("mayer",),
    "kcomp": ("kcomp",),
}
SUITE_NAMES = ("identities", "averages", "feq", "cohomology", "chain")


class UsageError(ValueError):
    """Invalid combination of options (exit code 2)."""


def parse_complex(text) -> complex:
    """Parse ``RE+IMi`` (also ``0.5``, ``9.5i``, ``0.5-3j``) into a complex number."""
    if isinstance(text, (int, float, complex)):
        return complex(text)
    t = str(text).strip().replace(" ", "").replace("I", "i").replace("i", "j")
    try:
        return complex(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse {text!r} as RE+IMi") from None


@dataclass
class RunConfig:
    """Options shared by the commands."""

    command: str
    operator: str | None = None
    s: complex | None = None
    re: float = 0.5
    t_min: float | None = None
    t_max: float | None = None
    steps: int = 100
    N: int = DEFAULT_N
    n_direct: int = DEFAULT_N_DIRECT
    k_tail: int = DEFAULT_K_TAIL
    tol: float | None = None
    out: str | None = None
    format: str | None = None
    seed: int = 0
    jobs: int = 1
    k: int = 8
    suite: str | None = None
    x: str | None = None
    standard: bool = False

    def validate(self) -> "RunConfig":
        if self.N < 8:
            raise UsageError("--N must be at least 8")
        if self.n_direct < 1 or self.k_tail < 1:
            raise UsageError("--n-direct and --k-tail must be positive")
        if self.steps < 0:
            raise UsageError("--steps must be non-negative")
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")
        if self.operator not in OPERATOR_CHANNELS:
            raise UsageError(f"unknown operator {self.operator!r}")
        if self.command in ("find-zero",) and (self.t_min is None or self.t_max is None):
            raise UsageError("find-zero needs a bracket --t-min/--t-max")
        if self.command == "find-zero" and not self.t_min < self.t_max:
            raise UsageError("the bracket must satisfy t-min < t-max")
        if self.command == "eigs" and self.s is None:
            raise UsageError("eigs needs --s")
        if self.command == "digits" and self.x is None:
            raise UsageError("digits needs --x")
        return self

    @property
    def truncation(self) -> dict:
        return {"N": self.N, "n_direct": self.n_direct, "k_tail": self.k_tail}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _scan_row(args):
    t, sigma, channels, trunc = args
    from .transfer.spectral import channel_det

    row = [t]
    for ch in ("nicf", "mayer", "kcomp"):
        row.append(abs(channel_det(ch, complex(sigma, t), **trunc)) if ch in channels else None)
    return row


def scan_grid(cfg: RunConfig) -> np.ndarray:
    if cfg.t_min is None or cfg.t_max is None or cfg.steps == 0 or cfg.t_max < cfg.t_min:
        return np.zeros(0)
    return np.linspace(cfg.t_min, cfg.t_max, cfg.steps)


def run_scan(cfg: RunConfig) -> list[list]:
    """Rows ``(t, |det(1-L_nicf)|, |det(1-L)det(1+L)|, |det(1-K)|)`` along ``Re s = cfg.re``.

    Channels not selected by ``cfg.operator`` are left empty.  With
    ``jobs > 1`` the grid is split over processes; each row is computed
    independently, so the result does not depend on ``jobs``.
    """
    channels = OPERATOR_CHANNELS[cfg.operator]
    tasks = [(float(t), cfg.re, channels, cfg.truncation) for t in scan_grid(cfg)]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            return list(ex.map(_scan_row, tasks))
    return [_scan_row(a) for a in tasks]


def format_scan(rows, fmt: str = "csv") -> str:
    if fmt == "json":
        return json.dumps({"columns": list(SCAN_HEADER), "rows": rows})
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCAN_HEADER)
    for r in rows:
        w.writerow(["" if v is None else repr(float(v)) for v in r])
    return buf.getvalue()


def run_find_zero(cfg: RunConfig) -> dict:
    """Refined zero in the bracket for the selected channel, with the Mayer-channel zero for comparison."""
    from .transfer.spectral import find_zero

    primary = cfg.operator if cfg.operator in ("nicf", "mayer", "kcomp") else "nicf"
    z = find_zero(primary, cfg.t_min, cfg.t_max, cfg.re, **cfg.truncation)
    out = {"channel": primary, "t": z.t, "s": [z.s.real, z.s.imag], "det_abs": z.det_abs,
           "iterations": z.iterations, "truncation": cfg.truncation}
    if primary != "mayer":
        zm = find_zero("mayer", cfg.t_min, cfg.t_max, cfg.re, **cfg.truncation)
        out["mayer_t"] = zm.t
        out["agreement"] = abs(zm.t - z.t)
    return out


def run_eigs(cfg: RunConfig) -> dict:
    from .transfer.operators import build_operator
    from .transfer.spectral import eigenpairs

    kinds = {None: ("mayer", "nicf"), "both": ("mayer", "nicf")}.get(cfg.operator, (cfg.operator,))
    out = {"s": [cfg.s.real, cfg.s.imag], "truncation": cfg.truncation, "eigenvalues": {}}
    for kind in kinds:
        w, _ = eigenpairs(build_operator(kind, cfg.s, **cfg.truncation), cfg.k)
        out["eigenvalues"][kind] = [[z.real, z.imag] for z in w]
    return out


def run_correspond(cfg: RunConfig):
    from .correspond import DEFAULT_TOL, correspondence_report
    from .transfer.spectral import REFERENCE_ZEROS

    s = complex(0.5, REFERENCE_ZEROS[0]) if cfg.s is None else cfg.s
    return correspondence_report(s, cfg.N, tol=cfg.tol or DEFAULT_TOL)


def run_verify(cfg: RunConfig):
    import inspect

    from .verify import SUITES, run_verify_suite

    params = inspect.signature(SUITES[cfg.suite]).parameters
    kw = {}
    if cfg.s is not None and "s" in params:
        kw["s"] = cfg.s
    if cfg.tol is not None and "tol" in params:
        kw["tol"] = cfg.tol
    return run_verify_suite(cfg.suite, cfg.seed, **kw)


def run_digits(cfg: RunConfig) -> dict:
    from .transfer.dynamics import nicf_digits, nicf_reconstruct

    x = Fraction(cfg.x) if "/" in cfg.x else float(cfg.x)
    digits, terminated = [], False
    try:
        digits = nicf_digits(x, cfg.k, cfg.standard)
    except ZeroDivisionError:
        # rational input: collect the digits up to the end of the expansion
        y = x
        from .transfer.dynamics import nicf_digit, nicf_map
        while y != 0 and len(digits) < cfg.k:
            digits.append(nicf_digit(y, cfg.standard))
            y = nicf_map(y, cfg.standard)
        terminated = True
    return {"x": str(cfg.x), "digits": digits, "terminated": terminated,
            "reconstruction": nicf_reconstruct(digits) if digits else 0.0}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--config", help="JSON file with option values (flags override it)")
    g.add_argument("--operator", choices=["mayer", "nicf", "kcomp", "both"], default=argparse.SUPPRESS)
    g.add_argument("--s", type=parse_complex, default=argparse.SUPPRESS, help="spectral parameter RE+IMi")
    g.add_argument("--re", type=float, default=argparse.SUPPRESS, help="Re s of the scan line (default 0.5)")
    g.add_argument("--t-min", type=float, default=argparse.SUPPRESS)
    g.add_argument("--t-max", type=float, default=argparse.SUPPRESS)
    g.add_argument("--steps", type=int, default=argparse.SUPPRESS)
    g.add_argument("--N", type=int, default=argparse.SUPPRESS, help=f"collocation order (default {DEFAULT_N})")
    g.add_argument("--n-direct", type=int, default=argparse.SUPPRESS)
    g.add_argument("--k-tail", type=int, default=argparse.SUPPRESS)
    g.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    g.add_argument("--out", default=argparse.SUPPRESS, help="output path (default stdout)")
    g.add_argument("--format", choices=["csv", "json", "text"], default=argparse.SUPPRESS)
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    g.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="processes for scans")

    p = argparse.ArgumentParser(prog="mayernicf", description="Transfer operators of the Gauss and "
                                "nearest-integer continued fraction maps and their correspondence.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("scan", parents=[common], help="determinants along a vertical line (CSV)")
    sub.add_parser("find-zero", parents=[common], help="refine a determinant zero in a bracket")
    e = sub.add_parser("eigs", parents=[common], help="leading eigenvalues of the operators")
    e.add_argument("--k", type=int, default=argparse.SUPPRESS, help="number of eigenvalues")
    sub.add_parser("correspond", parents=[common], help="kernel dimensions and both chains at s")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITE_NAMES)
    d = sub.add_parser("digits", parents=[common], help="nearest-integer continued fraction digits")
    d.add_argument("--x", default=argparse.SUPPRESS, help="a number in [-1/2, 1/2] (p/q for exact)")
    d.add_argument("--k", type=int, default=argparse.SUPPRESS)
    d.add_argument("--standard", action="store_true", default=argparse.SUPPRESS,
                   help="ordinary floor instead of the modified one")
    return p


_CONFIG_KEYS = {f for f in RunConfig.__dataclass_fields__ if f != "command"}


def load_config(path: str) -> dict:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    data = {k.replace("-", "_"): v for k, v in data.items()}
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    if "s" in data and data["s"] is not None:
        data["s"] = parse_complex(data["s"])
    return data


def make_config(ns: argparse.Namespace) -> RunConfig:
    values = {}
    if getattr(ns, "config", None):
        values.update(load_config(ns.config))
    values.update({k: v for k, v in vars(ns).items() if k in _CONFIG_KEYS})
    return RunConfig(command=ns.command, **values).validate()


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, default=lambda o: [o.real, o.imag] if isinstance(o, complex) else str(o)) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = make_config(ns)
    except (UsageError, OSError, json.JSONDecodeError, TypeError, argparse.ArgumentTypeError) as exc:
        print(f"mayernicf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    from .averages import ResolutionError

    cmd = cfg.command
    if cmd == "scan":
        _emit(format_scan(run_scan(cfg), cfg.format or "csv"), cfg)
        return EXIT_OK
    if cmd == "find-zero":
        try:
            res = run_find_zero(cfg)
        except ResolutionError as exc:
            print(f"mayernicf: {exc}", file=sys.stderr)
            return EXIT_FAIL
        _emit(_json(res), cfg)
        return EXIT_OK
    if cmd == "eigs":
        res = run_eigs(cfg)
        if cfg.format == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["operator", "index", "re", "im", "abs"])
            for kind, vals in res["eigenvalues"].items():
                for i, (a, b) in enumerate(vals):
                    w.writerow([kind, i, repr(a), repr(b), repr(abs(complex(a, b)))])
            _emit(buf.getvalue(), cfg)
        else:
            _emit(_json(res), cfg)
        return EXIT_OK
    if cmd == "correspond":
        rep = run_correspond(cfg)
        _emit(_json(rep.to_dict()), cfg)
        return EXIT_OK if rep.passed else EXIT_FAIL
    if cmd == "verify":
        rep = run_verify(cfg)
        text = _json(rep.to_dict()) if cfg.format == "json" else "\n".join(rep.lines()) + "\n"
        _emit(text, cfg)
        return EXIT_OK if rep.passed else EXIT_FAIL
    if cmd == "digits":
        try:
            res = run_digits(cfg)
        except (ValueError, ZeroDivisionError) as exc:
            print(f"mayernicf: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        _emit(_json(res), cfg)
        return EXIT_OK
    return EXIT_USAGE  # pragma: no cover


__all__ = ["RunConfig", "UsageError", "parse_complex", "run_scan", "format_scan", "run_find_zero",
           "run_eigs", "run_correspond", "run_verify", "run_digits", "build_parser", "main",
           "SCAN_HEADER", "load_config", "main_exit"]


def main_exit() -> None:  # console-script entry point
    sys.exit(main())
