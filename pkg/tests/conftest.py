import numpy as np
import pytest

from mayernicf.transfer.spectral import REFERENCE_ZEROS, mayer_eigenfunction, nicf_eigenpair

# parity of the Mayer eigenfunction at the reference zeros (kernel of L - eps)
ZERO_PARITY = (-1, +1)


class ZeroState:
    """Eigenfunctions of both operators at one located zero on Re s = 1/2."""

    def __init__(self, index):
        self.index = index
        self.t = REFERENCE_ZEROS[index]
        self.s = complex(0.5, self.t)
        self.eps = ZERO_PARITY[index]
        self.f, self.lam = mayer_eigenfunction(self.s, self.eps)
        self.P = self.f.translated(-1)
        self.g1, self.g2, self.nicf_lam = nicf_eigenpair(self.s)
        self._round_trip = None
        self._upward = None

    def round_trip(self):
        from mayernicf.correspond import round_trip

        if self._round_trip is None:
            self._round_trip = round_trip(self.f, self.eps, self.s, reference_pair=(self.g1, self.g2))
        return self._round_trip

    def upward(self):
        from mayernicf.correspond import nicf_to_mayer

        if self._upward is None:
            self._upward = nicf_to_mayer((self.g1, self.g2), self.s)
        return self._upward


@pytest.fixture(scope="session")
def zeros():
    """Both reference zeros; chain runs are computed lazily and cached for the session."""
    return [ZeroState(0), ZeroState(1)]


@pytest.fixture(scope="session")
def zero1(zeros):
    return zeros[0]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def report_line(capsys):
    """Print one PASS/FAIL line straight to the terminal (visible without ``-s``)."""

    def emit(label, passed, message):
        with capsys.disabled():
            print(f"\n[{'PASS' if passed else 'FAIL'}] {label}: {message}")

    return emit
