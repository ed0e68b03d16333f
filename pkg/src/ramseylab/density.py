"""Exact windowed densities.

Upper Banach density is a limit and cannot be read off a finite window, so
everything here is per window length ``N`` and exact (``fractions.Fraction``).
"""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import OutOfRangeError
from .ground_set import Interval


@dataclass(frozen=True)
class DensityReport:
    value: Fraction
    witness: Interval
    window_len_used: int

    def to_dict(self):
        return {
            "N": self.window_len_used,
            "value_num": self.value.numerator,
            "value_den": self.value.denominator,
            "witness_start": self.witness.start,
        }


def _check_n(a, n):
    if not 1 <= n <= a.window_len:
        raise OutOfRangeError(f"N={n} outside [1, {a.window_len}]")


def prefix_density(a, n):
    """``|A ∩ [1, N]| / N``"""
    _check_n(a, n)
    return Fraction(int(np.count_nonzero(a.bits[:n])), n)


def window_sup_density(a, n):
    """Largest ``|A ∩ [M+1, M+N]| / N`` over windows inside [1, L]; the
    smallest ``M`` wins ties."""
    _check_n(a, n)
    count, start = kernels.max_window_count(a.u8, n)
    return DensityReport(Fraction(int(count), n), Interval(int(start), n), n)


def density_profile(a, ns):
    for n in ns:
        _check_n(a, n)
    return [window_sup_density(a, n) for n in ns]


def window_average(f, w):
    """Mean of the integer sequence ``f`` (indexed from 1) over the window ``w``."""
    f = np.asarray(f)
    if f.ndim != 1 or not (f.dtype == bool or np.issubdtype(f.dtype, np.integer)):
        raise TypeError("window_average expects a 1-d integer sequence")
    w.check_inside(f.size)
    return Fraction(int(f[w.start:w.last].sum(dtype=np.int64)), w.length)
