"""The self-similar family of dense sets without piecewise syndetic structure.

Words over {0, 1}: ``A_0`` is ``k`` ones and ``A_{n+1} = A_n A_n 0``.  Each
word is a prefix of the next, so the words converge to one infinite 0/1
sequence; position ``i`` is 1 iff ``i`` belongs to the set.
"""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import InvalidFamilyError, OutOfRangeError, PreconditionError
from .ground_set import GroundSet, Interval

MAX_WORD_LEN = 1 << 31


@dataclass(frozen=True)
class FractalSpec:
    k: int
    n: int

    def __post_init__(self):
        if self.k < 1 or self.n < 0:
            raise OutOfRangeError(f"need k >= 1 and n >= 0, got k={self.k}, n={self.n}")
        if word_length(self.k, self.n) > MAX_WORD_LEN:
            raise OverflowError(f"A_{self.n} for k={self.k} is longer than {MAX_WORD_LEN}")


@dataclass(frozen=True)
class FractalStats:
    length: int
    ones: int
    trailing_zeros: int

    def to_dict(self):
        return {"length": self.length, "ones": self.ones, "trailing_zeros": self.trailing_zeros}


def word_length(k, n):
    return (1 << n) * (k + 1) - 1


def depth_for_length(k, length):
    """Smallest ``n`` with ``len(A_n) >= length``."""
    n = 0
    while word_length(k, n) < length:
        n += 1
    return n


def fractal_bits(k, n):
    spec = FractalSpec(k, n)
    word = np.ones(spec.k, dtype=np.uint8)
    for _ in range(spec.n):
        word = np.concatenate((word, word, np.zeros(1, dtype=np.uint8)))
    return word


def fractal_word(spec):
    return (fractal_bits(spec.k, spec.n) + ord("0")).tobytes().decode()


def fractal_set(k, length):
    """The length-``L`` prefix of the limit word as a set."""
    if length < 1:
        raise OutOfRangeError("length must be >= 1")
    n = depth_for_length(k, length)
    return GroundSet(fractal_bits(k, n)[:length].astype(bool))


def fractal_stats(spec):
    """Closed forms: length ``2^n (k+1) - 1``, ``2^n k`` ones, ``n`` trailing zeros."""
    return FractalStats(word_length(spec.k, spec.n), (1 << spec.n) * spec.k, spec.n)


def count_stats(bits):
    """The same three numbers counted directly on a word."""
    bits = np.asarray(bits)
    nz = np.flatnonzero(bits)
    trailing = bits.size if nz.size == 0 else bits.size - 1 - int(nz[-1])
    return FractalStats(int(bits.size), int(nz.size), trailing)


def verify_density_bound(k, length):
    """Exact minimum of ``|A ∩ [1, N]| / N`` over ``N <= L`` and the least
    ``N`` attaining it.  The claimed bound is ``k / (k + 1)``."""
    a = fractal_set(k, length)
    count, n = kernels.min_prefix_ratio(a.u8)
    return Fraction(int(count), int(n)), int(n)


def gap_window(k, n):
    """``len(B_n) + 2n`` where ``A_n = B_n 0^n``."""
    return word_length(k, n) - n + 2 * n


def verify_gap_structure(k, n, length):
    """Check that every window of length ``gap_window(k, n)`` in the
    ``L``-prefix contains ``n`` consecutive absences.

    Returns ``(ok, first_bad_window)``; the window is None when ok.
    """
    if n == 0:
        return True, None
    w = gap_window(k, n)
    if length < w:
        raise PreconditionError(f"prefix length {length} shorter than the window {w}")
    bits = fractal_set(k, length).bits
    zeros = (~bits).astype(np.int64)
    cs = np.concatenate(([0], np.cumsum(zeros)))
    # ends[e] marks that positions e-n+1..e (0-based) are all absent
    ends = (cs[n:] - cs[:-n]) == n
    # a window starting at s covers run ends s+n-1 .. s+w-1, i.e. ends[s : s+w-n+1]
    span = w - n + 1
    ce = np.concatenate(([0], np.cumsum(ends.astype(np.int64))))
    per_window = ce[span:] - ce[:-span]
    bad = np.flatnonzero(per_window == 0)
    if bad.size:
        return False, Interval(int(bad[0]), w)
    return True, None


def fill_intervals(intervals, k, window_len=None):
    """Plant a clipped copy of the limit word, with ``n`` blank positions on
    both sides, inside each interval ``(M, N)``.

    ``n`` is the least depth with ``len(A_n) >= N``; the block
    ``[M + 1 + n, M + N - n]`` receives the first ``N - 2n`` symbols.
    Intervals must be listed left to right, pairwise disjoint and strictly
    growing in length.
    """
    ivs = [iv if isinstance(iv, Interval) else Interval(*iv) for iv in intervals]
    for prev, cur in zip(ivs, ivs[1:]):
        if cur.start < prev.last:
            raise InvalidFamilyError(f"intervals {prev} and {cur} overlap or are out of order")
        if cur.length <= prev.length:
            raise InvalidFamilyError(f"interval lengths must grow: {prev.length} then {cur.length}")
    end = max((iv.last for iv in ivs), default=1)
    if window_len is None:
        window_len = end
    if window_len < end:
        raise OutOfRangeError(f"window {window_len} shorter than the last interval end {end}")
    out = np.zeros(window_len, dtype=bool)
    for iv in ivs:
        depth, width = planted_block(iv, k)
        if width > 0:
            word = fractal_bits(k, depth)[:width].astype(bool)
            lo = iv.start + depth
            out[lo:lo + width] = word
    return GroundSet(out)


def planted_block(iv, k):
    """``(n, width)`` for one interval of :func:`fill_intervals`."""
    depth = depth_for_length(k, iv.length)
    return depth, iv.length - 2 * depth
