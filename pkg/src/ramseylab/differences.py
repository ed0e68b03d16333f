"""Difference sets: disjoint shift families, shift covers, and a finite-window
detector for piecewise syndetic ``A - B``."""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import kernels
from .density import window_sup_density
from .errors import OutOfRangeError
from .ground_set import GroundSet, Interval, difference_set
from .structure import is_piecewise_syndetic

JIN_CAVEAT = (
    "finite-window detector: a positive result exhibits parameters (d, N) on this window only; "
    "a negative result proves nothing about the infinite sets"
)

EXACT_LIMIT = 64


@dataclass(frozen=True)
class ShiftFamily:
    base: GroundSet
    shifts: tuple
    verified_window: int

    @property
    def size(self):
        return len(self.shifts)

    def shifted(self, s):
        """``(C - s) ∩ [1, L']`` as a boolean array."""
        return self.base.bits[s:s + self.verified_window]


@dataclass(frozen=True)
class CoverResult:
    ok: bool
    uncovered: Optional[int]
    checked_up_to: int

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class SelfDifferenceReport:
    syndetic_at: Optional[int]
    trimmed_window: int
    max_gap: int


@dataclass(frozen=True)
class PwsReport:
    subject: GroundSet
    found: bool
    d: Optional[int] = None
    n_req: Optional[int] = None
    run: Optional[Interval] = None
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "found": self.found,
            "d": self.d,
            "N": self.n_req,
            "run": self.run.to_dict() if self.run else None,
            "subject_window_len": self.subject.window_len,
            "subject_count": self.subject.count(),
            "diagnostics": self.diagnostics,
            "caveat": JIN_CAVEAT,
        }


def _pairwise_disjoint(c, shifts, window):
    b = c.bits
    for i, s in enumerate(shifts):
        for t in shifts[i + 1:]:
            if np.any(b[s:s + window] & b[t:t + window]):
                return False
    return True


def max_disjoint_shift_family(c, shift_bound, exact=False):
    """Shifts ``0 <= n_1 < ... < n_k <= shift_bound`` with ``C - n_i`` pairwise
    disjoint on ``[1, L - shift_bound]``.

    Greedy (smallest admissible shift first) gives a family that cannot be
    enlarged.  ``exact=True`` searches for a family of maximum size instead;
    only for ``shift_bound < 64``.
    """
    if not 1 <= shift_bound < c.window_len:
        raise OutOfRangeError(f"shift_bound={shift_bound} outside [1, {c.window_len - 1}]")
    window = c.window_len - shift_bound
    b = c.bits
    cands = range(shift_bound + 1)
    clash = [[bool(np.any(b[s:s + window] & b[t:t + window])) for t in cands] for s in cands]
    if not exact:
        chosen = []
        for s in cands:
            if not any(clash[s][t] for t in chosen):
                chosen.append(s)
        return ShiftFamily(c, tuple(chosen), window)
    if shift_bound >= EXACT_LIMIT:
        raise OutOfRangeError(f"exact search limited to shift_bound < {EXACT_LIMIT}")
    return ShiftFamily(c, tuple(_max_independent(clash)), window)


def _max_independent(clash):
    """Largest set of mutually non-clashing indices; ties go to the
    lexicographically first set."""
    n = len(clash)
    masks = [sum(1 << t for t in range(n) if clash[s][t] and t != s) for s in range(n)]
    # a shift whose set meets itself (any nonempty C) is still allowed alone
    best = []

    def rec(i, allowed, chosen):
        nonlocal best
        if len(chosen) + bin(allowed >> i).count("1") <= len(best):
            return
        if i == n:
            best = list(chosen)
            return
        if allowed >> i & 1:
            chosen.append(i)
            rec(i + 1, allowed & ~masks[i], chosen)
            chosen.pop()
        rec(i + 1, allowed & ~(1 << i), chosen)

    rec(0, (1 << n) - 1, [])
    return best


def shift_cover(c, family, margin=0):
    """Check that every ``m`` in ``[1, L - max shift - margin]`` has ``C - m``
    meeting some ``C - n_i`` (i.e. ``m - n_i`` is a difference of two
    members of ``C``)."""
    m_end = c.window_len - max(family.shifts) - margin
    if m_end < 1:
        raise OutOfRangeError("trimmed cover window is empty")
    shifts = np.asarray(family.shifts, dtype=np.int64)
    m = kernels.first_uncovered(c.u8, shifts, m_end)
    if m < 0:
        return CoverResult(True, None, m_end)
    return CoverResult(False, int(m), m_end)


def cover_witness(c, family, m):
    """``(x, n_i)`` with ``x + m`` and ``x + n_i`` both in ``C``, or None."""
    b = c.bits
    for s in family.shifts:
        top = c.window_len - max(m, s)
        if top <= 0:
            continue
        hit = np.flatnonzero(b[m:m + top] & b[s:s + top])
        if hit.size:
            return int(hit[0]) + 1, s
    return None


def self_difference_report(c, d_max, trim=None):
    """Least ``d <= d_max`` at which ``C - C`` is syndetic on ``[1, trim]``.

    Large differences are seen by few pairs on a finite window, so only the
    first ``trim`` integers (default ``L // 2``) are examined.
    """
    if trim is None:
        trim = max(1, c.window_len // 2)
    diffs = difference_set(c, c).truncate(trim)
    gap, _ = kernels.longest_run(diffs.u8, 0)
    need = int(gap) + 1
    return SelfDifferenceReport(need if need <= d_max and need <= trim else None, trim, int(gap))


def jin_check(a, b, d_max, n_req, density_n=None):
    """Search the least ``d <= d_max`` with ``A - B`` piecewise syndetic at
    ``(d, n_req)`` on the window."""
    diffs = difference_set(a, b)
    if density_n is None:
        density_n = min(a.window_len, 100)
    da = window_sup_density(a, density_n)
    db = window_sup_density(b, density_n)
    diag = {
        "density_N": density_n,
        "density_a": [da.value.numerator, da.value.denominator],
        "density_b": [db.value.numerator, db.value.denominator],
        "density_product": _pair(da.value * db.value),
    }
    for d in range(1, d_max + 1):
        if d + n_req > diffs.window_len:
            break
        v = is_piecewise_syndetic(diffs, d, n_req)
        if v:
            return PwsReport(diffs, True, d, n_req, v.witness, diag)
    return PwsReport(diffs, False, None, n_req, None, diag)


def _pair(q: Fraction):
    return [q.numerator, q.denominator]
