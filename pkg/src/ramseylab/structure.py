"""Syndetic, thick and piecewise syndetic sets on a finite window.

Finite versions of the definitions, all quantifying only over windows that
lie completely inside ``[1, L]``:

* syndetic at ``d``: every length-``d`` window meets ``A``;
* thick at ``N``: ``A`` contains ``N`` consecutive integers;
* piecewise syndetic at ``(d, N)``: the union of the shifts ``A - 1, ...,
  A - d`` (on its common window ``[1, L - d]``) contains ``N`` consecutive
  integers.
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .errors import NotPiecewiseSyndeticError, OutOfRangeError
from .ground_set import GroundSet, Interval


@dataclass(frozen=True)
class Verdict:
    """A yes/no answer plus the interval that explains it.

    For ``is_syndetic`` the witness is an empty window (on failure); for
    ``is_thick`` / ``is_piecewise_syndetic`` it is the leftmost run (on
    success).
    """

    ok: bool
    witness: Optional[Interval] = None
    d: Optional[int] = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class StructureReport:
    max_gap: int
    leading_gap: int
    longest_run: int
    window_len: int
    pws_witness: Optional[Verdict] = None
    checks: dict = field(default_factory=dict)

    def to_dict(self):
        out = {
            "window_len": self.window_len,
            "max_gap": self.max_gap,
            "leading_gap": self.leading_gap,
            "longest_run": self.longest_run,
            "pws_witness": None,
        }
        if self.pws_witness is not None and self.pws_witness.ok:
            out["pws_witness"] = {"d": self.pws_witness.d, "run": self.pws_witness.witness.to_dict()}
        out.update(self.checks)
        return out


@dataclass(frozen=True)
class PwsDecomposition:
    syndetic: GroundSet
    thick: GroundSet
    syndetic_gap: int
    run: Interval


def _check_param(name, value, lo, hi):
    if not lo <= value <= hi:
        raise OutOfRangeError(f"{name}={value} outside [{lo}, {hi}]")


def is_syndetic(a, d):
    _check_param("d", d, 1, a.window_len)
    start = kernels.first_run(a.u8, 0, d)
    if start < 0:
        return Verdict(True, d=d)
    return Verdict(False, Interval(int(start), d), d=d)


def is_thick(a, n):
    _check_param("N", n, 1, a.window_len)
    start = kernels.first_run(a.u8, 1, n)
    if start < 0:
        return Verdict(False)
    return Verdict(True, Interval(int(start), n))


def union_of_shifts(a, shifts):
    """``∪ (A - s)`` over ``shifts``, on the common window ``[1, L - max(shifts)]``."""
    top = max(shifts)
    if top >= a.window_len:
        raise OutOfRangeError(f"shift {top} leaves no window (window_len={a.window_len})")
    n = a.window_len - top
    acc = np.zeros(n, dtype=bool)
    for s in shifts:
        acc |= a.bits[s:s + n]
    return GroundSet(acc)


def intersection_of_shifts(a, shifts):
    top = max(shifts)
    if top >= a.window_len:
        raise OutOfRangeError(f"shift {top} leaves no window (window_len={a.window_len})")
    n = a.window_len - top
    acc = np.ones(n, dtype=bool)
    for s in shifts:
        acc &= a.bits[s:s + n]
    return GroundSet(acc)


def is_piecewise_syndetic(a, d, n):
    if d < 1 or n < 1 or d + n > a.window_len:
        raise OutOfRangeError(f"need d, N >= 1 and d + N <= {a.window_len}, got d={d}, N={n}")
    u = union_of_shifts(a, range(1, d + 1))
    start = kernels.first_run(u.u8, 1, n)
    if start < 0:
        return Verdict(False, d=d)
    return Verdict(True, Interval(int(start), n), d=d)


def cover_by_shifts(a, d):
    """Whether ``A, A - 1, ..., A - (d-1)`` cover ``[1, L - d + 1]``.

    Equivalent to :func:`is_syndetic` at the same ``d``; on failure the
    witness is the first uncovered integer ``x`` as the interval ``[x, x]``.
    """
    _check_param("d", d, 1, a.window_len)
    u = union_of_shifts(a, range(d))
    start = kernels.first_run(u.u8, 0, 1)
    if start < 0:
        return Verdict(True, d=d)
    return Verdict(False, Interval(int(start), 1), d=d)


def decompose_pws(a, d, n):
    """Split a piecewise syndetic ``A`` as ``S ∩ T`` with ``T`` thick at ``N``
    and ``S`` syndetic at ``d``.

    ``T`` is ``A`` plus the stretch of integers on which the shift union is
    solid, and ``S = A ∪ (T^c)``.  A set that is already syndetic at ``d``
    splits as ``S = A``, ``T`` = whole window.
    """
    if d <= a.window_len and is_syndetic(a, d):
        return PwsDecomposition(a, GroundSet.full(a.window_len), d, Interval(0, a.window_len))
    v = is_piecewise_syndetic(a, d, n)
    if not v:
        raise NotPiecewiseSyndeticError(f"no run of length {n} in the union of {d} shifts")
    run = v.witness
    # union solid on [s+1, s+N]  =>  every length-d window inside [s+2, s+N+d] meets A
    block = Interval(run.start + 1, n + d - 1)
    t = a.bits.copy()
    t[block.start:block.last] = True
    thick = GroundSet(t)
    syndetic = GroundSet(a.bits | ~t)
    return PwsDecomposition(syndetic, thick, d, block)


def gap_profile(a):
    """``(max_gap, leading_gap, longest_run)``.

    ``max_gap`` ignores a run of absences touching the left window edge; that
    leading run is reported separately.
    """
    starts, lengths = kernels.run_table(a.bits, False)
    leading = 0
    if starts.size and starts[0] == 0:
        leading = int(lengths[0])
        lengths = lengths[1:]
    max_gap = int(lengths.max()) if lengths.size else 0
    longest_run, _ = kernels.longest_run(a.u8, 1)
    return max_gap, leading, int(longest_run)


def classify(a, syndetic=None, thick=None, pws=None):
    """Gap statistics plus whichever checks were requested."""
    max_gap, leading, longest = gap_profile(a)
    checks = {}
    pws_verdict = None
    if syndetic is not None:
        v = is_syndetic(a, syndetic)
        checks["syndetic"] = v.ok
        checks["empty_window"] = v.witness.to_dict() if v.witness else None
    if thick is not None:
        v = is_thick(a, thick)
        checks["thick"] = v.ok
        checks["thick_run"] = v.witness.to_dict() if v.witness else None
    if pws is not None:
        d, n = pws
        pws_verdict = is_piecewise_syndetic(a, d, n)
        checks["pws"] = pws_verdict.ok
    return StructureReport(max_gap, leading, longest, a.window_len, pws_verdict, checks)
