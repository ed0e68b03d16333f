"""Finite subsets of [1, L] and the set arithmetic the rest of the package
is built on.

Integers start at 1.  A :class:`GroundSet` is an immutable boolean vector
where index ``i - 1`` holds the membership of ``i``; all Boolean algebra is
vectorised over that array.
"""
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .errors import DimensionError, EmptyWindowError, FormatError, InvalidSequenceError, OutOfRangeError

OPS = ("union", "intersect", "complement", "minus")


@dataclass(frozen=True)
class Interval:
    """The window ``[start + 1, start + length]``."""

    start: int
    length: int

    def __post_init__(self):
        if self.start < 0:
            raise OutOfRangeError(f"interval start must be >= 0, got {self.start}")
        if self.length < 1:
            raise OutOfRangeError(f"interval length must be >= 1, got {self.length}")

    @property
    def first(self):
        return self.start + 1

    @property
    def last(self):
        return self.start + self.length

    def check_inside(self, window_len):
        if self.last > window_len:
            raise OutOfRangeError(f"interval [{self.first}, {self.last}] exceeds window [1, {window_len}]")

    def to_dict(self):
        return {"start": self.start, "length": self.length, "first": self.first, "last": self.last}


class GroundSet:
    __slots__ = ("_bits",)

    def __init__(self, bits):
        arr = np.array(bits, dtype=bool).reshape(-1)
        if arr.size < 1:
            raise EmptyWindowError("a ground set needs window_len >= 1")
        arr.flags.writeable = False
        self._bits = arr

    @classmethod
    def from_members(cls, members, window_len):
        if window_len < 1:
            raise EmptyWindowError("a ground set needs window_len >= 1")
        arr = np.zeros(window_len, dtype=bool)
        idx = np.asarray(list(members), dtype=np.int64)
        if idx.size:
            if idx.min() < 1 or idx.max() > window_len:
                raise OutOfRangeError(f"members must lie in [1, {window_len}]")
            arr[idx - 1] = True
        return cls(arr)

    @classmethod
    def from_word(cls, word):
        if not word or set(word) - {"0", "1"}:
            raise FormatError(f"not a 0/1 word: {word!r}")
        return cls(np.frombuffer(word.encode(), dtype=np.uint8) == ord("1"))

    @classmethod
    def from_predicate(cls, window_len, pred):
        return cls([bool(pred(i)) for i in range(1, window_len + 1)])

    @classmethod
    def full(cls, window_len):
        return cls(np.ones(window_len, dtype=bool))

    @classmethod
    def empty(cls, window_len):
        return cls(np.zeros(window_len, dtype=bool))

    @classmethod
    def multiples(cls, step, window_len, offset=0):
        """``{i in [1, L] : i = offset (mod step)}``"""
        arr = (np.arange(1, window_len + 1) - offset) % step == 0
        return cls(arr)

    @property
    def window_len(self):
        return self._bits.size

    @property
    def bits(self):
        return self._bits

    @property
    def u8(self):
        """uint8 view for the kernels."""
        return self._bits.view(np.uint8)

    def members(self):
        return (np.flatnonzero(self._bits) + 1).tolist()

    def count(self):
        return int(np.count_nonzero(self._bits))

    def word(self):
        return (self._bits.view(np.uint8) + ord("0")).tobytes().decode()

    def truncate(self, window_len):
        """Restriction to ``[1, window_len]``."""
        if not 1 <= window_len <= self.window_len:
            raise OutOfRangeError(f"cannot truncate window {self.window_len} to {window_len}")
        return GroundSet(self._bits[:window_len])

    def window(self, interval):
        interval.check_inside(self.window_len)
        return self._bits[interval.start:interval.last]

    def is_subset(self, other):
        _same_window(self, other)
        return not np.any(self._bits & ~other._bits)

    def __contains__(self, i):
        return 1 <= i <= self.window_len and bool(self._bits[i - 1])

    def __iter__(self):
        return iter(self.members())

    def __eq__(self, other):
        if not isinstance(other, GroundSet):
            return NotImplemented
        return self.window_len == other.window_len and np.array_equal(self._bits, other._bits)

    def __hash__(self):
        return hash((self.window_len, self._bits.tobytes()))

    def __and__(self, other):
        return boolean_combine(self, other, "intersect")

    def __or__(self, other):
        return boolean_combine(self, other, "union")

    def __sub__(self, other):
        return boolean_combine(self, other, "minus")

    def __invert__(self):
        return boolean_combine(self, None, "complement")

    def __repr__(self):
        if self.window_len <= 64:
            return f"GroundSet({self.word()!r})"
        return f"GroundSet(window_len={self.window_len}, count={self.count()})"


def _same_window(a, b):
    if a.window_len != b.window_len:
        raise DimensionError(f"window lengths differ: {a.window_len} != {b.window_len}")


def shift(a, n):
    """``A - n = {k : k + n in A}``, on the shrunken window ``[1, L - n]``."""
    if n < 0:
        raise OutOfRangeError(f"shift must be nonnegative, got {n}")
    if n >= a.window_len:
        raise EmptyWindowError(f"shift {n} leaves no window (window_len={a.window_len})")
    return GroundSet(a.bits[n:])


def boolean_combine(a, b, op):
    if op == "complement":
        return GroundSet(~a.bits)
    if op not in OPS:
        raise ValueError(f"unknown op {op!r}; expected one of {OPS}")
    _same_window(a, b)
    if op == "union":
        return GroundSet(a.bits | b.bits)
    if op == "intersect":
        return GroundSet(a.bits & b.bits)
    return GroundSet(a.bits & ~b.bits)


def difference_set(a, b):
    """Positive differences ``{a - b >= 1 : a in A, b in B}`` inside [1, L]."""
    _same_window(a, b)
    return GroundSet(kernels.positive_differences(a.u8, b.u8).astype(bool))


def sumset(a, b, clip_len):
    if clip_len < 1:
        raise EmptyWindowError("clip_len must be >= 1")
    out = np.zeros(clip_len, dtype=bool)
    conv = np.convolve(a.bits.astype(np.int64), b.bits.astype(np.int64))
    # conv[i + j] pairs the members i + 1 and j + 1, whose sum is i + j + 2
    sums = np.flatnonzero(conv) + 2
    sums = sums[sums <= clip_len]
    out[sums - 1] = True
    return GroundSet(out)


def finite_sums(seq, clip_len):
    """All nonempty subset sums of the strictly increasing ``seq`` up to clip_len."""
    seq = [int(x) for x in seq]
    if not seq:
        raise InvalidSequenceError("finite_sums needs at least one term")
    if seq[0] < 1:
        raise InvalidSequenceError(f"terms must be positive, got {seq[0]}")
    for x, y in zip(seq, seq[1:]):
        if y <= x:
            raise InvalidSequenceError(f"sequence not strictly increasing at {x}, {y}")
    if clip_len < 1:
        raise EmptyWindowError("clip_len must be >= 1")
    reach = np.zeros(clip_len + 1, dtype=bool)
    reach[0] = True
    for n in seq:
        if n <= clip_len:
            reach[n:] |= reach[:clip_len + 1 - n].copy()
    return GroundSet(reach[1:])


# --- text format ------------------------------------------------------------

def format_set_text(a, form="bits"):
    if form == "bits":
        body = f"bits={a.word()}"
    elif form == "list":
        body = "list=" + ",".join(map(str, a.members()))
    else:
        raise ValueError(f"unknown set text form {form!r}")
    return f"len={a.window_len}\n{body}\n"


def parse_set_text(text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) != 2:
        raise FormatError(f"expected a len= line and a bits=/list= line, got {len(lines)} lines")
    head, body = lines
    if not head.startswith("len="):
        raise FormatError(f"bad header token {head!r}")
    try:
        window_len = int(head[4:])
    except ValueError:
        raise FormatError(f"bad window length {head[4:]!r}") from None
    if window_len < 1:
        raise FormatError(f"bad window length {head[4:]!r}")
    if body.startswith("bits="):
        word = body[5:]
        if len(word) != window_len:
            raise FormatError(f"bits string has length {len(word)}, header says {window_len}")
        bad = next((i for i, ch in enumerate(word) if ch not in "01"), None)
        if bad is not None:
            raise FormatError(f"bad bit {word[bad]!r} at position {bad + 1}")
        return GroundSet.from_word(word)
    if body.startswith("list="):
        members = []
        for tok in filter(None, (t.strip() for t in body[5:].split(","))):
            try:
                members.append(int(tok))
            except ValueError:
                raise FormatError(f"bad member token {tok!r}") from None
            if not 1 <= members[-1] <= window_len:
                raise FormatError(f"member {tok!r} outside [1, {window_len}]")
        return GroundSet.from_members(members, window_len)
    raise FormatError(f"bad body token {body.split('=')[0]!r}")


def read_set_file(path):
    return parse_set_text(Path(path).read_text())


def write_set_file(path, a, form="bits"):
    Path(path).write_text(format_set_text(a, form))
