"""Filters and ultrafilters on a finite universe ``[1, m]``.

Subsets are bitmasks (bit ``i - 1`` for element ``i``); the subset order used
for every enumeration is ascending integer value.  On a finite universe
every filter is principal, so the only ultrafilters are the point
ultrafilters; this module never pretends otherwise.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from .errors import EmptyIntersectionError, InvalidFamilyError, OutOfRangeError, PreconditionError

MAX_UNIVERSE = 16
MAX_PARTITION_UNIVERSE = 12

AXIOMS = {
    0: "nonempty family",
    1: "empty set excluded",
    2: "upward closure",
    3: "intersection closure",
    4: "dichotomy",
}


@dataclass(frozen=True)
class Universe:
    size: int

    def __post_init__(self):
        if not 1 <= self.size <= MAX_UNIVERSE:
            raise OutOfRangeError(f"universe size must lie in [1, {MAX_UNIVERSE}], got {self.size}")

    @property
    def full(self):
        return (1 << self.size) - 1

    def subsets(self):
        return range(1 << self.size)

    def mask(self, elements):
        out = 0
        for x in elements:
            if not 1 <= x <= self.size:
                raise OutOfRangeError(f"element {x} outside [1, {self.size}]")
            out |= 1 << (x - 1)
        return out


def elements(mask):
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class SetFamily:
    universe: Universe
    members: frozenset

    @classmethod
    def from_lists(cls, size, lists):
        u = Universe(size)
        masks = [u.mask(s) for s in lists]
        if len(set(masks)) != len(masks):
            raise InvalidFamilyError("family lists a subset twice")
        return cls(u, frozenset(masks))

    def __contains__(self, mask):
        return mask in self.members

    def __len__(self):
        return len(self.members)

    def sorted_members(self):
        return sorted(self.members)

    def as_lists(self):
        return [elements(s) for s in self.sorted_members()]


@dataclass(frozen=True)
class SetPredicate:
    """A named total predicate on the subsets of a universe."""

    name: str
    universe: Universe
    fn: Callable[[int], bool]

    def __call__(self, mask):
        return bool(self.fn(mask))


@dataclass(frozen=True)
class Check:
    """Outcome of an axiom scan.  ``axiom`` numbers the violated rule (see
    ``AXIOMS`` for filters; the three construction conditions for
    :func:`check_superfilter`)."""

    ok: bool
    axiom: Optional[int] = None
    witness: tuple = ()
    reason: str = ""

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {
            "ok": self.ok,
            "rule": self.axiom,
            "reason": self.reason,
            "witness": [elements(w) if isinstance(w, int) else w for w in self.witness],
        }


def principal_filter(universe, mask):
    if mask == 0:
        raise InvalidFamilyError("the principal filter of the empty set contains the empty set")
    return SetFamily(universe, frozenset(s for s in universe.subsets() if s & mask == mask))


def principal_ultrafilter(universe, x):
    return principal_filter(universe, universe.mask([x]))


def family_core(f):
    """Intersection of all members (the full universe for an empty family)."""
    core = f.universe.full
    for s in f.members:
        core &= s
    return core


def is_filter(f):
    """Check the filter axioms in the order nonempty, empty set, upward
    closure, intersection; report the first violation (lexicographically
    least sets within an axiom)."""
    if not f.members:
        return Check(False, 0, (), "family is empty")
    if 0 in f.members:
        return Check(False, 1, (0,), "contains the empty set")
    u = f.universe
    for s in f.sorted_members():
        for i in range(u.size):
            t = s | (1 << i)
            if t not in f.members:
                return Check(False, 2, (s, t), "superset missing")
    # upward closed: intersection closed iff the core is a member
    if family_core(f) not in f.members:
        ms = f.sorted_members()
        for i, s in enumerate(ms):
            for t in ms[i + 1:]:
                if s & t not in f.members:
                    return Check(False, 3, (s, t), "intersection missing")
    return Check(True)


def is_ultrafilter(f):
    c = is_filter(f)
    if not c:
        return c
    u = f.universe
    for s in u.subsets():
        if s not in f.members and (u.full ^ s) not in f.members:
            return Check(False, 4, (s,), "neither the set nor its complement is a member")
    return Check(True)


def is_principal(f):
    """Whether ``f`` equals the principal filter of its core."""
    core = family_core(f)
    return core != 0 and f.members == principal_filter(f.universe, core).members


def generate_filter(generators, universe):
    """Upward closure of all finite intersections of the generators."""
    gens = [universe.mask(g) if not isinstance(g, int) else g for g in generators]
    if not gens:
        return SetFamily(universe, frozenset([universe.full]))
    core = universe.full
    used = []
    for g in gens:
        core &= g
        used.append(g)
        if core == 0:
            raise EmptyIntersectionError(
                f"generators {[elements(x) for x in _culprits(used)]} have empty intersection",
                [elements(x) for x in _culprits(used)],
            )
    return principal_filter(universe, core)


def _culprits(gens):
    """Shrink an empty-intersection prefix to a minimal subfamily."""
    keep = list(gens)
    i = 0
    while i < len(keep):
        trial = keep[:i] + keep[i + 1:]
        core = -1
        for g in trial:
            core &= g
        if trial and core == 0:
            keep = trial
        else:
            i += 1
    return keep


def check_superfilter(phi, f):
    """Conditions for ``phi`` to drive the ultrafilter construction:
    ``phi`` holds on ``f``, is monotone, and survives splitting a set in two."""
    u = f.universe
    if u.size > MAX_PARTITION_UNIVERSE:
        raise OutOfRangeError(f"partition-stability scan limited to m <= {MAX_PARTITION_UNIVERSE}")
    table = [phi(s) for s in u.subsets()]
    for s in f.sorted_members():
        if not table[s]:
            return Check(False, 1, (s,), "predicate false on a member of the filter")
    for s in u.subsets():
        if table[s]:
            for i in range(u.size):
                t = s | (1 << i)
                if not table[t]:
                    return Check(False, 2, (s, t), "predicate not monotone")
    for s in u.subsets():
        if not table[s]:
            continue
        # all splits s = a ⊎ (s - a); submask enumeration
        a = s
        while True:
            if not table[a] and not table[s ^ a]:
                return Check(False, 3, (s, a, s ^ a), "predicate destroyed by a partition")
            if a == 0:
                break
            a = (a - 1) & s
    return Check(True)


def extend_ultrafilter(f, phi, check=True):
    """An ultrafilter containing ``f`` on all of whose members ``phi`` holds.

    Subsets are visited in ascending order; an undecided ``A`` is adjoined
    when the filter it generates stays clear of the empty set and
    ``phi``-good, otherwise its complement is adjoined.
    """
    if check:
        c = check_superfilter(phi, f)
        if not c:
            raise PreconditionError(f"predicate {phi.name!r} is not a superfilter for this filter: {c.reason}")
    u = f.universe
    core = family_core(f)
    if core == 0:
        raise PreconditionError("input family is not a filter")
    for s in u.subsets():
        if core & s == core or core & (u.full ^ s) == core:
            continue  # s or its complement already a member
        if _good(u, core & s, phi):
            core &= s
        else:
            comp = core & (u.full ^ s)
            if not _good(u, comp, phi):
                raise PreconditionError(f"neither {elements(s)} nor its complement can be adjoined")
            core = comp
    p = principal_filter(u, core)
    if not f.members <= p.members:
        raise PreconditionError("constructed ultrafilter does not contain the input filter")
    return p


def _good(u, core, phi):
    """Whether the principal filter of ``core`` avoids ∅ and satisfies ``phi``."""
    if core == 0:
        return False
    rest = u.full ^ core
    # every superset of core: core | (submask of rest)
    sub = rest
    while True:
        if not phi(core | sub):
            return False
        if sub == 0:
            return True
        sub = (sub - 1) & rest


# --- predicates ------------------------------------------------------------

def nonempty(u):
    return SetPredicate("nonempty", u, lambda s: s != 0)


def meets(u, target):
    t = target if isinstance(target, int) else u.mask(target)
    return SetPredicate(f"meets:{elements(t)}", u, lambda s: s & t != 0)


def min_size(u, k):
    return SetPredicate(f"min-size:{k}", u, lambda s: bin(s).count("1") >= k)


def contains_some(u, family):
    masks = [g if isinstance(g, int) else u.mask(g) for g in family]
    return SetPredicate("contains-some", u, lambda s: any(s & g == g for g in masks))


def partition_regular_within(u, family):
    """``phi(A)``: every partition of ``A`` has a part containing a member of
    ``family``; decided by enumerating the partitions of ``A``."""
    masks = tuple(g if isinstance(g, int) else u.mask(g) for g in family)

    @lru_cache(maxsize=None)
    def fn(s):
        for blocks in _partitions(elements(s)):
            if not any(any(b & g == g for g in masks) for b in blocks):
                return False
        return bool(s)

    return SetPredicate("partition-regular-within", u, fn)


def _rgs(n):
    """Restricted growth strings of length n (set partitions of n labels)."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i, top):
        if i == n:
            yield tuple(a)
            return
        for v in range(top + 2):
            a[i] = v
            yield from rec(i + 1, max(top, v))

    a[0] = 0
    yield from rec(1, 0)


def _partitions(elems, coarse_first=False):
    strings = list(_rgs(len(elems)))
    if coarse_first:
        strings.sort(key=lambda g: (max(g, default=-1), g))
    for g in strings:
        blocks = [0] * (max(g, default=-1) + 1)
        for x, lab in zip(elems, g):
            blocks[lab] |= 1 << (x - 1)
        yield blocks


@dataclass(frozen=True)
class PartitionRegularity:
    regular: bool
    ultrafilter: Optional[SetFamily] = None
    refuting_partition: Optional[list] = None

    def __bool__(self):
        return self.regular


def partition_regular(family, universe):
    """Brute force over all partitions of the universe, coarsest first.

    On success an ultrafilter witness is built with the predicate "every
    partition of A leaves a part containing a member of the family".
    """
    masks = [g if isinstance(g, int) else universe.mask(g) for g in family]
    if any(g == 0 for g in masks):
        raise InvalidFamilyError("the empty set cannot be an interesting set")
    if not masks:
        raise InvalidFamilyError("family must be nonempty")
    if universe.size > MAX_PARTITION_UNIVERSE:
        raise OutOfRangeError(f"partition enumeration limited to m <= {MAX_PARTITION_UNIVERSE}")
    for blocks in _partitions(list(range(1, universe.size + 1)), coarse_first=True):
        if not any(any(b & g == g for g in masks) for b in blocks):
            return PartitionRegularity(False, None, [elements(b) for b in blocks])
    phi = partition_regular_within(universe, masks)
    trivial = SetFamily(universe, frozenset([universe.full]))
    return PartitionRegularity(True, extend_ultrafilter(trivial, phi))


def singleton_criterion(family):
    """Closed form on finite universes: regular iff the family has a singleton."""
    return any(g != 0 and g & (g - 1) == 0 for g in family)


def parse_predicate(u, text):
    """Build a predicate from the CLI menu: ``nonempty``, ``meets:<set>``,
    ``contains-some:<family>``, ``min-size:<k>``, ``partition-regular:<family>``
    (sets and families as JSON)."""
    import json

    name, _, arg = text.partition(":")
    try:
        if name == "nonempty" and not arg:
            return nonempty(u)
        if name == "meets":
            return meets(u, json.loads(arg))
        if name == "min-size":
            return min_size(u, int(arg))
        if name == "contains-some":
            return contains_some(u, json.loads(arg))
        if name == "partition-regular":
            return partition_regular_within(u, json.loads(arg))
    except (ValueError, TypeError) as exc:
        raise InvalidFamilyError(f"bad predicate argument {arg!r}: {exc}") from None
    raise InvalidFamilyError(f"unknown predicate {text!r}")
