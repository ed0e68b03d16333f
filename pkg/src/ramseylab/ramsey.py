"""Monochromatic progressions, van der Waerden numbers and finite sums."""
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Optional

import numpy as np

from . import kernels
from .errors import FormatError, OutOfRangeError, PreconditionError, ResourceLimitError
from .ground_set import GroundSet, finite_sums, shift
from .structure import is_syndetic

ALPHABET = "RBGYOPVCMK"


@dataclass(frozen=True)
class APWitness:
    a: int
    b: int
    k: int
    color: Optional[int] = None

    def __post_init__(self):
        if self.a < 1 or self.b < 1 or self.k < 1:
            raise OutOfRangeError(f"progression needs a, b, k >= 1, got ({self.a}, {self.b}, {self.k})")

    def terms(self):
        return [self.a + j * self.b for j in range(self.k)]

    @property
    def last(self):
        return self.a + (self.k - 1) * self.b

    def to_dict(self):
        return {"a": self.a, "b": self.b, "k": self.k, "color": self.color}


class Coloring:
    """A total map ``[1, N] -> {1, ..., r}``."""

    __slots__ = ("_colors", "num_colors")

    def __init__(self, colors, num_colors=None):
        arr = np.array(colors, dtype=np.int8).reshape(-1)
        if num_colors is None:
            num_colors = int(arr.max()) if arr.size else 1
        if num_colors < 1:
            raise OutOfRangeError("need at least one colour")
        if arr.size and (arr.min() < 1 or arr.max() > num_colors):
            raise OutOfRangeError(f"colours must lie in [1, {num_colors}]")
        arr.flags.writeable = False
        self._colors = arr
        self.num_colors = int(num_colors)

    @classmethod
    def from_string(cls, text, num_colors=None):
        text = text.strip()
        if text.isdigit():
            vals = [int(ch) for ch in text]
        else:
            bad = [ch for ch in text if ch not in ALPHABET]
            if bad:
                raise FormatError(f"unknown colour symbol {bad[0]!r}")
            vals = [ALPHABET.index(ch) + 1 for ch in text]
        return cls(vals, num_colors if num_colors is not None else (max(vals) if vals else 1))

    @property
    def length(self):
        return self._colors.size

    @property
    def colors(self):
        return self._colors

    def __getitem__(self, i):
        """Colour of the integer ``i`` (1-based)."""
        if not 1 <= i <= self.length:
            raise IndexError(i)
        return int(self._colors[i - 1])

    def to_string(self):
        if self.num_colors > len(ALPHABET):
            raise FormatError(f"no symbol alphabet for {self.num_colors} colours")
        return "".join(ALPHABET[c - 1] for c in self._colors.tolist())

    def __eq__(self, other):
        if not isinstance(other, Coloring):
            return NotImplemented
        return self.num_colors == other.num_colors and np.array_equal(self._colors, other._colors)

    def __hash__(self):
        return hash((self.num_colors, self._colors.tobytes()))

    def __repr__(self):
        return f"Coloring({self.to_string()!r}, r={self.num_colors})"


def _is_mono_ap(c, w):
    if w.last > c.length:
        return False
    cols = {c[t] for t in w.terms()}
    return len(cols) == 1


def find_mono_ap(c, k):
    if k < 1:
        raise OutOfRangeError(f"k must be >= 1, got {k}")
    a, b = kernels.first_mono_ap(c.colors, k, -1)
    if a < 0:
        return None
    return APWitness(int(a) + 1, int(b), k, c[int(a) + 1])


def verify_certificate(c, k):
    """True iff ``c`` has no monochromatic k-AP, i.e. it shows W(k, r) > len(c)."""
    return find_mono_ap(c, k) is None


def find_ap_in_set(a, k):
    if k < 1:
        raise OutOfRangeError(f"k must be >= 1, got {k}")
    first, b = kernels.first_mono_ap(a.u8.astype(np.int8), k, 1)
    if first < 0:
        return None
    return APWitness(int(first) + 1, int(b), k)


def mono_ap_in_partition_of_ap(p, part, k):
    """Pull a 2-partition of the progression ``p`` back to ``[1, p.k]``, find a
    monochromatic k-AP there and push it forward through ``j -> a + (j-1) b``."""
    part = Coloring(part, 2) if not isinstance(part, Coloring) else part
    if part.length != p.k:
        raise OutOfRangeError(f"partition covers {part.length} positions, progression has {p.k}")
    w = find_mono_ap(part, k)
    if w is None:
        return None
    return APWitness(p.a + (w.a - 1) * p.b, w.b * p.b, k, w.color)


# --- van der Waerden numbers ----------------------------------------------

@dataclass
class VdwResult:
    k: int
    r: int
    cap: int
    outcome: str  # "found" or "exceeded_cap"
    W: Optional[int]
    certificate: Coloring
    nodes: int
    elapsed: float = field(default=0.0, compare=False)

    @property
    def found(self):
        return self.outcome == "found"

    def to_dict(self, timings=False):
        out = {
            "k": self.k,
            "r": self.r,
            "cap": self.cap,
            "outcome": self.outcome,
            "W": self.W,
            "certificate": self.certificate.to_string(),
            "certificate_length": self.certificate.length,
            "nodes": self.nodes,
        }
        if timings:
            out["elapsed_s"] = self.elapsed
        return out


def _good_prefixes(k, r, depth):
    """All canonical colourings of length ``depth`` without a mono k-AP, in
    lexicographic order, plus the count of accepted nodes at depth <= depth."""
    out = []
    nodes = 0
    buf = np.zeros(max(depth, 1), dtype=np.int8)

    def rec(pos, maxused):
        nonlocal nodes
        if pos == depth:
            out.append(buf[:depth].copy())
            return
        for c in range(1, min(r, maxused + 1) + 1):
            buf[pos] = c
            if not kernels.mono_ap_ends_at(buf, pos, k, c):
                nodes += 1
                rec(pos + 1, max(maxused, c))
        buf[pos] = 0

    rec(0, 0)
    return out, nodes


def vdw_number(k, r, cap, node_budget=0, threads=1, split_depth=None, time_budget=None):
    """Least ``W`` such that every r-colouring of ``[1, W]`` has a mono k-AP.

    Exhaustive DFS over colourings without a monochromatic k-AP.  The search
    tracks the longest such colouring; if it reaches ``cap`` the result is
    ``exceeded_cap`` with that colouring as certificate.  Otherwise the tree
    is exhausted, which refutes every colouring of length ``W = best + 1``.

    With ``threads > 1`` the tree is cut at ``split_depth`` and the subtrees
    are searched concurrently; the certificate is the lexicographically least
    colouring of maximal length either way, so results do not depend on the
    number of workers.

    Raises ResourceLimitError (with the best colouring so far) when the node
    or time budget runs out.
    """
    if k < 1 or r < 1 or cap < 1:
        raise OutOfRangeError(f"need k, r, cap >= 1, got k={k}, r={r}, cap={cap}")
    t0 = time.perf_counter()
    if threads <= 1:
        buf = np.zeros(cap + 1, dtype=np.int8)
        best_len, best, nodes, status = kernels.vdw_subtree(k, r, buf, 0, cap, node_budget)
        results = [(best_len, best, nodes, status)]
        prefix_nodes = 0
    else:
        depth = split_depth if split_depth is not None else min(cap, 12)
        prefixes, prefix_nodes = _good_prefixes(k, r, depth)
        if not prefixes:
            return vdw_number(k, r, cap, node_budget, 1)
        results = _run_subtrees(k, r, cap, prefixes, node_budget, threads, t0, time_budget)
    elapsed = time.perf_counter() - t0
    nodes = prefix_nodes + sum(res[2] for res in results)
    best_len = max(res[0] for res in results)
    # first subtree (lexicographic order) reaching the maximal depth
    best = next(res[1] for res in results if res[0] == best_len)
    cert = Coloring(best[:best_len], r)
    if any(res[3] == kernels.STATUS_BUDGET for res in results):
        raise ResourceLimitError(f"node budget {node_budget} exhausted at length {best_len}", cert)
    if best_len >= cap:
        return VdwResult(k, r, cap, "exceeded_cap", None, cert, nodes, elapsed)
    if time_budget is not None and elapsed > time_budget:
        raise ResourceLimitError(f"time budget {time_budget}s exhausted", cert)
    return VdwResult(k, r, cap, "found", best_len + 1, cert, nodes, elapsed)


def _run_subtrees(k, r, cap, prefixes, node_budget, threads, t0, time_budget):
    def task(prefix):
        if time_budget is not None and time.perf_counter() - t0 > time_budget:
            return (len(prefix), prefix, 0, kernels.STATUS_BUDGET)
        buf = np.zeros(cap + 1, dtype=np.int8)
        buf[:prefix.size] = prefix
        return kernels.vdw_subtree(k, r, buf, prefix.size, cap, node_budget)

    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(task, prefixes))


@lru_cache(maxsize=None)
def vdw_value(k, r, cap=200):
    """Cached ``W(k, r)``; raises if the cap is exceeded."""
    res = vdw_number(k, r, cap)
    if not res.found:
        raise ResourceLimitError(f"W({k}, {r}) exceeds cap {cap}", res.certificate)
    return res.W


def write_certificate(path, result):
    Path(path).write_text(f"r={result.r} k={result.k}\n{result.certificate.to_string()}\n")


def read_certificate(path):
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty certificate file")
    fields = {}
    for tok in lines[0].split():
        key, _, val = tok.partition("=")
        if key not in ("r", "k") or not val.isdigit():
            raise FormatError(f"bad certificate header token {tok!r}")
        fields[key] = int(val)
    if set(fields) != {"r", "k"}:
        raise FormatError("certificate header needs r= and k=")
    word = lines[1] if len(lines) > 1 else ""
    c = Coloring.from_string(word, fields["r"]) if word else Coloring([], fields["r"])
    return fields["k"], c


# --- syndetic sets contain progressions -----------------------------------

def syndetic_implies_ap(a, d, k, W=None):
    """A k-AP inside the syndetic set ``A``, found through a colouring.

    Each ``n`` in ``[1, W(k, d)]`` gets the least ``i`` in ``[1, d]`` with
    ``n + i`` in ``A``; a monochromatic k-AP in colour ``i`` moved up by
    ``i`` lies in ``A``.
    """
    if not is_syndetic(a, d):
        raise PreconditionError(f"set is not syndetic at d={d}")
    if W is None:
        W = vdw_value(k, d)
    if a.window_len < W + d:
        raise PreconditionError(f"window {a.window_len} shorter than W({k},{d}) + d = {W + d}")
    colors = np.zeros(W, dtype=np.int8)
    for i in range(d, 0, -1):
        hit = shift(a, i).bits[:W]
        colors[hit] = i
    if np.any(colors == 0):
        raise PreconditionError("colouring by shifts left a position uncoloured")
    w = find_mono_ap(Coloring(colors, d), k)
    if w is None:
        raise PreconditionError(f"no mono {k}-AP in [1, {W}]; W({k},{d}) is wrong")
    i = w.color
    return APWitness(w.a + i, w.b, k, None)


# --- monochromatic finite sums --------------------------------------------

def find_mono_fs(c, m, sum_cap):
    """Lexicographically first ``n_1 < ... < n_m`` whose finite-sums set is
    monochromatic and lies in ``[1, min(len(c), sum_cap)]``.

    Returns ``(seq, colour)`` or None.  A None says nothing about longer
    windows.
    """
    if m < 1:
        raise OutOfRangeError(f"m must be >= 1, got {m}")
    limit = min(c.length, sum_cap)
    seq = []

    def rec(sums, color, lo):
        j = len(seq)
        if j == m:
            return True
        remaining = m - j
        total = sum(seq)
        n = lo
        # the remaining terms are at least n, n+1, ..., so the full sum must still fit
        while total + remaining * n + remaining * (remaining - 1) // 2 <= limit:
            if color is None or c[n] == color:
                col = c[n]
                new = [n] + [s + n for s in sums]
                if all(c[s] == col for s in new):
                    seq.append(n)
                    if rec(sums + new, col, n + 1):
                        return True
                    seq.pop()
            n += 1
        return False

    if not rec([], None, 1):
        return None
    fs = finite_sums(seq, limit)
    assert all(c[s] == c[seq[0]] for s in fs.members())
    return list(seq), c[seq[0]]
