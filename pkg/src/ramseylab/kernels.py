"""Hot numeric loops.

Every kernel exists twice: a loop form (``*_nb``) compiled with numba when
the numba backend is active, and a vectorised numpy form (``*_np``).  The
public names at the bottom of the module point at whichever backend
``ramseylab._accel`` selected.  The van der Waerden DFS has no sensible
vectorised form; without numba it runs as plain Python.

Conventions: membership arrays are ``uint8`` with index 0 standing for the
integer 1; colour arrays are ``int8`` holding colours ``1..r``.
"""
from fractions import Fraction

import numpy as np

from ._accel import USE_NUMBA, njit

STATUS_EXHAUSTED = 0
STATUS_CAP = 1
STATUS_BUDGET = 2


# --- runs ------------------------------------------------------------------

@njit(cache=True)
def longest_run_nb(bits, value):
    best_len = 0
    best_start = -1
    cur = 0
    for i in range(bits.shape[0]):
        if bits[i] == value:
            cur += 1
            if cur > best_len:
                best_len = cur
                best_start = i - cur + 1
        else:
            cur = 0
    return best_len, best_start


def longest_run_np(bits, value):
    starts, lengths = run_table(bits, value)
    if lengths.size == 0:
        return 0, -1
    j = int(np.argmax(lengths))
    return int(lengths[j]), int(starts[j])


@njit(cache=True)
def first_run_nb(bits, value, length):
    if length <= 0:
        return 0
    cur = 0
    for i in range(bits.shape[0]):
        if bits[i] == value:
            cur += 1
            if cur >= length:
                return i - length + 1
        else:
            cur = 0
    return -1


def first_run_np(bits, value, length):
    if length <= 0:
        return 0
    starts, lengths = run_table(bits, value)
    hit = np.flatnonzero(lengths >= length)
    if hit.size == 0:
        return -1
    return int(starts[hit[0]])


def run_table(bits, value):
    """Start indices and lengths of the maximal runs equal to ``value``."""
    eq = np.asarray(bits) == value
    d = np.diff(np.concatenate(([0], eq.view(np.int8), [0])))
    starts = np.flatnonzero(d == 1)
    ends = np.flatnonzero(d == -1)
    return starts, ends - starts


# --- windows ---------------------------------------------------------------

@njit(cache=True)
def max_window_count_nb(bits, n):
    count = 0
    for i in range(n):
        count += np.int64(bits[i])
    best = count
    best_start = 0
    for s in range(1, bits.shape[0] - n + 1):
        count += np.int64(bits[s + n - 1]) - np.int64(bits[s - 1])
        if count > best:
            best = count
            best_start = s
    return best, best_start


def max_window_count_np(bits, n):
    cs = np.concatenate(([0], np.cumsum(bits, dtype=np.int64)))
    counts = cs[n:] - cs[:-n]
    s = int(np.argmax(counts))
    return int(counts[s]), s


@njit(cache=True)
def min_prefix_ratio_nb(bits):
    # exact comparison by cross-multiplication: count/N < best_count/best_N
    count = 0
    best_count = 1
    best_n = 1
    for i in range(bits.shape[0]):
        count += np.int64(bits[i])
        n = i + 1
        if count * best_n < best_count * n:
            best_count = count
            best_n = n
    return best_count, best_n


def min_prefix_ratio_np(bits):
    cs = np.cumsum(bits, dtype=np.int64)
    ns = np.arange(1, cs.size + 1, dtype=np.int64)
    ratios = cs / ns
    fmin = ratios.min()
    # float pre-filter, exact resolution among near-ties
    cand = np.flatnonzero(ratios <= fmin + 1e-9)
    best = None
    for j in cand:
        q = Fraction(int(cs[j]), int(ns[j]))
        if best is None or q < best[0]:
            best = (q, int(ns[j]), int(cs[j]))
    return best[2], best[1]


# --- arithmetic progressions ----------------------------------------------

@njit(cache=True)
def first_mono_ap_nb(colors, k, only):
    """Lexicographically least (a, b), a 0-based, of a monochromatic k-AP.

    ``only`` restricts the colour (pass -1 for any colour).  Returns (-1, -1)
    when there is none.
    """
    n = colors.shape[0]
    if k == 1:
        for a in range(n):
            if only < 0 or colors[a] == only:
                return a, 1
        return -1, -1
    for a in range(n):
        c = colors[a]
        if only >= 0 and c != only:
            continue
        b = 1
        while a + (k - 1) * b < n:
            ok = True
            for j in range(1, k):
                if colors[a + j * b] != c:
                    ok = False
                    break
            if ok:
                return a, b
            b += 1
    return -1, -1


def first_mono_ap_np(colors, k, only):
    colors = np.asarray(colors)
    n = colors.shape[0]
    if k == 1:
        idx = np.flatnonzero(colors == only) if only >= 0 else np.arange(min(n, 1))
        return (int(idx[0]), 1) if idx.size else (-1, -1)
    best_a, best_b = n, -1
    b = 1
    while (k - 1) * b < n:
        m = min(n - (k - 1) * b, best_a)
        if m <= 0:
            break
        base = colors[:m]
        mask = base == only if only >= 0 else np.ones(m, dtype=bool)
        for j in range(1, k):
            mask &= colors[j * b:j * b + m] == base
        hit = np.flatnonzero(mask)
        if hit.size and hit[0] < best_a:
            best_a, best_b = int(hit[0]), b
        b += 1
    if best_b < 0:
        return -1, -1
    return best_a, best_b


@njit(cache=True)
def mono_ap_ends_at(colors, pos, k, c):
    if k == 1:
        return True
    b = 1
    while (k - 1) * b <= pos:
        ok = True
        for j in range(1, k):
            if colors[pos - j * b] != c:
                ok = False
                break
        if ok:
            return True
        b += 1
    return False


@njit(cache=True, nogil=True)
def vdw_subtree(k, r, colors, depth0, cap, node_budget):
    """Depth-first extension of ``colors[:depth0]`` by colourings without a
    monochromatic k-AP.

    Positions are coloured left to right, colours tried in ascending order,
    and a new colour may only be the next unused one (colour-permutation
    symmetry).  Only progressions ending at the newest position are tested.

    Returns ``(best_len, best_colors, nodes, status)`` where ``best_colors``
    holds the first (hence lexicographically least) colouring of the maximal
    length reached below the prefix, and ``nodes`` counts accepted positions
    strictly deeper than ``depth0``.
    """
    best_len = depth0
    best = colors.copy()
    nodes = 0
    if depth0 >= cap:
        return best_len, best, nodes, STATUS_CAP
    maxused = np.zeros(cap + 1, dtype=np.int64)
    m = 0
    for i in range(depth0):
        if colors[i] > m:
            m = colors[i]
    maxused[depth0] = m
    pos = depth0
    colors[pos] = 0
    while pos >= depth0:
        limit = min(r, maxused[pos] + 1)
        c = colors[pos] + 1
        placed = False
        while c <= limit:
            colors[pos] = c
            if not mono_ap_ends_at(colors, pos, k, c):
                placed = True
                break
            c += 1
        if not placed:
            colors[pos] = 0
            pos -= 1
            continue
        nodes += 1
        depth = pos + 1
        if depth > best_len:
            best_len = depth
            for i in range(depth):
                best[i] = colors[i]
        if depth >= cap:
            return best_len, best, nodes, STATUS_CAP
        if node_budget > 0 and nodes >= node_budget:
            return best_len, best, nodes, STATUS_BUDGET
        maxused[depth] = max(maxused[pos], c)
        pos = depth
        colors[pos] = 0
    return best_len, best, nodes, STATUS_EXHAUSTED


# --- differences and covers ------------------------------------------------

@njit(cache=True)
def positive_differences_nb(a, b):
    n = a.shape[0]
    out = np.zeros(n, dtype=np.uint8)
    ib = np.nonzero(b)[0]
    for x in np.nonzero(a)[0]:
        for y in ib:
            if y >= x:
                break
            out[x - y - 1] = 1
    return out


def positive_differences_np(a, b):
    n = a.shape[0]
    ai = np.asarray(a, dtype=np.int64)
    bi = np.asarray(b[::-1], dtype=np.int64)
    if n <= 20000:
        conv = np.convolve(ai, bi)
    else:
        size = 1 << int(2 * n - 1).bit_length()
        conv = np.fft.irfft(np.fft.rfft(ai, size) * np.fft.rfft(bi, size), size)
        conv = np.rint(conv[:2 * n - 1]).astype(np.int64)
    # conv[n - 1 + t] counts pairs with a - b = t
    out = np.zeros(n, dtype=np.uint8)
    out[:n - 1] = conv[n:2 * n - 1] > 0
    return out


# above this many member pairs the convolution beats the pair loop
PAIR_LIMIT = 1 << 24


def positive_differences(a, b):
    if USE_NUMBA and int(np.count_nonzero(a)) * int(np.count_nonzero(b)) <= PAIR_LIMIT:
        return positive_differences_nb(a, b)
    return positive_differences_np(a, b)


def first_uncovered(bits, shifts, m_end):
    """Least m in [1, m_end] such that C - m meets no C - s (s in shifts), or -1.

    For m > s the two shifts meet iff m - s is a difference of two members
    of C at index >= s, so one difference set per shift settles every m.
    """
    b = np.asarray(bits, dtype=np.uint8)
    n = b.shape[0]
    covered = np.zeros(m_end + 1, dtype=bool)  # index m
    for s in (int(v) for v in shifts):
        if s + 1 <= m_end:
            suffix = b[s:]
            diffs = positive_differences(suffix, suffix)
            hi = min(m_end, n - 1)
            covered[s + 1:hi + 1] |= diffs[:hi - s].astype(bool)
        if 1 <= s <= m_end and s < n and b[s:].any():
            covered[s] = True
        for m in range(1, min(s, m_end + 1)):
            top = n - s
            if top > 0 and not covered[m] and np.any(b[m:m + top] & b[s:s + top]):
                covered[m] = True
    miss = np.flatnonzero(~covered[1:])
    return int(miss[0]) + 1 if miss.size else -1


if USE_NUMBA:
    longest_run = longest_run_nb
    first_run = first_run_nb
    max_window_count = max_window_count_nb
    min_prefix_ratio = min_prefix_ratio_nb
    first_mono_ap = first_mono_ap_nb
else:
    longest_run = longest_run_np
    first_run = first_run_np
    max_window_count = max_window_count_np
    min_prefix_ratio = min_prefix_ratio_np
    first_mono_ap = first_mono_ap_np
