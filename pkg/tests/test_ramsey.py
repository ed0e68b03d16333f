import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ramseylab.constructions import fractal_set
from ramseylab.errors import FormatError, OutOfRangeError, PreconditionError, ResourceLimitError
from ramseylab.ground_set import GroundSet, finite_sums
from ramseylab.ramsey import (
    APWitness,
    Coloring,
    find_ap_in_set,
    find_mono_ap,
    find_mono_fs,
    mono_ap_in_partition_of_ap,
    read_certificate,
    syndetic_implies_ap,
    vdw_number,
    verify_certificate,
    write_certificate,
)


def naive_mono_ap(colors, k):
    """Lexicographically least (a, b) with a mono k-AP, by brute force."""
    n = len(colors)
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            terms = [a + j * b for j in range(k)]
            if terms[-1] > n:
                break
            if len({colors[t - 1] for t in terms}) == 1:
                return a, b
    return None


def exhaustive_vdw(k, r, n_max):
    """Least N <= n_max with no good r-colouring of [1, N], enumerating all r^N."""
    for n in range(1, n_max + 1):
        if all(naive_mono_ap(c, k) is not None for c in itertools.product(range(1, r + 1), repeat=n)):
            return n
    return None


def test_oracle_w32():
    assert exhaustive_vdw(3, 2, 9) == 9
    assert exhaustive_vdw(2, 3, 5) == 4


def test_vdw_matches_oracle():
    res = vdw_number(3, 2, 20)
    assert res.found and res.W == 9
    assert res.certificate.to_string() == "RRBBRRBB"
    assert verify_certificate(res.certificate, 3)


@pytest.mark.parametrize("r", range(1, 7))
def test_vdw_k2(r):
    assert vdw_number(2, r, 20).W == r + 1


@pytest.mark.parametrize("r", range(1, 4))
def test_vdw_k1(r):
    assert vdw_number(1, r, 5).W == 1


def test_vdw_small_oracles():
    assert vdw_number(3, 1, 10).W == exhaustive_vdw(3, 1, 10) == 3
    assert vdw_number(4, 1, 10).W == 4


def test_vdw_cap():
    res = vdw_number(3, 2, 5)
    assert res.outcome == "exceeded_cap" and res.W is None
    assert res.certificate.length == 5 and verify_certificate(res.certificate, 3)


def test_vdw_node_budget():
    with pytest.raises(ResourceLimitError) as info:
        vdw_number(4, 2, 40, node_budget=50)
    assert info.value.certificate is not None
    assert verify_certificate(info.value.certificate, 4)


@pytest.mark.parametrize("threads, split", [(2, 4), (3, 6), (4, 10)])
def test_threads_deterministic(threads, split):
    one = vdw_number(4, 2, 40)
    many = vdw_number(4, 2, 40, threads=threads, split_depth=split)
    assert (many.W, many.certificate) == (one.W, one.certificate)
    assert many.nodes == one.nodes


def test_vdw_w42_self_consistent():
    res = vdw_number(4, 2, 40)
    assert res.found
    assert res.certificate.length == res.W - 1
    assert verify_certificate(res.certificate, 4)


def test_vdw_w33_small_cap():
    res = vdw_number(3, 3, 20)
    assert res.outcome == "exceeded_cap"
    assert verify_certificate(res.certificate, 3)


def test_find_mono_ap_examples():
    w = find_mono_ap(Coloring.from_string("RRR"), 3)
    assert (w.a, w.b, w.k) == (1, 1, 3)
    assert find_mono_ap(Coloring.from_string("RRBBRRBB"), 3) is None
    for bits in itertools.product((1, 2), repeat=9):
        assert find_mono_ap(Coloring(np.array(bits, dtype=np.int8), 2), 3) is not None


def test_verify_certificate_examples():
    assert verify_certificate(Coloring.from_string("RRBBRRBB"), 3)
    c = Coloring.from_string("RRBBRRBBR")
    assert not verify_certificate(c, 3)
    w = find_mono_ap(c, 3)
    assert len({c[t] for t in w.terms()}) == 1
    assert not verify_certificate(Coloring.from_string("RB"), 1)


@settings(max_examples=300)
@given(st.integers(1, 3), st.integers(1, 4), st.data())
def test_find_mono_ap_complete(r, k, data):
    colors = data.draw(st.lists(st.integers(1, r), min_size=1, max_size=12))
    w = find_mono_ap(Coloring(np.array(colors, dtype=np.int8), r), k)
    expect = naive_mono_ap(colors, k)
    assert (None if w is None else (w.a, w.b)) == expect


def test_partition_of_ap_examples():
    p = APWitness(5, 3, 9)
    w = mono_ap_in_partition_of_ap(p, [1] * 9, 3)
    assert w.a >= 5 and w.b % 3 == 0
    assert set(w.terms()) <= set(p.terms())
    pattern = [1, 1, 2, 2, 1, 1, 2, 2]
    assert mono_ap_in_partition_of_ap(APWitness(1, 1, 8), pattern, 3) is None
    p = APWitness(2, 2, 9)
    for bits in itertools.product((1, 2), repeat=9):
        w = mono_ap_in_partition_of_ap(p, list(bits), 3)
        assert w is not None and set(w.terms()) <= set(p.terms())


def fs_oracle(colors, m, cap):
    """Lexicographically first increasing m-tuple with a monochromatic FS set."""
    limit = min(len(colors), cap)
    for seq in itertools.combinations(range(1, limit + 1), m):
        sums = {sum(s) for j in range(1, m + 1) for s in itertools.combinations(seq, j)}
        if max(sums) <= limit and len({colors[s - 1] for s in sums}) == 1:
            return list(seq), colors[seq[0] - 1]
    return None


def test_find_mono_fs_examples():
    c = Coloring.from_string("RRRRRRR")
    seq, col = find_mono_fs(c, 3, 7)
    # lexicographic order puts (1, 2, 3) first; its sums are {1..6}
    assert seq == [1, 2, 3] == fs_oracle([1] * 7, 3, 7)[0]
    assert find_mono_fs(c, 1, 7) == ([1], 1)
    rbrb = Coloring.from_string("RBRB")
    assert find_mono_fs(rbrb, 2, 4) == fs_oracle([1, 2, 1, 2], 2, 4)


@settings(max_examples=200)
@given(st.lists(st.integers(1, 2), min_size=1, max_size=14), st.integers(1, 3))
def test_find_mono_fs_oracle(colors, m):
    c = Coloring(np.array(colors, dtype=np.int8), 2)
    got = find_mono_fs(c, m, len(colors))
    expect = fs_oracle(colors, m, len(colors))
    assert (None if got is None else (got[0], got[1])) == expect
    if got:
        fs = finite_sums(got[0], len(colors))
        assert all(c[s] == got[1] for s in fs.members())


def test_find_ap_in_set_examples():
    w = find_ap_in_set(GroundSet.multiples(2, 20), 5)
    assert (w.a, w.b, w.k) == (2, 2, 5)
    assert find_ap_in_set(GroundSet.from_members([1, 2, 4, 8, 16], 16), 3) is None
    f = fractal_set(1, 10 ** 4)
    w = find_ap_in_set(f, 4)
    assert w is not None and all(t in f for t in w.terms())
    # regression fixture; a direct scan over (a, b) finds the same least pair
    assert (w.a, w.b) == (1, 19)
    m = set(f.members())
    assert next((a, b) for a in sorted(m) for b in range(1, 100) if all(a + j * b in m for j in range(4))) == (1, 19)


def test_find_ap_in_set_oracle():
    rng = np.random.default_rng(3)
    for _ in range(200):
        bits = rng.random(int(rng.integers(1, 40))) < 0.5
        a = GroundSet(bits)
        w = find_ap_in_set(a, 3)
        members = set(a.members())
        expect = None
        for x in sorted(members):
            for b in range(1, a.window_len):
                if x + b in members and x + 2 * b in members:
                    expect = (x, b)
                    break
            if expect:
                break
        assert (None if w is None else (w.a, w.b)) == expect


def test_syndetic_implies_ap_examples():
    ev = GroundSet.multiples(2, 30)
    w = syndetic_implies_ap(ev, 2, 3)
    assert all(t in ev for t in w.terms())
    a = GroundSet.from_predicate(30, lambda n: n % 3 != 0)
    w = syndetic_implies_ap(a, 2, 3)
    assert all(t in a for t in w.terms())
    rng = np.random.default_rng(11)
    for _ in range(50):
        bits = rng.random(11) < 0.5
        for i in range(10):
            if not bits[i] and not bits[i + 1]:
                bits[i + 1] = True
        a = GroundSet(bits)
        w = syndetic_implies_ap(a, 2, 3)
        assert all(t in a for t in w.terms())


def test_syndetic_implies_ap_preconditions():
    with pytest.raises(PreconditionError):
        syndetic_implies_ap(GroundSet.multiples(3, 30), 2, 3)
    with pytest.raises(PreconditionError):
        syndetic_implies_ap(GroundSet.multiples(2, 10), 2, 3)


def test_certificate_roundtrip(tmp_path):
    res = vdw_number(3, 2, 20)
    path = tmp_path / "w32.cert"
    write_certificate(path, res)
    k, c = read_certificate(path)
    assert k == 3 and c == res.certificate
    path.write_text("r=2 q=3\nRRB\n")
    with pytest.raises(FormatError, match="q=3"):
        read_certificate(path)


def test_coloring_parse():
    assert Coloring.from_string("1212").to_string() == "RBRB"
    with pytest.raises(FormatError):
        Coloring.from_string("RXB")
    with pytest.raises(OutOfRangeError):
        vdw_number(0, 2, 10)
