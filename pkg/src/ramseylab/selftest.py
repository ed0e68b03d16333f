"""Cross-module invariant sweep at reduced sizes (``ramseylab selftest``)."""
import numpy as np

from . import constructions as con
from . import filter_lab as fl
from .density import window_sup_density
from .ground_set import GroundSet, shift as _shift
from .ramsey import find_mono_ap, vdw_number, Coloring
from .structure import (
    cover_by_shifts,
    decompose_pws,
    intersection_of_shifts,
    is_piecewise_syndetic,
    is_syndetic,
    is_thick,
)


def _random_set(rng, length):
    p = rng.uniform(0.1, 0.95)
    return GroundSet(rng.random(length) < p)


def _shift_calculus(rng, shift, trials):
    for _ in range(trials):
        length = int(rng.integers(4, 200))
        a = _random_set(rng, length)
        n = int(rng.integers(0, length - 1))
        m = int(rng.integers(0, length - 1 - n))
        if shift(shift(a, n), m) != shift(a, n + m):
            return False, f"shift(shift(A,{n}),{m}) != shift(A,{n + m}) at L={length}"
    return True, ""


def _shift_lattice(rng, shift, trials):
    for _ in range(trials):
        length = int(rng.integers(2, 200))
        a, b = _random_set(rng, length), _random_set(rng, length)
        n = int(rng.integers(0, length))
        if shift(a & b, n) != (shift(a, n) & shift(b, n)) or shift(a | b, n) != (shift(a, n) | shift(b, n)):
            return False, f"shift does not distribute at n={n}, L={length}"
    return True, ""


def _de_morgan(rng, trials):
    for _ in range(trials):
        length = int(rng.integers(1, 200))
        a, b = _random_set(rng, length), _random_set(rng, length)
        if ~(a | b) != (~a & ~b) or ~(a & b) != (~a | ~b) or (a & ~a).count() != 0:
            return False, f"De Morgan failure at L={length}"
    return True, ""


def _structure(rng, trials):
    for _ in range(trials):
        length = int(rng.integers(40, 300))
        a = _random_set(rng, length)
        d = int(rng.integers(1, 12))
        n = int(rng.integers(1, 12))
        inter = intersection_of_shifts(a, range(n))
        if bool(is_thick(a, n)) != (inter.count() > 0):
            return False, f"thick/intersection mismatch N={n}"
        if bool(is_syndetic(a, d)) == bool(is_thick(~a, d)):
            return False, f"syndetic/complement mismatch d={d}"
        if bool(is_syndetic(a, d)) != bool(cover_by_shifts(a, d)):
            return False, f"syndetic/cover mismatch d={d}"
        if d + n <= length and is_piecewise_syndetic(a, d, n):
            dec = decompose_pws(a, d, n)
            if (dec.syndetic & dec.thick) != a or not is_thick(dec.thick, n) or not is_syndetic(dec.syndetic, dec.syndetic_gap):
                return False, f"decomposition failed d={d} N={n}"
    return True, ""


def _subadditive(rng, trials):
    for _ in range(trials):
        length = int(rng.integers(20, 300))
        a, b = _random_set(rng, length), _random_set(rng, length)
        n = int(rng.integers(1, length + 1))
        if window_sup_density(a | b, n).value > window_sup_density(a, n).value + window_sup_density(b, n).value:
            return False, f"subadditivity failure N={n}"
    return True, ""


def _fractal():
    for k in range(1, 4):
        prev = None
        for n in range(0, 9):
            spec = con.FractalSpec(k, n)
            bits = con.fractal_bits(k, n)
            if con.count_stats(bits) != con.fractal_stats(spec):
                return False, f"closed forms wrong at k={k}, n={n}"
            if prev is not None and not np.array_equal(bits[:prev.size], prev):
                return False, f"prefix property fails at k={k}, n={n}"
            prev = bits
    return True, ""


def _filters():
    for m in range(1, 4):
        u = fl.Universe(m)
        for bits in range(1, 1 << (1 << m)):
            fam = fl.SetFamily(u, frozenset(s for s in u.subsets() if bits >> s & 1))
            if fl.is_ultrafilter(fam):
                if not fl.is_principal(fam) or bin(fl.family_core(fam)).count("1") != 1:
                    return False, f"non-principal ultrafilter accepted on m={m}"
                for x in u.subsets():
                    for y in u.subsets():
                        if ((x & y) in fam) != (x in fam and y in fam) or ((x | y) in fam) != (x in fam or y in fam):
                            return False, f"point dichotomy fails on m={m}"
    return True, ""


def _vdw():
    if vdw_number(3, 2, 20).W != 9:
        return False, "W(3,2) != 9"
    for r in range(1, 5):
        if vdw_number(2, r, 20).W != r + 1:
            return False, f"W(2,{r}) != {r + 1}"
    if find_mono_ap(Coloring.from_string("RRBBRRBB"), 3) is not None:
        return False, "RRBBRRBB reported to contain a mono 3-AP"
    return True, ""


def selftest(seed=0, trials=200, shift=None):
    """Run every invariant and return ``{"ok": ..., "invariants": [...]}``.

    ``shift`` replaces the shift implementation under test (fault injection).
    """
    shift = shift or _shift
    rng = np.random.default_rng(seed)
    checks = [
        ("shift-associativity", lambda: _shift_calculus(rng, shift, trials)),
        ("shift-distributes-over-intersection-union", lambda: _shift_lattice(rng, shift, trials)),
        ("de-morgan", lambda: _de_morgan(rng, trials)),
        ("structure-equivalences", lambda: _structure(rng, trials)),
        ("density-subadditivity", lambda: _subadditive(rng, trials)),
        ("fractal-closed-forms", _fractal),
        ("ultrafilters-are-principal-points", _filters),
        ("vdw-small-values", _vdw),
    ]
    results = []
    for name, fn in checks:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed invariant, not a crashed selftest
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append({"name": name, "ok": bool(ok), "detail": detail})
    return {"ok": all(r["ok"] for r in results), "seed": seed, "trials": trials, "invariants": results}
