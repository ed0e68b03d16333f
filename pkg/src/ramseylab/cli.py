"""Command-line front end.  Every subcommand prints (or writes) one JSON report.

Exit codes: 0 success, 1 selftest found a failing invariant, 2 bad input or
failed precondition, 3 resource cap hit.
"""
import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import __version__, constructions as con, filter_lab as fl
from ._accel import BACKEND
from .density import density_profile
from .differences import jin_check
from .errors import EmptyIntersectionError, RamseyLabError, ResourceLimitError
from .ground_set import read_set_file, write_set_file
from .ramsey import Coloring, find_mono_fs, read_certificate, vdw_number, write_certificate
from .selftest import selftest
from .structure import classify

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_CAP = 0, 2, 3
THREADS_ENV = "RAMSEYLAB_THREADS"


@dataclass
class RunConfig:
    command: str
    flags: dict = field(default_factory=dict)
    node_budget: Optional[int] = None
    time_budget: Optional[float] = None
    memory_hint_mb: Optional[int] = None
    out: Optional[str] = None
    seed: int = 0

    def __post_init__(self):
        for name in ("node_budget", "time_budget", "memory_hint_mb"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise UsageError(f"--{name.replace('_', '-')} must be positive, got {v}")

    def echo(self):
        return {
            "command": self.command,
            "flags": self.flags,
            "node_budget": self.node_budget,
            "time_budget": self.time_budget,
            "memory_hint_mb": self.memory_hint_mb,
            "seed": self.seed,
        }


class UsageError(RamseyLabError):
    pass


def _frac(q):
    return {"num": q.numerator, "den": q.denominator}


def _pair(text, flag):
    parts = text.split(",")
    if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
        raise UsageError(f"{flag} expects 'd,N', got {text!r}")
    return int(parts[0]), int(parts[1])


def _int_list(text, flag):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated integers, got {text!r}") from None


# --- subcommands ------------------------------------------------------------

def _cmd_vdw(cfg):
    f = cfg.flags
    try:
        res = vdw_number(f["k"], f["r"], f["cap"], node_budget=cfg.node_budget or 0,
                         threads=f["threads"], split_depth=f["split_depth"], time_budget=cfg.time_budget)
    except ResourceLimitError as exc:
        out = {"outcome": "budget_exhausted", "message": str(exc)}
        if exc.certificate is not None:
            out["certificate"] = exc.certificate.to_string()
            out["certificate_length"] = exc.certificate.length
        return EXIT_CAP, out
    if f["emit_certificate"]:
        write_certificate(f["emit_certificate"], res)
    return (EXIT_OK if res.found else EXIT_CAP), res.to_dict(timings=f["timings"])


def _cmd_classify(cfg):
    f = cfg.flags
    a = read_set_file(f["set"])
    pws = _pair(f["pws"], "--pws") if f["pws"] else None
    rep = classify(a, syndetic=f["syndetic"], thick=f["thick"], pws=pws)
    return EXIT_OK, rep.to_dict()


def _cmd_density(cfg):
    f = cfg.flags
    a = read_set_file(f["set"])
    ns = _int_list(f["n"], "--n") if f["n"] else [a.window_len]
    profile = density_profile(a, ns)
    return EXIT_OK, {
        "window_len": a.window_len,
        "profile": [{"N": r.window_len_used, "value": _frac(r.value), "witness_start": r.witness.start}
                    for r in profile],
    }


def _cmd_fractal(cfg):
    f = cfg.flags
    k = f["k"]
    if (f["n"] is None) == (f["len"] is None):
        raise UsageError("fractal needs exactly one of --n or --len")
    out = {"k": k}
    if f["n"] is not None:
        spec = con.FractalSpec(k, f["n"])
        bits = con.fractal_bits(k, f["n"])
        length = bits.size
        out["n"] = f["n"]
        if length <= f["max_word"]:
            out["word"] = con.fractal_word(spec)
        out.update(con.fractal_stats(spec).to_dict())
    else:
        length = f["len"]
        a = con.fractal_set(k, length)
        bits = a.u8
        out["length"] = length
        if length <= f["max_word"]:
            out["word"] = a.word()
    if f["emit"]:
        write_set_file(f["emit"], con.fractal_set(k, length))
    ok = True
    verify = {}
    for what in f["verify"] or []:
        if what == "stats":
            if f["n"] is None:
                raise UsageError("--verify stats needs --n")
            counted = con.count_stats(bits)
            good = counted == con.fractal_stats(con.FractalSpec(k, f["n"]))
            verify["stats"] = {"ok": good, "counted": counted.to_dict()}
        elif what == "density":
            q, at = con.verify_density_bound(k, length)
            bound = Fraction(k, k + 1)
            good = q >= bound
            verify["density"] = {"ok": good, "min_prefix_density": _frac(q), "at_N": at, "bound": _frac(bound)}
        else:
            depth = f["gap_n"] if f["gap_n"] is not None else f["n"]
            if depth is None:
                raise UsageError("--verify gaps needs --gap-n or --n")
            span = length if f["len"] is not None else con.word_length(k, depth + 2)
            good, bad = con.verify_gap_structure(k, depth, span)
            verify["gaps"] = {"ok": good, "gap_n": depth, "window": con.gap_window(k, depth),
                              "prefix_len": span, "first_bad_window": bad.to_dict() if bad else None}
        ok = ok and good
    if verify:
        out["verify"] = verify
    out["ok"] = ok
    return EXIT_OK, out


def _cmd_jin(cfg):
    f = cfg.flags
    a, b = read_set_file(f["a"]), read_set_file(f["b"])
    rep = jin_check(a, b, f["dmax"], f["nreq"], density_n=f["density_n"])
    return EXIT_OK, rep.to_dict()


def _cmd_fs(cfg):
    f = cfg.flags
    if (f["coloring"] is None) == (f["coloring_file"] is None):
        raise UsageError("fs needs exactly one of --coloring or --coloring-file")
    c = Coloring.from_string(f["coloring"]) if f["coloring"] else read_certificate(f["coloring_file"])[1]
    hit = find_mono_fs(c, f["m"], f["sum_cap"])
    out = {"found": hit is not None, "sequence": None, "color": None,
           "note": "a miss on this window says nothing about longer colourings"}
    if hit:
        out["sequence"], out["color"] = hit
    return EXIT_OK, out


def _family(u, text):
    try:
        lists = json.loads(text)
    except json.JSONDecodeError:
        raise UsageError(f"--family is not JSON: {text!r}") from None
    if not isinstance(lists, list) or not all(isinstance(s, list) for s in lists):
        raise UsageError(f"--family must be a JSON list of lists, got {text!r}")
    return fl.SetFamily.from_lists(u.size, lists)


def _cmd_filterlab(cfg):
    f = cfg.flags
    u = fl.Universe(f["m"])
    op = f["op"]
    if f["family"] is None:
        raise UsageError(f"--op {op} needs --family")
    fam = _family(u, f["family"])
    if op == "is-filter":
        return EXIT_OK, fl.is_filter(fam).to_dict()
    if op == "is-ultrafilter":
        c = fl.is_ultrafilter(fam)
        return EXIT_OK, dict(c.to_dict(), principal=fl.is_principal(fam))
    if op == "generate":
        try:
            g = fl.generate_filter(fam.sorted_members(), u)
        except EmptyIntersectionError as exc:
            return EXIT_USAGE, {"error": str(exc), "culprits": exc.culprits}
        return EXIT_OK, {"filter": g.as_lists(), "core": fl.elements(fl.family_core(g))}
    if op == "partition-regular":
        res = fl.partition_regular(fam.sorted_members(), u)
        return EXIT_OK, {
            "regular": res.regular,
            "singleton_criterion": fl.singleton_criterion(fam.members),
            "refuting_partition": res.refuting_partition,
            "ultrafilter_core": fl.elements(fl.family_core(res.ultrafilter)) if res.ultrafilter else None,
        }
    if f["predicate"] is None:
        raise UsageError(f"--op {op} needs --predicate")
    phi = fl.parse_predicate(u, f["predicate"])
    if op == "superfilter":
        return EXIT_OK, fl.check_superfilter(phi, fam).to_dict()
    uf = fl.extend_ultrafilter(fam, phi)
    return EXIT_OK, {"ultrafilter": uf.as_lists(), "core": fl.elements(fl.family_core(uf))}


def _cmd_selftest(cfg):
    rep = selftest(seed=cfg.seed, trials=cfg.flags["trials"])
    return (EXIT_OK if rep["ok"] else 1), rep


COMMANDS = {
    "vdw": _cmd_vdw,
    "classify": _cmd_classify,
    "density": _cmd_density,
    "fractal": _cmd_fractal,
    "jin": _cmd_jin,
    "fs": _cmd_fs,
    "filterlab": _cmd_filterlab,
    "selftest": _cmd_selftest,
}


def run(cfg):
    """Execute one configured command; returns ``(exit_status, report)``."""
    try:
        status, body = COMMANDS[cfg.command](cfg)
    except ResourceLimitError as exc:
        status, body = EXIT_CAP, {"error": str(exc)}
    except (RamseyLabError, OverflowError, OSError) as exc:
        status, body = EXIT_USAGE, {"error": str(exc)}
    report = {"schema_version": SCHEMA_VERSION, "config": cfg.echo(), "exit_status": status}
    report.update(body)
    return status, report


# --- argument parsing ---------------------------------------------------------

def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _nonneg(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return v


def _default_threads():
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--seed", type=_nonneg, default=0)
    common.add_argument("--node-budget", type=_positive)
    common.add_argument("--time-budget", type=float)
    common.add_argument("--memory-hint-mb", type=_positive)

    p = argparse.ArgumentParser(prog="ramseylab", description="Finite-window Ramsey theory toolkit.")
    p.add_argument("--version", action="version", version=f"ramseylab {__version__} ({BACKEND})")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("vdw", parents=[common], help="van der Waerden numbers")
    s.add_argument("--k", type=_positive, required=True)
    s.add_argument("--r", type=_positive, required=True)
    s.add_argument("--cap", type=_positive, required=True)
    s.add_argument("--threads", type=_positive, default=_default_threads())
    s.add_argument("--split-depth", type=_positive)
    s.add_argument("--emit-certificate", metavar="PATH")
    s.add_argument("--timings", action="store_true", help="include wall time (breaks byte determinism)")

    s = sub.add_parser("classify", parents=[common], help="gap statistics and structure checks")
    s.add_argument("--set", required=True)
    s.add_argument("--syndetic", type=_positive, metavar="D")
    s.add_argument("--thick", type=_positive, metavar="N")
    s.add_argument("--pws", metavar="D,N")

    s = sub.add_parser("density", parents=[common], help="exact window densities")
    s.add_argument("--set", required=True)
    s.add_argument("--n", metavar="N1,N2,...")

    s = sub.add_parser("fractal", parents=[common], help="the self-similar dense set")
    s.add_argument("--k", type=_positive, required=True)
    s.add_argument("--n", type=_nonneg)
    s.add_argument("--len", type=_positive)
    s.add_argument("--emit", metavar="PATH")
    s.add_argument("--verify", action="append", choices=("stats", "density", "gaps"))
    s.add_argument("--gap-n", type=_nonneg)
    s.add_argument("--max-word", type=_nonneg, default=4096, help="omit the word above this length")

    s = sub.add_parser("jin", parents=[common], help="piecewise syndetic A - B on a window")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--dmax", type=_positive, required=True)
    s.add_argument("--nreq", type=_positive, required=True)
    s.add_argument("--density-n", type=_positive)

    s = sub.add_parser("fs", parents=[common], help="monochromatic finite sums")
    s.add_argument("--coloring")
    s.add_argument("--coloring-file")
    s.add_argument("--m", type=_positive, required=True)
    s.add_argument("--sum-cap", type=_positive, required=True)

    s = sub.add_parser("filterlab", parents=[common], help="filters on [1, m]")
    s.add_argument("--m", type=_positive, required=True)
    s.add_argument("--op", required=True, choices=(
        "is-filter", "is-ultrafilter", "generate", "superfilter", "extend", "partition-regular"))
    s.add_argument("--family", metavar="JSON")
    s.add_argument("--predicate")

    s = sub.add_parser("selftest", parents=[common], help="cross-module invariant sweep")
    s.add_argument("--trials", type=_positive, default=200)
    return p


_GLOBAL = ("command", "out", "seed", "node_budget", "time_budget", "memory_hint_mb")


def config_from_args(ns):
    flags = {k: v for k, v in sorted(vars(ns).items()) if k not in _GLOBAL}
    return RunConfig(ns.command, flags, ns.node_budget, ns.time_budget, ns.memory_hint_mb, ns.out, ns.seed)


def main(argv=None):
    args = build_parser().parse_args(argv)  # argparse exits 2 naming the bad token
    try:
        cfg = config_from_args(args)
    except UsageError as exc:
        print(f"ramseylab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    status, report = run(cfg)
    text = json.dumps(report, indent=2) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if "error" in report:
        print(f"ramseylab: error: {report['error']}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
