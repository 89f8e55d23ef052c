"""Command-line front end: run checks and constructions on shipped or
file-based fixtures and emit deterministic reports.

Exit codes: 0 all checks met, 1 some check failed, 2 parse/configuration
error, 3 at least one UNKNOWN verdict (and nothing failed outright).
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import sys

from .core import (
    EffMorphism, EffObject, check_morphism, check_object, identity,
)
from .path import (
    NotTrivial, fibration_decide, homotopic_decide, is_equivalence_decide,
    is_trivial_fibration, path_object, pullback,
    synthesize_fibration_witness, terminal_map,
)
from .classify import (
    NotNormalized, classify_prop_discrete, discrete_decide, hlevel_check,
    prop_truncate, resize, u_one_cell, univalence_check_prop,
)
from .constructions import hexp_J, pi_type, transport_properties_check
from .eff1 import (
    Eff1Morphism, Eff1Object, NotNormalized as NotNormalized1,
    NotTrivial as NotTrivial1, check_morphism1, check_object1,
    classify_discrete_set, discrete1_decide, fibration1_decide, hexp_J1,
    hlevel1_check, homotopic1_decide, identity1, is_equivalence1_decide,
    path_object1, pi_type1, pullback1, resize1,
    synthesize_fibration1_witness, terminal_map1, trivial1_decide,
    truncate1, two_homotopic_decide, univalence_check_set, z2_homotopies,
    z2_twist,
)
from .fixtures import fixture_library
from .fixture_io import FixtureError, parse_fixture_file

DEFAULT_FUEL = 100_000

_COMMANDS = (
    "check-object", "check-morphism", "check-fibration", "pullback",
    "path-object", "homotopic", "equivalence", "transport", "exp-j", "pi",
    "truncate", "hlevel", "discrete", "classify", "univalence", "resize",
)


class ConfigError(Exception):
    pass


def _is_level1(x) -> bool:
    return isinstance(x, (Eff1Object, Eff1Morphism))


class Resolver:
    def __init__(self, paths):
        self.library = fixture_library()
        self.files = {p: parse_fixture_file(p) for p in paths}

    def get(self, target: str):
        if "#" in target:
            path, _, name = target.partition("#")
            if path not in self.files:
                self.files[path] = parse_fixture_file(path)
            return self.files[path].resolve(name)
        if target in self.library:
            return self.library[target].value
        for ff in self.files.values():
            try:
                return ff.resolve(target)
            except FixtureError:
                pass
        raise ConfigError(f"unknown fixture {target!r}")

    def morphism(self, target: str):
        v = self.get(target)
        if isinstance(v, (EffMorphism, Eff1Morphism)):
            return v
        if isinstance(v, (EffObject, Eff1Object)):
            return (terminal_map1 if _is_level1(v) else terminal_map)(v)
        raise ConfigError(f"{target!r} is not a morphism")

    def obj(self, target: str):
        v = self.get(target)
        if not isinstance(v, (EffObject, Eff1Object)):
            raise ConfigError(f"{target!r} is not an object")
        return v


def _report(command, target, status, detail=""):
    return {"command": command, "target": target, "status": status,
            "detail": detail}


# --- command handlers --------------------------------------------------------

def _cmd_check_object(rs, args):
    obj = rs.obj(args.targets[0])
    ck = check_object1 if _is_level1(obj) else check_object
    v = ck(obj, fuel=args.fuel)
    return [_report("check-object", args.targets[0], v.status, v.reason)]


def _cmd_check_morphism(rs, args):
    f = rs.morphism(args.targets[0])
    ck = check_morphism1 if _is_level1(f) else check_morphism
    v = ck(f, fuel=args.fuel)
    return [_report("check-morphism", args.targets[0], v.status, v.reason)]


def _cmd_check_fibration(rs, args):
    f = rs.morphism(args.targets[0])
    d = (fibration1_decide if _is_level1(f) else fibration_decide)(f)
    return [_report("check-fibration", args.targets[0], d.status, d.reason)]


def _cmd_pullback(rs, args):
    f, g = rs.morphism(args.targets[0]), rs.morphism(args.targets[1])
    pb = (pullback1 if _is_level1(f) else pullback)(f, g)
    ck = check_object1 if _is_level1(f) else check_object
    v = ck(pb.obj, fuel=args.fuel)
    return [_report("pullback", " ".join(args.targets[:2]), v.status,
                    f"{len(pb.obj.cells)} cells")]


def _cmd_path_object(rs, args):
    obj = rs.obj(args.targets[0])
    b = (path_object1 if _is_level1(obj) else path_object)(obj)
    d = (fibration1_decide if _is_level1(obj) else fibration_decide)(b.st)
    return [_report("path-object", args.targets[0], d.status,
                    f"{len(b.obj.cells)} cells; endpoint projection "
                    f"fibration: {d.status}")]


def _cmd_homotopic(rs, args):
    f, g = rs.morphism(args.targets[0]), rs.morphism(args.targets[1])
    d = (homotopic1_decide if _is_level1(f) else homotopic_decide)(f, g)
    return [_report("homotopic", " ".join(args.targets[:2]), d.status,
                    d.reason)]


def _cmd_equivalence(rs, args):
    f = rs.morphism(args.targets[0])
    if _is_level1(f):
        d = is_equivalence1_decide(f, fuel=args.fuel)
    else:
        d = is_equivalence_decide(f, fuel=args.fuel, budget=args.budget)
    return [_report("equivalence", args.targets[0], d.status, d.reason)]


def _cmd_transport(rs, args):
    f = rs.morphism(args.targets[0])
    if _is_level1(f):
        raise ConfigError("transport properties are a groupoid-level check")
    w = synthesize_fibration_witness(f)
    if w is None:
        return [_report("transport", args.targets[0], "no",
                        "not a fibration")]
    vs = transport_properties_check(f, w, fuel=args.fuel)
    status = ("yes" if all(v.status == "yes" for v in vs)
              else "unknown" if any(v.status == "unknown" for v in vs)
              else "no")
    return [_report("transport", args.targets[0], status,
                    "; ".join(v.status for v in vs))]


def _cmd_exp_j(rs, args):
    obj = rs.obj(args.targets[0])
    if _is_level1(obj):
        e = hexp_J1(obj, fuel=args.fuel)
        v = check_object1(e.obj, fuel=args.fuel)
    else:
        e = hexp_J(obj)
        v = check_object(e.obj, fuel=args.fuel)
    return [_report("exp-j", args.targets[0], v.status,
                    f"{len(e.obj.cells)} cells")]


def _cmd_pi(rs, args):
    f = rs.morphism(args.targets[0])
    g = (rs.morphism(args.targets[1]) if len(args.targets) > 1
         else (identity1 if _is_level1(f) else identity)(f.dom))
    if _is_level1(f):
        w = synthesize_fibration1_witness(f)
        if w is None:
            raise ConfigError(f"{args.targets[0]} is not a fibration")
        pi = pi_type1(f, w, g)
        d = fibration1_decide(pi.proj)
    else:
        w = synthesize_fibration_witness(f)
        if w is None:
            raise ConfigError(f"{args.targets[0]} is not a fibration")
        pi = pi_type(f, w, g)
        d = fibration_decide(pi.proj)
    return [_report("pi", " ".join(args.targets), d.status,
                    f"{len(pi.obj.cells)} sections; projection "
                    f"fibration: {d.status}")]


def _cmd_truncate(rs, args):
    f = rs.morphism(args.targets[0])
    if _is_level1(f):
        tr = truncate1(f, args.n, fuel=args.fuel)
        hv = hlevel1_check(tr.h, args.n, fuel=args.fuel)
    else:
        if args.n != -1:
            raise ConfigError("groupoid-level truncation is propositional "
                              "(--n -1)")
        tr = prop_truncate(f)
        hv = hlevel_check(tr.h, -1, fuel=args.fuel)
    return [_report("truncate", args.targets[0], hv.status,
                    f"n={args.n}: truncation has hlevel {args.n}: "
                    f"{hv.status}")]


def _cmd_hlevel(rs, args):
    f = rs.morphism(args.targets[0])
    if _is_level1(f):
        hv = hlevel1_check(f, args.n, fuel=args.fuel,
                           depth_budget=args.depth)
    else:
        hv = hlevel_check(f, args.n, fuel=args.fuel,
                          depth_budget=args.depth)
    return [_report("hlevel", args.targets[0], hv.status,
                    f"n={args.n}: {hv.reason}")]


def _cmd_discrete(rs, args):
    f = rs.morphism(args.targets[0])
    d = (discrete1_decide if _is_level1(f) else discrete_decide)(
        f, fuel=args.fuel)
    return [_report("discrete", args.targets[0], d.status, d.reason)]


def _cmd_classify(rs, args):
    f = rs.morphism(args.targets[0])
    try:
        if _is_level1(f):
            w = synthesize_fibration1_witness(f)
            if w is None:
                raise ConfigError(f"{args.targets[0]} is not a fibration")
            cl = classify_discrete_set(f, w, fuel=args.fuel)
        else:
            w = synthesize_fibration_witness(f)
            if w is None:
                raise ConfigError(f"{args.targets[0]} is not a fibration")
            cl = classify_prop_discrete(f, w, fuel=args.fuel)
    except (NotNormalized, NotNormalized1) as e:
        return [_report("classify", args.targets[0], "no", str(e))]
    return [_report("classify", args.targets[0], cl.comparison.status,
                    "recovered total space compares: "
                    f"{cl.comparison.status}")]


def _cmd_univalence(rs, args):
    w = rs.morphism(args.targets[0])
    pf = rs.morphism(args.targets[1])
    pg = rs.morphism(args.targets[2])
    check = univalence_check_set if _is_level1(w) else univalence_check_prop
    H, d = check(w, pf, pg, fuel=args.fuel)
    return [_report("univalence", " ".join(args.targets[:3]), d.status,
                    d.reason)]


def _cmd_resize(rs, args):
    f = rs.morphism(args.targets[0])
    rsb = (resize1 if _is_level1(f) else resize)(f, fuel=args.fuel)
    status = ("yes" if all(d.status == "yes" for d in rsb.laws)
              else "unknown" if any(d.status == "unknown" for d in rsb.laws)
              else "no")
    return [_report("resize", args.targets[0], status,
                    f"{len(rsb.obj.cells)} cells; laws: "
                    + " ".join(d.status for d in rsb.laws))]


_HANDLERS = {
    "check-object": (_cmd_check_object, 1),
    "check-morphism": (_cmd_check_morphism, 1),
    "check-fibration": (_cmd_check_fibration, 1),
    "pullback": (_cmd_pullback, 2),
    "path-object": (_cmd_path_object, 1),
    "homotopic": (_cmd_homotopic, 2),
    "equivalence": (_cmd_equivalence, 1),
    "transport": (_cmd_transport, 1),
    "exp-j": (_cmd_exp_j, 1),
    "pi": (_cmd_pi, 1),
    "truncate": (_cmd_truncate, 1),
    "hlevel": (_cmd_hlevel, 1),
    "discrete": (_cmd_discrete, 1),
    "classify": (_cmd_classify, 1),
    "univalence": (_cmd_univalence, 3),
    "resize": (_cmd_resize, 1),
}


# --- the suite runner --------------------------------------------------------

def _as_bool(status: str):
    if status in ("valid", "verified", "yes"):
        return True
    if status in ("invalid", "refuted", "no"):
        return False
    return None


def _entry_check(entry, key: str, fuel: int) -> str:
    """Run one declared expectation; returns a status string."""
    v = entry.value
    if entry.kind == "object":
        f = terminal_map(v)
        if key == "valid":
            return check_object(v, fuel=fuel).status
        if key == "trivial_over_1":
            return is_trivial_fibration(f, fuel=fuel).status
        if key == "discrete_over_1":
            return discrete_decide(f, fuel=fuel).status
        if key == "hlevel0":
            return hlevel_check(f, 0, fuel=fuel).status
    if entry.kind == "fibration":
        if key == "fibration":
            return fibration_decide(v).status
        if key == "hlevel0":
            return hlevel_check(v, 0, fuel=fuel).status
        if key == "propositional":
            return hlevel_check(v, -1, fuel=fuel).status
        if key == "discrete":
            return discrete_decide(v, fuel=fuel).status
        if key == "classifies":
            w = synthesize_fibration_witness(v)
            return classify_prop_discrete(v, w, fuel=fuel).comparison.status
    if entry.kind == "pathobj":
        if key == "valid":
            return check_object(v.obj, fuel=fuel).status
        if key == "st_fibration":
            return fibration_decide(v.st).status
        if key == "st_discrete":
            return discrete_decide(v.st, fuel=fuel).status
    if entry.kind == "subsets":
        x, y = v
        if key == "reflexive":
            return ("yes" if u_one_cell(x, x) is not None
                    and u_one_cell(y, y) is not None else "no")
        if key == "cross":
            return ("yes" if u_one_cell(x, y) is not None
                    and u_one_cell(y, x) is not None else "no")
        if key == "empty_isolated":
            e = frozenset()
            return ("yes" if u_one_cell(x, e) is None
                    and u_one_cell(y, e) is None else "no")
    if entry.kind == "object1":
        f = terminal_map1(v)
        if key == "valid":
            return check_object1(v, fuel=fuel).status
        if key == "trivial_over_1":
            return trivial1_decide(f, fuel=fuel).status
        if key == "discrete_over_1":
            return discrete1_decide(f, fuel=fuel).status
        if key == "set_over_1":
            return hlevel1_check(f, 0, fuel=fuel).status
        if key == "groupoid_over_1":
            return hlevel1_check(f, 1, fuel=fuel).status
        if key == "twist_equivalence":
            return is_equivalence1_decide(z2_twist(v), fuel=fuel).status
        if key == "modifications_differ":
            wm = z2_twist(v)
            idv = identity1(v)
            H, K = z2_homotopies(v, wm)
            d = two_homotopic_decide(idv, wm, H, K, fuel=fuel)
            return {"no": "yes", "yes": "no"}.get(d.status, d.status)
    if entry.kind == "fibration1":
        if key == "fibration":
            return fibration1_decide(v).status
        if key == "groupoid_over_1":
            return hlevel1_check(v, 1, fuel=fuel).status
    raise ConfigError(f"{entry.name}: no check for expectation {key!r}")


def _run_suite(rs, args):
    lib = rs.library
    if args.targets:
        missing = [t for t in args.targets if t not in lib]
        if missing:
            raise ConfigError(f"unknown suite fixtures: {missing}")
        names = list(args.targets)
    else:
        names = sorted(lib)
    work = [(n, key, bool(want)) for n in names
            for key, want in sorted(lib[n].expect.items())]

    def run(item):
        n, key, want = item
        status = _entry_check(lib[n], key, args.fuel)
        got = _as_bool(status)
        outcome = ("unknown" if got is None
                   else "pass" if got == want else "fail")
        return _report("suite", f"{n} {key}", outcome,
                       f"expected {want}, checker said {status}")

    if args.jobs > 1:
        with concurrent.futures.ThreadPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(run, work))
    else:
        reports = [run(item) for item in work]
    return sorted(reports, key=lambda r: r["target"])


# --- entry point -------------------------------------------------------------

def _build_parser():
    ap = argparse.ArgumentParser(
        prog="effpath",
        description="finite path-category checks over a combinator machine")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
        sp.add_argument("--budget", type=int, default=64)
        sp.add_argument("--depth", type=int, default=600)
        sp.add_argument("--format", choices=("json", "text"),
                        default="text")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--fixtures", action="append", default=[],
                        metavar="PATH",
                        help="extra fixture files to resolve names in")

    for cmd, (_fn, arity) in _HANDLERS.items():
        for name in (cmd, f"eff1-{cmd}"):
            sp = sub.add_parser(name)
            sp.add_argument("targets", nargs="+" if cmd == "pi" else arity)
            if cmd in ("truncate", "hlevel"):
                sp.add_argument("--n", type=int, required=True, dest="n")
            common(sp)
    sp = sub.add_parser("suite")
    sp.add_argument("targets", nargs="*")
    sp.add_argument("--all", action="store_true")
    common(sp)
    return ap


def _emit(reports, fmt, out):
    if fmt == "json":
        out.write(json.dumps(reports, indent=2, sort_keys=True) + "\n")
    else:
        for r in reports:
            line = f"{r['command']} {r['target']}: {r['status']}"
            if r["detail"]:
                line += f"  ({r['detail']})"
            out.write(line + "\n")


def _exit_code(reports) -> int:
    statuses = [r["status"] for r in reports]
    if any(s in ("invalid", "fail") for s in statuses):
        return 1
    if any(s == "unknown" for s in statuses):
        return 3
    return 0


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    command = args.command
    try:
        rs = Resolver(args.fixtures)
        if command == "suite":
            reports = _run_suite(rs, args)
        else:
            base = command.removeprefix("eff1-")
            fn, _arity = _HANDLERS[base]
            if command.startswith("eff1-"):
                first = rs.get(args.targets[0])
                if not _is_level1(first):
                    raise ConfigError(
                        f"{args.targets[0]!r} is not a two-level fixture")
            reports = fn(rs, args)
    except (FixtureError, ConfigError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (NotTrivial, NotTrivial1) as e:
        reports = [_report(command, " ".join(args.targets), "no", str(e))]
    reports = sorted(reports, key=lambda r: (r["command"], r["target"]))
    _emit(reports, args.format, out)
    return _exit_code(reports)


if __name__ == "__main__":
    raise SystemExit(main())
