"""``hecke-lab``: command-line front end.

Exit status: 0 when everything checked passes, 1 on any failure, 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .affweyl import AffineWeylError, ExtAffineWeylElem, metaplectic_group
from .cosets import CosetError, DoubleCosetWord, normalize, support_census, supports_hecke
from .hecke import HeckeAlgebra, HeckeError, hecke_from_json
from .lattice import ADE_TYPES, table_z2
from .padic import hilbert2
from .rootsys import RootSystemError, WeylElem, build_root_system, parse_type
from .suites import SUITES, RunReport, SuiteError, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _epsilon(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("epsilon must be +1 or -1") from None
    if v not in (1, -1):
        raise argparse.ArgumentTypeError("epsilon must be +1 or -1")
    return v


def _load_json(text: str):
    """Inline JSON, or ``@path`` to read it from a file."""
    try:
        if text.startswith("@"):
            with open(text[1:], encoding="utf-8") as fh:
                return json.load(fh)
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON: {exc}") from None


def _weyl_from_json(rs, data) -> WeylElem:
    """A matrix, or a flat list of simple-reflection indices."""
    if not data:
        return rs.identity()
    if isinstance(data[0], list):
        return WeylElem(tuple(tuple(int(x) for x in row) for row in data))
    w = rs.identity()
    for i in data:
        w = w * rs.simple_reflection(int(i))
    return w


def _elem_from_json(group, data) -> ExtAffineWeylElem:
    s = _weyl_from_json(group.rs, data.get("s", []))
    lam = data.get("lambda", [0] * group.r)
    return group.make(s, tuple(Fraction(x) for x in lam))


def _hecke_input(h: HeckeAlgebra, data):
    if isinstance(data, dict):
        return h.basis(_elem_from_json(h.group, data))
    terms = []
    for term in data:
        e = _elem_from_json(h.group, term["weyl"])
        terms.append({"weyl": e.to_json(), "coeff": term.get("coeff", {"a": "1", "b": "0"})})
    return hecke_from_json(h, terms)


def _parse_vector(text: str) -> tuple:
    return tuple(Fraction(x) for x in text.replace(",", " ").split())


# ---------------------------------------------------------------- commands
def cmd_table(args) -> int:
    types = ADE_TYPES if args.all or not args.type else [parse_type(t) for t in args.type]
    if args.figures:
        rep = run_suite("table-z2", [f"{f}{r}" for f, r in types])
        return _emit_report(rep, args)
    rows = table_z2(types)
    if args.json:
        print(_dump(rows))
    else:
        print(f"{'type':<6}{'computed':<14}{'expected':<14}{'[Y:Y~]':>7}  match")
        for r in rows:
            print(f"{r['type']:<6}{r['computed']:<14}{r['expected']:<14}"
                  f"{r['index_Y_over_Ytilde']:>7}  {'yes' if r['match'] else 'NO'}")
    return EXIT_OK if all(r["match"] for r in rows) else EXIT_FAIL


def cmd_weyl(args) -> int:
    g = metaplectic_group(*parse_type(args.type))
    e = _elem_from_json(g, _load_json(args.elem))
    word = g.reduced_word(e)
    out = {
        "element": e.to_json(),
        "length": g.length(e),
        "omega": word.omega_part,
        "word": list(word.letters),
        "roundtrip": g.evaluate_word(word) == e,
    }
    if args.json:
        print(_dump(out))
    else:
        letters = " ".join(f"g{i}" for i in word.letters) or "(empty)"
        print(f"length {out['length']}; omega[{word.omega_part}] * {letters}")
    return EXIT_OK if out["roundtrip"] else EXIT_FAIL


def cmd_hecke(args) -> int:
    g = metaplectic_group(*parse_type(args.type))
    h = HeckeAlgebra(g)
    if args.action == "mul":
        if not args.x or not args.y:
            raise UsageError("hecke mul needs --x and --y")
        x = _hecke_input(h, _load_json(args.x))
        y = _hecke_input(h, _load_json(args.y))
        z = x * y
        print(_dump(z.to_json()) if args.json else repr(z))
        return EXIT_OK
    if args.action == "verify-braid":
        rep = run_suite("hecke-braid", [args.type], seed=args.seed, radius=args.radius)
        return _emit_report(rep, args)
    if args.action == "verify-bernstein":
        if args.lam is not None:
            lam = _parse_vector(args.lam)
            alphas = [args.alpha] if args.alpha else list(range(1, g.r + 1))
            reports = [h.verify_bernstein(i, lam) for i in alphas]
            if args.json:
                print(_dump([r.to_json() for r in reports]))
            else:
                for r in reports:
                    print(f"alpha {r.params['alpha']} lambda {list(map(str, lam))} m={r.m}: "
                          f"{'holds' if r.holds else 'FAILS'}")
            return EXIT_OK if all(r.holds for r in reports) else EXIT_FAIL
        rep = run_suite("bernstein", [args.type], box=args.box, seed=args.seed)
        return _emit_report(rep, args)
    raise UsageError(f"unknown hecke action {args.action}")


def cmd_shimura(args) -> int:
    rep = run_suite("shimura", [args.type], epsilon=args.epsilon, box=args.box,
                    radius=args.radius)
    return _emit_report(rep, args, force_json=True)


def cmd_hilbert(args) -> int:
    pairs = []
    if args.csv:
        try:
            with open(args.csv, newline="", encoding="utf-8") as fh:
                for row in csv.reader(fh):
                    if not row or row[0].strip().startswith("#"):
                        continue
                    if len(row) < 2:
                        raise UsageError(f"bad CSV row {row!r}")
                    pairs.append((row[0].strip(), row[1].strip()))
        except OSError as exc:
            raise UsageError(str(exc)) from None
    else:
        if args.a is None or args.b is None:
            raise UsageError("hilbert needs two arguments or --csv")
        pairs.append((args.a, args.b))
    try:
        vals = [(a, b, hilbert2(Fraction(a), Fraction(b))) for a, b in pairs]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    if args.csv:
        wr = csv.writer(sys.stdout, lineterminator="\n")
        wr.writerow(["a", "b", "symbol"])
        for a, b, v in vals:
            wr.writerow([a, b, f"{v:+d}"])
    else:
        print(f"{vals[0][2]:+d}")
    return EXIT_OK


def cmd_coset(args) -> int:
    rs = build_root_system(*parse_type(args.type))
    if args.action == "normalize":
        if not args.input:
            raise UsageError("coset normalize needs --input")
        data = _load_json(args.input)
        items = data if isinstance(data, list) else [data]
        out = []
        for item in items:
            lam = item.get("lambda", [0] * rs.rank)
            x = DoubleCosetWord.make(rs, item.get("A", ()), _weyl_from_json(rs, item.get("w", [])),
                                     lam, item.get("B", ()))
            nf = normalize(rs, x)
            rec = nf.to_json(rs)
            rec["supports_hecke"] = supports_hecke(rs, nf)
            out.append(rec)
        print(_dump(out if isinstance(data, list) else out[0]))
        return EXIT_OK
    if args.action == "census":
        box = 1 if args.box is None else args.box
        res = support_census(rs, box, args.cap)
        if args.csv:
            with open(args.csv, "w", encoding="utf-8", newline="") as fh:
                fh.write(res.to_csv())
        if args.json:
            print(_dump(res.to_json()))
        else:
            if not args.csv:
                sys.stdout.write(res.to_csv())
            print(f"# {res.type}: {res.normal_forms} normal forms, {res.supporting} supporting, "
                  f"expected {res.expected}", file=sys.stderr if not args.csv else sys.stdout)
        return EXIT_OK if res.passed else EXIT_FAIL
    raise UsageError(f"unknown coset action {args.action}")


def cmd_run(args) -> int:
    rep = run_suite(args.suite, args.type or None, epsilon=args.epsilon, radius=args.radius,
                    box=args.box, seed=args.seed)
    return _emit_report(rep, args)


def _emit_report(rep: RunReport, args, force_json: bool = False) -> int:
    if args.json or force_json:
        print(_dump(rep.to_json(timing=getattr(args, "timing", False))))
    else:
        print("\n".join(rep.lines()))
        if getattr(args, "timing", False):
            print(f"wall time {rep.wall_time:.2f}s")
    if getattr(args, "figures", None):
        from .figures import render_report

        for p in render_report(rep, args.figures):
            print(f"figure: {p}", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


# ---------------------------------------------------------------- parser
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--radius", type=int)
    common.add_argument("--box", type=int)
    common.add_argument("--epsilon", type=_epsilon, default=None, help="+1 or -1")
    common.add_argument("--figures", metavar="DIR", help="write PNG figures into DIR")
    common.add_argument("--timing", action="store_true", help="report wall time")

    p = argparse.ArgumentParser(prog="hecke-lab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", parents=[common], help="lattice tables")
    t.add_argument("which", choices=["z2"])
    t.add_argument("--all", action="store_true")
    t.add_argument("--type", action="append")
    t.set_defaults(func=cmd_table)

    w = sub.add_parser("weyl", parents=[common], help="extended affine Weyl group")
    w.add_argument("action", choices=["reduce"])
    w.add_argument("--type", required=True)
    w.add_argument("--elem", required=True, help='JSON {"s": ..., "lambda": [...]} or @file')
    w.set_defaults(func=cmd_weyl)

    h = sub.add_parser("hecke", parents=[common], help="Hecke algebra")
    h.add_argument("action", choices=["mul", "verify-bernstein", "verify-braid"])
    h.add_argument("--type", required=True)
    h.add_argument("--x")
    h.add_argument("--y")
    h.add_argument("--alpha", type=int)
    h.add_argument("--lam", help="lattice vector, e.g. '2,0'")
    h.set_defaults(func=cmd_hecke)

    s = sub.add_parser("shimura", parents=[common], help="the Shimura map phi")
    s.add_argument("action", choices=["check"])
    s.add_argument("--type", required=True)
    s.set_defaults(func=cmd_shimura)

    hb = sub.add_parser("hilbert", parents=[common], help="Hilbert symbol of Q_2")
    hb.add_argument("a", nargs="?")
    hb.add_argument("b", nargs="?")
    hb.add_argument("--csv", help="CSV file of pairs a,b")
    hb.set_defaults(func=cmd_hilbert)

    c = sub.add_parser("coset", parents=[common], help="double-coset normal forms")
    c.add_argument("action", choices=["normalize", "census"])
    c.add_argument("--type", required=True)
    c.add_argument("--input", help="JSON word {A, w, lambda, B} (or a list), or @file")
    c.add_argument("--cap", type=int, default=2)
    c.add_argument("--csv", help="write the census CSV here")
    c.set_defaults(func=cmd_coset)

    r = sub.add_parser("run", parents=[common], help="run a verification suite")
    r.add_argument("suite", choices=sorted(SUITES))
    r.add_argument("--type", action="append")
    r.set_defaults(func=cmd_run)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, RootSystemError, SuiteError, AffineWeylError, CosetError,
            HeckeError, KeyError, TypeError, ValueError) as exc:
        print(f"hecke-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
