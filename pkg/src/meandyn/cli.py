"""Command line front end.

Exit codes: 0 success, 1 verification mismatch, 2 usage error,
3 budget exceeded.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import averaging, density, folner, gallery, measures, relations, spaces
from .folner import BudgetError, LampBox, ZCentered, ZInitial, ZShifted
from .groups import render

FAMILIES = {
    "z-initial": ZInitial,
    "z-centered": ZCentered,
    "z-shifted": ZShifted,
    "lamp-box": LampBox,
}


def _family(name):
    try:
        return FAMILIES[name]()
    except KeyError:
        raise SystemExit2("unknown family %r; have %s" % (name, sorted(FAMILIES)))


class SystemExit2(Exception):
    pass


def _frac(v):
    return {"fraction": str(v), "float": float(v)} if isinstance(v, Fraction) else v


def _emit(obj):
    print(json.dumps(obj, sort_keys=True, indent=2))


def _space(args):
    return gallery.build(args.system)


def _pair(space, text):
    p = spaces.parse_point(text, space)
    if not isinstance(p, tuple):
        raise SystemExit2("expected a pair like 'a;b', got %r" % (text,))
    return p


def cmd_folner(args):
    fam = _family(args.family)
    out = {"family": args.family, "n": args.n,
           "cardinality": folner.cardinality(fam, args.n, args.budget)}
    if args.list:
        out["elements"] = [render(g) for g in
                           folner.elements(fam, args.n, args.budget)]
    if args.defect:
        group = folner.group_of_family(fam)
        from .groups import parse
        K = [parse(t, group) for t in args.defect.split(";")]
        out["defect"] = _frac(folner.defect(fam, args.n, K, args.budget))
    if args.bound:
        from .groups import parse
        g = parse(args.bound, "lamplighter")
        out["lamp_defect_bound"] = _frac(folner.lamp_defect_bound(g, args.n))
    _emit(out)
    return 0


def cmd_avg(args):
    space = _space(args)
    x = spaces.parse_point(args.x, space)
    y = spaces.parse_point(args.y, space)
    fam = _family(args.family)
    prof = averaging.besicovitch_profile(space, x, y, fam,
                                         tuple(args.window), args.budget)
    if args.csv:
        averaging.profile_to_csv(prof, args.csv)
    _emit({"system": args.system, "family": args.family,
           "window": list(prof.window),
           "values": [_frac(v) for v in prof.values],
           "tail_sup": _frac(prof.tail_sup),
           "stabilized": prof.stabilized})
    return 0


def cmd_density(args):
    space = _space(args)
    pair = _pair(space, args.pair)
    center = _pair(space, args.center)
    nbhd = spaces.Ball(center, Fraction(args.radius).limit_denominator(10 ** 6))
    fam = _family(args.family)
    prof = density.ua_dens_estimate(space, pair, nbhd, fam,
                                    tuple(args.window), args.budget)
    _emit({"system": args.system, "window": list(prof.window),
           "ratios": [_frac(r) for r in prof.ratios],
           "tail_max": _frac(prof.tail_max)})
    return 0


def cmd_measure(args):
    space = _space(args)
    start = spaces.parse_point(args.start, space)
    fam = _family(args.family)
    m = measures.empirical(space, start, fam, args.n, args.budget)
    _emit({"system": args.system, "n": args.n,
           "measure": measures.measure_to_json(m)})
    return 0


def cmd_detect(args):
    profile = gallery.PROFILES[args.profile]
    space = _space(args)
    pair = _pair(space, args.pair)
    cases = {
        "two-point": gallery.TWO_POINT_CASES,
        "three-glued": (gallery.THREE_GLUED_CASES
                        + [gallery.THREE_GLUED_CENTERED_CASE]),
    }.get(args.system, [])
    if args.system == "lamplighter":
        lcases, ks = gallery.lamplighter_cases(profile)
        for case in lcases:
            if case.pair == pair:
                certs = gallery.run_lamplighter_case(case, profile, ks)
                break
        else:
            raise SystemExit2("no registered witnesses for %r" % (args.pair,))
    else:
        for case in cases:
            if case.pair == pair:
                certs = case.run(space, profile)
                break
        else:
            raise SystemExit2("no registered witnesses for %r" % (args.pair,))
    if args.relation != "all":
        if args.relation not in certs:
            raise SystemExit2("no %s certificate for this pair" % args.relation)
        certs = {args.relation: certs[args.relation]}
    _emit({"system": args.system, "pair": args.pair, "profile": args.profile,
           "certificates": {k: c.to_json() for k, c in certs.items()}})
    return 0


def cmd_icer(args):
    if args.system == "two-point":
        hull = relations.icer_hull(gallery.TWO_POINT_MODEL, [("pinf", "minf")])
    elif args.system == "three-glued":
        hull = relations.icer_hull(gallery.THREE_GLUED_MODEL,
                                   [("minf1", "pinf1"), ("pinf1", "minf2"),
                                    ("minf2", "pinf2")])
    else:
        raise SystemExit2("no finite model registered for %r" % args.system)
    _emit({"system": args.system, "classes": sorted({a for a, _ in hull}),
           "hull": sorted(list(p) for p in hull)})
    return 0


def cmd_reproduce(args):
    names = sorted(gallery.SYSTEMS) if args.system == "all" else [args.system]
    ok = True
    reports = []
    for name in names:
        rep = gallery.verify(name, args.profile)
        ok = ok and rep.ok
        reports.append(rep)
    if args.format == "table":
        for rep in reports:
            for row in rep.rows:
                line = "%-14s %-45s %s" % (rep.system, row.name, row.status)
                if row.detail and row.status == "MISMATCH":
                    line += "  " + row.detail
                print(line)
        print("overall: %s" % ("MATCH" if ok else "MISMATCH"))
    else:
        _emit({"profile": args.profile,
               "overall": "MATCH" if ok else "MISMATCH",
               "systems": [{"system": r.system,
                            "rows": [{"name": w.name, "status": w.status,
                                      "detail": w.detail} for w in r.rows]}
                           for r in reports]})
    return 0 if ok else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="meandyn")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("folner", help="enumerate sets and exact defects")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--list", action="store_true")
    p.add_argument("--defect", help="';'-separated elements for K")
    p.add_argument("--bound", help="lamplighter element for the defect bound")
    p.set_defaults(fn=cmd_folner)

    p = sub.add_parser("avg", help="Cesaro average profile of a pair")
    p.add_argument("--system", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--window", type=int, nargs=2, default=[1, 60])
    p.add_argument("--csv")
    p.set_defaults(fn=cmd_avg)

    p = sub.add_parser("density", help="upper density profile of a hitting set")
    p.add_argument("--system", required=True)
    p.add_argument("--pair", required=True, help="pair 'a;b'")
    p.add_argument("--center", required=True, help="ball center pair 'a;b'")
    p.add_argument("--radius", type=float, default=0.25)
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--window", type=int, nargs=2, default=[1, 120])
    p.set_defaults(fn=cmd_density)

    p = sub.add_parser("measure", help="empirical measure along a family")
    p.add_argument("--system", required=True)
    p.add_argument("--start", required=True, help="point or pair")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_measure)

    p = sub.add_parser("detect", help="run registered relation detectors")
    p.add_argument("--system", required=True)
    p.add_argument("--pair", required=True)
    p.add_argument("--relation", default="all",
                   choices=["all", "qrms_f", "srjms_f", "swsm_f",
                            "qrms_banach"])
    p.add_argument("--profile", default="quick", choices=["quick", "full"])
    p.set_defaults(fn=cmd_detect)

    p = sub.add_parser("icer", help="hull on the finite model")
    p.add_argument("--system", required=True)
    p.set_defaults(fn=cmd_icer)

    p = sub.add_parser("reproduce", help="replay a system's expected table")
    p.add_argument("--system", default="all")
    p.add_argument("--profile", default="quick", choices=["quick", "full"])
    p.add_argument("--format", default="table", choices=["table", "json"])
    p.set_defaults(fn=cmd_reproduce)

    for sp in sub.choices.values():
        sp.add_argument("--budget", type=int, default=folner.ATOM_BUDGET)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetError as e:
        print("budget error: %s" % e, file=sys.stderr)
        return 3
    except SystemExit2 as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except ValueError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
