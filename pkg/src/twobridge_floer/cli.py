"""Command-line front end: ``twobridge-floer {invariants,hf,stable,census}``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import List, Optional

from . import floer
from .complexes import export_svg, reflect, stable_complex
from .twobridge import (
    KnotError,
    alexander_polynomial,
    amphichiral,
    census_representatives,
    determinant,
    genus,
    inverse_form,
    normalize,
    signature,
)

CENSUS_HEADER = ["p", "q", "det", "sigma", "genus", "alexander", "d_plus1", "d_minus1"]


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def knot_record(knot) -> dict:
    return {"p": knot.p, "q": knot.q}


def invariants_record(knot) -> dict:
    d = floer.d_invariants(knot)
    return {
        "knot": knot_record(knot),
        "invariants": {
            "alexander": alexander_polynomial(knot).symmetric_list(),
            "signature": signature(knot),
            "genus": genus(knot),
            "determinant": determinant(knot),
            "amphichiral": amphichiral(knot),
            "inverse_q": inverse_form(knot).q,
        },
        "d_invariants": {"d_plus1": d.plus_one, "d_minus1": d.minus_one},
    }


def _parse_surgery(text: str):
    if text == "large":
        return "large"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"surgery must be 'large' or an integer, not {text!r}")


def _parse_spinc(text: str):
    if text == "all":
        return "all"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"spinc must be an integer or 'all', not {text!r}")


def hf_module(knot, surgery, spinc: int, flavor: str = "plus"):
    if surgery == "large":
        if flavor == "hat":
            return floer.hf_hat_large_n(knot, spinc)
        if flavor == "minus":
            return floer.hf_minus_large_n(knot, spinc)
        return floer.hf_plus_large_n(knot, spinc)
    if flavor != "plus":
        raise ValueError(f"--flavor {flavor} is only available for large surgery")
    if surgery == 0:
        return floer.hf_plus_zero_surgery(knot, spinc)
    if surgery > 0:
        return floer.hf_plus_n_surgery(knot, surgery, spinc)
    return floer.hf_plus_negative_surgery(knot, -surgery, spinc)


def spinc_range(knot, surgery) -> range:
    if surgery == "large" or surgery == 0:
        return range(0, genus(knot) + 1)
    return range(abs(surgery))


def describe(module) -> str:
    if isinstance(module, floer.HatModule):
        parts = [f"Z^{r}[{g}]" if r > 1 else f"Z[{g}]" for g, r in sorted(module.ranks.items(), reverse=True)]
        return " + ".join(parts) or "0"
    parts = []
    for s in module.summands:
        if isinstance(s, floer.Tower):
            text = "Z[u]" if s.downward else "Z[u^-1]"
            where = s.grading
        elif isinstance(s, floer.Torsion):
            text, where = f"Z[u^-1]/u^-{s.length}", s.bottom
        else:
            text = f"Z^{s.rank}" if s.rank > 1 else "Z"
            where = s.grading
        parts.append(text if where is None else f"{text}[{where}]")
    body = " + ".join(parts) or "0"
    return body + ("  (finite part twisted by Z[T,T^-1])" if module.twisted else "")


# -- subcommands -----------------------------------------------------------------

def cmd_invariants(args) -> int:
    knot = normalize(args.p, args.q)
    rec = invariants_record(knot)
    if args.json:
        print(dumps(rec))
        return 0
    inv, d = rec["invariants"], rec["d_invariants"]
    print(f"knot          {knot}")
    print(f"alexander     {alexander_polynomial(knot)}")
    print(f"signature     {inv['signature']}")
    print(f"genus         {inv['genus']}")
    print(f"determinant   {inv['determinant']}")
    print(f"amphichiral   {'yes' if inv['amphichiral'] else 'no'}")
    print(f"other form    K({knot.p},{inv['inverse_q']})")
    print(f"d(+1), d(-1)  {d['d_plus1']}, {d['d_minus1']}")
    return 0


def cmd_hf(args) -> int:
    knot = normalize(args.p, args.q)
    surgery = args.surgery
    spincs = list(spinc_range(knot, surgery)) if args.spinc == "all" else [args.spinc]
    modules = [(k, hf_module(knot, surgery, k, args.flavor)) for k in spincs]
    if args.json:
        if args.spinc != "all":
            print(dumps(modules[0][1].to_dict()))
        else:
            print(dumps({"knot": knot_record(knot), "surgery": surgery, "flavor": args.flavor,
                         "modules": [{"spinc": k, "module": m.to_dict()} for k, m in modules]}))
        return 0
    name = {"plus": "HF+", "hat": "HF-hat", "minus": "HF-"}[args.flavor]
    for k, m in modules:
        print(f"{name}({knot}, {surgery} surgery, s_{k}) = {describe(m)}")
    return 0


def cmd_stable(args) -> int:
    knot = normalize(args.p, args.q)
    model = stable_complex(knot)
    if args.reflect is not None:
        model = reflect(model, args.reflect)
    if args.svg:
        export_svg(model, args.svg)
    rec = {
        "knot": knot_record(knot),
        "reflection_level": model.reflection_level,
        "gradings": list(model.gradings),
        "arrows": [{"kind": pr.kind, "source": pr.source, "target": pr.target}
                   for pr in model.active_pairs()],
        "euler_characteristic": model.euler_characteristic(),
    }
    if args.json:
        print(dumps(rec))
        return 0
    print(f"{knot}" + ("" if args.reflect is None else f" reflected at level {args.reflect}"))
    print("gradings  " + " ".join(str(g) for g in rec["gradings"]))
    for a in rec["arrows"]:
        print(f"  {a['kind']:<8} x{a['source']} -> x{a['target']}")
    print(f"euler characteristic {rec['euler_characteristic']}")
    return 0


def census_rows(max_p: int) -> List[list]:
    rows = []
    for knot in census_representatives(max_p):
        d = floer.d_invariants(knot)
        alex = ";".join(str(c) for c in alexander_polynomial(knot).symmetric_list())
        rows.append([knot.p, knot.q, determinant(knot), signature(knot), genus(knot),
                     alex, d.plus_one, d.minus_one])
    return rows


def write_census(rows, fh) -> None:
    fh.write(",".join(CENSUS_HEADER) + "\n")
    # QUOTE_NONNUMERIC quotes exactly the alexander column
    writer = csv.writer(fh, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    writer.writerows(rows)


def cmd_census(args) -> int:
    if args.max_p < 3:
        raise KnotError(f"no two-bridge knots with 3 <= p <= {args.max_p}")
    rows = census_rows(args.max_p)
    if args.out in (None, "-"):
        write_census(rows, sys.stdout)
    else:
        with open(args.out, "w", newline="") as fh:
            write_census(rows, fh)
    if args.plot:
        from .report import census_figure
        census_figure(rows, args.plot)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twobridge-floer",
                                     description="Floer homology of surgeries on two-bridge knots K(p,q).")
    sub = parser.add_subparsers(dest="command", required=True)

    def knot_args(sp):
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--json", action="store_true", help="emit one JSON document")

    sp = sub.add_parser("invariants", help="Alexander polynomial, signature, genus, d-invariants")
    knot_args(sp)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("hf", help="HF of a surgery in one or all Spin^c structures")
    knot_args(sp)
    sp.add_argument("--surgery", type=_parse_surgery, required=True, help="'large', 0, n or -n")
    sp.add_argument("--spinc", type=_parse_spinc, default="all")
    sp.add_argument("--flavor", choices=["plus", "hat", "minus"], default="plus")
    sp.set_defaults(func=cmd_hf)

    sp = sub.add_parser("stable", help="stable model complex, optionally reflected")
    knot_args(sp)
    sp.add_argument("--reflect", type=int, metavar="K")
    sp.add_argument("--svg", metavar="FILE")
    sp.set_defaults(func=cmd_stable)

    sp = sub.add_parser("census", help="CSV table of invariants for p <= N")
    sp.add_argument("--max-p", type=int, required=True, metavar="N")
    sp.add_argument("--out", metavar="FILE.csv")
    sp.add_argument("--plot", metavar="FILE", help="also render a summary figure (png, svg, pdf)")
    sp.set_defaults(func=cmd_census)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (KnotError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
