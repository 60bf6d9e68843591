"""Command-line front end.

    motsteen multiply --prime 2 "Sq4" "Q1"
    motsteen multiply --commutator "Sq4" "Q1"
    motsteen convert --to admissible "Q1"
    motsteen adem --a 1 --b 1 --prime 3
    motsteen act --n 1 --cap 16 "Q1" "u1"
    motsteen charclass --R 0,1 --rank 3 --prime 2 --chern
    motsteen table --max-degree 10 --out table.json
    motsteen check --max-degree 12 --out report.json

Output is deterministic: canonical admissible basis unless --basis milnor
is given, terms in the fixed monomial order.  MOTSTEEN_CACHE (or
--cache-dir) points at the directory for persisted Adem tables.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import acceptance
from .ademcheck import discrepancy_report
from .base import BaseScalar
from .cache import AdemCache
from .charclass import FormalBundle, chern_str, s_R, to_chern
from .expr import ParseError, parse_dual, parse_element, parse_module, parse_word_terms
from .module_action import act as module_act
from .steenrod import (
    ADMISSIBLE,
    MILNOR,
    SteenrodElement,
    adem_normalize,
    adem_table,
    convert_basis,
    coproduct,
    multiply,
    pair,
    serialize_admissible,
    specialize,
)


def _common(sub):
    sub.add_argument("--prime", "-l", type=int, default=2, help="the prime l (default 2)")
    sub.add_argument("--basis", choices=[MILNOR, ADMISSIBLE], default=ADMISSIBLE)
    sub.add_argument("--specialize", metavar="tau=T,rho=R", help="substitute residues")
    sub.add_argument("--max-degree", type=int, help="first-degree bound for tables")
    sub.add_argument("--cache-dir", help="Adem table cache directory")
    sub.add_argument("--json", action="store_true", help="emit JSON")
    sub.add_argument("--out", help="write output to a file")


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _parse_specialize(arg):
    vals = {}
    for piece in arg.split(","):
        name, _, num = piece.partition("=")
        name = name.strip()
        if name not in ("tau", "rho") or not num.strip().lstrip("-").isdigit():
            raise SystemExit("bad --specialize, expected tau=T,rho=R")
        vals[name] = int(num)
    return vals.get("tau", 1), vals.get("rho", 0)


def _finish_element(args, x: SteenrodElement) -> str:
    if args.specialize:
        t, r = _parse_specialize(args.specialize)
        x = specialize(x, t, r)
    x = convert_basis(x, args.basis)
    if args.json:
        if x.basis == ADMISSIBLE:
            return json.dumps(serialize_admissible(x), sort_keys=True)
        data = []
        for m, c in x.sorted_terms():
            for (b, a), cc in c.sorted_terms():
                data.append({"E": list(m.E), "R": list(m.R), "coef": {"rho": b, "tau": a, "c": cc}})
        return json.dumps(data, sort_keys=True)
    return str(x)


def cmd_multiply(args) -> int:
    l = args.prime
    x = parse_element(args.exprs[0], l)
    y = parse_element(args.exprs[1], l)
    if args.commutator:
        out = multiply(x, y) - multiply(y, x)
    else:
        out = multiply(x, y)
    _emit(args, _finish_element(args, out))
    return 0


def cmd_normalize(args) -> int:
    l = args.prime
    cache = AdemCache(l, args.cache_dir) if (args.cache_dir or _env_cache()) else None
    terms = parse_word_terms(args.expr, l)
    out = adem_normalize(l, terms, cache)
    _emit(args, _finish_element(args, out))
    return 0


def _env_cache():
    import os

    return os.environ.get("MOTSTEEN_CACHE")


def cmd_convert(args) -> int:
    x = parse_element(args.expr, args.prime)
    args.basis = args.to
    _emit(args, _finish_element(args, x))
    return 0


def cmd_coproduct(args) -> int:
    x = parse_element(args.expr, args.prime)
    tensor = coproduct(x)
    if args.json:
        data = []
        for (m1, m2), c in tensor.sorted_terms():
            for (b, a), cc in c.sorted_terms():
                data.append(
                    {
                        "left": {"E": list(m1.E), "R": list(m1.R)},
                        "right": {"E": list(m2.E), "R": list(m2.R)},
                        "coef": {"rho": b, "tau": a, "c": cc},
                    }
                )
        _emit(args, json.dumps(data, sort_keys=True))
    else:
        _emit(args, str(tensor))
    return 0


def cmd_pair(args) -> int:
    f = parse_dual(args.dual, args.prime)
    x = parse_element(args.expr, args.prime)
    _emit(args, str(pair(f, x)))
    return 0


def cmd_act(args) -> int:
    l = args.prime
    x = parse_element(args.expr, l)
    w = parse_module(args.module, l, args.n, args.cap)
    out = module_act(convert_basis(x, ADMISSIBLE), w)
    if args.specialize:
        t, r = _parse_specialize(args.specialize)
        out = out.substitute(t, r)
    if out.truncated:
        print("warning: truncated at cap %d" % args.cap, file=sys.stderr)
    _emit(args, str(out))
    return 0


def cmd_charclass(args) -> int:
    l = args.prime
    R = [int(p) for p in args.R.split(",")] if args.R else []
    poly = s_R(R, args.rank, l)
    if args.chern:
        _emit(args, chern_str(to_chern(poly)))
    elif args.json:
        data = [{"exponents": list(e), "c": c} for e, c in sorted(poly.terms.items())]
        _emit(args, json.dumps(data, sort_keys=True))
    else:
        _emit(args, str(poly))
    return 0


def cmd_adem(args) -> int:
    l = args.prime
    cache = AdemCache(l, args.cache_dir) if (args.cache_dir or _env_cache()) else None
    out = adem_table(l, args.a, args.b, args.beta, cache)
    _emit(args, _finish_element(args, out))
    return 0


def cmd_table(args) -> int:
    l = args.prime
    if args.max_degree is None:
        raise SystemExit("table requires --max-degree")
    cache = AdemCache(l, args.cache_dir) if (args.cache_dir or _env_cache()) else None
    records = []
    bound = args.max_degree
    for b in range(1, bound + 1):
        for a in range(1, bound + 1):
            if a + b > bound:
                continue
            da = 2 * a * (l - 1)
            db = 2 * b * (l - 1)
            if da + db > 2 * bound * (l - 1):
                continue
            if a < l * b:
                expansion = adem_table(l, a, b, False, cache)
            else:
                expansion = convert_basis(
                    multiply(_p(l, a), _p(l, b)), ADMISSIBLE
                )
            records.append({"a": a, "b": b, "expansion": serialize_admissible(expansion)})
    _emit(args, json.dumps({"prime": l, "records": records}, sort_keys=True))
    return 0


def _p(l, k):
    from .steenrod import make_named

    return make_named(l, "P", k)


def cmd_check(args) -> int:
    cache = AdemCache(2, args.cache_dir) if (args.cache_dir or _env_cache()) else None
    results = acceptance.run_all(verbose=True)
    report = discrepancy_report(args.max_degree or 12, cache)
    text = json.dumps(report, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print("report written to %s" % args.out)
    else:
        print(text)
    return 0 if all(ok for _, ok, _ in results) else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="motsteen", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="verb", required=True)

    p = subs.add_parser("multiply", help="product of two elements")
    p.add_argument("exprs", nargs=2)
    p.add_argument("--commutator", action="store_true", help="emit x y - y x")
    _common(p)
    p.set_defaults(fn=cmd_multiply)

    p = subs.add_parser("normalize", help="rewrite a generator word into the admissible basis")
    p.add_argument("expr")
    _common(p)
    p.set_defaults(fn=cmd_normalize)

    p = subs.add_parser("convert", help="change basis")
    p.add_argument("expr")
    p.add_argument("--to", choices=[MILNOR, ADMISSIBLE], required=True)
    _common(p)
    p.set_defaults(fn=cmd_convert)

    p = subs.add_parser("coproduct", help="comultiplication of an element")
    p.add_argument("expr")
    _common(p)
    p.set_defaults(fn=cmd_coproduct)

    p = subs.add_parser("pair", help="pair a dual expression against an element")
    p.add_argument("dual")
    p.add_argument("expr")
    _common(p)
    p.set_defaults(fn=cmd_pair)

    p = subs.add_parser("act", help="act on a module element")
    p.add_argument("expr")
    p.add_argument("module")
    p.add_argument("--n", type=int, default=3, help="number of factors")
    p.add_argument("--cap", type=int, default=16, help="v-degree truncation cap")
    _common(p)
    p.set_defaults(fn=cmd_act)

    p = subs.add_parser("charclass", help="characteristic class of the operation dual to xi(R)")
    p.add_argument("--R", default="", help="comma-separated exponents r_1,r_2,...")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--chern", action="store_true", help="express in elementary symmetric classes")
    _common(p)
    p.set_defaults(fn=cmd_charclass)

    p = subs.add_parser("adem", help="admissible expansion of an inadmissible pair")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--beta", action="store_true", help="expand P^a B^b instead of P^a P^b")
    _common(p)
    p.set_defaults(fn=cmd_adem)

    p = subs.add_parser("table", help="write the pair-expansion table up to --max-degree")
    _common(p)
    p.set_defaults(fn=cmd_table)

    p = subs.add_parser("check", help="run acceptance checks and the Adem discrepancy report")
    _common(p)
    p.set_defaults(fn=cmd_check)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
