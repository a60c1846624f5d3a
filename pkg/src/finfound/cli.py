"""Batch command line front end.

Most subcommands read a JSON document (a path, ``-`` for stdin, or
``--json TEXT``) that is validated against ``schema/document-v1.json``
before anything else happens.  Exit codes: 0 success, 1 a well-formed
input with a negative answer, 2 malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources

import jsonschema

from . import boolattice as ba
from . import codec, games, lebesgue, logic, order, setalgebra
from .config import DEFAULT_BOUNDS
from .errors import InputError, NegativeResult

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


def load_schema(name: str) -> dict:
    text = resources.files("finfound").joinpath("schema", name).read_text()
    return json.loads(text)


# ---- value conversion -------------------------------------------------

def _label(x):
    return frozenset(_label(y) for y in x) if isinstance(x, list) else x


def _sort_key(x):
    if isinstance(x, (frozenset, set)):
        return (1, len(x), sorted(map(_sort_key, x)))
    return (0, 0, [repr(type(x).__name__), repr(x)])


def jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (frozenset, set)):
        return [jsonable(y) for y in sorted(x, key=_sort_key)]
    if isinstance(x, (list, tuple)):
        return [jsonable(y) for y in x]
    if isinstance(x, dict):
        return {show(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (logic.Var, logic.And, logic.Not)):
        return logic.to_text(x)
    if x is order.ABSENT:
        return None
    return x


def show(x) -> str:
    if isinstance(x, (frozenset, set)):
        return "{" + ",".join(show(y) for y in sorted(x, key=_sort_key)) + "}"
    if isinstance(x, tuple):
        return "<" + ",".join(show(y) for y in x) + ">"
    if isinstance(x, (logic.Var, logic.And, logic.Not)):
        return logic.to_text(x)
    return str(x)


def _moves(x) -> tuple:
    return tuple(int(c) for c in x) if isinstance(x, str) else tuple(x)


# ---- output -----------------------------------------------------------

class Report:
    def __init__(self, command, args):
        self.command = command
        self.structured = args.format == "structured"
        self.decimal = getattr(args, "decimal", False)
        self.lines = []
        self.data = {}

    def line(self, text=""):
        self.lines.append(text)

    def put(self, key, value):
        self.data[key] = jsonable(value)

    def frac(self, x: Fraction) -> str:
        s = str(x)
        if self.decimal:
            s += f" (approx {float(x):.6g})"
        return s

    def emit(self, status, message=None, out=sys.stdout):
        if self.structured:
            doc = {"version": 1, "command": self.command, "status": status,
                   "result": self.data if status != "error" else None}
            if message:
                doc["message"] = message
            print(json.dumps(doc, indent=2), file=out)
        else:
            for l in self.lines:
                print(l, file=out)
            if message:
                print(message, file=out if status != "error" else sys.stderr)


# ---- document loading -------------------------------------------------

def read_document(args) -> dict:
    if getattr(args, "json", None) is not None:
        text = args.json
    elif args.doc in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(args.doc, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise InputError(f"cannot read {args.doc}: {e.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e}") from None
    try:
        jsonschema.validate(doc, load_schema("document-v1.json"))
    except jsonschema.ValidationError as e:
        where = "/".join(map(str, e.absolute_path)) or "<root>"
        raise InputError(f"schema violation at {where}: {e.message}") from None
    return doc


def _need(doc, key, sub=None):
    if key not in doc:
        raise InputError(f"document needs a '{key}' object")
    if sub is not None:
        for s in sub:
            if s not in doc[key]:
                raise InputError(f"'{key}' needs a '{s}' field")
    return doc[key]


def build_poset(d) -> order.FinitePoset:
    if "divisors_of" in d:
        return order.divisibility_poset(d["divisors_of"])
    els = [_label(e) for e in d["elements"]]
    if "leq" in d:
        return order.validate_poset(els, d["leq"])
    idx = {e: i for i, e in enumerate(els)}
    pairs = [(_label(a), _label(b)) for a, b in d.get("pairs", d.get("covers", []))]
    for a, b in pairs:
        if a not in idx or b not in idx:
            raise InputError(f"pair ({show(a)}, {show(b)}) mentions an unknown element")
    if "covers" in d:
        return order.from_covers(els, pairs)
    n = len(els)
    m = [[False] * n for _ in range(n)]
    for a, b in pairs:
        m[idx[a]][idx[b]] = True
    return order.validate_poset(els, m)


def build_lattice(d):
    if "powerset" in d:
        return ba.powerset_algebra([_label(x) for x in d["powerset"]])
    if "poset" in d:
        return ba.lattice_from_poset(build_poset(d["poset"]))
    t = d["tables"]
    els = [_label(e) for e in t["elements"]]
    n = len(els)
    if len(t["meet"]) != n or len(t["join"]) != n or len(t["neg"]) != n:
        raise InputError("table sizes do not match the element list")
    meet, join = {}, {}
    for i, a in enumerate(els):
        if len(t["meet"][i]) != n or len(t["join"][i]) != n:
            raise InputError("table sizes do not match the element list")
        for j, b in enumerate(els):
            meet[(a, b)] = _label(t["meet"][i][j])
            join[(a, b)] = _label(t["join"][i][j])
    neg = {a: _label(x) for a, x in zip(els, t["neg"])}
    return ba.boolean_algebra_from_tables(els, meet, join, neg)


def build_algebra(d) -> ba.BooleanAlgebra:
    x = build_lattice(d)
    return x if isinstance(x, ba.BooleanAlgebra) else ba.boolean_structure(x)


def build_family(d) -> setalgebra.SetFamily:
    return setalgebra.family([_label(p) for p in d["universe"]],
                             [frozenset(_label(p) for p in m) for m in d["members"]])


def build_intervals(pairs) -> lebesgue.IntervalSet:
    return lebesgue.normalize([(a, b) for a, b in pairs])


# ---- subcommands ------------------------------------------------------

def cmd_codec(args, rep):
    op = args.op
    if op == "pair":
        if len(args.values) != 2:
            raise InputError("pair needs two numbers")
        n = codec.pair(*args.values)
        rep.put("value", n)
        rep.line(str(n))
    elif op == "unpair":
        if len(args.values) != 1:
            raise InputError("unpair needs one number")
        x, y = codec.unpair(args.values[0])
        rep.put("pair", [x, y])
        rep.line(f"{x} {y}")
    elif op == "seq-encode":
        n = codec.seq_encode(args.values)
        rep.put("value", n)
        rep.line(str(n))
    else:
        if len(args.values) != 1:
            raise InputError("seq-decode needs one number")
        s = codec.seq_decode(args.values[0])
        rep.put("sequence", list(s))
        rep.line(" ".join(map(str, s)))


def cmd_order(args, rep):
    doc = read_document(args)
    if args.op == "terminates":
        r = _need(doc, "reduction")
        rs = order.ReductionSystem([_label(c) for c in r["carrier"]],
                                   [(_label(a), _label(b)) for a, b in r["step"]])
        ok, cyc = order.is_terminating(rs)
        rep.put("terminating", ok)
        rep.put("cycle", cyc)
        if ok:
            rep.line("terminating")
            return
        rep.line("not terminating: cycle " + " -> ".join(map(show, cyc + cyc[:1])))
        return "negative"
    p = build_poset(_need(doc, "poset"))
    if args.op == "validate":
        ex = order.extrema(p) if len(p) else None
        rep.put("elements", list(p.elements))
        rep.line(f"valid partial order on {len(p)} elements")
        if ex:
            rep.put("minimal", ex.minimal)
            rep.put("maximal", ex.maximal)
            rep.put("least", ex.least)
            rep.put("greatest", ex.greatest)
            rep.line("minimal: " + " ".join(map(show, ex.minimal)))
            rep.line("maximal: " + " ".join(map(show, ex.maximal)))
            rep.line(f"least: {show(ex.least) if ex.least is not order.ABSENT else 'none'}")
            rep.line(f"greatest: {show(ex.greatest) if ex.greatest is not order.ABSENT else 'none'}")
    elif args.op == "extend":
        t = order.linear_extension(p)
        chain = sorted(t.elements, key=lambda e: sum(t.le(x, e) for x in t.elements))
        rep.put("order", chain)
        rep.line(" < ".join(map(show, chain)))
    else:
        bound = args.bound if args.bound is not None else DEFAULT_BOUNDS.downset_elements
        lat, psi = order.down_set_lattice(p, bound=bound)
        irr, _ = order.irreducibles_and_covers(lat)
        rep.put("downsets", list(lat.downsets))
        rep.put("principal", {t: psi[t] for t in p.elements})
        rep.put("join_irreducible", list(irr))
        rep.line(f"{len(lat.downsets)} down sets")
        for s in lat.downsets:
            rep.line("  " + show(s))
        rep.line("join-irreducible: " + " ".join(show(s) for s in irr))


def _class_text(c):
    kind = "ideal" if c.is_ideal else "filter" if c.is_filter else "neither ideal nor filter"
    out = [kind]
    if c.is_ideal or c.is_filter:
        out.append("prime" if c.is_prime else "not prime")
        out.append("maximal" if c.is_maximal else "not maximal")
    return ", ".join(out)


def cmd_boolalg(args, rep):
    doc = read_document(args)
    d = _need(doc, "algebra")
    if args.op == "classify":
        if "subset" not in d:
            raise InputError("'algebra' needs a 'subset' field")
        lat = build_lattice(d)
        c = ba.classify_subset(lat, [_label(x) for x in d["subset"]])
        rep.put("is_ideal", c.is_ideal)
        rep.put("is_filter", c.is_filter)
        rep.put("is_prime", c.is_prime)
        rep.put("is_maximal", c.is_maximal)
        rep.put("witness", c.witness or {})
        rep.line(_class_text(c))
        for k, w in (c.witness or {}).items():
            rep.line(f"  {k}: " + " ".join(map(show, w)))
        return
    b = build_algebra(d)
    if args.op == "ultrafilters":
        us = ba.ultrafilters(b)
        rep.put("ultrafilters", us)
        rep.put("atoms", b.atoms())
        rep.line(f"{len(us)} ultrafilters")
        for u in us:
            rep.line("  " + show(u))
    elif args.op == "quotient":
        if "ideal" not in d:
            raise InputError("'algebra' needs an 'ideal' field")
        q = ba.quotient(b, [_label(x) for x in d["ideal"]])
        rep.put("classes", [{"representative": q.representative[c], "members": c} for c in q.classes])
        rep.line(f"{len(q)} classes")
        for c in q.classes:
            rep.line(f"  [{show(q.representative[c])}] = {show(c)}")
    else:
        st = ba.stone_representation(b)
        rep.put("points", len(st.ultrafilters))
        rep.put("ultrafilters", st.ultrafilters)
        rep.put("psi", st.psi)
        rep.line(f"{len(st.ultrafilters)} ultrafilters (points U0..U{len(st.ultrafilters) - 1})")
        for x in b.elements:
            rep.line(f"  psi({show(x)}) = " + "{" + ",".join(f"U{i}" for i in sorted(st.psi[x])) + "}")


def _formula_lines(exprs, path):
    out = list(exprs or [])
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                out += [l.strip() for l in fh if l.strip() and not l.lstrip().startswith("#")]
        except OSError as e:
            raise InputError(f"cannot read {path}: {e.strerror}") from None
    return [logic.parse(t) for t in out]


def cmd_sat(args, rep):
    bound = args.bound if args.bound is not None else DEFAULT_BOUNDS.sat_variables
    if args.op == "solve":
        fs = _formula_lines(args.expr, args.file)
        model = logic.sat(fs, bound=bound)
        rep.put("satisfiable", model is not None)
        rep.put("model", model)
        if model is None:
            rep.line("UNSAT")
            return "negative"
        rep.line("SAT")
        for k, v in model.items():
            rep.line(f"  {k}={v}")
    else:
        base = _formula_lines(args.base, args.base_file)
        enum = _formula_lines(args.enum, args.enum_file)
        if not logic.is_satisfiable(base, bound=bound):
            rep.line("UNSAT")
            rep.put("satisfiable", False)
            return "negative"
        res = logic.compactness_chain(base, enum)
        rep.put("satisfiable", True)
        rep.put("steps", list(res.steps))
        rep.put("members", sorted(logic.to_text(f) for f in res.members))
        rep.put("valuation", res.valuation)
        for i, s in enumerate(res.steps, 1):
            rep.line(f"M{i}: + {logic.to_text(s)}")
        rep.line("valuation: " + " ".join(f"{k}={v}" for k, v in res.valuation.items()))


def cmd_setalg(args, rep):
    if args.op == "cylinder":
        if args.sum is not None:
            words = setalgebra.coin_event(args.k, args.sum)
        else:
            words = args.words
        v = setalgebra.cylinder_measure(args.k, words)
        rep.put("measure", v)
        rep.line(rep.frac(v))
        return
    doc = read_document(args)
    f = build_family(_need(doc, "family"))
    if args.op == "atoms":
        atoms = setalgebra.atom_partition(f)
        rep.put("atoms", list(atoms))
        for a in atoms:
            rep.line(show(a))
    elif args.op == "algebra":
        alg = setalgebra.generate_algebra(f)
        rep.put("members", list(alg.members))
        rep.line(f"{len(alg)} sets")
        for a in alg.members:
            rep.line("  " + show(a))
    else:
        lam = setalgebra.lambda_closure(f)
        alg = setalgebra.generate_algebra(f)
        equal = set(lam.members) == set(alg.members)
        rep.put("pi_closed", f.is_pi_closed())
        rep.put("lambda_size", len(lam))
        rep.put("algebra_size", len(alg))
        rep.put("equal", equal)
        rep.line(f"intersection-closed: {'yes' if f.is_pi_closed() else 'no'}")
        rep.line(f"lambda closure: {len(lam)} sets; generated algebra: {len(alg)} sets")
        rep.line("equal" if equal else "not equal")


def cmd_measure(args, rep):
    doc = read_document(args)
    d = _need(doc, "measure")
    if args.op == "length":
        s = build_intervals(_need(doc, "measure", ["set"])["set"])
        rep.put("set", s.components)
        rep.put("length", s.length())
        rep.line(f"{s}: {rep.frac(s.length())}")
    elif args.op == "outer":
        _need(doc, "measure", ["target", "cover"])
        t = build_intervals(d["target"])
        cov = [build_intervals(c) for c in d["cover"]]
        try:
            r = lebesgue.outer_measure(t, cov)
        except lebesgue.NotACover as e:
            rep.put("covered", False)
            rep.put("witness", e.witness)
            rep.line(f"not a cover: {e.witness} is uncovered")
            return "negative"
        rep.put("covered", True)
        rep.put("cover_sum", r.total)
        rep.put("outer_measure", r.target_length)
        rep.line(f"cover sum {rep.frac(r.total)} >= length {rep.frac(r.target_length)}")
    else:
        _need(doc, "measure", ["set", "test"])
        a, x = build_intervals(d["set"]), build_intervals(d["test"])
        r = lebesgue.caratheodory_check(a, x)
        rep.put("ok", r.ok)
        rep.put("inside", r.inside)
        rep.put("outside", r.outside)
        rep.put("whole", r.whole)
        rep.line(f"{rep.frac(r.inside)} + {rep.frac(r.outside)} = {rep.frac(r.whole)}: "
                 + ("splits" if r.ok else "does not split"))
        if not r.ok:
            return "negative"


def cmd_cantor(args, rep):
    bound = args.bound if args.bound is not None else DEFAULT_BOUNDS.cantor_depth
    rows = []
    rep.line("n\tcomponents\tlength")
    for n in range(args.depth + 1):
        c = lebesgue.cantor_set(n, bound=bound)
        rows.append({"n": n, "components": len(c.components), "length": str(c.length())})
        rep.line(f"{n}\t{len(c.components)}\t{rep.frac(c.length())}")
    rep.put("rows", rows)


PREDICATES = {
    "all": lambda p: True,
    "none": lambda p: False,
    "sum-even": lambda p: sum(p) % 2 == 0,
    "last-equal": lambda p: p[-1] == p[-2],
}


def cmd_game(args, rep):
    doc = read_document(args)
    bound = args.bound if args.bound is not None else DEFAULT_BOUNDS.game_positions
    if args.op == "solve":
        gd = _need(doc, "game")
        win = PREDICATES[gd["predicate"]] if "predicate" in gd else [_moves(w) for w in gd["winning"]]
        g = games.GameSpec(gd["m"], gd["d"], win)
        sol = games.solve(g, bound=bound)
        rep.put("winner", sol.winner)
        rep.put("strategy", [{"prefix": list(k), "move": v} for k, v in sol.strategy.items()])
        rep.line(f"winner: {sol.winner}")
        for k, v in sol.strategy.items():
            rep.line(f"  {''.join(map(str, k)) or '()'} -> {v}")
    else:
        cd = _need(doc, "choice")
        fam = [[_moves(w) for w in X] for X in cd["family"]]
        picks = games.choice_from_determinacy(fam, cd["m"], cd["d"])
        rep.put("choices", [list(p) for p in picks])
        for i, p in enumerate(picks):
            rep.line(f"f(X{i}) = {''.join(map(str, p))}")


# ---- argument parsing -------------------------------------------------

def _add_doc(p):
    p.add_argument("doc", nargs="?", help="JSON document path, or - for stdin")
    p.add_argument("--json", help="the JSON document given inline")


def _nat(s):
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{s!r} is not an integer") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"{s} is negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "structured"], default="text")
    common.add_argument("--bound", type=_nat, help="enumeration limit for the command")
    common.add_argument("--decimal", action="store_true",
                        help="also print approximate decimals next to exact fractions")

    ap = argparse.ArgumentParser(prog="finfound", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("codec", parents=[common], help="pairing and sequence codes")
    p.add_argument("op", choices=["pair", "unpair", "seq-encode", "seq-decode"])
    p.add_argument("values", type=_nat, nargs="+")
    p.set_defaults(func=cmd_codec)

    p = sub.add_parser("order", parents=[common], help="finite partial orders")
    p.add_argument("op", choices=["validate", "extend", "terminates", "downsets"])
    _add_doc(p)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("boolalg", parents=[common], help="lattices and Boolean algebras")
    p.add_argument("op", choices=["classify", "ultrafilters", "quotient", "stone"])
    _add_doc(p)
    p.set_defaults(func=cmd_boolalg)

    p = sub.add_parser("sat", parents=[common], help="propositional satisfiability")
    p.add_argument("op", choices=["solve", "chain"])
    p.add_argument("--expr", action="append", help="formula (repeatable)")
    p.add_argument("--file", help="file with one formula per line")
    p.add_argument("--base", action="append", help="chain: starting formula (repeatable)")
    p.add_argument("--base-file")
    p.add_argument("--enum", action="append", help="chain: enumerated formula (repeatable)")
    p.add_argument("--enum-file")
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("setalg", parents=[common], help="finite set algebras")
    p.add_argument("op", choices=["atoms", "algebra", "pilambda", "cylinder"])
    _add_doc(p)
    p.add_argument("--k", type=_nat, help="cylinder: word length")
    p.add_argument("--words", nargs="*", default=[], help="cylinder: binary words")
    p.add_argument("--sum", type=_nat, help="cylinder: all words with this many ones")
    p.set_defaults(func=cmd_setalg)

    p = sub.add_parser("measure", parents=[common], help="interval length measure")
    p.add_argument("op", choices=["length", "outer", "cara"])
    _add_doc(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("cantor", parents=[common], help="Cantor set table")
    p.add_argument("--depth", type=_nat, required=True)
    p.set_defaults(func=cmd_cantor)

    p = sub.add_parser("game", parents=[common], help="finite games")
    p.add_argument("op", choices=["solve", "choice"])
    _add_doc(p)
    p.set_defaults(func=cmd_game)
    return ap


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    name = args.command + (f" {args.op}" if hasattr(args, "op") else "")
    rep = Report(name, args)
    if args.command == "setalg" and args.op == "cylinder" and args.k is None:
        rep.emit("error", "cylinder needs --k", out=out)
        return EXIT_INPUT
    try:
        status = args.func(args, rep) or "ok"
    except NegativeResult as e:
        rep.emit("negative", str(e), out=out)
        return EXIT_NEGATIVE
    except InputError as e:
        rep.emit("error", f"error: {e}", out=out)
        return EXIT_INPUT
    rep.emit(status, out=out)
    return EXIT_NEGATIVE if status == "negative" else EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
