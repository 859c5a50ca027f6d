"""Command-line entry point.

Exit codes: 0 on success, 2 on invalid input, 1 when a rank guard stops a
computation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import classify as cls_mod
from . import constructions as con
from . import floer
from .classify import RankGuardError, is_isomorphic, recognize, root_decomposition, table_annotation
from .enumeration import delta_lattice, reduced_part, short_vectors, vectors_of_norm
from .lattice import Lattice, LatticeError, complement, negate, pairing_gcd
from .names import make
from .obstruction import DEFAULT_PADDING, SURVIVED_DELTA, SURVIVED_ROKHLIN, classify_fillings
from .textfmt import format_lattice, lattice_to_json, parse_lattice


class UsageError(Exception):
    pass


def frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------- input helpers

def _lattice_arg(args, attr: str = "lattice", file_attr: str = "file") -> Lattice:
    text = getattr(args, attr, None)
    path = getattr(args, file_attr, None)
    if path:
        if text:
            raise UsageError("give either a lattice argument or --file, not both")
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}") from None
    if not text:
        raise UsageError("a lattice is required (name, name:<tag>, gram:..., or --file)")
    return parse_lattice(text)


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _vector_arg(L: Lattice, text: str) -> List[int]:
    if any(ch in text for ch in "he") and not text.replace(",", "").replace("-", "").isdigit():
        if L.rank < 1 or L.gram[0][0] != 1:
            raise UsageError("symbolic classes need an ambient I(1,k)")
        v = con.blowup_class(text, L.rank - 1)
        if v.parent.gram != L.gram:
            raise UsageError("symbolic classes need an ambient I(1,k)")
        return list(v.coords)
    v = _int_list(text)
    if len(v) != L.rank:
        raise UsageError(f"vector has {len(v)} coordinates, lattice has rank {L.rank}")
    return v


def _knot_spec(args) -> floer.KnotSpec:
    if args.knot == "custom":
        if args.vseq is None or args.g4 is None:
            raise UsageError("--knot custom needs --vseq and --g4")
        base = None
        if args.base:
            base = [make(s.strip()) for s in _split_top(args.base)]
        return floer.custom_knot(_int_list(args.vseq), args.g4, base)
    if args.vseq is not None or args.g4 is not None:
        raise UsageError("--vseq/--g4 only apply to --knot custom")
    spec = floer.BUILTIN_KNOTS[args.knot]
    if getattr(args, "base", None):
        spec = floer.KnotSpec(spec.label, spec.g4_bound, spec.v_seq,
                              tuple(make(s.strip()) for s in _split_top(args.base)))
    return spec


def _split_top(text: str) -> List[str]:
    """Split on commas outside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        depth += (ch == "(") - (ch == ")")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [q for q in parts if q.strip()]


def _name_of(L: Lattice) -> str:
    nm = recognize(L) if L.is_positive_definite else None
    return str(nm) if nm is not None else "unnamed"


# ---------------------------------------------------------------- emitters

def _emit(args, data: dict, lines: List[str]):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=False))
    else:
        for ln in lines:
            print(ln)


# ---------------------------------------------------------------- commands

def cmd_info(args):
    L = _lattice_arg(args)
    sig = L.signature
    data = {"rank": L.rank, "det": L.det, "signature": list(sig), "even": L.is_even,
            "positive_definite": L.is_positive_definite}
    lines = [f"rank: {L.rank}", f"det: {L.det}", f"signature: {sig[0]},{sig[1]},{sig[2]}",
             f"parity: {'even' if L.is_even else 'odd'}",
             f"positive definite: {str(L.is_positive_definite).lower()}"]
    if L.is_positive_definite:
        cls_mod._guard(L)
        k, red = reduced_part(L)
        roots = str(root_decomposition(L))
        d = delta_lattice(L)
        name = _name_of(L)
        data.update({"units": k, "reduced_rank": red.rank, "roots": roots, "delta": frac(d), "name": name})
        lines += [f"unit summands: {k}", f"reduced rank: {red.rank}", f"root type: {roots}",
                  f"delta: {frac(d)}", f"name: {name}"]
        ann = table_annotation(red)
        if ann:
            data["table"] = ann
            lines.append("table: " + ", ".join(ann))
    data["lattice"] = lattice_to_json(L)
    _emit(args, data, lines)


def cmd_delta(args):
    L = _lattice_arg(args)
    cls_mod._guard(L)
    d = delta_lattice(L)
    _emit(args, {"delta": frac(d)}, [f"delta: {frac(d)}"])


def cmd_complement(args):
    L = _lattice_arg(args)
    cls_mod._guard(L)
    v = _vector_arg(L, args.vector)
    C = complement(L, v)
    n2 = L.norm(v)
    g = pairing_gcd(L, v)
    data = {"vector": v, "norm": n2, "pairing_gcd": g, "rank": C.rank, "det": C.det,
            "complement": lattice_to_json(C)}
    lines = [f"vector: {','.join(map(str, v))}", f"norm: {n2}", f"pairing gcd: {g}",
             f"rank: {C.rank}", f"det: {C.det}"]
    if C.rank and not C.is_positive_definite and negate(C).is_positive_definite:
        nm = _name_of(negate(C))
        data["negated_name"] = nm
        lines.append(f"negated name: {nm}")
    elif C.is_positive_definite:
        nm = _name_of(C)
        data["name"] = nm
        lines.append(f"name: {nm}")
    lines.append(format_lattice(C, prefer_name=False))
    _emit(args, data, lines)


def cmd_isom(args):
    L1 = _lattice_arg(args, "first", "file1")
    L2 = _lattice_arg(args, "second", "file2")
    r = is_isomorphic(L1, L2)
    data = {"isomorphic": r.isomorphic, "reason": r.reason or None, "witness": r.witness}
    lines = [f"isomorphic: {str(r.isomorphic).lower()}"]
    if r.isomorphic:
        lines.append("witness:")
        lines += [" ".join(map(str, row)) for row in r.witness]
    else:
        lines.append(f"reason: {r.reason}")
    _emit(args, data, lines)


def cmd_vectors(args):
    L = _lattice_arg(args)
    cls_mod._guard(L)
    if not L.is_positive_definite:
        raise UsageError("vector enumeration needs a positive definite lattice")
    if (args.norm is None) == (args.bound is None):
        raise UsageError("give exactly one of --norm or --bound")
    if args.norm is not None:
        vecs = {args.norm: vectors_of_norm(L, args.norm).coords()}
    else:
        vecs = short_vectors(L, args.bound)
    data = {"counts": {str(k): 2 * len(v) for k, v in sorted(vecs.items())}}
    lines = []
    for k, vs in sorted(vecs.items()):
        lines.append(f"norm {k}: {2 * len(vs)} vectors ({len(vs)} up to sign)")
        if args.list:
            lines += ["  " + " ".join(map(str, v)) for v in vs]
    if args.list:
        data["vectors"] = {str(k): [list(v) for v in vs] for k, vs in sorted(vecs.items())}
    _emit(args, data, lines)


def cmd_dtable(args):
    if args.n < 1:
        raise UsageError("--n must be positive")
    spec = _knot_spec(args)
    t = floer.d_table(spec, args.n)
    dy = floer.delta_Y(spec, args.n)
    data = {"knot": spec.label, "n": args.n, "d": {str(i): frac(d) for i, d in t.rows()}, "delta": frac(dy)}
    lines = [f"knot: {spec.label}", f"n: {args.n}", "i | d"]
    lines += [f"{i} | {frac(d)}" for i, d in t.rows()]
    lines.append(f"delta(Y): {frac(dy)}")
    _emit(args, data, lines)


def cmd_classify(args):
    if not 1 <= args.nmax <= 16:
        raise UsageError("--nmax must lie in 1..16")
    if args.padding < 0:
        raise UsageError("--padding must be non-negative")
    spec = _knot_spec(args)
    table = classify_fillings(spec, args.nmax, args.padding)
    rows_json = []
    lines = [f"knot: {spec.label}", "n | reduced lattices | flags"]
    for n in sorted(table.rows):
        names, flags, entries = [], [], []
        for e in table.rows[n]:
            nm = e.pretty() if args.pretty else e.name
            names.append(nm)
            extra = sorted(e.flags - {SURVIVED_DELTA, SURVIVED_ROKHLIN})
            if extra:
                flags.append(f"{nm}: {','.join(extra)}")
            entries.append({"name": e.name, "flags": sorted(e.flags), "delta": frac(e.delta),
                            "rokhlin_audit": e.rokhlin_audit, "lattice": lattice_to_json(e.lattice)})
        lines.append(f"{n} | {', '.join(names) if names else '-'} | {'; '.join(flags) if flags else '-'}")
        if args.grams:
            for e in table.rows[n]:
                lines.append(f"  {e.name}:")
                lines += ["    " + " ".join(map(str, r)) for r in e.lattice.gram]
        rows_json.append({"n": n, "delta_Y": frac(floer.delta_Y(spec, n)), "lattices": entries})
    _emit(args, {"knot": spec.label, "padding": table.padding, "rows": rows_json}, lines)


def cmd_construct(args):
    if args.what == "hj":
        try:
            f = Fraction(args.fraction)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"expected a fraction a/b, got {args.fraction!r}") from None
        ts = con.hj_expansion(f.numerator, f.denominator)
        data = {"fraction": frac(f), "expansion": ts, "value": frac(con.hj_evaluate(ts))}
        lines = [f"fraction: {frac(f)}", f"expansion: {','.join(map(str, ts))}",
                 f"value: {frac(con.hj_evaluate(ts))}"]
        _emit(args, data, lines)
    elif args.what == "seifert":
        s = con.SeifertData.parse(args.data)
        g = con.absorb_zero_vertices(con.seifert_plumbing(s))
        L = con.plumbing_gram(g)
        data = {"seifert": str(s.normalized()), "euler": frac(s.euler),
                "vertices": [list(v) for v in g.vertices], "edges": [list(e) for e in g.edges],
                "rank": L.rank, "det": L.det, "positive_definite": L.is_positive_definite,
                "lattice": lattice_to_json(L)}
        lines = [f"seifert: {s.normalized()}", f"euler: {frac(s.euler)}",
                 "weights: " + ",".join(str(w) for _, w in g.vertices),
                 "edges: " + " ".join(f"{a}-{b}" for a, b in g.edges),
                 f"rank: {L.rank}", f"det: {L.det}",
                 f"positive definite: {str(L.is_positive_definite).lower()}"]
        if L.is_positive_definite:
            nm = _name_of(L)
            data["name"] = nm
            lines.append(f"name: {nm}")
        lines.append(format_lattice(L, prefer_name=False))
        _emit(args, data, lines)
    else:
        v = None
        if args.vector:
            v = con.blowup_class(args.vector)
        r = con.verify_identity(args.family, args.n, base=args.base, vector=v)
        data = {"family": r.family, "n": r.n, "ambient": r.ambient, "vector": r.vector,
                "complement": r.complement, "isomorphic": r.isomorphic,
                "details": {k: (v if isinstance(v, (int, str, bool)) else str(v)) for k, v in r.details.items()}}
        _emit(args, data, r.lines())
    return 0


# ---------------------------------------------------------------- parser

def _add_lattice_input(p, name="lattice", file_flag="--file", dest="file"):
    p.add_argument(name, nargs="?", help="lattice: a name (E8, D5+diag(2)), name:<tag>, or 'gram:r1;r2;...'")
    p.add_argument(file_flag, dest=dest, metavar="PATH", help="read the lattice from a file (text or JSON form)")


def _add_knot(p, with_base=False):
    p.add_argument("--knot", required=True, choices=["U", "T23", "T25", "custom"], help="knot to operate on")
    p.add_argument("--vseq", metavar="a,b,...", help="V-sequence V0,V1,... for --knot custom")
    p.add_argument("--g4", type=int, metavar="G", help="slice genus bound for --knot custom")
    if with_base:
        p.add_argument("--base", metavar="NAMES",
                       help="comma-separated reduced unimodular base fillings, e.g. 'empty,E8'")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit machine-readable JSON instead of text")

    p = argparse.ArgumentParser(prog="latfill", description="Exact lattice computations for definite fillings of knot surgeries.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    s = sub.add_parser("info", parents=[common], help="rank, determinant, parity, roots, delta and name of a lattice")
    _add_lattice_input(s)
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("delta", parents=[common], help="rank minus the minimal characteristic square")
    _add_lattice_input(s)
    s.set_defaults(func=cmd_delta)

    s = sub.add_parser("complement", parents=[common], help="orthogonal complement of a vector")
    _add_lattice_input(s)
    s.add_argument("--vector", required=True, metavar="V",
                   help="coordinates a,b,... or a class like '3h-e1-e2' in I(1,k)")
    s.set_defaults(func=cmd_complement)

    s = sub.add_parser("isom", parents=[common], help="decide isometry of two positive definite lattices")
    s.add_argument("first", nargs="?", help="first lattice")
    s.add_argument("second", nargs="?", help="second lattice")
    s.add_argument("--file1", metavar="PATH", help="read the first lattice from a file")
    s.add_argument("--file2", metavar="PATH", help="read the second lattice from a file")
    s.set_defaults(func=cmd_isom)

    s = sub.add_parser("vectors", parents=[common], help="count (and list) short vectors")
    _add_lattice_input(s)
    s.add_argument("--norm", type=int, metavar="N", help="vectors of exactly this norm")
    s.add_argument("--bound", type=int, metavar="B", help="all vectors of norm at most B")
    s.add_argument("--list", action="store_true", help="print one vector of each +- pair")
    s.set_defaults(func=cmd_vectors)

    s = sub.add_parser("dtable", parents=[common], help="correction terms of n-surgery, one row per spin-c index")
    _add_knot(s)
    s.add_argument("--n", type=int, required=True, metavar="N", help="surgery coefficient")
    s.set_defaults(func=cmd_dtable)

    s = sub.add_parser("classify", parents=[common], help="reduced definite fillings of n-surgery for n <= nmax")
    _add_knot(s, with_base=True)
    s.add_argument("--nmax", type=int, required=True, metavar="N", help="largest surgery coefficient (1..16)")
    s.add_argument("--padding", type=int, default=DEFAULT_PADDING, metavar="P",
                   help=f"unit summands added at each step (default {DEFAULT_PADDING})")
    s.add_argument("--grams", action="store_true", help="also print the Gram matrix of every lattice")
    s.add_argument("--pretty", action="store_true", help="use unicode names")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("construct", help="continued fractions, Seifert plumbings and blow-up identities")
    csub = s.add_subparsers(dest="what", metavar="WHAT")
    csub.required = True
    c = csub.add_parser("hj", parents=[common], help="Hirzebruch-Jung expansion of a/b")
    c.add_argument("fraction", help="a/b with a, b > 0")
    c = csub.add_parser("seifert", parents=[common], help="plumbing lattice of Seifert data 'b; b1/a1, ...'")
    c.add_argument("data", help="Seifert data, e.g. '2; 1/2, 2/3, 3/4'")
    c = csub.add_parser("verify", parents=[common], help="check a blow-up complement identity")
    c.add_argument("--family", required=True, choices=sorted(con.FAMILY_RANGES), help="identity family")
    c.add_argument("--n", type=int, default=1, metavar="N", help="family index")
    c.add_argument("--base", default="T", choices=["T", "C"], help="base family for the doubling identities")
    c.add_argument("--vector", metavar="CLASS", help="explicit square-1 base class for the doubling identities")
    s.set_defaults(func=cmd_construct)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rc = args.func(args)
    except RankGuardError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (UsageError, LatticeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return rc or 0
