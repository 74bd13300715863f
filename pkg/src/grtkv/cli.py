"""Command-line driver: dimension tables, basis export, property suites, theorem check, eval."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import spaces
from .edk import EdkElement, differential, emergent_defects, phi_1
from .dk import hexagon_defects, pentagon_defect
from .freealg import LETTERS
from .freelie import LiePoly, lie_bracket
from .gtops import mu_f_gr, r_map
from .kv import TangentialDerivation, div, krv_class, nu, nu_em, sym_involution, tder_bracket
from .suites import DEFAULT_SEED, SUITES, run_suite


class EvalError(ValueError):
    pass


# expression language ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        num, name, sym = m.groups()
        if num:
            toks.append(("num", Fraction(num)))
        elif name:
            toks.append(("name", name))
        elif sym and not sym.isspace():
            toks.append(("sym", sym))
        pos = m.end()
    return toks


def _add(a, b, sign=1):
    if type(a) is not type(b):
        raise EvalError(f"cannot add {type(a).__name__} and {type(b).__name__}")
    if isinstance(a, tuple):
        return tuple(_add(p, q, sign) for p, q in zip(a, b))
    return a + b if sign > 0 else a - b


def _scale(c, a):
    if isinstance(a, tuple):
        return tuple(_scale(c, p) for p in a)
    if isinstance(a, str):
        raise EvalError("cannot scale a label")
    return a.scale(c)


def _bracket(a, b):
    if isinstance(a, LiePoly) and isinstance(b, LiePoly):
        return lie_bracket(a, b)
    if isinstance(a, TangentialDerivation) and isinstance(b, TangentialDerivation):
        return tder_bracket(a, b)
    if isinstance(a, EdkElement) and isinstance(b, EdkElement):
        return a.bracket(b)
    raise EvalError("brackets need two Lie elements, two derivations or two edk elements")


def _lie(v, name):
    if not isinstance(v, LiePoly):
        raise EvalError(f"{name} expects a Lie element")
    return v


def _tder(v, name):
    if not isinstance(v, TangentialDerivation):
        raise EvalError(f"{name} expects a tangential derivation")
    return v


FUNCTIONS = {
    "R": (1, lambda a: r_map(_lie(a, "R"))),
    "mu": (1, lambda a: mu_f_gr(a.poly if isinstance(a, LiePoly) else a)),
    "div": (1, lambda a: div(_tder(a, "div"))),
    "nu": (1, lambda a: nu(_lie(a, "nu"))),
    "nu_em": (1, lambda a: nu_em(_lie(a, "nu_em"))),
    "sym": (1, lambda a: sym_involution(_tder(a, "sym"))),
    "krv": (1, lambda a: krv_class(_tder(a, "krv")).membership),
    "residues": (1, lambda a: emergent_defects(_lie(a, "residues"))),
    "hexagons": (1, lambda a: hexagon_defects(_lie(a, "hexagons"))),
    "pentagon": (1, lambda a: pentagon_defect(_lie(a, "pentagon"))),
    "d21": (1, lambda a: differential(phi_1(_lie(a, "d21")))),
    "em": (2, lambda a, b: spaces.emergent_bracket(_lie(a, "em"), _lie(b, "em"))),
    "tder": (2, lambda a, b: TangentialDerivation([_lie(a, "tder"), _lie(b, "tder")])),
}


class _Parser:
    """Recursive descent over ``expr := term (('+'|'-') term)*``."""

    def __init__(self, toks, n):
        self.toks, self.i, self.n = toks, 0, n

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            raise EvalError(f"expected {want!r} at token {self.i}")
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            val = _add(val, self.term(), 1 if op == "+" else -1)
        return val

    def term(self):
        if self.peek() == ("sym", "-"):
            self.take()
            return _scale(-1, self.term())
        if self.peek()[0] == "num":
            c = self.take()[1]
            if self.peek() == ("sym", "*"):
                self.take()
            return _scale(c, self.term())
        return self.atom()

    def atom(self):
        kind, val = self.peek()
        if (kind, val) == ("sym", "["):
            self.take()
            a = self.expr()
            self.take("sym", ",")
            b = self.expr()
            self.take("sym", "]")
            return _bracket(a, b)
        if (kind, val) == ("sym", "("):
            self.take()
            a = self.expr()
            self.take("sym", ")")
            return a
        if kind == "name":
            self.take()
            if self.peek() == ("sym", "("):
                if val not in FUNCTIONS:
                    raise EvalError(f"unknown function {val!r}")
                arity, fn = FUNCTIONS[val]
                self.take()
                args = [self.expr()]
                while self.peek() == ("sym", ","):
                    self.take()
                    args.append(self.expr())
                self.take("sym", ")")
                if len(args) != arity:
                    raise EvalError(f"{val} takes {arity} argument(s)")
                return fn(*args)
            if len(val) == 1 and val in LETTERS:
                return LiePoly.gen(self.n, LETTERS.index(val))
            raise EvalError(f"unknown name {val!r}")
        raise EvalError(f"unexpected token {val!r}")


def evaluate(text: str):
    """Evaluate an expression over Lie words; the alphabet is x, y (or more if used)."""
    toks = _tokenize(text)
    used = [LETTERS.index(v) for k, v in toks
            if k == "name" and len(v) == 1 and v in LETTERS and v not in FUNCTIONS]
    n = max([1] + used) + 1
    p = _Parser(toks, n)
    val = p.expr()
    if p.i != len(toks):
        raise EvalError(f"trailing input at token {p.i}")
    return val


def render_value(v) -> str:
    if isinstance(v, tuple):
        return "(" + ", ".join(render_value(p) for p in v) + ")"
    return str(v)


# commands ---------------------------------------------------------------------------

def _solve_kw(args):
    return {"cache_dir": args.cache_dir} if args.cache_dir else {}


def cmd_dims(args, out) -> int:
    kw = _solve_kw(args)
    table = spaces.dims(args.space, args.max_degree, **kw)
    h = spaces.residue_hash(args.space)
    if args.format == "json":
        out.write(json.dumps({"space": args.space, "residue_hash": h,
                              "dims": {str(d): v for d, v in table.items()}}, sort_keys=True) + "\n")
    else:
        out.write(f"space {args.space} (residue hash {h})\n")
        out.write("degree  dim\n")
        for d, v in table.items():
            out.write(f"{d:>6}  {v}\n")
    return 0


def cmd_basis(args, out) -> int:
    space = spaces.solve_graded(args.space, args.degree, **_solve_kw(args))
    out.write(json.dumps(space.to_json(), indent=1, sort_keys=True) + "\n")
    return 0


def cmd_check(args, out) -> int:
    res = run_suite(args.suite, seed=args.seed)
    out.write(res.line() + "\n")
    return 0 if res.passed else 1


def cmd_verify(args, out) -> int:
    if args.max_degree < 2:
        out.write("verify-theorem needs --max-degree >= 2\n")
        return 2
    kw = _solve_kw(args)
    report = spaces.verify_main_theorem(args.max_degree, **kw)
    yn = lambda b: "yes" if b else "NO"  # noqa: E731
    if args.format == "json":
        rows = [{"degree": r.degree, "dim_grt1em": r.dim_grt1em, "dim_krv2sym": r.dim_krv2sym,
                 "dim_krv2": r.dim_krv2, "dim_ppss_p1": r.dim_ppss_p1, "images_in_krv": r.images_in_krv,
                 "images_sym_fixed": r.images_sym_fixed, "images_form_basis": r.images_form_basis,
                 "grt1_in_grt1em": r.grt1_in_grt1em, "classes": r.classes, "ok": r.ok}
                for r in report.rows]
        out.write(json.dumps({"ok": report.ok, "rows": rows,
                              "residue_hash": {t: spaces.residue_hash(t) for t in ("grt1em", "krv2sym")}},
                             sort_keys=True) + "\n")
    else:
        out.write("degree  grt1em  krv2sym  krv2  em1+em2  in-krv  sym-fixed  basis  grt1-in-em\n")
        for r in report.rows:
            out.write(f"{r.degree:>6}  {r.dim_grt1em:>6}  {r.dim_krv2sym:>7}  {r.dim_krv2:>4}  "
                      f"{r.dim_ppss_p1:>7}  {yn(r.images_in_krv):>6}  {yn(r.images_sym_fixed):>9}  "
                      f"{yn(r.images_form_basis):>5}  {yn(r.grt1_in_grt1em):>10}\n")
        out.write(f"residue hashes: grt1em {spaces.residue_hash('grt1em')}, "
                  f"krv2sym {spaces.residue_hash('krv2sym')}\n")
        out.write(f"theorem checks: {'PASS' if report.ok else 'FAIL'}\n")
    return 0 if report.ok else 1


def cmd_eval(args, out) -> int:
    try:
        val = evaluate(args.expr)
    except (EvalError, ValueError) as exc:
        out.write(f"error: {exc}\n")
        return 2
    out.write(render_value(val) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grtkv", description=__doc__)
    p.add_argument("--cache-dir", default=None,
                   help=f"basis cache directory (default ${spaces.CACHE_ENV} or ~/.cache/grtkv)")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub = p.add_subparsers(dest="command", required=True)

    def degree(text):
        d = int(text)
        if d < 1:
            raise argparse.ArgumentTypeError("degree must be >= 1")
        return d

    s = sub.add_parser("dims", help="dimension table per degree")
    s.add_argument("--space", choices=spaces.TAGS, required=True)
    s.add_argument("--max-degree", type=degree, default=8)
    s.set_defaults(func=cmd_dims)

    s = sub.add_parser("basis", help="JSON basis of one graded piece")
    s.add_argument("space", choices=spaces.TAGS)
    s.add_argument("degree", type=degree)
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("check", help="run a property suite")
    s.add_argument("suite", choices=sorted(SUITES))
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("verify-theorem", help="degree-wise check of the emergent/KV isomorphism")
    s.add_argument("--max-degree", type=degree, default=8)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("eval", help="evaluate a small expression, e.g. 'R([x,[x,y]])'")
    s.add_argument("expr")
    s.set_defaults(func=cmd_eval)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    return args.func(args, out)


if __name__ == "__main__":
    sys.exit(main())
