"""Expression language for tautological classes.

    expr    := sum [ "on" "(" INT "," INT ")" ]
    sum     := product (("+" | "-") product)*
    product := unary ("*" unary)*
    unary   := ("-" | "+") unary | power
    power   := primary ["^" INT]
    primary := NUMBER | NAME "(" [arg ("," arg)*] ")" | "(" sum ")"
    arg     := ["-"] INT | "{" ints "}" | "[" args "]" | "(" args ")"

``NUMBER`` is an integer or a rational literal ``p/q``.  Sets of markings
use braces, so ``sepbdiv(1,{1,2})`` stands for the separating divisor with
markings 1 and 2 on the genus-1 side.  Error offsets count UTF-8 bytes.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class ParseError(ValueError):
    """Syntax or resolution error; ``offset`` is a byte offset into the input."""

    def __init__(self, message, offset=None, kind="syntax"):
        self.message = message
        self.offset = offset
        self.kind = kind
        where = f" at offset {offset}" if offset is not None else ""
        super().__init__(f"{kind} error{where}: {message}")


# -- AST --------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Seq:
    """Bracketed argument: ``kind`` is one of ``{``, ``[``, ``(``."""
    kind: str
    items: tuple


@dataclass(frozen=True)
class Atom:
    name: str
    args: tuple


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Expression:
    body: object
    context: tuple = None


# name -> allowed argument counts
ATOMS = {
    "psi": (1,),
    "kappa": (1,),
    "lambda": (1,),
    "sepbdiv": (2,),
    "irrbdiv": (0,),
    "fund": (0,),
    "dr": (2, 3),
    "graph": (3,),
}


# -- lexer ------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\s*/\s*\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^(){}\[\],])
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str):
    toks = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}",
                             len(text[:i].encode("utf-8")))
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), i))
        i = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def offset(self, tok):
        return len(self.text[:tok.pos].encode("utf-8"))

    def error(self, msg, tok=None, kind="syntax"):
        tok = tok or self.peek()
        return ParseError(msg, self.offset(tok), kind)

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def accept(self, text):
        if self.peek().text == text and self.peek().kind in ("op", "name"):
            return self.next()
        return None

    def expect(self, text):
        tok = self.peek()
        if tok.text != text:
            found = "end of input" if tok.kind == "end" else repr(tok.text)
            raise self.error(f"expected {text!r}, found {found}")
        return self.next()

    def expect_int(self, signed=False):
        neg = signed and self.accept("-")
        tok = self.peek()
        if tok.kind != "num" or "/" in tok.text:
            raise self.error("expected an integer")
        self.next()
        return -int(tok.text) if neg else int(tok.text)

    # grammar

    def parse(self) -> Expression:
        body = self.sum()
        ctx = None
        if self.peek().kind == "name" and self.peek().text == "on":
            self.next()
            self.expect("(")
            g = self.expect_int()
            self.expect(",")
            n = self.expect_int()
            self.expect(")")
            ctx = (g, n)
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().text!r}")
        return Expression(body, ctx)

    def sum(self):
        left = self.product()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.next().text
            left = BinOp(op, left, self.product())
        return left

    def product(self):
        left = self.unary()
        while self.accept("*"):
            left = BinOp("*", left, self.unary())
        return left

    def unary(self):
        if self.accept("-"):
            return Neg(self.unary())
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.primary()
        if self.accept("^"):
            if self.peek().text == "-":
                raise self.error("exponent must be a nonnegative integer")
            base = Pow(base, self.expect_int())
        return base

    def primary(self):
        tok = self.peek()
        if tok.kind == "num":
            self.next()
            p, _, q = tok.text.partition("/")
            if q and int(q) == 0:
                raise self.error("division by zero", tok)
            return Num(Fraction(int(p), int(q) if q else 1))
        if tok.kind == "name":
            self.next()
            if tok.text not in ATOMS:
                raise self.error(f"unknown atom {tok.text!r}", tok, "unknown atom")
            self.expect("(")
            args = []
            if not self.accept(")"):
                args.append(self.arg())
                while self.accept(","):
                    args.append(self.arg())
                self.expect(")")
            if len(args) not in ATOMS[tok.text]:
                want = " or ".join(str(k) for k in ATOMS[tok.text])
                raise self.error(f"{tok.text} takes {want} argument(s), got {len(args)}",
                                 tok, "arity")
            return Atom(tok.text, tuple(args))
        if self.accept("("):
            inner = self.sum()
            self.expect(")")
            return inner
        if tok.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {tok.text!r}")

    def arg(self):
        closing = {"{": "}", "[": "]", "(": ")"}
        tok = self.peek()
        if tok.text in closing and tok.kind == "op":
            self.next()
            items = []
            if not self.accept(closing[tok.text]):
                items.append(self.arg())
                while self.accept(","):
                    items.append(self.arg())
                self.expect(closing[tok.text])
            return Seq(tok.text, tuple(items))
        return self.expect_int(signed=True)


def parse(text) -> Expression:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not valid UTF-8", exc.start) from None
    return _Parser(text).parse()


# -- printer ------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2}


def _prec(node):
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 1.5
    if isinstance(node, Pow):
        return 3
    return 4


def _fmt_arg(a):
    if isinstance(a, Seq):
        close = {"{": "}", "[": "]", "(": ")"}[a.kind]
        return a.kind + ",".join(_fmt_arg(x) for x in a.items) + close
    return str(a)


def _fmt(node) -> str:
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Atom):
        return f"{node.name}({','.join(_fmt_arg(a) for a in node.args)})"
    if isinstance(node, Neg):
        inner = _fmt(node.operand)
        if _prec(node.operand) < 3:
            inner = f"({inner})"
        return "-" + inner
    if isinstance(node, Pow):
        inner = _fmt(node.base)
        fraction = isinstance(node.base, Num) and node.base.value.denominator != 1
        if _prec(node.base) < 4 or fraction:
            inner = f"({inner})"
        return f"{inner}^{node.exp}"
    p = _PREC[node.op]
    left = _fmt(node.left)
    if _prec(node.left) < p:
        left = f"({left})"
    right = _fmt(node.right)
    if _prec(node.right) <= p and not isinstance(node.right, Neg):
        right = f"({right})"
    sep = "*" if node.op == "*" else f" {node.op} "
    return left + sep + right


def to_text(expr) -> str:
    """Print an expression so that ``parse(to_text(e)) == e``."""
    if isinstance(expr, Expression):
        body = _fmt(expr.body)
        if expr.context is not None:
            body += f" on ({expr.context[0]},{expr.context[1]})"
        return body
    return _fmt(expr)


# -- resolution ---------------------------------------------------------------

def _ints(arg, what):
    if not isinstance(arg, Seq) or any(not isinstance(x, int) for x in arg.items):
        raise ParseError(f"{what} must be a bracketed list of integers", kind="arity")
    return list(arg.items)


def _int(arg, what):
    if not isinstance(arg, int):
        raise ParseError(f"{what} must be an integer", kind="arity")
    return arg


def graph_from_atom(atom: Atom):
    """The ``StableGraph`` described by a ``graph([genera],[legs],[edges])`` atom."""
    from .graphs import StableGraph
    if not isinstance(atom, Atom) or atom.name != "graph":
        raise ParseError("expected a graph(...) atom", kind="arity")
    a = atom.args
    genera = _ints(a[0], "graph genera")
    if not isinstance(a[1], Seq):
        raise ParseError("graph legs must be a list of lists", kind="arity")
    legs = [_ints(x, "graph legs") for x in a[1].items]
    if not isinstance(a[2], Seq):
        raise ParseError("graph edges must be a list of pairs", kind="arity")
    edges = []
    for e in a[2].items:
        pair = _ints(e, "graph edge")
        if len(pair) != 2:
            raise ParseError("graph edges must be pairs", kind="arity")
        edges.append(tuple(pair))
    return StableGraph(genera, legs, edges)


def _resolve_atom(atom: Atom, g: int, n: int):
    from . import decor, dr, hodge
    a = atom.args
    name = atom.name
    if name == "psi":
        return decor.psiclass(_int(a[0], "psi index"), g, n)
    if name == "kappa":
        return decor.kappaclass(_int(a[0], "kappa index"), g, n)
    if name == "lambda":
        return hodge.lambdaclass(_int(a[0], "lambda index"), g, n)
    if name == "sepbdiv":
        return decor.sepbdiv(_int(a[0], "genus"), _ints(a[1], "marking set"), g, n)
    if name == "irrbdiv":
        return decor.irrbdiv(g, n)
    if name == "fund":
        return decor.fundclass(g, n)
    if name == "dr":
        gg = _int(a[0], "dr genus")
        A = _ints(a[1], "dr vector")
        if (gg, len(A)) != (g, n):
            raise decor.AmbientMismatchError(
                f"dr({gg},...) with {len(A)} entries does not live on ({g},{n})")
        d = _int(a[2], "dr degree") if len(a) == 3 else None
        return dr.DR_cycle(gg, A, d)
    if name == "graph":
        G = graph_from_atom(atom)
        if (G.g, G.n) != (g, n):
            raise decor.AmbientMismatchError(
                f"graph lives on ({G.g},{G.n}), not ({g},{n})")
        return decor.graph_to_class(G)
    raise ParseError(f"unknown atom {name!r}", kind="unknown atom")


def _has_atoms(node) -> bool:
    if isinstance(node, Atom):
        return True
    if isinstance(node, Neg):
        return _has_atoms(node.operand)
    if isinstance(node, Pow):
        return _has_atoms(node.base)
    if isinstance(node, BinOp):
        return _has_atoms(node.left) or _has_atoms(node.right)
    return False


def evaluate_expression(expr: Expression):
    """Turn an AST into a ``TautClass`` (or a ``Fraction`` if it has no atoms)."""
    from .decor import fundclass
    if expr.context is None and _has_atoms(expr.body):
        raise ParseError("missing 'on (g,n)' context clause", kind="missing context")
    g, n = expr.context or (None, None)

    def ev(node):
        if isinstance(node, Num):
            return node.value
        if isinstance(node, Atom):
            return _resolve_atom(node, g, n)
        if isinstance(node, Neg):
            return -ev(node.operand)
        if isinstance(node, Pow):
            base = ev(node.base)
            return base ** node.exp
        x, y = ev(node.left), ev(node.right)
        if node.op == "*":
            return x * y
        if isinstance(x, Fraction) and isinstance(y, Fraction):
            return x + y if node.op == "+" else x - y
        if isinstance(x, Fraction):
            x = fundclass(g, n).scale(x)
        if isinstance(y, Fraction):
            y = fundclass(g, n).scale(y)
        return x + y if node.op == "+" else x - y

    return ev(expr.body)


def parse_class(text):
    """Parse and evaluate in one step."""
    return evaluate_expression(parse(text))
