r"""Concrete syntax.

Terms::

    term        ->  \NAME:type. term            lambda (lowest precedence)
                 |  arith
    arith       ->  summand (("+" | "-") summand)*
    summand     ->  factor (("*" | "/") factor)*
    factor      ->  "-" factor | application
    application ->  atom atom*                   left associative
    atom        ->  NUMBER
                 |  "fst" "(" term ")" | "snd" "(" term ")"
                 |  PRIM "(" [term ("," term)*] ")"   registered primitives
                 |  NAME
                 |  "(" term ")" | "(" term "," term ")"

    type        ->  ptype ["->" type]            right associative
    ptype       ->  atype ("*" atype)*
    atype       ->  "Real" | "(" type ")"

The infix operators ``+ - * /`` are sugar for the ``add``/``sub``/
``mul``/``div`` primitives; ``-`` before a number literal folds into the
literal.  Names may carry trailing primes (``x'``), the reserved family
of difference variables.  ``#`` starts a comment.

Term files hold one ``name = term`` definition per line; later
definitions may mention earlier names, which are inlined textually.
After parsing, binders that would shadow a name already in scope are
renamed to fresh plain-family names.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..prims import DEFAULT_REGISTRY, Registry
from .terms import (App, First, FnType, Lam, Lit, Pair, PairType, PrimOp,
                    REAL, Second, Term, Var, all_var_names, free_vars,
                    fresh_name, substitute)


class ParseError(SyntaxError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class _Tok:
    kind: str  # name, number, punct, end
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<number>\d+(?:\.\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*'*)
  | (?P<punct>->|[\\.:(),*+\-/=])
""", re.VERBOSE)

_RESERVED = {"fst", "snd", "Real"}


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        lexeme = m.group()
        if kind == "newline":
            toks.append(_Tok("newline", lexeme, line, col))
            line += 1
            col = 1
        else:
            if kind not in ("ws", "comment"):
                toks.append(_Tok(kind, lexeme, line, col))
            col += len(lexeme)
        pos = m.end()
    toks.append(_Tok("end", "", line, col))
    return toks


class _Parser:
    def __init__(self, toks: list[_Tok], registry: Registry):
        self.toks = [t for t in toks if t.kind != "newline"]
        self.pos = 0
        self.registry = registry

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, message: str):
        t = self.peek()
        at = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"{message} (found {at})", t.line, t.col)

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if t.kind == "punct" and t.text == text:
            return self.next()
        self.fail(f"expected {text!r}")

    def at_punct(self, text: str) -> bool:
        t = self.peek()
        return t.kind == "punct" and t.text == text

    # -- types ------------------------------------------------------------
    def type_(self):
        left = self.ptype()
        if self.at_punct("->"):
            self.next()
            return FnType(left, self.type_())
        return left

    def ptype(self):
        left = self.atype()
        while self.at_punct("*"):
            self.next()
            left = PairType(left, self.atype())
        return left

    def atype(self):
        t = self.peek()
        if t.kind == "name" and t.text == "Real":
            self.next()
            return REAL
        if self.at_punct("("):
            self.next()
            ty = self.type_()
            self.expect(")")
            return ty
        self.fail("expected a type")

    # -- terms ------------------------------------------------------------
    def term(self) -> Term:
        if self.at_punct("\\"):
            self.next()
            name = self.name("expected a variable to bind")
            self.expect(":")
            ty = self.type_()
            self.expect(".")
            return Lam(name, ty, self.term())
        return self.arith()

    def name(self, message: str) -> str:
        t = self.peek()
        if t.kind == "name" and t.text not in _RESERVED:
            return self.next().text
        self.fail(message)

    def arith(self) -> Term:
        left = self.summand()
        while self.at_punct("+") or self.at_punct("-"):
            op = self.next().text
            right = self.summand()
            left = PrimOp("add" if op == "+" else "sub", (left, right))
        return left

    def summand(self) -> Term:
        left = self.factor()
        while self.at_punct("*") or self.at_punct("/"):
            op = self.next().text
            right = self.factor()
            left = PrimOp("mul" if op == "*" else "div", (left, right))
        return left

    def factor(self) -> Term:
        if self.at_punct("-"):
            self.next()
            inner = self.factor()
            if isinstance(inner, Lit):
                return Lit(-inner.value)
            return PrimOp("neg", (inner,))
        return self.application()

    def application(self) -> Term:
        t = self.atom()
        while self.starts_atom():
            t = App(t, self.atom())
        return t

    def starts_atom(self) -> bool:
        t = self.peek()
        return (t.kind in ("number", "name")
                or (t.kind == "punct" and t.text == "("))

    def atom(self) -> Term:
        t = self.peek()
        if t.kind == "number":
            self.next()
            return Lit(Fraction(t.text))
        if t.kind == "name":
            self.next()
            if t.text in ("fst", "snd"):
                self.expect("(")
                inner = self.term()
                self.expect(")")
                return First(inner) if t.text == "fst" else Second(inner)
            if t.text == "Real":
                raise ParseError("'Real' is a type, not a term", t.line, t.col)
            if t.text in self.registry and self.at_punct("("):
                return self.prim_call(t)
            if t.text in self.registry:
                raise ParseError(
                    f"primitive {t.text!r} needs an argument list", t.line, t.col)
            return Var(t.text)
        if self.at_punct("("):
            self.next()
            inner = self.term()
            if self.at_punct(","):
                self.next()
                right = self.term()
                self.expect(")")
                return Pair(inner, right)
            self.expect(")")
            return inner
        self.fail("expected a term")

    def prim_call(self, t: _Tok) -> Term:
        self.expect("(")
        args: list[Term] = []
        if not self.at_punct(")"):
            args.append(self.term())
            while self.at_punct(","):
                self.next()
                args.append(self.term())
        self.expect(")")
        want = self.registry.arity(t.text)
        if len(args) != want:
            raise ParseError(
                f"primitive {t.text!r} takes {want} argument(s), got {len(args)}",
                t.line, t.col)
        return PrimOp(t.text, tuple(args))


def _freshen_shadowed(t: Term) -> Term:
    """Rename binders that shadow a name already in scope, so typing
    contexts never hold duplicate names."""
    used = set(all_var_names(t))

    def go(t: Term, scope: frozenset[str]) -> Term:
        if isinstance(t, Lam):
            var, body = t.var, t.body
            if var in scope:
                var = fresh_name(t.var, frozenset(used) | scope)
                used.add(var)
                body = substitute(body, {t.var: Var(var)})
            return Lam(var, t.var_type, go(body, scope | {var}))
        if isinstance(t, App):
            return App(go(t.fn, scope), go(t.arg, scope))
        if isinstance(t, PrimOp):
            return PrimOp(t.name, tuple(go(a, scope) for a in t.args))
        if isinstance(t, Pair):
            return Pair(go(t.left, scope), go(t.right, scope))
        if isinstance(t, First):
            return First(go(t.pair, scope))
        if isinstance(t, Second):
            return Second(go(t.pair, scope))
        return t

    return go(t, free_vars(t))


def parse_term(text: str, registry: Registry = DEFAULT_REGISTRY) -> Term:
    p = _Parser(_tokenize(text), registry)
    t = p.term()
    if p.peek().kind != "end":
        p.fail("trailing input after term")
    return _freshen_shadowed(t)


def parse_type(text: str, registry: Registry = DEFAULT_REGISTRY):
    p = _Parser(_tokenize(text), registry)
    ty = p.type_()
    if p.peek().kind != "end":
        p.fail("trailing input after type")
    return ty


def parse_file(text: str, registry: Registry = DEFAULT_REGISTRY) -> dict[str, Term]:
    """Parse ``name = term`` definitions, inlining earlier names into
    later bodies."""
    defs: dict[str, Term] = {}
    toks = _tokenize(text)
    lines: dict[int, list[_Tok]] = {}
    for tok in toks:
        if tok.kind in ("newline", "end"):
            continue
        lines.setdefault(tok.line, []).append(tok)
    for line_no in sorted(lines):
        line = lines[line_no]
        if len(line) < 2 or line[0].kind != "name" or line[1].text != "=":
            raise ParseError("expected 'name = term'", line[0].line, line[0].col)
        name = line[0].text
        if name in defs:
            raise ParseError(f"{name!r} is defined twice", line[0].line, line[0].col)
        if name in registry:
            raise ParseError(f"{name!r} collides with a primitive",
                             line[0].line, line[0].col)
        p = _Parser(line[2:] + [_Tok("end", "", line_no, 0)], registry)
        body = p.term()
        if p.peek().kind != "end":
            p.fail("trailing input after definition")
        inline = {n: defs[n] for n in free_vars(body) if n in defs}
        defs[name] = _freshen_shadowed(substitute(body, inline))
    return defs
