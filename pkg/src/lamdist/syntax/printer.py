"""Rendering terms and types back to the concrete syntax.

``parse_term(render_term(t))`` is alpha-structurally the identity for
terms whose literals have terminating decimal expansions (all literals
produced by parsing or by float conversion do); other rationals render
as a parenthesized division, which re-parses up to constant folding.
"""

from __future__ import annotations

from fractions import Fraction

from .terms import (App, First, FnType, Lam, Lit, Pair, PairType, PrimOp,
                    RealType, Second, Term, Type, Var)

_INFIX = {"add": ("+", 1), "sub": ("-", 1), "mul": ("*", 2), "div": ("/", 2)}

_LAM, _SUM, _PROD, _APP, _ATOM = 0, 1, 2, 3, 4


def render_type(ty: Type) -> str:
    if isinstance(ty, RealType):
        return "Real"
    if isinstance(ty, FnType):
        left = render_type(ty.arg)
        if isinstance(ty.arg, FnType):
            left = f"({left})"
        return f"{left} -> {render_type(ty.res)}"
    if isinstance(ty, PairType):
        def side(s, right):
            txt = render_type(s)
            if isinstance(s, FnType) or (right and isinstance(s, PairType)):
                return f"({txt})"
            return txt
        return f"{side(ty.left, False)} * {side(ty.right, True)}"
    raise TypeError(f"not a type: {ty!r}")


def render_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        s = str(q.numerator)
        return f"({s})" if q < 0 else s
    d = q.denominator
    k2 = k5 = 0
    while d % 2 == 0:
        d //= 2
        k2 += 1
    while d % 5 == 0:
        d //= 5
        k5 += 1
    if d != 1:
        return f"({q.numerator}/{q.denominator})"
    k = max(k2, k5)
    scaled = abs(q.numerator) * 10 ** k // q.denominator
    digits = str(scaled).rjust(k + 1, "0")
    body = f"{digits[:-k]}.{digits[-k:]}"
    return f"(-{body})" if q < 0 else body


def render_term(t: Term) -> str:
    return _render(t, _LAM)


def _render(t: Term, prec: int) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Lit):
        return render_fraction(t.value)
    if isinstance(t, Lam):
        body = f"\\{t.var}:{render_type(t.var_type)}. {_render(t.body, _LAM)}"
        return f"({body})" if prec > _LAM else body
    if isinstance(t, App):
        body = f"{_render(t.fn, _APP)} {_render(t.arg, _ATOM)}"
        return f"({body})" if prec > _APP else body
    if isinstance(t, Pair):
        return f"({_render(t.left, _LAM)}, {_render(t.right, _LAM)})"
    if isinstance(t, First):
        return f"fst({_render(t.pair, _LAM)})"
    if isinstance(t, Second):
        return f"snd({_render(t.pair, _LAM)})"
    if isinstance(t, PrimOp):
        if t.name in _INFIX and len(t.args) == 2:
            sym, level = _INFIX[t.name]
            # left operand at the operator level, right one step tighter:
            # both chains are left associative
            body = (f"{_render(t.args[0], level)} {sym} "
                    f"{_render(t.args[1], level + 1)}")
            return f"({body})" if prec > level else body
        if t.name == "neg" and len(t.args) == 1:
            body = f"-{_render(t.args[0], _APP)}"
            return f"({body})" if prec > _PROD else body
        args = ", ".join(_render(a, _LAM) for a in t.args)
        return f"{t.name}({args})"
    raise TypeError(f"not a term: {t!r}")
