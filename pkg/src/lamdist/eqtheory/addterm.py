"""Pointwise addition at every type, as a closed term."""

from __future__ import annotations

from ..syntax.terms import (App, First, FnType, Lam, Pair, PairType, PrimOp,
                            RealType, Second, Term, Type, Var)


def add_term(ty: Type) -> Term:
    """``add`` lifted to ``ty``: real addition at the base, pointwise at
    arrows, componentwise at products."""
    return _build(ty, 0)


def _build(ty: Type, depth: int) -> Term:
    a, b = f"p{depth}", f"q{depth}"
    if isinstance(ty, RealType):
        return Lam(a, ty, Lam(b, ty, PrimOp("add", (Var(a), Var(b)))))
    if isinstance(ty, FnType):
        z = f"z{depth}"
        inner = _build(ty.res, depth + 1)
        return Lam(a, ty, Lam(b, ty, Lam(z, ty.arg,
                   App(App(inner, App(Var(a), Var(z))),
                       App(Var(b), Var(z))))))
    if isinstance(ty, PairType):
        left = _build(ty.left, depth + 1)
        right = _build(ty.right, depth + 1)
        return Lam(a, ty, Lam(b, ty, Pair(
            App(App(left, First(Var(a))), First(Var(b))),
            App(App(right, Second(Var(a))), Second(Var(b))))))
    raise TypeError(f"not a type: {ty!r}")
