"""The derivative transforms on types and terms.

``partial_type`` sends a type to the type of its difference values:
differences at ``Real`` are again reals, differences between functions
take the input *and* the input difference.  ``derivative_term`` is the
corresponding syntactic transform: the derivative of a term computes how
output differences depend on input differences, with each primitive call
replaced by its modulus primitive applied to the original arguments and
their derivatives.
"""

from __future__ import annotations

from ..prims import DEFAULT_REGISTRY, Registry
from .terms import (App, Context, First, FnType, Lam, Lit, Pair, PairType,
                    PrimOp, REAL, RealType, Second, Term, Type, Var,
                    all_var_names, dotted, is_dotted)
from .typecheck import typecheck


class DottedVariableClash(ValueError):
    """The input mentions primed variables the transform would introduce."""


def partial_type(ty: Type) -> Type:
    if isinstance(ty, RealType):
        return REAL
    if isinstance(ty, FnType):
        return FnType(ty.arg, FnType(partial_type(ty.arg), partial_type(ty.res)))
    if isinstance(ty, PairType):
        return PairType(partial_type(ty.left), partial_type(ty.right))
    raise TypeError(f"not a type: {ty!r}")


def partial_context(ctx: Context) -> Context:
    return tuple((dotted(x), partial_type(ty)) for x, ty in ctx)


def derivative_term(ctx: Context, t: Term,
                    registry: Registry = DEFAULT_REGISTRY) -> Term:
    """The derivative of ``t``; typed in the doubled context
    ``ctx + partial_context(ctx)`` at ``partial_type`` of ``t``'s type.

    Refuses terms or contexts that already mention primed variables: the
    transform introduces the primed partner of every variable in sight,
    and renaming silently would change which differences the result
    refers to.
    """
    typecheck(ctx, t, registry)
    mentioned = set(all_var_names(t)) | {x for x, _ in ctx}
    primed = sorted(n for n in mentioned if is_dotted(n))
    if primed:
        raise DottedVariableClash(
            f"cannot differentiate: primed variable(s) {primed} already occur")
    return _d(t, registry)


def _d(t: Term, registry: Registry) -> Term:
    if isinstance(t, Var):
        return Var(dotted(t.name))
    if isinstance(t, Lit):
        return Lit(0)
    if isinstance(t, PrimOp):
        deriv = registry.derivative(t.name)
        return PrimOp(deriv.name,
                      t.args + tuple(_d(a, registry) for a in t.args))
    if isinstance(t, App):
        return App(App(_d(t.fn, registry), t.arg), _d(t.arg, registry))
    if isinstance(t, Lam):
        return Lam(t.var, t.var_type,
                   Lam(dotted(t.var), partial_type(t.var_type),
                       _d(t.body, registry)))
    if isinstance(t, Pair):
        return Pair(_d(t.left, registry), _d(t.right, registry))
    if isinstance(t, First):
        return First(_d(t.pair, registry))
    if isinstance(t, Second):
        return Second(_d(t.pair, registry))
    raise TypeError(f"not a term: {t!r}")
