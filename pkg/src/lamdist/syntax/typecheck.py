"""Type synthesis for the calculus: fully annotated lambdas make every
term's type unique when it exists."""

from __future__ import annotations

from ..prims import DEFAULT_REGISTRY, Registry
from .printer import render_term, render_type
from .terms import (App, Context, First, FnType, Lam, Lit, Pair, PairType,
                    PrimOp, REAL, Second, Term, Type, Var)


class TypecheckError(TypeError):
    def __init__(self, message: str, term: Term | None = None):
        if term is not None:
            message = f"{message} in {render_term(term)}"
        super().__init__(message)


def typecheck(ctx: Context, t: Term,
              registry: Registry = DEFAULT_REGISTRY) -> Type:
    names = [n for n, _ in ctx]
    if len(set(names)) != len(names):
        raise TypecheckError(f"duplicate names in context: {names}")
    return _synth(dict(ctx), t, registry)


def _synth(env: dict[str, Type], t: Term, registry: Registry) -> Type:
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise TypecheckError(f"unbound variable {t.name!r}") from None
    if isinstance(t, Lit):
        return REAL
    if isinstance(t, PrimOp):
        if t.name not in registry:
            raise TypecheckError(f"unknown primitive {t.name!r}", t)
        want = registry.arity(t.name)
        if len(t.args) != want:
            raise TypecheckError(
                f"primitive {t.name!r} takes {want} argument(s), "
                f"got {len(t.args)}", t)
        for a in t.args:
            got = _synth(env, a, registry)
            if got != REAL:
                raise TypecheckError(
                    f"primitive argument has type {render_type(got)}, "
                    "expected Real", t)
        return REAL
    if isinstance(t, App):
        fn_ty = _synth(env, t.fn, registry)
        if not isinstance(fn_ty, FnType):
            raise TypecheckError(
                f"application of non-function of type {render_type(fn_ty)}", t)
        arg_ty = _synth(env, t.arg, registry)
        if arg_ty != fn_ty.arg:
            raise TypecheckError(
                f"argument has type {render_type(arg_ty)}, expected "
                f"{render_type(fn_ty.arg)}", t)
        return fn_ty.res
    if isinstance(t, Lam):
        if t.var in env:
            raise TypecheckError(
                f"binder {t.var!r} shadows a variable in scope", t)
        return FnType(t.var_type,
                      _synth({**env, t.var: t.var_type}, t.body, registry))
    if isinstance(t, Pair):
        return PairType(_synth(env, t.left, registry),
                        _synth(env, t.right, registry))
    if isinstance(t, (First, Second)):
        ty = _synth(env, t.pair, registry)
        if not isinstance(ty, PairType):
            raise TypecheckError(
                f"projection of non-product of type {render_type(ty)}", t)
        return ty.left if isinstance(t, First) else ty.right
    raise TypecheckError(f"not a term: {t!r}")
