"""The compositional difference evaluator.

``diff_evaluate`` runs a term into its *difference function*: given
values for the free variables and error bounds on them, it returns a
bound on the output error.  Differences mirror the type structure:

* at ``Real`` a difference is a non-negative float (``math.inf`` allowed),
* at a product, a pair of differences,
* at an arrow, a callable taking an input value and an input difference
  to an output difference.

The clauses: a variable projects its environment entry; a literal has
difference 0; a primitive call takes the deviation modulus of its
evaluated arguments and their differences; an application feeds the
argument's value and difference to the function's difference; a lambda
extends both environments; pairs and projections are componentwise.
Runs on floats; the exact-mode story lives in the evaluator.
"""

from __future__ import annotations

import math
from typing import Callable, Mapping, Union

from ..prims import DEFAULT_REGISTRY, Registry, prim_modulus
from ..syntax.terms import (App, First, FnType, Lam, Lit, Pair, PairType,
                            PrimOp, RealType, Second, Term, Type, Var)
from .eval import Value, evaluate

Diff = Union[float, tuple, Callable]


def diff_evaluate(t: Term, env: Mapping[str, Value] | None = None,
                  denv: Mapping[str, Diff] | None = None, *,
                  registry: Registry = DEFAULT_REGISTRY) -> Diff:
    return _diff(t, dict(env) if env else {}, dict(denv) if denv else {},
                 registry)


def _diff(t: Term, env: dict, denv: dict, registry: Registry) -> Diff:
    if isinstance(t, Var):
        try:
            return denv[t.name]
        except KeyError:
            raise NameError(f"no difference bound for variable {t.name!r}") \
                from None
    if isinstance(t, Lit):
        return 0.0
    if isinstance(t, PrimOp):
        ys = [evaluate(a, env, registry=registry) for a in t.args]
        bs = [_diff(a, env, denv, registry) for a in t.args]
        return prim_modulus(registry[t.name], ys, bs)
    if isinstance(t, App):
        dfn = _diff(t.fn, env, denv, registry)
        if not callable(dfn):
            raise TypeError("difference of an applied term is not a function; "
                            "environment shape does not match the typing")
        return dfn(evaluate(t.arg, env, registry=registry),
                   _diff(t.arg, env, denv, registry))
    if isinstance(t, Lam):
        def dclosure(value: Value, bound: Diff,
                     _env=dict(env), _denv=dict(denv), _t=t):
            inner_env = dict(_env)
            inner_env[_t.var] = value
            inner_denv = dict(_denv)
            inner_denv[_t.var] = bound
            return _diff(_t.body, inner_env, inner_denv, registry)
        return dclosure
    if isinstance(t, Pair):
        return (_diff(t.left, env, denv, registry),
                _diff(t.right, env, denv, registry))
    if isinstance(t, First):
        return _diff(t.pair, env, denv, registry)[0]
    if isinstance(t, Second):
        return _diff(t.pair, env, denv, registry)[1]
    raise TypeError(f"not a term: {t!r}")


# --- pointwise structure on differences -------------------------------------

def top_diff(ty: Type) -> Diff:
    """The largest difference: zero bound everywhere (only constant
    functions are this close to themselves)."""
    if isinstance(ty, RealType):
        return 0.0
    if isinstance(ty, PairType):
        return (top_diff(ty.left), top_diff(ty.right))
    if isinstance(ty, FnType):
        res = ty.res
        return lambda value, bound: top_diff(res)
    raise TypeError(f"not a type: {ty!r}")


def bottom_diff(ty: Type) -> Diff:
    if isinstance(ty, RealType):
        return math.inf
    if isinstance(ty, PairType):
        return (bottom_diff(ty.left), bottom_diff(ty.right))
    if isinstance(ty, FnType):
        res = ty.res
        return lambda value, bound: bottom_diff(res)
    raise TypeError(f"not a type: {ty!r}")


def tensor_diff(ty: Type, a: Diff, b: Diff) -> Diff:
    """Pointwise monoid operation (addition at the base)."""
    if isinstance(ty, RealType):
        return a + b
    if isinstance(ty, PairType):
        return (tensor_diff(ty.left, a[0], b[0]),
                tensor_diff(ty.right, a[1], b[1]))
    if isinstance(ty, FnType):
        res = ty.res
        return lambda value, bound: tensor_diff(res, a(value, bound),
                                                b(value, bound))
    raise TypeError(f"not a type: {ty!r}")


def residual_diff(ty: Type, a: Diff, b: Diff) -> Diff:
    """Pointwise residual (truncated subtraction at the base)."""
    if isinstance(ty, RealType):
        if math.isinf(a):
            return 0.0
        return max(b - a, 0.0)
    if isinstance(ty, PairType):
        return (residual_diff(ty.left, a[0], b[0]),
                residual_diff(ty.right, a[1], b[1]))
    if isinstance(ty, FnType):
        res = ty.res
        return lambda value, bound: residual_diff(res, a(value, bound),
                                                  b(value, bound))
    raise TypeError(f"not a type: {ty!r}")
