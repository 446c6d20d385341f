"""The set-theoretic evaluator.

Values are plain Python data: floats (or ``Fraction`` in exact mode) at
``Real``, 2-tuples at products, and 1-argument callables at arrows.
Evaluation is call-by-value; closures capture the environment dict.

Exact mode carries ``Fraction`` values: field primitives compute exactly,
transcendentals rationalize their float result, which is deterministic.
It exists so inequalities between evaluated reals can be decided with no
rounding at all.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Union

from ..prims import DEFAULT_REGISTRY, Registry
from ..syntax.terms import (App, First, Lam, Lit, Pair, PrimOp, Second, Term,
                            Var)

Value = Union[float, Fraction, tuple, Callable]


def evaluate(t: Term, env: Mapping[str, Value] | None = None, *,
             registry: Registry = DEFAULT_REGISTRY,
             exact: bool = False) -> Value:
    return _eval(t, dict(env) if env else {}, registry, exact)


def _eval(t: Term, env: dict, registry: Registry, exact: bool) -> Value:
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise NameError(f"unbound variable {t.name!r} at evaluation") from None
    if isinstance(t, Lit):
        return t.value if exact else float(t.value)
    if isinstance(t, PrimOp):
        args = [_eval(a, env, registry, exact) for a in t.args]
        if exact:
            return registry.call_exact(t.name, args)
        return registry.call_float(t.name, args)
    if isinstance(t, App):
        fn = _eval(t.fn, env, registry, exact)
        return fn(_eval(t.arg, env, registry, exact))
    if isinstance(t, Lam):
        def closure(v: Value, _env=dict(env), _t=t):
            inner = dict(_env)
            inner[_t.var] = v
            return _eval(_t.body, inner, registry, exact)
        return closure
    if isinstance(t, Pair):
        return (_eval(t.left, env, registry, exact),
                _eval(t.right, env, registry, exact))
    if isinstance(t, First):
        return _eval(t.pair, env, registry, exact)[0]
    if isinstance(t, Second):
        return _eval(t.pair, env, registry, exact)[1]
    raise TypeError(f"not a term: {t!r}")
