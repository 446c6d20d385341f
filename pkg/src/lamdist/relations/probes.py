"""Finite probe families for the relation-family checkers.

Membership at function types quantifies over uncountably many related
input triples; the checkers replace that with a finite, seeded probe set.
Real-type probes are grids plus uniform samples, built so the defining
inequality |x - x2| <= b holds exactly by construction.  Function-type
probes come from a term library (identity, sine, constants, affine maps,
squares, a forward difference quotient at higher order); their
difference components are produced by the difference evaluator, whose
output is a sound bound by construction, so library probes are members
by construction, not by sampling luck.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional

from ..prims import DEFAULT_REGISTRY, Registry
from ..semantics.diff import Diff, diff_evaluate, top_diff
from ..semantics.eval import Value, evaluate
from ..syntax.parser import parse_term
from ..syntax.printer import render_term, render_type
from ..syntax.terms import (FnType, Lam, Lit, Pair, PairType, REAL, RealType,
                            Term, Type, Var, arrow_depth, fresh_name)

MAX_PROBE_DEPTH = 2


class UnsupportedProbeDepth(ValueError):
    """Probe libraries stop at second-order arrows; deeper types need
    user-supplied probes."""


@dataclass(frozen=True)
class ProbeConfig:
    count: int = 1000           # Real-type probes
    fn_count: int = 10          # function probes per arrow type
    lo: float = -10.0
    hi: float = 10.0
    b_max: float = 1.0
    seed: int = 0
    z_samples: int = 33         # grid points per box in empirical sups


@dataclass(frozen=True)
class ProbeTriple:
    left: Value
    diff: Diff
    right: Value
    label: str = ""
    left_term: Optional[Term] = None
    right_term: Optional[Term] = None
    decomposition: Optional[tuple[Diff, Diff]] = None

    def as_tuple(self):
        return (self.left, self.diff, self.right)


_REAL_ANCHORS = (0.0, 1.0, -1.0, math.pi / 2, -math.pi / 2, math.pi, 2.5)


class ProbeSet:
    """Cached, seed-deterministic probe triples per type and family.

    ``family`` is ``"rho"`` (also used by the gamma checker) or ``"eta"``
    (triples carry decompositions).  At ``Real`` the two coincide.

    The per-type cache fills lazily; prime it (``generate_probes``) before
    sharing an instance across threads, after which reads are pure.
    """

    def __init__(self, config: ProbeConfig = ProbeConfig(),
                 registry: Registry = DEFAULT_REGISTRY):
        self.config = config
        self.registry = registry
        self._cache: dict[tuple, list[ProbeTriple]] = {}

    def triples(self, ty: Type, family: str = "rho") -> list[ProbeTriple]:
        if family not in ("rho", "eta"):
            raise ValueError(f"unknown probe family {family!r}")
        key = (ty, family)
        if key not in self._cache:
            if arrow_depth(ty) > MAX_PROBE_DEPTH:
                raise UnsupportedProbeDepth(
                    f"no probe library for {render_type(ty)}; supply probes")
            self._cache[key] = self._build(ty, family)
        return self._cache[key]

    # -- construction -------------------------------------------------------

    def _build(self, ty: Type, family: str) -> list[ProbeTriple]:
        if isinstance(ty, RealType):
            return self._real_triples()
        if isinstance(ty, PairType):
            lefts = self.triples(ty.left, family)
            rights = self.triples(ty.right, family)
            out = []
            for i in range(min(len(lefts), len(rights))):
                l, r = lefts[i], rights[i]
                decomp = None
                if l.decomposition and r.decomposition:
                    decomp = ((l.decomposition[0], r.decomposition[0]),
                              (l.decomposition[1], r.decomposition[1]))
                out.append(ProbeTriple(
                    (l.left, r.left), (l.diff, r.diff), (l.right, r.right),
                    label=f"({l.label},{r.label})", decomposition=decomp))
            return out
        if isinstance(ty, FnType):
            return self._fn_triples(ty, family)
        raise TypeError(f"not a type: {ty!r}")

    def _real_triples(self) -> list[ProbeTriple]:
        cfg = self.config
        rng = random.Random(cfg.seed)
        triples: list[ProbeTriple] = []

        def add(x: float, b: float, x2: float):
            gap = abs(x - x2)
            bound = b if gap <= b else gap  # keep |x - x2| <= b exact
            triples.append(ProbeTriple(x, bound, x2, label="real"))

        # displacements just inside the box boundary exercise near-extreme
        # behaviour while staying off exact-equality corners, where float
        # rounding would flip mathematically tight comparisons
        extreme = 1.0 - 1e-9
        for x in _REAL_ANCHORS:
            add(x, 0.0, x)
            add(x, 0.1, x + 0.05)
            add(x, cfg.b_max, x - 0.5 * cfg.b_max)
            add(x, cfg.b_max, x + extreme * cfg.b_max)
            add(x, cfg.b_max, x - extreme * cfg.b_max)
        target = max(cfg.count, len(triples))
        while len(triples) < target:
            x = rng.uniform(cfg.lo, cfg.hi)
            b = rng.uniform(0.0, cfg.b_max)
            x2 = x + rng.uniform(-1.0, 1.0) * b
            add(x, b, x2)
        return triples

    def _fn_triples(self, ty: FnType, family: str) -> list[ProbeTriple]:
        cfg = self.config
        rng = random.Random(cfg.seed + 1)
        terms = library_terms(ty, self.registry)
        entries = []
        for term in terms:
            entries.append((term, evaluate(term, registry=self.registry),
                            diff_evaluate(term, registry=self.registry)))

        out: list[ProbeTriple] = []
        top = top_diff(ty)
        for term, value, dvalue in entries:
            out.append(ProbeTriple(
                value, dvalue, value, label=render_term(term),
                left_term=term, right_term=term, decomposition=(dvalue, top)))

        # cross pairs need a pointwise gap, so only Real results qualify
        if isinstance(ty.res, RealType) and isinstance(ty.arg, RealType):
            pairs = [(i, j) for i in range(len(entries))
                     for j in range(len(entries)) if i != j]
            rng.shuffle(pairs)
            for i, j in pairs[:max(0, cfg.fn_count - len(out))]:
                ft, f, df = entries[i]
                gt, g, dg = entries[j]
                label = f"{render_term(ft)} vs {render_term(gt)}"
                if family == "eta":
                    # the difference is exactly the tensor of its split
                    tail = _eta_tail_diff(f, g, df, dg)
                    diff = (lambda df=df, tail=tail:
                            lambda x, b: df(x, b) + tail(x, b))()
                    out.append(ProbeTriple(
                        f, diff, g, label=label, left_term=ft, right_term=gt,
                        decomposition=(df, tail)))
                else:
                    out.append(ProbeTriple(
                        f, _cross_diff(f, g, df, dg), g, label=label,
                        left_term=ft, right_term=gt))
        return out[:max(cfg.fn_count, 1)]


def _cross_diff(f, g, df, dg) -> Diff:
    """Valid difference for (f, ., g): vertical gap plus the larger
    self-drift dominates both membership clauses."""
    def bound(x, b):
        return abs(f(x) - g(x)) + max(df(x, b), dg(x, b))
    return bound


def _eta_tail_diff(f, g, df, dg) -> Diff:
    # |f(x2) - g(x2)| <= drift of f + gap at x + drift of g
    def bound(x, b):
        return df(x, b) + abs(f(x) - g(x)) + dg(x, b)
    return bound


def generate_probes(ty: Type, config: ProbeConfig = ProbeConfig(),
                    registry: Registry = DEFAULT_REGISTRY) -> ProbeSet:
    """A probe set whose cache is primed for ``ty`` (and, lazily, any
    other type the checkers recurse into)."""
    ps = ProbeSet(config, registry)
    ps.triples(ty)
    return ps


# --- the term library --------------------------------------------------------

_REAL_FN_SOURCES = (
    r"\x:Real. x",
    r"\x:Real. sin(x)",
    r"\x:Real. cos(x)",
    r"\x:Real. 0",
    r"\x:Real. 2",
    r"\x:Real. 0.5 * x + 1",
    r"\x:Real. x * x",
    r"\x:Real. x + 0.25",
)

_FN_FN_SOURCES = (
    r"\f:Real->Real. \x:Real. (f (x + 0.1) - f x) / 0.1",
    r"\f:Real->Real. \x:Real. f x",
    r"\f:Real->Real. \x:Real. 2 * f x",
    r"\f:Real->Real. \x:Real. f (x + 0.5)",
    r"\f:Real->Real. \x:Real. sin(x)",
)

_FN_REAL_SOURCES = (
    r"\f:Real->Real. f 0",
    r"\f:Real->Real. f 1 + f (-1)",
)


def canonical_term(ty: Type, avoid: frozenset[str] = frozenset()) -> Term:
    """A closed inhabitant of any type: zeros, pairs of zeros, constant
    functions."""
    if isinstance(ty, RealType):
        return Lit(0)
    if isinstance(ty, PairType):
        return Pair(canonical_term(ty.left, avoid),
                    canonical_term(ty.right, avoid))
    if isinstance(ty, FnType):
        var = fresh_name("u", avoid)
        return Lam(var, ty.arg, canonical_term(ty.res, avoid | {var}))
    raise TypeError(f"not a type: {ty!r}")


def library_terms(ty: FnType, registry: Registry = DEFAULT_REGISTRY) -> list[Term]:
    fn_real = FnType(REAL, REAL)
    if ty == fn_real:
        return [parse_term(src, registry) for src in _REAL_FN_SOURCES]
    if ty == FnType(fn_real, fn_real):
        return [parse_term(src, registry) for src in _FN_FN_SOURCES]
    if ty == FnType(fn_real, REAL):
        return [parse_term(src, registry) for src in _FN_REAL_SOURCES]
    out = [canonical_term(ty)]
    if ty.arg == ty.res:
        var = fresh_name("u", frozenset())
        out.append(Lam(var, ty.arg, Var(var)))
    return out


# --- raw self-difference candidates -----------------------------------------

def empirical_self_diff(f, config: ProbeConfig) -> Diff:
    """Sampled supremum of |f(x) - f(z)| over the box; valid at the
    probes it is checked against, an under-claim elsewhere."""
    samples = max(config.z_samples, 3)

    def bound(x: float, b: float) -> float:
        if b == 0.0:
            return 0.0
        fx = f(x)
        worst = 0.0
        for i in range(samples):
            u = -1.0 + 2.0 * i / (samples - 1)
            worst = max(worst, abs(fx - f(x + u * b)))
        return worst
    return bound


def lipschitz_self_diff(f, config: ProbeConfig) -> Diff:
    """A slope-style self-difference: probe the maximal difference
    quotient over the configured range, round it up ten percent, and
    return the linear bound. Valid whenever the rounded slope really
    dominates, which the estimate verifies at the probes."""
    slope = 0.0
    steps = 25
    for i in range(steps + 1):
        x = config.lo + (config.hi - config.lo) * i / steps
        for h in (1e-3, 1e-2, 0.1, config.b_max or 0.1):
            if h == 0.0:
                continue
            slope = max(slope, abs(f(x + h) - f(x)) / h)
    slope *= 1.1
    return lambda x, b: slope * b
