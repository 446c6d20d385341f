"""Probe-based membership checkers for the distance relation families.

Four families share the base case (|x - x2| <= a at ``Real``, products
componentwise) and differ at arrows:

* the main family: for every related input triple, the output bound must
  cover both the two-sided drift (f x vs f2 x2) and the self drift
  (f x vs f x2);
* the vertical family (the left observational metric): the bound covers
  the gap at the *same* input, plus a dominance condition against
  self-distances of the right-hand function;
* the decomposition family (partial-metric style): the bound must split
  into a self part and a crossing part;
* the right-observational family: tensoring with any self-distance of
  the left function lands back in the decomposition family.

Falsification is definitive (witnesses re-check arithmetically);
success is always relative to the probes used.  Self-distance probes for
the vertical/right families default to the coarse (slope-style)
estimates; passing ``tight_self_probes=True`` adds derivative-grade
self-distances, which genuinely falsify more triples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from ..prims import DEFAULT_REGISTRY, Registry
from ..semantics.diff import (Diff, diff_evaluate, residual_diff, tensor_diff,
                              top_diff)
from ..semantics.eval import Value, evaluate
from ..syntax.terms import (FnType, PairType, RealType, Term, Type,
                            arrow_depth)
from ..syntax.typecheck import typecheck
from .probes import (ProbeSet, empirical_self_diff, lipschitz_self_diff)


@dataclass(frozen=True)
class Falsified:
    clause: str
    path: tuple[str, ...]
    lhs: float
    rhs: float

    @property
    def recheck(self) -> dict:
        return {"clause": self.clause, "path": list(self.path),
                "lhs": self.lhs, "rhs": self.rhs,
                "expected": "lhs <= rhs", "holds": self.lhs <= self.rhs}

    def reverifies(self) -> bool:
        return not (self.lhs <= self.rhs)


@dataclass(frozen=True)
class Consistent:
    probes: int
    depth: int = 0
    established: bool = True
    note: str = ""


Verdict = Union[Falsified, Consistent]


class _Counter:
    __slots__ = ("n",)

    def __init__(self):
        self.n = 0


def _base(x: float, a: float, x2: float, path, counter) -> Optional[Falsified]:
    counter.n += 1
    lhs = abs(x - x2)
    if lhs <= a:
        return None
    return Falsified("base", tuple(path), lhs, float(a))


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


# --- the main family ---------------------------------------------------------

def check_rho(ty: Type, x: Value, a: Diff, x2: Value, probes: ProbeSet,
              registry: Registry = DEFAULT_REGISTRY) -> Verdict:
    counter = _Counter()
    bad = _rho(ty, x, a, x2, probes, [], counter)
    if bad is not None:
        return bad
    return Consistent(counter.n, arrow_depth(ty))


def _rho(ty, x, a, x2, probes, path, counter) -> Optional[Falsified]:
    if isinstance(ty, RealType):
        return _base(x, a, x2, path, counter)
    if isinstance(ty, PairType):
        return (_rho(ty.left, x[0], a[0], x2[0], probes, path + ["fst"], counter)
                or _rho(ty.right, x[1], a[1], x2[1], probes, path + ["snd"],
                        counter))
    if isinstance(ty, FnType):
        for probe in probes.triples(ty.arg, "rho"):
            y, b, y2 = probe.as_tuple()
            out = a(y, b)
            fy = x(y)
            here = f"at {probe.label or _fmt(y)}" \
                   + (f" b={_fmt(b)}" if isinstance(b, float) else "")
            for side, target in (("cross", x2(y2)), ("self", x(y2))):
                bad = _rho(ty.res, fy, out, target, probes,
                           path + [f"{here} [{side}]"], counter)
                if bad is not None:
                    return bad
        return None
    raise TypeError(f"not a type: {ty!r}")


# --- the vertical (left observational) family --------------------------------

def check_gamma(ty: Type, x: Value, a: Diff, x2: Value, probes: ProbeSet,
                registry: Registry = DEFAULT_REGISTRY,
                right_term: Term | None = None,
                tight_self_probes: bool = False) -> Verdict:
    counter = _Counter()
    bad = _gamma(ty, x, a, x2, probes, registry, right_term,
                 tight_self_probes, [], counter)
    if bad is not None:
        return bad
    return Consistent(counter.n, arrow_depth(ty))


def _gamma(ty, x, a, x2, probes, registry, right_term, tight, path, counter
           ) -> Optional[Falsified]:
    if isinstance(ty, RealType):
        return _base(x, a, x2, path, counter)
    if isinstance(ty, PairType):
        return (_gamma(ty.left, x[0], a[0], x2[0], probes, registry, None,
                       tight, path + ["fst"], counter)
                or _gamma(ty.right, x[1], a[1], x2[1], probes, registry, None,
                          tight, path + ["snd"], counter))
    if isinstance(ty, FnType):
        # vertical clause: both functions probed at the same input
        for probe in probes.triples(ty.arg, "rho"):
            y, b, _ = probe.as_tuple()
            bad = _gamma(ty.res, x(y), a(y, b), x2(y), probes, registry, None,
                         tight, path + [f"vertical at {probe.label or _fmt(y)}"],
                         counter)
            if bad is not None:
                return bad
        # dominance clause: tensoring with self-distances of the right
        # function keeps the left function close to itself
        est = estimate_self_distance(ty, x2, probes, registry,
                                     term=right_term)
        for provenance, selfd in est.candidates:
            if not tight and provenance in ("derivative", "empirical"):
                continue
            bad = _rho(ty, x, tensor_diff(ty, a, selfd), x, probes,
                       path + [f"dominance via {provenance} self-distance"],
                       counter)
            if bad is not None:
                return bad
        return None
    raise TypeError(f"not a type: {ty!r}")


# --- the decomposition (partial-metric) family -------------------------------

def check_eta(ty: Type, x: Value, a: Diff, x2: Value, probes: ProbeSet,
              registry: Registry = DEFAULT_REGISTRY,
              decomposition: tuple[Diff, Diff] | None = None,
              left_term: Term | None = None) -> Verdict:
    counter = _Counter()
    result = _eta(ty, x, a, x2, probes, registry, decomposition, left_term,
                  [], counter)
    if result is None:
        return Consistent(counter.n, arrow_depth(ty))
    if isinstance(result, Falsified):
        return result
    return Consistent(counter.n, arrow_depth(ty), established=False,
                      note=result)


def _eta(ty, x, a, x2, probes, registry, decomposition, left_term, path,
         counter) -> Optional[Union[Falsified, str]]:
    """None = holds; Falsified = definitive; str = no decomposition found."""
    if isinstance(ty, RealType):
        return _base(x, a, x2, path, counter)
    if isinstance(ty, PairType):
        for idx, (sub, tag) in enumerate(((ty.left, "fst"), (ty.right, "snd"))):
            sub_dec = None
            if decomposition is not None:
                sub_dec = (decomposition[0][idx], decomposition[1][idx])
            r = _eta(sub, x[idx], a[idx], x2[idx], probes, registry, sub_dec,
                     None, path + [tag], counter)
            if r is not None:
                return r
        return None
    if isinstance(ty, FnType):
        candidates = []
        if decomposition is not None:
            candidates.append(("supplied", decomposition))
        else:
            top = top_diff(ty)
            candidates.append(("left-total", (a, top)))
            candidates.append(("right-total", (top, a)))
            est = estimate_self_distance(ty, x, probes, registry,
                                         term=left_term)
            for provenance, selfd in est.candidates:
                candidates.append((f"self+{provenance}",
                                   (selfd, residual_diff(ty, selfd, a))))
        notes = []
        for name, (a1, a2) in candidates:
            verdict = _try_eta_decomposition(ty, x, a, x2, a1, a2, probes,
                                             registry, path, counter)
            if verdict is None:
                return None
            if isinstance(verdict, Falsified) and decomposition is not None:
                # a user-supplied decomposition that fails is a real verdict
                return verdict
            notes.append(name)
        impossible = _eta_impossible(ty, x, a, x2, probes, path, counter)
        if impossible is not None:
            return impossible
        return ("no decomposition found among candidates: "
                + ", ".join(notes))
    raise TypeError(f"not a type: {ty!r}")


def _eta_impossible(ty: FnType, x, a, x2, probes, path, counter
                    ) -> Optional[Falsified]:
    """Sound refutation of the existential at Real-result arrows.

    Any split must cover, pointwise at a probe (y, b, y2), both the self
    drift |x y - x y2| and the crossing gap |x y2 - x2 y2|, while their
    sum stays under a(y, b).  If one probe already needs more than
    a(y, b), no split exists; probes are genuine members of the family,
    so this refutes membership outright.
    """
    if not isinstance(ty.res, RealType):
        return None
    for probe in probes.triples(ty.arg, "eta"):
        y, b, y2 = probe.as_tuple()
        counter.n += 1
        need = abs(x(y) - x(y2)) + abs(x(y2) - x2(y2))
        have = a(y, b)
        if need > have:
            return Falsified(
                "no-split", tuple(path) + (
                    f"at {probe.label or _fmt(y)}: self drift plus crossing "
                    f"gap exceed the claimed difference",),
                need, float(have))
    return None


def _try_eta_decomposition(ty: FnType, x, a, x2, a1, a2, probes, registry,
                           path, counter) -> Optional[Union[Falsified, str]]:
    # the split must undershoot the claimed difference at the probes
    for probe in probes.triples(ty.arg, "eta"):
        y, b, _ = probe.as_tuple()
        if not _diff_leq_at(ty.res, tensor_diff(ty.res, a1(y, b), a2(y, b)),
                            a(y, b), probes):
            return "split exceeds the difference"
    for probe in probes.triples(ty.arg, "eta"):
        y, b, y2 = probe.as_tuple()
        here = f"at {probe.label or _fmt(y)}"
        r = _eta(ty.res, x(y), a1(y, b), x(y2), probes, registry,
                 None, None, path + [f"{here} [self part]"], counter)
        if r is not None:
            return r
        r = _eta(ty.res, x(y2), a2(y, b), x2(y2), probes, registry,
                 None, None, path + [f"{here} [crossing part]"], counter)
        if r is not None:
            return r
    return None


def _diff_leq_at(ty: Type, d1: Diff, d2: Diff, probes: ProbeSet) -> bool:
    """d1 numerically below d2, compared at probes under arrows."""
    if isinstance(ty, RealType):
        return d1 <= d2
    if isinstance(ty, PairType):
        return (_diff_leq_at(ty.left, d1[0], d2[0], probes)
                and _diff_leq_at(ty.right, d1[1], d2[1], probes))
    if isinstance(ty, FnType):
        return all(_diff_leq_at(ty.res, d1(p.left, p.diff), d2(p.left, p.diff),
                                probes)
                   for p in probes.triples(ty.arg, "eta"))
    raise TypeError(f"not a type: {ty!r}")


# --- the right observational family ------------------------------------------

def check_delta(ty: Type, x: Value, a: Diff, x2: Value, probes: ProbeSet,
                registry: Registry = DEFAULT_REGISTRY,
                left_term: Term | None = None,
                tight_self_probes: bool = False) -> Verdict:
    """Tensor with every self-distance probe of the left element and land
    in the decomposition family."""
    if isinstance(ty, (RealType, PairType)):
        return check_eta(ty, x, a, x2, probes, registry)
    counter = 0
    est = estimate_self_distance(ty, x, probes, registry, term=left_term,
                                 family="eta")
    if not est.candidates:
        return Consistent(0, arrow_depth(ty), established=False,
                          note="no verified self-distance probes for the "
                               "left element")
    undetermined = []
    for provenance, selfd in est.candidates:
        if not tight_self_probes and provenance in ("derivative", "empirical"):
            continue
        verdict = check_eta(ty, x, tensor_diff(ty, a, selfd), x2, probes,
                            registry)
        if isinstance(verdict, Falsified):
            return Falsified(verdict.clause,
                             (f"self-probe {provenance}",) + verdict.path,
                             verdict.lhs, verdict.rhs)
        counter += verdict.probes
        if not verdict.established:
            undetermined.append(provenance)
    if undetermined:
        return Consistent(counter, arrow_depth(ty), established=False,
                          note="no decomposition found for self-probe(s): "
                               + ", ".join(undetermined))
    return Consistent(counter, arrow_depth(ty))


# --- the soundness triple of a closed term -----------------------------------

def check_fundamental(t: Term, probes: ProbeSet,
                      registry: Registry = DEFAULT_REGISTRY) -> Verdict:
    """The (value, difference, value) triple of a closed term belongs to
    the main family; exact at first order."""
    ty = typecheck((), t, registry)
    x = evaluate(t, registry=registry)
    d = diff_evaluate(t, registry=registry)
    return check_rho(ty, x, d, x, probes, registry)


# --- over-approximation combination -------------------------------------------

@dataclass(frozen=True)
class ApproxReport:
    hypothesis_failures: tuple[Falsified, ...]
    self_left: Verdict
    self_right: Verdict
    conclusion: Verdict
    probes: int

    @property
    def hypotheses_hold(self) -> bool:
        return (not self.hypothesis_failures
                and isinstance(self.self_left, Consistent)
                and isinstance(self.self_right, Consistent))

    @property
    def passed(self) -> bool:
        return self.hypotheses_hold and isinstance(self.conclusion, Consistent)


def check_theorem_approx(f: Value, f2: Value, a: Diff, a2: Diff,
                         domain: Type, probes: ProbeSet,
                         registry: Registry = DEFAULT_REGISTRY) -> ApproxReport:
    """Vertical gap plus shared self-distance bounds the two-sided
    distance between functions into the reals.

    Hypotheses: |f y - f2 y| <= a(y, b) at every domain probe, and a2 is
    a self-distance for both functions.  Conclusion: (f, a tensor a2, f2)
    is consistent for the main family.  Hypothesis violations are
    reported apart from conclusion violations.
    """
    ty = FnType(domain, RealType())
    hyp_failures = []
    counter = 0
    for probe in probes.triples(domain, "rho"):
        y, b, _ = probe.as_tuple()
        counter += 1
        lhs = abs(f(y) - f2(y))
        rhs = a(y, b)
        if lhs > rhs:
            hyp_failures.append(Falsified(
                "hypothesis", (f"at {probe.label or _fmt(y)}",), lhs, rhs))
    self_left = check_rho(ty, f, a2, f, probes, registry)
    self_right = check_rho(ty, f2, a2, f2, probes, registry)
    conclusion = check_rho(ty, f, tensor_diff(ty, a, a2), f2, probes, registry)
    return ApproxReport(tuple(hyp_failures), self_left, self_right,
                        conclusion, counter)


# --- constructive transitivity split for the decomposition family ------------

def eta_transitivity_split(ty: Type, a: Diff, b: Diff,
                           a_split: tuple[Diff, Diff] | None = None,
                           b_split: tuple[Diff, Diff] | None = None
                           ) -> tuple[Diff, Diff]:
    """Given chained differences a (x to z) and b (z to y), produce
    (c1, c2) with c1 a self-distance for z, c2 a crossing distance for
    x to y, and c1 tensor c2 dominating a tensor b.

    At the base the split is (0, a + b).  At arrows it needs the splits
    of a and b themselves and recurses on their crossing parts: the self
    output tensors b's self part with the recursive self part, and the
    crossing output tensors a's self part with the recursive crossing
    part.  (Pairing the other way fails: the self part of the middle
    element must come from the difference *leaving* it, as the checker
    demonstrates on concrete function triples.)
    """
    if isinstance(ty, RealType):
        return (0.0, a + b)
    if isinstance(ty, PairType):
        l = eta_transitivity_split(ty.left, a[0], b[0],
                                   _proj_split(a_split, 0),
                                   _proj_split(b_split, 0))
        r = eta_transitivity_split(ty.right, a[1], b[1],
                                   _proj_split(a_split, 1),
                                   _proj_split(b_split, 1))
        return ((l[0], r[0]), (l[1], r[1]))
    if isinstance(ty, FnType):
        if a_split is None or b_split is None:
            raise ValueError("arrow-type transitivity split needs the "
                             "decompositions of both differences")
        a1, a2 = a_split
        b1, b2 = b_split
        res = ty.res

        def k(w, d):
            return eta_transitivity_split(res, a2(w, d), b2(w, d))[0]

        def l(w, d):
            return eta_transitivity_split(res, a2(w, d), b2(w, d))[1]

        c1 = lambda w, d: tensor_diff(res, b1(w, d), k(w, d))  # noqa: E731
        c2 = lambda w, d: tensor_diff(res, a1(w, d), l(w, d))  # noqa: E731
        return (c1, c2)
    raise TypeError(f"not a type: {ty!r}")


def _proj_split(split, idx):
    if split is None:
        return None
    return (split[0][idx], split[1][idx])


# --- self-distance estimation -------------------------------------------------

@dataclass(frozen=True)
class SelfDistanceEstimate:
    ty: Type
    candidates: tuple[tuple[str, Diff], ...]  # (provenance, diff), verified
    probes: int

    def members(self) -> list[Diff]:
        return [d for _, d in self.candidates]

    def by_provenance(self, name: str) -> Optional[Diff]:
        for provenance, d in self.candidates:
            if provenance == name:
                return d
        return None


def estimate_self_distance(ty: Type, x: Value, probes: ProbeSet,
                           registry: Registry = DEFAULT_REGISTRY,
                           term: Term | None = None,
                           family: str = "rho") -> SelfDistanceEstimate:
    """Verified self-distance candidates for ``x``, tightest not
    guaranteed.

    At ``Real`` the self-distance is exactly 0.  At arrows the raw
    candidates are: the difference evaluator run on a backing term
    (globally valid), a slope-style linear bound, a sampled empirical
    bound, and the top difference (valid only for constants); each is
    kept only if it passes the main-family self check over the probes.
    """
    if isinstance(ty, RealType):
        return SelfDistanceEstimate(ty, (("exact", 0.0),), 0)
    if isinstance(ty, PairType):
        left = estimate_self_distance(ty.left, x[0], probes, registry)
        right = estimate_self_distance(ty.right, x[1], probes, registry)
        combined = tuple((f"({pl},{pr})", (dl, dr))
                         for (pl, dl) in left.candidates
                         for (pr, dr) in right.candidates)
        return SelfDistanceEstimate(ty, combined, left.probes + right.probes)
    if isinstance(ty, FnType):
        raw: list[tuple[str, Diff]] = []
        if term is not None:
            raw.append(("derivative", diff_evaluate(term, registry=registry)))
        if isinstance(ty.arg, RealType) and isinstance(ty.res, RealType):
            raw.append(("lipschitz", lipschitz_self_diff(x, probes.config)))
            raw.append(("empirical", empirical_self_diff(x, probes.config)))
        raw.append(("top", top_diff(ty)))
        verified = []
        total = 0
        for provenance, cand in raw:
            if family == "eta":
                verdict = check_eta(ty, x, cand, x, probes, registry,
                                    decomposition=(cand, top_diff(ty)))
            else:
                verdict = check_rho(ty, x, cand, x, probes, registry)
            if isinstance(verdict, Consistent) and verdict.established:
                verified.append((provenance, cand))
                total += verdict.probes
        return SelfDistanceEstimate(ty, tuple(verified), total)
    raise TypeError(f"not a type: {ty!r}")
