import math
import random
from fractions import Fraction

import pytest

from lamdist.gen import random_closed_fn_term
from lamdist.prims import EvalDomainError, default_registry
from lamdist.semantics import diff_evaluate, evaluate
from lamdist.syntax import parse_term

DEPS = r"\f:Real->Real. \x:Real. (f (x + 0.1) - f x) / 0.1"


def test_eval_identity_application():
    assert evaluate(parse_term(r"(\x:Real. x) 3.0")) == 3.0


def test_eval_projections():
    assert evaluate(parse_term("fst((1, 2))")) == 1.0
    assert evaluate(parse_term("snd((1, (2, 3)))")) == (2.0, 3.0)


def test_eval_difference_quotient_of_sin():
    d = evaluate(parse_term(DEPS))
    got = d(math.sin)(0.0)
    assert got == pytest.approx(math.sin(0.1) / 0.1, abs=1e-12)
    assert got == pytest.approx(0.998334, abs=1e-6)


def test_eval_division_by_zero_is_domain_error():
    with pytest.raises(EvalDomainError):
        evaluate(parse_term("1 / (2 - 2)"))


def test_exact_mode_field_arithmetic():
    t = parse_term(r"(\x:Real. (x + 0.1) / 0.3) 0.2")
    assert evaluate(t, exact=True) == Fraction(1)


def test_exact_mode_is_deterministic_for_sin():
    t = parse_term("sin(0.5) + sin(0.5)")
    assert evaluate(t, exact=True) == 2 * Fraction(math.sin(0.5))


def test_diff_variable_projects_environment():
    t = parse_term("x")
    assert diff_evaluate(t, {"x": 5.0}, {"x": 0.3}) == 0.3


def test_diff_literal_is_zero():
    assert diff_evaluate(parse_term("3.5"), {}, {}) == 0.0


def test_diff_primitive_uses_modulus():
    t = parse_term("sin(x)")
    got = diff_evaluate(t, {"x": 0.0}, {"x": 0.1})
    assert got == pytest.approx(math.sin(0.1), abs=1e-15)


def test_diff_of_difference_quotient_matches_displayed_formula():
    # the difference of the forward quotient at f with input-difference
    # function a is  (a(x + eps)(b) + a(x)(b)) / eps
    eps = 0.1
    dd = diff_evaluate(parse_term(DEPS))

    def a(x, b):
        return abs(x - math.sin(x)) + b

    e_of_id = dd(lambda v: v, a)
    rng = random.Random(3)
    for _ in range(40):
        x = rng.uniform(-5, 5)
        b = rng.uniform(0, 1)
        want = (a(x + eps, b) + a(x, b)) / eps
        assert e_of_id(x, b) == pytest.approx(want, rel=1e-12)


def test_diff_zero_error_collapses_to_zero():
    rng = random.Random(4)
    for _ in range(30):
        t = random_closed_fn_term(rng)
        d = diff_evaluate(t)
        x = rng.uniform(-3, 3)
        assert d(x, 0.0) == 0.0


def test_diff_monotone_in_the_error():
    rng = random.Random(5)
    for _ in range(30):
        t = random_closed_fn_term(rng)
        d = diff_evaluate(t)
        x = rng.uniform(-3, 3)
        b1 = rng.uniform(0, 1)
        b2 = b1 + rng.uniform(0, 1)
        assert d(x, b1) <= d(x, b2) + 1e-12


def test_diff_pairs_and_projections():
    t = parse_term(r"\x:Real. (x, sin(x))")
    d = diff_evaluate(t)
    dx, dsin = d(0.0, 0.1)
    assert dx == 0.1
    assert dsin == pytest.approx(math.sin(0.1))
    t2 = parse_term(r"\x:Real. fst((x, x))")
    assert diff_evaluate(t2)(1.0, 0.25) == 0.25
