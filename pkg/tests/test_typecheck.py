import pytest

from lamdist.syntax import (FnType, REAL, TypecheckError, parse_term,
                            render_type, typecheck)


def check(src, ctx=()):
    return typecheck(ctx, parse_term(src))


def test_identity():
    assert check(r"\x:Real. x") == FnType(REAL, REAL)


def test_difference_quotient_program():
    ty = check(r"\f:Real->Real. \x:Real. (f (x + 0.1) - f x) / 0.1")
    assert render_type(ty) == "(Real -> Real) -> Real -> Real"


def test_projection_of_non_product():
    with pytest.raises(TypecheckError, match="projection of non-product"):
        check("fst(x)", ctx=(("x", REAL),))


def test_unbound_variable():
    with pytest.raises(TypecheckError, match="unbound"):
        check("y")


def test_application_of_non_function():
    with pytest.raises(TypecheckError, match="non-function"):
        check("3 4")


def test_argument_mismatch():
    with pytest.raises(TypecheckError, match="argument has type"):
        check(r"(\f:Real->Real. f) 3")


def test_prim_args_must_be_real():
    with pytest.raises(TypecheckError, match="expected Real"):
        check(r"sin(\x:Real. x)")


def test_duplicate_context_rejected():
    with pytest.raises(TypecheckError, match="duplicate"):
        typecheck((("x", REAL), ("x", REAL)), parse_term("x"))


def test_pairs():
    assert render_type(check("(1, (2, 3))")) == "Real * (Real * Real)"
