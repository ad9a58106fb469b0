"""
Test Suite for the symbolic core

Exact scalars, Laurent polynomials and forms: algebraic laws checked with
hypothesis, sign conventions and parsing checked on explicit examples.
"""

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from pcontact.errors import PoleError, RejectedInput
from pcontact.symcore import (
    Form,
    LaurentPoly,
    NumericForm,
    Scalar,
    contract,
    coordinate_field,
    del_op,
    euler_field,
    eval_at,
    eval_exact,
    normalize,
    parse_form_terms,
    parse_laurent,
    parse_scalar,
    wedge,
    wedge_power,
)

NVARS = 4
NAMES = ["a", "b", "c", "d"]


# ============================================================================
# Strategies
# ============================================================================

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
scalars = st.builds(Scalar, fractions, fractions)
small_scalars = st.builds(Scalar, st.integers(-3, 3), st.integers(-2, 2))


def laurent_polys(nvars=NVARS, min_exp=-1, max_exp=2, max_terms=3):
    exponent = st.tuples(*[st.integers(min_exp, max_exp)] * nvars)
    return st.dictionaries(exponent, small_scalars, max_size=max_terms).map(lambda t: LaurentPoly(nvars, t))


def forms(degree, nvars=NVARS, **kwargs):
    indices = list(combinations(range(nvars), degree))
    return st.dictionaries(st.sampled_from(indices), laurent_polys(nvars, **kwargs), max_size=3).map(
        lambda c: Form(nvars, degree, c)
    )


# ============================================================================
# Scalars
# ============================================================================

@given(scalars, scalars, scalars)
@settings(max_examples=60, deadline=None)
def test_scalar_field_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@given(scalars)
@settings(max_examples=40, deadline=None)
def test_scalar_render_parses_back(a):
    assert parse_scalar(a.render()) == a


def test_scalar_render_examples():
    assert Scalar(3).render() == "3"
    assert Scalar(Fraction(-1, 2)).render() == "-1/2"
    assert Scalar(Fraction(1, 2), -3).render() == "(1/2-3i)"
    assert Scalar(0, 1).render() == "(0+1i)"
    assert Scalar(0, 1) ** 2 == -1
    assert Scalar(1, 1).conjugate() == Scalar(1, -1)
    assert Scalar(3, 4).abs2() == 25


def test_scalar_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Scalar(1) / Scalar(0)


# ============================================================================
# Laurent polynomials
# ============================================================================

@given(laurent_polys(), laurent_polys(), laurent_polys())
@settings(max_examples=50, deadline=None)
def test_laurent_ring_laws(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f - f).is_zero()


@given(laurent_polys(), laurent_polys())
@settings(max_examples=40, deadline=None)
def test_product_rule(f, g):
    for i in range(NVARS):
        assert (f * g).diff(i) == f.diff(i) * g + f * g.diff(i)


@given(laurent_polys())
@settings(max_examples=60, deadline=None)
def test_render_parse_round_trip(f):
    assert parse_laurent(f.render(NAMES), NAMES) == f


def test_normalize_merges_and_drops_zeros():
    raw = LaurentPoly.from_terms(2, [((1, 0), 2), ((1, 0), -2), ((0, -1), Fraction(2, 4))])
    assert normalize(raw).terms == {(0, -1): Scalar(Fraction(1, 2))}


def test_render_examples():
    x = LaurentPoly.variable(2, 0)
    y = LaurentPoly.variable(2, 1)
    f = x * y - x ** -1 * 3 + Fraction(1, 2)
    assert f.render(["x", "y"]) == "-3*x^-1 + 1/2 + x*y"
    assert parse_laurent("-3*x^-1 + 1/2 + x*y", ["x", "y"]) == f


def test_parse_rejects_unknown_variables():
    with pytest.raises(ValueError):
        parse_laurent("zbar1 + z2", ["z1", "z2"])


def test_monomial_inverse_and_non_units():
    m = LaurentPoly.monomial((2, -1), 4)
    assert m * m.inverse() == LaurentPoly.one(2)
    with pytest.raises(RejectedInput):
        (m + 1).inverse()


def test_substitute_and_embed():
    x, y = LaurentPoly.variable(2, 0), LaurentPoly.variable(2, 1)
    f = x ** 2 * y ** -1
    images = [x * y, y]
    assert f.substitute(images, 2) == x ** 2 * y
    assert f.embed(4, 1) == LaurentPoly.monomial((0, 2, -1, 0))


def test_evaluation_and_poles():
    f = LaurentPoly.monomial((1, -1), 2)
    assert f.eval_exact([Scalar(3), Scalar(2)]) == 3
    assert f.eval_at([1j, 2]) == pytest.approx(1j)
    with pytest.raises(PoleError) as info:
        f.eval_at([1, 0])
    assert info.value.variable == 1


# ============================================================================
# Forms
# ============================================================================

@given(forms(1), forms(2))
@settings(max_examples=40, deadline=None)
def test_wedge_graded_commutative(a, b):
    assert wedge(a, b) == wedge(b, a) * (-1) ** (a.degree * b.degree)


@given(forms(1))
@settings(max_examples=40, deadline=None)
def test_odd_forms_square_to_zero(a):
    assert wedge(a, a).is_zero()


@given(forms(1), forms(1), forms(1))
@settings(max_examples=30, deadline=None)
def test_wedge_associative(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(forms(1))
@settings(max_examples=40, deadline=None)
def test_del_squared_vanishes(a):
    assert del_op(del_op(a)).is_zero()


@given(forms(1), forms(1))
@settings(max_examples=40, deadline=None)
def test_del_leibniz(a, b):
    left = del_op(wedge(a, b))
    right = wedge(del_op(a), b) + wedge(a, del_op(b)) * (-1) ** a.degree
    assert left == right


@given(forms(1), forms(2), st.integers(0, NVARS - 1))
@settings(max_examples=40, deadline=None)
def test_contraction_is_antiderivation(a, b, var):
    xi = coordinate_field(NVARS, var)
    left = contract(xi, wedge(a, b))
    right = wedge(contract(xi, a), b) + wedge(a, contract(xi, b)) * (-1) ** a.degree
    assert left == right


@given(forms(2))
@settings(max_examples=30, deadline=None)
def test_to_mapping_round_trip(a):
    assert parse_form_terms(a.to_mapping(NAMES), NAMES, 2) == a


def test_sign_conventions():
    dz = lambda *i: Form.dz(3, *i)
    assert dz(1, 0) == -dz(0, 1)
    assert dz(0, 0).is_zero()
    assert wedge(dz(1), dz(0)) == -dz(0, 1)
    # del prepends the new differential
    assert del_op(Form.dz(3, 0) * LaurentPoly.variable(3, 2)) == dz(2, 0)
    # contraction removes dz_{i_k} with (-1)^k
    assert contract(coordinate_field(3, 1), dz(0, 1)) == -dz(0)
    assert contract(coordinate_field(3, 0), dz(0, 1)) == dz(1)


def test_euler_contraction_of_rotation_form():
    x0, x1 = LaurentPoly.variable(2, 0), LaurentPoly.variable(2, 1)
    alpha = Form.dz(2, 0) * x1 - Form.dz(2, 1) * x0
    assert contract(euler_field(2), alpha).is_zero()


def test_degree_guards():
    with pytest.raises(RejectedInput):
        wedge(Form.dz(2, 0, 1), Form.dz(2, 0))
    with pytest.raises(RejectedInput):
        contract(euler_field(2), Form.function(LaurentPoly.one(2)))
    with pytest.raises(RejectedInput):
        Form(3, 2, {(1, 0): LaurentPoly.one(3)})


def test_wedge_power():
    omega = Form.dz(4, 0, 1) + Form.dz(4, 2, 3)
    assert wedge_power(omega, 0) == Form.function(LaurentPoly.one(4))
    assert wedge_power(omega, 2) == Form.dz(4, 0, 1, 2, 3) * 2


def test_form_render():
    z = LaurentPoly.variable(3, 2)
    gamma = Form.dz(3, 0) * z + Form.dz(3, 1)
    assert gamma.render(["z1", "z2", "z3"]) == "z3*dz1 + dz2"
    assert gamma.to_mapping(["z1", "z2", "z3"]) == {"dz1": "z3", "dz2": "1"}


def test_form_evaluation():
    z = LaurentPoly.variable(2, 1)
    a = Form.dz(2, 0) * z + Form.dz(2, 1) * Scalar(0, 1)
    numeric = eval_at(a, [1, 2])
    assert isinstance(numeric, NumericForm)
    assert numeric.coefficient((0,)) == pytest.approx(2)
    assert numeric.coefficient((1,)) == pytest.approx(1j)
    assert eval_exact(a, [Scalar(1), Scalar(0)]) == {(1,): Scalar(0, 1)}


def test_numeric_wedge_matches_symbolic():
    x = LaurentPoly.variable(3, 0)
    a = Form.dz(3, 0) * x + Form.dz(3, 2)
    b = Form.dz(3, 1) - Form.dz(3, 0) * 2
    point = [0.5 + 1j, 2.0, -1.0]
    direct = eval_at(wedge(a, b), point)
    numeric = eval_at(a, point).wedge(eval_at(b, point))
    assert (direct - numeric).norm() < 1e-12


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-v"]))
