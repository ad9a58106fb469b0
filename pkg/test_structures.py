"""
Test Suite for p-contact and s-symplectic structures

Predicates, the explicit constructions, the quadratic maps T and S and the
numeric point checks.
"""

import pytest
from hypothesis import given, settings, strategies as st

from pcontact.atlas import GlueStatus, Projective, Torus, Trivial, Twist, glue_check, make_section
from pcontact.cohomology import section_from_homogeneous, zspace_basis
from pcontact.errors import RejectedInput
from pcontact.structures import (
    FailureReason,
    StructureVerdict,
    construct_pn,
    contact_power,
    contact_root_k,
    is_p_contact,
    is_s_symplectic,
    metric_deviation,
    metric_independence_at,
    no_contact_check_at,
    print_structure_report,
    product_structure,
    product_top_identity,
    quadratic_S,
    quadratic_T,
    quadratic_T_value,
    standard_contact_section,
    standard_symplectic_torus,
    top_form_section,
    volume_check,
    volume_form_at,
)
from pcontact.symcore import Form, LaurentPoly, Scalar
from pcontact.weights import WeightModel, sample_points


@pytest.fixture(scope="module")
def gamma3():
    return construct_pn(3)


@pytest.fixture(scope="module")
def z12_basis():
    return [glue_check(section_from_homogeneous(a, 3, 2)).section for a in zspace_basis(3, 1, 2).basis]


# ============================================================================
# Explicit constructions
# ============================================================================

def test_construct_p3(gamma3):
    assert gamma3.glue_status == GlueStatus.VERIFIED
    assert gamma3.bundle == Twist(3, 2)
    report = is_p_contact(gamma3)
    assert report.verdict == StructureVerdict.P_CONTACT
    assert report.constants() == [1, -1, 1, -1]
    assert report.bundle_root_check
    assert report.parity_checks.dim_residue == 3


def test_construct_p7():
    gamma = construct_pn(7)
    report = is_p_contact(gamma)
    assert report.holds
    assert len(report.top_form_constants) == 8
    assert report.constants() == [(-1) ** a for a in range(8)]
    assert gamma.bundle == Twist(7, 4)


def test_construct_rejects_even_p():
    for n in (1, 2, 5, 6):
        with pytest.raises(RejectedInput):
            construct_pn(n)


def test_construct_reports_polar_charts(gamma3):
    # pullbacks of z_n dz_1 carry negative powers away from chart 0
    report = is_p_contact(gamma3)
    assert 0 not in report.polar_charts
    assert report.polar_charts
    assert report.to_dict()["polar_charts"] == report.polar_charts


# ============================================================================
# Predicate failures
# ============================================================================

def test_zero_section_fails():
    model = Projective(3)
    s = make_section(model, Twist(3, 2), 1, {c: Form.zero(3, 1) for c in model.chart_ids()})
    report = is_p_contact(s)
    assert report.verdict == StructureVerdict.FAILS
    assert report.reason == FailureReason.ZERO_TOP_FORM
    assert report.glue_status == GlueStatus.VERIFIED


def test_vanishing_top_form_names_its_zeros():
    x = LaurentPoly.variable(4, 1)
    eta = Form.dz(4, 1) * LaurentPoly.variable(4, 0) - Form.dz(4, 0) * x
    eta = eta + Form.dz(4, 3) * LaurentPoly.variable(4, 2) - Form.dz(4, 2) * LaurentPoly.variable(4, 3)
    report = is_p_contact(section_from_homogeneous(eta * x, 3, 3))
    assert report.reason == FailureReason.VANISHING_TOP_FORM
    assert report.chart == 0
    assert "z1" in report.witness


def test_gluing_failure_is_reported(gamma3):
    forms = dict(gamma3.chart_forms)
    forms[2] = forms[2] * 3
    report = is_p_contact(make_section(gamma3.model, gamma3.bundle, 1, forms))
    assert report.reason == FailureReason.GLUING
    assert report.glue_status == GlueStatus.FAILED
    assert report.witness


def test_parity_and_dimension_failures(gamma3):
    assert is_s_symplectic(gamma3).reason == FailureReason.DIMENSION
    assert is_s_symplectic(standard_symplectic_torus(2)).reason == FailureReason.PARITY


# ============================================================================
# Symplectic tori and products
# ============================================================================

def test_symplectic_torus():
    report = is_s_symplectic(standard_symplectic_torus(4))
    assert report.verdict == StructureVerdict.S_SYMPLECTIC
    assert report.constants() == [2]
    degenerate = make_section(Torus(4), Trivial(4), 2, {0: Form.dz(4, 0, 1)})
    assert is_s_symplectic(degenerate).reason == FailureReason.ZERO_TOP_FORM


def test_standard_contact_on_p3():
    eta = standard_contact_section(3)
    assert contact_power(eta, 0).glue_status == GlueStatus.VERIFIED
    report = is_p_contact(eta)
    assert report.holds
    assert report.top_form_constants[0] == 2


def test_contact_root():
    assert [contact_root_k(n) for n in (1, 3, 7)] == [2, 2, 2]
    assert contact_root_k(4) is None


def test_contact_power_on_p7():
    gamma = contact_power(standard_contact_section(7), 1)
    assert gamma.degree == 3
    assert gamma.bundle == Twist(7, 4)
    report = is_p_contact(gamma)
    assert report.verdict == StructureVerdict.P_CONTACT
    with pytest.raises(RejectedInput):
        contact_power(standard_contact_section(7), 0)


def test_product_structure(gamma3):
    omega = standard_symplectic_torus(4)
    product = product_structure(omega, gamma3)
    assert product.degree == 3
    assert product.dim == 7
    report = is_p_contact(product)
    assert report.holds
    assert report.constants() == [2, -2, 2, -2]
    assert report.bundle_root_check
    assert product_top_identity(omega, gamma3, product)


def test_product_rejects_bad_factors(gamma3):
    with pytest.raises(RejectedInput):
        product_structure(standard_symplectic_torus(2), gamma3)
    with pytest.raises(RejectedInput):
        product_structure(standard_symplectic_torus(4), standard_symplectic_torus(4))


def test_top_form_section(gamma3):
    top = top_form_section(gamma3)
    assert top.bundle == Twist(3, 4)
    assert top.degree == 3
    assert glue_check(top).verified


# ============================================================================
# Quadratic maps
# ============================================================================

def test_T_on_the_construction(gamma3):
    assert quadratic_T_value(gamma3) == 1
    assert quadratic_T([gamma3]).matrix == [[Scalar(1)]]
    assert quadratic_T_value(gamma3.scaled(3)) == 9
    assert quadratic_T_value(gamma3.scaled(Scalar(0, 1))) == -1


homogeneity_scalars = st.builds(
    Scalar,
    st.fractions(min_value=-3, max_value=3, max_denominator=5),
    st.fractions(min_value=-3, max_value=3, max_denominator=5),
)


@given(homogeneity_scalars)
@settings(max_examples=20, deadline=None)
def test_T_is_homogeneous_of_degree_two(gamma3, c):
    assert quadratic_T_value(gamma3.scaled(c)) == c * c * quadratic_T_value(gamma3)


def test_T_needs_the_right_bundle():
    with pytest.raises(RejectedInput):
        quadratic_T([standard_symplectic_torus(4)])


def test_S_on_the_torus():
    assert quadratic_S([standard_symplectic_torus(4)]).matrix == [[Scalar(2)]]


def test_T_on_twisted_one_forms_is_symmetric(z12_basis):
    T = quadratic_T(z12_basis)
    assert T.dim == 6
    assert T.is_symmetric()


@given(st.lists(st.integers(-2, 2), min_size=6, max_size=6))
@settings(max_examples=50, deadline=None)
def test_T_detects_contact_forms(z12_basis, coords):
    T = quadratic_T(z12_basis)
    s = z12_basis[0].scaled(coords[0])
    for c, b in zip(coords[1:], z12_basis[1:]):
        s = s + b.scaled(c)
    assert s.glue_status == GlueStatus.VERIFIED
    assert is_p_contact(s).holds == bool(T.evaluate(coords))
    assert quadratic_T_value(s) == T.evaluate(coords)


# ============================================================================
# Numeric point checks
# ============================================================================

def test_no_contact_equation_on_the_torus():
    points = sample_points(4, 50, seed=3)
    report = no_contact_check_at(standard_symplectic_torus(4), WeightModel.flat(), points)
    assert report.holds
    assert report.summary["max_residual"] == 0


def test_no_contact_equation_fails_for_contact_sections(gamma3):
    points = sample_points(3, 100, seed=0)
    fs = no_contact_check_at(gamma3, WeightModel.for_bundle(gamma3.bundle), points)
    assert not fs.holds
    assert fs.summary["min_residual"] > 1e-2
    flat = no_contact_check_at(gamma3, WeightModel.flat(), points)
    assert flat.summary["max_residual"] == pytest.approx(1.0)


def test_volume_density(gamma3):
    assert volume_form_at(gamma3, WeightModel.flat(), [0, 0, 0]) == pytest.approx(8)
    report = volume_check(gamma3, WeightModel.for_bundle(gamma3.bundle), sample_points(3, 100, seed=0))
    assert report.holds
    assert report.summary["all_positive"]
    assert len(report.evaluated) == 100


def test_metric_independence(gamma3):
    points = sample_points(3, 100, seed=2)
    flat, fs = metric_independence_at(gamma3, [WeightModel.flat(), WeightModel.fubini_study(2)], points)
    assert flat.summary["max_deviation"] == 0
    assert fs.holds
    assert fs.summary["max_deviation"] <= 1e-9


def test_metric_independence_in_degree_three():
    gamma = contact_power(standard_contact_section(7), 1)
    fs = WeightModel.for_bundle(gamma.bundle)
    points = sample_points(7, 20, seed=1)
    for point in points[:3]:
        assert metric_deviation(gamma, fs, point) <= 1e-9
    (report,) = metric_independence_at(gamma, [fs], points)
    assert report.holds
    assert len(report.evaluated) == 20


def test_metric_dependence_in_even_degree():
    omega = Form.dz(5, 0, 1) + Form.dz(5, 2, 3)
    s = make_section(Torus(5), Trivial(5), 2, {0: omega})
    (report,) = metric_independence_at(s, [WeightModel.fubini_study(1)], sample_points(5, 20, seed=0))
    assert not report.holds


def test_print_structure_report(gamma3, capsys):
    print_structure_report(is_p_contact(gamma3))
    out = capsys.readouterr().out
    assert "VERDICT: P_CONTACT" in out
    assert "Chart constants" in out


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-v"]))
