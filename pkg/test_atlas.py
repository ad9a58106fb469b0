"""
Test Suite for the chart atlas

Coordinate changes, transition cocycles, pullbacks, gluing certificates,
section files and the weight models evaluated on charts.
"""

import math
from fractions import Fraction
from itertools import product as cartesian

import pytest
from hypothesis import given, settings, strategies as st

from pcontact.atlas import (
    ExternalTensor,
    GlueStatus,
    Product,
    Projective,
    Torus,
    Trivial,
    Twist,
    anticanonical_bundle,
    dumps_section,
    glue_check,
    load_section,
    loads_section,
    make_section,
    pullback,
    save_section,
    section_to_dict,
    transform_point,
    transition_function,
)
from pcontact.cohomology import section_from_homogeneous
from pcontact.errors import PoleError, RejectedInput, SectionFormatError
from pcontact.structures import standard_contact_section
from pcontact.symcore import Form, LaurentPoly, Scalar, del_op, wedge
from pcontact.weights import WeightModel, sample_points, weight_gluing_residual


def p2_forms(degree):
    exponent = st.tuples(*[st.integers(-1, 2)] * 2)
    polys = st.dictionaries(exponent, st.integers(-3, 3), max_size=3).map(lambda t: LaurentPoly(2, t))
    indices = [(0,), (1,)] if degree == 1 else [(0, 1)]
    return st.dictionaries(st.sampled_from(indices), polys, max_size=2).map(lambda c: Form(2, degree, c))


charts_p2 = st.sampled_from([0, 1, 2])


# ============================================================================
# Chart models
# ============================================================================

def test_projective_charts_and_names():
    model = Projective(3)
    assert model.chart_ids() == (0, 1, 2, 3)
    assert model.variable_names(0) == ["z1", "z2", "z3"]
    assert model.variable_names(2) == ["z0", "z1", "z3"]
    assert model.position(2, 3) == 2
    assert model.position(2, 0) == 0


def test_coordinate_images_p2():
    model = Projective(2)
    # chart 0 variables (z1, z2) = (x1/x0, x2/x0) in chart 1 variables (w0, w2)
    w0 = LaurentPoly.variable(2, 0)
    w2 = LaurentPoly.variable(2, 1)
    images = model.coordinate_images(0, 1)
    assert images == [w0 ** -1, w2 * w0 ** -1]


def test_transform_point_exact_round_trip():
    model = Projective(3)
    point = [Scalar(Fraction(1, 2)), Scalar(2, 1), Scalar(-3)]
    for target in (1, 2, 3):
        moved = transform_point(model, 0, target, point)
        assert transform_point(model, target, 0, moved) == point


def test_transform_point_on_hyperplane():
    with pytest.raises(PoleError):
        transform_point(Projective(2), 0, 1, [Scalar(0), Scalar(1)])


def test_product_model():
    model = Product(Torus(2), Projective(1))
    assert model.dim == 3
    assert model.chart_ids() == ((0, 0), (0, 1))
    assert model.variable_names((0, 1)) == ["Lz1", "Lz2", "Rz0"]
    assert model.transform_point((0, 0), (0, 1), [1, 2, Scalar(4)]) == [1, 2, Scalar(Fraction(1, 4))]
    with pytest.raises(RejectedInput):
        model.variable_names(0)


# ============================================================================
# Bundles
# ============================================================================

def test_twist_transition():
    g = transition_function(Twist(3, 2), 0, 1)
    # (x1/x0)^2 in chart 1 variables (w0, w2, w3): w0^-2
    assert g == LaurentPoly.monomial((-2, 0, 0))
    assert transition_function(Twist(3, 2), 2, 2) == LaurentPoly.one(3)


@pytest.mark.parametrize("n", range(1, 8))
def test_transition_cocycle(n):
    model = Projective(n)
    charts = model.chart_ids()
    for k in range(-8, 9):
        bundle = Twist(n, k)
        for a, b, c in cartesian(charts, repeat=3):
            g_ab = transition_function(bundle, a, b).substitute(model.coordinate_images(b, c), n)
            assert g_ab * transition_function(bundle, b, c) == transition_function(bundle, a, c), (k, a, b, c)


def test_external_tensor_transition():
    bundle = ExternalTensor(Trivial(2), Twist(1, 3))
    assert bundle.transition((0, 0), (0, 1)) == LaurentPoly.monomial((0, 0, -3))
    assert bundle.power(2) == ExternalTensor(Trivial(2), Twist(1, 6))


def test_anticanonical_bundle():
    assert anticanonical_bundle(Projective(3)) == Twist(3, 4)
    assert anticanonical_bundle(Torus(4)) == Trivial(4)
    assert anticanonical_bundle(Product(Torus(4), Projective(3))) == ExternalTensor(Trivial(4), Twist(3, 4))


# ============================================================================
# Pullback
# ============================================================================

@given(p2_forms(1), charts_p2, charts_p2, charts_p2)
@settings(max_examples=40, deadline=None)
def test_pullback_composes(form, a, b, c):
    model = Projective(2)
    two_step = pullback(pullback(form, a, b, model), b, c, model)
    assert two_step == pullback(form, a, c, model)


@given(p2_forms(1), charts_p2, charts_p2)
@settings(max_examples=40, deadline=None)
def test_pullback_commutes_with_del(form, a, b):
    model = Projective(2)
    assert pullback(del_op(form), a, b, model) == del_op(pullback(form, a, b, model))


@given(p2_forms(1), p2_forms(1), charts_p2, charts_p2)
@settings(max_examples=30, deadline=None)
def test_pullback_respects_wedge(f, g, a, b):
    model = Projective(2)
    assert pullback(wedge(f, g), a, b, model) == wedge(pullback(f, a, b, model), pullback(g, a, b, model))


@given(p2_forms(1), charts_p2, charts_p2)
@settings(max_examples=100, deadline=None)
def test_pullback_round_trip(form, a, b):
    model = Projective(2)
    assert pullback(pullback(form, a, b, model), b, a, model) == form


# Chart 0 of P^3 has (z1, z2, z3) = (x1, x2, x3)/x0 and chart 1 has
# (w0, w2, w3) = (x0, x2, x3)/x1, so z1 = 1/w0 and z_j = w_j/w0 otherwise.

def _w(*exponent):
    return LaurentPoly.monomial(exponent)


def test_pullback_of_coordinate_differentials_p3():
    model = Projective(3)
    # dz1 = -dw0/w0^2
    assert pullback(Form.dz(3, 0), 0, 1, model) == -(Form.dz(3, 0) * _w(-2, 0, 0))
    # dz3 = dw3/w0 - w3 dw0/w0^2
    assert pullback(Form.dz(3, 2), 0, 1, model) == Form.dz(3, 2) * _w(-1, 0, 0) - Form.dz(3, 0) * _w(-2, 0, 1)


def test_pullback_with_dehomogenizing_index_outside():
    # dz2 ^ dz3 = w0^-2 dw2^dw3 + w3 w0^-3 dw0^dw2 - w2 w0^-3 dw0^dw3
    expected = Form.dz(3, 1, 2) * _w(-2, 0, 0) + Form.dz(3, 0, 1) * _w(-3, 0, 1) - Form.dz(3, 0, 2) * _w(-3, 1, 0)
    assert pullback(Form.dz(3, 1, 2), 0, 1, Projective(3)) == expected


def test_pullback_with_dehomogenizing_index_inside():
    # dz1 ^ dz2 = -w0^-3 dw0^dw2, the dw0^dw0 term drops
    assert pullback(Form.dz(3, 0, 1), 0, 1, Projective(3)) == -(Form.dz(3, 0, 1) * _w(-3, 0, 0))
    # dz1 ^ dz2 ^ dz3 = -w0^-4 dw0^dw2^dw3
    assert pullback(Form.dz(3, 0, 1, 2), 0, 1, Projective(3)) == -(Form.dz(3, 0, 1, 2) * _w(-4, 0, 0))


@pytest.mark.parametrize("k", [1, 2, 5])
def test_power_of_x0_glues(k):
    s = section_from_homogeneous(Form.function(LaurentPoly.variable(4, 0, k)), 3, k)
    assert s.form(0) == Form.function(LaurentPoly.one(3))
    for chart in (1, 2, 3):
        assert s.form(chart) == Form.function(LaurentPoly.variable(3, 0, k))
    cert = glue_check(s)
    assert cert.verified
    assert all(check.holds for check in cert.overlaps)


# ============================================================================
# Gluing
# ============================================================================

def test_standard_contact_section_glues():
    s = standard_contact_section(3)
    cert = glue_check(s)
    assert cert.verified
    assert len(cert.overlaps) == 12
    assert cert.section.glue_status == GlueStatus.VERIFIED
    assert s.glue_status == GlueStatus.UNVERIFIED


def test_broken_section_reports_failure():
    s = standard_contact_section(3)
    forms = dict(s.chart_forms)
    forms[1] = forms[1] * 2
    cert = glue_check(make_section(s.model, s.bundle, 1, forms))
    assert not cert.verified
    assert cert.section.glue_status == GlueStatus.FAILED
    assert cert.section.glue_failure is not None
    assert all(1 in (o.source, o.target) for o in cert.failures)
    assert cert.to_dict()["failures"]


def test_glue_check_workers_agree():
    s = standard_contact_section(3)
    serial = glue_check(s, workers=1)
    threaded = glue_check(s, workers=4)
    assert [(o.source, o.target, o.holds) for o in serial.overlaps] == [
        (o.source, o.target, o.holds) for o in threaded.overlaps
    ]


def test_make_section_validation():
    model, bundle = Projective(1), Twist(1, 2)
    dz = Form.dz(1, 0)
    with pytest.raises(RejectedInput):
        make_section(model, bundle, 1, {0: dz})
    with pytest.raises(RejectedInput):
        make_section(model, Twist(2, 2), 1, {0: dz, 1: dz})
    with pytest.raises(RejectedInput):
        make_section(Torus(1), Trivial(1), 1, {0: dz * LaurentPoly.variable(1, 0)})


# ============================================================================
# Section files
# ============================================================================

def test_section_file_round_trip(tmp_path):
    s = glue_check(standard_contact_section(3)).section
    path = tmp_path / "eta.json"
    save_section(s, str(path))
    loaded = load_section(str(path))
    assert loaded.model == s.model
    assert loaded.bundle == s.bundle
    assert dict(loaded.chart_forms) == dict(s.chart_forms)
    assert loaded.glue_status == GlueStatus.UNVERIFIED
    assert section_to_dict(s)["charts"][0]["terms"] == {"dz1": "1", "dz2": "-z3", "dz3": "z2"}


def test_section_file_errors():
    with pytest.raises(SectionFormatError) as info:
        loads_section("{ not json")
    assert "line 1" in info.value.location

    text = dumps_section(standard_contact_section(3)).replace('"z2"', '"zbar2"', 1)
    with pytest.raises(SectionFormatError) as info:
        loads_section(text)
    assert info.value.location.startswith("chart 0, term")

    with pytest.raises(SectionFormatError) as info:
        loads_section('{"format": "something-else", "version": 1}')
    assert info.value.location == "header"


# ============================================================================
# Weights and sample points
# ============================================================================

def test_sample_points_are_seeded_grid_points():
    first = sample_points(3, 10, seed=7)
    assert first == sample_points(3, 10, seed=7)
    assert first != sample_points(3, 10, seed=8)
    for point in first:
        for c in point:
            for part in (c.re, c.im):
                assert Fraction(1, 2) <= part <= 2
                assert (part * 16).denominator == 1


def test_fubini_study_weight_glues():
    model, bundle = Projective(3), Twist(3, 2)
    weight = WeightModel.for_bundle(bundle)
    for point in sample_points(3, 10, seed=1):
        for target in (1, 2, 3):
            assert weight_gluing_residual(model, bundle, weight, point, 0, target) < 1e-9


def test_weight_closed_forms_at_origin():
    weight = WeightModel.fubini_study(3)
    origin = [0, 0]
    assert weight.phi(origin) == 0
    assert list(weight.dphi(origin)) == [0, 0]
    assert weight.ddbar(origin).tolist() == [[3, 0], [0, 3]]
    assert WeightModel.flat().phi([1, 2]) == 0
    assert WeightModel.fubini_study(1).phi([1, 1]) == pytest.approx(math.log(3))


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-v"]))
