import pytest
from hypothesis import given
from hypothesis import strategies as st

from loewylab.presentation import InvalidRingError, RingSyntaxError, make_ring, parse_poly, parse_ring, serialize_ring
from loewylab.ring import DS, EQ, GREVLEX, GT, INF, LT, Polynomial, Scalar, initial_form, mono_cmp, ord_in_Q

from conftest import nonunit_polynomials, polynomials

XYZ = ("x", "y", "z")


def poly(text, names=XYZ):
    return parse_poly(text, names)


def test_grevlex_xy_beats_y2():
    assert mono_cmp(GREVLEX, (1, 1), (0, 2)) == GT


def test_ds_prefers_low_degree():
    assert poly("x + x^2", ("x",)).leading_term(DS)[0] == (1,)
    assert mono_cmp(DS, (1,), (2,)) == GT
    assert mono_cmp(DS, (2, 0), (2, 0)) == EQ
    assert mono_cmp(GREVLEX, (1,), (2,)) == LT


def test_mono_cmp_dimension_mismatch():
    with pytest.raises(ValueError):
        mono_cmp(DS, (1,), (1, 0))


def test_initial_forms_and_orders():
    f, g = poly("x^2 - y^5"), poly("x*y^2 + y*z^3 - z^5")
    assert initial_form(f) == poly("x^2")
    assert initial_form(g) == poly("x*y^2")
    assert ord_in_Q(f) == 2 and ord_in_Q(g) == 3
    assert ord_in_Q(Polynomial.zero(3)) == INF
    h = poly("x*y + z^2")
    assert initial_form(h) == h
    with pytest.raises(ValueError):
        initial_form(Polynomial.zero(3))


def test_parse_document():
    R = parse_ring('ring { char = 32003; vars = [x, y, z]; model = local; ideal = ["x^2-y^5", "x*y^2+y*z^3-z^5"] }')
    assert R.nvars == 3 and len(R.gens) == 2 and R.model == "local"
    assert parse_ring("ring { vars = [x] }").gens == ()


def test_parse_errors():
    with pytest.raises(InvalidRingError):
        parse_ring('ring { vars = [x]; ideal = ["1+x"] }')
    with pytest.raises(InvalidRingError):
        parse_ring("ring { char = 32004; vars = [x] }")
    with pytest.raises(RingSyntaxError) as e:
        parse_ring("ring {\n  vars = [x]\n  ideal = }")
    assert e.value.line == 3
    with pytest.raises(InvalidRingError):
        make_ring(["x", "y"], ["x^2 + y^3"], model="graded")


def test_implicit_multiplication():
    assert poly("2x y^2") == poly("2*x*y^2")


@given(st.integers(1, 32002), st.integers(0, 32002), st.integers(0, 32002))
def test_scalar_field_axioms(a, b, c):
    A, B, C = Scalar(a, 32003), Scalar(b, 32003), Scalar(c, 32003)
    assert (A + B) * C == A * C + B * C
    assert A * A.inverse() == Scalar(1, 32003)
    assert A - A == Scalar(0, 32003)
    assert (A * B) * C == A * (B * C)


@given(polynomials(3), polynomials(3), polynomials(3))
def test_polynomial_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert (f - f).is_zero()


@given(nonunit_polynomials(3, max_terms=5))
def test_initial_form_properties(f):
    inf = initial_form(f)
    assert inf.is_homogeneous() and inf.degree() == ord_in_Q(f)
    assert ord_in_Q(f - inf) > ord_in_Q(f)


@given(st.lists(nonunit_polynomials(3), min_size=0, max_size=3), st.sampled_from(["local", "graded"]))
def test_serialize_round_trip(gens, model):
    if model == "graded":
        gens = [initial_form(g) for g in gens]
    R = make_ring(XYZ, gens, model=model)
    assert parse_ring(serialize_ring(R)) == R
