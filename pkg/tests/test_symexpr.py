from __future__ import annotations

import json
import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from wengzeta.symexpr import (
    ExpDatum,
    LinFactor,
    XiLinear,
    XiProduct,
    ZetaExpression,
    ZetaTerm,
    expr_equal,
    make_linfactor,
    parse_json,
    reflect,
    reflect_linfactor,
    serialize,
    shift,
    xi_canonicalize,
)
from wengzeta.zeta import z_and_weng

halves = st.integers(-40, 40).map(lambda n: Fraction(n, 2))
xi_lin = st.builds(XiLinear, st.integers(-4, 4), halves)
centers = st.integers(-12, 12).map(lambda n: Fraction(n, 2))
products = st.lists(st.tuples(xi_lin, st.integers(-3, 3)), max_size=6).map(XiProduct)


def test_canonicalize_examples():
    assert xi_canonicalize(XiLinear(-1, Fraction(-1))) == (1, 2)
    assert xi_canonicalize(XiLinear(0, Fraction(-1))) == (0, 2)
    assert xi_canonicalize(XiLinear(1, Fraction(3))) == (1, 3)


def test_reflect_examples():
    assert reflect(XiLinear(1, Fraction(2)), 3) == (1, 2)
    assert reflect(XiLinear(0, Fraction(5)), 7) == (0, 5)
    assert reflect(XiLinear(1, Fraction(1)), 3) == (1, 3)


def test_reflect_linfactor_examples():
    assert reflect_linfactor(LinFactor(1, Fraction(1)), 3) == (-1, LinFactor(1, Fraction(2)))
    assert reflect_linfactor(LinFactor(0, Fraction(2)), 3) == (1, LinFactor(0, Fraction(2)))
    assert make_linfactor(-2, 3) == (-1, LinFactor(2, Fraction(-3)))


@given(xi_lin)
def test_canonical_form_properties(x):
    y = xi_canonicalize(x)
    assert y.k > 0 or (y.k == 0 and 2 * y.h >= 1)
    assert xi_canonicalize(y) == y
    # xi(ks+h) = xi(1-ks-h): the other representative has the same canonical form
    assert xi_canonicalize(XiLinear(-x.k, 1 - x.h)) == y


@given(xi_lin, centers)
def test_reflect_involution(x, c):
    y = xi_canonicalize(x)
    assert reflect(reflect(y, c), c) == y


@given(xi_lin, centers)
def test_shift_reflect_relation(x, a):
    # f(s+a) reflected about c equals f reflected about c - 2a, then shifted by a
    y = xi_canonicalize(x)
    assert reflect(shift(y, a), 3) == shift(reflect(y, 3 - 2 * a), a)


@given(products, products, products)
def test_product_algebra(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == XiProduct()
    assert (a * b) / b == a
    assert a.numerator() / a.denominator() == a


@given(products, products, centers)
def test_reflect_distributes(a, b, c):
    assert (a * b).reflect(c) == a.reflect(c) * b.reflect(c)
    assert a.reflect(c).reflect(c) == a


@given(products)
def test_product_json_roundtrip(a):
    assert parse_json(serialize(a, "json")) == a


@st.composite
def terms(draw, rank=2):
    coeff = Fraction(draw(st.integers(-9, 9).filter(bool)), draw(st.integers(1, 6)))
    mu0 = tuple(draw(halves) for _ in range(rank))
    mu1 = tuple(draw(halves) for _ in range(rank))
    lin = [(draw(st.integers(-2, 2)), draw(st.integers(1, 5))) for _ in range(draw(st.integers(0, 3)))]
    xi = draw(products)
    return ZetaTerm.build(coeff, None, ExpDatum(mu0, mu1), lin, xi)


@given(st.lists(terms(), max_size=5))
def test_expression_json_roundtrip(ts):
    e = ZetaExpression(tuple(ts))
    text = serialize(e, "json")
    back = parse_json(text)
    assert expr_equal(back, e)
    assert serialize(back, "json") == text
    assert json.loads(text)["schema_version"] == 1


@settings(max_examples=50)
@given(st.lists(terms(), max_size=4), centers)
def test_expression_reflect_involution(ts, c):
    e = ZetaExpression(tuple(ts))
    assert expr_equal(e.reflect(c, (1, 0)).reflect(c, (1, 0)), e)


def test_a2_fixture_structure(a2_bundle):
    b = a2_bundle
    Z = b.Z
    # canonical order is independent of the construction order
    shuffled = list(Z.terms)
    random.Random(3).shuffle(shuffled)
    assert expr_equal(ZetaExpression(tuple(shuffled)), Z)
    # Z(-3-s; varpi0 T) = Z(s; T)
    assert expr_equal(Z.reflect(3, (1, 0)), Z)
    assert not expr_equal(b.omega, Z)


def test_serialize_examples(a2_bundle):
    assert serialize(a2_bundle.D, "latex") == r"\xi(s+2)"
    assert serialize(ZetaExpression(()), "text") == "0"
    assert serialize(ZetaExpression(()), "latex") == "0"
    text = serialize(a2_bundle.omega, "text")
    assert text.count("exp<") == 5


def test_linear_factor_sign_in_term():
    # 1 / (-(s+1)) is stored as -1/(s+1)
    t = ZetaTerm.build(Fraction(1), None, ExpDatum.trivial(1), [(-1, -1)], XiProduct())
    assert t.coeff == -1 and t.den_lin == (LinFactor(1, Fraction(1)),)


def test_a1_json(tmp_path):
    b = z_and_weng(__import__("wengzeta").build_root_system("A", 1), 1)
    text = serialize(b.xi_weng, "json")
    assert expr_equal(parse_json(text), b.xi_weng)
