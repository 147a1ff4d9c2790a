"""Laurent polynomial and monomial map tests."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropmirror.lpoly import LaurentPoly, MonoidSpec, MonomialMap
from tropmirror.novikov import INF, T

VARS = ("x", "y", "z")

exps = st.tuples(*[st.integers(-3, 3)] * 3)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, max_terms=5):
    items = draw(st.lists(st.tuples(exps, coeffs), max_size=max_terms))
    return LaurentPoly(VARS, {e: c for e, c in items})


def test_constructors():
    p = LaurentPoly.var(VARS, "y")
    assert p.single_term() == ((0, 1, 0), T(0))
    assert LaurentPoly.zero(VARS).is_zero()
    assert LaurentPoly.constant(VARS, 0).is_zero()


@given(polys(), polys(), polys())
@settings(max_examples=80)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == LaurentPoly.zero(VARS)


def test_monomial_inverse_power():
    m = LaurentPoly.monomial(VARS, (1, -2, 0), T(Fraction(1, 2)))
    inv = m ** -1
    assert m * inv == LaurentPoly.constant(VARS, 1)
    with pytest.raises(ValueError):
        (m + LaurentPoly.var(VARS, "z")) ** -1


def test_align_different_variable_sets():
    p = LaurentPoly.var(("x",), "x")
    q = LaurentPoly.var(("y",), "y")
    s = p * q
    assert s.variables == ("x", "y")
    assert s.single_term()[0] == (1, 1)


def test_monomial_val():
    w = LaurentPoly.monomial(VARS, (1, 1, 1), T(2))
    pt = {"x": Fraction(1), "y": Fraction(0), "z": Fraction(3)}
    assert w.monomial_val(pt) == 6
    assert w.monomial_val({"x": INF, "y": 0, "z": 0}) is INF
    neg = LaurentPoly.monomial(VARS, (-1, 0, 0))
    with pytest.raises(ValueError):
        neg.monomial_val({"x": INF, "y": 0, "z": 0})
    two = w + LaurentPoly.monomial(VARS, (0, 1, 0))
    assert two.monomial_val(pt) == 0


def make_map():
    # x1 = x2^-1, y1 = T^2 * x2^3 * y2, z1 = T^-1 * z2
    return MonomialMap.build(
        ("x1", "y1", "z1"),
        ("x2", "y2", "z2"),
        {
            "x1": (1, {"x2": -1}),
            "y1": (T(2), {"x2": 3, "y2": 1}),
            "z1": (T(-1), {"z2": 1}),
        },
    )


def test_substitute_is_homomorphism():
    f = make_map()
    p = LaurentPoly(("x1", "y1", "z1"), {(1, 1, 1): T(1), (0, 2, 0): Fraction(3)})
    q = LaurentPoly(("x1", "y1", "z1"), {(-1, 0, 1): Fraction(1)})
    assert f.substitute(p * q) == f.substitute(p) * f.substitute(q)
    assert f.substitute(p + q) == f.substitute(p) + f.substitute(q)


def test_compose_and_identity():
    f = make_map()
    g = MonomialMap.build(
        ("x2", "y2", "z2"),
        ("x1", "y1", "z1"),
        {
            "x2": (1, {"x1": -1}),
            "y2": (T(-2), {"x1": 3, "y1": 1}),
            "z2": (T(1), {"z1": 1}),
        },
    )
    # g after f round-trips the x2-chart; f after g round-trips the x1-chart
    assert g.compose(f).is_identity()
    p = LaurentPoly(("x1", "y1", "z1"), {(2, 1, -1): T(5)})
    assert g.substitute(f.substitute(p)) == p
    h = f.compose(g)  # x1-chart -> x1-chart
    assert h.source == ("x1", "y1", "z1") and h.target == ("x1", "y1", "z1")
    assert h.is_identity()


def test_monoid_spec():
    box = MonoidSpec.box(VARS, [(0, 2), (0, INF), (1, 3)])
    good = LaurentPoly.monomial(VARS, (2, 1, -1))
    bad = LaurentPoly.monomial(VARS, (0, -1, 0))
    assert box.monoid_member(good)
    assert not box.monoid_member(bad)
    lo, hi = box.val_bounds(LaurentPoly.monomial(VARS, (1, 0, 2), T(1)))
    assert lo == Fraction(3) and hi == Fraction(9)
    lo, hi = box.val_bounds(LaurentPoly.monomial(VARS, (0, 1, 0)))
    assert lo == 0 and hi is INF
