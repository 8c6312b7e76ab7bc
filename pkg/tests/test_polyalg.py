import random
from fractions import Fraction as F

import pytest

from birat.errors import (
    DegreeTooSmallError,
    ExactnessViolationError,
    PolySyntaxError,
    UnknownVariableError,
    VariableMismatchError,
)
from birat.polyalg import (
    MINUS_INFINITY,
    PolyMap,
    Polynomial,
    parse_poly,
    uni_from_poly,
    uni_gcd,
    uni_rational_roots,
)

XY = ("x", "y")
XYZ = ("X", "Y", "Z")


def P(text, variables=XY):
    return parse_poly(text, variables)


def random_poly(rng, variables=XY, max_terms=6, max_exp=4):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = tuple(rng.randint(0, max_exp) for _ in variables)
        terms[mono] = F(rng.randint(-9, 9), rng.randint(1, 9))
    return Polynomial(variables, terms)


# -- parsing ----------------------------------------------------------------


def test_parse_single_variable():
    assert P("x") == Polynomial(XY, {(1, 0): 1})


def test_parse_multi_term():
    p = P("y^2 + 1 + x")
    assert p.terms == {(0, 2): F(1), (0, 0): F(1), (1, 0): F(1)}
    assert p.total_degree() == 2


def test_parse_cancellation_is_exact():
    assert P("(x+y)^2 - x^2 - 2*x*y") == P("y^2")


def test_parse_rational_literals_and_unary_minus():
    p = P("-3/4*x*y + 2 - 1/2")
    assert p.terms == {(1, 1): F(-3, 4), (0, 0): F(3, 2)}


def test_parse_nested_parens_and_powers():
    assert P("((x + 1)^2)^2") == P("x^4 + 4*x^3 + 6*x^2 + 4*x + 1")


def test_parse_syntax_error_carries_position():
    with pytest.raises(PolySyntaxError) as err:
        P("x + * y")
    assert err.value.position == 4


def test_parse_unknown_variable():
    with pytest.raises(UnknownVariableError) as err:
        P("x + t")
    assert err.value.name == "t"


def test_parse_rejects_trailing_garbage():
    with pytest.raises(PolySyntaxError):
        P("x + y)")


def test_parse_rejects_division_outside_literal():
    with pytest.raises(PolySyntaxError):
        P("(x + 1)/2")


def test_print_parse_round_trip_is_fixed_point():
    rng = random.Random(7)
    for _ in range(80):
        p = random_poly(rng)
        text = str(p)
        again = parse_poly(text, XY)
        assert again == p
        assert str(again) == text


# -- arithmetic ---------------------------------------------------------------


def test_add_cancels():
    assert P("x + y") + P("-y") == P("x")


def test_mul_difference_of_squares():
    assert P("x + y") * P("x - y") == P("x^2 - y^2")


def test_mul_by_zero_gives_sentinel_degree():
    z = P("x + y") * Polynomial.zero(XY)
    assert z.is_zero()
    assert z.total_degree() is MINUS_INFINITY


def test_variable_mismatch_raises():
    with pytest.raises(VariableMismatchError):
        P("x") + parse_poly("u", ("u", "v"))


def test_ring_axioms_on_random_inputs():
    rng = random.Random(13)
    for _ in range(40):
        p, q, r = (random_poly(rng) for _ in range(3))
        assert (p + q) + r == p + (q + r)
        assert p + q == q + p
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p + (-p) == Polynomial.zero(XY)


def test_total_degree_multiplicative_over_q():
    rng = random.Random(21)
    for _ in range(40):
        p, q = random_poly(rng), random_poly(rng)
        if p.is_zero() or q.is_zero():
            continue
        assert (p * q).total_degree() == p.total_degree() + q.total_degree()


def test_pow_matches_repeated_mul():
    p = P("x - 2*y + 1")
    assert p**3 == p * p * p
    assert p**0 == Polynomial.constant(XY, 1)


# -- composition --------------------------------------------------------------


def test_compose_henon_component():
    # Oracle: (y^2+1+x)(x -> y, y -> y^2+1+x) expanded by hand.
    p = P("y^2 + 1 + x")
    result = p.compose(P("y"), P("y^2 + 1 + x"))
    expected = P("y^4 + 2*x*y^2 + x^2 + 2*y^2 + 2*x + y + 2")
    assert result == expected
    assert result.total_degree() == 4


def test_compose_identity_substitution():
    p = P("x")
    assert p.compose(P("x"), P("y")) == p


def test_compose_constant():
    c = Polynomial.constant(XY, F(7, 3))
    assert c.compose(P("x^5"), P("y - x")) == c


def test_compose_agrees_with_pointwise_evaluation():
    rng = random.Random(3)
    for _ in range(20):
        p, sx, sy = (random_poly(rng) for _ in range(3))
        composed = p.compose(sx, sy)
        pt = (F(rng.randint(-5, 5), rng.randint(1, 4)), F(rng.randint(-5, 5), rng.randint(1, 4)))
        inner = (sx.evaluate(pt), sy.evaluate(pt))
        assert composed.evaluate(pt) == p.evaluate(inner)


# -- homogenization ------------------------------------------------------------


def test_homogenize_examples():
    assert P("y^2 + 1 + x").homogenize(2) == parse_poly("Y^2 + Z^2 + X*Z", XYZ)
    assert P("y").homogenize(2) == parse_poly("Y*Z", XYZ)
    assert P("x^3").homogenize(3) == parse_poly("X^3", XYZ)


def test_homogenize_rejects_small_degree():
    with pytest.raises(DegreeTooSmallError):
        P("x^3").homogenize(2)


def test_homogenize_then_z_one_recovers():
    rng = random.Random(5)
    for _ in range(30):
        p = random_poly(rng)
        if p.is_zero():
            continue
        d = int(p.total_degree()) + rng.randint(0, 2)
        h = p.homogenize(d)
        assert all(sum(mono) == d for mono in h.terms)
        recovered = h.substitute_one("Z", 1)
        assert Polynomial(XY, dict(recovered.terms)) == p


# -- exact division, shifts ------------------------------------------------------


def test_divide_by_variable_power():
    p = P("x^2*y + x^3")
    assert p.divide_by_variable_power("x", 2) == P("y + x")
    with pytest.raises(ExactnessViolationError):
        p.divide_by_variable_power("x", 3)


def test_shift_translates_coordinates():
    p = P("x^2 + y")
    shifted = p.shift((1, -2))
    assert shifted == P("x^2 + 2*x + y - 1")


# -- PolyMap -------------------------------------------------------------------


def test_polymap_degree_is_max_of_components():
    m = PolyMap(P("y"), P("y^2 + 1 + x"))
    assert m.degree() == 2


def test_polymap_compose_order():
    # f(x,y) = (y, x), g = (x + 1, y): f.compose(g) = f(g(x,y)) = (y, x + 1)
    f = PolyMap(P("y"), P("x"))
    g = PolyMap(P("x + 1"), P("y"))
    assert f.compose(g) == PolyMap(P("y"), P("x + 1"))


# -- univariate helpers ----------------------------------------------------------


def test_uni_gcd_and_roots():
    # (v - 1)^2 (v + 2) and (v - 1)(v + 2)(v - 3) share (v - 1)(v + 2)
    a = uni_from_poly(parse_poly("(v - 1)^2 * (v + 2)", ("v",)), "v")
    b = uni_from_poly(parse_poly("(v - 1) * (v + 2) * (v - 3)", ("v",)), "v")
    g = uni_gcd(a, b)
    roots, leftover = uni_rational_roots(g)
    assert sorted(roots) == [F(-2), F(1)]
    assert len(leftover) == 1  # constant: every root rational


def test_uni_rational_roots_reports_irrational_leftover():
    p = uni_from_poly(parse_poly("(v^2 - 2) * (v - 1)", ("v",)), "v")
    roots, leftover = uni_rational_roots(p)
    assert roots == [F(1)]
    assert len(leftover) == 3  # v^2 - 2 survives


def test_uni_rational_roots_fractional():
    p = uni_from_poly(parse_poly("(3*v - 2) * (2*v + 5) * v", ("v",)), "v")
    roots, leftover = uni_rational_roots(p)
    assert sorted(roots) == [F(-5, 2), F(0), F(2, 3)]
    assert len(leftover) <= 1
