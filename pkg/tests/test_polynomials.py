import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cheborbit.polynomials import MultiPoly, PolyMap, parse_poly
from cheborbit.scalars import CycRational


@st.composite
def xy_polys(draw):
    n_terms = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n_terms):
        key = (draw(st.integers(0, 3)), draw(st.integers(0, 3)))
        coeff = draw(st.integers(-9, 9))
        terms[key] = terms.get(key, 0) + coeff
    return MultiPoly(("x", "y"), {k: v for k, v in terms.items() if v})


def test_difference_of_squares():
    x, y = MultiPoly.variable("x"), MultiPoly.variable("y")
    assert (x + y) * (x - y) == x**2 - y**2


def test_variable_alignment_by_union():
    p = parse_poly("x + 1")
    q = parse_poly("y + 1")
    assert (p + q).vars == ("x", "y")
    assert (p * q).canonical_text() == "1 + x + y + x*y"


def test_substitution_examples():
    f = parse_poly("x^2 + y^2")
    out = f.substitute({"x": parse_poly("u + v"), "y": parse_poly("u - v")})
    assert out == parse_poly("2*u^2 + 2*v^2")
    g = parse_poly("p^3 - q^2")
    assert g.substitute({"p": parse_poly("t^2"), "q": parse_poly("t^3")}).is_zero()
    i_sq = MultiPoly.constant(CycRational.i_unit()) ** 2
    assert i_sq == MultiPoly.constant(-1)


def test_substitution_of_constant_is_evaluation():
    f = parse_poly("p^3 - q^2")
    val = f.substitute({"p": 9, "q": 27}).constant_value()
    assert val == 0
    val = f.substitute({"p": Fraction(1, 2), "q": 1}).constant_value()
    assert val.to_fraction() == Fraction(1, 8) - 1


@given(f=xy_polys(), g=xy_polys(), h=xy_polys())
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(f=xy_polys())
def test_substitution_composition_law(f):
    sigma = {"x": parse_poly("x + y"), "y": parse_poly("x - 2*y")}
    tau = {"x": parse_poly("x^2"), "y": parse_poly("y + 1")}
    once = f.substitute(sigma).substitute(tau)
    combined = {v: sigma[v].substitute(tau) for v in sigma}
    assert once == f.substitute(combined)


def test_evaluate_examples():
    f = parse_poly("x^2 + y^2")
    assert abs(f.evaluate({"x": 3, "y": 4}) - 25) < 1e-12
    assert abs(parse_poly("p^3 - q^2").evaluate({"p": 9, "q": 27})) < 1e-9


@given(f=xy_polys(), g=xy_polys())
def test_evaluate_is_multiplicative(f, g):
    rng = random.Random(7)
    z = {
        "x": complex(rng.uniform(-1000, 1000), rng.uniform(-1000, 1000)),
        "y": complex(rng.uniform(-1000, 1000), rng.uniform(-1000, 1000)),
    }
    lhs = (f * g).evaluate(z)
    rhs = f.evaluate(z) * g.evaluate(z)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs), abs(rhs))


def test_canonical_text_matches_reference_order():
    assert parse_poly("p^2 - 4*q + 4*p").canonical_text() == "4*p + p^2 - 4*q"
    big = parse_poly(
        "2*p^4 - 24*p^3 + 96*p^2 - 128*p + 32*a + 2*a^2 - 16*b + 8*a*p - 4*a*p^2"
    )
    assert big.canonical_text() == (
        "32*a + 2*a^2 - 16*b - 128*p + 8*a*p + 96*p^2 - 4*a*p^2 - 24*p^3 + 2*p^4"
    )


def test_canonical_text_pulls_out_denominator():
    f = parse_poly("11 + 7*u + 1/2 * (u^2)")
    assert f.canonical_text() == "1/2 * (22 + 14*u + u^2)"


@given(f=xy_polys())
def test_text_round_trip(f):
    assert parse_poly(f.canonical_text(), ("x", "y")) == f


@given(f=xy_polys())
def test_json_round_trip_bit_exact(f):
    blob = f.to_json()
    again = MultiPoly.from_json(blob)
    assert again == f
    assert again.to_json() == blob
    # explicit exponent vectors present
    doc = json.loads(blob)
    assert all(len(t["e"]) == len(doc["vars"]) for t in doc["terms"])


def test_cyclotomic_coefficients_serialize():
    f = MultiPoly(("x",), {(2,): CycRational((1, 2), 3, 4)})
    text = f.canonical_text()
    assert parse_poly(text) == f
    assert MultiPoly.from_json(f.to_json()) == f


def test_parser_rejects_junk():
    with pytest.raises(ValueError):
        parse_poly("x +")
    with pytest.raises(ValueError):
        parse_poly("x ^ -2")
    with pytest.raises(ValueError):
        parse_poly("2 $ x")


def test_polymap_compose_and_arity():
    f = PolyMap(("x", "y"), [parse_poly("x + y"), parse_poly("x - y")])
    g = PolyMap(("x", "y"), [parse_poly("x*y"), parse_poly("x")])
    gf = g.compose(f)
    assert gf.components[0] == parse_poly("x^2 - y^2")
    assert gf.components[1] == parse_poly("x + y")
    single = PolyMap(("t",), [parse_poly("t^2")])
    with pytest.raises(ValueError):
        f.compose(single)


def test_polymap_exact_evaluation():
    f = PolyMap(("x", "y"), [parse_poly("x^2 + y^2"), parse_poly("x*y")])
    vals = f.evaluate_exact((Fraction(1, 2), 2))
    assert vals[0].to_fraction() == Fraction(17, 4)
    assert vals[1].to_fraction() == 1
