import math
import random

import pytest

from cheborbit.chebyshev import (
    DegreeCapExceeded,
    RootTuple,
    UnsupportedDimension,
    cheb1,
    cheb1_parity_part,
    cheb_endo,
    oracle_cheb_numeric,
    real_form,
    verify_equivariance,
    verify_semigroup_endo,
)
from cheborbit.polynomials import MultiPoly, parse_poly


def test_cheb1_small_degrees():
    assert cheb1(0) == MultiPoly.constant(2, ("z",))
    assert cheb1(1) == parse_poly("z")
    assert cheb1(2) == parse_poly("z^2 - 2")
    assert cheb1(4) == parse_poly("z^4 - 4*z^2 + 2")


def test_cheb1_special_values():
    for k in range(1, 7):
        assert cheb1(2 * k).substitute({"z": -2}).constant_value() == 2
        assert cheb1(2 * k + 1).substitute({"z": -2}).constant_value() == -2
        assert cheb1(2 * k).substitute({"z": 0}).constant_value() == (-1) ** k * 2
        assert cheb1(2 * k + 1).substitute({"z": 0}).constant_value() == 0
        assert cheb1(2 * k).substitute({"z": 2}).constant_value() == 2


def _laurent_reduce(p):
    """Reduce modulo s*si = 1: s^a si^b -> s^(a-b) or si^(b-a)."""
    out = MultiPoly.zero(("s", "si"))
    for exps, c in p.terms.items():
        a = exps[p.vars.index("s")]
        b = exps[p.vars.index("si")]
        m = min(a, b)
        key = {"s": a - m, "si": b - m}
        out = out + MultiPoly(("s", "si"), {(key["s"], key["si"]): c})
    return out


def test_cheb1_half_sum_identity_symbolic():
    # T_d(s + 1/s) = s^d + s^-d, checked in the Laurent ring
    s = MultiPoly.variable("s")
    si = MultiPoly.variable("si")
    for d in range(0, 9):
        lhs = cheb1(d).substitute({"z": s + si})
        rhs = s**d + si**d
        assert _laurent_reduce(lhs - rhs).is_zero(), d


def test_cheb1_cosine_identity_numeric():
    rng = random.Random(1)
    for _ in range(100):
        theta = rng.uniform(0, 2 * math.pi)
        d = rng.randint(1, 9)
        val = cheb1(d).evaluate({"z": 2 * math.cos(theta)})
        assert abs(val - 2 * math.cos(d * theta)) < 1e-9


def test_parity_split():
    for d in range(1, 10):
        kind, part = cheb1_parity_part(d)
        assert kind == ("odd" if d % 2 else "even")
        w = MultiPoly.variable("w")
        rebuilt = part.substitute({"z": w * w})
        if d % 2:
            rebuilt = w * rebuilt
        assert rebuilt == cheb1(d).substitute({"z": w})
        assert part.coefficient_of({"z": d // 2}) == 1  # monic


def test_endo_identity_and_seeds():
    assert cheb_endo(2, 1).map.canonical_texts() == ["z1", "z2"]
    assert cheb_endo(3, 3).map.components[0] == parse_poly("z1^3 - 3*z1*z2 + 3*z3")
    assert cheb_endo(3, 2).map.components[1] == parse_poly("z2^2 - 2*z1*z3 + 2")
    with pytest.raises(UnsupportedDimension):
        cheb_endo(4, 2)


def test_middle_slot_against_root_oracle():
    # e2 of squared roots, sampled: the direct symmetric-function value
    rng = random.Random(2)
    comp = cheb_endo(3, 2).map.components[1]
    for _ in range(10):
        vals = [complex(rng.uniform(0.5, 2), rng.uniform(-1, 1)) for _ in range(3)]
        last = 1 / (vals[0] * vals[1] * vals[2])
        tup = RootTuple((*vals, last))
        z = tup.elementary_symmetric()
        e2_sq = tup.powered(2).elementary_symmetric()[1]
        sym = comp.evaluate(dict(zip(("z1", "z2", "z3"), z)))
        assert abs(sym - e2_sq) < 1e-8 * max(1.0, abs(e2_sq))


def test_root_tuple_guards_product():
    with pytest.raises(ValueError):
        RootTuple((1, 2, 3))


def test_oracle_fixed_points_of_unity():
    # repeated unit roots are the worst case; the documented oracle
    # accuracy is 1e-6 relative
    assert all(abs(a - b) < 1e-9 for a, b in zip(oracle_cheb_numeric(2, 5, (3, 3)), (3, 3)))
    for d in (2, 3, 7):
        got = oracle_cheb_numeric(3, d, (4, 6, 4))
        assert all(abs(a - b) < 1e-6 * b for a, b in zip(got, (4, 6, 4)))


def test_oracle_matches_symbolic():
    rng = random.Random(3)
    for n in (2, 3):
        for d in (2, 3, 5, 8):
            for _ in range(5):
                z = tuple(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(n))
                sym = cheb_endo(n, d).map.evaluate(z)
                orc = oracle_cheb_numeric(n, d, z)
                for a, b in zip(sym, orc):
                    assert abs(a - b) <= 1e-6 * max(1.0, abs(a), abs(b))


def test_real_forms_match_reference():
    assert real_form(2, 2).map.components == (
        parse_poly("x^2 - y^2 - 2*x"),
        parse_poly("2*x*y + 2*y"),
    )
    assert real_form(2, 3).map.components == (
        parse_poly("x^3 - 3*x*y^2 - 3*x^2 - 3*y^2 + 3"),
        parse_poly("3*x^2*y - y^3"),
    )
    assert real_form(3, 2).map.components == (
        parse_poly("x^2 - y^2 - 2*z", ("x", "y", "z")),
        parse_poly("2*x*y", ("x", "y", "z")),
        parse_poly("z^2 - 2*x^2 - 2*y^2 + 2"),
    )


def test_real_form_integrality():
    for n in (2, 3):
        for d in range(1, 9):
            assert all(
                c.has_integer_coefficients() for c in real_form(n, d).map.components
            ), (n, d)


def test_equivariance_reports():
    for n, d in ((2, 2), (3, 3), (2, 1), (3, 2)):
        for check in verify_equivariance(n, d):
            assert check.passed, (n, d, check.name)


def test_semigroup_endo():
    assert verify_semigroup_endo(2, 2, 3).passed
    assert verify_semigroup_endo(3, 2, 2).passed
    assert verify_semigroup_endo(2, 1, 5).passed
    with pytest.raises(DegreeCapExceeded):
        verify_semigroup_endo(2, 5, 5)


def test_leading_term_structure():
    for n in (2, 3):
        for d in range(1, 9):
            first = cheb_endo(n, d).map.components[0]
            assert first.coefficient_of({"z1": d}) == 1
            pure = [
                e
                for e in first.terms
                if sum(e) >= d and all(x == 0 for x in e[1:])
            ]
            assert pure == [tuple([d] + [0] * (n - 1))]
