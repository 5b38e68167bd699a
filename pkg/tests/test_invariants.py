from fractions import Fraction

import pytest

from cheborbit.chebyshev import real_form
from cheborbit.invariants import (
    ConjugacyResult,
    NotInvariant,
    SingularParams,
    conjugate_system,
    cubic_normal_form,
    fundamental_system,
    head_term_checks,
    induced_morphism,
    molien_series,
    parabola_normal_form,
    rewrite_in_invariants,
    syzygy_normal_form,
    verify_semigroup_induced,
)
from cheborbit.polynomials import MultiPoly, parse_poly

G2_PLANE = ("4*p + p^2 - 4*q", "12*p^2 - 8*q - 6*p*q + 2*q^2 - p^3")
G3_PLANE = (
    "9 - 18*p + 9*p^2 + p^3 + 6*q - 6*p*q",
    "9*p^4 - 3*p^3*q - 36*p^3 + 27*p^2*q + 81*p^2 - 18*p*q^2 - 54*p*q - 81*p"
    " + 4*q^3 + 18*q^2 + 27*q + 27",
)
G2_SPACE = (
    "p^2 + 4*q - 4*r",
    "(q - 2*p + 2)^2",
    "(q - 2*p + 2)*(2*s - p^2 - 4*r + 4*q)",
    "(2*s - p^2 - 4*r + 4*q)^2",
)


def test_fundamental_systems_are_invariant_under_the_actions():
    # direct check through the real matrix actions: reflection y -> -y
    # (plane) resp. (x, y, z) -> (x, -y, z) and the rotation images
    sys2 = fundamental_system(2)
    for g in sys2.generators:
        assert g.substitute({"y": -MultiPoly.variable("y")}) == g
    sys3 = fundamental_system(3)
    y, z = MultiPoly.variable("y"), MultiPoly.variable("z")
    for g in sys3.generators:
        assert g.substitute({"y": -y}) == g
        # quarter-turn rotation: (x, y, z) -> (-y, x, -z)
        rotated = g.substitute(
            {"x": -MultiPoly.variable("y"), "y": MultiPoly.variable("x"), "z": -z}
        )
        assert rotated == g


def test_rewrite_simple_cases():
    sys2 = fundamental_system(2)
    assert rewrite_in_invariants(parse_poly("x^4 + 2*x^2*y^2 + y^4"), sys2) == parse_poly("p^2")
    got = rewrite_in_invariants(parse_poly("x^3 - 3*x*y^2", ("x", "y")), sys2)
    assert got == parse_poly("q")
    with pytest.raises(NotInvariant):
        rewrite_in_invariants(parse_poly("x", ("x", "y")), sys2)
    with pytest.raises(NotInvariant):
        rewrite_in_invariants(parse_poly("x^2 - y^2", ("x", "y")), sys2)


def test_rewrite_composed_with_real_form():
    sys2 = fundamental_system(2)
    f2 = real_form(2, 2).map
    pulled = parse_poly("x^2 + y^2").substitute(dict(zip(("x", "y"), f2.components)))
    assert rewrite_in_invariants(pulled, sys2) == parse_poly(G2_PLANE[0])


def test_rewrite_round_trip_corpus():
    for n in (2, 3):
        sys = fundamental_system(n)
        names = sys.names
        corpus = [
            parse_poly("p^2 + 3*q", names),
            parse_poly("p*q", names),
        ]
        if n == 3:
            corpus.append(parse_poly("r*s + p^3", names))
        xvars = sys.generators[0].vars
        bind = dict(zip(names, sys.generators))
        for expr in corpus:
            h = expr.substitute(bind).with_vars(xvars)
            back = rewrite_in_invariants(h, sys)
            assert back.substitute(bind).with_vars(xvars) == h


def test_induced_morphisms_match_reference():
    assert induced_morphism(2, 2).map.components == tuple(parse_poly(t) for t in G2_PLANE)
    assert induced_morphism(2, 3).map.components == tuple(parse_poly(t) for t in G3_PLANE)
    derived = induced_morphism(3, 2).map.components
    for mine, display in zip(derived, G2_SPACE):
        assert syzygy_normal_form(mine - parse_poly(display, ("p", "q", "r", "s"))).is_zero()
    assert induced_morphism(2, 1).map.canonical_texts() == ["p", "q"]
    assert induced_morphism(3, 1).map.canonical_texts() == ["p", "q", "r", "s"]


def test_induced_integrality_and_image_contract():
    for n in (2, 3):
        for d in range(1, 9):
            g = induced_morphism(n, d)
            assert all(c.has_integer_coefficients() for c in g.map.components)
            if n == 3:
                P, Q, R, S = g.map.components
                assert syzygy_normal_form(Q * S - R * R).is_zero()


def test_syzygy_normal_form():
    r = MultiPoly.variable("r")
    assert syzygy_normal_form(r * r) == parse_poly("q*s", ("p", "q", "r", "s"))
    assert syzygy_normal_form(parse_poly("r^3 - r*q*s")).is_zero()
    fixed = parse_poly("p + q", ("p", "q", "r", "s"))
    assert syzygy_normal_form(fixed) == fixed


def test_cubic_and_parabola_normal_forms():
    assert cubic_normal_form(parse_poly("p^3")) == parse_poly("q^2", ("p", "q"))
    assert cubic_normal_form(parse_poly("p^4*q")) == parse_poly("p*q^3", ("p", "q"))
    nf = parabola_normal_form(parse_poly("p^2"))
    assert nf == parse_poly("27 - 18*p + 8*q")
    assert parabola_normal_form(parse_poly("p^3")).degree("p") <= 1


def test_semigroup_induced():
    assert verify_semigroup_induced(2, 2, 2).passed
    assert verify_semigroup_induced(2, 2, 3).passed
    assert verify_semigroup_induced(3, 2, 3).passed
    assert verify_semigroup_induced(3, 2, 4).passed
    assert verify_semigroup_induced(2, 1, 5).passed


def test_head_terms_through_degree_eight():
    for d in range(2, 9):
        for check in head_term_checks(d):
            assert check.passed, (d, check.name)


def test_molien_series_fixtures():
    assert [int(c) for c in molien_series("D3_on_R2", 9)] == [1, 0, 1, 1, 1, 1, 2, 1, 2, 2]
    assert [int(c) for c in molien_series("D4_on_R3", 9)] == [1, 0, 2, 1, 4, 2, 6, 4, 9, 6]
    assert molien_series("D3_on_R2", 0) == [Fraction(1)]
    # degree-2 coefficient counts the independent quadratic invariants
    assert int(molien_series("D3_on_R2", 2)[2]) == 1
    assert int(molien_series("D4_on_R3", 2)[2]) == 2
    with pytest.raises(ValueError):
        molien_series("D5_on_R4", 4)
    with pytest.raises(ValueError):
        molien_series("D3_on_R2", 100)


def test_conjugate_identity_params_give_same_morphism():
    res = conjugate_system(1, 0, 0, 1, 1, 1, 0, 0, 0, d=2, samples=10)
    assert all(c.passed for c in res.checks)
    assert res.g_prime == induced_morphism(3, 2).map


def test_conjugate_scaled_r():
    res = conjugate_system(1, 0, 0, 1, 2, 1, 0, 0, 0, d=2, samples=25)
    assert all(c.passed for c in res.checks)
    # r-slot picks up the scale: 2 * R(p, q, r/2, s)
    r = MultiPoly.variable("r")
    base = induced_morphism(3, 2).map.components[2]
    expected = base.substitute({"r": r * Fraction(1, 2)}) * 2
    assert res.g_prime.components[2] == expected


def test_conjugate_shear_and_mix():
    res = conjugate_system(1, 1, 0, 1, 1, 1, 1, 0, 0, d=2, samples=25)
    assert all(c.passed for c in res.checks)
    res = conjugate_system(2, 1, 1, 1, 3, 2, 1, 1, 1, d=3, samples=10)
    assert all(c.passed for c in res.checks)


def test_conjugate_rejects_singular_params():
    with pytest.raises(SingularParams):
        conjugate_system(1, 1, 1, 1, 1, 1, 0, 0, 0, d=2)
    with pytest.raises(SingularParams):
        conjugate_system(1, 0, 0, 1, 0, 1, 0, 0, 0, d=2)
