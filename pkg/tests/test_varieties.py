from fractions import Fraction

import pytest

from cheborbit.invariants import induced_morphism
from cheborbit.polynomials import MultiPoly, parse_poly
from cheborbit.varieties import (
    PREIMAGE_CASES,
    catalogue,
    family_param,
    family_slope,
    invariant_family,
    space_degree2_composition_form,
    verify_astroid_singular_locus,
    verify_cone_birationality,
    verify_fixed_and_preperiodic,
    verify_membership,
    verify_preimage_varieties,
    verify_semiconjugacy,
    verify_semigroup_on_variety,
    verify_surface_intersection,
)


def test_every_entry_passes_membership():
    for entry in catalogue().values():
        for check in verify_membership(entry, samples=25):
            assert check.passed, (entry.name, check.name, check.residual)


def test_cuspidal_cubic_pullback_is_plainly_zero():
    entry = catalogue()["cuspidal_cubic"]
    pulled = entry.defining[0].substitute(dict(zip(entry.ambient, entry.param.components)))
    assert pulled.is_zero()


def test_semiconjugacies_small_degrees():
    cat = catalogue()
    for name in (
        "plane", "cuspidal_cubic", "parabola", "quadric",
        "axis_surface", "astroid_surface", "p_axis_image",
        "q_axis_image", "astroid_curve",
    ):
        for d in (2, 3):
            assert verify_semiconjugacy(cat[name], d).passed, (name, d)


def test_semiconjugacy_requires_a_rule():
    with pytest.raises(ValueError):
        verify_semiconjugacy(catalogue()["p_axis"], 2)


def test_parabola_rational_point_example():
    # u = 1 maps to (7, 37/2); degree 2 sends it to the u = -1 point (3, 9/2)
    g2 = induced_morphism(2, 2).map
    image = g2.evaluate_exact((7, Fraction(37, 2)))
    assert [x.to_fraction() for x in image] == [3, Fraction(9, 2)]


def test_quadric_fixed_point_example():
    g2 = induced_morphism(3, 2).map
    point = (16, 36, 96, 256)
    image = g2.evaluate_exact(point)
    assert tuple(x.to_fraction() for x in image) == point


def test_variety_semigroup_samples():
    cat = catalogue()
    for name in ("plane", "cuspidal_cubic", "quadric", "p_axis_image", "astroid_curve"):
        assert verify_semigroup_on_variety(cat[name], 2, 2).passed, name
        assert verify_semigroup_on_variety(cat[name], 2, 3).passed, name


def test_all_preimage_cases():
    for case in PREIMAGE_CASES:
        check = verify_preimage_varieties(case)
        assert check.passed, (case, check.residual)
    with pytest.raises(ValueError):
        verify_preimage_varieties("nonsense")


def test_composition_form_matches_canonical_on_quadric():
    form = space_degree2_composition_form()
    assert form.components[0] == induced_morphism(3, 2).map.components[0]


def test_fixed_and_preperiodic_all_degrees():
    for d in range(2, 9):
        for check in verify_fixed_and_preperiodic(d):
            assert check.passed, (d, check.name)


def test_plane_fixed_points_match_divisibility_rule():
    # (1,-1) maps to (9,27) for even degree and stays put for odd degree
    g2 = induced_morphism(2, 2).map
    g3 = induced_morphism(2, 3).map
    assert [x.to_fraction() for x in g2.evaluate_exact((1, -1))] == [9, 27]
    assert [x.to_fraction() for x in g3.evaluate_exact((1, -1))] == [1, -1]
    assert [x.to_fraction() for x in g3.evaluate_exact((0, 0))] == [9, 27]
    assert [x.to_fraction() for x in g2.evaluate_exact((0, 0))] == [0, 0]


def test_cone_birationality_all_degrees():
    for d in range(2, 9):
        for check in verify_cone_birationality(d):
            assert check.passed, (d, check.name)


def test_cone_morphism_fixed_point_example():
    from cheborbit.varieties import cone_form_morphism

    h2 = cone_form_morphism(2)
    vals = h2.evaluate_exact((4, 4, 4))
    assert tuple(x.to_fraction() for x in vals) == (4, 4, 4)


def test_family_identities():
    assert invariant_family(1, 1, 2).passed
    assert invariant_family(1, 2, 2).passed
    assert invariant_family(2, 3, 3).passed


def test_family_param_reduces_to_plane_on_unit_choice():
    # (m, n) = (1, 1): parameters (T_3(t), t) through the plane chart
    param = family_param(1, 1)
    t = MultiPoly.variable("t")
    plane = catalogue()["plane"].param
    t3 = parse_poly("t^3 - 3*t")
    expected = tuple(c.substitute({"u": t3, "v": t}) for c in plane.components)
    assert tuple(param.components) == expected


def test_family_slopes():
    for k in range(1, 6):
        data = family_slope(k)
        assert data["slope"] == Fraction(5, 2) + Fraction(4, 4 * k * k - 1)
        assert data["dp"] == 2 * (2 * k) ** 2 - 2
        assert data["dq"] == 5 * (2 * k) ** 2 + 3
    assert family_slope(1)["slope"] == Fraction(23, 6)


def test_surface_intersection():
    for check in verify_surface_intersection():
        assert check.passed, check.name


def test_astroid_singular_locus():
    for check in verify_astroid_singular_locus(samples=25):
        assert check.passed, check.name
