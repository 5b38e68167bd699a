import math

import numpy as np
import pytest

from cheborbit.dynamics import (
    classify_special_points,
    count_generic_preimages,
    iterate_orbit,
    jacobian_partition_data,
    jordan_curve_data,
    sample_k_set,
    shadow_survival,
    survival_fraction,
)
from cheborbit.invariants import induced_morphism
from cheborbit.varieties import catalogue


def test_orbit_examples():
    g2 = induced_morphism(2, 2).map
    rec = iterate_orbit(g2, (1, -1))
    assert rec.status == "bounded_horizon"
    assert rec.iterates[0] == (9 + 0j, 27 + 0j)
    assert rec.iterates[1] == (9 + 0j, 27 + 0j)

    rec = iterate_orbit(g2, (10, 0))
    assert rec.status == "escaped"
    assert rec.escape_index is not None and rec.escape_index <= 5

    rec = iterate_orbit(g2, (0, 0))
    assert rec.status == "bounded_horizon"
    assert all(pt == (0j, 0j) for pt in rec.iterates)


def test_orbit_argument_guards():
    g2 = induced_morphism(2, 2).map
    with pytest.raises(ValueError):
        iterate_orbit(g2, (0, 0), max_iter=0)
    with pytest.raises(ValueError):
        iterate_orbit(g2, (0, 0), escape_radius=-1)


def test_sampler_hits_the_corner_point():
    data = sample_k_set("plane", 10)
    pts = data["points"]
    # alpha = beta = 0 is the first grid point: the parametrization gives (9, 27)
    assert np.allclose(pts[0], [9.0, 27.0])
    assert data["max_imag"] < 1e-9


def test_sampler_inequalities_hold():
    for name, res in (("plane", 40), ("axis_surface", 40), ("astroid_surface", 40), ("quadric", 12)):
        data = sample_k_set(name, res)
        assert float(data["inequality_residuals"].min()) > -1e-9, name
        assert data["max_imag"] < 1e-9


def test_sampler_rejects_entries_without_angle_rule():
    with pytest.raises(ValueError):
        sample_k_set("cuspidal_cubic", 10)


def test_shadow_survival_certifies_boundedness():
    out = shadow_survival("plane", 14)
    assert out["escaped"] == 0
    assert out["max_norm"] <= 27.0 + 1e-9
    out = shadow_survival("astroid_surface", 10)
    assert out["escaped"] == 0
    assert out["max_norm"] <= 256.0 + 1e-9


def test_float64_survival_documented_shortfall():
    # binary64 loses points off the measure-zero space sets; the shadowed
    # check is the faithful one, this asserts the fast path stays honest
    data = sample_k_set("astroid_surface", 20)
    frac = survival_fraction("astroid_surface", data["points"])
    assert frac < 1.0


def test_jordan_curve_structure():
    rows = jordan_curve_data(32)
    arc1 = [r for r in rows if r[0] == 1]
    arc2 = [r for r in rows if r[0] == 2]
    assert arc1[0][2:] == (9.0, 27.0)
    assert arc1[-1][2:] == pytest.approx((1.0, -1.0))
    assert arc2[0][2:] == pytest.approx((1.0, -1.0))
    assert arc2[-1][2:] == (9.0, 27.0)
    # gluing: endpoint sets of the two arcs coincide exactly
    ends1 = {tuple(round(x, 9) for x in arc1[i][2:]) for i in (0, -1)}
    ends2 = {tuple(round(x, 9) for x in arc2[i][2:]) for i in (0, -1)}
    assert ends1 == ends2 == {(1.0, -1.0), (9.0, 27.0)}
    with pytest.raises(ValueError):
        jordan_curve_data(1)


def test_jordan_second_arc_at_zero_angle():
    rows = jordan_curve_data(8)
    at_zero = [r for r in rows if r[0] == 2 and r[1] == 0.0]
    assert at_zero and at_zero[0][2:] == (9.0, 27.0)


def test_jacobian_partition():
    jp = jacobian_partition_data(41)
    assert jp["symbolic_ok"]
    axis = list(jp["axis"])
    i0 = axis.index(0.0)
    i2 = axis.index(2.0)
    assert jp["det"][i0, i0] == 0.0
    assert jp["det"][i2, i0] == -4.0


def test_generic_degree_counts():
    for (n, d), expect in (((2, 2), 4), ((2, 3), 9), ((3, 2), 8)):
        out = count_generic_preimages(n, d, trials=20, seed=0)
        assert out["modal"] == expect
        assert out["agreement"] >= 0.9
    with pytest.raises(ValueError):
        count_generic_preimages(3, 3)


def test_degree_counts_stable_across_seeds():
    a = count_generic_preimages(2, 2, trials=10, seed=1)
    b = count_generic_preimages(2, 2, trials=10, seed=2)
    assert a["modal"] == b["modal"] == 4


def test_special_point_counts():
    assert classify_special_points(2)["counts"] == (2, 2, 2)
    assert classify_special_points(3)["counts"] == (3, 3, 4)
    with pytest.raises(ValueError):
        classify_special_points(4)


def test_sampled_points_forward_invariant_small_degrees():
    # property: shadowed orbits of sampled points never escape for d <= 4
    for d in (2, 3, 4):
        out = shadow_survival("plane", 8, d=d)
        assert out["escaped"] == 0, d
