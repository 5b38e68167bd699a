import pytest

from cheborbit.branch import (
    branch_report_n2,
    branch_report_n3,
    branch_triangular_solution,
    even_rewrite,
    half_branch_polys,
    plane_eliminant,
    product_eliminant,
)
from cheborbit.polynomials import parse_poly


def test_branch_report_n2_all_pass():
    for check in branch_report_n2():
        assert check.passed, (check.name, check.detail)


def test_branch_report_n3_all_pass():
    for check in branch_report_n3(samples=25):
        assert check.passed, (check.name, check.detail)


def test_eliminant_fixture_degree_two():
    res_q = plane_eliminant(2, "q")
    assert res_q == parse_poly(
        "32*a + 2*a^2 - 16*b - 128*p + 8*a*p + 96*p^2 - 4*a*p^2 - 24*p^3 + 2*p^4"
    )


def test_half_branch_minus_is_sign_flip():
    h_plus, h_minus = half_branch_polys()
    u, v = parse_poly("u"), parse_poly("v")
    assert h_minus.substitute({"u": -u, "v": -v}) == h_plus
    assert h_plus.degree("p") == 4
    assert h_plus.coefficient_of({"p": 4}) == 1


def test_triangular_solution_consistency():
    # on the plus branch the completed tuple satisfies the linear relations
    a, u, v, p = 3.0, 0.5, -1.25, 2.0
    q, r, s = branch_triangular_solution(a, u, v, p)
    assert abs((2 - 2 * p + q) - u) < 1e-12
    assert abs((8 + a - 8 * p - p * p + 4 * r) - 4 * u) < 1e-12
    assert abs((a - 2 * p * p + 2 * s) - v) < 1e-12


def test_even_rewrite():
    assert even_rewrite(parse_poly("u^2*v^2")) == parse_poly("b*d")
    assert even_rewrite(parse_poly("u*v")) == parse_poly("c")
    assert even_rewrite(parse_poly("u^3*v")) == parse_poly("b*c")
    with pytest.raises(ValueError):
        even_rewrite(parse_poly("u"))


def test_product_eliminant_monic_degree_eight():
    big = product_eliminant()
    assert big.degree("p") == 8
    assert big.coefficient_of({"p": 8}) == 1
    assert big.has_integer_coefficients()
    assert big.degree("c") <= 1  # cone chart keeps the odd slot linear
