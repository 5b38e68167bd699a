"""Branch-locus algebra for the induced morphisms of degree 2 and 3.

On the plane the branch curves fall out of one resultant and one
discriminant: eliminating q from (P - a, Q - b) leaves a quartic in p
whose p-discriminant factors into the cuspidal cubic and the parabola.
On the space variety the line of fibers is resolved through the two
half-branch quartics h+ and h- (the eliminant splits along the square
roots u, v of the target's b and d coordinates); their product rewrites
to the monic degree-8 integral equation of p over the target ring, and
their discriminants expose the two invariant surfaces.

All displayed elimination outputs are fixtures, verified here rather
than recomputed.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .elimination import discriminant, exact_divide, resultant
from .invariants import induced_morphism, syzygy_normal_form
from .polynomials import MultiPoly, parse_poly
from .reporting import Check
from .varieties import ASTROID_CUTOUT, catalogue

__all__ = [
    "plane_eliminant",
    "branch_report_n2",
    "half_branch_polys",
    "branch_triangular_solution",
    "even_rewrite",
    "product_eliminant",
    "branch_report_n3",
]

# displayed eliminants for the degree-2 plane morphism
_RES_Q_D2 = (
    "32*a + 2*a^2 - 16*b - 128*p + 8*a*p + 96*p^2 - 4*a*p^2 - 24*p^3 + 2*p^4"
)
_RES_P_D2 = (
    "192*a^2 - a^3 - 256*b - 36*a*b + b^2 - 2048*q + 864*a*q - 24*a^2*q"
    " - 152*b*q + 768*q^2 - 108*a*q^2 - 4*b*q^2 - 96*q^3 + 4*q^4"
)
_CUBIC_FACTOR = "a^3 - b^2"
_PARABOLA_FACTOR = "-27 + 18*a + a^2 - 8*b"

# half-branch quartics of the degree-2 space morphism
_H_PLUS = (
    "64 + a^2 - 128*p + 80*p^2 - 2*a*p^2 - 16*p^3 + p^4 - 64*u + 64*p*u"
    " - 8*p^2*u + 16*u^2 + 16*v - 16*p*v - 8*u*v"
)
_H_SIGN_FACTOR = (
    "-256 + 192*a - 48*a^2 + 4*a^3 + 128*u^2 + 80*a*u^2 - a^2*u^2"
    " - 16*u^4 - 288*u*v - 36*a*u*v + 8*u^3*v + 108*v^2"
)


@lru_cache(maxsize=None)
def plane_eliminant(d: int, var: str) -> MultiPoly:
    """Res of (P - a, Q - b) with respect to var, for the plane morphism."""
    P, Q = induced_morphism(2, d).map.components
    a = MultiPoly.variable("a")
    b = MultiPoly.variable("b")
    return resultant(P - a, Q - b, var)


def branch_report_n2() -> list[Check]:
    checks: list[Check] = []
    res_q = plane_eliminant(2, "q")
    checks.append(Check("degree-2 eliminant in p matches fixture", res_q == parse_poly(_RES_Q_D2)))
    res_p = plane_eliminant(2, "p")
    checks.append(Check("degree-2 eliminant in q matches fixture", res_p == parse_poly(_RES_P_D2)))

    disc = discriminant(res_q, "p")
    quotient = exact_divide(disc, parse_poly(_PARABOLA_FACTOR))
    if quotient is not None:
        quotient = exact_divide(quotient, parse_poly(_CUBIC_FACTOR))
    ok = quotient is not None and quotient.is_constant() and not quotient.is_zero()
    detail = quotient.canonical_text() if ok else "division failed"
    checks.append(Check("degree-2 discriminant factors into the two branch curves", ok, detail))
    checks.append(
        Check(
            "degree-2 discriminant constant is -1048576",
            ok and quotient.constant_value() == -1048576,
        )
    )

    res_q3 = plane_eliminant(3, "q")
    lead = res_q3.coefficients_in("p")[res_q3.degree("p")]
    checks.append(
        Check(
            "degree-3 eliminant is a p-nonic with leading coefficient -4",
            res_q3.degree("p") == 9 and lead == MultiPoly.constant(-4, lead.vars),
        )
    )
    res_p3 = plane_eliminant(3, "p")
    lead_q = res_p3.coefficients_in("q")[res_p3.degree("q")]
    checks.append(
        Check(
            "degree-3 eliminant is a q-nonic with leading coefficient 64",
            res_p3.degree("q") == 9 and lead_q == MultiPoly.constant(64, lead_q.vars),
        )
    )

    disc3 = discriminant(res_q3, "p")
    quotient = exact_divide(disc3, parse_poly("(a - 1)^6"))
    if quotient is not None:
        quotient = exact_divide(quotient, parse_poly(_PARABOLA_FACTOR) ** 3)
    if quotient is not None:
        quotient = exact_divide(quotient, parse_poly(_CUBIC_FACTOR) ** 3)
    ok = quotient is not None and quotient.is_constant()
    negative_int = False
    detail = "division failed"
    if ok:
        value = quotient.constant_value()
        negative_int = value.is_integer() and value.to_fraction() < 0
        detail = f"cofactor {value}"
    checks.append(
        Check(
            "degree-3 discriminant carries (a-1)^6, parabola^3, cubic^3 with a negative integer cofactor",
            ok and negative_int,
            detail,
        )
    )
    return checks


@lru_cache(maxsize=None)
def half_branch_polys() -> tuple[MultiPoly, MultiPoly]:
    """The two half-branch quartics; the minus form is u,v -> -u,-v."""
    h_plus = parse_poly(_H_PLUS)
    u, v = MultiPoly.variable("u"), MultiPoly.variable("v")
    h_minus = h_plus.substitute({"u": -u, "v": -v})
    return h_plus, h_minus


def branch_triangular_solution(a, u, v, p):
    """(q, r, s) completing a root p of the plus-branch quartic.

    q = u + 2p - 2, r = (p^2 + 8p - 8 - a + 4u)/4, s = (v + 2p^2 - a)/2.
    Works for numbers or polynomials; negate u and v for the minus
    branch.
    """
    q = u + 2 * p - 2
    r = (p * p + 8 * p - 8 - a + 4 * u) / 4
    s = (v + 2 * p * p - a) / 2
    return q, r, s


def even_rewrite(f: MultiPoly) -> MultiPoly:
    """Rewrite a polynomial even in (u, v) jointly onto the cone chart.

    u^i v^j with i + j even becomes b^(i/2) d^(j/2) (both even) or
    c * b^((i-1)/2) d^((j-1)/2) (both odd); the c-exponent never exceeds 1.
    """
    f = f.with_vars(tuple(sorted(set(f.vars) | {"u", "v"})))
    iu, iv = f.vars.index("u"), f.vars.index("v")
    keep = tuple(x for k, x in enumerate(f.vars) if k not in (iu, iv))
    out_vars = tuple(sorted(set(keep) | {"b", "c", "d"}))
    out = MultiPoly.zero(out_vars)
    for exps, coeff in f.terms.items():
        i, j = exps[iu], exps[iv]
        if (i + j) % 2:
            raise ValueError("polynomial is not even in (u, v)")
        rest = {name: e for name, e in zip(f.vars, exps) if name not in ("u", "v") and e}
        if i % 2 == 0:
            rest["b"] = rest.get("b", 0) + i // 2
            rest["d"] = rest.get("d", 0) + j // 2
        else:
            rest["c"] = rest.get("c", 0) + 1
            rest["b"] = rest.get("b", 0) + (i - 1) // 2
            rest["d"] = rest.get("d", 0) + (j - 1) // 2
        key = tuple(rest.get(name, 0) for name in out_vars)
        out = out + MultiPoly(out_vars, {key: coeff})
    return out


@lru_cache(maxsize=None)
def product_eliminant() -> MultiPoly:
    """H(p) = h+ h- rewritten over the target coordinates, monic of degree 8."""
    h_plus, h_minus = half_branch_polys()
    return even_rewrite(h_plus * h_minus)


def branch_report_n3(samples: int = 50, seed: int = 0) -> list[Check]:
    checks: list[Check] = []
    h_plus, h_minus = half_branch_polys()
    gmap = induced_morphism(3, 2).map

    # the half-branch quartics vanish along the graph of the morphism:
    # substitute a, u, v by their expressions in p, q, r, s
    a_expr = gmap.components[0]
    u_expr = parse_poly("q - 2*p + 2", ("p", "q", "r", "s"))
    v_expr = parse_poly("2*s - p^2 - 4*r + 4*q", ("p", "q", "r", "s"))
    pulled = h_plus.substitute({"a": a_expr, "u": u_expr, "v": v_expr})
    checks.append(
        Check("plus quartic vanishes on the morphism graph (mod quadric)",
              syzygy_normal_form(pulled).is_zero())
    )
    pulled_minus = h_minus.substitute({"a": a_expr, "u": -u_expr, "v": -v_expr})
    checks.append(
        Check("minus quartic vanishes on the morphism graph (mod quadric)",
              syzygy_normal_form(pulled_minus).is_zero())
    )

    quadric = catalogue()["quadric"].param
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        params = [complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)) for _ in range(3)]
        p0, q0, r0, s0 = quadric.evaluate(params)
        env = {"p": p0, "q": q0, "r": r0, "s": s0}
        a0 = a_expr.evaluate(env)
        u0 = u_expr.evaluate(env)
        v0 = v_expr.evaluate(env)
        scale = max(1.0, abs(p0), abs(a0), abs(u0), abs(v0)) ** 4
        worst = max(worst, abs(h_plus.evaluate({"a": a0, "p": p0, "u": u0, "v": v0})) / scale)
        worst = max(worst, abs(h_minus.evaluate({"a": a0, "p": p0, "u": -u0, "v": -v0})) / scale)
    checks.append(
        Check(f"half-branch quartics vanish numerically ({samples} pts)", worst < 1e-8, residual=worst)
    )

    u, v = MultiPoly.variable("u"), MultiPoly.variable("v")
    sign_factor = parse_poly(_H_SIGN_FACTOR)
    disc_plus = discriminant(h_plus, "p")
    expected_plus = MultiPoly.constant(-16384) * (MultiPoly.variable("a") + v) ** 2 * sign_factor
    checks.append(Check("disc of plus quartic matches -16384 (a+v)^2 (surface factor)",
                        disc_plus == expected_plus))
    disc_minus = discriminant(h_minus, "p")
    expected_minus = MultiPoly.constant(-16384) * (MultiPoly.variable("a") - v) ** 2 * sign_factor
    checks.append(Check("disc of minus quartic matches -16384 (a-v)^2 (surface factor)",
                        disc_minus == expected_minus))

    cutout = parse_poly(ASTROID_CUTOUT).substitute(
        {"p": MultiPoly.variable("a"), "q": MultiPoly.variable("b"),
         "r": MultiPoly.variable("c"), "s": MultiPoly.variable("d")}
    )
    checks.append(
        Check("surface factor rewrites to the astroid cutout (up to sign)",
              even_rewrite(sign_factor) == -cutout)
    )

    product = h_plus * h_minus
    flipped = product.substitute({"u": -u, "v": -v})
    checks.append(Check("product of half-branch quartics is even in (u, v)", product == flipped))
    big = product_eliminant()
    lead = big.coefficients_in("p")[big.degree("p")]
    checks.append(
        Check(
            "integral equation of p is monic of degree 8 over Z[a,b,c,d]",
            big.degree("p") == 8
            and lead == MultiPoly.constant(1, lead.vars)
            and big.has_integer_coefficients(),
        )
    )
    checks.append(
        Check("even rewrite sends u^2 v^2 to b*d",
              even_rewrite((u * u) * (v * v)) == parse_poly("b*d"))
    )
    return checks
