"""Catalogue of invariant subvarieties and their exact verifications.

Every entry stores defining polynomials and a polynomial parametrization
that satisfies them identically; most entries also carry the rule that
intertwines the induced morphisms with one-variable Chebyshev dynamics
on the parameters:

    identity   g_d(P(y)) = P(T_d(y))          componentwise on parameters
    shift2     g_d(P(w + 2)) = P(T_d(w) + 2)  image of the singular line
    square     g_d(P(t^2)) = P(T_d(t)^2)      image curves of the axes

The catalogue is static data; the verification functions below are pure
and return Check records.  Ideals quoted from elimination computations
are fixtures verified by substitution, never recomputed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .chebyshev import cheb1, cheb1_parity_part
from .invariants import induced_morphism, syzygy_normal_form
from .polynomials import MultiPoly, PolyMap, parse_poly
from .reporting import Check

__all__ = [
    "VarietyEntry",
    "RuleMismatch",
    "catalogue",
    "catalogue_json",
    "CATALOGUE_SCHEMA",
    "verify_membership",
    "verify_semiconjugacy",
    "verify_semigroup_on_variety",
    "verify_preimage_varieties",
    "verify_fixed_and_preperiodic",
    "verify_cone_birationality",
    "invariant_family",
    "family_slope",
    "verify_surface_intersection",
    "verify_astroid_singular_locus",
    "PREIMAGE_CASES",
]


class RuleMismatch(ArithmeticError):
    """A parity assumption behind a reparametrization rule failed."""


@dataclass(frozen=True)
class VarietyEntry:
    name: str
    n: int
    ambient: tuple[str, ...]
    defining: tuple[MultiPoly, ...]
    param: PolyMap
    rule: str | None = None
    inequalities: tuple[MultiPoly, ...] = ()
    notes: str = ""


ASTROID_CUTOUT = (
    "256 - 192*p + 48*p^2 - 4*p^3 - 128*q - 80*p*q + p^2*q + 16*q^2"
    " + 288*r + 36*p*r - 8*q*r - 108*s"
)


def _entry(name, n, ambient, defining, param_vars, param, rule=None, inequalities=(), notes=""):
    amb = tuple(ambient)
    return VarietyEntry(
        name=name,
        n=n,
        ambient=amb,
        defining=tuple(parse_poly(t, amb) for t in defining),
        param=PolyMap(tuple(sorted(param_vars)), [parse_poly(t, param_vars) for t in param]),
        rule=rule,
        inequalities=tuple(parse_poly(t, amb) for t in inequalities),
        notes=notes,
    )


@lru_cache(maxsize=None)
def catalogue() -> dict[str, VarietyEntry]:
    entries = [
        _entry(
            "plane", 2, ("p", "q"), (),
            ("u", "v"),
            ("1 + u*v + v^2", "1/2 * (-2 + u^2 + 6*v^2 + u*v*(3 + v^2))"),
            rule="identity",
            inequalities=("p^3 - q^2", "27 + 8*q - 18*p - p^2"),
            notes="the whole plane orbit variety; parameters are 2cos(3*alpha), 2cos(beta)",
        ),
        _entry(
            "cuspidal_cubic", 2, ("p", "q"), ("p^3 - q^2",),
            ("z",),
            ("(1 + z)^2", "(1 + z)^3"),
            rule="identity",
            notes="branch curve; the bounded arc joins (1,-1) and (9,27) through the cusp",
        ),
        _entry(
            "parabola", 2, ("p", "q"), ("p^2 + 18*p - 8*q - 27",),
            ("u",),
            ("5 + 2*u", "11 + 7*u + 1/2 * (u^2)"),
            rule="identity",
            notes="branch curve; orbit image of the deltoid of critical values",
        ),
        _entry(
            "quadric", 3, ("p", "q", "r", "s"), ("r^2 - q*s",),
            ("u", "v", "w"),
            (
                "v^2 + u*v*w + w^2",
                "(u + v*w)^2",
                "(u + v*w)*(2*v*w + 1/2 * (u*(v^2 + w^2)))",
                "(2*v*w + 1/2 * (u*(v^2 + w^2)))^2",
            ),
            rule="identity",
            inequalities=("p^2 - s", ASTROID_CUTOUT),
            notes="the whole space orbit variety, a quadric hypersurface",
        ),
        _entry(
            "axis_surface", 3, ("p", "q", "r", "s"), ("p^2 - s", "q*s - r^2"),
            ("t", "w"),
            ("(w + t)^2", "(w*t + 2)^2", "(w + t)^2*(w*t + 2)", "(w + t)^4"),
            rule="identity",
            notes="orbit image of the coordinate planes x*y = 0; singular along the q-axis",
        ),
        _entry(
            "astroid_surface", 3, ("p", "q", "r", "s"), (ASTROID_CUTOUT, "q*s - r^2"),
            ("u", "v"),
            (
                "4 + 2*u*v + v^2",
                "(u + 2*v)^2",
                "(u + 2*v)*(2*u + 4*v + 1/2 * (u*v^2))",
                "(2*u + 4*v + 1/2 * (u*v^2))^2",
            ),
            rule="identity",
            inequalities=("p^2 - s", ASTROID_CUTOUT),
            notes="orbit image of the ruled critical-value surface; singular along the astroid curve",
        ),
        _entry(
            "p_axis", 3, ("p", "q", "r", "s"), ("q", "r", "s"),
            ("t",),
            ("t", "0", "0", "0"),
            notes="singular line of the quadric; preperiodic, fixed for odd degrees",
        ),
        _entry(
            "q_axis", 3, ("p", "q", "r", "s"), ("p", "r", "s"),
            ("t",),
            ("0", "t", "0", "0"),
            notes="singular line of the axis surface; preperiodic, fixed for odd degrees",
        ),
        _entry(
            "shifted_s_axis", 3, ("p", "q", "r", "s"), ("p - 1", "q", "r"),
            ("t",),
            ("1", "0", "0", "t"),
            notes="preperiodic line; falls onto the astroid curve when 3 divides the degree",
        ),
        _entry(
            "p_axis_image", 3, ("p", "q", "r", "s"),
            (
                "r^2 - q*s",
                "-16*p - 12*r + q*r + 20*s - 4*p*s + q*s",
                "4*p*r + 4*s - 4*p*s + q*s",
                "16 - 8*q + q^2 + 32*r - 16*s",
                "4*p + p*q + 4*r - 4*s",
                "p^2 - s",
            ),
            ("t",),
            ("t^2", "(2*t - 2)^2", "(2*t - 2)*t^2", "t^4"),
            rule="shift2",
            notes="degree-2 image of the singular line; invariant curve inside both surfaces",
        ),
        _entry(
            "q_axis_image", 3, ("p", "q", "r", "s"),
            ("-64 + 16*q - 8*r + s", "-8*p + 4*r - s", "16*r^2 - 64*s - 8*r*s + s^2"),
            ("T",),
            ("4*T", "(T + 2)^2", "4*T*(T + 2)", "16*T^2"),
            rule="square",
            notes="degree-2 image of the q-axis; invariant curve inside both surfaces",
        ),
        _entry(
            "astroid_curve", 3, ("p", "q", "r", "s"),
            (
                "-12 + 3*p - q",
                "r^2 - q*s",
                "108*r + q*r - 54*s",
                "108*q + q^2 - 54*r",
            ),
            ("t",),
            ("4 + 3*t", "9*t", "3*t*(6 + 1/2 * t)", "t*(6 + 1/2 * t)^2"),
            rule="square",
            notes="singular curve of the astroid surface, orbit image of the space astroid",
        ),
        _entry(
            "quadric_cone", 3, ("a", "b", "c"), ("a*c - b^2",),
            ("u", "v"),
            ("u^2", "u*v", "v^2"),
            notes="birational model of the astroid surface; carries the cone form of the dynamics",
        ),
    ]
    return {e.name: e for e in entries}


CATALOGUE_SCHEMA = "cheborbit-catalogue/1"


def catalogue_json() -> dict:
    """The catalogue as a versioned JSON document (stable across runs)."""
    entries = []
    for entry in catalogue().values():
        entries.append(
            {
                "name": entry.name,
                "orbit_variety_dimension": entry.n,
                "ambient": list(entry.ambient),
                "defining": [f.canonical_text() for f in entry.defining],
                "parameters": list(entry.param.source_vars),
                "parametrization": entry.param.canonical_texts(),
                "rule": entry.rule,
                "inequalities": [f.canonical_text() for f in entry.inequalities],
                "notes": entry.notes,
            }
        )
    return {"schema": CATALOGUE_SCHEMA, "entries": entries}


def _morphism(entry: VarietyEntry, d: int) -> PolyMap:
    return induced_morphism(entry.n, d).map


def verify_membership(entry: VarietyEntry, samples: int = 100, seed: int = 0) -> list[Check]:
    """Defining polynomials pull back to zero under the parametrization.

    Exact substitution first, then a numeric spot-check on random complex
    parameter values (guards the exact path itself against variable
    mix-ups).
    """
    bindings = dict(zip(entry.ambient, entry.param.components))
    checks = []
    for i, poly_ in enumerate(entry.defining):
        pulled = poly_.substitute(bindings)
        checks.append(Check(f"{entry.name} defining[{i}] pulls back to 0", pulled.is_zero()))
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        pt = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in entry.param.source_vars]
        coords = entry.param.evaluate(pt)
        env = dict(zip(entry.ambient, coords))
        scale = max(1.0, max(abs(x) for x in coords) ** 3) if coords else 1.0
        for poly_ in entry.defining:
            worst = max(worst, abs(poly_.evaluate(env)) / scale)
    checks.append(
        Check(f"{entry.name} numeric membership ({samples} pts)", worst < 1e-9, residual=worst)
    )
    return checks


def _chebyshev_in(d: int, var: str) -> MultiPoly:
    return cheb1(d).substitute({"z": MultiPoly.variable(var)})


def _is_even_in(p: MultiPoly, var: str) -> bool:
    if var not in p.vars:
        return True
    i = p.vars.index(var)
    return all(e[i] % 2 == 0 for e in p.terms)


def verify_semiconjugacy(entry: VarietyEntry, d: int) -> Check:
    """Exact identity g_d o param = param o (rule-adjusted T_d)."""
    if entry.rule is None:
        raise ValueError(f"{entry.name} has no semiconjugacy rule")
    g = _morphism(entry, d)
    composed = g.substitute(dict(zip(entry.ambient, entry.param.components)))
    if entry.rule == "identity":
        bind = {v: _chebyshev_in(d, v) for v in entry.param.source_vars}
        rhs = entry.param.substitute(bind)
        ok = all(a == b for a, b in zip(composed, rhs))
    elif entry.rule == "shift2":
        (pvar,) = entry.param.source_vars
        w_shift = MultiPoly.variable("w") + 2
        lhs = tuple(c.substitute({pvar: w_shift}) for c in composed)
        rhs = entry.param.substitute({pvar: _chebyshev_in(d, "w") + 2})
        ok = all(a == b for a, b in zip(lhs, rhs))
    elif entry.rule == "square":
        (pvar,) = entry.param.source_vars
        t_sq = MultiPoly.variable("t") ** 2
        lhs = tuple(c.substitute({pvar: t_sq}) for c in composed)
        rhs = entry.param.substitute({pvar: _chebyshev_in(d, "t") ** 2})
        if not all(_is_even_in(x, "t") for x in lhs):
            raise RuleMismatch(f"{entry.name}: composite is not even in the parameter")
        ok = all(a == b for a, b in zip(lhs, rhs))
    else:
        raise ValueError(f"unknown rule {entry.rule!r}")
    return Check(f"semiconjugacy {entry.name} d={d}", ok)


def verify_semigroup_on_variety(entry: VarietyEntry, e: int, d: int) -> Check:
    """g_e(g_d(param)) equals the rule-adjusted param at T_{de}, exact.

    The pullback of the syzygy along the parametrization vanishes, so
    the comparison needs no normal form even for the space entries.
    """
    if entry.rule is None:
        raise ValueError(f"{entry.name} has no semiconjugacy rule")
    g_e = _morphism(entry, e)
    g_d = _morphism(entry, d)
    first = g_d.substitute(dict(zip(entry.ambient, entry.param.components)))
    second = g_e.substitute(dict(zip(entry.ambient, first)))
    de = d * e
    if entry.rule == "identity":
        rhs = entry.param.substitute(
            {v: _chebyshev_in(de, v) for v in entry.param.source_vars}
        )
        ok = all(a == b for a, b in zip(second, rhs))
    elif entry.rule == "shift2":
        (pvar,) = entry.param.source_vars
        lhs = tuple(c.substitute({pvar: MultiPoly.variable("w") + 2}) for c in second)
        rhs = entry.param.substitute({pvar: _chebyshev_in(de, "w") + 2})
        ok = all(a == b for a, b in zip(lhs, rhs))
    else:
        (pvar,) = entry.param.source_vars
        lhs = tuple(c.substitute({pvar: MultiPoly.variable("t") ** 2}) for c in second)
        rhs = entry.param.substitute({pvar: _chebyshev_in(de, "t") ** 2})
        ok = all(a == b for a, b in zip(lhs, rhs))
    return Check(f"variety-semigroup {entry.name} ({e},{d})", ok)


# -- forward preimage checks ---------------------------------------------------

# Each case: (label, n, d, source ideal or parametrization, target entry).
# Sources quoted from elimination output are fixtures; where a polynomial
# parametrization exists the inclusion is checked exactly, otherwise on
# random numeric solutions of the triangular generators.

PREIMAGE_CASES = (
    "cubic_into_itself_d2",
    "tangent_line_into_cubic_d2",
    "unit_line_into_parabola_d2",
    "cubic_into_itself_d3",
    "sextic_curve_into_cubic_d3",
    "half_parabola_into_parabola_d3",
    "singular_line_preimage_d2",
    "axis_surface_preimage_d2",
    "q_axis_preimage_d2",
    "astroid_surface_preimage_d2",
)


def _target_defining(name: str) -> tuple[MultiPoly, ...]:
    return catalogue()[name].defining


@lru_cache(maxsize=None)
def space_degree2_composition_form() -> PolyMap:
    """The degree-2 space morphism in composition form, valid on all of C^4.

    (p^2 + 4q - 4r, A^2, A*B, B^2) with A = q - 2p + 2 and
    B = 2s - p^2 - 4r + 4q.  Agrees with the canonical representative
    modulo the quadric relation (asserted); the preimage ideals quoted
    from elimination output are stated relative to this form, so the
    forward checks in C^4 must use it.
    """
    p, q, r, s = (MultiPoly.variable(v) for v in "pqrs")
    a = q - p * 2 + 2
    b = s * 2 - p * p - r * 4 + q * 4
    form = PolyMap(("p", "q", "r", "s"), [p * p + q * 4 - r * 4, a * a, a * b, b * b])
    derived = induced_morphism(3, 2).map
    if not all(
        syzygy_normal_form(x - y).is_zero()
        for x, y in zip(form.components, derived.components)
    ):
        raise AssertionError("composition form disagrees with the derived morphism")
    return form


def verify_preimage_varieties(case: str, samples: int = 50, seed: int = 0) -> Check:
    """Forward inclusion g_d(W) inside the claimed target variety."""
    cat = catalogue()
    t = MultiPoly.variable("t")
    if case == "cubic_into_itself_d2":
        return _forward_param(case, 2, 2, cat["cuspidal_cubic"].param, "cuspidal_cubic")
    if case == "cubic_into_itself_d3":
        return _forward_param(case, 2, 3, cat["cuspidal_cubic"].param, "cuspidal_cubic")
    if case == "tangent_line_into_cubic_d2":
        w = PolyMap(("t",), [t, t * 3 - 4])
        return _forward_param(case, 2, 2, w, "cuspidal_cubic")
    if case == "unit_line_into_parabola_d2":
        w = PolyMap(("t",), [MultiPoly.constant(1, ("t",)), t])
        return _forward_param(case, 2, 2, w, "parabola")
    if case == "half_parabola_into_parabola_d3":
        w = PolyMap(("t",), [t, t * t * Fraction(1, 2)])
        return _forward_param(case, 2, 3, w, "parabola")
    if case == "sextic_curve_into_cubic_d3":
        # only the ideal is available: -27 + 54p - 27p^2 + p^3 - 18q + 18pq - 4q^2,
        # quadratic in q, so sample numeric points on it.
        return _forward_numeric_conic(
            case,
            d=3,
            curve=parse_poly("-27 + 54*p - 27*p^2 + p^3 - 18*q + 18*p*q - 4*q^2"),
            target="cuspidal_cubic",
            samples=samples,
            seed=seed,
        )
    if case == "singular_line_preimage_d2":
        # triangular source: q = 2p - 2, 2s = 8 - 8p + p^2 + 4r, and a
        # quadratic tying r to p; sample p and solve.
        return _forward_numeric_singular_line(case, samples, seed)
    if case == "axis_surface_preimage_d2":
        p, q = MultiPoly.variable("p"), MultiPoly.variable("q")
        w = PolyMap(("p", "q"), [p, q, q * 2, q * 4])
        return _forward_param(case, 3, 2, w, "axis_surface")
    if case == "q_axis_preimage_d2":
        w = PolyMap(("t",), [t, t * t * Fraction(1, 4), t * t * Fraction(1, 2), t * t])
        return _forward_param(case, 3, 2, w, "q_axis")
    if case == "astroid_surface_preimage_d2":
        p, q = MultiPoly.variable("p"), MultiPoly.variable("q")
        w = PolyMap(("p", "q"), [p, q, p * q * Fraction(1, 2), p * p * q * Fraction(1, 4)])
        return _forward_param(case, 3, 2, w, "astroid_surface")
    raise ValueError(f"unknown preimage case {case!r}")


def _forward_param(case: str, n: int, d: int, source: PolyMap, target: str) -> Check:
    if n == 3 and d == 2:
        g = space_degree2_composition_form()
    else:
        g = induced_morphism(n, d).map
    image = g.substitute(dict(zip(g.source_vars, source.components)))
    env = dict(zip(catalogue()[target].ambient, image))
    ok = all(f.substitute(env).is_zero() for f in _target_defining(target))
    return Check(f"preimage {case}", ok)


def _quadratic_roots(a: complex, b: complex, c: complex) -> list[complex]:
    import cmath

    if a == 0:
        return [] if b == 0 else [-c / b]
    disc = cmath.sqrt(b * b - 4 * a * c)
    return [(-b + disc) / (2 * a), (-b - disc) / (2 * a)]


def _forward_numeric_conic(case, d, curve, target, samples, seed) -> Check:
    """Sample points on a q-quadratic curve, push forward, test the target."""
    g = induced_morphism(2, d).map
    coeffs = curve.coefficients_in("q")
    rng = random.Random(seed)
    worst = 0.0
    used = 0
    while used < samples:
        p0 = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        vals = [c.evaluate({"p": p0}) for c in coeffs]
        for q0 in _quadratic_roots(vals[2], vals[1], vals[0]):
            image = g.evaluate((p0, q0))
            env = dict(zip(("p", "q"), image))
            scale = max(1.0, max(abs(x) for x in image) ** 3)
            for f in _target_defining(target):
                worst = max(worst, abs(f.evaluate(env)) / scale)
            used += 1
    return Check(f"preimage {case} ({used} pts)", worst < 1e-8, residual=worst)


def _forward_numeric_singular_line(case, samples, seed) -> Check:
    """Sample the triangular preimage ideal of the singular line.

    Generators: 2 - 2p + q, -8 + 8p - p^2 - 4r + 2s, r^2 + s - 2ps.
    For fixed p the last two combine to a quadratic in r.  The solutions
    live off the quadric, so the composition form of the morphism (the
    representative the ideal was computed against) is the one to apply.
    """
    g = space_degree2_composition_form()
    rng = random.Random(seed)
    worst = 0.0
    used = 0
    while used < samples:
        p0 = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        q0 = 2 * p0 - 2
        # s = (8 - 8p + p^2 + 4r)/2;  r^2 + s - 2ps = 0 becomes
        # r^2 + 2(1 - 2p) r + (1 - 2p)(8 - 8p + p^2)/2 = 0
        for r0 in _quadratic_roots(
            1, 2 * (1 - 2 * p0), (1 - 2 * p0) * (8 - 8 * p0 + p0 * p0) / 2
        ):
            s0 = (8 - 8 * p0 + p0 * p0 + 4 * r0) / 2
            image = g.evaluate((p0, q0, r0, s0))
            scale = max(1.0, max(abs(x) for x in image))
            worst = max(worst, max(abs(image[1]), abs(image[2]), abs(image[3])) / scale)
            used += 1
    return Check(f"preimage {case} ({used} pts)", worst < 1e-8, residual=worst)


# -- fixed points and preperiodic lines ---------------------------------------


def verify_fixed_and_preperiodic(d: int) -> list[Check]:
    """Exact fixed-point and preperiodic-line behavior for degree d.

    Plane: the cusp is fixed unless 3 | d, in which case it lands on the
    fixed point (9, 27).  Space: odd degrees fix both axis lines via the
    even part of the one-variable polynomial; degree 2 maps them onto
    their catalogued image curves; the shifted s-axis is fixed for
    3 - d and falls onto the astroid curve when 3 | d.
    """
    checks: list[Check] = []
    g2map = induced_morphism(2, d).map
    origin = g2map.evaluate_exact((0, 0))
    expected = (Fraction(9), Fraction(27)) if d % 3 == 0 else (Fraction(0), Fraction(0))
    checks.append(
        Check(
            f"plane origin image d={d}",
            tuple(c.to_fraction() for c in origin) == expected,
        )
    )
    nine = g2map.evaluate_exact((9, 27))
    checks.append(
        Check(
            f"(9,27) fixed d={d}",
            tuple(c.to_fraction() for c in nine) == (Fraction(9), Fraction(27)),
        )
    )

    g3map = induced_morphism(3, d).map
    t = MultiPoly.variable("t")
    if d % 2 == 1:
        kind, part = cheb1_parity_part(d)
        assert kind == "odd"
        odd_sq = t * part.substitute({"z": t}) ** 2  # T_d(sqrt t)^2 as a polynomial in t
        on_p_axis = g3map.substitute({"p": t, "q": 0, "r": 0, "s": 0})
        ok = (
            on_p_axis[0] == odd_sq
            and all(c.is_zero() for c in on_p_axis[1:])
        )
        checks.append(Check(f"p_axis fixed (odd d={d})", ok))
        on_q_axis = g3map.substitute({"p": 0, "q": t * t, "r": 0, "s": 0})
        td = _chebyshev_in(d, "t")
        ok = (
            on_q_axis[1] == td * td
            and on_q_axis[0].is_zero()
            and on_q_axis[2].is_zero()
            and on_q_axis[3].is_zero()
        )
        checks.append(Check(f"q_axis fixed (odd d={d})", ok))
    if d == 2:
        cat = catalogue()
        img1 = g3map.substitute({"p": t, "q": 0, "r": 0, "s": 0})
        checks.append(
            Check(
                "degree-2 image of p_axis is its catalogued curve",
                tuple(img1) == tuple(cat["p_axis_image"].param.substitute({"t": t})),
            )
        )
        img2 = g3map.substitute({"p": 0, "q": t, "r": 0, "s": 0})
        checks.append(
            Check(
                "degree-2 image of q_axis is its catalogued curve",
                tuple(img2) == tuple(cat["q_axis_image"].param.substitute({"T": t})),
            )
        )

    u = MultiPoly.variable("u")
    on_line = g3map.substitute(
        {"p": 1, "q": 0, "r": 0, "s": (u * Fraction(1, 2)) ** 2}
    )
    if d % 3 != 0:
        td_u = _chebyshev_in(d, "u")
        target = (td_u * Fraction(1, 2)) ** 2
        ok = (
            on_line[0] == 1
            and on_line[1].is_zero()
            and on_line[2].is_zero()
            and on_line[3] == target
        )
        checks.append(Check(f"shifted_s_axis fixed (3 does not divide d={d})", ok))
    else:
        gens = catalogue()["astroid_curve"].defining
        env = dict(zip(("p", "q", "r", "s"), on_line))
        ok = all(f.substitute(env).is_zero() for f in gens)
        checks.append(Check(f"shifted_s_axis lands on astroid curve (3 | d={d})", ok))
        if d == 3:
            rhs = catalogue()["astroid_curve"].param.substitute({"t": u * u})
            checks.append(
                Check("degree-3 image of shifted_s_axis parametrizes the astroid curve",
                      tuple(on_line) == tuple(rhs))
            )
    return checks


# -- cone model of the astroid surface -----------------------------------------

_CONE_TO_SURFACE = (
    "4 + 2*b + c",
    "a + 4*b + 4*c",
    "2*a + 8*b + 8*c + 1/2 * (a*c) + b*c",
    "4*a + 16*b + 16*c + 2*a*c + 4*b*c + 1/4 * (a*c^2)",
)

# surface -> cone, as (numerator, denominator) pairs over p, q, r, s
_SURFACE_TO_CONE_NUM = (
    "-64 + 32*p - 4*p^2 + 4*q + 5*p*q - q^2 - 12*r",
    "64 - 32*p + 4*p^2 + 16*q - p*q - 6*r",
    "-16 + 8*p - p^2 - 12*q + 6*r",
)
_SURFACE_TO_CONE_DEN_POWERS = (1, 2, 1)  # denominator is (-12 + 3p - q), doubled for b


def cone_to_surface_map() -> PolyMap:
    return PolyMap(("a", "b", "c"), [parse_poly(s, ("a", "b", "c")) for s in _CONE_TO_SURFACE])


def cone_form_morphism(d: int) -> PolyMap:
    """The integer morphism induced on the quadric cone.

    Built from the even/odd split T_d(w) = P(w^2) or w*Q(w^2): the first
    and last slots are P(a)^2-type polynomials, the middle slot is b^d
    plus the degree <= d-1 correction that makes the map match
    (T_d(u)^2, T_d(u)T_d(v), T_d(v)^2) on the cone.
    """
    a, b, c = (MultiPoly.variable(v) for v in "abc")
    kind, part = cheb1_parity_part(d)
    pa = part.substitute({"z": a})
    pc = part.substitute({"z": c})
    j = d // 2
    if kind == "odd":
        first = a * pa * pa
        last = c * pc * pc
        middle = b ** d + b * pa * pc - b * a ** j * c ** j
    else:
        first = pa * pa
        last = pc * pc
        middle = b ** d + pa * pc - a ** j * c ** j
    return PolyMap(("a", "b", "c"), [first, middle, last])


def verify_cone_birationality(d: int) -> list[Check]:
    """The birational package: cone -> surface, its rational inverse, and
    the cone form of the degree-d dynamics, all exact."""
    checks: list[Check] = []
    cat = catalogue()
    u, v = MultiPoly.variable("u"), MultiPoly.variable("v")
    uv_square = {"a": u * u, "b": u * v, "c": v * v}
    psi = cone_to_surface_map()
    surf = cat["astroid_surface"].param
    psi_on_cone = tuple(comp.substitute(uv_square) for comp in psi.components)
    checks.append(
        Check("cone map matches surface parametrization", tuple(psi_on_cone) == tuple(surf.components))
    )

    den = parse_poly("-12 + 3*p - q")
    bind = dict(zip(("p", "q", "r", "s"), surf.components))
    den_pulled = den.substitute(bind)
    dd = (u - v) ** 2
    checks.append(Check("inverse-map denominator pulls back to -(u-v)^2", den_pulled == -dd))
    expected_num = (-(u * u) * dd, (u * v) * dd * (-2), -(v * v) * dd)
    for i, (num_text, expect) in enumerate(zip(_SURFACE_TO_CONE_NUM, expected_num)):
        pulled = parse_poly(num_text, ("p", "q", "r", "s")).substitute(bind)
        checks.append(
            Check(f"inverse-map numerator[{i}] carries the (u-v)^2 cofactor", pulled == expect)
        )

    h = cone_form_morphism(d)
    lhs = tuple(comp.substitute(uv_square) for comp in h.components)
    tdu = _chebyshev_in(d, "u")
    tdv = _chebyshev_in(d, "v")
    rhs = (tdu * tdu, tdu * tdv, tdv * tdv)
    checks.append(Check(f"cone morphism matches Chebyshev squares d={d}", lhs == rhs))
    b = MultiPoly.variable("b")
    tail = h.components[1] - b ** d
    checks.append(
        Check(f"cone morphism middle slot is b^{d} + lower order", tail.total_degree() <= d - 1)
    )
    return checks


# -- the infinite family of invariant curves ------------------------------------


def family_param(m: int, n: int) -> PolyMap:
    """Invariant plane curve from the angle relation beta = (n/m) alpha.

    Parameters substitute T_{3m}(t) and T_n(t) into the plane
    parametrization; the curve is invariant for every degree.
    """
    plane = catalogue()["plane"].param
    t3m = _chebyshev_in(3 * m, "t")
    tn = _chebyshev_in(n, "t")
    return PolyMap(("t",), [c.substitute({"u": t3m, "v": tn}) for c in plane.components])


def invariant_family(m: int, n: int, d: int) -> Check:
    param = family_param(m, n)
    g = induced_morphism(2, d).map
    lhs = g.substitute(dict(zip(("p", "q"), param.components)))
    rhs = param.substitute({"t": _chebyshev_in(d, "t")})
    return Check(f"family curve (m={m}, n={n}) semiconjugacy d={d}", tuple(lhs) == tuple(rhs))


def family_slope(k: int) -> dict:
    """Exact tangent data of the (2k, 3) family curve at the corner (1, -1).

    Uses the direct one-parameter form p(v) = 1 + v T_{2k}(v) + v^2,
    q(v) = (T_{2k}(v)^2 + 6v^2 + T_{2k}(v)(3v + v^3) - 2)/2 and returns
    dp/dv, dq/dv at v = -2 and their ratio as exact rationals.
    """
    v = MultiPoly.variable("v")
    t2k = _chebyshev_in(2 * k, "v")
    p = 1 + v * t2k + v * v
    q = (t2k * t2k + v * v * 6 + t2k * (v * 3 + v ** 3) - 2) * Fraction(1, 2)
    dp = p.derivative("v").substitute({"v": -2}).constant_value().to_fraction()
    dq = q.derivative("v").substitute({"v": -2}).constant_value().to_fraction()
    return {"dp": dp, "dq": dq, "slope": dq / dp}


# -- surface intersection and singular locus ------------------------------------


def verify_surface_intersection() -> list[Check]:
    """The two invariant surfaces meet exactly in the two image curves."""
    checks: list[Check] = []
    cat = catalogue()
    surf = cat["astroid_surface"].param
    u, v = MultiPoly.variable("u"), MultiPoly.variable("v")
    p_uv, _, _, s_uv = surf.components
    lhs = p_uv * p_uv - s_uv
    rhs = (2 - u) * (2 + u) * ((2 - v) ** 2) * ((2 + v) ** 2) * Fraction(1, 4)
    checks.append(Check("p^2 - s factors on the astroid surface", lhs == rhs))

    g1 = cat["p_axis_image"].param
    g2 = cat["q_axis_image"].param
    at_u2 = tuple(c.substitute({"u": 2}) for c in surf.components)
    checks.append(
        Check(
            "astroid surface at u=2 equals the p-axis image curve at t = v+2",
            at_u2 == tuple(g1.substitute({"t": v + 2})),
        )
    )
    at_um2 = tuple(c.substitute({"u": -2}) for c in surf.components)
    checks.append(
        Check(
            "astroid surface at u=-2 equals the p-axis image curve at t = 2-v",
            at_um2 == tuple(g1.substitute({"t": 2 - v})),
        )
    )
    at_v2 = tuple(c.substitute({"v": 2}) for c in surf.components)
    checks.append(
        Check(
            "astroid surface at v=2 equals the q-axis image curve at T = u+2",
            at_v2 == tuple(g2.substitute({"T": u + 2})),
        )
    )
    at_vm2 = tuple(c.substitute({"v": -2}) for c in surf.components)
    checks.append(
        Check(
            "astroid surface at v=-2 equals the q-axis image curve at T = 2-u",
            at_vm2 == tuple(g2.substitute({"T": 2 - u})),
        )
    )
    return checks


def verify_astroid_singular_locus(samples: int = 50, seed: int = 0) -> list[Check]:
    """Jacobian rank of the surface equations drops exactly on the diagonal.

    All 2x2 minors of the Jacobian of (cutout, qs - r^2), pulled back to
    the parametrization, vanish identically at v = u; at random u != v
    some minor stays bounded away from zero (rank 2).
    """
    cat = catalogue()
    surf = cat["astroid_surface"]
    bind = dict(zip(("p", "q", "r", "s"), surf.param.components))
    rows = []
    for f in surf.defining:
        rows.append([f.derivative(x).substitute(bind) for x in ("p", "q", "r", "s")])
    minors = []
    for i in range(4):
        for j in range(i + 1, 4):
            minors.append(rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i])
    u = MultiPoly.variable("u")
    on_diag_zero = all(mm.substitute({"v": u}).is_zero() for mm in minors)
    checks = [Check("all surface Jacobian minors vanish on the diagonal", on_diag_zero)]
    rng = random.Random(seed)
    worst_rank = 2
    for _ in range(samples):
        u0 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        v0 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(u0 - v0) < 0.3:
            v0 += 1.0
        vals = [abs(mm.evaluate({"u": u0, "v": v0})) for mm in minors]
        if max(vals) < 1e-8:
            worst_rank = min(worst_rank, 1)
    checks.append(Check(f"Jacobian rank 2 off the diagonal ({samples} pts)", worst_rank == 2))
    return checks
