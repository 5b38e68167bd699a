"""Chebyshev polynomials and the n-variable Chebyshev endomorphisms.

The degree-d endomorphism on C^n sends the elementary symmetric functions
of (t_1, ..., t_{n+1}) with product 1 to those of the d-th powers.  The
component polynomials come from the classical recurrences

    n = 2:  e1^(d) = z1*e1^(d-1) - z2*e1^(d-2) + e1^(d-3),
    n = 3:  e1^(d) = z1*e1^(d-1) - z2*e1^(d-2) + z3*e1^(d-3) - e1^(d-4),

with the reversal identity e_{n+1-j}^(d)(z1..zn) = e_j^(d)(zn..z1) filling
the remaining slots, and a six-term recurrence for the middle slot when
n = 3.  Everything here is exact over Z; the numeric double-check solves
for the roots t_i directly (the oracle path).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache

from .polynomials import MultiPoly, PolyMap
from .reporting import Check
from .roots import aberth_roots, RootFindingFailed
from .scalars import CycRational

__all__ = [
    "DEFAULT_DEGREE_CAP",
    "ChebEndo",
    "RealForm",
    "RootTuple",
    "cheb1",
    "cheb1_parity_part",
    "cheb_endo",
    "oracle_cheb_numeric",
    "real_form",
    "verify_equivariance",
    "verify_semigroup_endo",
    "UnsupportedDimension",
    "DegreeCapExceeded",
    "ComplexResidue",
]

DEFAULT_DEGREE_CAP = 16


class UnsupportedDimension(ValueError):
    """Endomorphisms are implemented for n = 2 and n = 3 only."""


class DegreeCapExceeded(ValueError):
    """A composed degree went past the configured cap."""


class ComplexResidue(ArithmeticError):
    """A real-form component failed to split into real and imaginary parts."""


@dataclass(frozen=True)
class ChebEndo:
    n: int
    d: int
    map: PolyMap


@dataclass(frozen=True)
class RealForm:
    n: int
    d: int
    map: PolyMap


@dataclass(frozen=True)
class RootTuple:
    """n+1 complex numbers with product 1, the hidden coordinates."""

    values: tuple[complex, ...]

    def __post_init__(self):
        prod = 1
        for v in self.values:
            prod *= v
        if abs(prod - 1) > 1e-9:
            raise ValueError(f"product of roots is {prod!r}, not 1")

    def elementary_symmetric(self) -> tuple[complex, ...]:
        # e_1 .. e_n via the product expansion of prod (1 + v*t_i)
        coeffs = [1 + 0j]
        for v in self.values:
            coeffs = [
                (coeffs[i] if i < len(coeffs) else 0)
                + (coeffs[i - 1] * v if i > 0 else 0)
                for i in range(len(coeffs) + 1)
            ]
        return tuple(coeffs[1:-1])

    def powered(self, d: int) -> "RootTuple":
        return RootTuple(tuple(v**d for v in self.values))


@lru_cache(maxsize=None)
def cheb1(d: int) -> MultiPoly:
    """One-variable Chebyshev polynomial, normalization T_d(s + 1/s) = s^d + s^-d.

    T_0 = 2, T_1 = z, T_{d+2} = z*T_{d+1} - T_d.
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    z = MultiPoly.variable("z")
    if d == 0:
        return MultiPoly.constant(2, ("z",))
    if d == 1:
        return z
    return cheb1(d - 1) * z - cheb1(d - 2)


def cheb1_parity_part(d: int) -> tuple[str, MultiPoly]:
    """Write T_d(w) as even_part(w^2) (d even) or w * odd_part(w^2) (d odd).

    Returns ("even", P) with T_d(w) = P(w^2), or ("odd", Q) with
    T_d(w) = w * Q(w^2); both parts are monic of degree floor(d/2) in z.
    """
    t = cheb1(d)
    parity = d % 2
    terms = {}
    for exps, c in t.terms.items():
        e = exps[0]
        if e % 2 != parity:
            raise AssertionError("Chebyshev polynomial has mixed parity")
        terms[((e - parity) // 2,)] = c
    part = MultiPoly(("z",), terms)
    return ("odd" if parity else "even", part)


_Z2 = ("z1", "z2")
_Z3 = ("z1", "z2", "z3")


@lru_cache(maxsize=None)
def _first_slot(n: int, d: int) -> MultiPoly:
    z1 = MultiPoly.variable("z1")
    z2 = MultiPoly.variable("z2")
    if n == 2:
        if d == 0:
            return MultiPoly.constant(3, _Z2)
        if d == 1:
            return z1.with_vars(_Z2)
        if d == 2:
            return (z1 * z1 - z2 * 2).with_vars(_Z2)
        return (
            _first_slot(2, d - 1) * z1
            - _first_slot(2, d - 2) * z2
            + _first_slot(2, d - 3)
        )
    z3 = MultiPoly.variable("z3")
    if d == 0:
        return MultiPoly.constant(4, _Z3)
    if d == 1:
        return z1.with_vars(_Z3)
    if d == 2:
        return (z1 * z1 - z2 * 2).with_vars(_Z3)
    if d == 3:
        # e1 of cubes: z1^3 - 3 z1 z2 + 3 z3 (Newton), equivalently the
        # 4-term recurrence seeded with e1 of inverses = z3.
        return (z1**3 - z1 * z2 * 3 + z3 * 3).with_vars(_Z3)
    return (
        _first_slot(3, d - 1) * z1
        - _first_slot(3, d - 2) * z2
        + _first_slot(3, d - 3) * z3
        - _first_slot(3, d - 4)
    )


@lru_cache(maxsize=None)
def _middle_slot(d: int) -> MultiPoly:
    """Second elementary symmetric slot for n = 3 (index may be negative).

    Six-term recurrence with palindromic coefficient pattern; the d = 2
    seed is e2 of the squares, z2^2 - 2*z1*z3 + 2.
    """
    z1 = MultiPoly.variable("z1")
    z2 = MultiPoly.variable("z2")
    z3 = MultiPoly.variable("z3")
    if d == -2 or d == 2:
        return (z2 * z2 - z1 * z3 * 2 + 2).with_vars(_Z3)
    if d in (-1, 1):
        return z2.with_vars(_Z3)
    if d == 0:
        return MultiPoly.constant(6, _Z3)
    if d == 3:
        return (z2**3 - z1 * z2 * z3 * 3 + z3 * z3 * 3 + z1 * z1 * 3 - z2 * 3).with_vars(_Z3)
    c2 = z1 * z3 - 1
    c3 = z1 * z1 - z2 * 2 + z3 * z3
    return (
        _middle_slot(d - 1) * z2
        - _middle_slot(d - 2) * c2
        + _middle_slot(d - 3) * c3
        - _middle_slot(d - 4) * c2
        + _middle_slot(d - 5) * z2
        - _middle_slot(d - 6)
    )


def _reversed_vars(p: MultiPoly, n: int) -> MultiPoly:
    names = _Z2 if n == 2 else _Z3
    swap = dict(zip(names, reversed([MultiPoly.variable(v) for v in names])))
    return p.substitute(swap).with_vars(names)


@lru_cache(maxsize=None)
def cheb_endo(n: int, d: int) -> ChebEndo:
    """The degree-d Chebyshev endomorphism on C^n, exact over Z."""
    if n not in (2, 3):
        raise UnsupportedDimension(f"n = {n}")
    if d < 1:
        raise ValueError("degree must be >= 1")
    first = _first_slot(n, d)
    last = _reversed_vars(first, n)
    if n == 2:
        comps = (first, last)
        source = _Z2
    else:
        comps = (first, _middle_slot(d), last)
        source = _Z3
    for c in comps:
        if not c.has_integer_coefficients():
            raise AssertionError("endomorphism coefficients must be integers")
    return ChebEndo(n, d, PolyMap(source, comps))


def oracle_cheb_numeric(n: int, d: int, z: tuple[complex, ...]) -> tuple[complex, ...]:
    """Numeric endomorphism value via the hidden roots.

    Solves t^{n+1} - z1 t^n + z2 t^{n-1} - ... + (-1)^{n+1} = 0, raises the
    roots to the d-th power, and rebuilds the elementary symmetric
    functions.  Independent of the recurrence path.
    """
    if len(z) != n:
        raise ValueError("point arity mismatch")
    coeffs = [1 + 0j]
    for j, zj in enumerate(z, start=1):
        coeffs.append((-1) ** j * complex(zj))
    coeffs.append((-1) ** (n + 1))
    roots = aberth_roots(coeffs)
    scale = max(1.0, max(abs(c) for c in coeffs))
    for r in roots:
        val = sum(c * r ** (n + 1 - i) for i, c in enumerate(coeffs))
        if abs(val) > 1e-6 * scale * max(1.0, abs(r)) ** (n + 1):
            raise RootFindingFailed(f"residual {abs(val):.3e}")
    # renormalize so the product is 1 exactly; root clusters otherwise
    # drift off the constraint by their first-order wobble
    prod = 1
    for r in roots:
        prod *= r
    correction = prod ** (-1.0 / (n + 1))
    tup = RootTuple(tuple(r * correction for r in roots))
    return tup.powered(d).elementary_symmetric()


def _split_gauss(p: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Split a Q(i)-coefficient polynomial into real and imaginary parts."""
    real_terms = {}
    imag_terms = {}
    for exps, c in p.terms.items():
        if c.k not in (1, 4):
            raise ComplexResidue("coefficient escaped Q(i)")
        a = c.rational_part()
        b = c.unit_part()
        if a:
            real_terms[exps] = CycRational(a)
        if b:
            imag_terms[exps] = CycRational(b)
    return MultiPoly(p.vars, real_terms), MultiPoly(p.vars, imag_terms)


@lru_cache(maxsize=None)
def real_form(n: int, d: int) -> RealForm:
    """The endomorphism restricted to the conjugation-symmetric slice.

    Substitutes z1 -> x + i*y, z2 -> x - i*y (n = 2) or z1 -> x + i*y,
    z2 -> z, z3 -> x - i*y (n = 3) and splits components into real and
    imaginary coefficient parts; the result is an integer polynomial map.
    """
    endo = cheb_endo(n, d)
    i = MultiPoly.constant(CycRational.i_unit())
    x = MultiPoly.variable("x")
    y = MultiPoly.variable("y")
    if n == 2:
        bind = {"z1": x + i * y, "z2": x - i * y}
        comp1, comp2 = endo.map.substitute(bind)
        re1, im1 = _split_gauss(comp1)
        re2, im2 = _split_gauss(comp2)
        if re2 != re1 or im2 != -im1:
            raise ComplexResidue("second slot is not the conjugate of the first")
        comps = (re1, im1)
        source = ("x", "y")
    else:
        z = MultiPoly.variable("z")
        bind = {"z1": x + i * y, "z2": z, "z3": x - i * y}
        comp1, comp2, comp3 = endo.map.substitute(bind)
        re1, im1 = _split_gauss(comp1)
        re2, im2 = _split_gauss(comp2)
        re3, im3 = _split_gauss(comp3)
        if not im2.is_zero():
            raise ComplexResidue("middle slot has an imaginary residue")
        if re3 != re1 or im3 != -im1:
            raise ComplexResidue("third slot is not the conjugate of the first")
        comps = (re1.with_vars(("x", "y", "z")), im1.with_vars(("x", "y", "z")), re2.with_vars(("x", "y", "z")))
        source = ("x", "y", "z")
    for c in comps:
        if not c.has_integer_coefficients():
            raise ComplexResidue("real form has non-integer coefficients")
    return RealForm(n, d, PolyMap(source, comps))


def _zeta(n: int) -> CycRational:
    return CycRational.omega() if n == 2 else CycRational.i_unit()


def verify_equivariance(n: int, d: int) -> list[Check]:
    """Exact identities for the rotation and reversal symmetries.

    Rotation: scaling slot j by zeta^j before the map equals scaling slot
    j by zeta^{jd} after it.  Reversal: reversing the input coordinates
    reverses the output coordinates (the polynomial-level restatement of
    conjugation symmetry).
    """
    endo = cheb_endo(n, d)
    zeta = _zeta(n)
    names = _Z2 if n == 2 else _Z3
    bind = {
        name: MultiPoly.constant(zeta ** (j + 1)) * MultiPoly.variable(name)
        for j, name in enumerate(names)
    }
    rotated = endo.map.substitute(bind)
    rotation_ok = all(
        rotated[j] == endo.map.components[j] * MultiPoly.constant(zeta ** ((j + 1) * d))
        for j in range(n)
    )
    reversal_ok = all(
        _reversed_vars(endo.map.components[j], n) == endo.map.components[n - 1 - j]
        for j in range(n)
    )
    return [
        Check(f"rotation-equivariance n={n} d={d}", rotation_ok),
        Check(f"reversal-equivariance n={n} d={d}", reversal_ok),
    ]


def verify_semigroup_endo(n: int, j: int, k: int, cap: int = DEFAULT_DEGREE_CAP) -> Check:
    """T_j o T_k = T_{jk}, exact equality of polynomial maps."""
    if j < 1 or k < 1:
        raise ValueError("degrees must be >= 1")
    if j * k > cap:
        raise DegreeCapExceeded(f"{j}*{k} > cap {cap}")
    composed = cheb_endo(n, j).map.compose(cheb_endo(n, k).map)
    direct = cheb_endo(n, j * k).map
    return Check(f"endo-semigroup n={n} ({j},{k})", composed == direct)
