"""Resultants, discriminants, and exact polynomial division.

Resultants are Sylvester determinants computed by fraction-free Bareiss
elimination over the polynomial ring in the remaining variables.  Every
division performed by the Bareiss recurrence is exact over an integral
domain, which multivariate division by a single divisor verifies term by
term; a failed division therefore signals a bug, not bad input.
"""

from __future__ import annotations

from fractions import Fraction

from .polynomials import MultiPoly, ZeroPolynomial

__all__ = [
    "sylvester_matrix",
    "bareiss_determinant",
    "resultant",
    "discriminant",
    "exact_divide",
    "DivisionFailed",
]


class DivisionFailed(ArithmeticError):
    """An internally required exact division left a remainder."""


def exact_divide(num: MultiPoly, den: MultiPoly) -> MultiPoly | None:
    """Divide num by den, returning the quotient or None when not divisible.

    Single-divisor multivariate division on graded-lex leading terms: the
    remainder is zero exactly when den divides num, so None is a
    legitimate "not divisible" answer rather than a failure.
    """
    if den.is_zero():
        raise ZeroPolynomial("division by the zero polynomial")
    if num.is_zero():
        return MultiPoly.zero(num.vars)
    num = num.with_vars(tuple(sorted(set(num.vars) | set(den.vars))))
    den = den.with_vars(num.vars)
    lead_e, lead_c = den.leading_term()
    quotient = MultiPoly.zero(num.vars)
    rest = num
    while not rest.is_zero():
        e, c = rest.leading_term()
        diff = tuple(a - b for a, b in zip(e, lead_e))
        if any(d < 0 for d in diff):
            return None
        piece = MultiPoly(rest.vars, {diff: c / lead_c})
        quotient = quotient + piece
        rest = rest - piece * den
    return quotient


def sylvester_matrix(f: MultiPoly, g: MultiPoly, var: str) -> list[list[MultiPoly]]:
    fc = f.coefficients_in(var)
    gc = g.coefficients_in(var)
    n, m = len(fc) - 1, len(gc) - 1
    if n < 1 or m < 1:
        raise ValueError("both polynomials must have positive degree in the variable")
    union = tuple(sorted(set(f.vars) | set(g.vars) - {var}))
    zero = MultiPoly.zero(union)
    fc = [c.with_vars(union) for c in fc]
    gc = [c.with_vars(union) for c in gc]
    size = n + m
    rows: list[list[MultiPoly]] = []
    for shift in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(fc)):
            row[shift + j] = c
        rows.append(row)
    for shift in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(gc)):
            row[shift + j] = c
        rows.append(row)
    return rows


def bareiss_determinant(matrix: list[list[MultiPoly]]) -> MultiPoly:
    """Fraction-free determinant of a square matrix of polynomials.

    The intermediate entries are k x k minors of the input, so every
    division by the previous pivot is exact; a non-exact division raises
    DivisionFailed.
    """
    m = [row[:] for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    if n == 0:
        raise ValueError("empty matrix")
    sign = 1
    prev: MultiPoly | None = None
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if pivot is None:
                return MultiPoly.zero(m[0][0].vars)
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        pivot_entry = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            head = row_i[k]
            for j in range(k + 1, n):
                value = pivot_entry * row_i[j] - head * m[k][j]
                if prev is not None:
                    divided = exact_divide(value, prev)
                    if divided is None:
                        raise DivisionFailed("Bareiss pivot division was not exact")
                    value = divided
                row_i[j] = value
            row_i[k] = MultiPoly.zero(pivot_entry.vars)
        prev = pivot_entry
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Res(f, g, var): the Sylvester determinant in var, exact."""
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("resultant of the zero polynomial")
    return bareiss_determinant(sylvester_matrix(f, g, var))


def discriminant(f: MultiPoly, var: str) -> MultiPoly:
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f', var) / lc_var(f), n = deg_var f.

    The leading-coefficient division must be exact; if it is not, the
    resultant implementation is broken and DivisionFailed is raised.
    """
    n = f.degree(var)
    if n < 2:
        raise ValueError("discriminant needs degree >= 2 in the variable")
    res = resultant(f, f.derivative(var), var)
    lead = f.coefficients_in(var)[n]
    quotient = exact_divide(res, lead)
    if quotient is None:
        raise DivisionFailed("leading coefficient does not divide Res(f, f')")
    if (n * (n - 1) // 2) % 2:
        quotient = -quotient
    return quotient


def univariate_gcd(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Monic gcd of two univariate polynomials over Q in the given variable."""
    def degree_of(h):
        return h.degree(var)

    a, b = f, g
    while not b.is_zero():
        a, b = b, _poly_mod(a, b, var)
    if a.is_zero():
        return a
    lead = a.coefficients_in(var)[degree_of(a)]
    inv = lead.constant_value().inverse()
    return a * inv


def _poly_mod(a: MultiPoly, b: MultiPoly, var: str) -> MultiPoly:
    db = b.degree(var)
    lead_b = b.coefficients_in(var)[db].constant_value()
    rest = a
    x = MultiPoly.variable(var)
    while not rest.is_zero() and rest.degree(var) >= db:
        da = rest.degree(var)
        ca = rest.coefficients_in(var)[da].constant_value()
        rest = rest - b * (x ** (da - db)) * (ca / lead_b)
    return rest


def squarefree_part(f: MultiPoly, var: str) -> MultiPoly:
    """f / gcd(f, f'): same roots, all simple, over Q."""
    if f.degree(var) < 1:
        return f
    g = univariate_gcd(f, f.derivative(var), var)
    if g.degree(var) < 1:
        return f
    quotient = exact_divide(f, g)
    if quotient is None:
        raise DivisionFailed("gcd does not divide its polynomial")
    return quotient
