"""Sparse multivariate polynomials over Q(zeta_k) and tuples of them.

A ``MultiPoly`` is a dict from exponent vectors to nonzero ``CycRational``
coefficients, over an alphabetically sorted tuple of variable names.  The
alphabetical order is the single global variable order of the package;
it fixes the graded-lex term order used for division and the serialized
term order, so equal polynomials have equal text and equal JSON.

Two term orders are used:

* division / leading terms: graded lex, earlier variable more significant;
* serialization: exponent vectors compared right-to-left, ascending, which
  reproduces the conventional computer-algebra print order
  (``4*p + p^2 - 4*q``, constants first, last variable most significant).

``PolyMap`` bundles an ordered tuple of components over a shared source
variable tuple and supports composition and complex evaluation.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from .scalars import CycRational, NotRationalError

__all__ = [
    "MultiPoly",
    "PolyMap",
    "poly",
    "parse_poly",
    "ZeroPolynomial",
]


class ZeroPolynomial(ValueError):
    """An operation that requires a nonzero polynomial got zero."""


Scalar = CycRational | int | Fraction


def _as_coeff(value) -> CycRational:
    if isinstance(value, CycRational):
        return value
    return CycRational(value)


def _sorted_vars(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names)))


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple[int, ...], Scalar] | None = None):
        svars = _sorted_vars(variables)
        if svars != tuple(variables):
            # remap exponents onto the sorted order
            index = [svars.index(v) for v in variables]
            remapped: dict[tuple[int, ...], CycRational] = {}
            for exps, c in (terms or {}).items():
                new = [0] * len(svars)
                for pos, e in zip(index, exps):
                    new[pos] += e
                key = tuple(new)
                coeff = _as_coeff(c)
                prev = remapped.get(key)
                remapped[key] = coeff if prev is None else prev + coeff
            terms = remapped
        clean: dict[tuple[int, ...], CycRational] = {}
        for exps, c in (terms or {}).items():
            coeff = _as_coeff(c)
            if coeff.is_zero():
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(svars):
                raise ValueError("exponent vector arity mismatch")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            clean[exps] = coeff
        self.vars = svars
        self.terms = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str] = ()) -> "MultiPoly":
        return cls(variables, {})

    @classmethod
    def constant(cls, value: Scalar, variables: Sequence[str] = ()) -> "MultiPoly":
        svars = _sorted_vars(variables)
        return cls(svars, {(0,) * len(svars): _as_coeff(value)})

    @classmethod
    def variable(cls, name: str) -> "MultiPoly":
        return cls((name,), {(1,): CycRational(1)})

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self) -> CycRational:
        if self.is_zero():
            return CycRational(0)
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def has_integer_coefficients(self) -> bool:
        return all(c.is_integer() for c in self.terms.values())

    def has_rational_coefficients(self) -> bool:
        return all(c.is_rational() for c in self.terms.values())

    # -- degrees ----------------------------------------------------------

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(exps) for exps in self.terms)

    def degree(self, var: str) -> int:
        if var not in self.vars:
            return 0 if self.terms else -1
        if not self.terms:
            return -1
        i = self.vars.index(var)
        return max(exps[i] for exps in self.terms)

    # -- alignment ---------------------------------------------------------

    def with_vars(self, variables: Sequence[str]) -> "MultiPoly":
        """Re-express over a superset of the current variables."""
        svars = _sorted_vars(variables)
        missing = [v for v in self.vars if v not in svars]
        if missing:
            used = {v for v, present in zip(self.vars, self._used_mask()) if present}
            if used - set(svars):
                raise ValueError(f"cannot drop used variables {used - set(svars)}")
        pos = {v: i for i, v in enumerate(svars)}
        index = [pos.get(v) for v in self.vars]
        terms: dict[tuple[int, ...], CycRational] = {}
        for exps, c in self.terms.items():
            new = [0] * len(svars)
            for where, e in zip(index, exps):
                if e and where is None:
                    raise ValueError("cannot drop used variables")
                if where is not None:
                    new[where] = e
            terms[tuple(new)] = c
        return MultiPoly(svars, terms)

    def _used_mask(self) -> list[bool]:
        used = [False] * len(self.vars)
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return used

    @staticmethod
    def _aligned(a: "MultiPoly", b: "MultiPoly"):
        if a.vars == b.vars:
            return a, b
        union = _sorted_vars(a.vars + b.vars)
        return a.with_vars(union), b.with_vars(union)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(self, other)
        terms = dict(a.terms)
        for exps, c in b.terms.items():
            cur = terms.get(exps)
            val = c if cur is None else cur + c
            if val.is_zero():
                terms.pop(exps, None)
            else:
                terms[exps] = val
        out = object.__new__(MultiPoly)
        out.vars, out.terms = a.vars, terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(MultiPoly)
        out.vars = self.vars
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(self, other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        terms: dict[tuple[int, ...], CycRational] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                c = c1 * c2
                cur = terms.get(key)
                val = c if cur is None else cur + c
                if val.is_zero():
                    terms.pop(key, None)
                else:
                    terms[key] = val
        out = object.__new__(MultiPoly)
        out.vars, out.terms = a.vars, terms
        return out

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = MultiPoly.constant(1, self.vars)
        base = self
        while exponent:
            if exponent & 1:
                out = out * base
            exponent >>= 1
            if exponent:
                base = base * base
        return out

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction, CycRational)):
            return MultiPoly.constant(other, self.vars)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycRational)):
            other = MultiPoly.constant(other, self.vars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._aligned(self, other)
        return a.terms == b.terms

    def __hash__(self):
        used = tuple(v for v, flag in zip(self.vars, self._used_mask()) if flag)
        trimmed = self.with_vars(used) if used != self.vars else self
        return hash((trimmed.vars, frozenset(trimmed.terms.items())))

    def __repr__(self):
        return f"MultiPoly({self.canonical_text()!r})"

    # -- calculus / structure ---------------------------------------------

    def derivative(self, var: str) -> "MultiPoly":
        if var not in self.vars:
            return MultiPoly.zero(self.vars)
        i = self.vars.index(var)
        terms: dict[tuple[int, ...], CycRational] = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            key = exps[:i] + (e - 1,) + exps[i + 1:]
            val = c * e
            cur = terms.get(key)
            terms[key] = val if cur is None else cur + val
        return MultiPoly(self.vars, terms)

    def coefficients_in(self, var: str) -> list["MultiPoly"]:
        """Coefficients as polynomials in the remaining variables.

        Index j of the returned list is the coefficient of ``var**j``; the
        list has length deg+1 (empty for the zero polynomial).
        """
        if var not in self.vars:
            return [] if self.is_zero() else [self]
        i = self.vars.index(var)
        deg = self.degree(var)
        if deg < 0:
            return []
        rest = self.vars[:i] + self.vars[i + 1:]
        buckets: list[dict[tuple[int, ...], CycRational]] = [dict() for _ in range(deg + 1)]
        for exps, c in self.terms.items():
            buckets[exps[i]][exps[:i] + exps[i + 1:]] = c
        return [MultiPoly(rest, b) for b in buckets]

    def leading_term(self) -> tuple[tuple[int, ...], CycRational]:
        """Graded-lex leading term (earlier variable more significant)."""
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        key = max(self.terms, key=lambda e: (sum(e), e))
        return key, self.terms[key]

    def homogeneous_components(self) -> dict[int, "MultiPoly"]:
        split: dict[int, dict[tuple[int, ...], CycRational]] = {}
        for exps, c in self.terms.items():
            split.setdefault(sum(exps), {})[exps] = c
        return {d: MultiPoly(self.vars, t) for d, t in sorted(split.items())}

    def coefficient_of(self, monomial: Mapping[str, int]) -> CycRational:
        exps = tuple(monomial.get(v, 0) for v in self.vars)
        if set(monomial) - set(self.vars):
            return CycRational(0)
        return self.terms.get(exps, CycRational(0))

    # -- substitution / evaluation ------------------------------------------

    def substitute(self, bindings: Mapping[str, "MultiPoly | Scalar"]) -> "MultiPoly":
        """Substitute polynomials (or scalars) for variables.

        Unbound variables pass through unchanged.  Exact; substitution of
        constants is evaluation.
        """
        binds: dict[str, MultiPoly] = {}
        passthrough: list[str] = []
        for v in self.vars:
            val = bindings.get(v)
            if val is None:
                passthrough.append(v)
            elif isinstance(val, MultiPoly):
                binds[v] = val
            else:
                binds[v] = MultiPoly.constant(val)
        result_vars = _sorted_vars(
            tuple(passthrough)
            + tuple(v for b in binds.values() for v in b.vars)
        )
        result = MultiPoly.zero(result_vars)
        power_cache: dict[tuple[str, int], MultiPoly] = {}

        def powered(name: str, e: int) -> MultiPoly:
            key = (name, e)
            got = power_cache.get(key)
            if got is None:
                got = binds[name] ** e
                power_cache[key] = got
            return got

        for exps, c in self.terms.items():
            piece = MultiPoly.constant(c, result_vars)
            for v, e in zip(self.vars, exps):
                if e == 0:
                    continue
                if v in binds:
                    piece = piece * powered(v, e)
                else:
                    piece = piece * MultiPoly((v,), {(e,): 1})
            result = result + piece
        return result

    def evaluate(self, point: Mapping[str, complex]) -> complex:
        """Floating evaluation with per-variable power tables.

        Products accumulate in binary64; the usual floating-point bound
        (relative error growing with term count and coefficient size)
        applies — exact questions go through substitute() instead.
        """
        tables: list[list[complex]] = []
        for i, v in enumerate(self.vars):
            deg = max((e[i] for e in self.terms), default=0)
            x = complex(point[v]) if deg > 0 else 0j
            tab = [1.0 + 0j] * (deg + 1)
            for j in range(1, deg + 1):
                tab[j] = tab[j - 1] * x
            tables.append(tab)
        acc = 0j
        for exps, c in self.terms.items():
            val = c.to_complex()
            for tab, e in zip(tables, exps):
                if e:
                    val *= tab[e]
            acc += val
        return acc

    # -- serialization ---------------------------------------------------------

    def _display_items(self):
        return sorted(self.terms.items(), key=lambda item: tuple(reversed(item[0])))

    def canonical_text(self) -> str:
        """Canonical text: integer-normalized, fixed term order.

        Terms are sorted by exponent vectors read right-to-left ascending
        (constants first, last variable most significant).  If the
        coefficients share a denominator D > 1, the output is
        ``1/D * (...)`` with an integer body.
        """
        if not self.terms:
            return "0"
        den = lcm(*[c.den for c in self.terms.values()])
        body_terms = []
        for exps, c in self._display_items():
            scaled = c * den
            body_terms.append((exps, scaled))
        parts: list[str] = []
        for exps, c in body_terms:
            mono = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(self.vars, exps)
                if e
            )
            if c.is_rational():
                n = c.num[0]
                sign = "-" if n < 0 else "+"
                mag = abs(n)
                if mono:
                    text = mono if mag == 1 else f"{mag}*{mono}"
                else:
                    text = str(mag)
            else:
                sign = "+"
                coeff = str(c)
                coeff = f"({coeff})" if ("+" in coeff[1:] or "-" in coeff[1:]) else coeff
                text = f"{coeff}*{mono}" if mono else coeff
            parts.append((sign, text))
        first_sign, first = parts[0]
        body = (first if first_sign == "+" else f"-{first}") + "".join(
            f" {s} {t}" for s, t in parts[1:]
        )
        if den != 1:
            return f"1/{den} * ({body})"
        return body

    def to_json_dict(self) -> dict:
        items = []
        for exps, c in self._display_items():
            items.append({"e": list(exps), "n": list(c.num), "d": c.den, "k": c.k})
        return {"vars": list(self.vars), "terms": items}

    @classmethod
    def from_json_dict(cls, data: dict) -> "MultiPoly":
        terms = {
            tuple(item["e"]): CycRational(tuple(item["n"]), item["d"], item["k"])
            for item in data["terms"]
        }
        return cls(tuple(data["vars"]), terms)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "MultiPoly":
        return cls.from_json_dict(json.loads(text))


# -- parsing --------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        pos = m.end()
        if m.group(1) is not None:
            out.append(("int", m.group(1)))
        elif m.group(2) is not None:
            out.append(("name", m.group(2)))
        else:
            ch = m.group(3)
            if ch in "+-*/^()":
                out.append((ch, ch))
            elif ch.strip():
                raise ValueError(f"unexpected character {ch!r} in polynomial text")
    return out


class _Parser:
    """Recursive-descent parser for the canonical polynomial text.

    Grammar: expr := ['+'|'-'] term (('+'|'-') term)*;
    term := factor ('*' factor)*; factor := atom ('^' INT)?;
    atom := INT ('/' INT)? | NAME | '(' expr ')'.  ``I`` and ``W`` denote
    the imaginary unit and a primitive cube root of unity.
    """

    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self, kind=None):
        if self.pos >= len(self.tokens):
            raise ValueError("unexpected end of polynomial text")
        tok = self.tokens[self.pos]
        if kind and tok[0] != kind:
            raise ValueError(f"expected {kind}, got {tok[1]!r}")
        self.pos += 1
        return tok

    def parse(self) -> MultiPoly:
        result = self.expr()
        if self.pos != len(self.tokens):
            raise ValueError(f"trailing input {self.tokens[self.pos][1]!r}")
        return result

    def expr(self) -> MultiPoly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            nxt = self.term()
            acc = acc + nxt if op == "+" else acc - nxt
        return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while self.peek() == "*":
            self.take("*")
            acc = acc * self.factor()
        return acc

    def factor(self) -> MultiPoly:
        base = self.atom()
        if self.peek() == "^":
            self.take("^")
            sign = 1
            if self.peek() == "-":
                raise ValueError("negative exponents are not supported")
            exp = int(self.take("int")[1]) * sign
            base = base ** exp
        return base

    def atom(self) -> MultiPoly:
        kind = self.peek()
        if kind == "int":
            n = int(self.take("int")[1])
            if self.peek() == "/":
                self.take("/")
                d = int(self.take("int")[1])
                return MultiPoly.constant(Fraction(n, d))
            return MultiPoly.constant(n)
        if kind == "name":
            name = self.take("name")[1]
            if name == "I":
                return MultiPoly.constant(CycRational.i_unit())
            if name == "W":
                return MultiPoly.constant(CycRational.omega())
            return MultiPoly.variable(name)
        if kind == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        raise ValueError(f"unexpected token in polynomial text (kind {kind!r})")


def parse_poly(text: str, variables: Sequence[str] = ()) -> MultiPoly:
    """Parse polynomial text; optionally widen to the given variable set."""
    result = _Parser(_tokenize(text)).parse()
    if variables:
        result = result.with_vars(_sorted_vars(tuple(variables) + result.vars))
    return result


poly = parse_poly


# -- polynomial maps ----------------------------------------------------------


class PolyMap:
    """An ordered tuple of polynomials over a shared source variable tuple."""

    __slots__ = ("source_vars", "components")

    def __init__(self, source_vars: Sequence[str], components: Sequence[MultiPoly]):
        svars = _sorted_vars(source_vars)
        if svars != tuple(source_vars):
            raise ValueError("source variables must be given in canonical (sorted) order")
        comps = tuple(c.with_vars(svars) for c in components)
        self.source_vars = svars
        self.components = comps

    @property
    def arity_in(self) -> int:
        return len(self.source_vars)

    @property
    def arity_out(self) -> int:
        return len(self.components)

    def compose(self, inner: "PolyMap") -> "PolyMap":
        """self o inner: apply ``inner`` first.

        The number of components of ``inner`` must equal the arity of
        ``self``'s source.
        """
        if inner.arity_out != self.arity_in:
            raise ValueError(
                f"arity mismatch: inner has {inner.arity_out} components, "
                f"outer expects {self.arity_in}"
            )
        bindings = dict(zip(self.source_vars, inner.components))
        return PolyMap(
            inner.source_vars,
            [c.substitute(bindings) for c in self.components],
        )

    def substitute(self, bindings: Mapping[str, MultiPoly | Scalar]) -> tuple[MultiPoly, ...]:
        return tuple(c.substitute(bindings) for c in self.components)

    def evaluate(self, point: Sequence[complex]) -> tuple[complex, ...]:
        if len(point) != self.arity_in:
            raise ValueError("point arity mismatch")
        env = dict(zip(self.source_vars, point))
        return tuple(c.evaluate(env) for c in self.components)

    def evaluate_exact(self, point: Sequence[Scalar]) -> tuple[CycRational, ...]:
        env = {v: MultiPoly.constant(x) for v, x in zip(self.source_vars, point)}
        return tuple(c.substitute(env).constant_value() for c in self.components)

    def __eq__(self, other):
        if not isinstance(other, PolyMap):
            return NotImplemented
        return (
            self.source_vars == other.source_vars
            and self.components == other.components
        )

    def __repr__(self):
        body = ", ".join(c.canonical_text() for c in self.components)
        return f"PolyMap({list(self.source_vars)} -> [{body}])"

    def canonical_texts(self) -> list[str]:
        return [c.canonical_text() for c in self.components]
