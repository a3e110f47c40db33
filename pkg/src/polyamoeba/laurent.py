"""Sparse multivariate Laurent polynomials over exact rationals or complex floats.

A polynomial is a mapping from integer exponent vectors to nonzero
coefficients.  Exact polynomials carry Fraction coefficients and are used
wherever correctness depends on exact arithmetic (polynomial generation,
elimination, recurrence checks); float polynomials carry complex coefficients
and feed the numeric samplers.  Conversion is one-way, exact to float, via
:meth:`LaurentPolynomial.to_float`.

The text grammar accepted by :func:`parse_polynomial` is a sign-separated sum
of monomials with integer or rational coefficients in the variables x, y, z,
with ``^`` powers (negative exponents allowed) and implicit or ``*``
multiplication, e.g. ``"1+x+3y+4xy+y^2+x^2*y"`` or ``"2*x^-1*y^3"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

Exponent = tuple[int, ...]

VAR_NAMES = ("x", "y", "z")

_EXACT_TYPES = (int, Fraction)


class PolynomialSyntaxError(ValueError):
    """Malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


def _normalize_coefficient(c):
    if isinstance(c, bool):
        raise TypeError("boolean is not a valid coefficient")
    if isinstance(c, _EXACT_TYPES):
        return Fraction(c)
    if isinstance(c, (float, complex)):
        return complex(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class LaurentPolynomial:
    """Immutable sparse Laurent polynomial in ``nvars`` variables.

    ``terms`` maps exponent tuples to nonzero coefficients.  All stored
    coefficients share one domain: Fraction (exact) or complex (float).
    The zero polynomial (empty term map) is permitted as an arithmetic
    intermediate; parsing rejects it.
    """

    __slots__ = ("nvars", "terms", "exact")

    def __init__(self, terms, nvars: int, exact: bool | None = None):
        if nvars < 1:
            raise ValueError("nvars must be a positive integer")
        clean: dict[Exponent, object] = {}
        seen_exact = True
        for exp, c in dict(terms).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} does not have length {nvars}")
            c = _normalize_coefficient(c)
            if isinstance(c, complex):
                seen_exact = False
            if c == 0:
                continue
            if exp in clean:
                raise ValueError(f"duplicate exponent {exp}")
            clean[exp] = c
        if exact is None:
            exact = seen_exact
        if exact and not seen_exact:
            raise ValueError("float coefficients in a polynomial declared exact")
        if not exact:
            clean = {e: complex(c) for e, c in clean.items()}
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPolynomial is immutable")

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, nvars: int, exact: bool = True) -> "LaurentPolynomial":
        return cls({}, nvars, exact=exact)

    @classmethod
    def constant(cls, value, nvars: int) -> "LaurentPolynomial":
        return cls({(0,) * nvars: value}, nvars)

    @classmethod
    def variable(cls, index: int, nvars: int) -> "LaurentPolynomial":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for nvars={nvars}")
        exp = [0] * nvars
        exp[index] = 1
        return cls({tuple(exp): 1}, nvars)

    @classmethod
    def monomial(cls, coeff, exp, nvars: int) -> "LaurentPolynomial":
        return cls({tuple(exp): coeff}, nvars)

    # ------------------------------------------------------------------
    # structure

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def support(self) -> tuple[Exponent, ...]:
        return tuple(sorted(self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.format()!r}, nvars={self.nvars})"

    def coefficient(self, exp) -> object:
        """Coefficient at the given exponent vector (0 if absent)."""
        c = self.terms.get(tuple(exp))
        if c is None:
            return Fraction(0) if self.exact else 0j
        return c

    def degree(self, var: int) -> int:
        """Largest exponent of ``var``; 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return max(e[var] for e in self.terms)

    def min_degree(self, var: int) -> int:
        if not self.terms:
            return 0
        return min(e[var] for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    # ------------------------------------------------------------------
    # arithmetic

    def _check_compatible(self, other: "LaurentPolynomial"):
        if self.nvars != other.nvars:
            raise ValueError("variable counts differ")
        if self.exact != other.exact:
            raise TypeError(
                "cannot mix exact and float polynomials; convert with to_float()"
            )

    def __add__(self, other):
        if isinstance(other, _EXACT_TYPES + (float, complex)):
            other = LaurentPolynomial.constant(other, self.nvars)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out, self.nvars, exact=self.exact)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(
            {e: -c for e, c in self.terms.items()}, self.nvars, exact=self.exact
        )

    def __sub__(self, other):
        if isinstance(other, _EXACT_TYPES + (float, complex)):
            other = LaurentPolynomial.constant(other, self.nvars)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _EXACT_TYPES + (float, complex)):
            if other == 0:
                return LaurentPolynomial.zero(self.nvars, exact=self.exact)
            c0 = _normalize_coefficient(other)
            if self.exact and isinstance(c0, complex):
                raise TypeError("float scalar on exact polynomial; use to_float()")
            return LaurentPolynomial(
                {e: c * c0 for e, c in self.terms.items()},
                self.nvars,
                exact=self.exact,
            )
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        self._check_compatible(other)
        out: dict[Exponent, object] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(i + j for i, j in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return LaurentPolynomial(out, self.nvars, exact=self.exact)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial powers are not supported")
        result = LaurentPolynomial.constant(1, self.nvars)
        if not self.exact:
            result = result.to_float()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def diff(self, var: int) -> "LaurentPolynomial":
        """Partial derivative with respect to variable ``var``."""
        out = {}
        for e, c in self.terms.items():
            if e[var] == 0:
                continue
            ne = list(e)
            ne[var] -= 1
            out[tuple(ne)] = c * e[var]
        return LaurentPolynomial(out, self.nvars, exact=self.exact)

    def theta(self, var: int) -> "LaurentPolynomial":
        """Euler operator x_var * d/dx_var; exponent-safe for Laurent input."""
        out = {e: c * e[var] for e, c in self.terms.items() if e[var] != 0}
        return LaurentPolynomial(out, self.nvars, exact=self.exact)

    # ------------------------------------------------------------------
    # conversions and variable plumbing

    def to_float(self) -> "LaurentPolynomial":
        return LaurentPolynomial(
            {e: complex(c) for e, c in self.terms.items()}, self.nvars, exact=False
        )

    def map_coefficients(self, fn) -> "LaurentPolynomial":
        return LaurentPolynomial({e: fn(c) for e, c in self.terms.items()}, self.nvars)

    def with_nvars(self, nvars: int, positions=None) -> "LaurentPolynomial":
        """Embed into a ring with ``nvars`` variables.

        ``positions[i]`` is the new index of old variable ``i``; defaults to
        the identity embedding (new variables appended).
        """
        if positions is None:
            positions = tuple(range(self.nvars))
        if len(set(positions)) != self.nvars or any(
            not 0 <= p < nvars for p in positions
        ):
            raise ValueError("positions must be distinct indices below nvars")
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for i, p in enumerate(positions):
                ne[p] = e[i]
            out[tuple(ne)] = c
        return LaurentPolynomial(out, nvars, exact=self.exact)

    def drop_variable(self, var: int) -> "LaurentPolynomial":
        """Remove a variable in which the polynomial has degree 0."""
        if any(e[var] != 0 for e in self.terms):
            raise ValueError(f"polynomial depends on variable {var}")
        out = {e[:var] + e[var + 1:]: c for e, c in self.terms.items()}
        return LaurentPolynomial(out, self.nvars - 1, exact=self.exact)

    def permute_variables(self, perm) -> "LaurentPolynomial":
        perm = tuple(perm)
        if sorted(perm) != list(range(self.nvars)):
            raise ValueError("not a permutation")
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            for i, p in enumerate(perm):
                ne[p] = e[i]
            out[tuple(ne)] = c
        return LaurentPolynomial(out, self.nvars, exact=self.exact)

    def substitute(self, var: int, value) -> "LaurentPolynomial":
        """Fix one variable to a numeric value; the result keeps degree 0 there.

        A complex value converts an exact polynomial to the float domain.
        """
        value = _normalize_coefficient(value)
        poly = self
        if isinstance(value, complex) and self.exact:
            poly = self.to_float()
        if value == 0 and poly.min_degree(var) < 0:
            raise ValueError("zero substituted into a negative exponent")
        out: dict[Exponent, object] = {}
        for e, c in poly.terms.items():
            k = e[var]
            ne = list(e)
            ne[var] = 0
            ne = tuple(ne)
            factor = value ** k if k >= 0 else 1 / (value ** (-k))
            out[ne] = out.get(ne, 0) + c * factor
        return LaurentPolynomial(out, poly.nvars, exact=poly.exact)

    def translate(self, var: int, delta) -> "LaurentPolynomial":
        """Exact substitution s_var -> s_var + delta (binomial expansion).

        Requires nonnegative exponents in ``var`` and the exact domain.
        """
        if not self.exact:
            raise TypeError("translate requires an exact polynomial")
        if self.min_degree(var) < 0:
            raise ValueError("translate requires nonnegative exponents in var")
        delta = Fraction(delta)
        out: dict[Exponent, object] = {}
        for e, c in self.terms.items():
            k = e[var]
            # (s + delta)^k expanded term by term
            binom = 1
            power = [Fraction(1)] * (k + 1)
            for i in range(1, k + 1):
                power[i] = power[i - 1] * delta
            for i in range(k + 1):
                ne = list(e)
                ne[var] = k - i
                ne = tuple(ne)
                out[ne] = out.get(ne, 0) + c * binom * power[i]
                binom = binom * (k - i) // (i + 1)
        return LaurentPolynomial(out, self.nvars)

    def shift_nonnegative(self, variables=None):
        """Multiply by a monomial so the given variables have exponents >= 0.

        Returns ``(shifted, shift_vector)``.  The zero set on the torus is
        unchanged.
        """
        if variables is None:
            variables = range(self.nvars)
        shift = [0] * self.nvars
        for v in variables:
            shift[v] = max(0, -self.min_degree(v))
        if not any(shift):
            return self, tuple(shift)
        out = {
            tuple(ei + si for ei, si in zip(e, shift)): c
            for e, c in self.terms.items()
        }
        return LaurentPolynomial(out, self.nvars, exact=self.exact), tuple(shift)

    # ------------------------------------------------------------------
    # evaluation

    def evaluate(self, point):
        """Evaluate at a point (exact for Fraction/int input on exact polys)."""
        point = tuple(point)
        if len(point) != self.nvars:
            raise ValueError("point length does not match nvars")
        exact_eval = self.exact and all(
            isinstance(v, _EXACT_TYPES) for v in point
        )
        values = (
            [Fraction(v) for v in point] if exact_eval else [complex(v) for v in point]
        )
        for v, needs_inverse in zip(
            values, [any(e[i] < 0 for e in self.terms) for i in range(self.nvars)]
        ):
            if needs_inverse and v == 0:
                raise ValueError("zero coordinate with a negative exponent")
        total = Fraction(0) if exact_eval else 0j
        for e, c in self.terms.items():
            term = Fraction(c) if exact_eval else complex(c)
            for v, k in zip(values, e):
                if k == 0:
                    continue
                term *= v ** k if k > 0 else 1 / (v ** (-k))
            total += term
        return total

    __call__ = evaluate

    # ------------------------------------------------------------------
    # coefficient lists

    def coefficient_list(self, main_var: int) -> "CoefficientList":
        """Coefficients by descending power of ``main_var``.

        Entries are polynomials in the remaining variables (degree 0 in
        ``main_var``).  Interior entries may be zero; the leading entry is a
        nonzero polynomial.  Requires nonnegative exponents in ``main_var``.
        """
        if self.is_zero:
            raise ValueError("coefficient list of the zero polynomial")
        if self.min_degree(main_var) < 0:
            raise ValueError(
                "negative exponents in the main variable; shift the input first"
            )
        deg = self.degree(main_var)
        buckets: list[dict[Exponent, object]] = [{} for _ in range(deg + 1)]
        for e, c in self.terms.items():
            k = e[main_var]
            ne = list(e)
            ne[main_var] = 0
            buckets[k][tuple(ne)] = c
        entries = tuple(
            LaurentPolynomial(buckets[deg - i], self.nvars, exact=self.exact)
            for i in range(deg + 1)
        )
        return CoefficientList(main_var=main_var, entries=entries)

    # ------------------------------------------------------------------
    # text and JSON forms

    def format(self, names=VAR_NAMES) -> str:
        """Render in the parseable text grammar.

        Terms are ordered by ascending exponents with the last variable most
        significant, matching the conventional listing order.
        """
        if not self.terms:
            return "0"
        pieces = []
        for exp in sorted(self.terms, key=lambda e: tuple(reversed(e))):
            c = self.terms[exp]
            factors = []
            for i, k in enumerate(exp):
                if k == 0:
                    continue
                name = names[i] if i < len(names) else f"v{i}"
                factors.append(name if k == 1 else f"{name}^{k}")
            if self.exact:
                sign = "-" if c < 0 else "+"
                mag = -c if c < 0 else c
                coeff_txt = str(mag)
                if factors and mag == 1:
                    body = "*".join(factors)
                else:
                    body = "*".join([coeff_txt] + factors) if factors else coeff_txt
            else:
                sign = "+"
                body = f"({c.real:.17g}{c.imag:+.17g}j)"
                if factors:
                    body = "*".join([body] + factors)
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += sign + body
        return text

    def to_json(self) -> str:
        """Serialize an exact polynomial to the JSON term-list format."""
        if not self.exact:
            raise TypeError("JSON serialization is defined for exact polynomials")
        items = [
            {"exp": list(e), "num": c.numerator, "den": c.denominator}
            for e, c in sorted(self.terms.items())
        ]
        return json.dumps(items)


@dataclass(frozen=True)
class CoefficientList:
    """Dense coefficient vector of a polynomial in one chosen variable.

    ``entries[k]`` is the coefficient of ``main_var ** (deg - k)``; the
    leading entry is nonzero, interior entries may be zero polynomials.
    """

    main_var: int
    entries: tuple[LaurentPolynomial, ...]

    @property
    def degree(self) -> int:
        return len(self.entries) - 1

    def evaluate(self, point) -> list:
        """Numeric coefficient vector (descending) at a point."""
        return [entry.evaluate(point) for entry in self.entries]


# ----------------------------------------------------------------------
# parsing


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def take_integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            raise PolynomialSyntaxError("expected an integer", start)
        return int(self.text[start:self.pos])


def parse_polynomial(text: str, nvars: int) -> LaurentPolynomial:
    """Parse polynomial text into an exact LaurentPolynomial.

    Raises :class:`PolynomialSyntaxError` on malformed input and ValueError
    if the merged result is the zero polynomial.
    """
    sc = _Scanner(text)
    terms: dict[Exponent, Fraction] = {}
    first = True
    while True:
        sc.skip_ws()
        if sc.pos >= len(sc.text):
            if first:
                raise PolynomialSyntaxError("empty polynomial", sc.pos)
            break
        sign = 1
        ch = sc.peek()
        if ch in "+-":
            sc.take()
            sign = -1 if ch == "-" else 1
            while sc.peek() in "+-":
                if sc.take() == "-":
                    sign = -sign
        elif not first:
            raise PolynomialSyntaxError(f"expected '+' or '-', got {ch!r}", sc.pos)
        coeff, exp = _parse_term(sc, nvars)
        exp_t = tuple(exp)
        terms[exp_t] = terms.get(exp_t, Fraction(0)) + sign * coeff
        first = False
    poly = LaurentPolynomial(terms, nvars)
    if poly.is_zero:
        raise ValueError("polynomial is zero after merging terms")
    return poly


def _parse_term(sc: _Scanner, nvars: int) -> tuple[Fraction, list[int]]:
    coeff = Fraction(1)
    exp = [0] * nvars
    seen_factor = False
    while True:
        sc.skip_ws()
        if sc.pos >= len(sc.text):
            break
        ch = sc.text[sc.pos]
        if ch in "+-":
            break
        if ch == "*":
            if not seen_factor:
                raise PolynomialSyntaxError("unexpected '*'", sc.pos)
            sc.take()
            sc.skip_ws()
            if sc.pos >= len(sc.text):
                raise PolynomialSyntaxError("dangling '*'", sc.pos)
            ch = sc.text[sc.pos]
        if ch.isdigit():
            num = sc.take_integer()
            den = 1
            if sc.peek() == "/":
                sc.take()
                den = sc.take_integer()
                if den == 0:
                    raise PolynomialSyntaxError("zero denominator", sc.pos)
            coeff *= Fraction(num, den)
            seen_factor = True
            continue
        if ch.isalpha():
            pos = sc.pos
            name = sc.take()
            if name not in VAR_NAMES:
                raise PolynomialSyntaxError(f"unknown variable {name!r}", pos)
            index = VAR_NAMES.index(name)
            if index >= nvars:
                raise PolynomialSyntaxError(
                    f"variable {name!r} outside the declared {nvars} variable(s)",
                    pos,
                )
            power = 1
            if sc.peek() == "^":
                sc.take()
                if sc.peek() == "(":
                    sc.take()
                    power = sc.take_integer()
                    if sc.peek() != ")":
                        raise PolynomialSyntaxError("expected ')'", sc.pos)
                    sc.take()
                else:
                    power = sc.take_integer()
            exp[index] += power
            seen_factor = True
            continue
        raise PolynomialSyntaxError(f"unexpected character {ch!r}", sc.pos)
    if not seen_factor:
        raise PolynomialSyntaxError("empty term", sc.pos)
    return coeff, exp


def polynomial_from_json(text: str, nvars: int | None = None) -> LaurentPolynomial:
    """Load a polynomial from the JSON term-list format.

    Each item is ``{"exp": [..], "num": p, "den": q}``; ``den`` defaults to 1.
    """
    items = json.loads(text)
    if not isinstance(items, list) or not items:
        raise ValueError("expected a nonempty JSON list of terms")
    terms: dict[Exponent, Fraction] = {}
    for item in items:
        exp = tuple(int(e) for e in item["exp"])
        if nvars is None:
            nvars = len(exp)
        coeff = Fraction(int(item["num"]), int(item.get("den", 1)))
        terms[exp] = terms.get(exp, Fraction(0)) + coeff
    poly = LaurentPolynomial(terms, nvars)
    if poly.is_zero:
        raise ValueError("polynomial is zero after merging terms")
    return poly
