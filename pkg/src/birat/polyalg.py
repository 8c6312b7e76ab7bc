"""Exact sparse polynomial arithmetic over the rationals, plus an expression parser.

A polynomial is a map from exponent vectors (one entry per declared variable)
to nonzero ``Fraction`` coefficients.  All arithmetic is exact; no floating
point is used anywhere in the package.  The zero polynomial stores no terms
and has total degree ``MINUS_INFINITY``.

The text grammar accepted by :func:`parse_poly`:

    expr    := term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := atom ('^' INT)*
    atom    := RATIONAL | INT | VARIABLE | '(' expr ')' | '-' factor

``*`` is required between factors, ``^`` takes a nonnegative integer literal,
and a rational literal is ``INT/INT``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

from .errors import (
    DegreeTooSmallError,
    ExactnessViolationError,
    PolySyntaxError,
    UnknownVariableError,
    VariableMismatchError,
)

# Exact rational scalar used everywhere; Fraction already guarantees lowest
# terms and a positive denominator.
Scalar = Fraction

# Total degree of the zero polynomial.
MINUS_INFINITY = float("-inf")

Exponents = tuple[int, ...]


def _grlex_key(mono: Exponents):
    # Graded lexicographic: compare total degree first, then the exponent
    # vector itself (first variable heaviest).
    return (sum(mono), mono)


class Polynomial:
    """Immutable sparse polynomial over Q in a fixed ordered variable tuple."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: dict[Exponents, Fraction] | None = None):
        object.__setattr__(self, "variables", tuple(variables))
        nvars = len(self.variables)
        clean: dict[Exponents, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent vector {mono} for variables {self.variables}")
            clean[mono] = clean.get(mono, Fraction(0)) + coeff
        object.__setattr__(self, "terms", {m: c for m, c in clean.items() if c != 0})

    def __setattr__(self, *_):
        raise AttributeError("Polynomial is immutable")

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    # -- constructors ------------------------------------------------------

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "Polynomial":
        # Internal fast path: caller guarantees canonical data (tuple keys of
        # the right length, nonzero Fraction values, dict not shared).
        p = object.__new__(cls)
        object.__setattr__(p, "variables", variables)
        object.__setattr__(p, "terms", terms)
        return p

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables: Sequence[str], value) -> "Polynomial":
        value = Fraction(value)
        if value == 0:
            return cls.zero(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "Polynomial":
        variables = tuple(variables)
        if name not in variables:
            raise UnknownVariableError(name, variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = 1
        return cls(variables, {tuple(exps): Fraction(1)})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def total_degree(self):
        """Max exponent sum over terms; MINUS_INFINITY for the zero polynomial."""
        if not self.terms:
            return MINUS_INFINITY
        return max(sum(m) for m in self.terms)

    def degree_in(self, name: str) -> int:
        """Largest exponent of one variable (0 for the zero polynomial)."""
        idx = self._index(name)
        return max((m[idx] for m in self.terms), default=0)

    def valuation_in(self, name: str) -> int:
        """Smallest exponent of one variable (0 for the zero polynomial)."""
        idx = self._index(name)
        return min((m[idx] for m in self.terms), default=0)

    def _index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariableError(name, self.variables) from None

    def _check_same_ring(self, other: "Polynomial"):
        if self.variables != other.variables:
            raise VariableMismatchError(
                f"cannot combine polynomials over {self.variables} and {other.variables}"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_same_ring(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            if mono in out:
                acc = out[mono] + coeff
                if acc:
                    out[mono] = acc
                else:
                    del out[mono]
            else:
                out[mono] = coeff
        return Polynomial._raw(self.variables, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.variables, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_same_ring(other)
        if not self.terms or not other.terms:
            return Polynomial.zero(self.variables)
        # Clear denominators and run the convolution on plain ints: Fraction
        # arithmetic in the inner loop dominates runtime for large iterates.
        da, ia = self._integer_parts()
        db, ib = other._integer_parts()
        if len(ia) > len(ib):
            ia, ib = ib, ia
        out: dict[Exponents, int] = {}
        for ma, ca in ia.items():
            for mb, cb in ib.items():
                mono = tuple(x + y for x, y in zip(ma, mb))
                out[mono] = out.get(mono, 0) + ca * cb
        den = da * db
        return Polynomial._raw(
            self.variables, {m: Fraction(c, den) for m, c in out.items() if c}
        )

    __rmul__ = __mul__

    def scale(self, value) -> "Polynomial":
        value = Fraction(value)
        if value == 0:
            return Polynomial.zero(self.variables)
        return Polynomial._raw(self.variables, {m: c * value for m, c in self.terms.items()})

    def _integer_parts(self) -> tuple[int, dict[Exponents, int]]:
        den = 1
        for c in self.terms.values():
            den = lcm(den, c.denominator)
        return den, {m: c.numerator * (den // c.denominator) for m, c in self.terms.items()}

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.variables, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- substitution ------------------------------------------------------

    def compose(self, *images: "Polynomial") -> "Polynomial":
        """Substitute one polynomial per variable and expand exactly."""
        if len(images) != len(self.variables):
            raise VariableMismatchError(
                f"need {len(self.variables)} substitution images, got {len(images)}"
            )
        ring_vars = images[0].variables if images else ()
        for img in images:
            if img.variables != ring_vars:
                raise VariableMismatchError("substitution images must share a variable list")
        # Cache successive powers of each image; exponents repeat heavily.
        powers: list[dict[int, Polynomial]] = [
            {0: Polynomial.constant(ring_vars, 1)} for _ in images
        ]

        def power(i: int, e: int) -> Polynomial:
            cache = powers[i]
            if e not in cache:
                best = max(k for k in cache if k <= e)
                acc = cache[best]
                for k in range(best + 1, e + 1):
                    acc = acc * images[i]
                    cache[k] = acc
            return cache[e]

        acc: dict[Exponents, Fraction] = {}
        for mono, coeff in sorted(self.terms.items(), key=lambda t: _grlex_key(t[0])):
            term = None
            for i, e in enumerate(mono):
                if e:
                    term = power(i, e) if term is None else term * power(i, e)
            if term is None:
                pieces = {(0,) * len(ring_vars): Fraction(1)}
            else:
                pieces = term.terms
            for m2, c2 in pieces.items():
                prev = acc.get(m2)
                acc[m2] = coeff * c2 if prev is None else prev + coeff * c2
        return Polynomial._raw(ring_vars, {m: c for m, c in acc.items() if c})

    def evaluate(self, values: Iterable) -> Fraction:
        vals = [Fraction(v) for v in values]
        if len(vals) != len(self.variables):
            raise VariableMismatchError("wrong number of values")
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            term = coeff
            for v, e in zip(vals, mono):
                if e:
                    term *= v**e
            total += term
        return total

    def shift(self, offsets: Sequence) -> "Polynomial":
        """Translate coordinates: substitute variable_i -> variable_i + offset_i."""
        images = []
        for name, off in zip(self.variables, offsets):
            images.append(
                Polynomial.variable(self.variables, name)
                + Polynomial.constant(self.variables, off)
            )
        return self.compose(*images)

    # -- homogenization / dehomogenization ---------------------------------

    def homogenize(self, degree: int, target: Sequence[str] = ("X", "Y", "Z")) -> "Polynomial":
        """Lift a polynomial in two variables to a homogeneous one in three.

        Each term x^i y^j becomes X^i Y^j Z^(degree-i-j).
        """
        if len(self.variables) != 2:
            raise VariableMismatchError("homogenize expects a bivariate polynomial")
        d = self.total_degree()
        if d is not MINUS_INFINITY and degree < d:
            raise DegreeTooSmallError(f"degree {degree} < total degree {d}")
        out = {}
        for (i, j), coeff in self.terms.items():
            out[(i, j, degree - i - j)] = coeff
        return Polynomial._raw(tuple(target), out)

    def substitute_one(self, name: str, value) -> "Polynomial":
        """Set a single variable to a rational constant; drops that variable."""
        idx = self._index(name)
        rest = tuple(v for k, v in enumerate(self.variables) if k != idx)
        value = Fraction(value)
        out: dict[Exponents, Fraction] = {}
        for mono, coeff in self.terms.items():
            c = coeff * value ** mono[idx]
            if c == 0:
                continue
            key = tuple(e for k, e in enumerate(mono) if k != idx)
            out[key] = out.get(key, Fraction(0)) + c
        return Polynomial._raw(rest, {m: c for m, c in out.items() if c})

    def divide_by_variable_power(self, name: str, power: int) -> "Polynomial":
        """Exact division by variable^power via exponent shifting."""
        if power == 0:
            return self
        idx = self._index(name)
        out = {}
        for mono, coeff in self.terms.items():
            if mono[idx] < power:
                raise ExactnessViolationError(
                    f"{name}^{power} does not divide term with exponents {mono}"
                )
            key = list(mono)
            key[idx] -= power
            out[tuple(key)] = coeff
        return Polynomial._raw(self.variables, out)

    # -- printing ----------------------------------------------------------

    def sorted_terms(self) -> Iterator[tuple[Exponents, Fraction]]:
        for mono in sorted(self.terms, key=_grlex_key, reverse=True):
            yield mono, self.terms[mono]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mono, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(self.variables, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({self.variables}, {self})"


class PolyMap:
    """A pair of polynomials in (x, y) defining a plane map."""

    __slots__ = ("p1", "p2")

    VARIABLES = ("x", "y")

    def __init__(self, p1: Polynomial, p2: Polynomial):
        if p1.variables != self.VARIABLES or p2.variables != self.VARIABLES:
            raise VariableMismatchError("plane map components must be polynomials in (x, y)")
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)

    def __setattr__(self, *_):
        raise AttributeError("PolyMap is immutable")

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    @classmethod
    def from_text(cls, text1: str, text2: str) -> "PolyMap":
        return cls(parse_poly(text1, cls.VARIABLES), parse_poly(text2, cls.VARIABLES))

    def degree(self) -> int:
        """Algebraic degree: the larger of the component total degrees."""
        d = max(self.p1.total_degree(), self.p2.total_degree())
        if d is MINUS_INFINITY:
            raise DegreeTooSmallError("the zero map has no degree")
        return int(d)

    def compose(self, other: "PolyMap") -> "PolyMap":
        """self after other: returns self(other(x, y))."""
        return PolyMap(
            self.p1.compose(other.p1, other.p2),
            self.p2.compose(other.p1, other.p2),
        )

    def apply(self, point) -> tuple[Fraction, Fraction]:
        return self.p1.evaluate(point), self.p2.evaluate(point)

    def is_identity(self) -> bool:
        x = Polynomial.variable(self.VARIABLES, "x")
        y = Polynomial.variable(self.VARIABLES, "y")
        return self.p1 == x and self.p2 == y

    def term_count(self) -> int:
        return len(self.p1.terms) + len(self.p2.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMap):
            return NotImplemented
        return self.p1 == other.p1 and self.p2 == other.p2

    def __str__(self) -> str:
        return f"({self.p1}, {self.p2})"

    def __repr__(self) -> str:
        return f"PolyMap{self}"


# ---------------------------------------------------------------------------
# expression parser


_TOKEN_SYMBOLS = "+-*^()"


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOKEN_SYMBOLS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch == "/":
            tokens.append(("/", "/", i))
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise PolySyntaxError(f"unexpected character {ch!r}", text, i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = tuple(variables)
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.advance()
        if tok[0] != kind:
            raise PolySyntaxError(f"expected {kind!r}, found {tok[1]!r}", self.text, tok[2])
        return tok

    def parse(self) -> Polynomial:
        poly = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise PolySyntaxError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return poly

    def expr(self) -> Polynomial:
        kind = self.peek()[0]
        negate = False
        if kind in "+-":
            negate = self.advance()[0] == "-"
        poly = self.term()
        if negate:
            poly = -poly
        while self.peek()[0] in "+-":
            op = self.advance()[0]
            rhs = self.term()
            poly = poly + rhs if op == "+" else poly - rhs
        return poly

    def term(self) -> Polynomial:
        poly = self.factor()
        while self.peek()[0] == "*":
            self.advance()
            poly = poly * self.factor()
        return poly

    def factor(self) -> Polynomial:
        base = self.atom()
        while self.peek()[0] == "^":
            self.advance()
            tok = self.expect("int")
            base = base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.advance()
        kind, value, pos = tok
        if kind == "-":
            return -self.factor()
        if kind == "int":
            numerator = int(value)
            if self.peek()[0] == "/":
                self.advance()
                den_tok = self.expect("int")
                denominator = int(den_tok[1])
                if denominator == 0:
                    raise PolySyntaxError("zero denominator", self.text, den_tok[2])
                return Polynomial.constant(self.variables, Fraction(numerator, denominator))
            return Polynomial.constant(self.variables, numerator)
        if kind == "name":
            if value not in self.variables:
                raise UnknownVariableError(value, self.variables, pos)
            return Polynomial.variable(self.variables, value)
        if kind == "(":
            poly = self.expr()
            self.expect(")")
            return poly
        raise PolySyntaxError(f"unexpected {value!r}", self.text, pos)


def parse_poly(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse a polynomial expression over the declared variables."""
    return _Parser(text, variables).parse()


# ---------------------------------------------------------------------------
# univariate helpers (used by the base-point search)
#
# A univariate polynomial is a coefficient list [c0, c1, ...] over Fraction,
# constant term first, with no trailing zero (the zero polynomial is []).


def uni_trim(coeffs: list[Fraction]) -> list[Fraction]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out


def uni_from_poly(p: Polynomial, name: str) -> list[Fraction]:
    """Coefficient list of a polynomial that involves only one variable."""
    idx = p._index(name)
    out = [Fraction(0)] * (p.degree_in(name) + 1)
    for mono, coeff in p.terms.items():
        if any(e and k != idx for k, e in enumerate(mono)):
            raise VariableMismatchError(f"{p} is not univariate in {name}")
        out[mono[idx]] += coeff
    return uni_trim(out)


def uni_degree(p: list[Fraction]) -> int:
    return len(p) - 1 if p else -1


def uni_eval(p: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def uni_monic(p: list[Fraction]) -> list[Fraction]:
    if not p:
        return []
    lead = p[-1]
    return [c / lead for c in p]


def uni_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not b:
        raise ZeroDivisionError("polynomial modulo zero")
    a = list(a)
    db, lead = uni_degree(b), b[-1]
    while uni_degree(a) >= db:
        factor = a[-1] / lead
        shift = uni_degree(a) - db
        for i, c in enumerate(b):
            a[i + shift] -= factor * c
        a = uni_trim(a)
    return a


def uni_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = uni_trim(a), uni_trim(b)
    while b:
        a, b = b, uni_mod(a, b)
    return uni_monic(a)


def uni_derivative(p: list[Fraction]) -> list[Fraction]:
    return uni_trim([c * k for k, c in enumerate(p)][1:])


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def uni_rational_roots(p: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """All rational roots of p, plus the cofactor left after dividing them out.

    Returns ``(roots, leftover)`` where ``leftover`` is constant iff every
    complex root of p is rational.  Roots are reported once (multiplicity
    folded into the division).
    """
    p = uni_trim(p)
    if not p:
        raise ValueError("the zero polynomial has every root")
    roots: list[Fraction] = []
    # Factor out x^k.
    k = 0
    while p[0] == 0:
        p = p[1:]
        k += 1
    if k:
        roots.append(Fraction(0))
    if uni_degree(p) >= 1:
        # Work on the squarefree part: cheaper candidate testing, same roots.
        sf = p
        der = uni_derivative(p)
        g = uni_gcd(p, der)
        if uni_degree(g) >= 1:
            sf = _uni_exact_div(p, g)
        den = 1
        for c in sf:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in sf]
        content = 0
        for c in ints:
            content = gcd(content, c)
        if content > 1:
            ints = [c // content for c in ints]
        for q in _divisors(ints[-1]):
            for pnum in _divisors(ints[0]):
                for sign in (1, -1):
                    cand = Fraction(sign * pnum, q)
                    if cand not in roots and uni_eval(sf, cand) == 0:
                        roots.append(cand)
    leftover = p
    for r in roots:
        if r == 0:
            continue
        while uni_eval(leftover, r) == 0:
            leftover = _uni_exact_div(leftover, uni_trim([-r, Fraction(1)]))
    return roots, leftover


def _uni_exact_div(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    out = [Fraction(0)] * (uni_degree(a) - uni_degree(b) + 1)
    lead = b[-1]
    while uni_degree(a) >= uni_degree(b):
        factor = a[-1] / lead
        shift = uni_degree(a) - uni_degree(b)
        out[shift] = factor
        for i, c in enumerate(b):
            a[i + shift] -= factor * c
        a = uni_trim(a)
    if a:
        raise ExactnessViolationError("inexact univariate division")
    return uni_trim(out)
