"""Sparse homogeneous multivariate polynomials with exact coefficients.

Monomials are exponent tuples of length nvars; a polynomial is a dict
mapping monomials to nonzero field elements.  The term order is graded
reverse lexicographic with x0 > x1 > ... > xN, fixed globally so that
every order-dependent result (exact-division quotient path, square-root
coefficient schedule, canonical representatives) is deterministic.

Variables are named x, y, z when nvars == 3 and x0..xN otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd

from .field import CoefficientField, FieldError


class ParseError(ValueError):
    """Syntax error in polynomial text, with a character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DegreeError(ValueError):
    """Operation applied to a polynomial of inadmissible degree."""


class MismatchError(ValueError):
    """Operands live over different fields or variable counts."""


# ----------------------------------------------------------------------
# term order


def grevlex_key(mono: tuple) -> tuple:
    """Sort key realizing grevlex with x0 > x1 > ... > xN (max = leading)."""
    return (sum(mono), tuple(-e for e in reversed(mono)))


def monomials_of_degree(nvars: int, degree: int) -> list:
    """All exponent tuples of the given total degree, leading term first."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    if degree < 0:
        return []
    rec((), degree, nvars)
    out.sort(key=grevlex_key, reverse=True)
    return out


def var_names(nvars: int) -> list:
    if nvars == 3:
        return ["x", "y", "z"]
    return [f"x{i}" for i in range(nvars)]


# ----------------------------------------------------------------------


class Polynomial:
    """Immutable sparse polynomial over a CoefficientField.

    Do not mutate ``terms`` after construction; all operations return new
    instances, so values are safe to share across threads.
    """

    __slots__ = ("terms", "nvars", "field")

    def __init__(self, terms: dict, nvars: int, field: CoefficientField):
        clean = {}
        for mono, coeff in terms.items():
            c = field.convert(coeff)
            if c:
                clean[tuple(mono)] = c
        self.terms = clean
        self.nvars = nvars
        self.field = field

    # --- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars: int, field: CoefficientField) -> "Polynomial":
        return cls({}, nvars, field)

    @classmethod
    def constant(cls, value, nvars: int, field: CoefficientField) -> "Polynomial":
        return cls({(0,) * nvars: value}, nvars, field)

    @classmethod
    def variable(cls, index: int, nvars: int, field: CoefficientField) -> "Polynomial":
        mono = tuple(1 if i == index else 0 for i in range(nvars))
        return cls({mono: field.one()}, nvars, field)

    # --- structure ----------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def leading(self):
        """(monomial, coefficient) of the grevlex-leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=grevlex_key)
        return m, self.terms[m]

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: grevlex_key(kv[0]), reverse=True)

    def sort_key(self) -> tuple:
        """Total order on polynomials used for deterministic tie-breaks."""
        key = []
        for mono, coeff in self.sorted_terms():
            if isinstance(coeff, Fraction):
                ckey = (coeff.numerator, coeff.denominator)
            else:
                ckey = (coeff, 1)
            key.append((grevlex_key(mono), ckey))
        return tuple(key)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, self.field, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # --- arithmetic ---------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.field != other.field or self.nvars != other.nvars:
            raise MismatchError("operands over different fields or variable counts")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        fld = self.field
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            c = fld.add(terms.get(mono, fld.zero()), coeff)
            if c:
                terms[mono] = c
            else:
                terms.pop(mono, None)
        return Polynomial(terms, self.nvars, fld)

    def __neg__(self) -> "Polynomial":
        fld = self.field
        return Polynomial({m: fld.neg(c) for m, c in self.terms.items()}, self.nvars, fld)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        fld = self.field
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                c = fld.add(terms.get(mono, fld.zero()), fld.mul(c1, c2))
                if c:
                    terms[mono] = c
                else:
                    terms.pop(mono, None)
        return Polynomial(terms, self.nvars, fld)

    def scale(self, value) -> "Polynomial":
        fld = self.field
        c0 = fld.convert(value)
        return Polynomial({m: fld.mul(c, c0) for m, c in self.terms.items()}, self.nvars, fld)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1, self.nvars, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # --- canonical form -----------------------------------------------
    def normalize(self) -> "Polynomial":
        """Canonical scalar multiple: over GF(p) leading coefficient 1;
        over Q integer coefficients of content 1 with positive leading
        coefficient.  Never applied implicitly."""
        if self.is_zero:
            return self
        fld = self.field
        _, lc = self.leading()
        if fld.is_prime_field:
            return self.scale(fld.inv(lc))
        denom_lcm = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in self.terms.values()), 1)
        num_gcd = reduce(gcd, (abs(c.numerator) for c in self.terms.values()))
        factor = Fraction(denom_lcm, num_gcd)
        if lc < 0:
            factor = -factor
        return self.scale(factor)

    def sign_fixed(self) -> "Polynomial":
        """The representative of {p, -p} whose leading coefficient is in
        the canonical half (positive over Q, in 1..(p-1)/2 over GF(p))."""
        if self.is_zero:
            return self
        _, lc = self.leading()
        return self if self.field.in_canonical_half(lc) else -self

    # --- coefficient vectors ------------------------------------------
    def coefficient_vector(self, basis: list) -> list:
        zero = self.field.zero()
        return [self.terms.get(m, zero) for m in basis]

    @classmethod
    def from_vector(cls, vec, basis, nvars, field) -> "Polynomial":
        return cls({m: c for m, c in zip(basis, vec)}, nvars, field)

    # --- display ------------------------------------------------------
    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)!r}, nvars={self.nvars}, field={self.field.label()})"


# ----------------------------------------------------------------------
# printing


def _format_coeff(c) -> str:
    return str(c)


def format_poly(poly: Polynomial) -> str:
    if poly.is_zero:
        return "0"
    names = var_names(poly.nvars)
    fld = poly.field
    pieces = []
    for mono, coeff in poly.sorted_terms():
        factors = []
        for i, e in enumerate(mono):
            if e == 1:
                factors.append(names[i])
            elif e > 1:
                factors.append(f"{names[i]}^{e}")
        negative = fld.is_negative(coeff)
        mag = fld.neg(coeff) if negative else coeff
        if not factors:
            body = _format_coeff(mag)
        elif mag == fld.one():
            body = "*".join(factors)
        else:
            body = "*".join([_format_coeff(mag)] + factors)
        pieces.append(("-" if negative else "+", body))
    sign, body = pieces[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


# ----------------------------------------------------------------------
# parsing


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip_ws()
        if self.pos >= len(self.text):
            return None, self.pos
        return self.text[self.pos], self.pos

    def next_number(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected a number", start)
        return int(self.text[start:self.pos])

    def next_name(self) -> str:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()):
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected a variable name", start)
        return self.text[start:self.pos]

    def accept(self, ch: str) -> bool:
        c, _ = self.peek()
        if c == ch:
            self.pos += 1
            return True
        return False


def parse(text: str, nvars: int, field: CoefficientField) -> Polynomial:
    """Parse polynomial text: terms joined by +/-, factors joined by '*',
    powers written var^k, coefficients integers or rationals a/b."""
    if nvars < 2:
        raise ValueError("at least 2 variables required")
    names = {name: i for i, name in enumerate(var_names(nvars))}
    lex = _Lexer(text)
    result = Polynomial.zero(nvars, field)
    first = True
    while True:
        c, pos = lex.peek()
        if c is None:
            if first:
                raise ParseError("empty input", pos)
            break
        sign = 1
        if c in "+-":
            lex.pos += 1
            sign = -1 if c == "-" else 1
        elif not first:
            raise ParseError(f"expected '+' or '-', found {c!r}", pos)
        result = result + _parse_term(lex, names, nvars, field, sign)
        first = False
    return result


def _parse_term(lex: _Lexer, names, nvars, field, sign) -> Polynomial:
    coeff = Fraction(sign)
    exponents = [0] * nvars
    saw_factor = False
    while True:
        c, pos = lex.peek()
        if c is not None and c.isdigit():
            num = lex.next_number()
            if lex.accept("/"):
                dpos = lex.pos
                den = lex.next_number()
                if den == 0:
                    raise ParseError("zero denominator", dpos)
                coeff *= Fraction(num, den)
            else:
                coeff *= num
        elif c is not None and c.isalpha():
            name = lex.next_name()
            if name not in names:
                raise ParseError(f"unknown variable {name!r}", pos)
            power = 1
            if lex.accept("^"):
                power = lex.next_number()
            exponents[names[name]] += power
        else:
            raise ParseError("expected a coefficient or variable", pos)
        saw_factor = True
        if not lex.accept("*"):
            break
    if not saw_factor:
        raise ParseError("empty term", lex.pos)
    try:
        value = field.convert(coeff)
    except FieldError as exc:
        raise ParseError(str(exc), lex.pos) from None
    return Polynomial({tuple(exponents): value}, nvars, field)


# ----------------------------------------------------------------------
# exact division


def divide_exact(b: Polynomial, f: Polynomial):
    """The quotient b / f when f divides b in the polynomial ring, else None.

    Single-divisor reduction in the global term order; since the divisor
    set is a singleton, the remainder vanishes iff f divides b.
    """
    b._check(f)
    if f.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    fld = b.field
    fm, fc = f.leading()
    rest = dict(b.terms)
    quotient = {}
    while rest:
        m = max(rest, key=grevlex_key)
        c = rest[m]
        qm = tuple(a - b_ for a, b_ in zip(m, fm))
        if any(e < 0 for e in qm):
            return None  # this term survives into the remainder
        qc = fld.div(c, fc)
        quotient[qm] = fld.add(quotient.get(qm, fld.zero()), qc)
        for m2, c2 in f.terms.items():
            mono = tuple(a + b_ for a, b_ in zip(qm, m2))
            nc = fld.sub(rest.get(mono, fld.zero()), fld.mul(qc, c2))
            if nc:
                rest[mono] = nc
            else:
                rest.pop(mono, None)
    return Polynomial(quotient, b.nvars, fld)


# ----------------------------------------------------------------------
# linear substitution


def _linear_pivot(f: Polynomial) -> int:
    """Highest variable index with nonzero coefficient in a linear form."""
    if f.is_zero or f.degree() != 1 or not f.is_homogeneous():
        raise DegreeError("expected a nonzero homogeneous linear form")
    return max(m.index(1) for m in f.terms)


def substitute_linear(b: Polynomial, f: Polynomial) -> Polynomial:
    """Restrict b to the hyperplane f = 0.

    Solves f = 0 for the variable of highest index with nonzero
    coefficient and substitutes; the result lives in nvars - 1 variables.
    """
    b._check(f)
    fld = b.field
    j = _linear_pivot(f)
    cj = f.terms[tuple(1 if i == j else 0 for i in range(b.nvars))]
    # x_j = -(1/cj) * sum_{i != j} c_i x_i
    sub_terms = {}
    for mono, coeff in f.terms.items():
        i = mono.index(1)
        if i == j:
            continue
        sub_terms[mono] = fld.neg(fld.div(coeff, cj))
    sub = Polynomial(sub_terms, b.nvars, fld)
    max_pow = max((m[j] for m in b.terms), default=0)
    powers = [Polynomial.constant(1, b.nvars, fld)]
    for _ in range(max_pow):
        powers.append(powers[-1] * sub)
    result = Polynomial.zero(b.nvars, fld)
    for mono, coeff in b.terms.items():
        rest = tuple(0 if i == j else e for i, e in enumerate(mono))
        result = result + Polynomial({rest: coeff}, b.nvars, fld) * powers[mono[j]]
    return drop_variable(result, j)


def drop_variable(poly: Polynomial, j: int) -> Polynomial:
    """Remove variable j (which must not occur) from the variable list."""
    terms = {}
    for mono, coeff in poly.terms.items():
        if mono[j]:
            raise ValueError(f"variable index {j} still occurs")
        terms[mono[:j] + mono[j + 1:]] = coeff
    return Polynomial(terms, poly.nvars - 1, poly.field)


def insert_variable(poly: Polynomial, j: int) -> Polynomial:
    """Re-insert a variable slot at index j with exponent 0 everywhere."""
    terms = {m[:j] + (0,) + m[j:]: c for m, c in poly.terms.items()}
    return Polynomial(terms, poly.nvars + 1, poly.field)


# ----------------------------------------------------------------------
# formal square root


def formal_square_root(b: Polynomial):
    """(r, unit) with r^2 = unit * b, or None when b is not a square.

    unit is 1 except in closure mode, where a non-square leading
    coefficient is absorbed into the reported unit (over an algebraically
    closed field every unit is a square).  Coefficients of r are found
    greedily in term order by cancelling the leading term of b - r^2;
    each step divides by twice r's leading coefficient (char != 2).
    """
    fld = b.field
    if b.is_zero:
        return b, fld.one()
    if not b.is_homogeneous():
        raise DegreeError("square root requires a homogeneous polynomial")
    if b.degree() % 2:
        raise DegreeError("square root of an odd-degree form")
    lm, lc = b.leading()
    if any(e % 2 for e in lm):
        return None
    unit = fld.one()
    target = b
    c0 = fld.sqrt(lc)
    if c0 is None:
        if not fld.closure_mode:
            return None
        unit = fld.inv(lc)
        target = b.scale(unit)
        c0 = fld.one()
    half = tuple(e // 2 for e in lm)
    root = Polynomial({half: c0}, b.nvars, fld)
    two_c0 = fld.mul(fld.convert(2), c0)
    while True:
        residual = target - root * root
        if residual.is_zero:
            return root, unit
        m, c = residual.leading()
        tm = tuple(a - h for a, h in zip(m, half))
        if any(e < 0 for e in tm):
            return None
        term = Polynomial({tm: fld.div(c, two_c0)}, b.nvars, fld)
        root = root + term
