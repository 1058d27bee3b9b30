"""Exact coefficient fields: the rationals and prime fields GF(p), p odd.

Field elements are plain Python values: ``fractions.Fraction`` over the
rationals, ``int`` in ``range(p)`` over GF(p).  A ``CoefficientField``
instance carries the arithmetic; polynomials store one of these and
delegate all coefficient work to it.

``closure_mode`` marks the field as a stand-in for an algebraically
closed field: square-root extraction is then allowed to succeed up to a
unit (see ``splitcert.poly.formal_square_root``).
"""

from __future__ import annotations

import math
from fractions import Fraction


class FieldError(ValueError):
    """Invalid field construction or an element outside the field."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic Miller-Rabin, valid far beyond machine-word range
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _sqrt_mod(a: int, p: int):
    """A square root of a modulo the odd prime p, or None (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


class CoefficientField:
    """The rationals (p is None) or GF(p) for an odd prime p."""

    def __init__(self, p: int | None = None, closure_mode: bool = False):
        if p is not None:
            if not _is_prime(p):
                raise FieldError(f"modulus {p} is not prime")
            if p == 2:
                raise FieldError("characteristic 2 is not supported (t^2 = F degenerates)")
        self.p = p
        self.closure_mode = closure_mode

    # ------------------------------------------------------------------
    @property
    def is_rationals(self) -> bool:
        return self.p is None

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    def label(self) -> str:
        return "q" if self.p is None else f"fp:{self.p}"

    @classmethod
    def from_label(cls, label: str, closure_mode: bool = False) -> "CoefficientField":
        label = label.strip().lower()
        if label in ("q", "qq", "rationals"):
            return cls(closure_mode=closure_mode)
        if label.startswith("fp:"):
            return cls(int(label[3:]), closure_mode=closure_mode)
        raise FieldError(f"unknown field label {label!r} (expected 'q' or 'fp:P')")

    def __eq__(self, other) -> bool:
        return isinstance(other, CoefficientField) and self.p == other.p

    def __hash__(self):
        return hash(("CoefficientField", self.p))

    def __repr__(self):
        tag = ", closure" if self.closure_mode else ""
        return f"CoefficientField({self.label()}{tag})"

    # --- element arithmetic -------------------------------------------
    def zero(self):
        return 0 if self.p else Fraction(0)

    def one(self):
        return 1 if self.p else Fraction(1)

    def convert(self, value):
        """Coerce an int / Fraction / field element into this field."""
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise FieldError(f"denominator of {value} is divisible by {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # --- square roots --------------------------------------------------
    def sqrt(self, a):
        """A square root of a in this field, or None if a is a non-square."""
        if self.p is not None:
            return _sqrt_mod(a, self.p)
        if a < 0:
            return None
        rn = math.isqrt(a.numerator)
        rd = math.isqrt(a.denominator)
        if rn * rn == a.numerator and rd * rd == a.denominator:
            return Fraction(rn, rd)
        return None

    def is_square(self, a) -> bool:
        return self.sqrt(a) is not None

    # --- display helpers ----------------------------------------------
    def is_negative(self, a) -> bool:
        """True when -a prints more naturally than a (rationals only)."""
        return self.p is None and a < 0

    def in_canonical_half(self, a) -> bool:
        """Sign normalization test: a > 0 over Q, a in 1..(p-1)/2 over GF(p).

        Forcing a leading coefficient of exactly 1 over GF(p) is not
        possible by a sign flip alone, so the canonical representative is
        the one whose leading coefficient lies in the lower half.
        """
        if not a:
            return True
        if self.p is None:
            return a > 0
        return 1 <= a <= (self.p - 1) // 2
