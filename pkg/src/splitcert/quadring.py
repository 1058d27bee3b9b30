"""Arithmetic in k[x0..xN][t] / (t^2 - F): the affine model of a double
cover of projective space, with conjugation t -> -t and the norm form.

A double cover of P^n is stored as (n, F, l) with deg F = 2l; the line
bundle half of the branch data is determined by l alone because the
Picard group of P^n is Z.  Elements of the quadratic extension are pairs
p + q*t graded by an integer k: deg p = k, deg q = k - l.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import CoefficientField
from .poly import DegreeError, MismatchError, Polynomial, format_poly, parse


@dataclass(frozen=True)
class DoubleCover:
    """Branch data of a double cover of P^n: F homogeneous of degree 2l."""

    n: int
    F: Polynomial
    l: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("projective dimension n must be >= 2")
        if self.F.nvars != self.n + 1:
            raise MismatchError(f"branch equation must have {self.n + 1} variables")
        if self.F.is_zero:
            raise DegreeError("branch equation must be nonzero")
        if not self.F.is_homogeneous() or self.l < 1 or self.F.degree() != 2 * self.l:
            raise DegreeError(f"branch equation must be homogeneous of degree 2l = {2 * self.l}")

    @property
    def field(self) -> CoefficientField:
        return self.F.field

    @classmethod
    def from_text(cls, text: str, n: int, l: int, field: CoefficientField) -> "DoubleCover":
        return cls(n, parse(text, n + 1, field), l)


@dataclass(frozen=True)
class QuadRingElement:
    """p + q*t of grade k: p in H^0(O(k)), q in H^0(O(k-l))."""

    p: Polynomial
    q: Polynomial
    k: int

    def validate(self, cover: DoubleCover):
        if self.p.nvars != cover.n + 1 or self.q.nvars != cover.n + 1:
            raise MismatchError("element and cover have different variable counts")
        if self.p.field != cover.field or self.q.field != cover.field:
            raise MismatchError("element and cover have different coefficient fields")
        if not self.p.is_zero and (not self.p.is_homogeneous() or self.p.degree() != self.k):
            raise DegreeError(f"p must be homogeneous of degree k = {self.k}")
        if not self.q.is_zero and (not self.q.is_homogeneous() or self.q.degree() != self.k - cover.l):
            raise DegreeError(f"q must be homogeneous of degree k - l = {self.k - cover.l}")

    @property
    def is_zero(self) -> bool:
        return self.p.is_zero and self.q.is_zero

    def to_json(self) -> dict:
        return {"p": format_poly(self.p), "q": format_poly(self.q), "k": self.k}

    @classmethod
    def from_json(cls, data: dict, nvars: int, field: CoefficientField) -> "QuadRingElement":
        return cls(parse(data["p"], nvars, field), parse(data["q"], nvars, field), int(data["k"]))


def ring_mul(a: QuadRingElement, b: QuadRingElement, cover: DoubleCover) -> QuadRingElement:
    """(p1 + q1 t)(p2 + q2 t) = (p1 p2 + q1 q2 F) + (p1 q2 + p2 q1) t."""
    a.validate(cover)
    b.validate(cover)
    return QuadRingElement(
        a.p * b.p + a.q * b.q * cover.F,
        a.p * b.q + b.p * a.q,
        a.k + b.k,
    )


def conjugate(a: QuadRingElement) -> QuadRingElement:
    """The covering involution: t -> -t."""
    return QuadRingElement(a.p, -a.q, a.k)


def norm(a: QuadRingElement, cover: DoubleCover) -> Polynomial:
    """p^2 - q^2 F: the t^0 component of a * conjugate(a), homogeneous of
    degree 2k or zero."""
    a.validate(cover)
    return a.p * a.p - a.q * a.q * cover.F
