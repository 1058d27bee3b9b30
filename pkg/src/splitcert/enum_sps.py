"""Enumeration of SPS divisor candidates over finite fields.

The degree bound deg(C) <= l means the full generator hunt only has to
scan forms up to degree l; over GF(p) that scan is a finite loop over
projective representatives (first nonzero coefficient 1 in term order).
Enumeration provides candidates with certificates, never a completeness
guarantee that the hits generate the class group.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .poly import Polynomial, divide_exact, monomials_of_degree, substitute_linear
from .quadring import DoubleCover
from .sps import SpsCertificate, sps_search, sps_verify
from .util import CostGuardError, parallel_map


@dataclass
class SpsHit:
    f: Polynomial
    certificate: SpsCertificate
    in_branch: bool = False
    visibly_reducible: bool = False  # divisible by some enumerated SPS line


@dataclass
class SpsEnumeration:
    degree: int
    field_label: str
    hits: list
    searched_count: int
    warnings: list = dc_field(default_factory=list)


# ----------------------------------------------------------------------
# candidate generation


def projective_representatives(nvars: int, degree: int, field):
    """All nonzero degree-d forms with first nonzero coefficient 1 in the
    global term order: one representative per proportionality class."""
    basis = monomials_of_degree(nvars, degree)
    p = field.p
    for lead in range(len(basis)):
        for tail in itertools.product(range(p), repeat=len(basis) - lead - 1):
            vec = [0] * lead + [1] + list(tail)
            yield Polynomial.from_vector(vec, basis, nvars, field)


def _representative_count(nvars: int, degree: int, p: int) -> int:
    dim = len(monomials_of_degree(nvars, degree))
    return (p ** dim - 1) // (p - 1)


# ----------------------------------------------------------------------
# degenerate-branch warning


def _binary_square_free(b: Polynomial) -> bool:
    """Square-freeness of a nonzero binary form via gcd with the
    derivative of its dehomogenization, plus the u-multiplicity."""
    fld = b.field
    min_u = min(m[1] for m in b.terms)
    if min_u >= 2:
        return False
    # dehomogenize at u = 1 -> univariate coefficient list in s
    deg = b.degree()
    coeffs = [fld.zero()] * (deg + 1)
    for (es, eu), c in b.terms.items():
        coeffs[es] = c
    deriv = [fld.mul(fld.convert(i), coeffs[i]) for i in range(1, deg + 1)]
    return _univariate_gcd_degree(coeffs, deriv, fld) == 0


def _univariate_gcd_degree(a: list, b: list, fld) -> int:
    def trim(v):
        while v and not v[-1]:
            v.pop()
        return v

    a, b = trim(list(a)), trim(list(b))
    while b:
        # a mod b
        while len(a) >= len(b):
            factor = fld.div(a[-1], b[-1])
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[i + shift] = fld.sub(a[i + shift], fld.mul(factor, c))
            trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1


def branch_square_free_warning(cover: DoubleCover, seed: int = 0, samples: int = 5):
    """Probabilistic square-free check of F by restriction to random
    lines; one square-free restriction certifies square-freeness."""
    rng = random.Random(seed)
    fld = cover.field
    nvars = cover.n + 1
    for _ in range(samples):
        coeffs = [rng.randrange(fld.p) for _ in range(nvars)]
        if not any(coeffs):
            coeffs[0] = 1
        line = Polynomial({tuple(1 if i == j else 0 for i in range(nvars)): c
                           for j, c in enumerate(coeffs) if c}, nvars, fld)
        restricted = substitute_linear(cover.F, line)
        while restricted.nvars > 2:
            # fold down to a binary form along further random hyperplanes
            sub_coeffs = [rng.randrange(fld.p) for _ in range(restricted.nvars)]
            if not any(sub_coeffs):
                sub_coeffs[0] = 1
            sub_line = Polynomial({tuple(1 if i == j else 0 for i in range(restricted.nvars)): c
                                   for j, c in enumerate(sub_coeffs) if c},
                                  restricted.nvars, fld)
            restricted = substitute_linear(restricted, sub_line)
        if not restricted.is_zero and _binary_square_free(restricted):
            return None
    return ("branch equation may not be square-free (no sampled line restriction "
            "was square-free); every line then restricts F to a square")


def conic_smoothness_note(cover: DoubleCover):
    """Smoothness is only decided for plane conics; otherwise 'unchecked'."""
    if cover.n == 2 and cover.l == 1:
        from .sps import conic_is_smooth

        return None if conic_is_smooth(cover.F) else "branch conic is singular"
    return "branch smoothness unchecked (only plane conics are tested)"


# ----------------------------------------------------------------------
# enumeration


def _try_line(args):
    cover, line = args
    res = sps_search(cover, line)
    if res.found:
        return SpsHit(line, res.certificate, in_branch=res.in_branch)
    return None


def enumerate_sps_lines(cover: DoubleCover, jobs: int = 1,
                        max_candidates: int = 10**6, seed: int = 0) -> SpsEnumeration:
    """Scan every projective line (hyperplane for n = 3) and keep the SPS
    hits found by the restriction strategy."""
    fld = cover.field
    if not fld.is_prime_field:
        raise ValueError("enumeration requires a finite field")
    if cover.n > 3:
        raise ValueError("line enumeration is limited to n <= 3")
    count = _representative_count(cover.n + 1, 1, fld.p)
    if count > max_candidates:
        raise CostGuardError(f"{count} lines exceed the candidate guard {max_candidates}")
    lines = list(projective_representatives(cover.n + 1, 1, fld))
    results = parallel_map(_try_line, [(cover, line) for line in lines], jobs)
    hits = [hit for hit in results if hit is not None]
    warnings = []
    note = branch_square_free_warning(cover, seed=seed)
    if note:
        warnings.append(note)
    note = conic_smoothness_note(cover)
    if note:
        warnings.append(note)
    return SpsEnumeration(1, fld.label(), hits, count, warnings)


def _try_form(args):
    cover, f = args
    res = sps_search(cover, f)
    if res.found:
        return SpsHit(f, res.certificate, in_branch=res.in_branch)
    return None


def enumerate_sps_degree(cover: DoubleCover, degree: int, jobs: int = 1,
                         max_candidates: int = 10**6, allow_over_bound: bool = False,
                         seed: int = 0) -> SpsEnumeration:
    """Scan all normalized degree-d forms with the exhaustive strategy.

    d <= l unless allow_over_bound (the degree bound says generators of
    degree <= l suffice).  Reducible and non-reduced f are not filtered
    out, but hits divisible by an enumerated SPS line are flagged.
    """
    fld = cover.field
    if not fld.is_prime_field:
        raise ValueError("enumeration requires a finite field")
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if degree > cover.l and not allow_over_bound:
        raise ValueError(f"degree {degree} exceeds the generator bound l = {cover.l}; "
                         "pass allow_over_bound to override")
    count = _representative_count(cover.n + 1, degree, fld.p)
    if count > max_candidates:
        raise CostGuardError(f"{count} forms exceed the candidate guard {max_candidates}")
    forms = list(projective_representatives(cover.n + 1, degree, fld))
    results = parallel_map(_try_form, [(cover, f) for f in forms], jobs)
    hits = [hit for hit in results if hit is not None]
    if degree > 1:
        line_hits = enumerate_sps_lines(cover, jobs=jobs, max_candidates=max_candidates,
                                        seed=seed).hits
        for hit in hits:
            hit.visibly_reducible = any(
                divide_exact(hit.f, line.f) is not None for line in line_hits)
    warnings = []
    note = branch_square_free_warning(cover, seed=seed)
    if note:
        warnings.append(note)
    note = conic_smoothness_note(cover)
    if note:
        warnings.append(note)
    return SpsEnumeration(degree, fld.label(), hits, count, warnings)
