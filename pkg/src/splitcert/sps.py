"""SPS (simple pre-splitting) certificates: decide whether a form f
admits h, g with F = h^2 + f*g, and produce canonical witnesses.

Search strategies:
  (a) deg f = 1: restrict F to the line, take a formal square root, lift.
      Complete over the coefficient field (and over the closure when
      closure_mode is set): any certificate restricts to a square root.
  (b) deg f = 2 in the plane: parametrize the conic through a rational
      point, pull F back to a binary form, extract its square root and
      solve a linear system for h.  Complete once a point is found and
      the conic is smooth.
  (c) finite field, any degree: exhaust h over a transversal of
      f*H^0(O(l - deg f)) inside H^0(O(l)); changing h by a multiple of
      f only changes g, so the transversal is the correct search space.

Certificates are canonicalized (h reduced modulo f*H^0(O(l - deg f)) in
the global term order, then sign-fixed) so identical inputs always yield
identical output.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .field import CoefficientField
from .linalg import reduce_vector, rref, solve
from .poly import (
    DegreeError,
    Polynomial,
    divide_exact,
    formal_square_root,
    grevlex_key,
    insert_variable,
    monomials_of_degree,
    substitute_linear,
    _linear_pivot,
)
from .quadring import DoubleCover
from .util import CostGuardError, parallel_map


@dataclass(frozen=True)
class SpsCertificate:
    """Witness of unit*F = h^2 + f*g (unit = 1 outside closure mode)."""

    h: Polynomial
    g: Polynomial
    unit: object = None  # field element; filled with 1 by the producers

    def to_json(self) -> dict:
        return {"h": str(self.h), "g": str(self.g), "unit": str(self.unit)}


@dataclass
class SpsSearchResult:
    found: bool
    certificate: SpsCertificate | None
    in_branch: bool
    strategy: str
    reason: str = ""
    exhaustive: bool = False  # NotFound is a proof of non-existence over this field
    searched: int = 0


# ----------------------------------------------------------------------
# verification


def _check_divisor_degree(cover: DoubleCover, f: Polynomial):
    if f.is_zero or not f.is_homogeneous():
        raise DegreeError("divisor equation must be nonzero and homogeneous")
    if not 1 <= f.degree() <= 2 * cover.l:
        raise DegreeError(f"divisor degree must lie in 1..{2 * cover.l}")


def sps_verify(cover: DoubleCover, f: Polynomial, cert: SpsCertificate) -> bool:
    """True iff unit*F - h^2 - f*g is identically zero.

    Degree bookkeeping failures raise DegreeError; an intact shape with a
    broken identity returns False.
    """
    _check_divisor_degree(cover, f)
    h, g = cert.h, cert.g
    if not h.is_zero and (not h.is_homogeneous() or h.degree() != cover.l):
        raise DegreeError(f"h must be homogeneous of degree l = {cover.l}")
    gdeg = 2 * cover.l - f.degree()
    if not g.is_zero and (not g.is_homogeneous() or g.degree() != gdeg):
        raise DegreeError(f"g must be homogeneous of degree 2l - deg f = {gdeg}")
    unit = cover.field.one() if cert.unit is None else cert.unit
    residual = cover.F.scale(unit) - h * h - f * g
    return residual.is_zero


def in_branch_locus(cover: DoubleCover, f: Polynomial) -> bool:
    """Whether f divides F, i.e. the divisor lies inside the branch locus
    (pre-splitting vs. simple splitting distinction)."""
    return divide_exact(cover.F, f) is not None


# ----------------------------------------------------------------------
# canonicalization


def reduction_space(f: Polynomial, l: int):
    """RREF data of the subspace f * H^0(O(l - deg f)) inside H^0(O(l)),
    over the degree-l monomial basis in descending term order."""
    nvars = f.nvars
    basis = monomials_of_degree(nvars, l)
    multipliers = monomials_of_degree(nvars, l - f.degree())
    rows = []
    for m in multipliers:
        prod = f * Polynomial({m: f.field.one()}, nvars, f.field)
        rows.append(prod.coefficient_vector(basis))
    echelon, pivots = rref(rows, f.field) if rows else ([], [])
    return basis, echelon, pivots


def canonicalize_h(h: Polynomial, f: Polynomial, l: int) -> Polynomial:
    """Reduce h modulo f*H^0(O(l - deg f)) and fix its sign."""
    basis, echelon, pivots = reduction_space(f, l)
    vec = reduce_vector(h.coefficient_vector(basis), echelon, pivots, f.field)
    return Polynomial.from_vector(vec, basis, h.nvars, f.field).sign_fixed()


def _finish(cover: DoubleCover, f: Polynomial, h: Polynomial, unit, strategy: str,
            searched: int = 0) -> SpsSearchResult:
    """Canonicalize h, recompute g by exact division, verify, package."""
    h = canonicalize_h(h, f, cover.l)
    g = divide_exact(cover.F.scale(unit) - h * h, f)
    assert g is not None, "internal error: canonical h lost divisibility"
    cert = SpsCertificate(h, g, unit)
    assert sps_verify(cover, f, cert), "internal error: produced certificate fails verification"
    return SpsSearchResult(True, cert, in_branch_locus(cover, f), strategy,
                           exhaustive=True, searched=searched)


# ----------------------------------------------------------------------
# search


def sps_search(cover: DoubleCover, f: Polynomial, point=None, jobs: int = 1,
               max_candidates: int = 10**7) -> SpsSearchResult:
    """Find (h, g) with unit*F = h^2 + f*g, or report NotFound.

    ``reason`` distinguishes an exhaustion proof over the field
    ("no certificate over this field") from a mere strategy gap over Q
    ("not found by available strategies"); ``exhaustive`` is the flag.
    Irreducibility of f is asserted by the caller, never checked.
    """
    _check_divisor_degree(cover, f)
    d = f.degree()
    if d == 1:
        return _search_line(cover, f)
    if d == 2 and cover.n == 2:
        result = _search_conic(cover, f, point)
        if result is not None:
            return result
    if cover.field.is_prime_field:
        return _search_exhaustive(cover, f, jobs=jobs, max_candidates=max_candidates)
    return SpsSearchResult(False, None, in_branch_locus(cover, f), "none",
                           reason="not found by available strategies over Q "
                                  "(deg f > 2, or no rational point on the conic)",
                           exhaustive=False)


def _search_line(cover: DoubleCover, f: Polynomial) -> SpsSearchResult:
    j = _linear_pivot(f)
    restricted = substitute_linear(cover.F, f)
    root = formal_square_root(restricted)
    if root is None:
        reason = "restriction of F to the line is not a square"
        if cover.field.closure_mode:
            reason += " over the closure (two distinct branch points on the line)"
        return SpsSearchResult(False, None, in_branch_locus(cover, f), "restrict-line",
                               reason=reason, exhaustive=True)
    r, unit = root
    h = insert_variable(r, j)
    return _finish(cover, f, h, unit, "restrict-line")


# --- conic parametrization --------------------------------------------


def _evaluate(poly: Polynomial, pt: tuple):
    fld = poly.field
    total = fld.zero()
    for mono, coeff in poly.terms.items():
        v = coeff
        for x, e in zip(pt, mono):
            for _ in range(e):
                v = fld.mul(v, x)
        total = fld.add(total, v)
    return total


def _conic_matrix(f: Polynomial):
    fld = f.field
    half = fld.inv(fld.convert(2))
    M = [[fld.zero()] * 3 for _ in range(3)]
    for mono, coeff in f.terms.items():
        idx = [i for i, e in enumerate(mono) for _ in range(e)]
        i, j = idx
        if i == j:
            M[i][i] = coeff
        else:
            M[i][j] = M[j][i] = fld.mul(coeff, half)
    return M


def _det3(M, fld):
    def mul(*xs):
        out = fld.one()
        for x in xs:
            out = fld.mul(out, x)
        return out

    pos = fld.add(fld.add(mul(M[0][0], M[1][1], M[2][2]), mul(M[0][1], M[1][2], M[2][0])),
                  mul(M[0][2], M[1][0], M[2][1]))
    neg = fld.add(fld.add(mul(M[0][2], M[1][1], M[2][0]), mul(M[0][0], M[1][2], M[2][1])),
                  mul(M[0][1], M[1][0], M[2][2]))
    return fld.sub(pos, neg)


def conic_is_smooth(f: Polynomial) -> bool:
    return bool(_det3(_conic_matrix(f), f.field))


def _projective_points(field: CoefficientField):
    p = field.p
    for b in range(p):
        for c in range(p):
            yield (1, b, c)
    for c in range(p):
        yield (0, 1, c)
    yield (0, 0, 1)


def _rational_point(f: Polynomial, supplied):
    fld = f.field
    if supplied is not None:
        pt = tuple(fld.convert(v) for v in supplied)
        if _evaluate(f, pt):
            raise ValueError("supplied point does not lie on the conic")
        return pt
    if fld.is_prime_field:
        for pt in _projective_points(fld):
            if not _evaluate(f, pt):
                return pt
        return None
    # small search over Q: coordinate points, then an integer box
    for pt in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        if not _evaluate(f, tuple(map(fld.convert, pt))):
            return tuple(map(fld.convert, pt))
    rng = range(-10, 11)
    for a in rng:
        for b in rng:
            for c in rng:
                if (a, b, c) == (0, 0, 0):
                    continue
                first = next(v for v in (a, b, c) if v)
                if first < 0:
                    continue
                pt = tuple(map(fld.convert, (a, b, c)))
                if not _evaluate(f, pt):
                    return pt
    return None


def conic_parametrization(f: Polynomial, pt: tuple) -> list:
    """Degree-2 map P^1 -> {f = 0} through the rational point pt: for a
    direction D the line through pt meets the conic again at
    f(D)*pt - 2*b(pt, D)*D, with b the polar bilinear form.

    Returns the three coordinates as binary forms in (s, u)."""
    fld = f.field
    M = _conic_matrix(f)
    # complete pt to a basis with two coordinate vectors
    units = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    A = B = None
    for i, j in ((0, 1), (0, 2), (1, 2)):
        cand = [list(pt), list(units[i]), list(units[j])]
        mat = [[fld.convert(v) for v in row] for row in cand]
        if _det3([list(col) for col in zip(*mat)], fld):
            A, B = units[i], units[j]
            break
    assert A is not None, "point cannot be completed to a basis"
    two = fld.convert(2)
    s = Polynomial.variable(0, 2, fld)
    u = Polynomial.variable(1, 2, fld)
    D = [s.scale(A[c]) + u.scale(B[c]) for c in range(3)]
    fD = Polynomial.zero(2, fld)
    bPD = Polynomial.zero(2, fld)
    for i in range(3):
        for j in range(3):
            fD = fD + (D[i] * D[j]).scale(M[i][j])
            bPD = bPD + D[j].scale(fld.mul(pt[i], M[i][j]))
    return [fD.scale(pt[c]) - (bPD * D[c]).scale(two) for c in range(3)]


def _compose(poly: Polynomial, param: list) -> Polynomial:
    """poly(param_0, param_1, param_2) as a binary form."""
    fld = poly.field
    maxes = [max((m[c] for m in poly.terms), default=0) for c in range(3)]
    powers = []
    for c in range(3):
        col = [Polynomial.constant(1, 2, fld)]
        for _ in range(maxes[c]):
            col.append(col[-1] * param[c])
        powers.append(col)
    out = Polynomial.zero(2, fld)
    for mono, coeff in poly.terms.items():
        term = Polynomial.constant(coeff, 2, fld)
        for c in range(3):
            term = term * powers[c][mono[c]]
        out = out + term
    return out


def _search_conic(cover: DoubleCover, f: Polynomial, supplied_point):
    """Strategy (b).  Returns None when inapplicable (no point found or
    singular conic), letting the caller fall through to exhaustion."""
    fld = cover.field
    if not conic_is_smooth(f):
        return None
    pt = _rational_point(f, supplied_point)
    if pt is None:
        return None
    param = conic_parametrization(f, pt)
    pullback = _compose(cover.F, param)
    root = formal_square_root(pullback)
    if root is None:
        return SpsSearchResult(False, None, in_branch_locus(cover, f), "conic-parametrize",
                               reason="pullback of F to the conic is not a square",
                               exhaustive=True)
    r, unit = root
    # solve h(param) = r for h in H^0(O(l)); the restriction map is
    # surjective with kernel f*H^0(O(l - 2)), so the system is consistent
    basis = monomials_of_degree(3, cover.l)
    binary_basis = monomials_of_degree(2, 2 * cover.l)
    columns = []
    for m in basis:
        composed = _compose(Polynomial({m: fld.one()}, 3, fld), param)
        columns.append(composed.coefficient_vector(binary_basis))
    matrix = [[columns[c][row] for c in range(len(basis))] for row in range(len(binary_basis))]
    x = solve(matrix, r.coefficient_vector(binary_basis), fld)
    assert x is not None, "restriction to a smooth conic must be surjective"
    h = Polynomial.from_vector(x, basis, 3, fld)
    return _finish(cover, f, h, unit, "conic-parametrize")


# --- finite-field exhaustion ------------------------------------------


def _transversal_vectors(dim: int, free_positions: list, field: CoefficientField):
    """All coefficient vectors supported on the non-pivot positions: one
    representative per coset of the reduction subspace."""
    p = field.p
    for combo in itertools.product(range(p), repeat=len(free_positions)):
        vec = [0] * dim
        for pos, val in zip(free_positions, combo):
            vec[pos] = val
        yield vec


def _try_h(args):
    cover, f, basis, vec = args
    h = Polynomial.from_vector(vec, basis, f.nvars, f.field)
    g = divide_exact(cover.F - h * h, f)
    return h if g is not None else None


def _search_exhaustive(cover: DoubleCover, f: Polynomial, jobs: int = 1,
                       max_candidates: int = 10**7) -> SpsSearchResult:
    fld = cover.field
    basis, echelon, pivots = reduction_space(f, cover.l)
    free = [i for i in range(len(basis)) if i not in set(pivots)]
    count = fld.p ** len(free)
    if count > max_candidates:
        raise CostGuardError(
            f"h search space has {count} candidates (> {max_candidates})")
    vectors = list(_transversal_vectors(len(basis), free, fld))
    hits = [h for h in parallel_map(_try_h, [(cover, f, basis, v) for v in vectors], jobs)
            if h is not None]
    if not hits:
        return SpsSearchResult(False, None, in_branch_locus(cover, f), "exhaust",
                               reason="no certificate over this field by exhaustion",
                               exhaustive=True, searched=count)
    best = min((h.sign_fixed() for h in hits), key=lambda h: h.sort_key())
    return _finish(cover, f, best, fld.one(), "exhaust", searched=count)


# ----------------------------------------------------------------------
# branch components


def sps_branch_components(cover: DoubleCover, factors: list) -> list:
    """Certificates (h=0, g=F/f) for each factor of a factorization of F."""
    product = Polynomial.constant(1, cover.n + 1, cover.field)
    for f in factors:
        product = product * f
    if product != cover.F:
        raise ValueError("product of the supplied factors does not equal F")
    certs = []
    for f in factors:
        g = divide_exact(cover.F, f)
        cert = SpsCertificate(Polynomial.zero(cover.n + 1, cover.field), g, cover.field.one())
        assert sps_verify(cover, f, cert)
        certs.append(cert)
    return certs
