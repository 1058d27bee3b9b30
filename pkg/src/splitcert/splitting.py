"""Splitting certificates: verify and search the identity

    p^2 - q^2 F = f * g_1^{a_1} ... g_m^{a_m}

which realizes f * prod(g^a) as a norm from the quadratic extension and
thereby certifies that the divisor f = 0 splits on the double cover,
given a basis of SPS divisors whose pullback components generate the
divisor class group (a hypothesis the caller asserts; no algorithm for
it is known).

Search is exhaustive over a finite field within bounds (max exponent sum
and max grade); over Q it is verification-first multi-prime lifting: the
finite-field certificates are combined by CRT, coefficients of q are
rationally reconstructed, and the resulting candidate is checked exactly
before anything is reported.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .field import CoefficientField, FieldError
from .linalg import crt, rational_reconstruction
from .poly import DegreeError, Polynomial, divide_exact, formal_square_root, monomials_of_degree
from .quadring import DoubleCover, QuadRingElement
from .sps import SpsCertificate, sps_verify
from .util import CostGuardError, parallel_map

DISCLAIMER = ("bounded search exhausted; this is evidence, not proof, of "
              "non-splitting over the complex numbers: no a-priori bound on "
              "the exponent sum or the grade k is available")


class HypothesisError(ValueError):
    """A hypothesis of the splitting criterion is violated (e.g. f divides F)."""


@dataclass(frozen=True)
class BasisEntry:
    g: Polynomial
    certificate: SpsCertificate | None = None


@dataclass(frozen=True)
class SpsBasis:
    """SPS divisor equations g_1..g_m, optionally with their certificates."""

    entries: tuple

    @classmethod
    def from_polys(cls, polys, cover: DoubleCover | None = None, certs=None) -> "SpsBasis":
        certs = certs or [None] * len(polys)
        entries = []
        for g, cert in zip(polys, certs):
            if cert is not None and cover is not None and not sps_verify(cover, g, cert):
                raise ValueError(f"basis element {g} carries an invalid SPS certificate")
            entries.append(BasisEntry(g, cert))
        return cls(tuple(entries))

    @property
    def polys(self) -> list:
        return [e.g for e in self.entries]

    def degrees(self) -> list:
        return [e.g.degree() for e in self.entries]

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class SplitCertificate:
    """Witness (p, q, a, k) of p^2 - q^2 F = unit * f * prod g_j^{a_j}."""

    p: Polynomial
    q: Polynomial
    a: tuple
    k: int
    unit: object = None

    @property
    def degenerate(self) -> bool:
        """q = 0: f * prod g^a is itself a perfect square."""
        return self.q.is_zero

    def to_json(self) -> dict:
        return {"p": str(self.p), "q": str(self.q), "a": list(self.a), "k": self.k,
                "unit": str(self.unit), "degenerate": self.degenerate}


@dataclass
class SplitSearchResult:
    found: bool
    certificate: SplitCertificate | None
    reason: str = ""
    searched_q: int = 0
    searched_exponents: int = 0
    evidence: list = dc_field(default_factory=list)  # per-prime records on the Q path
    disclaimer: str = ""


# ----------------------------------------------------------------------
# verification


def _basis_product(f: Polynomial, basis: SpsBasis, a) -> Polynomial:
    rhs = f
    for entry, e in zip(basis.entries, a):
        rhs = rhs * entry.g ** e
    return rhs


def split_verify(cover: DoubleCover, f: Polynomial, basis: SpsBasis,
                 cert: SplitCertificate) -> bool:
    """True iff p^2 - q^2 F = unit * f * prod g^a holds exactly.

    Degree bookkeeping failures raise DegreeError; a well-shaped
    certificate with a nonzero residual returns False.
    """
    if len(cert.a) != len(basis):
        raise DegreeError("exponent vector length differs from basis size")
    if any(e < 0 for e in cert.a):
        raise DegreeError("exponents must be non-negative")
    total = f.degree() + sum(e * d for e, d in zip(cert.a, basis.degrees()))
    if total != 2 * cert.k:
        raise DegreeError(f"deg f + sum a_j deg g_j = {total} != 2k = {2 * cert.k}")
    if not cert.p.is_zero and (not cert.p.is_homogeneous() or cert.p.degree() != cert.k):
        raise DegreeError(f"p must be homogeneous of degree k = {cert.k}")
    if not cert.q.is_zero:
        if cert.k < cover.l:
            raise DegreeError("nonzero q requires k >= l")
        if not cert.q.is_homogeneous() or cert.q.degree() != cert.k - cover.l:
            raise DegreeError(f"q must be homogeneous of degree k - l = {cert.k - cover.l}")
    unit = cover.field.one() if cert.unit is None else cert.unit
    lhs = cert.p * cert.p - cert.q * cert.q * cover.F
    return lhs == _basis_product(f, basis, cert.a).scale(unit)


def witness_element(cert: SplitCertificate) -> QuadRingElement:
    """The ring element p + q*t whose norm is f * prod g^a."""
    return QuadRingElement(cert.p, cert.q, cert.k)


# ----------------------------------------------------------------------
# exponent enumeration


def _exponent_vectors(m: int, max_sum: int):
    """Vectors with sum(a) <= max_sum in increasing (sum(a), lex) order."""
    for total in range(max_sum + 1):
        for a in _compositions(m, total):
            yield a


def _compositions(m: int, total: int):
    if m == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(m - 1, total - first):
            yield (first,) + rest


# ----------------------------------------------------------------------
# finite-field search


def _signed_representatives(dim: int, field: CoefficientField):
    """Coefficient vectors with first nonzero entry in 1..(p-1)/2: one
    representative of each {q, -q} pair.  The identity is not invariant
    under any other scaling, so only the sign is quotiented out."""
    p = field.p
    half = (p - 1) // 2
    for vec in itertools.product(range(p), repeat=dim):
        first = next((v for v in vec if v), None)
        if first is not None and 1 <= first <= half:
            yield list(vec)


def _try_q(args):
    cover, rhs, qbasis, vec = args
    q = Polynomial.from_vector(vec, qbasis, cover.n + 1, cover.field)
    s = rhs + q * q * cover.F
    root = formal_square_root(s)
    if root is None:
        return None
    return q


def split_search(cover: DoubleCover, f: Polynomial, basis: SpsBasis,
                 max_exp_sum: int, max_k: int, jobs: int = 1,
                 q_guard: int = 10**7, primes=None) -> SplitSearchResult:
    """Search for a splitting certificate within the given bounds.

    Exponent vectors are scanned in increasing (sum, lex) order so the
    minimal certificate is reported; within one exponent vector the
    term-order-minimal q among hits is chosen.  Requires f not to divide
    F (branch components need the separate in-branch treatment);
    raises HypothesisError otherwise.
    """
    if f.is_zero or not f.is_homogeneous():
        raise DegreeError("divisor equation must be nonzero and homogeneous")
    if divide_exact(cover.F, f) is not None:
        raise HypothesisError("f divides F: the divisor lies in the branch locus")
    if cover.field.is_rationals:
        return _search_lifting(cover, f, basis, max_exp_sum, max_k,
                               jobs=jobs, q_guard=q_guard, primes=primes)
    return _search_finite(cover, f, basis, max_exp_sum, max_k, jobs=jobs, q_guard=q_guard)


def _search_finite(cover: DoubleCover, f: Polynomial, basis: SpsBasis,
                   max_exp_sum: int, max_k: int, jobs: int = 1,
                   q_guard: int = 10**7) -> SplitSearchResult:
    fld = cover.field
    nvars = cover.n + 1
    degs = basis.degrees()
    searched_q = 0
    searched_exp = 0
    for a in _exponent_vectors(len(basis), max_exp_sum):
        total = f.degree() + sum(e * d for e, d in zip(a, degs))
        if total % 2:
            continue
        k = total // 2
        if k > max_k:
            continue
        searched_exp += 1
        rhs = _basis_product(f, basis, a)
        hits = []
        # degenerate q = 0 candidate: rhs itself a perfect square
        root = formal_square_root(rhs)
        searched_q += 1
        if root is not None:
            hits.append((Polynomial.zero(nvars, fld), root[0]))
        if k >= cover.l:
            qbasis = monomials_of_degree(nvars, k - cover.l)
            count = (fld.p ** len(qbasis) - 1) // 2
            if count > q_guard:
                raise CostGuardError(
                    f"q search space for a={a} has {count} candidates (> {q_guard})")
            vectors = list(_signed_representatives(len(qbasis), fld))
            searched_q += len(vectors)
            found_qs = [q for q in parallel_map(
                _try_q, [(cover, rhs, qbasis, v) for v in vectors], jobs) if q is not None]
            for q in found_qs:
                root = formal_square_root(rhs + q * q * cover.F)
                hits.append((q, root[0]))
        if hits:
            q, p = min(hits, key=lambda h: h[0].sort_key())
            cert = SplitCertificate(p.sign_fixed(), q, tuple(a), k, fld.one())
            assert split_verify(cover, f, basis, cert), \
                "internal error: search produced an invalid certificate"
            return SplitSearchResult(True, cert,
                                     searched_q=searched_q, searched_exponents=searched_exp)
    return SplitSearchResult(False, None, reason="not found within bounds",
                             searched_q=searched_q, searched_exponents=searched_exp,
                             disclaimer=DISCLAIMER)


# ----------------------------------------------------------------------
# Q path: multi-prime lifting, verification-first


DEFAULT_PRIMES = (7, 11, 13, 17, 19, 23, 29, 31)


def reduce_poly_mod(poly: Polynomial, p: int) -> Polynomial:
    """Reduction of a rational polynomial modulo a prime of good reduction."""
    fld = CoefficientField(p)
    terms = {}
    for mono, coeff in poly.terms.items():
        terms[mono] = fld.convert(coeff)
    return Polynomial(terms, poly.nvars, fld)


def _good_primes(cover: DoubleCover, f: Polynomial, basis: SpsBasis, pool, want: int):
    good = []
    for p in pool:
        try:
            Fp = reduce_poly_mod(cover.F, p)
            fp = reduce_poly_mod(f, p)
            gps = [reduce_poly_mod(g, p) for g in basis.polys]
        except FieldError:
            continue
        if Fp.is_zero or fp.is_zero or any(g.is_zero for g in gps):
            continue
        if divide_exact(Fp, fp) is not None:
            continue  # hypothesis fails mod p: bad reduction
        good.append((p, DoubleCover(cover.n, Fp, cover.l), fp, SpsBasis.from_polys(gps)))
        if len(good) == want:
            break
    return good


def _search_lifting(cover: DoubleCover, f: Polynomial, basis: SpsBasis,
                    max_exp_sum: int, max_k: int, jobs: int = 1,
                    q_guard: int = 10**7, primes=None) -> SplitSearchResult:
    pool = primes if primes else DEFAULT_PRIMES
    good = _good_primes(cover, f, basis, pool, want=3 if primes is None else len(primes))
    if not good:
        return SplitSearchResult(False, None, reason="no primes of good reduction in the pool",
                                 disclaimer=DISCLAIMER)
    evidence = []
    per_prime = []
    for p, cover_p, fp, basis_p in good:
        res = _search_finite(cover_p, fp, basis_p, max_exp_sum, max_k,
                             jobs=jobs, q_guard=q_guard)
        record = {"prime": p, "found": res.found}
        if res.found:
            record["certificate"] = res.certificate.to_json()
            per_prime.append((p, res.certificate))
        evidence.append(record)
    if len(per_prime) != len(good):
        return SplitSearchResult(False, None,
                                 reason="no certificate modulo some prime within bounds",
                                 evidence=evidence, disclaimer=DISCLAIMER)
    exps = {cert.a for _, cert in per_prime}
    if len(exps) != 1:
        return SplitSearchResult(False, None,
                                 reason="exponent vectors disagree across primes",
                                 evidence=evidence, disclaimer=DISCLAIMER)
    a = per_prime[0][1].a
    k = per_prime[0][1].k
    nvars = cover.n + 1
    qbasis = monomials_of_degree(nvars, k - cover.l) if k >= cover.l else []
    moduli = [p for p, _ in per_prime]
    # per-prime sign normalization may disagree with the global sign, so
    # try every relative sign pattern (first prime's sign fixed)
    for signs in itertools.product((1, -1), repeat=len(per_prime) - 1):
        signs = (1,) + signs
        q_candidate = _reconstruct_q(per_prime, signs, qbasis, moduli, nvars)
        if q_candidate is None:
            continue
        rhs = _basis_product(f, basis, a)
        root = formal_square_root(rhs + q_candidate * q_candidate * cover.F)
        if root is None:
            continue
        cert = SplitCertificate(root[0].sign_fixed(), q_candidate.sign_fixed(), a, k,
                                cover.field.one())
        if split_verify(cover, f, basis, cert):
            return SplitSearchResult(True, cert, evidence=evidence)
    return SplitSearchResult(False, None,
                             reason="rational reconstruction failed or candidate "
                                    "did not verify over Q",
                             evidence=evidence, disclaimer=DISCLAIMER)


def _reconstruct_q(per_prime, signs, qbasis, moduli, nvars):
    if not qbasis:
        return Polynomial.zero(nvars, CoefficientField())
    coeffs = []
    for idx, mono in enumerate(qbasis):
        residues = []
        for (p, cert), sign in zip(per_prime, signs):
            c = cert.q.terms.get(mono, 0)
            residues.append(c * sign % p)
        combined, modulus = crt(residues, moduli)
        value = rational_reconstruction(combined, modulus)
        if value is None:
            return None
        coeffs.append(value)
    return Polynomial({m: c for m, c in zip(qbasis, coeffs)}, nvars, CoefficientField())
