import random

import pytest

from splitcert import (
    CoefficientField,
    DegreeError,
    DoubleCover,
    Polynomial,
    SplitCertificate,
    SpsBasis,
    divide_exact,
    norm,
    parse,
    split_search,
    split_verify,
    witness_element,
)
from splitcert.splitting import HypothesisError
from conftest import GF5, GF7, QQ, conic_cover_mod, quartic_cover_mod, random_form


def conic_basis(field):
    return SpsBasis.from_polys([parse("x", 3, field), parse("z", 3, field)])


# ----------------------------------------------------------------------
# verification


def test_verify_hand_construction(conic_cover):
    basis = conic_basis(QQ)
    f = parse("x*z + 3*y^2", 3, QQ)
    cert = SplitCertificate(parse("x*z + y^2", 3, QQ), parse("y", 3, QQ), (1, 1), 2)
    assert split_verify(conic_cover, f, basis, cert)


def test_verify_sps_line_splits(conic_cover):
    basis = conic_basis(QQ)
    cert = SplitCertificate(parse("y", 3, QQ), parse("1", 3, QQ), (0, 1), 1)
    assert split_verify(conic_cover, parse("x", 3, QQ), basis, cert)


def test_verify_wrong_exponents_fail(conic_cover):
    basis = conic_basis(QQ)
    cert = SplitCertificate(parse("y", 3, QQ), parse("1", 3, QQ), (1, 0), 1)
    assert not split_verify(conic_cover, parse("x", 3, QQ), basis, cert)


def test_verify_degree_bookkeeping(conic_cover):
    basis = conic_basis(QQ)
    with pytest.raises(DegreeError):
        split_verify(conic_cover, parse("x", 3, QQ), basis,
                     SplitCertificate(parse("y", 3, QQ), parse("1", 3, QQ), (0, 2), 1))
    with pytest.raises(DegreeError):
        split_verify(conic_cover, parse("x", 3, QQ), basis,
                     SplitCertificate(parse("y", 3, QQ), parse("1", 3, QQ), (0, 1, 0), 1))


def test_witness_element(conic_cover):
    basis = conic_basis(QQ)
    f = parse("x*z + 3*y^2", 3, QQ)
    cert = SplitCertificate(parse("x*z + y^2", 3, QQ), parse("y", 3, QQ), (1, 1), 2)
    w = witness_element(cert)
    assert w.p == cert.p and w.q == cert.q and w.k == 2
    expected = f * parse("x", 3, QQ) * parse("z", 3, QQ)
    assert norm(w, conic_cover) == expected


# ----------------------------------------------------------------------
# finite-field search


def test_search_rediscovers_certificate():
    cover = conic_cover_mod(7)
    fld = cover.field
    f = parse("x*z + 3*y^2", 3, fld)
    res = split_search(cover, f, conic_basis(fld), max_exp_sum=2, max_k=3)
    assert res.found
    assert split_verify(cover, f, conic_basis(fld), res.certificate)


def test_search_sps_line():
    cover = conic_cover_mod(7)
    fld = cover.field
    res = split_search(cover, parse("x", 3, fld), conic_basis(fld), 2, 2)
    assert res.found
    # minimal certificate: x*z = y^2 - F is a norm with a = (0, 1)
    assert res.certificate.a == (0, 1)
    assert res.certificate.p == parse("y", 3, fld)


@pytest.mark.parametrize("p", [5, 7])
def test_non_tangent_line_does_not_split(p):
    cover = conic_cover_mod(p)
    fld = cover.field
    res = split_search(cover, parse("y", 3, fld), conic_basis(fld), 4, 4)
    assert not res.found
    assert "not proof" in res.disclaimer


def test_hypothesis_violation_rejected():
    cover = conic_cover_mod(7)
    fld = cover.field
    with pytest.raises(HypothesisError):
        split_search(cover, parse("x*z - y^2", 3, fld), conic_basis(fld), 2, 2)


def test_search_deterministic():
    cover = conic_cover_mod(7)
    fld = cover.field
    f = parse("x*z + 3*y^2", 3, fld)
    a = split_search(cover, f, conic_basis(fld), 2, 3)
    b = split_search(cover, f, conic_basis(fld), 2, 3)
    assert a.certificate == b.certificate


def test_conjugation_symmetry():
    cover = conic_cover_mod(7)
    fld = cover.field
    basis = conic_basis(fld)
    f = parse("x*z + 3*y^2", 3, fld)
    cert = SplitCertificate(parse("x*z + y^2", 3, fld), parse("y", 3, fld), (1, 1), 2)
    flipped = SplitCertificate(cert.p, -cert.q, cert.a, cert.k)
    assert split_verify(cover, f, basis, cert)
    assert split_verify(cover, f, basis, flipped)
    res = split_search(cover, f, basis, 2, 3)
    lead = res.certificate.q.leading()[1] if not res.certificate.q.is_zero else 1
    assert fld.in_canonical_half(lead)


# ----------------------------------------------------------------------
# round-trip oracle: norms restricted to the basis always verify


@pytest.mark.parametrize("p,l", [(5, 1), (7, 1), (5, 2), (7, 2)])
def test_norm_round_trip(p, l):
    fld = CoefficientField(p)
    cover = conic_cover_mod(p) if l == 1 else quartic_cover_mod(p)
    basis = conic_basis(fld)
    rng = random.Random(31 * p + l)
    checked = 0
    for _ in range(120):
        k = rng.randint(l, 3)
        pp = random_form(rng, 3, k, fld, nonzero=True)
        qq = random_form(rng, 3, k - l, fld)
        n = pp * pp - qq * qq * cover.F
        if n.is_zero:
            continue
        residual, exponents = n, []
        for g in basis.polys:
            e = 0
            while True:
                quotient = divide_exact(residual, g)
                if quotient is None:
                    break
                residual, e = quotient, e + 1
            exponents.append(e)
        if residual.degree() == 0 or not residual.is_homogeneous():
            continue
        if divide_exact(cover.F, residual) is not None:
            continue
        cert = SplitCertificate(pp, qq, tuple(exponents), k)
        assert split_verify(cover, residual, basis, cert)
        checked += 1
    assert checked > 30


# ----------------------------------------------------------------------
# Q path: multi-prime lifting


def test_lifting_over_q(conic_cover):
    basis = conic_basis(QQ)
    f = parse("x*z + 3*y^2", 3, QQ)
    res = split_search(conic_cover, f, basis, 2, 3)
    assert res.found
    assert split_verify(conic_cover, f, basis, res.certificate)
    assert len(res.evidence) == 3


def test_lifting_rational_coefficients(conic_cover):
    # y^2 - (1/2)^2 (y^2 - xz) = (3/4) y^2 + (1/4) xz, so the minimal
    # certificate for this conic has q = 1/2 and forces genuine rational
    # reconstruction from the residues mod the working primes
    basis = conic_basis(QQ)
    f = parse("3/4*y^2 + 1/4*x*z", 3, QQ)
    res = split_search(conic_cover, f, basis, 2, 2)
    assert res.found
    cert = res.certificate
    assert split_verify(conic_cover, f, basis, cert)
    assert cert.a == (0, 0) and cert.q == parse("1/2", 3, QQ)


def test_lifting_negative_control(conic_cover):
    basis = conic_basis(QQ)
    res = split_search(conic_cover, parse("y", 3, QQ), basis, 4, 4)
    assert not res.found
    assert res.evidence  # per-prime records attached
    assert "not proof" in res.disclaimer
