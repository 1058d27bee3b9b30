import pytest
from hypothesis import given, settings

from splitcert import (
    CoefficientField,
    DegreeError,
    DoubleCover,
    MismatchError,
    Polynomial,
    QuadRingElement,
    conjugate,
    norm,
    parse,
    ring_mul,
)
from conftest import GF5, QQ, form_strategy


def elem(p_text, q_text, k, field=QQ):
    return QuadRingElement(parse(p_text, 3, field), parse(q_text, 3, field), k)


def test_cover_validation():
    with pytest.raises(DegreeError):
        DoubleCover(2, parse("x", 3, QQ), 1)  # odd degree
    with pytest.raises(DegreeError):
        DoubleCover(2, Polynomial.zero(3, QQ), 1)
    with pytest.raises(MismatchError):
        DoubleCover(3, parse("y^2 - x*z", 3, QQ), 1)  # wrong variable count


def test_t_squared_is_branch_equation(conic_cover):
    t = elem("0", "1", 1)
    sq = ring_mul(t, t, conic_cover)
    assert sq.p == conic_cover.F and sq.q.is_zero and sq.k == 2


def test_subring_multiplication(conic_cover):
    a = elem("x + y", "0", 1)
    b = elem("z", "0", 1)
    prod = ring_mul(a, b, conic_cover)
    assert prod.p == parse("x*z + y*z", 3, QQ) and prod.q.is_zero


def test_conjugate_product(conic_cover):
    a = elem("y", "1", 1)
    prod = ring_mul(a, conjugate(a), conic_cover)
    assert prod.p == parse("x*z", 3, QQ)
    assert prod.q.is_zero


def test_conjugate_involution():
    a = elem("y", "1", 1)
    assert conjugate(conjugate(a)) == a
    fixed = elem("x + z", "0", 1)
    assert conjugate(fixed) == fixed


def test_norm_examples(conic_cover):
    assert norm(elem("y", "1", 1), conic_cover) == parse("x*z", 3, QQ)
    assert norm(elem("x + y", "0", 1), conic_cover) == parse("x^2 + 2*x*y + y^2", 3, QQ)
    assert norm(elem("x*z + y^2", "y", 2), conic_cover) == \
        parse("x^2*z^2 + 3*x*y^2*z", 3, QQ)


def test_grade_validation(conic_cover):
    bad = elem("x^2", "1", 1)  # p not of degree k
    with pytest.raises(DegreeError):
        norm(bad, conic_cover)


def test_json_roundtrip():
    a = elem("x*z + y^2", "y", 2)
    data = a.to_json()
    assert data == {"p": "y^2 + x*z", "q": "y", "k": 2} or data["k"] == 2
    assert QuadRingElement.from_json(data, 3, QQ) == a


@settings(max_examples=60)
@given(form_strategy(3, 2, GF5), form_strategy(3, 1, GF5),
       form_strategy(3, 2, GF5), form_strategy(3, 1, GF5))
def test_norm_multiplicative_gf5(p1, q1, p2, q2):
    fld = GF5
    cover = DoubleCover(2, parse("y^2 - x*z", 3, fld), 1)
    a = QuadRingElement(p1, q1, 2)
    b = QuadRingElement(p2, q2, 2)
    assert norm(ring_mul(a, b, cover), cover) == norm(a, cover) * norm(b, cover)


@settings(max_examples=60)
@given(form_strategy(3, 2, QQ), form_strategy(3, 1, QQ))
def test_norm_matches_conjugate_product_q(p, q):
    cover = DoubleCover(2, parse("y^2 - x*z", 3, QQ), 1)
    a = QuadRingElement(p, q, 2)
    prod = ring_mul(a, conjugate(a), cover)
    assert prod.q.is_zero
    assert prod.p == norm(a, cover)


@settings(max_examples=40)
@given(form_strategy(3, 3, GF5), form_strategy(3, 2, GF5))
def test_norm_grading(p, q):
    cover = DoubleCover(2, parse("y^2 - x*z", 3, GF5), 1)
    n = norm(QuadRingElement(p, q, 3), cover)
    assert n.is_zero or (n.is_homogeneous() and n.degree() == 6)
