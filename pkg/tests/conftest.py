import random

import pytest
from hypothesis import strategies as st

from splitcert import CoefficientField, DoubleCover, Polynomial, monomials_of_degree, parse

QQ = CoefficientField()
GF5 = CoefficientField(5)
GF7 = CoefficientField(7)


def random_form(rng: random.Random, nvars: int, degree: int, field, height: int = 10,
                nonzero: bool = False) -> Polynomial:
    """Random homogeneous form with a seeded RNG (bulk oracle loops)."""
    while True:
        terms = {}
        for mono in monomials_of_degree(nvars, degree):
            if field.is_prime_field:
                c = rng.randrange(field.p)
            else:
                c = rng.randint(-height, height)
            if c:
                terms[mono] = c
        poly = Polynomial(terms, nvars, field)
        if not nonzero or not poly.is_zero:
            return poly


def form_strategy(nvars: int, degree: int, field, nonzero: bool = False):
    """hypothesis strategy for homogeneous forms of a fixed degree."""
    basis = monomials_of_degree(nvars, degree)
    if field.is_prime_field:
        coeff = st.integers(min_value=0, max_value=field.p - 1)
    else:
        coeff = st.integers(min_value=-8, max_value=8)
    vecs = st.lists(coeff, min_size=len(basis), max_size=len(basis))
    if nonzero:
        vecs = vecs.filter(lambda v: any(v))
    return vecs.map(lambda v: Polynomial.from_vector(v, basis, nvars, field))


@pytest.fixture
def conic_cover():
    """F = y^2 - xz over Q: branch conic of the P^1 x P^1 double plane."""
    return DoubleCover(2, parse("y^2 - x*z", 3, QQ), 1)


@pytest.fixture
def quartic_cover():
    """F = z^4 + x(x^3 + y^3 + xz^2) over Q: smooth plane quartic branch."""
    return DoubleCover(2, parse("z^4 + x^4 + x*y^3 + x^2*z^2", 3, QQ), 2)


def conic_cover_mod(p: int) -> DoubleCover:
    fld = CoefficientField(p)
    return DoubleCover(2, parse("y^2 - x*z", 3, fld), 1)


def quartic_cover_mod(p: int) -> DoubleCover:
    fld = CoefficientField(p)
    return DoubleCover(2, parse("z^4 + x^4 + x*y^3 + x^2*z^2", 3, fld), 2)
