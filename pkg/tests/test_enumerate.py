import pytest

from splitcert import (
    CoefficientField,
    DoubleCover,
    SpsBasis,
    divide_exact,
    enumerate_sps_degree,
    enumerate_sps_lines,
    parse,
    split_search,
    split_verify,
    sps_verify,
)
from splitcert.enum_sps import projective_representatives
from conftest import conic_cover_mod, quartic_cover_mod


def test_representatives_count_and_normalization():
    reps = list(projective_representatives(3, 1, CoefficientField(5)))
    assert len(reps) == 31  # (5^3 - 1) / 4
    assert len({str(r) for r in reps}) == 31
    assert all(r.leading()[1] == 1 for r in reps)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_conic_tangent_line_count(p):
    enum = enumerate_sps_lines(conic_cover_mod(p))
    assert enum.searched_count == p * p + p + 1
    assert len(enum.hits) == p + 1
    assert not enum.warnings


def test_line_hits_verify_and_match_degree_path():
    cover = conic_cover_mod(5)
    by_lines = enumerate_sps_lines(cover)
    by_degree = enumerate_sps_degree(cover, 1)
    assert {str(h.f) for h in by_lines.hits} == {str(h.f) for h in by_degree.hits}
    line_certs = {str(h.f): h.certificate for h in by_lines.hits}
    for hit in by_degree.hits:
        assert sps_verify(cover, hit.f, hit.certificate)
        # both paths canonicalize, so the certificates agree exactly
        assert hit.certificate == line_certs[str(hit.f)]


def test_quartic_enumeration_includes_bitangent():
    cover = quartic_cover_mod(7)
    enum = enumerate_sps_lines(cover)
    hits = {str(h.f) for h in enum.hits}
    assert "x" in hits
    for hit in enum.hits:
        assert sps_verify(cover, hit.f, hit.certificate)


def test_non_reduced_branch_warns_and_every_line_hits():
    fld = CoefficientField(5)
    conic = parse("y^2 - x*z", 3, fld)
    cover = DoubleCover(2, conic * conic, 2)
    enum = enumerate_sps_lines(cover)
    assert any("square-free" in w for w in enum.warnings)
    # F = C^2 restricts to a square on every line
    assert len(enum.hits) == enum.searched_count == 31


def test_singular_conic_warning():
    fld = CoefficientField(5)
    cover = DoubleCover(2, parse("x*z", 3, fld), 1)
    enum = enumerate_sps_lines(cover)
    assert any("singular" in w for w in enum.warnings)


def test_hits_split_with_themselves_as_basis():
    cover = conic_cover_mod(7)
    enum = enumerate_sps_lines(cover)
    tangent = next(h for h in enum.hits if not h.in_branch)
    basis = SpsBasis.from_polys([tangent.f], cover=cover)
    res = split_search(cover, tangent.f, basis, 2, 2)
    assert res.found
    assert split_verify(cover, tangent.f, basis, res.certificate)


def test_degree_two_needs_override_on_conic_cover():
    cover = conic_cover_mod(3)
    with pytest.raises(ValueError):
        enumerate_sps_degree(cover, 2)
    enum = enumerate_sps_degree(cover, 2, allow_over_bound=True)
    hits = {str(h.f) for h in enum.hits}
    # the branch conic itself is always an SPS divisor (F = 0^2 + F * 1)
    assert str(cover.F.normalize()) in hits
    branch = next(h for h in enum.hits if str(h.f) == str(cover.F.normalize()))
    assert branch.in_branch


def test_reducible_hits_are_flagged():
    cover = quartic_cover_mod(3)
    enum = enumerate_sps_degree(cover, 2)
    line_hits = [h.f for h in enumerate_sps_lines(cover).hits]
    for hit in enum.hits:
        divisible = any(divide_exact(hit.f, line) is not None for line in line_hits)
        assert hit.visibly_reducible == divisible


def test_enumeration_requires_finite_field(conic_cover):
    with pytest.raises(ValueError):
        enumerate_sps_lines(conic_cover)


def test_candidate_guard():
    from splitcert.util import CostGuardError

    cover = conic_cover_mod(11)
    with pytest.raises(CostGuardError):
        enumerate_sps_lines(cover, max_candidates=10)
