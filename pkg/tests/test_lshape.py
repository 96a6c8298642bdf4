"""Tests for admissible L-shaped parameters and the exclusion engine."""

from fractions import Fraction as F

import pytest

from torsion_packet.exactnum import QuadraticElem
from torsion_packet.lshape import (
    AdmissibleTriple,
    enumerate_triples,
    exclude_against_table1,
    is_admissible,
    make_triple,
    matching_triples_for,
    trace_norm_lambda_plus_one,
    unit_case_triples,
)
from torsion_packet.tanratio import RationalAngle, normalized_nonunit_rows, ratio


def test_admissibility_conditions():
    assert is_admissible(1, -1) and is_admissible(2, 0) and is_admissible(4, 1)
    assert not is_admissible(1, 0)  # e + 1 < b fails
    assert not is_admissible(5, 1)  # odd b with e = 1
    assert not is_admissible(3, 2)  # e out of range


def test_enumerate_smallest_cases():
    triples = [(t.b, t.e) for t in enumerate_triples(2)]
    assert triples == [(1, -1), (2, -1), (2, 0)]


def test_pentagon_and_octagon_lambdas():
    pentagon = make_triple(1, -1)
    octagon = make_triple(2, 0)
    assert pentagon.lam == QuadraticElem(F(-1, 2), F(1, 2), 5)
    assert octagon.lam == QuadraticElem(0, 1, 2)


def test_lambda_satisfies_its_quadratic():
    for t in enumerate_triples(50):
        assert t.lam * t.lam == t.e * t.lam + t.b
        assert t.lam.sign() == 1


def test_rational_lambda_case():
    # e = 0, b = 4 has square discriminant 16, so lambda = 2.
    t = make_triple(4, 0)
    assert t.lam == 2


def test_trace_norm_examples():
    assert trace_norm_lambda_plus_one(make_triple(1, -1)) == (1, -1)
    assert trace_norm_lambda_plus_one(make_triple(2, 0)) == (2, -1)
    assert trace_norm_lambda_plus_one(make_triple(4, 1)) == (3, -2)
    with pytest.raises(ValueError):
        make_triple(5, 1)


def test_trace_norm_closed_form_matches_field_arithmetic():
    for t in enumerate_triples(60):
        trace, norm = trace_norm_lambda_plus_one(t)
        lam1 = t.lam + 1
        if not t.lam.is_rational():
            # quadratic-field trace/norm agree with the defining-quadratic frame
            assert lam1.trace() == trace and lam1.norm() == norm
        assert lam1 + (t.e - t.lam + 1) == trace
        assert lam1 * (t.e - t.lam + 1) == norm
        assert trace in (1, 2, 3) and norm <= -1


def test_unit_case_is_pentagon_and_octagon_only():
    # exhaustively over small bounds, then spot checks at larger ones
    for b_max in range(3, 200):
        assert [(t.b, t.e) for t in unit_case_triples(b_max)] == [(1, -1), (2, 0)]
    for b_max in (1000, 10_000):
        assert [(t.b, t.e) for t in unit_case_triples(b_max)] == [(1, -1), (2, 0)]


def test_unit_case_large_bound():
    assert [(t.b, t.e) for t in unit_case_triples(10**6)] == [(1, -1), (2, 0)]


def test_unit_case_bound_validation():
    with pytest.raises(ValueError):
        unit_case_triples(2)


# --------------------------------------------------------------------------
# exclusion engine


def test_sqrt5_row_is_excluded_on_trace():
    row = ratio(RationalAngle.of(1, 10), RationalAngle.of(1, 5))
    verdict = exclude_against_table1(row)
    assert verdict.excluded and not verdict.matching_triples
    assert [str(c.trace) for c in verdict.candidates_checked] == ["0", "0", "0", "0"]
    inv_norms = {c.label: c.norm for c in verdict.candidates_checked}
    assert inv_norms["1/mu"] == F(-1, 5)


def test_trace_two_candidate_fails_on_norm():
    row = ratio(RationalAngle.of(1, 10), RationalAngle.of(2, 5))
    verdict = exclude_against_table1(row)
    assert verdict.excluded
    by_label = {c.label: c for c in verdict.candidates_checked}
    assert by_label["1/mu"].trace == 2
    assert by_label["1/mu"].norm == F(1, 5)
    assert by_label["1/mu"].reason == "norm not an integer"
    assert {by_label[l].reason for l in ("mu", "-mu", "-1/mu")} == {"trace not in {1,2,3}"}


def test_all_reference_rows_excluded():
    rows = normalized_nonunit_rows(12)
    assert len(rows) == 9
    for row in rows:
        assert exclude_against_table1(row).excluded


def test_exclusion_rejects_wrong_degree_or_units():
    with pytest.raises(ValueError, match="degree-2"):
        exclude_against_table1(ratio(RationalAngle.of(1, 6), RationalAngle.of(1, 3)))
    with pytest.raises(ValueError, match="non-unit"):
        exclude_against_table1(ratio(RationalAngle.of(1, 12), RationalAngle.of(1, 4)))


def test_engine_sensitivity_to_norm_mutation():
    # A trace-compatible synthetic mutation must produce a match: trace 2
    # with norm -1 corresponds to the octagon parameters.
    assert [(t.b, t.e) for t in matching_triples_for(F(2), F(-1), 100)] == [(2, 0)]
    assert [(t.b, t.e) for t in matching_triples_for(F(1), F(-1), 100)] == [(1, -1)]
    # 1 + sqrt(2) has trace 2, norm -1: the engine reports a match,
    # so the nine exclusions above are not vacuous.
    verdict = exclude_against_table1(QuadraticElem(1, 1, 2))
    assert not verdict.excluded
    assert [(t.b, t.e) for t in verdict.matching_triples] == [(2, 0)]


def test_matching_requires_admissibility():
    assert matching_triples_for(F(3), F(-2), 100) == [make_triple(4, 1)]
    assert matching_triples_for(F(3), F(-1), 100) == []  # b = 3 odd with e = 1
    assert matching_triples_for(F(2), F(1, 5), 100) == []  # non-integral norm
    assert matching_triples_for(F(4), F(-1), 100) == []  # trace out of range
    assert matching_triples_for(F(2), F(-70), 20) == []  # b exceeds the bound


def test_candidate_set_closed_under_inversion():
    rows = normalized_nonunit_rows(12)
    for row in rows:
        mu = row.mu_as_quadratic()
        v1 = exclude_against_table1(mu)
        v2 = exclude_against_table1(mu.inverse())
        assert v1.excluded == v2.excluded
        vals1 = {(c.trace, c.norm) for c in v1.candidates_checked}
        vals2 = {(c.trace, c.norm) for c in v2.candidates_checked}
        assert vals1 == vals2


def test_triple_construction_validation():
    with pytest.raises(ValueError):
        make_triple(1, 0)
    with pytest.raises(ValueError):
        AdmissibleTriple(2, 0, QuadraticElem(0, 1, 3))  # wrong lambda
