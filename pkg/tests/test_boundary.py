import pytest

from app.services.boundary_service import L_ROWS, BoundaryService
from app.models.variety import ProjectiveLine


@pytest.fixture(scope="module")
def incidence(F, group):
    return BoundaryService.boundary_incidence(F, group)


def test_incidence_counts(incidence):
    summary = incidence.summary()
    assert summary["lines"] == 45
    assert summary["cusps"] == 27
    assert summary["cusps_per_line"] == [3]
    assert summary["lines_per_cusp"] == [5]


def test_cusps_on_l(incidence):
    assert set(incidence.cusps_on_l) == {
        (1, 0, 0, 0, 0, 0),
        (1, 1, 0, 0, 0, 0),
        (1, -1, 0, 0, 0, 0),
    }
    assert ProjectiveLine.from_rows(L_ROWS) in incidence.lines


def test_cusps_are_weight_orbit(incidence):
    assert incidence.cusps_match_weight_orbit


def test_F_vanishes_on_boundary(incidence):
    assert incidence.f_vanishes_on_lines


def test_heisenberg_boundary():
    result = BoundaryService.heisenberg_boundary_check()
    assert result == {
        "intersection_dimension": 1,
        "is_line_l": True,
        "fixed_by_beta": True,
        "stable_under_gamma": True,
        "point_p_in_p5": True,
    }
