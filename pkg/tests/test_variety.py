from fractions import Fraction

import pytest

from app.core.polyring import MultiPoly, euler_operator
from app.models.variety import EXPECTED_M_CYCLES, even_characteristics
from app.models.weyl import GENERATOR_MATRICES, P5_VARIABLES, W3_COLUMNS
from app.services.quadric_service import QuadricService
from app.services.variety_service import (
    F_COEFFICIENT,
    VarietyService,
    plane_parametrization,
    q22_parametrization,
    transport,
)


def test_F_shape(F):
    assert len(F) == 147
    assert F.is_homogeneous()
    assert F.degree() == 10
    assert euler_operator(F) == F * 10


def test_F_vanishes_at_cusps(F):
    assert F.evaluate((1, 0, 0, 0, 0, 0)) == 0
    assert F.evaluate((1, 1, 0, 0, 0, 0)) == 0


def test_F_generator_invariance(F):
    assert VarietyService.verify_generator_invariance(F, GENERATOR_MATRICES) == (True, None)


@pytest.mark.slow
def test_F_invariant_under_group_sample(F, group):
    ok, failed = VarietyService.verify_group_invariance(F, group, range(0, group.order, 997))
    assert ok, failed


def test_F_in_terms_of_invariants(F, invariants):
    assert VarietyService.verify_invariant_identity(F, invariants) == F_COEFFICIENT
    assert VarietyService.single_monomial_ratio(F, invariants) == F_COEFFICIENT
    # outro coeficiente de I5² quebra a proporcionalidade
    assert VarietyService.verify_invariant_identity(F, invariants, i5_coefficient=4600) is None


def test_quotient_branch_components(F, invariants):
    result = VarietyService.quotient_branch_components(F, invariants)
    assert result["linear_in_I5_squared"]
    assert result["c"] == F_COEFFICIENT
    assert result["branch_degree"] == 8


def test_quadric_family(family):
    assert len(even_characteristics()) == 136
    assert len(family) == 136
    assert QuadricService.m_cycle_check()
    assert QuadricService.embedding_is_consistent()
    assert len(QuadricService.m_cycles()) == len(EXPECTED_M_CYCLES)
    assert QuadricService.m_invariant_characteristics(family) == [(0, 0)]


def test_quadric_terms_sign():
    terms = QuadricService.quadric_terms((0, 0))
    assert len(terms) == 16
    assert set(terms.values()) == {1}


@pytest.mark.parametrize(
    "point, expected",
    [((1, 0, 0, 0, 0, 0), 120), ((2, 7, 0, 0, 0, 0), 96)],
)
def test_vanishing_at_points(family, point, expected):
    assert QuadricService.vanishing_at_point(point, family) == expected


def test_vanishing_on_special_loci(family):
    assert QuadricService.quadric_vanishing_count(q22_parametrization(), family) == 36
    assert QuadricService.quadric_vanishing_count(plane_parametrization(W3_COLUMNS), family) == 28


def test_vanishing_on_translates(group, family):
    counts = VarietyService.translate_vanishing_counts(group, family, [1, 2, 3])
    assert counts == {"q22": [36] * 3, "w3": [28] * 3}


def test_transport_by_identity_is_noop(group):
    param = q22_parametrization()
    moved = transport(group.matrix(group.identity_index()), param)
    assert all(moved[k] == v for k, v in param.items())


def test_factor_on_A2_space(F):
    q22, f22 = VarietyService.factor_on_A2_space(F)
    assert q22.degree() == 2
    assert f22.degree() == 6


def test_factor_on_A1A1_space(F, octic):
    q67, s67, unit = VarietyService.factor_on_A1A1_space(F)
    assert q67.degree() == 2
    assert s67 == octic
    assert unit != 0


@pytest.mark.parametrize("pair", [("X1", "X2"), ("X1", "X3"), ("X2", "X3")])
def test_s67_singular_lines(octic, pair):
    assert VarietyService.s67_singular_line(octic, pair)


def test_q67_s67_conic(octic):
    result = VarietyService.q67_s67_conic_check(octic)
    assert result["ratio"] == Fraction(-1, 16)
    assert result["nonzero_pieces"] == 8
    assert result["sign_symmetric"]


def test_s67_double_plane(octic):
    assert all(VarietyService.s67_double_plane_check(octic).values())


def test_branch_locus_factorization():
    assert VarietyService.branch_locus_factorization() == {
        "product": True,
        "galois_swap": True,
        "common_points": True,
    }


def test_s22_birational():
    assert all(VarietyService.s22_birational_check().values())


def test_q36(F, group, family):
    result = VarietyService.q36_locate(F, group, family)
    assert result["degrees"] == (2, 8)
    assert result["vanishing_on_q36"] == 6
    assert result["vanishing_on_w_prime"] == 0


def test_igusa_hessian(F):
    result = VarietyService.igusa_hessian_identity(F)
    assert result["restricted_terms"] == 591
    assert result["ratio"] is not None


def test_singular_locus_members(F):
    assert VarietyService.singular_membership(F, q22_parametrization())
    assert VarietyService.singular_membership(F, plane_parametrization(W3_COLUMNS))
    assert VarietyService.generic_point_is_smooth(F, seed=7)


def test_smooth_point_must_lie_on_hypersurface():
    x = dict(zip(P5_VARIABLES, MultiPoly.generators(P5_VARIABLES)))
    conic = x["X0"] ** 2 - x["X1"] ** 2
    assert VarietyService.is_smooth_point(conic, (1, 1, 0, 0, 0, 0))
    assert not VarietyService.is_smooth_point(conic, (2, 1, 0, 0, 0, 0))
    assert not VarietyService.is_smooth_point(conic, (0, 0, 1, 0, 0, 0))


def test_sing_degree(F, group, class_members):
    result = VarietyService.sing_degree_accounting(F, group, class_members)
    assert result["quadrics"] == 120
    assert result["planes"] == 80
    assert result["degree"] == 320
    assert result["members_in_sing"]
    assert result["direct_grid_check"] is None
