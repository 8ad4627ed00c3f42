import numpy as np
import pytest

from app.core.errors import ConvergenceError, InvalidSiegelPointError
from app.core.polyring import MultiPoly
from app.models.symplectic import M_MATRIX
from app.models.theta import (
    FixedLocus,
    SiegelPoint,
    ThetaChar,
    even_theta_characteristics,
    odd_theta_characteristics,
)
from app.models.weyl import P5_VARIABLES
from app.schemas.run_config import ThetaConfig
from app.services.theta_service import FIXING_MATRICES, ThetaService


def _profile(points, config):
    return ThetaService.vanishing_profile(points, config)


@pytest.fixture(scope="module")
def m_point():
    return ThetaService.sample_points(FixedLocus.M, 1, seed=11)[0]


def test_characteristic_counts():
    assert len(even_theta_characteristics()) == 136
    assert len(odd_theta_characteristics()) == 120


def test_characteristic_indices():
    ch = ThetaChar.from_indices(0b1010, 0b0011)
    assert ch.epsilon == (1, 0, 1, 0)
    assert ch.epsilon_prime == (0, 0, 1, 1)
    assert ch.indices == (0b1010, 0b0011)
    assert ch.parity == 1
    assert str(ch) == "[1010|0011]"
    with pytest.raises(ValueError):
        ThetaChar((0, 2), (0, 0))


def test_siegel_point_validation():
    with pytest.raises(InvalidSiegelPointError):
        SiegelPoint(np.zeros((4, 4)))
    with pytest.raises(InvalidSiegelPointError):
        SiegelPoint(1j * np.eye(2) + np.array([[0, 1], [0, 0]]))
    with pytest.raises(InvalidSiegelPointError):
        SiegelPoint(1j * np.ones((2, 3)))


def test_diagonal_point_factors(theta_config):
    n = np.arange(-20, 21)
    oracle = np.exp(-np.pi * n ** 2).sum() ** 4
    value = ThetaService.theta_value(ThetaChar.from_indices(0, 0), SiegelPoint(1j * np.eye(4)), config=theta_config)
    assert value == pytest.approx(oracle, abs=1e-12)
    assert oracle == pytest.approx(1.3932, abs=1e-4)


def test_truncation_too_small_raises():
    config = ThetaConfig(truncation=2, tolerance=1e-8)
    with pytest.raises(ConvergenceError):
        ThetaService.theta_value(ThetaChar.from_indices(0, 0), SiegelPoint(0.02j * np.eye(4)), config=config)


def test_genus_mismatch_raises(theta_config):
    with pytest.raises(ValueError):
        ThetaService.theta_value(ThetaChar.from_indices(0, 0, genus=2), SiegelPoint(1j * np.eye(4)), config=theta_config)


def test_odd_thetanulls_vanish(m_point, theta_config):
    assert ThetaService.parity_residual(m_point, theta_config) < 1e-12


def test_theta_parity_in_z(m_point, theta_config):
    z = np.array([0.1, -0.05 + 0.02j, 0.03, 0.07j])
    for ch in [ThetaChar.from_indices(0b1000, 0b1000), ThetaChar.from_indices(0b1100, 0b0011)]:
        plus = ThetaService.theta_value(ch, m_point, z, theta_config)
        minus = ThetaService.theta_value(ch, m_point, -z, theta_config)
        assert minus == pytest.approx((-1) ** ch.parity * plus, rel=1e-9)


def test_hermite_point_is_fixed():
    tau = ThetaService.sample_hermite_point(1j * np.eye(2))
    assert ThetaService.is_fixed(M_MATRIX, tau)
    assert tau.genus == 4


@pytest.mark.parametrize("tag", list(FixedLocus))
def test_sampled_points_fixed(tag):
    points = ThetaService.sample_points(tag, 2, seed=3)
    assert len(points) == 2
    for tau in points:
        for matrix in FIXING_MATRICES[tag].values():
            assert ThetaService.is_fixed(matrix, tau)


def test_m_mb_requires_symmetric_parameter():
    with pytest.raises(InvalidSiegelPointError):
        ThetaService.sample_fixed_locus(FixedLocus.M_MB, params=1j * np.eye(2) + np.array([[0, 0.1], [0, 0]]))


def test_theta_map_lands_on_variety(F, theta_config):
    points = ThetaService.sample_points(FixedLocus.M, 3, seed=5)
    result = ThetaService.bridge_check(F, points, theta_config)
    assert result["samples"] == 3
    assert result["triple_residual"] < theta_config.tolerance
    assert result["f_residual"] < theta_config.tolerance


def test_bridge_residual_is_relative(theta_config):
    x0 = MultiPoly.generators(P5_VARIABLES)[0]
    points = ThetaService.sample_points(FixedLocus.M, 2, seed=5)
    result = ThetaService.bridge_check(x0 ** 10, points, theta_config)
    assert result["f_residual"] == pytest.approx(1.0)


def test_m_mb_and_m12_images(theta_config):
    mb = [ThetaService.theta_map_P5(t, theta_config) for t in ThetaService.sample_points(FixedLocus.M_MB, 2, seed=8)]
    assert ThetaService.coordinate_residual(mb, [(4, 5)]) < theta_config.tolerance
    m12 = [ThetaService.theta_map_P5(t, theta_config) for t in ThetaService.sample_points(FixedLocus.M12, 2, seed=9)]
    assert ThetaService.coordinate_residual(m12, [(1, 2), (4, 5)]) < theta_config.tolerance


def test_mc_forced_vanishing(theta_config):
    forced = ThetaService.mc_forced_vanishing()
    assert len(forced) == 6
    assert all(ThetaService.mc_permutation(ch) == ch for ch in forced)
    tau = ThetaService.sample_points(FixedLocus.M12, 1, seed=4)[0]
    values = ThetaService.theta_constants(tau, even_theta_characteristics(), theta_config)
    scale = max(abs(v) for v in values.values())
    assert max(abs(values[ch]) for ch in forced) < theta_config.tolerance * scale


def test_generic_profile(m_point, theta_config):
    profile = _profile(m_point, theta_config)
    assert profile.vanishing == 0
    assert profile.classification == "generic"


def test_product_profiles(theta_config):
    pr = ThetaService.sample_points(FixedLocus.M_PR, 1, seed=2)[0]
    assert _profile(pr, theta_config).vanishing == 36

    t1 = SiegelPoint(np.array([[0.1 + 1.1j]]))
    t3 = SiegelPoint(1j * np.eye(3) + 0.15 * np.array([[1, 0.3, 0.2], [0.3, 1, 0.1], [0.2, 0.1, 1]]))
    elliptic = _profile(SiegelPoint.block_diagonal(t1, t3), theta_config)
    assert elliptic.vanishing == 28
    assert elliptic.summary()["classification"] == "elliptic x threefold"

    t2 = SiegelPoint(np.array([[1.2j, 0.3 + 0.2j], [0.3 + 0.2j, 0.1 + 1.0j]]))
    t2b = SiegelPoint(np.array([[0.2 + 0.9j, -0.1 + 0.1j], [-0.1 + 0.1j, 1.3j]]))
    assert _profile(SiegelPoint.block_diagonal(t2, t2b), theta_config).vanishing == 36


def test_quadric_relation(m_point, theta_config):
    assert ThetaService.quadric_relation_check(m_point, theta_config) < theta_config.tolerance


def test_isogeny_diagram():
    result = ThetaService.isogeny_diagram_check()
    assert result["symbolic"]
    assert result["hermite"]
    assert result["numeric_residual"] < 1e-12
