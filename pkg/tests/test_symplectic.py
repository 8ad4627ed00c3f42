import numpy as np
import pytest

from app.core.errors import NotInCentralizerError, NotSymplecticError
from app.core.exact import Cyclotomic
from app.models.symplectic import (
    EXPECTED_PLACEMENT,
    M12_MATRIX,
    M_B_MATRIX,
    M_C_MATRIX,
    M_D_MATRIX,
    M_IP_MATRIX,
    M_MATRIX,
    M_PR_MATRIX,
    NAMED_MATRICES,
    GaussianLatticeVector,
    SympMatrix,
    heisenberg_matrix,
    matrices_to_text,
    named_matrix,
)
from app.services.symplectic_service import (
    CENTRALIZER,
    NORMALIZER_ONLY,
    U4_F4_ORDER,
    SymplecticService,
)


@pytest.mark.parametrize("name", sorted(NAMED_MATRICES))
def test_named_matrices_are_symplectic(name):
    assert SymplecticService.is_symplectic(NAMED_MATRICES[name])


def test_placement_in_normalizer():
    for name, (expected, actual) in SymplecticService.placement_table().items():
        assert expected == actual, name
    assert SymplecticService.classify_normalizer(M_B_MATRIX) == NORMALIZER_ONLY
    assert SymplecticService.classify_normalizer(M_C_MATRIX) == CENTRALIZER
    assert set(EXPECTED_PLACEMENT) <= set(NAMED_MATRICES)


def test_non_symplectic_matrix_is_rejected():
    doubled = SympMatrix.from_array(2 * np.eye(8, dtype=np.int64))
    with pytest.raises(NotSymplecticError):
        SymplecticService.classify_normalizer(doubled)


def test_conjugation_identities():
    results = SymplecticService.conjugation_identities()
    assert results
    assert all(results.values())


def test_m_is_order_three():
    assert SymplecticService.matrix_order(M_MATRIX) == 3
    assert SymplecticService.matrix_order(M12_MATRIX) == 12
    assert M_MATRIX.power(3).is_identity()
    assert M_MATRIX.inverse() == M_MATRIX.power(2)


def test_hermitian_gram_is_diagonal():
    gram = SymplecticService.hermitian_gram()
    values = [[Cyclotomic.coerce(x) for x in row] for row in gram.rows]
    expected = [1, 1, -1, -1]
    for i in range(4):
        for j in range(4):
            assert values[i][j] == Cyclotomic(expected[i] if i == j else 0, 0)


def test_alternating_form_on_standard_basis():
    e1 = GaussianLatticeVector.basis(1)
    e5 = GaussianLatticeVector.basis(5)
    assert SymplecticService.alternating_form(e1, e5) == -SymplecticService.alternating_form(e5, e1)
    assert abs(SymplecticService.alternating_form(e1, e5)) == 1
    assert SymplecticService.alternating_form(e1, e1) == 0


def test_fixed_sublattices():
    assert len(SymplecticService.fixed_sublattice(M_PR_MATRIX)) == 4
    assert SymplecticService.fixed_sublattice_det(M_PR_MATRIX) == 1
    assert SymplecticService.fixed_sublattice_det(M_IP_MATRIX) == 9


def test_level_two_four_cosets():
    assert SymplecticService.in_gamma_2_4(M_IP_MATRIX @ M_PR_MATRIX.inverse())
    assert SymplecticService.in_gamma_2_4(M_D_MATRIX @ M_C_MATRIX.inverse())
    assert not SymplecticService.in_gamma_2(M_MATRIX)


def test_heisenberg_generators_level():
    for beta in [(1, 0, 0, 0), (0, 0, 1, 0)]:
        m = heisenberg_matrix(beta=beta)
        assert SymplecticService.in_gamma_2(m)
        assert not SymplecticService.in_gamma_2_4(m)
    with pytest.raises(ValueError):
        heisenberg_matrix(beta=(1, 0, 0, 0), gamma=(1, 0, 0, 0))


def test_gaussian_matrix_requires_centralizer():
    with pytest.raises(NotInCentralizerError):
        SymplecticService.gaussian_matrix(M_B_MATRIX)
    assert SymplecticService.reduce_to_unitary(M_MATRIX).is_unitary()


def test_unitary_closure_order():
    assert SymplecticService.unitary_closure() == U4_F4_ORDER


def test_matrices_to_text_and_unknown_name():
    text = matrices_to_text(["M", "M_C"])
    assert "[M]" in text and "[M_C]" in text
    with pytest.raises(KeyError):
        named_matrix("M_zz")
