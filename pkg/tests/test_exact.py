import math
from fractions import Fraction

import pytest

from app.core.errors import KernelRankError, SingularMatrixError
from app.core.exact import (
    OMEGA_COMPLEX,
    Cyclotomic,
    ExactMatrix,
    first_nonzero,
    integer_kernel,
    integer_kernel_of_rank,
)


def test_omega_satisfies_cyclotomic_relation():
    w = Cyclotomic.omega()
    assert w * w + w + 1 == 0
    assert w ** 3 == 1
    assert w * w == Cyclotomic.omega_bar()


def test_conjugation_and_norm():
    x = Cyclotomic(2, 3)
    assert x.conj() == Cyclotomic(-1, -3)
    assert x * x.conj() == x.norm()
    assert x.norm() == Fraction(7)
    assert x * x.inverse() == 1


def test_rational_embedding_and_hash():
    assert Cyclotomic(5) == 5
    assert Cyclotomic(Fraction(1, 2)) == Fraction(1, 2)
    assert hash(Cyclotomic(3)) == hash(Fraction(3))
    assert {Cyclotomic(3), Fraction(3)} == {Fraction(3)}


def test_complex_value():
    assert complex(Cyclotomic.omega()) == pytest.approx(OMEGA_COMPLEX)
    assert complex(Cyclotomic(-1, -2)) == pytest.approx(-1 - 2 * OMEGA_COMPLEX)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Cyclotomic(0).inverse()


def test_matrix_arithmetic():
    a = ExactMatrix([[1, 2], [3, 4]])
    b = ExactMatrix([[0, 1], [1, 0]])
    assert a @ b == ExactMatrix([[2, 1], [4, 3]])
    assert a + b - b == a
    assert a.transpose() == ExactMatrix([[1, 3], [2, 4]])
    assert a.trace() == 5
    assert a.determinant() == -2
    assert a @ a.inverse() == ExactMatrix.identity(2)
    assert b.power(2) == ExactMatrix.identity(2)


def test_singular_matrix_raises():
    with pytest.raises(SingularMatrixError):
        ExactMatrix([[1, 2], [2, 4]]).inverse()


def test_rref_rank_and_nullspace():
    m = ExactMatrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert m.rank() == 2
    kernel = m.nullspace()
    assert len(kernel) == 1
    assert all(x == 0 for x in m.apply(kernel[0]))


def test_matrix_over_cyclotomic_field():
    w = Cyclotomic.omega()
    m = ExactMatrix([[w, 0], [0, w.conj()]])
    assert m.determinant() == 1
    assert m.power(3) == ExactMatrix.identity(2)


def test_characteristic_polynomial():
    # matriz companheira de x² + x + 1
    m = ExactMatrix([[0, -1], [1, -1]])
    assert m.characteristic_polynomial() == [1, 1, 1]


def test_integer_kernel_is_saturated():
    basis = integer_kernel([[2, 4, 6]])
    assert len(basis) == 2
    for v in basis:
        assert 2 * v[0] + 4 * v[1] + 6 * v[2] == 0
    # saturado: mdc dos menores 2x2 da base igual a 1
    u, v = basis
    minors = [u[i] * v[j] - u[j] * v[i] for i, j in ((0, 1), (0, 2), (1, 2))]
    assert math.gcd(*minors) == 1


def test_integer_kernel_rank_error():
    with pytest.raises(KernelRankError):
        integer_kernel_of_rank([[1, 0], [0, 1]], 1)


def test_first_nonzero():
    assert first_nonzero((0, 0, Fraction(1, 2))) == 2
    assert first_nonzero((0, 0)) is None
