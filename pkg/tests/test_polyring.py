from fractions import Fraction

import pytest

from app.core.errors import MissingAssignmentError, VariableMismatchError
from app.core.exact import Cyclotomic
from app.core.polyring import (
    MultiPoly,
    SubstitutionMap,
    coefficient_matrix,
    elementary_symmetric,
    euler_operator,
    exact_divide,
    hessian_det,
    linear_substitution,
    proportionality_factor,
    quadratic_form_rank,
)

XYZ = ("x", "y", "z")


@pytest.fixture
def xyz():
    return MultiPoly.generators(XYZ)


def test_arithmetic_and_term_count(xyz):
    x, y, z = xyz
    p = (x + y) ** 2
    assert len(p) == 3
    assert p.coefficient((1, 1, 0)) == 2
    assert p - x ** 2 - y ** 2 == x * y * 2
    assert (x - x).is_zero()
    assert (x - x) == 0


def test_degree_and_homogeneity(xyz):
    x, y, z = xyz
    p = x ** 3 * y + z ** 4
    assert p.degree() == 4
    assert p.is_homogeneous()
    assert not (p + x).is_homogeneous()
    assert p.degree_in("x") == 3
    assert p.used_variables() == XYZ


def test_mismatched_variables_raise():
    a = MultiPoly.variable(("a", "b"), "a")
    x = MultiPoly.variable(XYZ, "x")
    with pytest.raises(VariableMismatchError):
        a + x


def test_cyclotomic_coefficients(xyz):
    x, y, _ = xyz
    w = Cyclotomic.omega()
    p = (x + y.scale(w)) * (x + y.scale(w.conj()))
    # (x + ωy)(x + ω̄y) = x² - xy + y²
    assert p == x ** 2 - x * y + y ** 2
    assert (x + y.scale(w)).conj() == x + y.scale(w.conj())


def test_derivative_and_euler(xyz):
    x, y, z = xyz
    p = x ** 2 * y ** 3 + z ** 5
    assert p.derivative("y") == x ** 2 * y ** 2 * 3
    assert euler_operator(p) == p * 5


def test_evaluate(xyz):
    x, y, z = xyz
    p = x * y + z * Fraction(1, 2)
    assert p.evaluate((2, 3, 4)) == 8
    assert p.evaluate({"x": 1, "y": 1, "z": 0}) == 1
    with pytest.raises(MissingAssignmentError):
        p.evaluate({"x": 1})


def test_substitution_map(xyz):
    x, y, z = xyz
    s, t = MultiPoly.generators(("s", "t"))
    mapping = SubstitutionMap({"x": s * s, "y": s * t, "z": t * t})
    # a cônica xz - y² se anula na parametrização de Veronese
    assert mapping(x * z - y ** 2).is_zero()
    with pytest.raises(MissingAssignmentError):
        SubstitutionMap({"x": s}, ("s", "t"))(x + y)


def test_linear_substitution_with_fractions(xyz):
    x, y, z = xyz
    p = x ** 2 + y ** 2
    half = Fraction(1, 2)
    swap = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    assert linear_substitution(p, swap) == p
    scaled = linear_substitution(p, [[half, 0, 0], [0, half, 0], [0, 0, 1]])
    assert scaled == p * Fraction(1, 4)


def test_exact_divide(xyz):
    x, y, z = xyz
    q = x * z - y ** 2
    f = q ** 2 * (x + z)
    assert exact_divide(f, q) == q * (x + z)
    assert exact_divide(f, q ** 2) == x + z
    assert exact_divide(x ** 2 + y, x) is None


def test_proportionality_factor(xyz):
    x, y, _ = xyz
    p = x ** 2 - y ** 2
    assert proportionality_factor(p * Fraction(-2, 3), p) == Fraction(-2, 3)
    assert proportionality_factor(p, x ** 2 + y ** 2) is None


def test_elementary_symmetric():
    names = ("a", "b", "c", "d")
    assert len(elementary_symmetric(2, names)) == 6
    assert elementary_symmetric(4, names) == MultiPoly(names, {(1, 1, 1, 1): 1})
    assert elementary_symmetric(1, names, power=2).degree() == 2


def test_hessian_of_quadric(xyz):
    x, y, z = xyz
    # Hessiana de x² + y² + z² é 2·I, determinante 8
    assert hessian_det(x ** 2 + y ** 2 + z ** 2, XYZ) == 8


def test_quadratic_form_rank(xyz):
    x, y, z = xyz
    assert quadratic_form_rank(x * z - y ** 2) == 3
    assert quadratic_form_rank((x + y) ** 2) == 1


def test_coefficient_matrix_rank(xyz):
    x, y, _ = xyz
    assert coefficient_matrix([x ** 2, y ** 2, x ** 2 + y ** 2]).rank() == 2
