import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from app.core.errors import IdentityFailure
from app.core.exact import Cyclotomic, ExactMatrix
from app.core.polyring import (
    MultiPoly,
    SubstitutionMap,
    coefficient_matrix,
    elementary_symmetric,
    exact_divide,
    hessian_det,
    linear_substitution,
    proportionality_factor,
)
from app.models.variety import QuadricFamily
from app.models.weyl import (
    FIVE_VARIABLES,
    G3_MATRIX,
    P5_VARIABLES,
    SIMPLE_ROOTS,
    W3_COLUMNS,
    GroupTable,
)
from app.services.quadric_service import QuadricService
from app.services.weyl_service import WeylService, subspace_canonical

logger = logging.getLogger(__name__)

V4 = ("X0", "X1", "X2", "X3")
W_PRIME_VARIABLES = ("X0", "X1", "X3", "X6")
BIHOMOGENEOUS = ("s", "t", "u", "v")
PLANE = ("p", "q", "r")
LINE = ("s", "t")
STEREO = ("x", "y", "z")
DOUBLE_PLANE = ("Z0", "Z1", "Z2", "T")

INVARIANT_DEGREES = (2, 5, 6, 8)
HESSE_DEGREES = (2, 5, 6, 8, 9, 12)
F_COEFFICIENT = Fraction(-2, 675)

Z_SUBSPACE_ROWS = (
    (1, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0),
    (0, 0, 1, 0, 0, 0),
    (0, 0, 0, 1, 1, 1),
)
W_PRIME_ROOTS = ((0, 0, 0, 0, 1, 1), (0, 0, 0, 0, 1, -1))


def _gens(variables: Sequence[str]) -> Dict[str, MultiPoly]:
    return dict(zip(variables, MultiPoly.generators(variables)))


@lru_cache(maxsize=1)
def build_F() -> MultiPoly:
    """F = F10 - X0X1X2X3X6X7·F4, com S_i = s_i(X1², X2², X3², X6², X7²)"""
    x = _gens(P5_VARIABLES)
    s = {i: elementary_symmetric(i, FIVE_VARIABLES, P5_VARIABLES, power=2) for i in range(1, 6)}
    x0 = x["X0"]
    f4 = s[1] ** 2 * -6 + s[2] * 16 + s[1] * x0 ** 2 * 4 + x0 ** 4 * 2
    f10 = (
        s[1] * s[2] ** 2
        - s[1] ** 2 * s[3] * 3
        + s[1] * s[4] * 12
        - s[5] * 48
        + (s[2] ** 2 * -1 + s[1] * s[3] * 2 + s[4] * 4) * x0 ** 2
        + s[3] * x0 ** 4
    )
    monomial = x["X0"] * x["X1"] * x["X2"] * x["X3"] * x["X6"] * x["X7"]
    poly = f10 - monomial * f4
    logger.debug(f"F construído com {len(poly)} termos")
    return poly


def q22_parametrization() -> Dict[str, MultiPoly]:
    """(su, sv, tu, tv, tv, tv): a quádrica X0X3 = X1X2 em Z"""
    g = _gens(BIHOMOGENEOUS)
    s, t, u, v = (g[n] for n in BIHOMOGENEOUS)
    return {"X0": s * u, "X1": s * v, "X2": t * u, "X3": t * v, "X6": t * v, "X7": t * v}


def plane_parametrization(columns: Sequence[Sequence]) -> Dict[str, MultiPoly]:
    """X = p·c1 + q·c2 + r·c3"""
    return {
        name: MultiPoly.linear_form(PLANE, [col[i] for col in columns])
        for i, name in enumerate(P5_VARIABLES)
    }


def transport(matrix: ExactMatrix, param: Mapping[str, MultiPoly]) -> Dict[str, MultiPoly]:
    """Parametrização de g·V a partir da de V"""
    coords = [param[name] for name in P5_VARIABLES]
    variables = coords[0].variables
    result = {}
    for i, name in enumerate(P5_VARIABLES):
        total = MultiPoly.zero(variables)
        for c, poly in zip(matrix.row(i), coords):
            if c != 0:
                total = total + poly.scale(c)
        result[name] = total
    return result


def restrict(poly: MultiPoly, assignments: Mapping[str, Any], target: Sequence[str]) -> MultiPoly:
    """Substituição de cada variável de P5 por um polinômio (ou constante) nas variáveis alvo"""
    full = {}
    for name in poly.variables:
        value = assignments.get(name, 0)
        full[name] = value if isinstance(value, MultiPoly) else MultiPoly.constant(target, value)
    return SubstitutionMap(full, target)(poly)


def stereographic_q67() -> Dict[str, MultiPoly]:
    """Parametrização racional de X0² = X1² + X2² + X3² a partir de (1:1:0:0)"""
    g = _gens(STEREO)
    x, y, z = g["x"], g["y"], g["z"]
    return {
        "X0": x ** 2 + y ** 2 + z ** 2,
        "X1": x ** 2 * -1 + y ** 2 + z ** 2,
        "X2": x * y * -2,
        "X3": x * z * -2,
    }


class VarietyService:

    @staticmethod
    def partials(poly: MultiPoly) -> List[MultiPoly]:
        return [poly.derivative(v) for v in poly.variables]

    @staticmethod
    def verify_generator_invariance(poly: MultiPoly, generators: Mapping[str, ExactMatrix]) -> Tuple[bool, Optional[str]]:
        """F(gX) = F(X) para cada gerador; devolve o primeiro que falha"""
        for name, g in generators.items():
            if linear_substitution(poly, g.rows) != poly:
                logger.error(f"F não é invariante pelo gerador {name}")
                return False, name
        return True, None

    @staticmethod
    def verify_group_invariance(poly: MultiPoly, group: GroupTable, indices: Sequence[int]) -> Tuple[bool, Optional[int]]:
        """Mesma verificação para elementos arbitrários da tabela"""
        for idx in indices:
            if linear_substitution(poly, group.matrix(idx).rows) != poly:
                return False, idx
        return True, None

    @staticmethod
    def invariants(group: GroupTable, degrees: Sequence[int] = INVARIANT_DEGREES) -> Dict[int, MultiPoly]:
        return WeylService.invariant_polynomials(group, degrees)

    @staticmethod
    def invariant_combination(invariants: Mapping[int, MultiPoly], i5_coefficient: int = 4608) -> MultiPoly:
        """11520 I8 I2 - 4160 I6 I2² - 4608 I5² + 25 I2⁵"""
        i2, i5, i6, i8 = (invariants[k] for k in (2, 5, 6, 8))
        return i8 * i2 * 11520 - i6 * i2 ** 2 * 4160 - i5 ** 2 * i5_coefficient + i2 ** 5 * 25

    @staticmethod
    def verify_invariant_identity(
        poly: MultiPoly,
        invariants: Mapping[int, MultiPoly],
        i5_coefficient: int = 4608,
    ) -> Optional[Fraction]:
        """Escalar c com F = c·(combinação dos I_k), ou None"""
        combination = VarietyService.invariant_combination(invariants, i5_coefficient)
        c = proportionality_factor(poly, combination)
        if c is None:
            logger.warning(f"F não é múltiplo da combinação (coeficiente de I5² = {i5_coefficient})")
        return c

    @staticmethod
    def single_monomial_ratio(poly: MultiPoly, invariants: Mapping[int, MultiPoly]) -> Fraction:
        """Razão no primeiro monômio (grlex) em que F não se anula"""
        combination = VarietyService.invariant_combination(invariants)
        exps, coeff = poly.leading_term()
        return Fraction(coeff) / Fraction(combination.coefficient(exps))

    @staticmethod
    def quotient_branch_components(poly: MultiPoly, invariants: Mapping[int, MultiPoly]) -> Dict[str, Any]:
        """F = c·(I2·B - 4608 I5²) com B = 11520 I8 - 4160 I6 I2 + 25 I2⁴"""
        i2, i5, i6, i8 = (invariants[k] for k in (2, 5, 6, 8))
        branch = i8 * 11520 - i6 * i2 * 4160 + i2 ** 4 * 25
        c = proportionality_factor(poly, i2 * branch - i5 ** 2 * 4608)
        return {
            "c": c,
            "components": ["I2", "11520*I8 - 4160*I6*I2 + 25*I2^4"],
            "branch_degree": branch.degree(),
            "linear_in_I5_squared": c is not None,
        }

    @staticmethod
    def factor_on_A2_space(poly: MultiPoly) -> Tuple[MultiPoly, MultiPoly]:
        """F(X0, X1, X2, X3, X3, X3) = q22²·f22"""
        g = _gens(V4)
        restricted = restrict(poly, {"X0": g["X0"], "X1": g["X1"], "X2": g["X2"], "X3": g["X3"], "X6": g["X3"], "X7": g["X3"]}, V4)
        q22 = g["X0"] * g["X3"] - g["X1"] * g["X2"]
        f22 = exact_divide(restricted, q22 ** 2)
        if f22 is None:
            raise IdentityFailure("F restrito a Z não é divisível por q22²")
        return q22, f22

    @staticmethod
    def s67_octic() -> MultiPoly:
        g = _gens(V4)
        x0, x1, x2, x3 = (g[n] for n in V4)
        return (
            x0 ** 2 * x1 ** 2 * x2 ** 2 * x3 ** 2
            - x1 ** 4 * x2 ** 4
            - x1 ** 4 * x3 ** 4
            - x2 ** 4 * x3 ** 4
            + x1 ** 4 * x2 ** 2 * x3 ** 2
            + x1 ** 2 * x2 ** 4 * x3 ** 2
            + x1 ** 2 * x2 ** 2 * x3 ** 4
        )

    @staticmethod
    def factor_on_A1A1_space(poly: MultiPoly) -> Tuple[MultiPoly, MultiPoly, Fraction]:
        """F|_{X6=X7=0} = unidade·q67·s67"""
        g = _gens(V4)
        restricted = restrict(poly, {n: g[n] for n in V4}, V4)
        q67 = g["X0"] ** 2 - g["X1"] ** 2 - g["X2"] ** 2 - g["X3"] ** 2
        quotient = exact_divide(restricted, q67)
        if quotient is None:
            raise IdentityFailure("F restrito a X6 = X7 = 0 não é divisível por q67")
        octic = VarietyService.s67_octic()
        unit = proportionality_factor(quotient, octic)
        if unit is None:
            raise IdentityFailure("Fator de grau 8 difere de s67")
        return q67, octic, unit

    @staticmethod
    def s67_singular_line(octic: MultiPoly, zero_pair: Tuple[str, str] = ("X1", "X2")) -> bool:
        """As derivadas de s67 se anulam na reta X_i = X_j = 0"""
        g = _gens(V4)
        assignment = {n: (MultiPoly.zero(V4) if n in zero_pair else g[n]) for n in V4}
        return all(SubstitutionMap(assignment, V4)(d).is_zero() for d in VarietyService.partials(octic))

    @staticmethod
    def hessian_restriction(poly: MultiPoly) -> MultiPoly:
        """F no hiperplano H_α: X0 = X1 + X2 + X3 + X6 + X7"""
        g = _gens(FIVE_VARIABLES)
        assignment = dict(g)
        assignment["X0"] = sum((g[n] for n in FIVE_VARIABLES), MultiPoly.zero(FIVE_VARIABLES))
        return restrict(poly, assignment, FIVE_VARIABLES)

    @staticmethod
    def igusa_quartic() -> MultiPoly:
        """G = s2² - 4s4"""
        s2 = elementary_symmetric(2, FIVE_VARIABLES)
        s4 = elementary_symmetric(4, FIVE_VARIABLES)
        return s2 ** 2 - s4 * 4

    @staticmethod
    def igusa_hessian_identity(poly: MultiPoly) -> Dict[str, Any]:
        """F|_{H_α} = c·det(∂²G/∂Xi∂Xj)"""
        restricted = VarietyService.hessian_restriction(poly)
        hessian = hessian_det(VarietyService.igusa_quartic(), FIVE_VARIABLES)
        ratio = proportionality_factor(restricted, hessian)
        return {
            "restricted_terms": len(restricted),
            "hessian_terms": len(hessian),
            "ratio": ratio,
        }

    @staticmethod
    def singular_membership(poly: MultiPoly, param: Mapping[str, MultiPoly]) -> bool:
        """Todas as derivadas de F se anulam identicamente na parametrização"""
        mapping = SubstitutionMap(param)
        return all(mapping(d).is_zero() for d in VarietyService.partials(poly))

    @staticmethod
    def is_smooth_point(poly: MultiPoly, point: Sequence[complex], tolerance: float = 1e-6) -> bool:
        """Ponto (numérico) de Z(poly) com gradiente não nulo; pontos fora de Z(poly) são rejeitados"""
        scale = max(abs(complex(v)) for v in point)
        degree = poly.degree()
        value = abs(complex(poly.evaluate(point)))
        if value >= tolerance * scale ** degree:
            logger.warning(f"Ponto fora da hipersuperfície: |F| = {value:.3e}")
            return False
        gradient = [abs(complex(d.evaluate(point))) for d in VarietyService.partials(poly)]
        logger.debug(f"Ponto: |F| = {value:.3e}, |∇F| = {max(gradient):.3e}")
        return max(gradient) > tolerance * scale ** (degree - 1)

    @staticmethod
    def generic_point_is_smooth(poly: MultiPoly, seed: int, tolerance: float = 1e-6) -> bool:
        """Ponto aleatório de X (resolvendo F = 0 em X0): gradiente não nulo"""
        rng = np.random.default_rng(seed)
        others = {name: float(rng.uniform(0.5, 1.5)) for name in P5_VARIABLES[1:]}
        degree = poly.degree_in("X0")
        coeffs = [0.0] * (degree + 1)
        for exps, c in poly.terms.items():
            value = float(c)
            for name, e in zip(P5_VARIABLES[1:], exps[1:]):
                value *= others[name] ** e
            coeffs[degree - exps[0]] += value
        roots = np.roots(coeffs)
        root = roots[np.argmin(np.abs(roots.imag))]
        point = [complex(root)] + [complex(others[n]) for n in P5_VARIABLES[1:]]
        return VarietyService.is_smooth_point(poly, point, tolerance)

    @staticmethod
    def grid_membership_quadric(partials: Sequence[MultiPoly], matrix: ExactMatrix, size: int = 10) -> bool:
        """∇F nula numa grade 10x10 de P1xP1 sobre g·Q22 (unisolvente para bigrau (9, 9))"""
        for a in range(size):
            for b in range(size):
                s, t, u, v = Fraction(1), Fraction(a), Fraction(1), Fraction(b)
                base = (s * u, s * v, t * u, t * v, t * v, t * v)
                point = matrix.apply(base)
                if any(d.evaluate(point) != 0 for d in partials):
                    return False
        return True

    @staticmethod
    def grid_membership_plane(partials: Sequence[MultiPoly], columns: Sequence[Sequence], degree: int = 9) -> bool:
        """∇F nula nos pontos (i, j, k), i + j + k = 9, de um plano (unisolvente para grau 9)"""
        for i in range(degree + 1):
            for j in range(degree + 1 - i):
                k = degree - i - j
                point = [
                    Cyclotomic.coerce(i * a + j * b + k * c)
                    for a, b, c in zip(*columns)
                ]
                if any(Cyclotomic.coerce(d.evaluate(point)) != 0 for d in partials):
                    return False
        return True

    @staticmethod
    def quadric_surface_orbit(group: GroupTable) -> Dict[Tuple, np.ndarray]:
        """Órbita do subespaço Z = {X3 = X6 = X7} (uma por subsistema A2)"""
        return WeylService.subspace_orbit(group, Z_SUBSPACE_ROWS)

    @staticmethod
    def sing_degree_accounting(
        poly: MultiPoly,
        group: GroupTable,
        class_members: Sequence[int],
        slow: bool = False,
    ) -> Dict[str, Any]:
        """120 quádricas e 80 planos em Sing(X): grau total 320"""
        quadrics = VarietyService.quadric_surface_orbit(group)
        planes = {}
        for basis in WeylService.class_eigenplanes(group, class_members):
            planes[basis.canonical()] = basis

        base_quadric = VarietyService.singular_membership(poly, q22_parametrization())
        base_plane = VarietyService.singular_membership(poly, plane_parametrization(W3_COLUMNS))
        invariant, _ = VarietyService.verify_generator_invariance(poly, group.generators)
        transported = base_quadric and base_plane and invariant

        direct = None
        if slow:
            partials = VarietyService.partials(poly)
            direct = all(
                VarietyService.grid_membership_quadric(partials, group.matrix_of_permutation(perm))
                for perm in quadrics.values()
            ) and all(
                VarietyService.grid_membership_plane(partials, basis.columns)
                for basis in planes.values()
            )

        result = {
            "quadrics": len(quadrics),
            "planes": len(planes),
            "degree": 2 * len(quadrics) + len(planes),
            "members_in_sing": transported if direct is None else (transported and direct),
            "direct_grid_check": direct,
        }
        logger.info(f"Sing(X): {result}")
        return result

    @staticmethod
    def branch_locus_factorization() -> Dict[str, bool]:
        """Z0⁴ + Z1⁴ + Z2⁴ - Z0²Z1² - Z0²Z2² - Z1²Z2² como produto de duas cônicas sobre Q(ω)"""
        names = DOUBLE_PLANE[:3]
        g = _gens(names)
        z0, z1, z2 = (g[n] ** 2 for n in names)
        w = Cyclotomic.omega()
        w2 = Cyclotomic.omega_bar()
        quartic = z0 ** 2 + z1 ** 2 + z2 ** 2 - z0 * z1 - z0 * z2 - z1 * z2
        first = z0 + z1.scale(w2) + z2.scale(w)
        second = z0 + z1.scale(w) + z2.scale(w2)
        points = [(1, a, b) for a in (1, -1) for b in (1, -1)]
        return {
            "product": first * second == quartic,
            "galois_swap": first.conj() == second,
            "common_points": all(
                first.evaluate(p) == 0 and second.evaluate(p) == 0 for p in points
            ),
        }

    @staticmethod
    def q36_locate(poly: MultiPoly, group: GroupTable, family: QuadricFamily) -> Dict[str, Any]:
        """Componente quadrática de X ∩ W′, W′: X1 = X2, X6 = X7"""
        g4 = _gens(W_PRIME_VARIABLES)
        inclusion_map = {
            "X0": g4["X0"], "X1": g4["X1"], "X2": g4["X1"],
            "X3": g4["X3"], "X6": g4["X6"], "X7": g4["X6"],
        }
        restricted = restrict(poly, inclusion_map, W_PRIME_VARIABLES)

        g = WeylService.find_element_mapping(group, W_PRIME_ROOTS, (SIMPLE_ROOTS[3], SIMPLE_ROOTS[6]))
        inclusion = ExactMatrix(
            [
                [1, 0, 0, 0],
                [0, 1, 0, 0],
                [0, 1, 0, 0],
                [0, 0, 1, 0],
                [0, 0, 0, 1],
                [0, 0, 0, 1],
            ]
        )
        pullback = g.inverse() @ inclusion
        x = _gens(P5_VARIABLES)
        q67 = x["X0"] ** 2 - x["X1"] ** 2 - x["X2"] ** 2 - x["X3"] ** 2
        q36 = SubstitutionMap.linear(P5_VARIABLES, W_PRIME_VARIABLES, pullback.rows)(q67)
        s36 = exact_divide(restricted, q36)
        if s36 is None:
            raise IdentityFailure("F restrito a W′ não é divisível pela quádrica transportada")

        stereo = stereographic_q67()
        zero = MultiPoly.zero(STEREO)
        q67_param = {**stereo, "X6": zero, "X7": zero}
        q36_param = transport(g, q67_param)
        vanishing = QuadricService.quadric_vanishing_count(q36_param, family)
        on_w_prime = QuadricService.quadric_vanishing_count(inclusion_map, family)
        return {
            "element": g,
            "q36": q36,
            "degrees": (q36.degree(), s36.degree()),
            "vanishing_on_q36": vanishing,
            "vanishing_on_w_prime": on_w_prime,
        }

    @staticmethod
    def q67_s67_conic_check(octic: MultiPoly) -> Dict[str, Any]:
        """s67 e Π(X0 ± X1 ± X2 ± X3) proporcionais sobre Q67"""
        param = stereographic_q67()
        mapping = SubstitutionMap(param, STEREO)
        pulled = mapping(octic)
        g = _gens(V4)
        pieces = []
        for a, b, c in itertools.product((1, -1), repeat=3):
            plane = g["X0"] + g["X1"].scale(a) + g["X2"].scale(b) + g["X3"].scale(c)
            pieces.append(mapping(plane))
        product = MultiPoly.constant(STEREO, 1)
        for piece in pieces:
            product = product * piece
        flipped = restrict(octic, {"X0": g["X0"], "X1": -g["X1"], "X2": g["X2"], "X3": g["X3"]}, V4)
        ratio = proportionality_factor(pulled, product)
        return {
            "ratio": ratio,
            "proportional": ratio is not None,
            "nonzero_pieces": sum(1 for p in pieces if not p.is_zero()),
            "sign_symmetric": flipped == octic,
        }

    @staticmethod
    def s22_birational_check() -> Dict[str, bool]:
        """(X0q22 : X1q22 : X2q22 : X3q22 : r3) e a projeção de volta"""
        g = _gens(V4)
        x0, x1, x2, x3 = (g[n] for n in V4)
        q22 = x0 * x3 - x1 * x2
        r3 = x3 * (x0 - x1 - x2 + x3) * (x0 + x1 + x2 + x3)
        forward = [x0 * q22, x1 * q22, x2 * q22, x3 * q22, r3]
        back = dict(zip(V4, forward[:4]))
        composed = [SubstitutionMap(back, V4)(f) for f in forward]
        return {
            "degree_three": all(f.is_homogeneous() and f.degree() == 3 for f in forward),
            "projection": all(back[n] == g[n] * q22 for n in V4),
            "composition": all(c == f * q22 ** 3 for c, f in zip(composed, forward)),
        }

    @staticmethod
    def s67_double_plane_check(octic: MultiPoly) -> Dict[str, bool]:
        """S67 como plano duplo T² = quártica(Z) ramificado nas duas cônicas"""
        g = _gens(V4)
        x0, x1, x2, x3 = (g[n] for n in V4)
        forward = {"Z0": x2 * x3, "Z1": x1 * x3, "Z2": x1 * x2, "T": x0 * x1 * x2 * x3}
        z = _gens(DOUBLE_PLANE)
        z0, z1, z2, t = (z[n] for n in DOUBLE_PLANE)
        quartic = (
            z0 ** 4 + z1 ** 4 + z2 ** 4
            - z0 ** 2 * z1 ** 2 - z0 ** 2 * z2 ** 2 - z1 ** 2 * z2 ** 2
        )
        equation = t ** 2 - quartic
        pulled = SubstitutionMap(forward, V4)(equation)

        inverse = {"X0": t, "X1": z1 * z2, "X2": z0 * z2, "X3": z0 * z1}
        inverse_map = SubstitutionMap(inverse, DOUBLE_PLANE)
        forward_map = SubstitutionMap(forward, V4)
        factor = x1 * x2 * x3
        z_factor = z0 * z1 * z2
        weights = {"Z0": 1, "Z1": 1, "Z2": 1, "T": 2}
        return {
            "pullback_is_s67": pulled == octic,
            "inverse_after_forward": all(forward_map(inverse[n]) == g[n] * factor for n in V4),
            "forward_after_inverse": all(
                inverse_map(f) == z[n] * z_factor ** weights[n] for n, f in forward.items()
            ),
        }

    @staticmethod
    def hesse_invariants(group: GroupTable) -> Dict[str, Any]:
        """Restrições de I_k ao plano de Hesse PW3"""
        restricted = WeylService.restricted_invariants(group, HESSE_DEGREES, W3_COLUMNS, PLANE)
        i6_squared = restricted[6] ** 2
        rank = coefficient_matrix([i6_squared, restricted[12]]).rank()
        return {
            "vanishing": sorted(k for k, p in restricted.items() if p.is_zero()),
            "nonvanishing": sorted(k for k, p in restricted.items() if not p.is_zero()),
            "i6_squared_i12_rank": rank,
        }

    @staticmethod
    def translate_vanishing_counts(group: GroupTable, family: QuadricFamily, indices: Sequence[int]) -> Dict[str, List[int]]:
        """Contagens em translados g·Q22 e g·PW3"""
        q22 = q22_parametrization()
        w3 = plane_parametrization(W3_COLUMNS)
        counts: Dict[str, List[int]] = {"q22": [], "w3": []}
        for idx in indices:
            g = group.matrix(idx)
            counts["q22"].append(QuadricService.quadric_vanishing_count(transport(g, q22), family))
            counts["w3"].append(QuadricService.quadric_vanishing_count(transport(g, w3), family))
        return counts

    @staticmethod
    def g3_eigenplane_matches_w3(group: GroupTable) -> bool:
        basis = WeylService.eigenplane(G3_MATRIX, Cyclotomic.omega())
        return subspace_canonical(basis.columns) == subspace_canonical(W3_COLUMNS)
