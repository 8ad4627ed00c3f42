"""Execução das suítes de verificação e montagem do relatório."""
import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from app import __version__
from app.core.exact import Cyclotomic, ExactMatrix
from app.core.polyring import MultiPoly, euler_operator
from app.models.symplectic import (
    M_C_MATRIX,
    M_D_MATRIX,
    M_IP_MATRIX,
    M_PR_MATRIX,
    NAMED_MATRICES,
    heisenberg_matrix,
)
from app.models.theta import FixedLocus, SiegelPoint, ThetaChar, even_theta_characteristics
from app.models.weyl import (
    CLASS_C_CHARPOLY,
    G3_MATRIX,
    GENERATOR_MATRICES,
    P5_VARIABLES,
    SIMPLE_ROOTS,
    V1,
    W3_COLUMNS,
)
from app.schemas.report import CheckRecord, CheckStatus, VerificationReport
from app.schemas.run_config import RunConfig, Suite
from app.services.boundary_service import BoundaryService
from app.services.group_cache_service import GroupCacheService
from app.services.quadric_service import QuadricService
from app.services.symplectic_service import SymplecticService, U4_F4_ORDER
from app.services.theta_service import ThetaService
from app.services.variety_service import (
    F_COEFFICIENT,
    VarietyService,
    build_F,
    plane_parametrization,
    q22_parametrization,
)
from app.services.weyl_service import WEYL_E6_ORDER, WeylService
from app.utils.logger import JsonLogger

logger = logging.getLogger(__name__)

# Posições de (X0, X1, X3, X6) dentro de (X0, X1, X2, X3, X6, X7)
W_PRIME_POSITIONS = (0, 1, 3, 4)
ODD_THETA_TOLERANCE = 1e-12
ISOGENY_TOLERANCE = 1e-12
Q36_TOLERANCE = 1e-6
TRANSLATE_SAMPLE = 5
SLOW_INVARIANCE_SAMPLE = 500


@dataclass
class Check:
    check_id: str
    citation: str
    expected: Any
    compute: Callable[["RunContext"], Any]
    predicate: Optional[Callable[[Any, RunConfig], bool]] = None
    slow: bool = False

    def passes(self, actual: Any, config: RunConfig) -> bool:
        if self.predicate is not None:
            return bool(self.predicate(actual, config))
        return actual == self.expected


def _below(limit: float) -> Callable[[Any, RunConfig], bool]:
    return lambda actual, config: actual is not None and actual < limit


def _within_tolerance(*keys: str) -> Callable[[Any, RunConfig], bool]:
    """Resíduo (ou resíduos nas chaves dadas) abaixo da tolerância teta"""

    def predicate(actual: Any, config: RunConfig) -> bool:
        values = [actual[k] for k in keys] if keys else [actual]
        return all(v < config.theta.tolerance for v in values)

    return predicate


def _timed_round_trip(actual: Any, config: RunConfig) -> bool:
    """Cache relido igual à tabela, com carga mais rápida que a geração"""
    generate_seconds = actual.get("generate_seconds")
    if not actual.get("round_trip") or generate_seconds is None:
        return False
    return actual["load_seconds"] < generate_seconds


def to_jsonable(value: Any) -> Any:
    """Valores exatos e numpy em tipos JSON"""
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    if isinstance(value, (Fraction, Cyclotomic, MultiPoly)):
        return str(value) if not isinstance(value, MultiPoly) else value.to_text()
    if isinstance(value, ExactMatrix):
        return [[to_jsonable(x) for x in row] for row in value.rows]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted((to_jsonable(v) for v in value), key=str)
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return str(value)


class RunContext:
    """Objetos caros compartilhados entre verificações (calculados uma vez)"""

    def __init__(self, config: RunConfig) -> None:
        self.config = config

    @cached_property
    def _group_and_info(self):
        return GroupCacheService.load_or_generate(self.config.cache_path, self.config.refresh_cache)

    @property
    def group(self):
        return self._group_and_info[0]

    @property
    def cache_info(self) -> Dict[str, Any]:
        return self._group_and_info[1]

    @cached_property
    def F(self) -> MultiPoly:
        return build_F()

    @cached_property
    def invariants(self) -> Dict[int, MultiPoly]:
        return VarietyService.invariants(self.group)

    @cached_property
    def family(self):
        return QuadricService.restrict_quadrics()

    @cached_property
    def class_members(self) -> List[int]:
        return WeylService.conjugacy_class_C(self.group)

    @cached_property
    def g3(self) -> int:
        return WeylService.g3_element(self.group)

    @cached_property
    def a1a1(self):
        return VarietyService.factor_on_A1A1_space(self.F)

    @cached_property
    def q36(self) -> Dict[str, Any]:
        return VarietyService.q36_locate(self.F, self.group, self.family)

    @cached_property
    def incidence(self):
        return BoundaryService.boundary_incidence(self.F, self.group)

    @cached_property
    def samples(self) -> Dict[FixedLocus, List[SiegelPoint]]:
        theta = self.config.theta
        count = {FixedLocus.M: theta.sample_count}
        points = {}
        for offset, tag in enumerate(FixedLocus):
            points[tag] = ThetaService.sample_points(
                tag, count.get(tag, 5), self.config.seed + offset, theta.sample_radius
            )
        return points

    def images(self, tag: FixedLocus) -> List[np.ndarray]:
        return [ThetaService.theta_map_P5(tau, self.config.theta) for tau in self.samples[tag]]


# suítes


def _exact_checks() -> List[Check]:
    def level_pairs(ctx: RunContext) -> Tuple[bool, bool]:
        return (
            SymplecticService.in_gamma_2_4(M_IP_MATRIX @ M_PR_MATRIX.inverse()),
            SymplecticService.in_gamma_2_4(M_D_MATRIX @ M_C_MATRIX.inverse()),
        )

    def heisenberg_level(ctx: RunContext) -> Tuple[bool, bool]:
        beta = heisenberg_matrix(beta=(1, 0, 0, 0))
        return SymplecticService.in_gamma_2(beta), SymplecticService.in_gamma_2_4(beta)

    return [
        Check(
            "symplectic.named.symplectic",
            "all named matrices lie in Sp(8,Z)",
            True,
            lambda ctx: all(SymplecticService.is_symplectic(m) for m in NAMED_MATRICES.values()),
        ),
        Check(
            "symplectic.named.placement",
            "placement of the named matrices in the normalizer of M",
            True,
            lambda ctx: all(e == a for e, a in SymplecticService.placement_table().values()),
        ),
        Check(
            "symplectic.identities",
            "T M T^-1 = M_22; M_12 has order 12 with M_12^4 = M",
            True,
            lambda ctx: all(SymplecticService.conjugation_identities().values()),
        ),
        Check(
            "symplectic.hermitian_gram",
            "the hermitian form H_M is diag(1,1,-1,-1) in the basis f1..f4",
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
            lambda ctx: [[int(Cyclotomic.coerce(x).to_rational()) for x in row] for row in SymplecticService.hermitian_gram().rows],
        ),
        Check(
            "symplectic.lattice.pr",
            "the fixed sublattice of M_pr is unimodular",
            1,
            lambda ctx: SymplecticService.fixed_sublattice_det(M_PR_MATRIX),
        ),
        Check(
            "symplectic.lattice.ip",
            "the fixed sublattice of M_ip has determinant 9",
            9,
            lambda ctx: SymplecticService.fixed_sublattice_det(M_IP_MATRIX),
        ),
        Check(
            "symplectic.level.cosets",
            "M_ip = M_pr and M_D = M_C modulo Gamma(2,4)",
            (True, True),
            level_pairs,
        ),
        Check(
            "symplectic.level.heisenberg",
            "Heisenberg generators lie in Gamma(2) but not in Gamma(2,4)",
            (True, False),
            heisenberg_level,
        ),
        Check(
            "symplectic.unitary.order",
            "C_M maps onto U(4,F4) of order 3 x 25920",
            U4_F4_ORDER,
            lambda ctx: SymplecticService.unitary_closure(),
        ),
    ]


def _group_checks() -> List[Check]:
    def i2_expected(ctx: RunContext) -> bool:
        x = dict(zip(P5_VARIABLES, MultiPoly.generators(P5_VARIABLES)))
        expected = x["X0"] ** 2 * Fraction(1, 2) + sum(
            (x[n] ** 2 for n in P5_VARIABLES[1:]), MultiPoly.zero(P5_VARIABLES)
        ) * Fraction(3, 2)
        return ctx.invariants[2] == expected

    def invariants_fixed(ctx: RunContext) -> bool:
        return all(
            VarietyService.verify_generator_invariance(p, ctx.group.generators)[0]
            for p in ctx.invariants.values()
        )

    def cache_reload(ctx: RunContext) -> Dict[str, Any]:
        start = time.perf_counter()
        loaded, metadata = GroupCacheService.read_cache(ctx.config.cache_path)
        load_seconds = time.perf_counter() - start
        generate_seconds = ctx.cache_info.get("generate_seconds") or metadata["generation_seconds"]
        logger.info(
            f"Cache recarregado em {load_seconds:.3f}s "
            f"(origem inicial: {ctx.cache_info['source']}, geração: {generate_seconds}s)"
        )
        return {
            "round_trip": loaded.payload() == ctx.group.payload(),
            "load_seconds": load_seconds,
            "generate_seconds": generate_seconds,
        }

    def planes_count(ctx: RunContext) -> int:
        planes = WeylService.class_eigenplanes(ctx.group, ctx.class_members)
        return len({p.canonical() for p in planes})

    def orbit_norms(ctx: RunContext) -> bool:
        orbit = WeylService.orbit(ctx.group, V1)
        return all(WeylService.b_form(v, v) == Fraction(1, 3) for v in orbit)

    return [
        Check("weyl.gram.diagonal", "b(alpha_i, alpha_i) = 2", [2] * 6,
              lambda ctx: [int(WeylService.gram_matrix()[0][i, i]) for i in range(6)]),
        Check("weyl.gram.edges", "the Dynkin diagram of E6", True,
              lambda ctx: WeylService.is_e6_diagram(WeylService.gram_matrix()[1])),
        Check("weyl.reflection.M_B", "M_B acts as s_alpha6", True,
              lambda ctx: WeylService.reflection_matrix(SIMPLE_ROOTS[6]) == GENERATOR_MATRICES["M_B"]),
        Check("weyl.generators.preserve_b", "the four generators preserve b", True,
              lambda ctx: all(WeylService.preserves_b(g) for g in GENERATOR_MATRICES.values())),
        Check("weyl.reflection.involution", "s_alpha o s_alpha = I for every root", True,
              lambda ctx: WeylService.reflections_are_involutions(WeylService.root_system(ctx.group))),
        Check("weyl.orbit.stable", "each generator maps the 27 vectors and the 72 roots onto themselves", (True, True),
              lambda ctx: (
                  WeylService.stabilizes_setwise(GENERATOR_MATRICES, WeylService.orbit(ctx.group, V1)),
                  WeylService.stabilizes_setwise(GENERATOR_MATRICES, WeylService.root_system(ctx.group)),
              )),
        Check("weyl.single_reflection", "a reflection generates a group of order 2", 2,
              lambda ctx: WeylService.generate_group({"s6": WeylService.reflection_matrix(SIMPLE_ROOTS[6])}).order),
        Check("weyl.order", "W(E6) is a finite group of order 51840", WEYL_E6_ORDER,
              lambda ctx: ctx.group.order),
        Check("weyl.cache.reload", "group table cache round trip; a reload takes a fraction of generation time",
              {"round_trip": True, "load_seconds": "< generate_seconds"}, cache_reload, _timed_round_trip),
        Check("weyl.orbit.v1", "27 vectors v_1, ..., v_27", 27,
              lambda ctx: len(WeylService.orbit(ctx.group, V1))),
        Check("weyl.orbit.v1.norm", "b(v_i, v_i) = 1/3 on the 27 vectors", True, orbit_norms),
        Check("weyl.roots", "E6 has 72 roots", 72,
              lambda ctx: len(WeylService.root_system(ctx.group))),
        Check("weyl.orbit.lambda2", "the cusps form the W(E6)-orbit of lambda_2 (27 points)", 27,
              lambda ctx: len(WeylService.orbit(ctx.group, WeylService.fundamental_weight(2), projective=True))),
        Check("weyl.weight.lambda2", "lambda_2 = (2,0,0,0,0,0)", (2, 0, 0, 0, 0, 0),
              lambda ctx: WeylService.fundamental_weight(2)),
        Check("weyl.minus_identity", "-I is not in W(E6)", False,
              lambda ctx: WeylService.minus_identity_in_group(ctx.group)),
        Check("weyl.invariants.I2", "I_2 = (3/2) b(X,X)", True, i2_expected),
        Check("weyl.invariants.generators", "I_k is invariant for the W(E6)-action", True, invariants_fixed),
        Check("weyl.class_C.size", "class C consists of 80 elements, each of order three", 80,
              lambda ctx: len(ctx.class_members)),
        Check("weyl.class_C.g3_charpoly", "g_3 has characteristic polynomial (x^2+x+1)^3",
              [Fraction(c) for c in CLASS_C_CHARPOLY],
              lambda ctx: G3_MATRIX.characteristic_polynomial()),
        Check("weyl.class_C.single_class", "class C is a unique conjugacy class", True,
              lambda ctx: WeylService.conjugation_orbit(ctx.group, ctx.g3) == set(ctx.class_members)),
        Check("weyl.centralizer.g3", "the centralizer of g_3 is a group of order 648", 648,
              lambda ctx: WeylService.centralizer_order(ctx.group, ctx.g3)),
        Check("weyl.eigenplane.W3", "the columns of W_3 span the omega-eigenspace of g_3", True,
              lambda ctx: VarietyService.g3_eigenplane_matches_w3(ctx.group)),
        Check("weyl.eigenplanes.count", "the eigenspaces of class C give 80 planes", 80, planes_count),
        Check("weyl.hesse.invariants", "I_2, I_5, I_8 restrict to zero on PW_3; I_6^2 and I_12 independent",
              {"vanishing": [2, 5, 8], "nonvanishing": [6, 9, 12], "i6_squared_i12_rank": 2},
              lambda ctx: VarietyService.hesse_invariants(ctx.group)),
    ]


def _variety_checks() -> List[Check]:
    def cusp_points(ctx: RunContext) -> bool:
        return ctx.F.evaluate((1, 0, 0, 0, 0, 0)) == 0 and ctx.F.evaluate((1, 1, 0, 0, 0, 0)) == 0

    def group_sample_invariance(ctx: RunContext) -> bool:
        rng = np.random.default_rng(ctx.config.seed)
        indices = rng.choice(ctx.group.order, size=SLOW_INVARIANCE_SAMPLE, replace=False)
        return VarietyService.verify_group_invariance(ctx.F, ctx.group, [int(i) for i in indices])[0]

    def singular_members(ctx: RunContext) -> Tuple[bool, bool]:
        return (
            VarietyService.singular_membership(ctx.F, q22_parametrization()),
            VarietyService.singular_membership(ctx.F, plane_parametrization(W3_COLUMNS)),
        )

    def sing_accounting(ctx: RunContext) -> Dict[str, Any]:
        result = VarietyService.sing_degree_accounting(ctx.F, ctx.group, ctx.class_members, ctx.config.slow)
        return {k: result[k] for k in ("quadrics", "planes", "degree", "members_in_sing")}

    def translates(ctx: RunContext) -> Dict[str, List[int]]:
        indices = list(range(1, TRANSLATE_SAMPLE + 1))
        return VarietyService.translate_vanishing_counts(ctx.group, ctx.family, indices)

    def igusa(ctx: RunContext) -> Tuple[int, bool]:
        result = VarietyService.igusa_hessian_identity(ctx.F)
        return result["restricted_terms"], result["ratio"] is not None

    def branch_components(ctx: RunContext) -> Tuple[bool, Any]:
        result = VarietyService.quotient_branch_components(ctx.F, ctx.invariants)
        return result["linear_in_I5_squared"], result["c"]

    def counts_on(param_fn: Callable[[], Dict[str, MultiPoly]]) -> Callable[[RunContext], int]:
        return lambda ctx: QuadricService.quadric_vanishing_count(param_fn(), ctx.family)

    return [
        Check("variety.F.terms", "F has 147 terms", 147, lambda ctx: len(ctx.F)),
        Check("variety.F.degree", "F is homogeneous of degree 10", (True, 10),
              lambda ctx: (ctx.F.is_homogeneous(), ctx.F.degree())),
        Check("variety.F.cusps", "the cusps (1:0:...:0) and (1:1:0:...:0) lie on X", True, cusp_points),
        Check("variety.F.euler", "Euler identity sum X_i dF/dX_i = 10 F", True,
              lambda ctx: euler_operator(ctx.F) == ctx.F * 10),
        Check("variety.F.generator_invariance", "F is an invariant for the W(E6)-action", True,
              lambda ctx: VarietyService.verify_generator_invariance(ctx.F, GENERATOR_MATRICES)[0]),
        Check("variety.F.group_invariance", "F is invariant under a sample of W(E6)", True,
              group_sample_invariance, slow=True),
        Check("variety.F.invariant_identity", "F = c(11520 I8 I2 - 4160 I6 I2^2 - 4608 I5^2 + 25 I2^5)",
              F_COEFFICIENT, lambda ctx: VarietyService.verify_invariant_identity(ctx.F, ctx.invariants)),
        Check("variety.F.branch_components", "the double cover of the quotient branches along I2 and a quartic",
              (True, F_COEFFICIENT), branch_components),
        Check("variety.quadrics.count", "the 136 even theta functions", 136, lambda ctx: len(ctx.family)),
        Check("variety.quadrics.m_cycles", "the permutation sigma -> sigma A of the 16 coordinates", True,
              lambda ctx: QuadricService.m_cycle_check() and QuadricService.embedding_is_consistent()),
        Check("variety.quadrics.m_invariant", "only one quadric is M-invariant", [(0, 0)],
              lambda ctx: QuadricService.m_invariant_characteristics(ctx.family)),
        Check("variety.vanishing.cusp", "120 vanishing thetanulls at a cusp", 120,
              lambda ctx: QuadricService.vanishing_at_point((1, 0, 0, 0, 0, 0), ctx.family)),
        Check("variety.vanishing.boundary_line", "96 vanishing thetanulls on a boundary line", 96,
              lambda ctx: QuadricService.vanishing_at_point((2, 7, 0, 0, 0, 0), ctx.family)),
        Check("variety.vanishing.q22", "36 vanishing thetanulls on Q_22", 36, counts_on(q22_parametrization)),
        Check("variety.vanishing.w3", "28 vanishing thetanulls on PW_3", 28,
              counts_on(lambda: plane_parametrization(W3_COLUMNS))),
        Check("variety.vanishing.q36", "6 vanishing thetanulls on Q_36", 6,
              lambda ctx: ctx.q36["vanishing_on_q36"]),
        Check("variety.vanishing.w_prime", "no theta constant vanishes identically on W'", 0,
              lambda ctx: ctx.q36["vanishing_on_w_prime"]),
        Check("variety.vanishing.translates", "translates of Q_22 and PW_3 keep 36 and 28",
              {"q22": [36] * TRANSLATE_SAMPLE, "w3": [28] * TRANSLATE_SAMPLE}, translates),
        Check("variety.A2.factorization", "F restricted to Z is q22^2 f22 with deg f22 = 6", 6,
              lambda ctx: VarietyService.factor_on_A2_space(ctx.F)[1].degree()),
        Check("variety.A1A1.factorization", "F restricted to X6 = X7 = 0 is q67 s67", True,
              lambda ctx: ctx.a1a1[2] is not None),
        Check("variety.s67.singular_lines", "s67 is singular along X_i = X_j = 0", True,
              lambda ctx: all(VarietyService.s67_singular_line(ctx.a1a1[1], pair)
                              for pair in (("X1", "X2"), ("X1", "X3"), ("X2", "X3")))),
        Check("variety.q67_s67.conic", "on Q67, s67 is the product of eight planes X0 +- X1 +- X2 +- X3",
              Fraction(-1, 16), lambda ctx: VarietyService.q67_s67_conic_check(ctx.a1a1[1])["ratio"]),
        Check("variety.s67.double_plane", "S67 is a double plane branched along two conics",
              {"pullback_is_s67": True, "inverse_after_forward": True, "forward_after_inverse": True},
              lambda ctx: VarietyService.s67_double_plane_check(ctx.a1a1[1])),
        Check("variety.branch_locus", "the branch quartic splits into two conics over Q(omega)",
              {"product": True, "galois_swap": True, "common_points": True},
              lambda ctx: VarietyService.branch_locus_factorization()),
        Check("variety.s22.birational", "S22 is rational via the cubic map through q22",
              {"degree_three": True, "projection": True, "composition": True},
              lambda ctx: VarietyService.s22_birational_check()),
        Check("variety.q36.degrees", "F on W' is q36 times an octic", (2, 8), lambda ctx: ctx.q36["degrees"]),
        Check("variety.igusa.hessian", "F on H_alpha has 591 terms and is the Hessian of the Igusa quartic",
              (591, True), igusa),
        Check("variety.sing.membership", "Q_22 and PW_3 lie in the singular locus of X", (True, True),
              singular_members),
        Check("variety.sing.generic_smooth", "a generic point of X is smooth", True,
              lambda ctx: VarietyService.generic_point_is_smooth(ctx.F, ctx.config.seed)),
        Check("variety.sing.degree", "Sing(X) has 120 quadrics and 80 planes, degree 320",
              {"quadrics": 120, "planes": 80, "degree": 320, "members_in_sing": True}, sing_accounting),
    ]


def _boundary_checks() -> List[Check]:
    cusps_on_l = {(1, 0, 0, 0, 0, 0), (1, 1, 0, 0, 0, 0), (1, -1, 0, 0, 0, 0)}
    return [
        Check("boundary.incidence", "45 lines, 27 cusps, 3 cusps per line and 5 lines per cusp",
              {"lines": 45, "cusps": 27, "cusps_per_line": [3], "lines_per_cusp": [5]},
              lambda ctx: {k: ctx.incidence.summary()[k] for k in ("lines", "cusps", "cusps_per_line", "lines_per_cusp")}),
        Check("boundary.cusps_on_l", "the three cusps on l", True,
              lambda ctx: set(ctx.incidence.cusps_on_l) == cusps_on_l),
        Check("boundary.cusps_orbit", "the cusps are the W(E6)-orbit of lambda_2", True,
              lambda ctx: ctx.incidence.cusps_match_weight_orbit),
        Check("boundary.F_on_lines", "F vanishes on every boundary line", True,
              lambda ctx: ctx.incidence.f_vanishes_on_lines),
        Check("boundary.heisenberg", "the P3 of the Heisenberg action meets P5 in the line l",
              {"intersection_dimension": 1, "is_line_l": True, "fixed_by_beta": True,
               "stable_under_gamma": True, "point_p_in_p5": True},
              lambda ctx: BoundaryService.heisenberg_boundary_check()),
    ]


def _theta_checks() -> List[Check]:
    def diagonal_oracle(ctx: RunContext) -> float:
        n = np.arange(-20, 21)
        oracle = np.exp(-np.pi * n ** 2).sum() ** 4
        tau = SiegelPoint(1j * np.eye(4))
        return abs(ThetaService.theta_value(ThetaChar.from_indices(0, 0), tau, config=ctx.config.theta) - oracle)

    def parity(ctx: RunContext) -> float:
        return ThetaService.parity_residual(ctx.samples[FixedLocus.M][0], ctx.config.theta)

    def bridge(ctx: RunContext) -> Dict[str, float]:
        result = ThetaService.bridge_check(ctx.F, ctx.samples[FixedLocus.M], ctx.config.theta)
        return {"triple_residual": result["triple_residual"], "f_residual": result["f_residual"]}

    def mb_images(ctx: RunContext) -> float:
        return ThetaService.coordinate_residual(ctx.images(FixedLocus.M_MB), [(4, 5)])

    def m12_images(ctx: RunContext) -> Dict[str, float]:
        images = ctx.images(FixedLocus.M12)
        return {
            "fixed_space": ThetaService.coordinate_residual(images, [(1, 2), (4, 5)]),
            "on_q36": ThetaService.polynomial_residual(
                ctx.q36["q36"], [p[list(W_PRIME_POSITIONS)] for p in images]
            ),
        }

    def m12_forced(ctx: RunContext) -> float:
        tau = ctx.samples[FixedLocus.M12][0]
        cfg = ctx.config.theta
        forced = ThetaService.theta_constants(tau, ThetaService.mc_forced_vanishing(), cfg)
        every = ThetaService.theta_constants(tau, even_theta_characteristics(), cfg)
        return max(abs(v) for v in forced.values()) / max(abs(v) for v in every.values())

    def profile(tag: FixedLocus) -> Callable[[RunContext], int]:
        return lambda ctx: ThetaService.vanishing_profile(ctx.samples[tag][0], ctx.config.theta).vanishing

    def products(ctx: RunContext) -> Tuple[int, int]:
        t1 = SiegelPoint(np.array([[0.1 + 1.1j]]))
        t3 = SiegelPoint(
            1j * np.eye(3) + 0.15 * np.array([[1, 0.3, 0.2], [0.3, 1, 0.1], [0.2, 0.1, 1]])
        )
        t2 = SiegelPoint(np.array([[1.2j, 0.3 + 0.2j], [0.3 + 0.2j, 0.1 + 1.0j]]))
        t2b = SiegelPoint(np.array([[0.2 + 0.9j, -0.1 + 0.1j], [-0.1 + 0.1j, 1.3j]]))
        cfg = ctx.config.theta
        return (
            ThetaService.vanishing_profile(SiegelPoint.block_diagonal(t1, t3), cfg).vanishing,
            ThetaService.vanishing_profile(SiegelPoint.block_diagonal(t2, t2b), cfg).vanishing,
        )

    def isogeny(ctx: RunContext) -> Dict[str, Any]:
        return ThetaService.isogeny_diagram_check()

    return [
        Check("theta.oracle.diagonal", "theta at i I_4 factors into one-dimensional series",
              "< 1e-12", diagonal_oracle, _below(1e-12)),
        Check("theta.parity", "the remaining 120 are odd", f"< {ODD_THETA_TOLERANCE}",
              parity, _below(ODD_THETA_TOLERANCE)),
        Check("theta.hermite.fixed", "M . tau = tau on the Hermite half space", True,
              lambda ctx: ThetaService.is_fixed(NAMED_MATRICES["M"], ThetaService.sample_hermite_point(1j * np.eye(2)))),
        Check("theta.bridge", "Theta maps H_4^M into X = Z(F)", "< tolerance", bridge,
              _within_tolerance("triple_residual", "f_residual")),
        Check("theta.M_MB.image", "M_B acts as s_alpha6, so X6 = X7 on H^{M,M_B}", "< tolerance",
              mb_images, _within_tolerance()),
        Check("theta.M12.image", "H^{M12} lands in (X0:X2:X1:X3:X7:X6)-fixed space and on Q_36",
              {"fixed_space": "< tolerance", "on_q36": f"< {Q36_TOLERANCE}"}, m12_images,
              lambda actual, cfg: actual["fixed_space"] < cfg.theta.tolerance and actual["on_q36"] < Q36_TOLERANCE),
        Check("theta.mc_sign.count", "six theta constants vanish on the fixed locus of M_C", 6,
              lambda ctx: len(ThetaService.mc_forced_vanishing())),
        Check("theta.mc_sign.numeric", "the six forced thetanulls vanish at M12-fixed points",
              "< tolerance", m12_forced, _within_tolerance()),
        Check("theta.profile.generic", "a generic point of H^M has no vanishing thetanull", 0,
              profile(FixedLocus.M)),
        Check("theta.profile.M_PR", "a product of two surfaces has 36 vanishing thetanulls", 36,
              profile(FixedLocus.M_PR)),
        Check("theta.profile.products", "E x threefold gives 28, surface x surface gives 36", (28, 36),
              products),
        Check("theta.quadric_relation", "theta[e|e'](tau)^2 = Q[e|e'](theta_i(tau))", "< tolerance",
              lambda ctx: ThetaService.quadric_relation_check(ctx.samples[FixedLocus.M][0], ctx.config.theta),
              _within_tolerance()),
        Check("theta.isogeny", "N Omega_tau = Omega_tau2 N' and M Omega_tau = Omega_tau tA^-1",
              {"symbolic": True, "hermite": True, "numeric_residual": f"< {ISOGENY_TOLERANCE}"}, isogeny,
              lambda actual, cfg: actual["symbolic"] and actual["hermite"] and actual["numeric_residual"] < ISOGENY_TOLERANCE),
    ]


SUITE_CHECKS: Dict[Suite, Callable[[], List[Check]]] = {
    Suite.EXACT: _exact_checks,
    Suite.GROUP: _group_checks,
    Suite.VARIETY: _variety_checks,
    Suite.BOUNDARY: _boundary_checks,
    Suite.THETA: _theta_checks,
}


def run_check(check: Check, ctx: RunContext) -> CheckRecord:
    if check.slow and not ctx.config.slow:
        return CheckRecord(
            check_id=check.check_id,
            citation=check.citation,
            expected=to_jsonable(check.expected),
            status=CheckStatus.SKIPPED,
            message="requer --slow",
        )

    start = time.perf_counter()
    actual: Any = None
    message = ""
    try:
        actual = check.compute(ctx)
        status = CheckStatus.PASS if check.passes(actual, ctx.config) else CheckStatus.FAIL
    except Exception as e:
        logger.error(f"Erro na verificação {check.check_id}: {str(e)}")
        status = CheckStatus.FAIL
        message = f"{type(e).__name__}: {str(e)}"

    return CheckRecord(
        check_id=check.check_id,
        citation=check.citation,
        expected=to_jsonable(check.expected),
        actual=to_jsonable(actual),
        status=status,
        elapsed=time.perf_counter() - start,
        message=message,
    )


def run_suite(config: RunConfig, context: Optional[RunContext] = None) -> VerificationReport:
    """Executa as suítes selecionadas em ordem de dependência"""
    ctx = context or RunContext(config)
    report = VerificationReport.start(__version__, config)
    for suite in config.selected():
        logger.info(f"Iniciando suíte {suite.value}")
        for check in SUITE_CHECKS[suite]():
            record = run_check(check, ctx)
            JsonLogger.log_check(record.model_dump(mode="json"))
            report.add(record)
        logger.info(f"Suíte {suite.value} concluída")
    counts = report.counts()
    logger.info(f"Relatório: {counts['pass']} ok, {counts['fail']} falhas, {counts['skipped']} ignoradas")
    return report
