import logging
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from app.core.exact import ExactMatrix
from app.core.polyring import MultiPoly, SubstitutionMap
from app.models.variety import (
    EMBEDDING_SLOTS,
    IncidenceReport,
    ProjectiveLine,
    bits,
    dot_mod2,
    embedding_matrix,
)
from app.models.weyl import GroupTable
from app.services.variety_service import LINE
from app.services.weyl_service import WeylService, projective_canonical

logger = logging.getLogger(__name__)

L_ROWS = ((1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0))
CUSP_P = (1, 0, 0, 0, 0, 0)
# Coordenadas X_abcd de P15 com (a, c) = (0, 0)
P3_SUPPORT = tuple(i for i in range(16) if bits(i)[0] == 0 and bits(i)[2] == 0)


def beta_action(beta: int, vector: Sequence) -> Tuple:
    """X_σ ↦ (-1)^{β·σ} X_σ"""
    return tuple(((-1) ** dot_mod2(beta, sigma)) * x for sigma, x in enumerate(vector))


def gamma_action(gamma: int, vector: Sequence) -> Tuple:
    """X_σ ↦ X_{σ+γ}"""
    return tuple(vector[sigma ^ gamma] for sigma in range(16))


class BoundaryService:

    @staticmethod
    def boundary_lines(group: GroupTable) -> List[ProjectiveLine]:
        orbit = WeylService.subspace_orbit(group, L_ROWS)
        return [ProjectiveLine(tuple(tuple(Fraction(x) for x in r) for r in state)) for state in orbit]

    @staticmethod
    def boundary_incidence(poly: MultiPoly, group: GroupTable) -> IncidenceReport:
        """45 retas, 27 cúspides, 3 cúspides por reta e 5 retas por cúspide"""
        lines = BoundaryService.boundary_lines(group)
        cusps: Dict[Tuple[Fraction, ...], None] = {}
        for i, first in enumerate(lines):
            for second in lines[i + 1:]:
                meet = first.intersection(second)
                if len(meet) == 1:
                    cusps.setdefault(projective_canonical(meet[0]), None)
        cusp_list = list(cusps)

        per_line = [sum(1 for c in cusp_list if line.contains(c)) for line in lines]
        per_cusp = [sum(1 for line in lines if line.contains(c)) for c in cusp_list]
        l_line = ProjectiveLine.from_rows(L_ROWS)
        on_l = [c for c in cusp_list if l_line.contains(c)]

        weight_orbit = set(WeylService.orbit(group, WeylService.fundamental_weight(2), projective=True))

        f_on_lines = all(
            SubstitutionMap(line.parametrize(LINE), LINE)(poly).is_zero() for line in lines
        )
        report = IncidenceReport(
            lines=lines,
            cusps=cusp_list,
            cusps_per_line=per_line,
            lines_per_cusp=per_cusp,
            cusps_on_l=on_l,
            cusps_match_weight_orbit=set(cusp_list) == weight_orbit,
            f_vanishes_on_lines=f_on_lines,
        )
        logger.info(f"Fronteira: {report.summary()}")
        return report

    @staticmethod
    def heisenberg_boundary_check() -> Dict[str, object]:
        """P3 = {X_abcd = 0 para (a, c) ≠ (0, 0)} encontra o autoespaço P5 na reta l"""
        embedding = embedding_matrix()
        outside = [embedding.row(i) for i in range(16) if i not in P3_SUPPORT]
        kernel = ExactMatrix(outside).nullspace()
        intersection = ProjectiveLine.from_rows(kernel) if len(kernel) == 2 else None

        p3_basis = [tuple(1 if j == i else 0 for j in range(16)) for i in P3_SUPPORT]
        fixed_by_beta = all(
            beta_action(beta, v) == v for beta in (0b1000, 0b0010, 0b1010) for v in p3_basis
        )
        translates_stay = all(
            {j for j, x in enumerate(gamma_action(gamma, v)) if x} <= set(P3_SUPPORT)
            for gamma in (0b0100, 0b0001, 0b0101)
            for v in p3_basis
        )
        point_p = embedding.apply(CUSP_P)
        p_is_image = all((x == 1) == (i == 0) for i, x in enumerate(point_p))
        return {
            "intersection_dimension": len(kernel) - 1,
            "is_line_l": intersection == ProjectiveLine.from_rows(L_ROWS),
            "fixed_by_beta": fixed_by_beta,
            "stable_under_gamma": translates_stay,
            "point_p_in_p5": p_is_image and EMBEDDING_SLOTS[0] == "X0",
        }
