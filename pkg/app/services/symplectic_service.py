import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.core.errors import IdentityFailure, NotInCentralizerError, NotSymplecticError
from app.core.exact import Cyclotomic, ExactMatrix, integer_kernel_of_rank
from app.models.symplectic import (
    EXPECTED_PLACEMENT,
    M12_MATRIX,
    M22_MATRIX,
    M_B_MATRIX,
    M_C_MATRIX,
    M_D_MATRIX,
    M_D_SMALL,
    M_E_SMALL,
    M_F_MATRIX,
    M_IP_MATRIX,
    M_MATRIX,
    M_PR_MATRIX,
    NAMED_MATRICES,
    STANDARD_E,
    T_MATRIX,
    GaussianLatticeVector,
    SympMatrix,
    UnitaryF4Matrix,
    f4_from_gaussian,
    f4_matmul,
    pack_f4_batch,
)

logger = logging.getLogger(__name__)

CENTRALIZER = "centralizer"
NORMALIZER_ONLY = "normalizer-only"
OUTSIDE = "outside"

U4_F4_ORDER = 77760


def _lattice_change_of_basis() -> Tuple[np.ndarray, np.ndarray]:
    """P = [f1..f4, Mf1..Mf4] e sua inversa inteira"""
    columns = [GaussianLatticeVector.f(i) for i in range(1, 5)]
    columns += [v.act(M_MATRIX) for v in columns]
    p = np.array([v.coords for v in columns], dtype=np.int64).T
    inv = ExactMatrix(p.tolist()).inverse()
    p_inv = np.array([[int(x) for x in row] for row in inv.rows], dtype=np.int64)
    return p, p_inv


_P, _P_INV = _lattice_change_of_basis()


class SymplecticService:

    @staticmethod
    def is_symplectic(matrix: SympMatrix) -> bool:
        """Verifica N·E·ᵗN = E"""
        n = matrix.array
        e = STANDARD_E.array
        return bool(np.array_equal(n @ e @ n.T, e))

    @staticmethod
    def classify_normalizer(matrix: SympMatrix) -> str:
        """Classifica N como centralizador, só normalizador ou fora de N_M"""
        if not SymplecticService.is_symplectic(matrix):
            raise NotSymplecticError("Matriz não é simplética")
        n = matrix.array
        m = M_MATRIX.array
        if np.array_equal(n @ m, m @ n):
            return CENTRALIZER
        m_inv = M_MATRIX.symplectic_inverse().array
        if np.array_equal(n @ m, m_inv @ n):
            return NORMALIZER_ONLY
        return OUTSIDE

    @staticmethod
    def alternating_form(x: GaussianLatticeVector, y: GaussianLatticeVector) -> int:
        """E(x, y) = ᵗx·E·y"""
        return int(x.array @ STANDARD_E.array @ y.array)

    @staticmethod
    def hermitian_form(x: GaussianLatticeVector, y: GaussianLatticeVector) -> Cyclotomic:
        """H_M(x, y) = E(x, My) - ω·E(x, y)"""
        e_xmy = SymplecticService.alternating_form(x, y.act(M_MATRIX))
        e_xy = SymplecticService.alternating_form(x, y)
        return Cyclotomic(e_xmy, -e_xy)

    @staticmethod
    def hermitian_gram() -> ExactMatrix:
        """Matriz de Gram de H_M na base f1..f4"""
        basis = [GaussianLatticeVector.f(i) for i in range(1, 5)]
        return ExactMatrix(
            [[SymplecticService.hermitian_form(x, y) for y in basis] for x in basis]
        )

    @staticmethod
    def in_gamma_2(matrix: SympMatrix) -> bool:
        """N ≡ I mod 2"""
        diff = matrix.array - np.eye(8, dtype=np.int64)
        return bool(np.all(diff % 2 == 0))

    @staticmethod
    def in_gamma_2_4(matrix: SympMatrix) -> bool:
        """N ∈ Γ(2) com diag(a·ᵗb) ≡ diag(c·ᵗd) ≡ 0 mod 4"""
        if not SymplecticService.is_symplectic(matrix):
            raise NotSymplecticError("Matriz não é simplética")
        if not SymplecticService.in_gamma_2(matrix):
            return False
        a, b, c, d = matrix.blocks()
        return bool(
            np.all(np.diag(a @ b.T) % 4 == 0) and np.all(np.diag(c @ d.T) % 4 == 0)
        )

    @staticmethod
    def matrix_order(matrix: SympMatrix, bound: int = 64) -> Optional[int]:
        current = matrix
        for k in range(1, bound + 1):
            if current.is_identity():
                return k
            current = current @ matrix
        return None

    @staticmethod
    def conjugation_identities() -> Dict[str, bool]:
        """Identidades entre as matrizes nomeadas; levanta IdentityFailure na primeira falha"""
        results: Dict[str, bool] = {}

        def record(name: str, ok: bool, detail: SympMatrix) -> None:
            results[name] = ok
            if not ok:
                logger.error(f"Identidade {name} falhou:\n{detail.to_text()}")
                raise IdentityFailure(f"Identidade {name} falhou")

        t_m_tinv = T_MATRIX @ M_MATRIX @ T_MATRIX.inverse()
        record("T.M.T^-1 = M_22", t_m_tinv == M22_MATRIX, t_m_tinv)

        order = SymplecticService.matrix_order(M12_MATRIX)
        record("order(M_12) = 12", order == 12, M12_MATRIX)

        fourth = M12_MATRIX.power(4)
        record("M_12^4 = M", fourth == M_MATRIX, fourth)

        cube = M12_MATRIX.power(3)
        record("M_12^3 = ±M_C", cube == M_C_MATRIX or cube == -M_C_MATRIX, cube)

        square_c = M_C_MATRIX.power(2)
        record("M_C^2 = -I", square_c == -SympMatrix.identity(), square_c)

        commutator = M_B_MATRIX @ M_D_MATRIX
        record("M_B.M_D = M_D.M_B", commutator == M_D_MATRIX @ M_B_MATRIX, commutator)

        m = M_MATRIX.array
        relation = m @ m + m + np.eye(8, dtype=np.int64)
        record("M^2 + M + I = 0", not relation.any(), SympMatrix.from_array(relation))

        logger.info(f"{len(results)} identidades de conjugação verificadas")
        return results

    @staticmethod
    def fixed_sublattice(matrix: SympMatrix) -> List[Tuple[int, ...]]:
        """Base Z saturada de ker(N - I) ∩ Z^8 (posto 4)"""
        diff = matrix.array - np.eye(8, dtype=np.int64)
        return integer_kernel_of_rank(diff.tolist(), 4)

    @staticmethod
    def fixed_sublattice_det(matrix: SympMatrix) -> int:
        """det da forma E restrita a ker(N - I)"""
        basis = SymplecticService.fixed_sublattice(matrix)
        e = STANDARD_E.array
        gram = [[int(np.array(u) @ e @ np.array(v)) for v in basis] for u in basis]
        det = ExactMatrix(gram).determinant()
        logger.debug(f"Gram de E no sub-reticulado fixo: {gram}, det {det}")
        return int(det)

    @staticmethod
    def gaussian_matrix(matrix: SympMatrix) -> List[List[Tuple[int, int]]]:
        """N na base f1..f4 sobre Z[ω]: entrada (i, j) = (a, b) para a + bω"""
        if SymplecticService.classify_normalizer(matrix) != CENTRALIZER:
            raise NotInCentralizerError("Matriz não comuta com M")
        coords = _P_INV @ matrix.array @ _P
        return [[(int(coords[i, j]), int(coords[i + 4, j])) for j in range(4)] for i in range(4)]

    @staticmethod
    def reduce_to_unitary(matrix: SympMatrix) -> UnitaryF4Matrix:
        """Redução módulo 2 de N ∈ C_M em U(4, F4)"""
        gaussian = SymplecticService.gaussian_matrix(matrix)
        reduced = UnitaryF4Matrix(
            tuple(f4_from_gaussian(a, b) for row in gaussian for (a, b) in row)
        )
        if not reduced.is_unitary():
            raise IdentityFailure("Redução não preserva a forma hermitiana")
        return reduced

    @staticmethod
    def centralizer_generators() -> Dict[str, SympMatrix]:
        """Geradores de Schreier da parte de C_M gerada pelas matrizes nomeadas (transversal {I, M_B})"""
        inside = {
            "M": M_MATRIX,
            "M_C": M_C_MATRIX,
            "M_D": M_D_MATRIX,
            "M_pr": M_PR_MATRIX,
            "M_d": M_D_SMALL,
            "M_e": M_E_SMALL,
        }
        t = M_B_MATRIX
        t_inv = t.symplectic_inverse()
        generators = dict(inside)
        for name, x in inside.items():
            generators[f"M_B.{name}.M_B^-1"] = t @ x @ t_inv
        generators["M_f.M_B^-1"] = M_F_MATRIX @ t_inv
        generators["M_B.M_f"] = t @ M_F_MATRIX
        generators["M_f^2"] = M_F_MATRIX @ M_F_MATRIX
        for name, g in generators.items():
            if SymplecticService.classify_normalizer(g) != CENTRALIZER:
                raise NotInCentralizerError(f"Gerador {name} fora do centralizador")
        return generators

    @staticmethod
    def unitary_closure(generators: Optional[Sequence[UnitaryF4Matrix]] = None) -> int:
        """Ordem do subgrupo de U(4, F4) gerado (busca em largura em lotes numpy)"""
        if generators is None:
            generators = [
                SymplecticService.reduce_to_unitary(g)
                for g in SymplecticService.centralizer_generators().values()
            ]
        gens = np.stack([g.array for g in generators])
        identity = np.eye(4, dtype=np.uint8)[None, :, :]
        seen = set(pack_f4_batch(identity).tolist())
        frontier = identity
        while len(frontier):
            fresh = []
            for g in gens:
                products = f4_matmul(frontier, g)
                keys = pack_f4_batch(products).tolist()
                keep = []
                for idx, key in enumerate(keys):
                    if key not in seen:
                        seen.add(key)
                        keep.append(idx)
                if keep:
                    fresh.append(products[keep])
            frontier = np.concatenate(fresh) if fresh else np.empty((0, 4, 4), dtype=np.uint8)
            logger.debug(f"Fecho unitário: {len(seen)} elementos")
        logger.info(f"Subgrupo de U(4,F4) gerado tem ordem {len(seen)}")
        return len(seen)

    @staticmethod
    def placement_table() -> Dict[str, Tuple[str, str]]:
        """(esperado, obtido) para cada matriz nomeada de N_M"""
        table = {}
        for name, expected in EXPECTED_PLACEMENT.items():
            table[name] = (expected, SymplecticService.classify_normalizer(NAMED_MATRICES[name]))
        return table
