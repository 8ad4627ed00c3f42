"""Dados do sistema de raízes E6 na forma b e a tabela do grupo W(E6)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.core.errors import GroupMembershipError
from app.core.exact import Cyclotomic, ExactMatrix

P5_VARIABLES: Tuple[str, ...] = ("X0", "X1", "X2", "X3", "X6", "X7")
FIVE_VARIABLES: Tuple[str, ...] = ("X1", "X2", "X3", "X6", "X7")

Vec6 = Tuple[Fraction, ...]

# b(X, Y) = (1/3)X0Y0 + X1Y1 + X2Y2 + X3Y3 + X6Y6 + X7Y7
B_FORM_DIAGONAL: Tuple[Fraction, ...] = (Fraction(1, 3),) + (Fraction(1),) * 5
B_FORM_MATRIX = ExactMatrix.diagonal(B_FORM_DIAGONAL)


def vec6(*coords) -> Vec6:
    if len(coords) != 6:
        raise ValueError("Vec6 precisa de 6 coordenadas")
    return tuple(Fraction(c) for c in coords)


SIMPLE_ROOTS: Dict[int, Vec6] = {
    1: vec6(0, -1, -1, 0, 0, 0),
    2: vec6(Fraction(3, 2), Fraction(-1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)),
    3: vec6(0, 1, -1, 0, 0, 0),
    4: vec6(0, 0, 1, -1, 0, 0),
    5: vec6(0, 0, 0, 1, -1, 0),
    6: vec6(0, 0, 0, 0, 1, -1),
}

E6_EDGES = frozenset({(1, 4), (2, 3), (3, 4), (4, 5), (5, 6)})

ALPHA_HESSIAN = vec6(Fraction(-3, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
V1 = vec6(1, 0, 0, 0, 0, 0)

# Ações em C^6 (vetores coluna) induzidas por M_B, M_d, M_e, M_f
GENERATOR_MATRICES: Dict[str, ExactMatrix] = {
    "M_B": ExactMatrix(
        [
            [1, 0, 0, 0, 0, 0],
            [0, 1, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1, 0],
        ]
    ),
    "M_d": ExactMatrix.diagonal([1, 1, -1, -1, -1, -1]),
    "M_e": ExactMatrix.diagonal([1, 1, 1, -1, -1, 1]),
    "M_f": ExactMatrix(
        [
            [1, 3, 3, 3, 3, 3],
            [1, -1, 3, -1, -1, -1],
            [1, 3, -1, -1, -1, -1],
            [1, -1, -1, 3, -1, -1],
            [1, -1, -1, -1, -1, 3],
            [1, -1, -1, -1, 3, -1],
        ]
    ).scale(Fraction(1, 4)),
}

G3_MATRIX = ExactMatrix(
    [
        [-1, 0, 0, 0, 0, -3],
        [0, -1, -1, 1, 1, 0],
        [0, 1, -1, 1, -1, 0],
        [0, -1, -1, -1, -1, 0],
        [0, -1, 1, 1, -1, 0],
        [1, 0, 0, 0, 0, -1],
    ]
).scale(Fraction(1, 2))

_W = Cyclotomic.omega()
_W2 = Cyclotomic.omega_bar()
W3_COLUMNS: Tuple[Tuple[Cyclotomic, ...], ...] = (
    (Cyclotomic(3), Cyclotomic(0), Cyclotomic(0), Cyclotomic(0), Cyclotomic(0), Cyclotomic(-1, -2)),
    (Cyclotomic(0), Cyclotomic(1), Cyclotomic(0), _W, -_W2, Cyclotomic(0)),
    (Cyclotomic(0), Cyclotomic(0), Cyclotomic(1), -_W2, -_W, Cyclotomic(0)),
)

CLASS_C_CHARPOLY = (1, 3, 6, 7, 6, 3, 1)  # (x² + x + 1)³


@dataclass(frozen=True)
class WeylElement:
    """Matriz racional 6x6 que preserva b"""

    matrix: ExactMatrix

    def apply(self, vector: Sequence) -> tuple:
        return self.matrix.apply(vector)

    def __matmul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.matrix @ other.matrix)


@dataclass(frozen=True)
class EigenplaneBasis:
    """Base (colunas em Q(ω)^6) de um autoespaço de dimensão 3"""

    columns: Tuple[Tuple[Cyclotomic, ...], ...]
    eigenvalue: Cyclotomic

    def canonical(self) -> Tuple[Tuple[Cyclotomic, ...], ...]:
        reduced, _ = ExactMatrix(self.columns).rref()
        return tuple(
            tuple(Cyclotomic.coerce(x) for x in row) for row in reduced.rows if any(x != 0 for x in row)
        )

    def conj(self) -> "EigenplaneBasis":
        return EigenplaneBasis(
            tuple(tuple(Cyclotomic.coerce(x).conj() for x in col) for col in self.columns),
            self.eigenvalue.conj(),
        )


@dataclass
class GroupTable:
    """Grupo finito guardado como permutações de uma órbita fiel de 27 vetores"""

    orbit: Tuple[Vec6, ...]
    generators: Dict[str, ExactMatrix]
    permutations: np.ndarray
    generator_permutations: Dict[str, np.ndarray] = field(default_factory=dict)
    _index: Dict[bytes, int] = field(default_factory=dict, repr=False)
    _frame: Optional[Tuple[int, ...]] = field(default=None, repr=False)
    _frame_inverse: Optional[ExactMatrix] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        self.permutations = np.ascontiguousarray(self.permutations, dtype=np.uint8)
        self._index = {row.tobytes(): i for i, row in enumerate(self.permutations)}
        self._orbit_index = {v: i for i, v in enumerate(self.orbit)}
        if not self.generator_permutations:
            self.generator_permutations = {
                name: self.permutation_of(m) for name, m in self.generators.items()
            }

    @property
    def order(self) -> int:
        return len(self.permutations)

    def permutation_of(self, matrix: ExactMatrix) -> np.ndarray:
        """Permutação da órbita induzida pela matriz"""
        images = []
        for v in self.orbit:
            image = tuple(Fraction(x) for x in matrix.apply(v))
            if image not in self._orbit_index:
                raise GroupMembershipError("Matriz não preserva a órbita de 27 vetores")
            images.append(self._orbit_index[image])
        return np.array(images, dtype=np.uint8)

    def index_of_permutation(self, perm: np.ndarray) -> int:
        key = np.ascontiguousarray(perm, dtype=np.uint8).tobytes()
        if key not in self._index:
            raise GroupMembershipError("Permutação fora do grupo gerado")
        return self._index[key]

    def index_of(self, matrix: ExactMatrix) -> int:
        return self.index_of_permutation(self.permutation_of(matrix))

    def contains(self, matrix: ExactMatrix) -> bool:
        try:
            self.index_of(matrix)
            return True
        except GroupMembershipError:
            return False

    def _ensure_frame(self) -> None:
        if self._frame is not None:
            return
        chosen: List[int] = []
        for i, v in enumerate(self.orbit):
            candidate = ExactMatrix([self.orbit[j] for j in chosen] + [v])
            if candidate.rank() == len(chosen) + 1:
                chosen.append(i)
            if len(chosen) == 6:
                break
        self._frame = tuple(chosen)
        self._frame_inverse = ExactMatrix.from_columns([self.orbit[j] for j in chosen]).inverse()

    def matrix_of_permutation(self, perm: np.ndarray) -> ExactMatrix:
        """Recupera a matriz exata: g = V_p·V⁻¹"""
        self._ensure_frame()
        images = ExactMatrix.from_columns([self.orbit[int(perm[j])] for j in self._frame])
        return images @ self._frame_inverse

    def matrix(self, index: int) -> ExactMatrix:
        return self.matrix_of_permutation(self.permutations[index])

    def element(self, index: int) -> WeylElement:
        return WeylElement(self.matrix(index))

    @staticmethod
    def compose(left: np.ndarray, right: np.ndarray) -> np.ndarray:
        """Permutação de left∘right"""
        return left[right]

    def multiply(self, i: int, j: int) -> int:
        return self.index_of_permutation(self.compose(self.permutations[i], self.permutations[j]))

    def inverse(self, i: int) -> int:
        return self.index_of_permutation(np.argsort(self.permutations[i]).astype(np.uint8))

    def identity_index(self) -> int:
        return self.index_of_permutation(np.arange(len(self.orbit), dtype=np.uint8))

    def payload(self) -> bytes:
        return self.permutations.tobytes()
