"""Matrizes inteiras 8x8, vetores do reticulado Z[ω] e matrizes sobre F4.

Blocos 2x2 que são múltiplos da identidade são montados com ``np.kron(m, I2)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

import numpy as np

from app.core.exact import ExactMatrix

I2 = np.eye(2, dtype=np.int64)
I4 = np.eye(4, dtype=np.int64)


@dataclass(frozen=True)
class SympMatrix:
    """Matriz inteira 8x8 (imutável)"""

    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != 8 or any(len(row) != 8 for row in self.entries):
            raise ValueError("SympMatrix precisa ser 8x8")

    @classmethod
    def from_array(cls, array: np.ndarray) -> "SympMatrix":
        array = np.asarray(array)
        return cls(tuple(tuple(int(x) for x in row) for row in array))

    @classmethod
    def from_blocks(cls, a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray) -> "SympMatrix":
        return cls.from_array(np.block([[a, b], [c, d]]))

    @classmethod
    def identity(cls) -> "SympMatrix":
        return cls.from_array(np.eye(8, dtype=np.int64))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def blocks(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        m = self.array
        return m[:4, :4], m[:4, 4:], m[4:, :4], m[4:, 4:]

    def __matmul__(self, other: "SympMatrix") -> "SympMatrix":
        return SympMatrix.from_array(self.array @ other.array)

    def __neg__(self) -> "SympMatrix":
        return SympMatrix.from_array(-self.array)

    def transpose(self) -> "SympMatrix":
        return SympMatrix.from_array(self.array.T)

    def symplectic_inverse(self) -> "SympMatrix":
        """N⁻¹ = -E·ᵗN·E, válido para N simplética"""
        e = STANDARD_E.array
        return SympMatrix.from_array(-e @ self.array.T @ e)

    def inverse(self) -> "SympMatrix":
        """Inversa exata (qualquer matriz unimodular)"""
        inv = ExactMatrix(self.entries).inverse()
        if any(x.denominator != 1 for row in inv.rows for x in row):
            raise ValueError("Matriz não é unimodular")
        return SympMatrix(tuple(tuple(int(x) for x in row) for row in inv.rows))

    def power(self, exponent: int) -> "SympMatrix":
        if exponent < 0:
            return self.inverse().power(-exponent)
        result = np.eye(8, dtype=np.int64)
        base = self.array
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return SympMatrix.from_array(result)

    def is_identity(self) -> bool:
        return self == SympMatrix.identity()

    def to_text(self) -> str:
        return "\n".join(" ".join(f"{x:3d}" for x in row) for row in self.entries)


@dataclass(frozen=True)
class GaussianLatticeVector:
    """Vetor de Z^8 visto como elemento do Z[ω]-módulo em que ω age como M"""

    coords: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != 8:
            raise ValueError("Vetor do reticulado precisa de 8 coordenadas")

    @classmethod
    def basis(cls, i: int) -> "GaussianLatticeVector":
        """e_i (1 <= i <= 8)"""
        return cls(tuple(1 if j == i - 1 else 0 for j in range(8)))

    @classmethod
    def f(cls, i: int) -> "GaussianLatticeVector":
        """f_i = e_i + e_{i+4} (1 <= i <= 4)"""
        return cls(tuple(1 if j in (i - 1, i + 3) else 0 for j in range(8)))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)

    def act(self, matrix: SympMatrix) -> "GaussianLatticeVector":
        return GaussianLatticeVector(tuple(int(x) for x in matrix.array @ self.array))

    def __add__(self, other: "GaussianLatticeVector") -> "GaussianLatticeVector":
        return GaussianLatticeVector(tuple(x + y for x, y in zip(self.coords, other.coords)))


# F4 = {0, 1, ω, ω²} codificado como a + 2b para a + bω; soma é XOR
F4_ZERO, F4_ONE, F4_OMEGA, F4_OMEGA2 = 0, 1, 2, 3
F4_MUL = np.array(
    [
        [0, 0, 0, 0],
        [0, 1, 2, 3],
        [0, 2, 3, 1],
        [0, 3, 1, 2],
    ],
    dtype=np.uint8,
)
F4_CONJ = np.array([0, 1, 3, 2], dtype=np.uint8)
F4_NAMES = ("0", "1", "w", "w^2")


def f4_from_gaussian(a: int, b: int) -> int:
    """Redução módulo 2 de a + bω"""
    return (a % 2) + 2 * (b % 2)


def f4_matmul(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Produto de matrizes (ou lotes de matrizes) 4x4 sobre F4"""
    products = F4_MUL[left[..., :, :, None], right[..., None, :, :]]
    return np.bitwise_xor.reduce(products, axis=-2).astype(np.uint8)


@dataclass(frozen=True)
class UnitaryF4Matrix:
    """Matriz 4x4 sobre F4"""

    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != 16 or any(x not in (0, 1, 2, 3) for x in self.entries):
            raise ValueError("UnitaryF4Matrix precisa de 16 entradas em F4")

    @classmethod
    def from_array(cls, array: np.ndarray) -> "UnitaryF4Matrix":
        return cls(tuple(int(x) for x in np.asarray(array).reshape(16)))

    @classmethod
    def identity(cls) -> "UnitaryF4Matrix":
        return cls.from_array(np.eye(4, dtype=np.uint8))

    @classmethod
    def scalar(cls, value: int) -> "UnitaryF4Matrix":
        return cls.from_array(np.eye(4, dtype=np.uint8) * value)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.uint8).reshape(4, 4)

    def __matmul__(self, other: "UnitaryF4Matrix") -> "UnitaryF4Matrix":
        return UnitaryF4Matrix.from_array(f4_matmul(self.array, other.array))

    def conj(self) -> "UnitaryF4Matrix":
        return UnitaryF4Matrix.from_array(F4_CONJ[self.array])

    def transpose(self) -> "UnitaryF4Matrix":
        return UnitaryF4Matrix.from_array(self.array.T)

    def is_unitary(self) -> bool:
        """ᵗU·conj(U) = I (forma de Gram reduzida ≡ identidade)"""
        return (self.transpose() @ self.conj()) == UnitaryF4Matrix.identity()

    def pack(self) -> int:
        key = 0
        for x in reversed(self.entries):
            key = (key << 2) | x
        return key

    def to_text(self) -> str:
        rows = [self.entries[4 * i: 4 * i + 4] for i in range(4)]
        return "\n".join(" ".join(F4_NAMES[x] for x in row) for row in rows)


def pack_f4_batch(batch: np.ndarray) -> np.ndarray:
    """Empacota um lote (n, 4, 4) em inteiros de 32 bits"""
    flat = batch.reshape(len(batch), 16).astype(np.uint64)
    weights = (np.uint64(1) << (np.arange(16, dtype=np.uint64) * np.uint64(2)))
    return (flat * weights).sum(axis=1)


def _kron2(m: Sequence[Sequence[int]]) -> np.ndarray:
    return np.kron(np.array(m, dtype=np.int64), I2)


def _block_diag(a: np.ndarray, d: np.ndarray) -> np.ndarray:
    zero = np.zeros((4, 4), dtype=np.int64)
    return np.block([[a, zero], [zero, d]])


def _transpose_inverse(a: np.ndarray) -> np.ndarray:
    inv = ExactMatrix(a.tolist()).inverse()
    return np.array([[int(x) for x in row] for row in inv.rows], dtype=np.int64).T


# Blocos 4x4
A_BLOCK = _kron2([[-1, -1], [1, 0]])
B_BLOCK = _kron2([[0, 1], [1, 0]])
BF_BLOCK = _kron2([[1, 0], [0, -1]])
A_P_BLOCK = np.array(
    [
        [-1, 0, -1, 0],
        [0, 1, 0, 0],
        [1, 0, 0, 0],
        [0, 0, 0, 1],
    ],
    dtype=np.int64,
)
B_IP_BLOCK = np.array(
    [
        [0, -2, 0, 0],
        [2, 0, 0, 0],
        [0, 2, 0, -2],
        [-2, 0, 2, 0],
    ],
    dtype=np.int64,
)
C_BLOCK = np.array([[0, 1], [-1, 0]], dtype=np.int64)
D_BLOCK = np.array([[0, 1], [1, 0]], dtype=np.int64)

STANDARD_E = SympMatrix.from_array(
    np.block([[np.zeros((4, 4), dtype=np.int64), I4], [-I4, np.zeros((4, 4), dtype=np.int64)]])
)

M_MATRIX = SympMatrix.from_array(_block_diag(A_BLOCK, _transpose_inverse(A_BLOCK)))

T_MATRIX = SympMatrix.from_array(
    _kron2([[1, 1, 0, -1], [1, 0, -1, 1], [0, 1, 1, -1], [0, -1, 0, 1]])
)
M22_MATRIX = SympMatrix.from_array(
    _kron2([[0, 0, -1, 0], [0, -1, 0, 1], [1, 0, -1, 0], [0, -1, 0, 0]])
)

M_B_MATRIX = SympMatrix.from_array(_block_diag(B_BLOCK, B_BLOCK))

M_D_SMALL = SympMatrix(
    (
        (1, 0, 0, 0, 2, 0, -1, 0),
        (0, 1, 0, 0, 0, 0, 0, 0),
        (0, 0, 1, 0, -1, 0, 2, 0),
        (0, 0, 0, 1, 0, 0, 0, 0),
        (0, 0, 0, 0, 1, 0, 0, 0),
        (0, 0, 0, 0, 0, 1, 0, 0),
        (0, 0, 0, 0, 0, 0, 1, 0),
        (0, 0, 0, 0, 0, 0, 0, 1),
    )
)
M_E_SMALL = SympMatrix(
    (
        (-1, 0, 0, 0, 0, 1, 0, -2),
        (0, 1, 0, 0, -1, 0, -1, 0),
        (0, 0, -1, 0, 0, 1, 0, 1),
        (0, 0, 0, 1, 2, 0, -1, 0),
        (0, 0, 0, 0, -1, 0, 0, 0),
        (0, 0, 0, 0, 0, 1, 0, 0),
        (0, 0, 0, 0, 0, 0, -1, 0),
        (0, 0, 0, 0, 0, 0, 0, 1),
    )
)
M_F_MATRIX = SympMatrix.from_blocks(np.zeros((4, 4), dtype=np.int64), BF_BLOCK, -BF_BLOCK, np.zeros((4, 4), dtype=np.int64))

M_PR_MATRIX = SympMatrix.from_array(_block_diag(A_P_BLOCK, _transpose_inverse(A_P_BLOCK)))
M_IP_MATRIX = SympMatrix.from_blocks(
    A_P_BLOCK, B_IP_BLOCK, np.zeros((4, 4), dtype=np.int64), _transpose_inverse(A_P_BLOCK)
)

M_C_MATRIX = SympMatrix.from_array(np.kron(I4, C_BLOCK))
M_D_MATRIX = SympMatrix.from_array(np.kron(I4, D_BLOCK))
M12_MATRIX = M_MATRIX @ M_C_MATRIX


def heisenberg_matrix(beta: Sequence[int] = (0, 0, 0, 0), gamma: Sequence[int] = (0, 0, 0, 0)) -> SympMatrix:
    """M_{β,0} (b = diag(2β)) ou M_{0,γ} (c = diag(2γ))"""
    b = np.diag(2 * np.array(beta, dtype=np.int64))
    c = np.diag(2 * np.array(gamma, dtype=np.int64))
    if b.any() and c.any():
        raise ValueError("Use β ou γ, não ambos")
    return SympMatrix.from_blocks(I4, b, c, I4)


NAMED_MATRICES: Dict[str, SympMatrix] = {
    "E": STANDARD_E,
    "M": M_MATRIX,
    "T": T_MATRIX,
    "M_22": M22_MATRIX,
    "M_B": M_B_MATRIX,
    "M_d": M_D_SMALL,
    "M_e": M_E_SMALL,
    "M_f": M_F_MATRIX,
    "M_pr": M_PR_MATRIX,
    "M_ip": M_IP_MATRIX,
    "M_C": M_C_MATRIX,
    "M_D": M_D_MATRIX,
    "M_12": M12_MATRIX,
    "M_beta_1000": heisenberg_matrix(beta=(1, 0, 0, 0)),
    "M_gamma_1000": heisenberg_matrix(gamma=(1, 0, 0, 0)),
}

# Posição de cada matriz nomeada em N_M
EXPECTED_PLACEMENT: Dict[str, str] = {
    "M": "centralizer",
    "M_B": "normalizer-only",
    "M_d": "centralizer",
    "M_e": "centralizer",
    "M_f": "normalizer-only",
    "M_pr": "centralizer",
    "M_ip": "centralizer",
    "M_C": "centralizer",
    "M_D": "centralizer",
    "M_12": "centralizer",
}


def named_matrix(name: str) -> SympMatrix:
    if name not in NAMED_MATRICES:
        raise KeyError(f"Matriz desconhecida: {name}")
    return NAMED_MATRICES[name]


def matrices_to_text(names: Iterable[str]) -> str:
    blocks = []
    for name in names:
        blocks.append(f"[{name}]\n{named_matrix(name).to_text()}")
    return "\n\n".join(blocks)
