"""Pontos do semiespaço de Siegel e características teta."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

import numpy as np

from app.core.errors import InvalidSiegelPointError

SYMMETRY_TOLERANCE = 1e-12


class FixedLocus(str, Enum):
    """Subdomínios de pontos fixos amostrados"""

    M = "M"
    M_MB = "M_MB"
    M12 = "M12"
    M_MB_MD = "M_MB_MD"
    M_PR = "M_PR"


@dataclass(frozen=True, eq=False)
class SiegelPoint:
    """Matriz simétrica complexa g x g com parte imaginária definida positiva"""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        tau = np.asarray(self.matrix, dtype=np.complex128)
        if tau.ndim != 2 or tau.shape[0] != tau.shape[1]:
            raise InvalidSiegelPointError(f"Matriz não quadrada: {tau.shape}")
        if np.abs(tau - tau.T).max() > SYMMETRY_TOLERANCE * max(1.0, np.abs(tau).max()):
            raise InvalidSiegelPointError("Matriz não simétrica")
        tau = (tau + tau.T) / 2
        try:
            np.linalg.cholesky(tau.imag)
        except np.linalg.LinAlgError:
            raise InvalidSiegelPointError("Parte imaginária não é definida positiva")
        object.__setattr__(self, "matrix", tau)

    @property
    def genus(self) -> int:
        return self.matrix.shape[0]

    def scaled(self, factor: float) -> "SiegelPoint":
        return SiegelPoint(self.matrix * factor)

    def distance(self, other: "SiegelPoint") -> float:
        return float(np.abs(self.matrix - other.matrix).max())

    @classmethod
    def block_diagonal(cls, *blocks: "SiegelPoint") -> "SiegelPoint":
        size = sum(b.genus for b in blocks)
        tau = np.zeros((size, size), dtype=np.complex128)
        offset = 0
        for block in blocks:
            g = block.genus
            tau[offset:offset + g, offset:offset + g] = block.matrix
            offset += g
        return cls(tau)


@dataclass(frozen=True)
class ThetaChar:
    """Característica [ε|ε′] com ε, ε′ ∈ {0,1}^g"""

    epsilon: Tuple[int, ...]
    epsilon_prime: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.epsilon) != len(self.epsilon_prime):
            raise ValueError("ε e ε′ com tamanhos diferentes")
        if any(x not in (0, 1) for x in self.epsilon + self.epsilon_prime):
            raise ValueError("Característica precisa ter entradas 0/1")

    @classmethod
    def from_indices(cls, eps: int, eps_prime: int, genus: int = 4) -> "ThetaChar":
        """Índices inteiros com ε1 como bit mais significativo"""
        def unpack(n: int) -> Tuple[int, ...]:
            return tuple((n >> (genus - 1 - i)) & 1 for i in range(genus))

        return cls(unpack(eps), unpack(eps_prime))

    @property
    def genus(self) -> int:
        return len(self.epsilon)

    @property
    def indices(self) -> Tuple[int, int]:
        def pack(v: Tuple[int, ...]) -> int:
            n = 0
            for x in v:
                n = (n << 1) | x
            return n

        return pack(self.epsilon), pack(self.epsilon_prime)

    @property
    def parity(self) -> int:
        return sum(a * b for a, b in zip(self.epsilon, self.epsilon_prime)) % 2

    @property
    def is_even(self) -> bool:
        return self.parity == 0

    def __str__(self) -> str:
        return "[" + "".join(map(str, self.epsilon)) + "|" + "".join(map(str, self.epsilon_prime)) + "]"


def all_characteristics(genus: int = 4) -> List[ThetaChar]:
    n = 1 << genus
    return [ThetaChar.from_indices(e, f, genus) for e in range(n) for f in range(n)]


def even_theta_characteristics(genus: int = 4) -> List[ThetaChar]:
    return [ch for ch in all_characteristics(genus) if ch.is_even]


def odd_theta_characteristics(genus: int = 4) -> List[ThetaChar]:
    return [ch for ch in all_characteristics(genus) if not ch.is_even]


@dataclass
class VanishingProfile:
    """Contagem de thetanulls pares nulos em um ponto"""

    vanishing: int
    ambiguous: int
    classification: str
    vanishing_characteristics: List[ThetaChar]

    def summary(self) -> dict:
        return {
            "vanishing": self.vanishing,
            "ambiguous": self.ambiguous,
            "classification": self.classification,
        }
