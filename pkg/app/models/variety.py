"""Objetos da quártica-dez X ⊂ P5 e do mergulho P5 ⊂ P15."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from app.core.exact import ExactMatrix
from app.core.polyring import MultiPoly
from app.models.weyl import P5_VARIABLES

P15_VARIABLES: Tuple[str, ...] = tuple(f"Y{i}" for i in range(16))

# Variável de P5 associada a cada coordenada X_σ de P15 (σ = ε1ε2ε3ε4 em binário)
EMBEDDING_SLOTS: Tuple[str, ...] = (
    "X0", "X1", "X2", "X3", "X1", "X1", "X6", "X7",
    "X2", "X7", "X2", "X6", "X3", "X6", "X7", "X3",
)

# Matriz A (mod 2) que age nos índices por σ ↦ σA
A_MOD2: Tuple[Tuple[int, ...], ...] = (
    (1, 0, 1, 0),
    (0, 1, 0, 1),
    (1, 0, 0, 0),
    (0, 1, 0, 0),
)

EXPECTED_M_CYCLES: Tuple[Tuple[int, ...], ...] = (
    (1, 4, 5),
    (2, 8, 10),
    (3, 12, 15),
    (6, 13, 11),
    (7, 9, 14),
)

Characteristic = Tuple[int, int]


def bits(index: int) -> Tuple[int, int, int, int]:
    """Índice 0..15 em (ε1, ε2, ε3, ε4)"""
    return ((index >> 3) & 1, (index >> 2) & 1, (index >> 1) & 1, index & 1)


def from_bits(vector: Sequence[int]) -> int:
    e1, e2, e3, e4 = (int(x) % 2 for x in vector)
    return (e1 << 3) | (e2 << 2) | (e3 << 1) | e4


def dot_mod2(a: int, b: int) -> int:
    return bin(a & b).count("1") % 2


def is_even(ch: Characteristic) -> bool:
    return dot_mod2(ch[0], ch[1]) == 0


def even_characteristics() -> List[Characteristic]:
    return [(e, f) for e in range(16) for f in range(16) if is_even((e, f))]


def odd_characteristics() -> List[Characteristic]:
    return [(e, f) for e in range(16) for f in range(16) if not is_even((e, f))]


def embedding_matrix() -> ExactMatrix:
    """Matriz 16x6 do mergulho linear P5 → P15"""
    return ExactMatrix(
        [[1 if slot == name else 0 for name in P5_VARIABLES] for slot in EMBEDDING_SLOTS]
    )


@dataclass
class QuadricFamily:
    """As 136 quádricas Q[ε|ε′] (em P15 e restritas a P5)"""

    p15: Dict[Characteristic, MultiPoly]
    p5: Dict[Characteristic, MultiPoly]

    def __len__(self) -> int:
        return len(self.p5)

    def characteristics(self) -> List[Characteristic]:
        return sorted(self.p5)

    def items(self):
        return sorted(self.p5.items())


@dataclass(frozen=True)
class ProjectiveLine:
    """Reta de P5 em forma escalonada reduzida 2x6"""

    rows: Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ProjectiveLine":
        reduced, pivots = ExactMatrix(rows).rref()
        if len(pivots) != 2:
            raise ValueError(f"Reta precisa de posto 2, obtido {len(pivots)}")
        return cls(tuple(tuple(Fraction(x) for x in reduced.row(r)) for r in range(2)))

    def contains(self, point: Sequence) -> bool:
        return ExactMatrix(list(self.rows) + [tuple(point)]).rank() == 2

    def intersection(self, other: "ProjectiveLine") -> Tuple[Tuple[Fraction, ...], ...]:
        """Base da interseção dos dois planos lineares de C^6"""
        # a·r1 + b·r2 = c·s1 + d·s2: núcleo da matriz 6x4 [r1 r2 -s1 -s2]
        columns = list(self.rows) + [tuple(-x for x in r) for r in other.rows]
        kernel = ExactMatrix.from_columns(columns).nullspace()
        points = []
        for coeffs in kernel:
            point = tuple(
                coeffs[0] * a + coeffs[1] * b for a, b in zip(self.rows[0], self.rows[1])
            )
            points.append(point)
        return tuple(points)

    def parametrize(self, variables: Sequence[str]) -> Dict[str, MultiPoly]:
        """X = s·r1 + t·r2 como atribuição às variáveis de P5"""
        return {
            name: MultiPoly.linear_form(variables, [self.rows[0][i], self.rows[1][i]])
            for i, name in enumerate(P5_VARIABLES)
        }


@dataclass
class IncidenceReport:
    """Retas de fronteira, cúspides e incidências"""

    lines: List[ProjectiveLine]
    cusps: List[Tuple[Fraction, ...]]
    cusps_per_line: List[int] = field(default_factory=list)
    lines_per_cusp: List[int] = field(default_factory=list)
    cusps_on_l: List[Tuple[Fraction, ...]] = field(default_factory=list)
    cusps_match_weight_orbit: bool = False
    f_vanishes_on_lines: bool = False

    @property
    def degrees(self) -> Tuple[set, set]:
        return set(self.cusps_per_line), set(self.lines_per_cusp)

    def summary(self) -> Dict[str, object]:
        return {
            "lines": len(self.lines),
            "cusps": len(self.cusps),
            "cusps_per_line": sorted(set(self.cusps_per_line)),
            "lines_per_cusp": sorted(set(self.lines_per_cusp)),
            "cusps_on_l": [[str(x) for x in p] for p in self.cusps_on_l],
            "cusps_match_weight_orbit": self.cusps_match_weight_orbit,
            "f_vanishes_on_lines": self.f_vanishes_on_lines,
        }
