"""Constantes teta numéricas e a ponte com a variedade exata.

Convenção: θ[ε|ε′](τ, z) = Σ_m exp(πi[(m+ε/2)τ(m+ε/2)ᵗ + 2(m+ε/2)(z+ε′/2)ᵗ]),
somando sobre |m_i + ε_i/2| ≤ N.
"""
import logging
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from app.config import settings
from app.core.errors import ConvergenceError, IdentityFailure, InvalidSiegelPointError
from app.core.exact import ExactMatrix, to_complex
from app.core.polyring import MultiPoly
from app.models.symplectic import (
    M12_MATRIX,
    M_B_MATRIX,
    M_C_MATRIX,
    M_D_MATRIX,
    M_MATRIX,
    M_PR_MATRIX,
    SympMatrix,
)
from app.models.theta import (
    FixedLocus,
    SiegelPoint,
    ThetaChar,
    VanishingProfile,
    even_theta_characteristics,
    odd_theta_characteristics,
)
from app.models.variety import EXPECTED_M_CYCLES
from app.schemas.run_config import ThetaConfig
from app.services.quadric_service import QuadricService

logger = logging.getLogger(__name__)

# Índices θ_i usados como coordenadas (X0, X1, X2, X3, X6, X7)
P5_THETA_INDICES = (0, 1, 2, 3, 6, 7)

PROFILE_CLASSES: Dict[int, str] = {
    0: "generic",
    28: "elliptic x threefold",
    36: "surface x surface",
    96: "torus^2 x surface",
    120: "torus^4 boundary",
}

FIXING_MATRICES: Dict[FixedLocus, Dict[str, SympMatrix]] = {
    FixedLocus.M: {"M": M_MATRIX},
    FixedLocus.M_MB: {"M": M_MATRIX, "M_B": M_B_MATRIX},
    FixedLocus.M12: {"M": M_MATRIX, "M_C": M_C_MATRIX, "M_12": M12_MATRIX},
    FixedLocus.M_MB_MD: {"M": M_MATRIX, "M_B": M_B_MATRIX, "M_D": M_D_MATRIX},
    FixedLocus.M_PR: {"M": M_MATRIX, "M_pr": M_PR_MATRIX},
}

I2 = np.eye(2, dtype=np.complex128)


@lru_cache(maxsize=64)
def _shifted_lattice(truncation: int, epsilon: Tuple[int, ...]) -> Tuple[np.ndarray, np.ndarray]:
    """Pontos n = m + ε/2 com |n_i| ≤ N e a máscara da camada externa"""
    axes = []
    for e in epsilon:
        if e:
            axes.append(np.arange(-truncation, truncation) + 0.5)
        else:
            axes.append(np.arange(-truncation, truncation + 1, dtype=np.float64))
    grid = np.meshgrid(*axes, indexing="ij")
    points = np.stack([g.ravel() for g in grid], axis=1)
    shell = np.abs(points).max(axis=1) > truncation - 1
    points.setflags(write=False)
    shell.setflags(write=False)
    return points, shell


def _config(config: Optional[ThetaConfig]) -> ThetaConfig:
    return config or ThetaConfig()


def _check_shell(terms: np.ndarray, shell: np.ndarray, config: ThetaConfig, label: str) -> None:
    magnitude = np.abs(terms)
    total = magnitude.sum()
    outer = magnitude[shell].sum()
    if total == 0 or outer > config.tolerance * total:
        raise ConvergenceError(
            f"Série {label} não convergiu com N={config.truncation}: camada externa {outer:.3e} de {total:.3e}"
        )


def _half_matrix(hermite_b: np.ndarray) -> np.ndarray:
    b = np.asarray(hermite_b, dtype=np.complex128)
    s = b + b.T
    return np.block([[s, -b], [-b.T, s]])


class NumericPolynomial:
    """Avaliação vetorizada de um MultiPoly em pontos complexos"""

    def __init__(self, poly: MultiPoly) -> None:
        terms = poly.terms
        self.variables = poly.variables
        self.exponents = np.array(list(terms.keys()), dtype=np.int64).reshape(-1, len(poly.variables))
        self.coefficients = np.array([to_complex(c) for c in terms.values()], dtype=np.complex128)
        self.magnitudes = np.abs(self.coefficients)

    def __call__(self, point: Sequence[complex]) -> complex:
        x = np.asarray(point, dtype=np.complex128)
        monomials = np.prod(x[None, :] ** self.exponents, axis=1)
        return complex(monomials @ self.coefficients)

    def scale(self, point: Sequence[complex]) -> float:
        """Σ |c|·|x^e|, usado como escala do resíduo"""
        x = np.abs(np.asarray(point, dtype=np.complex128))
        return float(np.prod(x[None, :] ** self.exponents, axis=1) @ self.magnitudes)


class ThetaService:

    @staticmethod
    def theta_value(
        ch: ThetaChar,
        tau: SiegelPoint,
        z: Optional[Sequence[complex]] = None,
        config: Optional[ThetaConfig] = None,
    ) -> complex:
        config = _config(config)
        if ch.genus != tau.genus:
            raise ValueError(f"Característica de gênero {ch.genus} para τ de gênero {tau.genus}")
        n, shell = _shifted_lattice(config.truncation, ch.epsilon)
        z = np.zeros(tau.genus) if z is None else np.asarray(z, dtype=np.complex128)
        shift = z + np.asarray(ch.epsilon_prime) / 2
        quad = np.einsum("ki,ij,kj->k", n, tau.matrix, n)
        terms = np.exp(np.pi * 1j * (quad + 2 * (n @ shift)))
        _check_shell(terms, shell, config, str(ch))
        return complex(terms.sum())

    @staticmethod
    def theta_constants(
        tau: SiegelPoint,
        characteristics: Iterable[ThetaChar],
        config: Optional[ThetaConfig] = None,
    ) -> Dict[ThetaChar, complex]:
        """θ[ε|ε′](τ, 0) para várias características, reaproveitando a forma quadrática por ε"""
        config = _config(config)
        by_epsilon: Dict[Tuple[int, ...], List[ThetaChar]] = {}
        for ch in characteristics:
            by_epsilon.setdefault(ch.epsilon, []).append(ch)

        values: Dict[ThetaChar, complex] = {}
        for epsilon, chars in by_epsilon.items():
            n, shell = _shifted_lattice(config.truncation, epsilon)
            base = np.exp(np.pi * 1j * np.einsum("ki,ij,kj->k", n, tau.matrix, n))
            _check_shell(base, shell, config, f"ε={epsilon}")
            for ch in chars:
                phase = np.exp(np.pi * 1j * (n @ np.asarray(ch.epsilon_prime, dtype=np.float64)))
                values[ch] = complex(base @ phase)
        return values

    @staticmethod
    def second_order_nulls(tau: SiegelPoint, config: Optional[ThetaConfig] = None) -> np.ndarray:
        """θ_i(τ) = θ[ε|0](2τ, 0), i = ε1·8 + ε2·4 + ε3·2 + ε4"""
        doubled = tau.scaled(2.0)
        chars = [ThetaChar.from_indices(i, 0, tau.genus) for i in range(1 << tau.genus)]
        values = ThetaService.theta_constants(doubled, chars, config)
        return np.array([values[ch] for ch in chars], dtype=np.complex128)

    # ação de Sp(8,Z)

    @staticmethod
    def act(matrix: SympMatrix, tau: SiegelPoint) -> SiegelPoint:
        """(aτ + b)(cτ + d)⁻¹"""
        a, b, c, d = (blk.astype(np.complex128) for blk in matrix.blocks())
        numerator = a @ tau.matrix + b
        denominator = c @ tau.matrix + d
        return SiegelPoint(np.linalg.solve(denominator.T, numerator.T).T)

    @staticmethod
    def is_fixed(matrix: SympMatrix, tau: SiegelPoint, tolerance: float = 1e-10) -> bool:
        image = ThetaService.act(matrix, tau)
        return image.distance(tau) < tolerance * max(1.0, float(np.abs(tau.matrix).max()))

    # amostragem

    @staticmethod
    def sample_hermite_point(b: np.ndarray) -> SiegelPoint:
        """τ(b) = [[b+ᵗb, -b], [-ᵗb, b+ᵗb]] no lugar fixo de M"""
        tau = SiegelPoint(_half_matrix(b))
        if not ThetaService.is_fixed(M_MATRIX, tau):
            raise IdentityFailure("τ(b) não é fixo por M")
        return tau

    @staticmethod
    def _random_parameters(tag: FixedLocus, rng: np.random.Generator, radius: float) -> np.ndarray:
        def noise(shape) -> np.ndarray:
            return rng.uniform(-radius, radius, shape) + 1j * rng.uniform(-radius, radius, shape)

        if tag == FixedLocus.M:
            return 1j * I2 + noise((2, 2))
        if tag == FixedLocus.M_MB:
            p = noise((2, 2))
            return 1j * I2 + (p + p.T) / 2
        if tag == FixedLocus.M12:
            return np.array([1j, 0]) + noise(2)
        if tag == FixedLocus.M_MB_MD:
            return np.array([1j, 0]) + noise(2)
        return np.array([1j, 1j]) + noise(2)

    @staticmethod
    def hermite_parameter(tag: FixedLocus, params: np.ndarray) -> np.ndarray:
        """Matriz b de τ(b) para cada subdomínio"""
        params = np.asarray(params, dtype=np.complex128)
        if tag == FixedLocus.M:
            return params
        if tag == FixedLocus.M_MB:
            if np.abs(params - params.T).max() > 1e-12:
                raise InvalidSiegelPointError("τ2 precisa ser simétrica")
            return params
        if tag == FixedLocus.M12:
            x, y = params
            return np.array([[x, y], [-y, x]])
        if tag == FixedLocus.M_MB_MD:
            t11, t12 = params
            return np.array([[t11, t12], [t12, t11]])
        b1, b2 = params
        return np.array([[b1, 0], [0, b2]])

    @staticmethod
    def sample_fixed_locus(
        tag: FixedLocus,
        params: Optional[np.ndarray] = None,
        rng: Optional[np.random.Generator] = None,
        radius: Optional[float] = None,
    ) -> SiegelPoint:
        """Ponto fixo por todas as matrizes do subdomínio, verificado pela ação"""
        tag = FixedLocus(tag)
        if params is None:
            rng = rng if rng is not None else np.random.default_rng(settings.SAMPLE_SEED)
            params = ThetaService._random_parameters(
                tag, rng, settings.SAMPLE_RADIUS if radius is None else radius
            )
        tau = SiegelPoint(_half_matrix(ThetaService.hermite_parameter(tag, params)))
        for name, matrix in FIXING_MATRICES[tag].items():
            if not ThetaService.is_fixed(matrix, tau):
                raise IdentityFailure(f"Ponto do subdomínio {tag.value} não é fixo por {name}")
        return tau

    @staticmethod
    def sample_points(
        tag: FixedLocus,
        count: int,
        seed: int,
        radius: Optional[float] = None,
        max_attempts: int = 10,
    ) -> List[SiegelPoint]:
        """Amostras determinísticas com rejeição de pontos inválidos"""
        rng = np.random.default_rng(seed)
        points = []
        for _ in range(count):
            for attempt in range(max_attempts):
                try:
                    points.append(ThetaService.sample_fixed_locus(tag, rng=rng, radius=radius))
                    break
                except InvalidSiegelPointError:
                    logger.debug(f"Amostra rejeitada ({tag.value}, tentativa {attempt + 1})")
            else:
                raise InvalidSiegelPointError(f"Sem ponto válido em {max_attempts} tentativas")
        return points

    # o mapa Θ

    @staticmethod
    def eigenspace_residual(nulls: np.ndarray) -> float:
        """Maior desvio relativo nas cinco triplas θ_i = θ_{iA} = θ_{iA²}"""
        scale = np.abs(nulls).max()
        worst = 0.0
        for cycle in EXPECTED_M_CYCLES:
            values = nulls[list(cycle)]
            worst = max(worst, float(np.abs(values - values[0]).max() / scale))
        return worst

    @staticmethod
    def theta_map_P5(tau: SiegelPoint, config: Optional[ThetaConfig] = None) -> np.ndarray:
        """(θ0 : θ1 : θ2 : θ3 : θ6 : θ7), normalizado por módulo máximo 1"""
        config = _config(config)
        nulls = ThetaService.second_order_nulls(tau, config)
        residual = ThetaService.eigenspace_residual(nulls)
        if residual > config.tolerance:
            raise IdentityFailure(f"τ fora do autoespaço de M: desvio {residual:.3e}")
        point = nulls[list(P5_THETA_INDICES)]
        return point / np.abs(nulls).max()

    @staticmethod
    def relative_residual(poly: NumericPolynomial, point: np.ndarray) -> float:
        return abs(poly(point)) / max(poly.scale(point), 1e-300)

    @staticmethod
    def bridge_check(
        poly: MultiPoly,
        points: Sequence[SiegelPoint],
        config: Optional[ThetaConfig] = None,
    ) -> Dict[str, float]:
        """Maiores resíduos das triplas e de F(Θ(τ)) (relativo) sobre as amostras"""
        config = _config(config)
        evaluator = NumericPolynomial(poly)
        triple = 0.0
        on_f = 0.0
        for tau in points:
            nulls = ThetaService.second_order_nulls(tau, config)
            triple = max(triple, ThetaService.eigenspace_residual(nulls))
            point = nulls[list(P5_THETA_INDICES)] / np.abs(nulls).max()
            on_f = max(on_f, ThetaService.relative_residual(evaluator, point))
        logger.info(f"Ponte numérica: {len(points)} amostras, tripla {triple:.2e}, F {on_f:.2e}")
        return {"samples": len(points), "triple_residual": triple, "f_residual": on_f}

    @staticmethod
    def coordinate_residual(points: Sequence[np.ndarray], pairs: Sequence[Tuple[int, int]]) -> float:
        """max |X_i - X_j| sobre as imagens (posições em X0, X1, X2, X3, X6, X7)"""
        worst = 0.0
        for point in points:
            for i, j in pairs:
                worst = max(worst, float(abs(point[i] - point[j])))
        return worst

    @staticmethod
    def polynomial_residual(poly: MultiPoly, points: Sequence[Sequence[complex]]) -> float:
        evaluator = NumericPolynomial(poly)
        return max(ThetaService.relative_residual(evaluator, np.asarray(p)) for p in points)

    # sinais e anulamentos

    @staticmethod
    def mc_permutation(ch: ThetaChar) -> ThetaChar:
        e, f = ch.epsilon, ch.epsilon_prime
        return ThetaChar((e[1], e[0], e[3], e[2]), (f[1], f[0], f[3], f[2]))

    @staticmethod
    def mc_theta_sign_rule(ch: ThetaChar) -> int:
        """θ[ε|ε′](M_C·τ) = (-1)^{ε2ε2′+ε4ε4′} θ[ε2ε1ε4ε3|ε2′ε1′ε4′ε3′](τ)"""
        e, f = ch.epsilon, ch.epsilon_prime
        return (-1) ** (e[1] * f[1] + e[3] * f[3])

    @staticmethod
    def mc_forced_vanishing() -> List[ThetaChar]:
        """Características pares fixas pela permutação e com sinal -1"""
        return [
            ch
            for ch in even_theta_characteristics()
            if ThetaService.mc_permutation(ch) == ch and ThetaService.mc_theta_sign_rule(ch) == -1
        ]

    @staticmethod
    def vanishing_profile(tau: SiegelPoint, config: Optional[ThetaConfig] = None) -> VanishingProfile:
        """Conta thetanulls pares abaixo da tolerância relativa, com faixa de guarda"""
        config = _config(config)
        values = ThetaService.theta_constants(tau, even_theta_characteristics(tau.genus), config)
        scale = max(abs(v) for v in values.values())
        zero_band = config.tolerance * scale
        guard_band = zero_band * config.guard_factor
        vanishing = [ch for ch, v in values.items() if abs(v) < zero_band]
        ambiguous = sum(1 for v in values.values() if zero_band <= abs(v) < guard_band)
        count = len(vanishing)
        if ambiguous:
            classification = "unknown"
        else:
            classification = PROFILE_CLASSES.get(count, "unknown")
        return VanishingProfile(count, ambiguous, classification, vanishing)

    @staticmethod
    def parity_residual(tau: SiegelPoint, config: Optional[ThetaConfig] = None) -> float:
        """Maior |θ| ímpar em z = 0 relativo ao maior |θ| par"""
        config = _config(config)
        even = ThetaService.theta_constants(tau, even_theta_characteristics(tau.genus), config)
        odd = ThetaService.theta_constants(tau, odd_theta_characteristics(tau.genus), config)
        return max(abs(v) for v in odd.values()) / max(abs(v) for v in even.values())

    @staticmethod
    def quadric_relation_check(tau: SiegelPoint, config: Optional[ThetaConfig] = None) -> float:
        """max |θ[ε|ε′](τ)² - Q[ε|ε′](θ_0(τ), ..., θ_15(τ))| relativo, nas 136 pares"""
        config = _config(config)
        nulls = ThetaService.second_order_nulls(tau, config)
        chars = even_theta_characteristics(tau.genus)
        values = ThetaService.theta_constants(tau, chars, config)
        scale = np.abs(nulls).max() ** 2
        worst = 0.0
        for ch in chars:
            rhs = sum(sign * nulls[a] * nulls[b] for (a, b), sign in QuadricService.quadric_terms(ch.indices).items())
            worst = max(worst, abs(values[ch] ** 2 - rhs) / scale)
        return worst

    # diagramas de isogenia

    @staticmethod
    def _symbolic_tau2() -> ExactMatrix:
        a, b, c = MultiPoly.generators(("a", "b", "c"))
        return ExactMatrix([[a, b], [b, c]])

    @staticmethod
    def isogeny_diagram_check(tau2: Optional[np.ndarray] = None) -> Dict[str, object]:
        """N·Ω_τ = Ω_τ2·N′ para τ = [[2τ2, -τ2], [-τ2, 2τ2]] e M·Ω_τ = Ω_τ·ᵗA⁻¹"""
        identity2 = ExactMatrix.identity(2)
        zero2 = ExactMatrix.zeros(2, 2)
        n_matrix = ExactMatrix.block([[identity2, identity2, zero2, zero2], [zero2, zero2, identity2, identity2]])
        n_prime = ExactMatrix.block([[identity2, identity2]])

        t2 = ThetaService._symbolic_tau2()
        tau = ExactMatrix.block([[t2.scale(2), -t2], [-t2, t2.scale(2)]])
        omega_tau = ExactMatrix.block([[tau], [ExactMatrix.identity(4)]])
        omega_tau2 = ExactMatrix.block([[t2], [identity2]])
        symbolic = (n_matrix @ omega_tau - omega_tau2 @ n_prime).is_zero()

        b11, b12, b21, b22 = MultiPoly.generators(("b11", "b12", "b21", "b22"))
        hb = ExactMatrix([[b11, b12], [b21, b22]])
        hermite_tau = ExactMatrix.block([[hb + hb.transpose(), -hb], [-hb.transpose(), hb + hb.transpose()]])
        omega_h = ExactMatrix.block([[hermite_tau], [ExactMatrix.identity(4)]])
        m = ExactMatrix(M_MATRIX.entries)
        a_block = ExactMatrix([row[:4] for row in M_MATRIX.entries[:4]])
        hermite = (m @ omega_h - omega_h @ a_block.transpose().inverse()).is_zero()

        tau2 = 1j * I2 if tau2 is None else np.asarray(tau2, dtype=np.complex128)
        n_num = np.array([[float(x) for x in row] for row in n_matrix.rows])
        np_num = np.array([[float(x) for x in row] for row in n_prime.rows])
        big = np.block([[2 * tau2, -tau2], [-tau2, 2 * tau2]])
        residual = float(
            np.abs(n_num @ np.vstack([big, np.eye(4)]) - np.vstack([tau2, I2]) @ np_num).max()
        )
        return {"symbolic": symbolic, "hermite": hermite, "numeric_residual": residual}
