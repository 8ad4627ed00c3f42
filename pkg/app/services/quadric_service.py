import logging
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from app.core.polyring import MultiPoly, SubstitutionMap
from app.models.variety import (
    A_MOD2,
    EMBEDDING_SLOTS,
    EXPECTED_M_CYCLES,
    P15_VARIABLES,
    Characteristic,
    QuadricFamily,
    bits,
    dot_mod2,
    even_characteristics,
    from_bits,
)
from app.models.weyl import P5_VARIABLES

logger = logging.getLogger(__name__)


class QuadricService:

    @staticmethod
    def m_index_map(index: int) -> int:
        """σ ↦ σA (mod 2) nos índices 0..15"""
        sigma = bits(index)
        image = [sum(sigma[r] * A_MOD2[r][c] for r in range(4)) % 2 for c in range(4)]
        return from_bits(image)

    @staticmethod
    def m_cycles() -> List[Tuple[int, ...]]:
        """Ciclos não triviais da permutação σ ↦ σA, cada um começando pelo menor índice"""
        seen = set()
        cycles = []
        for start in range(16):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = QuadricService.m_index_map(start)
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = QuadricService.m_index_map(nxt)
            if len(cycle) > 1:
                cycles.append(tuple(cycle))
        return cycles

    @staticmethod
    def m_cycle_check() -> bool:
        """Compara os ciclos de σ ↦ σA com a tabela conhecida"""
        found = {frozenset(c): c for c in QuadricService.m_cycles()}
        for expected in EXPECTED_M_CYCLES:
            cycle = found.get(frozenset(expected))
            if cycle is None:
                logger.error(f"Ciclo {expected} ausente")
                return False
            # mesma orientação: a rotação de expected deve coincidir
            k = cycle.index(expected[0])
            if cycle[k:] + cycle[:k] != expected:
                logger.error(f"Ciclo {expected} com orientação {cycle}")
                return False
        return QuadricService.m_index_map(0) == 0 and len(found) == len(EXPECTED_M_CYCLES)

    @staticmethod
    def embedding_is_consistent() -> bool:
        """X_σ = X_{σA} na parametrização do autoespaço"""
        return all(
            EMBEDDING_SLOTS[i] == EMBEDDING_SLOTS[QuadricService.m_index_map(i)] for i in range(16)
        )

    @staticmethod
    def quadric_terms(ch: Characteristic) -> Dict[Tuple[int, int], int]:
        """Q[ε|ε′] = Σ_σ (-1)^{(σ+ε)·ε′} X_σ X_{σ+ε} como {(σ, σ+ε): sinal}"""
        eps, eps_prime = ch
        return {(s, s ^ eps): (-1) ** dot_mod2(s ^ eps, eps_prime) for s in range(16)}

    @staticmethod
    def _quadric(ch: Characteristic, slots: Sequence[str], variables: Sequence[str]) -> MultiPoly:
        index = {name: i for i, name in enumerate(variables)}
        terms: Dict[Tuple[int, ...], int] = {}
        for (a, b), sign in QuadricService.quadric_terms(ch).items():
            exps = [0] * len(variables)
            exps[index[slots[a]]] += 1
            exps[index[slots[b]]] += 1
            key = tuple(exps)
            terms[key] = terms.get(key, 0) + sign
        return MultiPoly(variables, terms)

    @staticmethod
    def p15_quadric(ch: Characteristic) -> MultiPoly:
        return QuadricService._quadric(ch, P15_VARIABLES, P15_VARIABLES)

    @staticmethod
    def restrict_quadrics() -> QuadricFamily:
        """As 136 quádricas pares em P15 e sua restrição a P5 pelo mergulho"""
        p15 = {}
        p5 = {}
        for ch in even_characteristics():
            p15[ch] = QuadricService.p15_quadric(ch)
            p5[ch] = QuadricService._quadric(ch, EMBEDDING_SLOTS, P5_VARIABLES)
        logger.debug(f"{len(p5)} quádricas restritas a P5")
        return QuadricFamily(p15=p15, p5=p5)

    @staticmethod
    def m_invariant_characteristics(family: QuadricFamily) -> List[Characteristic]:
        """Quádricas de P15 invariantes pela permutação de coordenadas de M"""
        permutation = {
            P15_VARIABLES[i]: MultiPoly.variable(P15_VARIABLES, P15_VARIABLES[QuadricService.m_index_map(i)])
            for i in range(16)
        }
        mapping = SubstitutionMap(permutation, P15_VARIABLES)
        return [ch for ch, q in sorted(family.p15.items()) if mapping(q) == q]

    @staticmethod
    def vanishing_characteristics(
        param: Mapping[str, MultiPoly],
        family: QuadricFamily,
        target_variables: Optional[Sequence[str]] = None,
    ) -> List[Characteristic]:
        mapping = SubstitutionMap(param, target_variables)
        return [ch for ch, q in family.items() if mapping(q).is_zero()]

    @staticmethod
    def quadric_vanishing_count(
        param: Mapping[str, MultiPoly],
        family: QuadricFamily,
        target_variables: Optional[Sequence[str]] = None,
    ) -> int:
        """Número de quádricas identicamente nulas sob a parametrização"""
        return len(QuadricService.vanishing_characteristics(param, family, target_variables))

    @staticmethod
    def vanishing_at_point(point: Sequence, family: QuadricFamily) -> int:
        return sum(1 for _, q in family.items() if q.evaluate(point) == 0)
