import logging
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Set, Tuple

import numpy as np

from app.core.errors import (
    EigenspaceDimensionError,
    GroupMembershipError,
    IdentityFailure,
    NotARootError,
)
from app.core.exact import Cyclotomic, ExactMatrix, first_nonzero
from app.core.polyring import MultiPoly
from app.models.weyl import (
    B_FORM_DIAGONAL,
    B_FORM_MATRIX,
    CLASS_C_CHARPOLY,
    E6_EDGES,
    G3_MATRIX,
    GENERATOR_MATRICES,
    P5_VARIABLES,
    SIMPLE_ROOTS,
    V1,
    EigenplaneBasis,
    GroupTable,
    Vec6,
    WeylElement,
)

logger = logging.getLogger(__name__)

WEYL_E6_ORDER = 51840

def projective_canonical(vector: Sequence) -> Vec6:
    """Representante canônico de um ponto projetivo racional.

    Vetor inteiro primitivo com a primeira coordenada não nula positiva.
    """
    values = [Fraction(x) for x in vector]
    lead = first_nonzero(values)
    if lead is None:
        raise ValueError("Vetor nulo não define ponto projetivo")
    denominator = 1
    for x in values:
        denominator = denominator * x.denominator // gcd(denominator, x.denominator)
    ints = [int(x * denominator) for x in values]
    common = 0
    for x in ints:
        common = gcd(common, abs(x))
    sign = 1 if ints[lead] > 0 else -1
    return tuple(Fraction(sign * x // common) for x in ints)


def subspace_canonical(rows: Sequence[Sequence]) -> Tuple[Tuple, ...]:
    """Forma escalonada reduzida (sem linhas nulas) de um subespaço dado por linhas"""
    reduced, pivots = ExactMatrix(rows).rref()
    return tuple(
        tuple(Cyclotomic.coerce(x) if isinstance(x, Cyclotomic) else Fraction(x) for x in reduced.row(r))
        for r in range(len(pivots))
    )


class WeylService:

    @staticmethod
    def b_form(x: Sequence, y: Sequence) -> Fraction:
        """b(x, y) = (1/3)x0y0 + Σ xi·yi"""
        total = Fraction(0)
        for w, a, c in zip(B_FORM_DIAGONAL, x, y):
            if a != 0 and c != 0:
                total = total + w * a * c
        return total

    @staticmethod
    def b_form_linear(vector: Sequence) -> List:
        """Coeficientes da forma linear X ↦ b(X, v)"""
        return [w * c for w, c in zip(B_FORM_DIAGONAL, vector)]

    @staticmethod
    def gram_matrix() -> Tuple[ExactMatrix, Set[Tuple[int, int]]]:
        """Gram das raízes simples e arestas do diagrama (entradas -1)"""
        gram = ExactMatrix(
            [[WeylService.b_form(SIMPLE_ROOTS[i], SIMPLE_ROOTS[j]) for j in range(1, 7)] for i in range(1, 7)]
        )
        edges = {
            (i, j)
            for i in range(1, 7)
            for j in range(i + 1, 7)
            if gram[i - 1, j - 1] == -1
        }
        logger.debug(f"Arestas do diagrama: {sorted(edges)}")
        return gram, edges

    @staticmethod
    def is_e6_diagram(edges: Set[Tuple[int, int]]) -> bool:
        return set(edges) == set(E6_EDGES)

    @staticmethod
    def reflection(alpha: Sequence, x: Sequence) -> Vec6:
        """s_α(x) = x - b(x, α)·α"""
        if WeylService.b_form(alpha, alpha) != 2:
            raise NotARootError(f"b(α, α) ≠ 2 para α = {tuple(str(a) for a in alpha)}")
        coeff = WeylService.b_form(x, alpha)
        return tuple(Fraction(a) - coeff * Fraction(r) for a, r in zip(x, alpha))

    @staticmethod
    def reflection_matrix(alpha: Sequence) -> ExactMatrix:
        columns = [WeylService.reflection(alpha, e) for e in ExactMatrix.identity(6).rows]
        return ExactMatrix.from_columns(columns)

    @staticmethod
    def preserves_b(matrix: ExactMatrix) -> bool:
        """ᵗg·B·g = B"""
        return matrix.transpose() @ B_FORM_MATRIX @ matrix == B_FORM_MATRIX

    @staticmethod
    def vector_orbit(generators: Sequence[ExactMatrix], seed: Sequence, projective: bool = False) -> List[Vec6]:
        """Órbita por busca em largura; ordem determinística"""
        normalize: Callable = projective_canonical if projective else (lambda v: tuple(Fraction(x) for x in v))
        start = normalize(seed)
        seen = {start}
        ordered = [start]
        frontier = [start]
        while frontier:
            fresh = []
            for v in frontier:
                for g in generators:
                    image = normalize(g.apply(v))
                    if image not in seen:
                        seen.add(image)
                        ordered.append(image)
                        fresh.append(image)
            frontier = fresh
        return ordered

    @staticmethod
    def faithful_orbit(generators: Sequence[ExactMatrix]) -> List[Vec6]:
        """Os 27 vetores de W(E6)·v1, fechados sob os geradores dados; geram C^6"""
        ordered = WeylService.vector_orbit(list(GENERATOR_MATRICES.values()), V1)
        seen = set(ordered)
        frontier = list(ordered)
        while frontier:
            fresh = []
            for v in frontier:
                for g in generators:
                    image = tuple(Fraction(x) for x in g.apply(v))
                    if image not in seen:
                        seen.add(image)
                        ordered.append(image)
                        fresh.append(image)
            frontier = fresh
        return ordered

    @staticmethod
    def generate_group(generators: Optional[Dict[str, ExactMatrix]] = None) -> GroupTable:
        """Fecho do grupo gerado, como permutações da órbita de v1"""
        if generators is None:
            generators = dict(GENERATOR_MATRICES)
        for name, g in generators.items():
            if not WeylService.preserves_b(g):
                raise GroupMembershipError(f"Gerador {name} não preserva b")

        orbit = tuple(WeylService.faithful_orbit(list(generators.values())))
        if len(orbit) > 255:
            raise GroupMembershipError("Órbita grande demais para permutações uint8")
        shell = GroupTable(orbit=orbit, generators=dict(generators), permutations=np.empty((0, len(orbit))))
        gens = list(shell.generator_permutations.values())

        identity = np.arange(len(orbit), dtype=np.uint8)
        seen = {identity.tobytes()}
        blocks = [identity[None, :]]
        frontier = identity[None, :]
        while len(frontier):
            fresh = []
            for g in gens:
                products = g[frontier]
                keep = []
                for idx, row in enumerate(products):
                    key = row.tobytes()
                    if key not in seen:
                        seen.add(key)
                        keep.append(idx)
                if keep:
                    fresh.append(products[keep])
            frontier = np.concatenate(fresh) if fresh else np.empty((0, len(orbit)), dtype=np.uint8)
            if len(frontier):
                blocks.append(frontier)
            logger.debug(f"Fecho do grupo: {len(seen)} elementos")

        table = GroupTable(
            orbit=orbit,
            generators=dict(generators),
            permutations=np.concatenate(blocks),
            generator_permutations=shell.generator_permutations,
        )
        logger.info(f"Grupo gerado com ordem {table.order} sobre órbita de {len(orbit)} vetores")
        return table

    @staticmethod
    def orbit(group: GroupTable, seed: Sequence, projective: bool = False) -> List[Vec6]:
        return WeylService.vector_orbit(list(group.generators.values()), seed, projective)

    @staticmethod
    def root_system(group: GroupTable) -> List[Vec6]:
        roots = WeylService.orbit(group, SIMPLE_ROOTS[1])
        for r in roots:
            if WeylService.b_form(r, r) != 2:
                raise NotARootError(f"Vetor da órbita com b ≠ 2: {r}")
        return roots

    @staticmethod
    def reflections_are_involutions(roots: Sequence[Sequence]) -> bool:
        """s_α∘s_α = I para cada raiz"""
        identity = ExactMatrix.identity(6)
        for r in roots:
            s = WeylService.reflection_matrix(r)
            if s @ s != identity:
                logger.warning(f"Reflexão não involutiva para α = {tuple(str(a) for a in r)}")
                return False
        return True

    @staticmethod
    def stabilizes_setwise(generators: Dict[str, ExactMatrix], vectors: Sequence[Sequence]) -> bool:
        """Cada gerador leva o conjunto de vetores nele mesmo"""
        target = {tuple(Fraction(x) for x in v) for v in vectors}
        for name, g in generators.items():
            image = {tuple(Fraction(x) for x in g.apply(v)) for v in target}
            if image != target:
                logger.warning(f"Gerador {name} não estabiliza o conjunto de {len(target)} vetores")
                return False
        return True

    @staticmethod
    def invariant_polynomials(group: GroupTable, degrees: Sequence[int]) -> Dict[int, MultiPoly]:
        """I_k = Σ b(X, v_i)^k sobre a órbita de 27 vetores, para vários k de uma vez"""
        return WeylService.restricted_invariants(group, degrees, None, P5_VARIABLES)

    @staticmethod
    def invariant_polynomial(group: GroupTable, k: int) -> MultiPoly:
        return WeylService.invariant_polynomials(group, [k])[k]

    @staticmethod
    def restricted_invariants(
        group: GroupTable,
        degrees: Sequence[int],
        parametrization: Optional[Sequence[Sequence]],
        variables: Sequence[str],
    ) -> Dict[int, MultiPoly]:
        """I_k composto com X = P·t (colunas de P são os vetores dos parâmetros)"""
        wanted = sorted(set(degrees))
        top = wanted[-1]
        totals = {k: MultiPoly.zero(variables) for k in wanted}
        for v in group.orbit:
            coeffs = WeylService.b_form_linear(v)
            if parametrization is not None:
                coeffs = [
                    sum((c * x for c, x in zip(coeffs, column)), Fraction(0))
                    for column in parametrization
                ]
            denominator = 1
            for c in coeffs:
                if isinstance(c, Fraction):
                    denominator = denominator * c.denominator // gcd(denominator, c.denominator)
            form = MultiPoly.linear_form(variables, [c * denominator for c in coeffs])
            power = MultiPoly.constant(variables, 1)
            for k in range(1, top + 1):
                power = power * form
                if k in totals:
                    totals[k] = totals[k] + power.scale(Fraction(1, denominator ** k))
        return totals

    @staticmethod
    def restricted_invariant(group: GroupTable, k: int, parametrization: Sequence[Sequence], variables: Sequence[str]) -> MultiPoly:
        return WeylService.restricted_invariants(group, [k], parametrization, variables)[k]

    @staticmethod
    def order_three_candidates(group: GroupTable) -> np.ndarray:
        """Índices dos elementos de ordem 3 sem autovalor 1 (traço -3)"""
        perms = group.permutations.astype(np.intp)
        rows = np.arange(len(perms))[:, None]
        square = perms[rows, perms]
        cube = perms[rows, square]
        identity = np.arange(perms.shape[1])
        order_three = np.flatnonzero(np.all(cube == identity, axis=1) & ~np.all(perms == identity, axis=1))

        group._ensure_frame()
        orbit = np.array([[float(x) for x in v] for v in group.orbit])
        frame_inverse = np.array([[float(x) for x in row] for row in group._frame_inverse.rows])
        images = orbit[perms[order_three][:, list(group._frame)]]  # (n, 6, 6): linhas = imagens
        traces = np.einsum("nji,ji->n", images, frame_inverse)
        return order_three[np.abs(traces + 3) < 1e-9]

    @staticmethod
    def conjugacy_class_C(group: GroupTable) -> List[int]:
        """Elementos com polinômio característico (x² + x + 1)³"""
        expected = [Fraction(c) for c in CLASS_C_CHARPOLY]
        members = []
        for idx in WeylService.order_three_candidates(group):
            if group.matrix(int(idx)).characteristic_polynomial() == expected:
                members.append(int(idx))
        logger.info(f"Classe C com {len(members)} elementos")
        return members

    @staticmethod
    def conjugation_orbit(group: GroupTable, index: int) -> Set[int]:
        """{h·g·h⁻¹ : h no grupo}"""
        perms = group.permutations.astype(np.intp)
        inverses = np.argsort(perms, axis=1)
        g = perms[index]
        conjugates = np.take_along_axis(perms, g[inverses], axis=1).astype(np.uint8)
        unique = np.unique(conjugates, axis=0)
        return {group.index_of_permutation(row) for row in unique}

    @staticmethod
    def centralizer_order(group: GroupTable, index: int) -> int:
        perms = group.permutations.astype(np.intp)
        g = perms[index]
        hg = perms[:, g]
        gh = g[perms]
        return int(np.all(hg == gh, axis=1).sum())

    @staticmethod
    def eigenplane(matrix: ExactMatrix, eigenvalue: Cyclotomic) -> EigenplaneBasis:
        """Base exata do núcleo de g - λI sobre Q(ω)"""
        shifted = ExactMatrix(
            [
                [Cyclotomic.coerce(x) - (eigenvalue if i == j else 0) for j, x in enumerate(row)]
                for i, row in enumerate(matrix.rows)
            ]
        )
        kernel = shifted.nullspace()
        if len(kernel) != 3:
            raise EigenspaceDimensionError(f"Autoespaço de dimensão {len(kernel)}, esperado 3")
        columns = tuple(tuple(Cyclotomic.coerce(x) for x in v) for v in kernel)
        for v in columns:
            image = matrix.apply(v)
            if any(Cyclotomic.coerce(a) != eigenvalue * b for a, b in zip(image, v)):
                raise IdentityFailure("Vetor da base não é autovetor")
        return EigenplaneBasis(columns, eigenvalue)

    @staticmethod
    def same_span(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
        return subspace_canonical(a) == subspace_canonical(b)

    @staticmethod
    def class_eigenplanes(group: GroupTable, members: Sequence[int]) -> List[EigenplaneBasis]:
        """Autoplanos ω de todos os elementos da classe (dá também os planos ω̄ via g²)"""
        omega = Cyclotomic.omega()
        return [WeylService.eigenplane(group.matrix(i), omega) for i in members]

    @staticmethod
    def fundamental_weight(i: int) -> Vec6:
        """Resolve b(λ_i, α_j) = δ_ij"""
        if i < 1 or i > 6:
            raise ValueError(f"Índice de peso fora de 1..6: {i}")
        system = ExactMatrix([WeylService.b_form_linear(SIMPLE_ROOTS[j]) for j in range(1, 7)])
        rhs = ExactMatrix([[1 if j == i else 0] for j in range(1, 7)])
        solution = system.solve(rhs)
        return tuple(Fraction(x) for x in solution.column(0))

    @staticmethod
    def orbit_with_transport(
        group: GroupTable,
        seed: Hashable,
        act: Callable[[ExactMatrix, Hashable], Hashable],
    ) -> Dict[Hashable, np.ndarray]:
        """Órbita de um estado canônico sob os geradores, com o elemento que leva a semente a cada membro"""
        gens = [(group.generators[name], group.generator_permutations[name]) for name in group.generators]
        identity = np.arange(len(group.orbit), dtype=np.uint8)
        found: Dict[Hashable, np.ndarray] = {seed: identity}
        frontier = [seed]
        while frontier:
            fresh = []
            for state in frontier:
                transport = found[state]
                for matrix, perm in gens:
                    image = act(matrix, state)
                    if image not in found:
                        found[image] = GroupTable.compose(perm, transport)
                        fresh.append(image)
            frontier = fresh
        return found

    @staticmethod
    def subspace_orbit(group: GroupTable, rows: Sequence[Sequence]) -> Dict[Tuple, np.ndarray]:
        """Órbita de um subespaço (linhas geradoras) na forma escalonada canônica"""

        def act(matrix: ExactMatrix, state: Tuple) -> Tuple:
            return subspace_canonical([matrix.apply(r) for r in state])

        return WeylService.orbit_with_transport(group, subspace_canonical(rows), act)

    @staticmethod
    def find_element_mapping(
        group: GroupTable,
        source: Sequence[Sequence],
        target: Sequence[Sequence],
    ) -> ExactMatrix:
        """Elemento g com g·{±source} = {±target} (conjunto de vetores a menos de sinal)"""

        def canonical(vectors) -> frozenset:
            return frozenset(projective_canonical(v) for v in vectors)

        def act(matrix: ExactMatrix, state: frozenset) -> frozenset:
            return canonical(matrix.apply(v) for v in state)

        orbit = WeylService.orbit_with_transport(group, canonical(source), act)
        goal = canonical(target)
        if goal not in orbit:
            raise GroupMembershipError("Nenhum elemento leva a origem no alvo")
        return group.matrix_of_permutation(orbit[goal])

    @staticmethod
    def minus_identity_in_group(group: GroupTable) -> bool:
        return group.contains(-ExactMatrix.identity(6))

    @staticmethod
    def g3_element(group: GroupTable) -> int:
        return group.index_of(G3_MATRIX)

    @staticmethod
    def weyl_element(group: GroupTable, index: int) -> WeylElement:
        return group.element(index)
