"""Polinômios multivariados esparsos sobre Q ou Q(ω).

Os monômios ficam empacotados num inteiro, com ``SLOT_BITS`` bits por
variável e a primeira variável nos bits mais altos; a comparação de inteiros
é então a ordem lexicográfica e a ordem grlex usa a chave (grau, empacotado).
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import reduce
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from app.core.errors import MissingAssignmentError, VariableMismatchError
from app.core.exact import Cyclotomic, ExactMatrix, exact_quotient

SLOT_BITS = 12
SLOT_MASK = (1 << SLOT_BITS) - 1

Coefficient = Any


def _normalize_coefficient(value: Any) -> Any:
    if isinstance(value, bool):
        raise TypeError("Coeficiente booleano")
    if isinstance(value, Cyclotomic) and value.is_rational:
        return value.a
    return value


class MultiPoly:
    """Polinômio esparso com variáveis nomeadas"""

    __slots__ = ("variables", "_terms", "_index")

    def __init__(
        self,
        variables: Sequence[str],
        terms: Optional[Mapping[Tuple[int, ...], Coefficient]] = None,
    ) -> None:
        self.variables: Tuple[str, ...] = tuple(variables)
        self._index = {name: i for i, name in enumerate(self.variables)}
        if len(self._index) != len(self.variables):
            raise VariableMismatchError(f"Variáveis repetidas: {self.variables}")
        packed: Dict[int, Coefficient] = {}
        for exponents, coeff in (terms or {}).items():
            if len(exponents) != len(self.variables):
                raise VariableMismatchError("Vetor de expoentes com comprimento errado")
            key = self._pack(exponents)
            packed[key] = packed.get(key, 0) + coeff
        self._terms = {k: _normalize_coefficient(c) for k, c in packed.items() if c != 0}

    # empacotamento

    def _pack(self, exponents: Sequence[int]) -> int:
        key = 0
        for e in exponents:
            if e < 0 or e > SLOT_MASK:
                raise ValueError(f"Expoente fora do intervalo: {e}")
            key = (key << SLOT_BITS) | e
        return key

    def _unpack(self, key: int) -> Tuple[int, ...]:
        n = len(self.variables)
        return tuple(
            (key >> (SLOT_BITS * (n - 1 - i))) & SLOT_MASK for i in range(n)
        )

    def _shift(self, i: int) -> int:
        return SLOT_BITS * (len(self.variables) - 1 - i)

    @staticmethod
    def _degree_of(key: int) -> int:
        total = 0
        while key:
            total += key & SLOT_MASK
            key >>= SLOT_BITS
        return total

    @classmethod
    def _from_packed(cls, variables: Tuple[str, ...], packed: Dict[int, Coefficient]) -> "MultiPoly":
        poly = cls.__new__(cls)
        poly.variables = variables
        poly._index = {name: i for i, name in enumerate(variables)}
        poly._terms = {k: _normalize_coefficient(c) for k, c in packed.items() if c != 0}
        return poly

    # construtores

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls(variables)

    @classmethod
    def constant(cls, variables: Sequence[str], value: Coefficient) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        if name not in variables:
            raise VariableMismatchError(f"Variável desconhecida: {name}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: 1})

    @classmethod
    def generators(cls, variables: Sequence[str]) -> Tuple["MultiPoly", ...]:
        return tuple(cls.variable(variables, v) for v in variables)

    @classmethod
    def linear_form(cls, variables: Sequence[str], coefficients: Sequence[Coefficient]) -> "MultiPoly":
        if len(coefficients) != len(variables):
            raise VariableMismatchError("Forma linear com número errado de coeficientes")
        n = len(variables)
        terms = {}
        for i, c in enumerate(coefficients):
            exps = tuple(1 if j == i else 0 for j in range(n))
            terms[exps] = c
        return cls(variables, terms)

    # inspeção

    @property
    def terms(self) -> Dict[Tuple[int, ...], Coefficient]:
        return {self._unpack(k): c for k, c in self._terms.items()}

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def term_count(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(self._degree_of(k) for k in self._terms)

    def is_homogeneous(self) -> bool:
        degrees = {self._degree_of(k) for k in self._terms}
        return len(degrees) <= 1

    def degree_in(self, name: str) -> int:
        i = self._require(name)
        shift = self._shift(i)
        return max(((k >> shift) & SLOT_MASK for k in self._terms), default=-1)

    def used_variables(self) -> Tuple[str, ...]:
        return tuple(v for v in self.variables if self.degree_in(v) > 0)

    def coefficient(self, exponents: Sequence[int]) -> Coefficient:
        return self._terms.get(self._pack(exponents), 0)

    def coefficients(self) -> List[Coefficient]:
        return [self._terms[k] for k in self._sorted_keys()]

    def constant_term(self) -> Coefficient:
        return self._terms.get(0, 0)

    def _grlex_key(self, key: int) -> Tuple[int, int]:
        return (self._degree_of(key), key)

    def _sorted_keys(self) -> List[int]:
        return sorted(self._terms, key=self._grlex_key, reverse=True)

    def leading_term(self) -> Tuple[Tuple[int, ...], Coefficient]:
        if not self._terms:
            raise ValueError("Polinômio nulo não tem termo líder")
        key = max(self._terms, key=self._grlex_key)
        return self._unpack(key), self._terms[key]

    def _require(self, name: str) -> int:
        if name not in self._index:
            raise VariableMismatchError(f"Variável desconhecida: {name}")
        return self._index[name]

    def _check_compatible(self, other: "MultiPoly") -> None:
        if self.variables != other.variables:
            raise VariableMismatchError(
                f"Conjuntos de variáveis diferentes: {self.variables} e {other.variables}"
            )

    def _promote(self, other: Any) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check_compatible(other)
            return other
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return MultiPoly.constant(self.variables, other)
        raise TypeError(f"Operando não suportado: {other!r}")

    # aritmética

    def __add__(self, other: Any) -> "MultiPoly":
        try:
            other = self._promote(other)
        except TypeError:
            return NotImplemented
        result = dict(self._terms)
        for k, c in other._terms.items():
            result[k] = result.get(k, 0) + c
        return MultiPoly._from_packed(self.variables, result)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._from_packed(self.variables, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: Any) -> "MultiPoly":
        try:
            other = self._promote(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "MultiPoly":
        return (-self) + other

    def scale(self, factor: Coefficient) -> "MultiPoly":
        if factor == 0:
            return MultiPoly.zero(self.variables)
        return MultiPoly._from_packed(self.variables, {k: c * factor for k, c in self._terms.items()})

    def __mul__(self, other: Any) -> "MultiPoly":
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_compatible(other)
        left, right = self._terms, other._terms
        if len(left) < len(right):
            left, right = right, left
        result: Dict[int, Coefficient] = {}
        get = result.get
        for k2, c2 in right.items():
            for k1, c1 in left.items():
                k = k1 + k2
                result[k] = get(k, 0) + c1 * c2
        return MultiPoly._from_packed(self.variables, result)

    def __rmul__(self, other: Any) -> "MultiPoly":
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "MultiPoly":
        if exponent < 0:
            raise ValueError("Expoente negativo")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, (int, Fraction, Cyclotomic)):
            if other == 0:
                return not self._terms
            return len(self._terms) == 1 and self._terms.get(0) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self._terms.items())))

    def map_coefficients(self, fn: Callable[[Coefficient], Coefficient]) -> "MultiPoly":
        return MultiPoly._from_packed(self.variables, {k: fn(c) for k, c in self._terms.items()})

    def conj(self) -> "MultiPoly":
        return self.map_coefficients(lambda c: c.conj() if isinstance(c, Cyclotomic) else c)

    # cálculo

    def derivative(self, name: str) -> "MultiPoly":
        """Derivada parcial formal"""
        shift = self._shift(self._require(name))
        unit = 1 << shift
        result: Dict[int, Coefficient] = {}
        for k, c in self._terms.items():
            e = (k >> shift) & SLOT_MASK
            if e:
                result[k - unit] = c * e
        return MultiPoly._from_packed(self.variables, result)

    def with_variables(self, variables: Sequence[str]) -> "MultiPoly":
        """Reescreve o polinômio num conjunto de variáveis que contém as usadas"""
        variables = tuple(variables)
        target = {name: i for i, name in enumerate(variables)}
        for name in self.used_variables():
            if name not in target:
                raise VariableMismatchError(f"Variável {name} ausente do novo conjunto")
        n = len(variables)
        result: Dict[int, Coefficient] = {}
        for key, c in self._terms.items():
            exps = self._unpack(key)
            new = [0] * n
            for name, e in zip(self.variables, exps):
                if e:
                    new[target[name]] = e
            packed = 0
            for e in new:
                packed = (packed << SLOT_BITS) | e
            result[packed] = c
        return MultiPoly._from_packed(variables, result)

    def substitute(self, assignments: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        return SubstitutionMap(assignments)(self)

    def evaluate(self, point: Any) -> Any:
        """Avalia num ponto (sequência na ordem das variáveis ou dicionário)"""
        if isinstance(point, Mapping):
            values = [point[v] if v in point else 0 for v in self.variables]
            for v in self.used_variables():
                if v not in point:
                    raise MissingAssignmentError(f"Sem valor para {v}")
        else:
            values = list(point)
            if len(values) != len(self.variables):
                raise VariableMismatchError("Ponto com dimensão errada")
        total: Any = 0
        for key, c in self._terms.items():
            term: Any = c
            for value, e in zip(values, self._unpack(key)):
                if e:
                    term = term * value ** e
            total = total + term
        return total

    def to_text(self) -> str:
        """Texto canônico: monômios em ordem grlex decrescente"""
        if not self._terms:
            return "0"
        parts = []
        for key in self._sorted_keys():
            c = self._terms[key]
            monomial = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.variables, self._unpack(key))
                if e
            )
            parts.append(f"({c})*{monomial}" if monomial else f"({c})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()})"


class SubstitutionMap:
    """Atribuição variável ↦ polinômio, todos num mesmo conjunto de variáveis alvo"""

    def __init__(self, assignments: Mapping[str, Any], target_variables: Optional[Sequence[str]] = None) -> None:
        polys = [p for p in assignments.values() if isinstance(p, MultiPoly)]
        if target_variables is None:
            if not polys:
                raise MissingAssignmentError("Substituição sem polinômios para definir o alvo")
            target_variables = polys[0].variables
        self.target_variables: Tuple[str, ...] = tuple(target_variables)
        self.assignments: Dict[str, MultiPoly] = {}
        for name, value in assignments.items():
            if isinstance(value, MultiPoly):
                if value.variables != self.target_variables:
                    raise VariableMismatchError(
                        f"Atribuição de {name} fora do conjunto alvo {self.target_variables}"
                    )
                self.assignments[name] = value
            else:
                self.assignments[name] = MultiPoly.constant(self.target_variables, value)

    @classmethod
    def linear(cls, source: Sequence[str], target: Sequence[str], matrix: Sequence[Sequence[Any]]) -> "SubstitutionMap":
        """Substituição linear: source[i] ↦ Σ_j matrix[i][j]·target[j]"""
        return cls(
            {name: MultiPoly.linear_form(target, row) for name, row in zip(source, matrix)},
            target,
        )

    def compose(self, other: "SubstitutionMap") -> "SubstitutionMap":
        """Aplica self primeiro e depois other"""
        return SubstitutionMap({k: other(v) for k, v in self.assignments.items()}, other.target_variables)

    def is_linear(self) -> bool:
        return all(p.is_homogeneous() and p.degree() in (1, -1) for p in self.assignments.values())

    def __call__(self, poly: MultiPoly) -> MultiPoly:
        used = poly.used_variables()
        missing = [v for v in used if v not in self.assignments]
        if missing:
            raise MissingAssignmentError(f"Sem atribuição para {missing}")
        if poly.is_zero():
            return MultiPoly.zero(self.target_variables)
        order = [i for i, v in enumerate(poly.variables) if v in used]
        powers: Dict[Tuple[int, int], MultiPoly] = {}

        def power(i: int, e: int) -> MultiPoly:
            key = (i, e)
            if key not in powers:
                base = self.assignments[poly.variables[i]]
                if e == 1:
                    powers[key] = base
                else:
                    powers[key] = power(i, e - 1) * base
            return powers[key]

        result: Dict[int, Coefficient] = {}
        n = len(poly.variables)
        for key, c in poly._terms.items():
            factors = []
            for i in order:
                e = (key >> (SLOT_BITS * (n - 1 - i))) & SLOT_MASK
                if e:
                    factors.append(power(i, e))
            if factors:
                factors.sort(key=len)
                product = reduce(lambda x, y: x * y, factors)
                for k, v in product._terms.items():
                    result[k] = result.get(k, 0) + v * c
            else:
                result[0] = result.get(0, 0) + c
        return MultiPoly._from_packed(self.target_variables, result)


def linear_substitution(poly: MultiPoly, matrix: Sequence[Sequence[Any]]) -> MultiPoly:
    """Aplica X ↦ matrix·X num polinômio homogêneo, no mesmo conjunto de variáveis.

    Denominadores racionais são retirados antes e devolvidos no final.
    """
    denominator = 1
    for row in matrix:
        for x in row:
            if isinstance(x, Fraction):
                denominator = denominator * x.denominator // _gcd(denominator, x.denominator)
    if denominator == 1 or not poly.is_homogeneous():
        return SubstitutionMap.linear(poly.variables, poly.variables, matrix)(poly)
    scaled = [[int(x * denominator) for x in row] for row in matrix]
    result = SubstitutionMap.linear(poly.variables, poly.variables, scaled)(poly)
    return result.scale(Fraction(1, denominator ** poly.degree()))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def exact_divide(numerator: MultiPoly, divisor: MultiPoly) -> Optional[MultiPoly]:
    """Quociente exato q com numerator = q·divisor, ou None se não divide"""
    numerator._check_compatible(divisor)
    if divisor.is_zero():
        raise ZeroDivisionError("Divisão por polinômio nulo")
    remainder = dict(numerator._terms)
    lead_key = max(divisor._terms, key=divisor._grlex_key)
    lead_coeff = divisor._terms[lead_key]
    n = len(divisor.variables)
    lead_slots = [(lead_key >> (SLOT_BITS * i)) & SLOT_MASK for i in range(n)]
    quotient: Dict[int, Coefficient] = {}
    while remainder:
        key = max(remainder, key=numerator._grlex_key)
        for i in range(n):
            if ((key >> (SLOT_BITS * i)) & SLOT_MASK) < lead_slots[i]:
                return None
        shift = key - lead_key
        factor = exact_quotient(remainder[key], lead_coeff)
        quotient[shift] = factor
        for k, c in divisor._terms.items():
            target = k + shift
            value = remainder.get(target, 0) - factor * c
            if value == 0:
                remainder.pop(target, None)
            else:
                remainder[target] = value
    return MultiPoly._from_packed(numerator.variables, quotient)


def proportionality_factor(f: MultiPoly, g: MultiPoly) -> Optional[Coefficient]:
    """Escalar c com f = c·g, ou None"""
    f._check_compatible(g)
    if f.is_zero() or g.is_zero():
        return None
    if set(f._terms) != set(g._terms):
        return None
    key = max(g._terms, key=g._grlex_key)
    ratio = exact_quotient(f._terms[key], g._terms[key])
    if g.scale(ratio) != f:
        return None
    return ratio


def elementary_symmetric(k: int, names: Sequence[str], variables: Optional[Sequence[str]] = None, power: int = 1) -> MultiPoly:
    """s_k nas variáveis dadas; com power=2 obtém s_k(X1², ..., Xn²)"""
    variables = tuple(variables) if variables is not None else tuple(names)
    if k < 0 or k > len(names):
        raise ValueError(f"Grau {k} fora de 0..{len(names)}")
    positions = [variables.index(v) for v in names]
    terms = {}
    for combo in itertools.combinations(positions, k):
        exps = [0] * len(variables)
        for i in combo:
            exps[i] = power
        terms[tuple(exps)] = 1
    return MultiPoly(variables, terms)


def hessian_matrix(poly: MultiPoly, names: Sequence[str]) -> List[List[MultiPoly]]:
    firsts = [poly.derivative(v) for v in names]
    return [[first.derivative(v) for v in names] for first in firsts]


def polynomial_determinant(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinante por expansão de Laplace com memória de menores"""
    n = len(matrix)
    if n == 0:
        raise ValueError("Matriz vazia")
    variables = matrix[0][0].variables
    memo: Dict[Tuple[int, frozenset], MultiPoly] = {}

    def minor(row: int, cols: frozenset) -> MultiPoly:
        if row == n:
            return MultiPoly.constant(variables, 1)
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = MultiPoly.zero(variables)
        remaining = sorted(cols)
        for position, c in enumerate(remaining):
            entry = matrix[row][c]
            if entry.is_zero():
                continue
            term = entry * minor(row + 1, cols - {c})
            total = total + term if position % 2 == 0 else total - term
        memo[key] = total
        return total

    return minor(0, frozenset(range(n)))


def hessian_det(poly: MultiPoly, names: Sequence[str]) -> MultiPoly:
    """det(∂²f/∂Xi∂Xj) nas variáveis dadas"""
    return polynomial_determinant(hessian_matrix(poly, names))


def quadratic_form_rank(poly: MultiPoly) -> int:
    """Posto da matriz simétrica de uma forma quadrática"""
    if poly.is_zero():
        return 0
    if not poly.is_homogeneous() or poly.degree() != 2:
        raise ValueError("Forma quadrática precisa ser homogênea de grau 2")
    n = len(poly.variables)
    entries: List[List[Any]] = [[Fraction(0)] * n for _ in range(n)]
    for exps, c in poly.terms.items():
        idx = [i for i, e in enumerate(exps) if e]
        if len(idx) == 1:
            i = idx[0]
            entries[i][i] = c
        else:
            i, j = idx
            half = exact_quotient(c, 2)
            entries[i][j] = half
            entries[j][i] = half
    return ExactMatrix(entries).rank()


def euler_operator(poly: MultiPoly) -> MultiPoly:
    """Σ Xi·∂f/∂Xi"""
    total = MultiPoly.zero(poly.variables)
    for name in poly.variables:
        total = total + MultiPoly.variable(poly.variables, name) * poly.derivative(name)
    return total


def coefficient_matrix(polys: Iterable[MultiPoly]) -> ExactMatrix:
    """Matriz de coeficientes (uma linha por polinômio) sobre a união dos monômios"""
    polys = list(polys)
    keys = sorted({k for p in polys for k in p._terms})
    return ExactMatrix([[p._terms.get(k, 0) for k in keys] for p in polys])
