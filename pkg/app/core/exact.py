"""Aritmética exata: racionais, o corpo Q(ω) e matrizes sobre ambos.

Racionais são ``fractions.Fraction`` (sempre reduzidos, denominador positivo).
``Cyclotomic`` representa a + b·ω com ω² + ω + 1 = 0 na base {1, ω}.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Any, Callable, Iterable, List, Optional, Sequence, Tuple, Union

from app.core.errors import KernelRankError, SingularMatrixError

Rational = Fraction
Scalar = Union[int, Fraction, "Cyclotomic"]

OMEGA_COMPLEX = cmath.exp(2j * math.pi / 3)


def as_rational(value: Union[int, Fraction]) -> Fraction:
    """Converte inteiro ou fração em Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"Valor não racional: {value!r}")


def exact_quotient(a: Any, b: Any) -> Any:
    """Divisão exata sem passar por float"""
    if isinstance(a, int):
        a = Fraction(a)
    if isinstance(b, int):
        b = Fraction(b)
    return a / b


class Cyclotomic:
    """Elemento a + b·ω de Q(ω)"""

    __slots__ = ("a", "b")

    def __init__(self, a: Union[int, Fraction] = 0, b: Union[int, Fraction] = 0) -> None:
        self.a = as_rational(a)
        self.b = as_rational(b)

    @classmethod
    def omega(cls) -> "Cyclotomic":
        return cls(0, 1)

    @classmethod
    def omega_bar(cls) -> "Cyclotomic":
        # ω² = -1 - ω
        return cls(-1, -1)

    @classmethod
    def coerce(cls, value: Scalar) -> "Cyclotomic":
        if isinstance(value, Cyclotomic):
            return value
        return cls(as_rational(value), 0)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def conj(self) -> "Cyclotomic":
        """Conjugação ω ↦ ω² = -1 - ω"""
        return Cyclotomic(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        """Norma x·conj(x) = a² - ab + b²"""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self) -> "Cyclotomic":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("Inverso de zero em Q(ω)")
        c = self.conj()
        return Cyclotomic(c.a / n, c.b / n)

    def to_rational(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"Elemento não racional: {self}")
        return self.a

    def __complex__(self) -> complex:
        return complex(self.a) + complex(self.b) * OMEGA_COMPLEX

    def __add__(self, other: Any) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.a + other, self.b)
        if isinstance(other, Cyclotomic):
            return Cyclotomic(self.a + other.a, self.b + other.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(-self.a, -self.b)

    def __sub__(self, other: Any) -> "Cyclotomic":
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other: Any) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(other - self.a, -self.b)
        return NotImplemented

    def __mul__(self, other: Any) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.a * other, self.b * other)
        if isinstance(other, Cyclotomic):
            # (a1 + b1ω)(a2 + b2ω) com ω² = -1 - ω
            bb = self.b * other.b
            return Cyclotomic(
                self.a * other.a - bb,
                self.a * other.b + self.b * other.a - bb,
            )
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("Divisão por zero em Q(ω)")
            return Cyclotomic(self.a / other, self.b / other)
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other: Any) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(other) * self.inverse()
        return NotImplemented

    def __pow__(self, exponent: int) -> "Cyclotomic":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyclotomic(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Cyclotomic):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __repr__(self) -> str:
        return f"Cyclotomic({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*w"
        sign = "+" if self.b > 0 else "-"
        return f"({self.a} {sign} {abs(self.b)}*w)"


def to_complex(value: Any) -> complex:
    """Valor numérico de escalares exatos"""
    if isinstance(value, Cyclotomic):
        return complex(value)
    return complex(value)


def _normalize_entry(value: Any) -> Any:
    if isinstance(value, bool):
        raise TypeError("Entrada booleana em matriz exata")
    if isinstance(value, int):
        return Fraction(value)
    return value


def _is_zero(value: Any) -> bool:
    return value == 0


class ExactMatrix:
    """Matriz imutável com entradas racionais ou em Q(ω)"""

    __slots__ = ("_rows", "_shape")

    def __init__(self, rows: Iterable[Iterable[Any]]) -> None:
        data = tuple(tuple(_normalize_entry(x) for x in row) for row in rows)
        ncols = len(data[0]) if data else 0
        if any(len(row) != ncols for row in data):
            raise ValueError("Linhas com comprimentos diferentes")
        self._rows = data
        self._shape = (len(data), ncols)

    # construção

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Any]]) -> "ExactMatrix":
        return cls(list(zip(*columns)))

    @classmethod
    def diagonal(cls, entries: Sequence[Any]) -> "ExactMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def block(cls, blocks: Sequence[Sequence["ExactMatrix"]]) -> "ExactMatrix":
        rows: List[List[Any]] = []
        for block_row in blocks:
            height = block_row[0].nrows
            for i in range(height):
                line: List[Any] = []
                for blk in block_row:
                    line.extend(blk.row(i))
                rows.append(line)
        return cls(rows)

    # acesso

    @property
    def shape(self) -> Tuple[int, int]:
        return self._shape

    @property
    def nrows(self) -> int:
        return self._shape[0]

    @property
    def ncols(self) -> int:
        return self._shape[1]

    @property
    def rows(self) -> Tuple[Tuple[Any, ...], ...]:
        return self._rows

    def row(self, i: int) -> Tuple[Any, ...]:
        return self._rows[i]

    def column(self, j: int) -> Tuple[Any, ...]:
        return tuple(row[j] for row in self._rows)

    def columns(self) -> List[Tuple[Any, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def __getitem__(self, index: Tuple[int, int]) -> Any:
        i, j = index
        return self._rows[i][j]

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    # aritmética

    def _check_same_shape(self, other: "ExactMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"Dimensões incompatíveis: {self.shape} e {other.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        return ExactMatrix(
            [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)]
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        return ExactMatrix(
            [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)]
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-x for x in row] for row in self._rows])

    def scale(self, factor: Any) -> "ExactMatrix":
        return ExactMatrix([[factor * x for x in row] for row in self._rows])

    def __mul__(self, other: Any) -> "ExactMatrix":
        if isinstance(other, ExactMatrix):
            return self.matmul(other)
        return self.scale(other)

    def __rmul__(self, other: Any) -> "ExactMatrix":
        return self.scale(other)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self.matmul(other)

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"Produto impossível: {self.shape} x {other.shape}")
        cols = other.columns()
        result = []
        for row in self._rows:
            line = []
            for col in cols:
                acc: Any = 0
                for x, y in zip(row, col):
                    if not _is_zero(x) and not _is_zero(y):
                        acc = acc + x * y
                line.append(acc)
            result.append(line)
        return ExactMatrix(result)

    def apply(self, vector: Sequence[Any]) -> Tuple[Any, ...]:
        """Produto matriz-vetor (vetor coluna)"""
        if len(vector) != self.ncols:
            raise ValueError("Vetor com dimensão errada")
        out = []
        for row in self._rows:
            acc: Any = 0
            for x, y in zip(row, vector):
                if not _is_zero(x) and not _is_zero(y):
                    acc = acc + x * y
            out.append(acc)
        return tuple(out)

    def power(self, exponent: int) -> "ExactMatrix":
        if not self.is_square():
            raise ValueError("Potência de matriz não quadrada")
        if exponent < 0:
            return self.inverse().power(-exponent)
        result = ExactMatrix.identity(self.nrows)
        base = self
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self._rows)))

    def conj(self) -> "ExactMatrix":
        return self.map(lambda x: x.conj() if isinstance(x, Cyclotomic) else x)

    def map(self, fn: Callable[[Any], Any]) -> "ExactMatrix":
        return ExactMatrix([[fn(x) for x in row] for row in self._rows])

    def trace(self) -> Any:
        acc: Any = 0
        for i in range(min(self.shape)):
            acc = acc + self._rows[i][i]
        return acc

    # eliminação

    def rref(self) -> Tuple["ExactMatrix", Tuple[int, ...]]:
        """Forma escalonada reduzida e colunas pivô"""
        rows = [list(row) for row in self._rows]
        nrows, ncols = self.shape
        pivots: List[int] = []
        r = 0
        for c in range(ncols):
            if r >= nrows:
                break
            pivot = next((i for i in range(r, nrows) if not _is_zero(rows[i][c])), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            lead = rows[r][c]
            rows[r] = [exact_quotient(x, lead) for x in rows[r]]
            for i in range(nrows):
                if i != r and not _is_zero(rows[i][c]):
                    factor = rows[i][c]
                    rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        return ExactMatrix(rows), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> List[Tuple[Any, ...]]:
        """Base do núcleo à direita {x : A x = 0}"""
        reduced, pivots = self.rref()
        ncols = self.ncols
        free = [c for c in range(ncols) if c not in pivots]
        basis = []
        for f in free:
            vec: List[Any] = [Fraction(0)] * ncols
            vec[f] = Fraction(1)
            for r, p in enumerate(pivots):
                vec[p] = -reduced[r, f]
            basis.append(tuple(vec))
        return basis

    def determinant(self) -> Any:
        if not self.is_square():
            raise ValueError("Determinante de matriz não quadrada")
        rows = [list(row) for row in self._rows]
        n = self.nrows
        det: Any = Fraction(1)
        for c in range(n):
            pivot = next((i for i in range(c, n) if not _is_zero(rows[i][c])), None)
            if pivot is None:
                return Fraction(0)
            if pivot != c:
                rows[c], rows[pivot] = rows[pivot], rows[c]
                det = -det
            lead = rows[c][c]
            det = det * lead
            for i in range(c + 1, n):
                if not _is_zero(rows[i][c]):
                    factor = exact_quotient(rows[i][c], lead)
                    rows[i] = [x - factor * y for x, y in zip(rows[i], rows[c])]
        return det

    def solve(self, rhs: "ExactMatrix") -> "ExactMatrix":
        """Resolve A·X = B por Gauss-Jordan"""
        if not self.is_square():
            raise SingularMatrixError("Sistema com matriz não quadrada")
        if rhs.nrows != self.nrows:
            raise ValueError("Lado direito com número de linhas errado")
        n = self.nrows
        augmented = ExactMatrix([list(a) + list(b) for a, b in zip(self._rows, rhs._rows)])
        reduced, pivots = augmented.rref()
        if pivots[:n] != tuple(range(n)):
            raise SingularMatrixError("Matriz singular")
        return ExactMatrix([row[n:] for row in reduced.rows[:n]])

    def inverse(self) -> "ExactMatrix":
        return self.solve(ExactMatrix.identity(self.nrows))

    def characteristic_polynomial(self) -> List[Any]:
        """Coeficientes de det(xI - A), do grau n ao termo constante (Faddeev-LeVerrier)"""
        if not self.is_square():
            raise ValueError("Polinômio característico de matriz não quadrada")
        n = self.nrows
        identity = ExactMatrix.identity(n)
        coeffs: List[Any] = [Fraction(1)]
        m_prev = ExactMatrix.zeros(n, n)
        for k in range(1, n + 1):
            m_k = self @ m_prev + identity.scale(coeffs[-1])
            coeffs.append(exact_quotient(-(self @ m_k).trace(), k))
            m_prev = m_k
        return coeffs

    # comparação

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def is_zero(self) -> bool:
        return all(_is_zero(x) for row in self._rows for x in row)

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self._rows)

    def __repr__(self) -> str:
        return f"ExactMatrix({[[str(x) for x in row] for row in self._rows]})"


def integer_kernel(matrix: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """Base Z do reticulado saturado {x ∈ Z^n : A x = 0}.

    Operações unimodulares de coluna levam A a uma forma escalonada; as colunas
    da matriz de transformação que correspondem a colunas nulas geram o núcleo.
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap(j1: int, j2: int) -> None:
        for rows in (a, u):
            for row in rows:
                row[j1], row[j2] = row[j2], row[j1]

    def combine(target: int, source: int, q: int) -> None:
        for rows in (a, u):
            for row in rows:
                row[target] -= q * row[source]

    p = 0
    for i in range(m):
        if p >= n:
            break
        while True:
            nonzero = [j for j in range(p, n) if a[i][j] != 0]
            if not nonzero:
                break
            j0 = min(nonzero, key=lambda j: abs(a[i][j]))
            if j0 != p:
                swap(p, j0)
            done = True
            for j in range(p + 1, n):
                if a[i][j] != 0:
                    combine(j, p, a[i][j] // a[i][p])
                    if a[i][j] != 0:
                        done = False
            if done:
                p += 1
                break
    return [tuple(u[r][j] for r in range(n)) for j in range(p, n)]


def integer_kernel_of_rank(matrix: Sequence[Sequence[int]], rank: int) -> List[Tuple[int, ...]]:
    basis = integer_kernel(matrix)
    if len(basis) != rank:
        raise KernelRankError(f"Núcleo com posto {len(basis)}, esperado {rank}")
    return basis


def vector_is_zero(vector: Sequence[Any]) -> bool:
    return all(_is_zero(x) for x in vector)


def first_nonzero(vector: Sequence[Any]) -> Optional[int]:
    return next((i for i, x in enumerate(vector) if not _is_zero(x)), None)
