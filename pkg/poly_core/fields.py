"""
Coefficient fields for branch parameterizations.

Branch coefficients live either in the rationals or in a simple binomial
extension Q(theta) with theta^d = c. Elements are stored as coordinate
tuples in the basis 1, theta, ..., theta^(d-1).
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import sympy
from sympy import Matrix, Poly, Rational, Symbol

from utils.errors import IncompatibleFields


@dataclass(frozen=True)
class BinomialField:
    """Q(theta) with theta^degree = constant."""

    degree: int
    constant: Rational
    generator: str = 'theta'

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"field degree must be positive, got {self.degree}")
        if self.constant == 0:
            raise ValueError("field constant must be nonzero")
        object.__setattr__(self, 'constant', Rational(self.constant))

    def is_irreducible(self) -> bool:
        theta = Symbol(self.generator)
        return Poly(theta**self.degree - self.constant, theta, domain='QQ').is_irreducible

    def __str__(self) -> str:
        return f"{self.generator}^{self.degree} = {self.constant}"


def _common_field(a: Optional[BinomialField], b: Optional[BinomialField]) -> Optional[BinomialField]:
    if a is None or a.degree == 1:
        return b
    if b is None or b.degree == 1 or a == b:
        return a
    raise IncompatibleFields(f"cannot combine Q({a}) with Q({b})", module='poly_core')


class FieldElement:
    """Immutable element of Q or of a binomial extension."""

    __slots__ = ('field', 'coords')

    def __init__(self, field: Optional[BinomialField], coords: Tuple):
        if field is not None and field.degree == 1:
            field = None
        size = 1 if field is None else field.degree
        values = [Rational(c) for c in coords]
        if len(values) > size:
            raise ValueError(f"{len(values)} coordinates for a field of degree {size}")
        values.extend([Rational(0)] * (size - len(values)))
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'coords', tuple(values))

    def __setattr__(self, key, value):
        raise AttributeError("FieldElement is immutable")

    # ============== constructors ==============

    @classmethod
    def rational(cls, value) -> 'FieldElement':
        return cls(None, (Rational(value),))

    @classmethod
    def generator_of(cls, field: BinomialField) -> 'FieldElement':
        if field.degree == 1:
            return cls.rational(field.constant)
        return cls(field, (0, 1))

    @classmethod
    def coerce(cls, value) -> 'FieldElement':
        if isinstance(value, FieldElement):
            return value
        return cls.rational(value)

    # ============== predicates ==============

    @property
    def degree(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_rational(self) -> Rational:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def monomial(self) -> Optional[Tuple[Rational, int]]:
        """Return (a, j) when the element is a*theta^j, else None."""
        nonzero = [(i, c) for i, c in enumerate(self.coords) if c != 0]
        if len(nonzero) != 1:
            return None
        j, a = nonzero[0]
        return a, j

    # ============== arithmetic ==============

    def _lift(self, field: Optional[BinomialField]) -> 'FieldElement':
        if field == self.field or field is None:
            return self
        if self.field is not None:
            raise IncompatibleFields(f"cannot lift Q({self.field}) into Q({field})", module='poly_core')
        return FieldElement(field, (self.coords[0],))

    def _unify(self, other) -> Tuple['FieldElement', 'FieldElement']:
        other = FieldElement.coerce(other)
        field = _common_field(self.field, other.field)
        return self._lift(field), other._lift(field)

    def __add__(self, other) -> 'FieldElement':
        a, b = self._unify(other)
        return FieldElement(a.field, tuple(x + y for x, y in zip(a.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self) -> 'FieldElement':
        return FieldElement(self.field, tuple(-c for c in self.coords))

    def __sub__(self, other) -> 'FieldElement':
        return self + (-FieldElement.coerce(other))

    def __rsub__(self, other) -> 'FieldElement':
        return FieldElement.coerce(other) - self

    def __mul__(self, other) -> 'FieldElement':
        a, b = self._unify(other)
        d = a.degree
        if d == 1:
            return FieldElement(None, (a.coords[0] * b.coords[0],))
        product = [Rational(0)] * (2 * d - 1)
        for i, x in enumerate(a.coords):
            if x == 0:
                continue
            for j, y in enumerate(b.coords):
                if y:
                    product[i + j] += x * y
        # theta^(d+k) = c * theta^k
        c = a.field.constant
        for k in range(2 * d - 2, d - 1, -1):
            if product[k]:
                product[k - d] += c * product[k]
        return FieldElement(a.field, tuple(product[:d]))

    __rmul__ = __mul__

    def inverse(self) -> 'FieldElement':
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        d = self.degree
        if d == 1:
            return FieldElement(None, (1 / self.coords[0],))
        theta = FieldElement.generator_of(self.field)
        columns = []
        power = FieldElement.rational(1)
        for _ in range(d):
            columns.append(list((self * power).coords))
            power = power * theta
        matrix = Matrix(d, d, lambda i, j: columns[j][i])
        rhs = Matrix([1] + [0] * (d - 1))
        solution = matrix.LUsolve(rhs)
        return FieldElement(self.field, tuple(solution))

    def __truediv__(self, other) -> 'FieldElement':
        a, b = self._unify(other)
        return a * b.inverse()

    def __rtruediv__(self, other) -> 'FieldElement':
        return FieldElement.coerce(other) / self

    def __pow__(self, exponent: int) -> 'FieldElement':
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = FieldElement(self.field, (1,))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # ============== comparison / display ==============

    def __eq__(self, other) -> bool:
        if not isinstance(other, (FieldElement, int, Rational, sympy.Integer)):
            return NotImplemented
        try:
            a, b = self._unify(other)
        except IncompatibleFields:
            return False
        return a.coords == b.coords

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.field, self.coords))

    def to_expr(self):
        if self.field is None:
            return self.coords[0]
        theta = Symbol(self.field.generator)
        return sum((c * theta**i for i, c in enumerate(self.coords)), Rational(0))

    def __repr__(self) -> str:
        return f"FieldElement({self})"

    def __str__(self) -> str:
        return str(self.to_expr())
