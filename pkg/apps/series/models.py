"""
Séries entières tronquées à coefficients entiers.

Les poids demi-entiers des familles S_ev et O_odd imposent une graduation
doublée : le coefficient d'indice k est celui de q^{k/2}.
"""

from fractions import Fraction

from apps.core.exceptions import ConsistencyError

from .exceptions import InvalidOrder


class IntSeries:
    """Série Σ c_k q^{k/2} tronquée à l'indice doublé ``order2``."""

    __slots__ = ('coefficients', 'order2')

    def __init__(self, coefficients, order2=None):
        coefficients = [int(value) for value in coefficients]
        if order2 is None:
            order2 = len(coefficients) - 1
        if order2 < 0:
            raise InvalidOrder(f'Ordre négatif : {order2}')
        coefficients = coefficients[:order2 + 1]
        coefficients += [0] * (order2 + 1 - len(coefficients))
        self.coefficients = coefficients
        self.order2 = order2

    @classmethod
    def one(cls, order2):
        return cls([1], order2)

    @classmethod
    def from_weights(cls, values, order=None):
        """Série à poids entiers : ``values[d]`` est le coefficient de q^d."""
        order = len(values) - 1 if order is None else order
        doubled = [0] * (2 * order + 1)
        for weight, value in enumerate(values[:order + 1]):
            doubled[2 * weight] = value
        return cls(doubled, 2 * order)

    @property
    def order(self):
        return Fraction(self.order2, 2)

    def at_weight(self, weight):
        """Coefficient de q^weight (0 au-delà de la troncature)."""
        doubled = Fraction(weight) * 2
        if doubled.denominator != 1 or doubled < 0 or doubled > self.order2:
            return 0
        return self.coefficients[int(doubled)]

    def is_integral_graded(self):
        return not any(self.coefficients[1::2])

    def weight_list(self):
        """Coefficients des poids entiers 0, 1, …, ⌊order⌋."""
        return self.coefficients[::2]

    def truncate(self, order2):
        return IntSeries(self.coefficients, min(order2, self.order2))

    def _common(self, other):
        return min(self.order2, other.order2)

    def __add__(self, other):
        order2 = self._common(other)
        return IntSeries([a + b for a, b in zip(self.coefficients, other.coefficients)], order2)

    def __neg__(self):
        return IntSeries([-a for a in self.coefficients], self.order2)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntSeries([other * a for a in self.coefficients], self.order2)
        order2 = self._common(other)
        result = [0] * (order2 + 1)
        for i, a in enumerate(self.coefficients[:order2 + 1]):
            if not a:
                continue
            for j, b in enumerate(other.coefficients[:order2 + 1 - i]):
                result[i + j] += a * b
        return IntSeries(result, order2)

    __rmul__ = __mul__

    def halve(self):
        """Division exacte par 2 (moyenne de deux caractères)."""
        if any(value % 2 for value in self.coefficients):
            raise ConsistencyError(f'Série non divisible par 2 : {self.coefficients}')
        return IntSeries([value // 2 for value in self.coefficients], self.order2)

    def __eq__(self, other):
        if not isinstance(other, IntSeries):
            return NotImplemented
        return self.order2 == other.order2 and self.coefficients == other.coefficients

    __hash__ = None

    def __repr__(self):
        return f'IntSeries({self.coefficients}, order2={self.order2})'
