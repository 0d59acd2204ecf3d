"""
Modèles de l'application fock.

Un monôme normalement ordonné est un tuple de jambes ``(générateur, ordre de
dérivation)`` triées par générateur croissant puis ordre décroissant ; le
monôme vide est le vide. Un ``FieldElement`` est une combinaison linéaire
finie de monômes d'une même algèbre, à coefficients ``Fraction`` ou
``ExtScalar``.
"""

from fractions import Fraction

from apps.scalars.services import format_scalar

from .exceptions import MixedAlgebras

VACUUM = ()


def leg_key(leg):
    generator, der = leg
    return generator, -der


def canonicalize(legs, odd_flags):
    """Trie les jambes ; retourne ``(signe, monôme)`` ou ``(0, None)``.

    Le signe est celui de la permutation des jambes impaires ; une jambe
    impaire répétée annule le monôme.
    """
    legs = list(legs)
    sign = 1
    # tri par insertion : les listes sont courtes et on compte les échanges impairs
    for position in range(1, len(legs)):
        current = legs[position]
        current_key = leg_key(current)
        current_odd = odd_flags[current[0]]
        cursor = position - 1
        while cursor >= 0 and leg_key(legs[cursor]) > current_key:
            if current_odd and odd_flags[legs[cursor][0]]:
                sign = -sign
            legs[cursor + 1] = legs[cursor]
            cursor -= 1
        legs[cursor + 1] = current
    for left, right in zip(legs, legs[1:]):
        if left == right and odd_flags[left[0]]:
            return 0, None
    return sign, tuple(legs)


def monomial_weight2(monomial, weight2s):
    """Poids doublé d'un monôme."""
    return sum(weight2s[generator] + 2 * der for generator, der in monomial)


def monomial_z2sign(monomial, z2signs):
    sign = 1
    for generator, _der in monomial:
        sign *= z2signs[generator]
    return sign


def leg_label(algebra, leg):
    generator, der = leg
    name = algebra.generators[generator].name
    if der == 0:
        return name
    if der == 1:
        return f'D {name}'
    return f'D^{der} {name}'


def monomial_label(algebra, monomial):
    """Forme textuelle d'un monôme dans la grammaire des expressions."""
    if not monomial:
        return '1'
    labels = [leg_label(algebra, leg) for leg in monomial]
    text = labels[-1]
    for label in reversed(labels[:-1]):
        text = f'NO({label}, {text})'
    return text


class FieldElement:
    """Combinaison linéaire de monômes canoniques d'une algèbre libre."""

    __slots__ = ('algebra', 'terms')

    def __init__(self, algebra, terms=None):
        self.algebra = algebra
        self.terms = {monomial: coefficient for monomial, coefficient in (terms or {}).items()
                      if coefficient}

    @classmethod
    def from_monomial(cls, algebra, monomial, coefficient=1):
        return cls(algebra, {tuple(monomial): Fraction(coefficient) if isinstance(coefficient, int)
                             else coefficient})

    def _check(self, other):
        if self.algebra != other.algebra:
            raise MixedAlgebras(f'{self.algebra} / {other.algebra}')

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for monomial, coefficient in other.terms.items():
            terms[monomial] = terms.get(monomial, 0) + coefficient
        return FieldElement(self.algebra, terms)

    def __neg__(self):
        return FieldElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, FieldElement):
            return NotImplemented
        if isinstance(scalar, int):
            scalar = Fraction(scalar)
        return FieldElement(self.algebra, {m: scalar * c for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / Fraction(scalar))

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    __hash__ = None

    def coefficient(self, monomial):
        return self.terms.get(tuple(monomial), Fraction(0))

    def weights2(self):
        """Ensemble des poids doublés des termes."""
        weight2s = self.algebra.weight2s
        return {monomial_weight2(monomial, weight2s) for monomial in self.terms}

    def sorted_terms(self):
        """Termes dans l'ordre canonique (poids, puis monôme)."""
        weight2s = self.algebra.weight2s
        return sorted(self.terms.items(),
                      key=lambda item: (monomial_weight2(item[0], weight2s), item[0]))

    def is_rational(self):
        return all(isinstance(c, Fraction) or c.is_rational() for c in self.terms.values())

    def __str__(self):
        if not self.terms:
            return '0'
        parts = [f'{format_scalar(c)}*{monomial_label(self.algebra, m)}'
                 for m, c in self.sorted_terms()]
        return ' + '.join(parts)

    def __repr__(self):
        return f'FieldElement({self})'
