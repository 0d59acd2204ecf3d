"""
Modèles de l'application relations.

Bases graduées, rapports de découplage, profils de type et rapports de
clôture faible. Ce sont des valeurs immuables : rien n'est persisté.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from django.utils.translation import gettext_lazy as _

from apps.fock.models import FieldElement, monomial_label
from apps.orbifold.services import type_string

SOLVED = 'solved'
INFEASIBLE = 'infeasible'

STATUS_CHOICES = [
    (SOLVED, _('Résolu')),
    (INFEASIBLE, _('Impossible')),
]


def weight_key(value):
    """Poids sous forme ``int`` quand il est entier, ``Fraction`` sinon."""
    value = Fraction(value)
    return int(value) if value.denominator == 1 else value


@dataclass(frozen=True)
class WeightBasis:
    """Monômes canoniques d'un poids et d'un secteur, dans l'ordre canonique."""

    algebra: object
    weight: Fraction
    sector: str
    monomials: tuple

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def elements(self):
        return [FieldElement.from_monomial(self.algebra, monomial) for monomial in self.monomials]

    def labels(self):
        return [monomial_label(self.algebra, monomial) for monomial in self.monomials]


@dataclass(frozen=True)
class Letter:
    """∂^der appliqué à une entrée de catalogue."""

    entry: object
    der: int = 0

    @property
    def weight(self):
        return self.entry.weight + self.der

    @property
    def expression(self):
        if self.der == 0:
            return self.entry.expression
        if self.der == 1:
            return f'D {self.entry.expression}'
        return f'D^{self.der} {self.entry.expression}'


@dataclass(frozen=True)
class WordTerm:
    """Un terme c·:l_1 :l_2 ⋯ l_r:: d'une combinaison (mot vide = vide)."""

    coefficient: Fraction
    letters: tuple

    @property
    def degree(self):
        return len(self.letters)

    @property
    def expression(self):
        if not self.letters:
            return '1'
        text = self.letters[-1].expression
        for letter in reversed(self.letters[:-1]):
            text = f'NO({letter.expression}, {text})'
        return text


@dataclass(frozen=True)
class RelationReport:
    """Résultat d'une recherche de relation de découplage.

    ``certificate`` contient les rangs (avec et sans la cible) quand la
    cible sort de l'espace des mots, ou la raison d'un échec immédiat.
    """

    target: FieldElement
    generators: object
    status: str
    combination: tuple = ()
    residual: FieldElement = None
    certificate: dict = field(default=None, compare=False)

    @property
    def solved(self):
        return self.status == SOLVED


class TypeProfile:
    """Nombre de générateurs par poids ; ``str`` donne la chaîne W(...)."""

    __slots__ = ('counts',)

    def __init__(self, counts=None):
        self.counts = {weight_key(weight): int(count)
                       for weight, count in (counts or {}).items() if count}

    def __getitem__(self, weight):
        return self.counts.get(weight_key(weight), 0)

    def __eq__(self, other):
        if isinstance(other, TypeProfile):
            return self.counts == other.counts
        if isinstance(other, dict):
            return self == TypeProfile(other)
        return NotImplemented

    __hash__ = None

    def total(self):
        return sum(self.counts.values())

    def weights(self):
        return sorted(self.counts)

    def restricted(self, low=None, high=None):
        """Sous-profil des poids compris entre ``low`` et ``high`` (inclus)."""
        return TypeProfile({
            weight: count for weight, count in self.counts.items()
            if (low is None or weight >= low) and (high is None or weight <= high)
        })

    def __str__(self):
        return type_string(self.counts)

    def __repr__(self):
        return f'TypeProfile({self})'


@dataclass(frozen=True)
class WeakClosureReport:
    """Dimensions de la clôture par produits, poids par poids.

    ``dimensions[w] = (dimension obtenue, dimension invariante)``. La
    saturation n'est vérifiée que jusqu'à (``weight_bound``, ``depth``).
    """

    generators: object
    weight_bound: int
    depth: int
    rounds: int
    dimensions: dict
    stable: bool

    @property
    def saturated(self):
        return all(obtained == expected for obtained, expected in self.dimensions.values())

    def missing(self):
        return {weight: expected - obtained
                for weight, (obtained, expected) in self.dimensions.items() if obtained != expected}


@dataclass(frozen=True)
class IdentityReport:
    """Vérification d'une identité de la bibliothèque.

    ``computed`` donne les coefficients obtenus par le moteur dans la famille
    ``labels`` (``None`` si le membre de gauche en sort), ``displayed`` ceux
    de la forme publiée ou corrigée.
    """

    name: str
    params: dict
    holds: bool
    lhs: FieldElement
    rhs: FieldElement
    labels: tuple
    computed: tuple
    displayed: tuple
    erratum: str = ''
