"""
Modèles de l'application orbifold.

Les catalogues de générateurs sont des recettes : un nom de générateur
(``L``, ``W4``…) ou un ``UIndex`` pour U^{2i+1,2j+1}_{a,b}. Les éléments ne
sont construits qu'à l'instanciation dans une algèbre donnée.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from django.utils.translation import gettext_lazy as _

from .exceptions import InvalidSector, InvalidUIndex

INVARIANT = 'invariant'
ANTI_INVARIANT = 'anti-invariant'
FULL = 'full'

SECTOR_CHOICES = [
    (INVARIANT, _('Invariant')),
    (ANTI_INVARIANT, _('Anti-invariant')),
    (FULL, _('Complet')),
]

LONG = 'long'
STRONG_FREE = 'strong-free'
WEAK_FREE = 'weak-free'
MINIMAL_SL7_FREE = 'minimal-sl7-free'
CUSTOM = 'custom'

CATALOG_KIND_CHOICES = [
    (LONG, _('Liste longue')),
    (STRONG_FREE, _('Générateurs forts, limite libre')),
    (WEAK_FREE, _('Générateurs faibles, limite libre')),
    (MINIMAL_SL7_FREE, _('Générateurs forts minimaux pour sl_7')),
    (CUSTOM, _('Liste libre')),
]

STABLE = 'stable'


def check_sector(sector):
    """Valide un nom de secteur et le retourne."""
    if sector not in (INVARIANT, ANTI_INVARIANT, FULL):
        raise InvalidSector(f'Secteur inconnu : {sector}', sector=sector)
    return sector


def sector_accepts(sector, sign):
    """Vrai si un monôme de signe θ ``sign`` appartient au secteur."""
    if sector == FULL:
        return True
    if sector == INVARIANT:
        return sign == 1
    return sign == -1


@dataclass(frozen=True)
class UIndex:
    """Indices (i, j, a, b) du champ :(∂^a W^{2i+1})(∂^b W^{2j+1}):."""

    i: int
    j: int
    a: int = 0
    b: int = 0

    def __post_init__(self):
        if self.i < 1 or self.j < self.i or self.a < 0 or self.b < 0:
            raise InvalidUIndex(f'Indices invalides : {self.as_tuple()}',
                                i=self.i, j=self.j, a=self.a, b=self.b)

    def as_tuple(self):
        return self.i, self.j, self.a, self.b

    @property
    def weight(self):
        return 2 * self.i + 2 * self.j + self.a + self.b + 2

    @property
    def left(self):
        return f'W{2 * self.i + 1}'

    @property
    def right(self):
        return f'W{2 * self.j + 1}'

    @property
    def label(self):
        return f'U^{{{2 * self.i + 1},{2 * self.j + 1}}}_{{{self.a},{self.b}}}'

    @property
    def expression(self):
        """Forme dans la grammaire des expressions : U(i,j,a,b)."""
        return f'U({self.i},{self.j},{self.a},{self.b})'


@dataclass(frozen=True)
class CatalogEntry:
    """Une entrée de catalogue : libellé, poids et recette."""

    label: str
    weight: Fraction
    recipe: object
    free_limit_only: bool = False

    @property
    def expression(self):
        if isinstance(self.recipe, UIndex):
            return self.recipe.expression
        return self.recipe


@dataclass(frozen=True)
class Catalog:
    """Liste ordonnée d'entrées ; ``n`` vaut ``None`` pour le catalogue stable."""

    kind: str
    n: object
    entries: tuple
    bound: object = None
    label: str = field(default='', compare=False)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def weights(self):
        return [entry.weight for entry in self.entries]

    def labels(self):
        return [entry.label for entry in self.entries]

    def entries_of_weight(self, weight):
        return [entry for entry in self.entries if entry.weight == weight]

    def generic(self):
        """Les entrées valables hors de la limite libre."""
        return [entry for entry in self.entries if not entry.free_limit_only]


@dataclass(frozen=True)
class SpanFamily:
    """Famille nommée de champs d'un même poids."""

    name: str
    labels: tuple
    elements: tuple
    rank: int

    @property
    def is_basis(self):
        return self.rank == len(self.elements)


@dataclass(frozen=True)
class SpanRewrite:
    """
    Familles engendrant un même espace, avec matrices de passage.

    ``matrices[(source, cible)]`` est la matrice P telle que
    cible[k] = Σ_l P[k][l] source[l] ; seules les familles libres servent de
    source.
    """

    i: int
    j: int
    m: int
    weight: int
    families: tuple
    dimension: int
    matrices: dict = field(compare=False)

    def family(self, name):
        for family in self.families:
            if family.name == name:
                return family
        raise KeyError(name)
