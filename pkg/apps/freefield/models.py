"""
Modèles de l'application freefield.

Une algèbre de champs libres est entièrement décrite par ses générateurs
(parité, poids doublé, signe sous θ) et par sa matrice d'appariement
M[g, h], qui donne l'OPE g(z)h(w) ~ M[g, h](z−w)^{−(wt g + wt h)}.
Les objets sont immuables et peuvent servir de clés de dictionnaire.
"""

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from django.utils.translation import gettext_lazy as _

from .exceptions import UnknownGenerator

EVEN = 'even'
ODD = 'odd'

PARITY_CHOICES = [
    (EVEN, _('Pair')),
    (ODD, _('Impair')),
]

Z2_CHOICES = [
    (1, _('Invariant')),
    (-1, _('Anti-invariant')),
]


@dataclass(frozen=True)
class GeneratorSpec:
    """Générateur libre : nom, parité, poids doublé et signe sous θ."""

    name: str
    parity: str
    weight2: int
    z2sign: int = 1

    @property
    def is_odd(self):
        return self.parity == ODD

    @property
    def weight(self):
        return Fraction(self.weight2, 2)


@dataclass(frozen=True)
class FreeFieldSpec:
    """
    Algèbre de champs libres.

    ``pairing`` est un tuple de tuples de ``Fraction`` indexé comme
    ``generators``. Le hachage repose sur l'empreinte de la forme canonique,
    calculée une seule fois.
    """

    generators: tuple
    pairing: tuple
    label: str = field(default='', compare=False)

    def __hash__(self):
        return hash(self.digest)

    @cached_property
    def digest(self):
        parts = [f'{g.name}|{g.parity}|{g.weight2}|{g.z2sign}' for g in self.generators]
        parts.extend(','.join(str(value) for value in row) for row in self.pairing)
        return hashlib.sha256(';'.join(parts).encode('utf-8')).hexdigest()

    @cached_property
    def names(self):
        return {generator.name: position for position, generator in enumerate(self.generators)}

    @cached_property
    def weight2s(self):
        return tuple(generator.weight2 for generator in self.generators)

    @cached_property
    def odd_flags(self):
        return tuple(generator.is_odd for generator in self.generators)

    @cached_property
    def z2signs(self):
        return tuple(generator.z2sign for generator in self.generators)

    @cached_property
    def partners(self):
        """Pour chaque générateur, la liste des (h, M[g, h]) non nuls."""
        return tuple(
            tuple((col, value) for col, value in enumerate(row) if value)
            for row in self.pairing
        )

    @cached_property
    def components(self):
        """Composante connexe du graphe d'appariement de chaque générateur."""
        size = len(self.generators)
        component = [-1] * size
        current = 0
        for start in range(size):
            if component[start] >= 0:
                continue
            stack = [start]
            component[start] = current
            while stack:
                node = stack.pop()
                for other, _value in self.partners[node]:
                    if component[other] < 0:
                        component[other] = current
                        stack.append(other)
            current += 1
        return tuple(component)

    @property
    def size(self):
        return len(self.generators)

    def index(self, name):
        """Position du générateur ``name``."""
        try:
            return self.names[name]
        except KeyError:
            raise UnknownGenerator(f'Générateur inconnu dans {self} : {name}', generator=name)

    def has(self, name):
        return name in self.names

    def pair(self, left, right):
        return self.pairing[left][right]

    def __str__(self):
        return self.label or f"FreeFieldSpec({', '.join(g.name for g in self.generators)})"


@dataclass(frozen=True)
class EmbeddingMap:
    """Plongement d'une algèbre source dans une algèbre cible.

    ``images`` associe à chaque nom de générateur source un ``FieldElement``
    de la cible (coefficients ``ExtScalar`` autorisés).
    """

    source: FreeFieldSpec
    target: FreeFieldSpec
    images: dict = field(compare=False, hash=False)

    def __hash__(self):
        return hash((self.source, self.target))

    def image(self, name):
        try:
            return self.images[name]
        except KeyError:
            raise UnknownGenerator(f'Pas d\'image pour le générateur {name}', generator=name)
