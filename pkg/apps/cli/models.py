"""
Modèles de l'application cli.

L'arbre syntaxique des expressions et le résultat d'une commande. ``str``
d'un nœud redonne sa forme canonique dans la grammaire.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from apps.core.exceptions import EXIT_OK
from apps.core.serializers import format_fraction


def _operand_text(node):
    return f'({node})' if isinstance(node, Sum) else str(node)


@dataclass(frozen=True)
class Atom:
    """Générateur nommé (W<i>, L, alpha<k>) ou le champ ν (``nu``)."""

    name: str
    offset: int = field(default=0, compare=False)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class UAtom:
    """U(i,j,a,b) = :(∂^a W^{2i+1})(∂^b W^{2j+1}):."""

    i: int
    j: int
    a: int
    b: int
    offset: int = field(default=0, compare=False)

    def __str__(self):
        return f'U({self.i},{self.j},{self.a},{self.b})'


@dataclass(frozen=True)
class Scalar:
    """Multiple scalaire du vide."""

    value: Fraction

    def __str__(self):
        return format_fraction(self.value)


@dataclass(frozen=True)
class Derivative:
    power: int
    operand: object

    def __str__(self):
        prefix = 'D' if self.power == 1 else f'D^{self.power}'
        return f'{prefix} {_operand_text(self.operand)}'


@dataclass(frozen=True)
class NormalOrder:
    left: object
    right: object

    def __str__(self):
        return f'NO({self.left}, {self.right})'


@dataclass(frozen=True)
class Product:
    """n-ième produit a_(n) b."""

    left: object
    n: int
    right: object

    def __str__(self):
        return f'prod({self.left}, {self.n}, {self.right})'


@dataclass(frozen=True)
class Scaled:
    coefficient: Fraction
    operand: object

    def __str__(self):
        if self.coefficient == 1:
            return _operand_text(self.operand)
        return f'{format_fraction(self.coefficient)} {_operand_text(self.operand)}'


@dataclass(frozen=True)
class Sum:
    terms: tuple

    def __str__(self):
        text = str(self.terms[0])
        for term in self.terms[1:]:
            if isinstance(term, Scaled) and term.coefficient < 0:
                text += f' - {Scaled(-term.coefficient, term.operand)}'
            else:
                text += f' + {term}'
        return text


@dataclass(frozen=True)
class CommandResult:
    """Code de sortie et document JSON d'une invocation."""

    code: int = EXIT_OK
    payload: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.code == EXIT_OK


@dataclass(frozen=True)
class SuiteItem:
    """Une ligne du tableau de la suite de régression."""

    name: str
    passed: bool
    seconds: float
