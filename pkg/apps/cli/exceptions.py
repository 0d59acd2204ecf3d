"""Exceptions de l'application cli."""

from apps.core.exceptions import DomainError, SyntaxFailure


class ParseError(SyntaxFailure):
    """Expression mal formée ; ``offset`` est la position du caractère fautif."""

    code = 'parse_error'
    default_message = "Expression mal formée"

    def __init__(self, message=None, offset=0, **details):
        self.offset = offset
        super().__init__(message, offset=offset, **details)


class UsageError(DomainError):
    code = 'usage'
    default_message = 'Commande ou option invalide'


class UnknownAlgebra(DomainError):
    code = 'unknown_algebra'
    default_message = "Algèbre inconnue (formes acceptées : wfree-sln:N, odd-flavors:D, heisenberg:D)"


class NotACatalogRecipe(DomainError):
    code = 'not_a_catalog_recipe'
    default_message = 'Seuls les générateurs et les champs U(i,j,a,b) avec i <= j forment un catalogue'


class SectorViolation(DomainError):
    code = 'sector_violation'
    default_message = "La cible n'appartient pas au secteur demandé"


class WeightMismatch(DomainError):
    code = 'weight_mismatch'
    default_message = "Le poids de la cible ne correspond pas à --weight"
