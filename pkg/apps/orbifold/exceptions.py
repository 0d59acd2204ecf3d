"""Exceptions de l'application orbifold."""

from apps.core.exceptions import ConsistencyError, DomainError, SyntaxFailure


class SpanMismatch(ConsistencyError):
    code = 'span_mismatch'
    default_message = "Les familles de réécriture n'engendrent pas le même espace"


class UnsupportedCatalog(DomainError):
    code = 'unsupported_catalog'
    default_message = 'Catalogue indisponible pour ces paramètres'


class InvalidUIndex(DomainError):
    code = 'invalid_u_index'
    default_message = 'Indices de champ U invalides (i >= 1, j >= i, a, b >= 0)'


class InvalidSector(DomainError):
    code = 'invalid_sector'
    default_message = 'Secteur inconnu'


class TypeStringError(SyntaxFailure):
    code = 'type_string_error'
    default_message = 'Chaîne de type W(...) invalide'
