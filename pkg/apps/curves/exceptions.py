"""Exceptions de l'application curves."""

from apps.core.exceptions import DomainError


class OutsideParametrizedFamily(DomainError):
    code = 'outside_parametrized_family'
    default_message = 'Paire (n, m) hors de la famille paramétrée (m >= 1, ou m = 0 et n >= 3)'


class UnknownLocus(DomainError):
    code = 'unknown_locus'
    default_message = 'Lieu inconnu'


class ConstantIndexError(DomainError, IndexError):
    code = 'constant_index_error'
    default_message = 'Constantes a_{i,j}, b_{i,j} définies pour 3 <= i <= j'
