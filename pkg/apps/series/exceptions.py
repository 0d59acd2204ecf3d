"""Exceptions de l'application series."""

from apps.core.exceptions import DomainError


class OutOfStableRange(DomainError):
    code = 'out_of_stable_range'
    default_message = 'La formule n_k ne vaut que pour k >= 11'


class InvalidOrder(DomainError):
    code = 'invalid_order'
    default_message = 'Ordre de troncature négatif'
