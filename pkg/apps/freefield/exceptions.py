"""Exceptions de l'application freefield."""

from apps.core.exceptions import DomainError


class TooSmall(DomainError):
    code = 'too_small'
    default_message = 'W^free(sl_n) exige n >= 3'


class InvalidFamilyParameter(DomainError):
    code = 'invalid_family_parameter'
    default_message = 'La parité de k ne correspond pas à la famille demandée'


class UnknownGenerator(DomainError):
    code = 'unknown_generator'
    default_message = "Générateur absent de l'algèbre"


class DuplicateGenerator(DomainError):
    code = 'duplicate_generator'
    default_message = 'Nom de générateur en double'


class InvalidPairing(DomainError):
    code = 'invalid_pairing'
    default_message = 'Appariement incompatible avec la loi de signe'
