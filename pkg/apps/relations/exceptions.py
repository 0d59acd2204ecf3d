"""Exceptions de l'application relations."""

from apps.core.exceptions import DomainError


class InhomogeneousInput(DomainError):
    code = 'inhomogeneous_input'
    default_message = 'Les éléments ne sont pas tous du même poids'


class InvalidBound(DomainError):
    code = 'invalid_bound'
    default_message = 'Borne de poids ou de profondeur invalide'


class UnsupportedSector(DomainError):
    code = 'unsupported_sector'
    default_message = "Le secteur anti-invariant n'est pas une algèbre de vertex"


class UnknownIdentity(DomainError):
    code = 'unknown_identity'
    default_message = 'Identité inconnue'


class IdentityDomainError(DomainError):
    code = 'identity_domain_error'
    default_message = "Paramètres hors du domaine de l'identité"
