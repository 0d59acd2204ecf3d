"""Exceptions de l'application scalars."""

from apps.core.exceptions import DomainError, SyntaxFailure


class DivisionByZero(DomainError, ZeroDivisionError):
    code = 'division_by_zero'
    default_message = 'Dénominateur nul'


class PoleAtPoint(DomainError):
    code = 'pole_at_point'
    default_message = "Le dénominateur s'annule au point demandé"


class UnknownParameter(DomainError):
    code = 'unknown_parameter'
    default_message = 'Paramètre inconnu (attendus : psi, c, lambda)'


class MissingAssignment(DomainError):
    code = 'missing_assignment'
    default_message = "L'affectation ne couvre pas tous les paramètres"


class ScalarParseError(SyntaxFailure):
    code = 'scalar_parse_error'
    default_message = 'Scalaire illisible'
