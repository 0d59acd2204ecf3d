"""Exceptions de l'application fock."""

from apps.core.exceptions import ConsistencyError, DomainError


class MixedAlgebras(DomainError):
    code = 'mixed_algebras'
    default_message = 'Les éléments appartiennent à des algèbres différentes'


class NotInSubalgebra(DomainError):
    code = 'not_in_subalgebra'
    default_message = "L'élément ne se trouve pas dans la sous-algèbre plongée"


class NormalizationLeak(ConsistencyError):
    code = 'normalization_leak'
    default_message = 'Coefficient irrationnel résiduel après projection'
