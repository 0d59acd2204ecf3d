"""
Exceptions de base du projet vawbench.

Chaque erreur porte un code de sortie pour la commande ``vaw`` et un code
textuel repris dans les charges JSON d'erreur. Les applications dérivent
leurs propres exceptions de ``DomainError`` (entrées invalides) ou de
``ConsistencyError`` (incohérence interne du moteur).
"""

EXIT_OK = 0
EXIT_NEGATIVE = 2
EXIT_PARSE = 3
EXIT_DOMAIN = 4


class VawError(Exception):
    """Racine de toutes les erreurs du projet."""

    exit_code = EXIT_DOMAIN
    code = 'error'
    default_message = 'Erreur vawbench'

    def __init__(self, message=None, **details):
        self.message = message or self.default_message
        self.details = details
        super().__init__(self.message)

    def as_payload(self):
        """Représentation JSON de l'erreur."""
        payload = {'error': self.code, 'message': self.message}
        if self.details:
            payload['details'] = {key: str(value) for key, value in self.details.items()}
        return payload


class DomainError(VawError):
    """Entrée hors du domaine d'une opération."""

    code = 'domain_error'
    default_message = 'Entrée hors domaine'


class ConsistencyError(VawError):
    """Échec d'un contrôle de cohérence interne (signale un bug du moteur)."""

    code = 'consistency_error'
    default_message = 'Incohérence interne'


class SyntaxFailure(VawError):
    """Texte d'entrée syntaxiquement invalide."""

    exit_code = EXIT_PARSE
    code = 'parse_error'
    default_message = 'Erreur de syntaxe'
