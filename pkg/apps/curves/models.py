"""
Modèles de l'application curves.

Les formules sont des ``ParamRational`` : c(ψ) et λ(ψ) pour les courbes de
troncature, polynômes en (c, λ) pour les lieux et les scalaires cités.
"""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CurveFormula:
    """Paramétrage (c(ψ), λ(ψ)) de la courbe de troncature de C^ψ(n, m)."""

    n: int
    m: int
    c: object
    lam: object

    @property
    def threshold(self):
        """Poids (m+1)(m+n+1)−1 du dernier générateur fort."""
        return (self.m + 1) * (self.m + self.n + 1) - 1


@dataclass(frozen=True)
class QuotedScalar:
    """Scalaire de structure cité, évaluable mais non vérifié par le moteur."""

    name: str
    product: str
    on: str
    value: object
    condition: str = ''
    verified: bool = False


@dataclass(frozen=True)
class DeterminantCheck:
    value: object
    expected: object

    @property
    def matches(self):
        return self.value == self.expected


@dataclass(frozen=True)
class RaisingMap:
    """
    Matrice de f : V_{2a} → V_{2a+2} dans les bases des U^{2r+1,2s+1}_{0,0}.

    Les colonnes suivent ``domain``, les lignes ``codomain``.
    """

    a: int
    domain: tuple
    codomain: tuple
    matrix: tuple = field(compare=False)
    rank: int = 0

    @property
    def injective(self):
        return self.rank == len(self.domain)
