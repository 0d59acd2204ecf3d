"""
Services pour l'application curves.

Ce module contient les courbes de troncature de C^ψ(n, m), les lieux
scalaires du problème de génération par W⁴, les constantes de structure
a_{i,j}, b_{i,j} et l'application linéaire de montée f : V_{2a} → V_{2a+2}.
"""

import logging
from fractions import Fraction
from math import factorial, prod

from sympy import Rational

from apps.scalars import linalg
from apps.scalars.models import C, LAMBDA, PSI, ParamRational
from apps.scalars.services import evaluate_at

from .exceptions import ConstantIndexError, OutsideParametrizedFamily, UnknownLocus
from .models import CurveFormula, DeterminantCheck, QuotedScalar, RaisingMap

logger = logging.getLogger(__name__)

VIRASORO = (2, 0)

# Polynômes en (c, λ) dont l'annulation obstrue la génération par W⁴
LOCI = {
    'lambda_zero': LAMBDA,
    'sl3_curve': -8 + 22 * LAMBDA + 5 * LAMBDA * C,
    'w4_null': -125 + 32 * LAMBDA * (2 + C),
}


def _check_family(n, m):
    # (2, 0) est le cas limite de Virasoro : c(ψ) existe, λ(ψ) non
    if not (m >= 1 and n >= 0 or m == 0 and n >= 2):
        raise OutsideParametrizedFamily(f'(n, m) = ({n}, {m}) hors de la famille', n=n, m=m)


def truncation_threshold(n, m):
    """(m+1)(m+n+1)−1 : C^ψ(n, m) est de type W(2, 3, …, seuil)."""
    _check_family(n, m)
    return (m + 1) * (m + n + 1) - 1


def truncation_curve(n, m):
    """Courbe de troncature de C^ψ(n, m), c(ψ) et λ(ψ) réduits."""
    _check_family(n, m)
    c = ParamRational(
        -(n * PSI - m - n - 1) * (n * PSI - PSI - m - n + 1) * (n * PSI + PSI - m - n),
        (PSI - 1) * PSI,
    )
    lam = None
    if (n, m) != VIRASORO:
        lam = ParamRational(
            -(PSI - 1) * PSI,
            (n * PSI - n - m - 2) * (n * PSI - 2 * PSI - m - n + 2) * (n * PSI + 2 * PSI - m - n),
        )
    logger.debug(f'Truncation curve ({n}, {m}): c = {c}, lambda = {lam}')
    return CurveFormula(n, m, c, lam)


def locus_eval(name, n, m):
    """Le polynôme ``name`` en (c, λ) composé avec la courbe de C^ψ(n, m)."""
    if name not in LOCI:
        raise UnknownLocus(f'Lieu inconnu : {name}', locus=name)
    curve = truncation_curve(n, m)
    if curve.lam is None:
        raise OutsideParametrizedFamily(f'λ(ψ) indéfini pour (n, m) = ({n}, {m})', n=n, m=m)
    return ParamRational(LOCI[name]).substitute({'c': curve.c, 'lambda': curve.lam})


def evaluate_curve(n, m, psi, locus=None):
    """Valeurs exactes de c, λ (et d'un lieu) en ψ = ``psi``."""
    curve = truncation_curve(n, m)
    assignment = {'psi': psi}
    values = {
        'c': evaluate_at(curve.c, assignment),
        'lambda': None if curve.lam is None else evaluate_at(curve.lam, assignment),
    }
    if locus:
        values['locus_value'] = evaluate_at(locus_eval(locus, n, m), assignment)
    return values


def _a_value(i, j):
    return Fraction(factorial(i), 6 * prod(j + t for t in range(1, i - 2)))


def _b_value(i, j):
    return Fraction(factorial(i) * (i - 1), 6 * prod(j + t for t in range(1, i - 1)))


def ab_constants(i, j):
    """(a_{i,j}, b_{i,j}) pour 3 ≤ i ≤ j ; un produit vide vaut 1."""
    if not 3 <= i <= j:
        raise ConstantIndexError(f'a, b définis pour 3 <= i <= j, reçu ({i}, {j})', i=i, j=j)
    return _a_value(i, j), _b_value(i, j)


def w4_scalars():
    """Scalaires cités de la preuve de génération par W⁴ (non vérifiés)."""
    along = 'lambda = 125/(32(2+c))'
    return [
        QuotedScalar('w4_5_w4', '(W4)_(5) W4', 'L',
                     ParamRational(Rational(-4, 3) * (-125 + 32 * LAMBDA * (2 + C)))),
        QuotedScalar('w4_5_w4_3_w4', '(W4)_(5) ((W4)_(3) W4)', 'L',
                     ParamRational(1250 * (43 + 9 * C), C + 2), along),
        QuotedScalar('w4_4_w4_4_w4_3_w4', '(W4)_(4) ((W4)_(4) ((W4)_(3) W4))', 'L',
                     ParamRational(200 * (5831 + 1353 * C), C + 2), along),
        QuotedScalar('w4_1_w4_w6', '(W4)_(1) W4', 'W6', ParamRational(Rational(4, 5))),
        QuotedScalar('w4_1_w4_w3w3', '(W4)_(1) W4', 'NO(W3, W3)',
                     ParamRational(Rational(-288, 5) * LAMBDA)),
        QuotedScalar('w4_3_w4_1_w4_w6', '(W4)_(3) ((W4)_(1) W4)', 'W6',
                     ParamRational(Rational(-32, 5) * (-32 + 115 * LAMBDA + 26 * LAMBDA * C))),
        QuotedScalar('w4_3_w4_1_w4_w3w3', '(W4)_(3) ((W4)_(1) W4)', 'NO(W3, W3)',
                     ParamRational(Rational(2304, 5) * LAMBDA * (8 + 5 * LAMBDA + LAMBDA * C))),
        QuotedScalar('w4_1_u33', '(W4)_(1) U(1,1,0,0)', 'U(1,1,0,2)',
                     ParamRational(Rational(1, 3) * (13 - 128 * LAMBDA - 16 * LAMBDA * C))),
        QuotedScalar('w4_1_w6', '(W4)_(1) W6', 'W8', ParamRational(Rational(4, 7))),
        QuotedScalar('w4_1_w8', '(W4)_(1) W8', 'W10', ParamRational(Rational(4, 9))),
    ]


def quoted_scalar(name):
    for scalar in w4_scalars():
        if scalar.name == name:
            return scalar
    raise UnknownLocus(f'Scalaire cité inconnu : {name}', name=name)


def w4_determinant():
    """Déterminant 2×2 des coefficients sur (W⁶, :W³W³:), comparé à −9216/5·λ(−8+22λ+5λc)."""
    top_left = quoted_scalar('w4_1_w4_w6').value
    top_right = quoted_scalar('w4_1_w4_w3w3').value
    bottom_left = quoted_scalar('w4_3_w4_1_w4_w6').value
    bottom_right = quoted_scalar('w4_3_w4_1_w4_w3w3').value
    value = top_left * bottom_right - top_right * bottom_left
    expected = ParamRational(Rational(-9216, 5) * LAMBDA * LOCI['sl3_curve'])
    return DeterminantCheck(value, expected)


def _u_pairs(a):
    """Indices (r, s), 1 ≤ r ≤ s, r+s+1 = a, des champs U^{2r+1,2s+1}_{0,0} de poids 2a."""
    return tuple((r, a - 1 - r) for r in range(1, a) if r <= a - 1 - r)


def _u_label(r, s):
    r, s = min(r, s), max(r, s)
    return f'U^{{{2 * r + 1},{2 * s + 1}}}_{{0,0}}'


def raising_map(a):
    """Matrice exacte de f(U^{2r+1,2s+1}) = a_{4,2r+1}U^{2r+3,2s+1} + a_{4,2s+1}U^{2r+1,2s+3}.

    a_{4,j} = 4/(j+1) est évalué dès j = 3, où il vaut a_{4,3} = 1.
    """
    domain = _u_pairs(a)
    codomain = _u_pairs(a + 1)
    position = {pair: row for row, pair in enumerate(codomain)}
    matrix = [[Fraction(0)] * len(domain) for _ in codomain]
    for col, (r, s) in enumerate(domain):
        for image, coefficient in (((r + 1, s), _a_value(4, 2 * r + 1)),
                                   ((r, s + 1), _a_value(4, 2 * s + 1))):
            key = (min(image), max(image))
            matrix[position[key]][col] += coefficient
    rank = linalg.matrix_rank(matrix) if domain and codomain else 0
    logger.debug(f'Raising map V_{2 * a} -> V_{2 * a + 2}: rank {rank} on {len(domain)} columns')
    return RaisingMap(
        a,
        tuple(_u_label(r, s) for r, s in domain),
        tuple(_u_label(r, s) for r, s in codomain),
        tuple(tuple(row) for row in matrix),
        rank,
    )
