"""
Services pour l'application scalars.

Ce module contient la normalisation des scalaires exacts, l'évaluation des
fractions paramétrées et leurs formes textuelles.
"""

import logging
import re
from fractions import Fraction

from sympy import Rational as SympyRational
from sympy.parsing.sympy_parser import parse_expr, standard_transformations
from sympy.core.sympify import SympifyError

from apps.core.serializers import format_fraction

from .exceptions import (
    DivisionByZero, MissingAssignment, PoleAtPoint, ScalarParseError, UnknownParameter,
)
from .models import LAMBDA, PARAMETERS, ExtScalar, ParamRational

logger = logging.getLogger(__name__)

RATIONAL_PATTERN = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*$')


def normalize(value):
    """Forme canonique d'un scalaire.

    Accepte un rationnel, un couple (numérateur, dénominateur), une
    ``ParamRational`` ou un ``ExtScalar`` ; le type est conservé.
    """
    if isinstance(value, tuple):
        numerator, denominator = value
        if denominator == 0:
            raise DivisionByZero(f'Dénominateur nul : {numerator}/{denominator}')
        return Fraction(numerator, denominator)
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, ParamRational):
        return ParamRational(value.num.as_expr(), value.den.as_expr())
    if isinstance(value, ExtScalar):
        return ExtScalar(value.terms)
    raise TypeError(f'Type de scalaire non pris en charge : {type(value).__name__}')


def parse_rational(text):
    """Lit un rationnel écrit "p/q" ou "p"."""
    match = RATIONAL_PATTERN.match(str(text))
    if not match:
        raise ScalarParseError(f'Rationnel illisible : "{text}"')
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) else 1
    if denominator == 0:
        raise DivisionByZero(f'Dénominateur nul : "{text}"')
    return Fraction(numerator, denominator)


def format_scalar(value):
    """Forme textuelle d'un scalaire, utilisée telle quelle en JSON."""
    if isinstance(value, (int, Fraction)):
        return format_fraction(value)
    if isinstance(value, ExtScalar):
        rational = value.to_rational()
        return format_fraction(rational) if rational is not None else str(value)
    return str(value)


def parse_parameter_expression(text):
    """Lit une expression sympy en psi, c, lambda (ou ψ, λ)."""
    source = str(text).replace('ψ', 'psi').replace('λ', 'lam')
    source = re.sub(r'\blambda\b', 'lam', source)
    local_dict = {'psi': PARAMETERS['psi'], 'c': PARAMETERS['c'], 'lam': LAMBDA}
    try:
        return parse_expr(source, local_dict=local_dict,
                          transformations=standard_transformations)
    except (SyntaxError, TypeError, SympifyError) as e:
        logger.error(f'Parameter expression parse error: {e}')
        raise ScalarParseError(f'Expression illisible : "{text}"')


def evaluate_at(function, assignment):
    """Substitution exacte d'une affectation {paramètre: rationnel}."""
    values = {}
    for name, value in assignment.items():
        if name not in PARAMETERS:
            raise UnknownParameter(f'Paramètre inconnu : {name}')
        value = parse_rational(value) if isinstance(value, str) else Fraction(value)
        values[PARAMETERS[name]] = SympyRational(value.numerator, value.denominator)

    missing = function.as_expr().free_symbols - set(values)
    if missing:
        raise MissingAssignment(
            f"Paramètres sans valeur : {', '.join(sorted(map(str, missing)))}"
        )

    denominator = function.den.as_expr().subs(values)
    if denominator == 0:
        raise PoleAtPoint(f'Pôle de {function} au point {assignment}')
    result = function.num.as_expr().subs(values) / denominator
    return Fraction(int(result.p), int(result.q))
