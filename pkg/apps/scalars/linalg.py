"""
Algèbre linéaire exacte sur Q.

Les vecteurs sont des dictionnaires creux {clé de ligne: Fraction} ; les
matrices sont assemblées en colonnes dans une ``SDM`` de sympy sur ``QQ``
puis réduites par ``rref``. Les lignes de la forme réduite sont rangées dans
l'ordre des pivots.
"""

import logging
from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices.sdm import SDM

logger = logging.getLogger(__name__)


def _to_qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _to_fraction(value):
    return Fraction(int(value.numerator), int(value.denominator))


def column_matrix(columns, row_keys=None):
    """Assemble une ``SDM`` dont la colonne k est ``columns[k]``.

    Retourne ``(matrice, index des lignes)``.
    """
    if row_keys is None:
        row_keys = list(dict.fromkeys(key for column in columns for key in column))
    row_index = {key: position for position, key in enumerate(row_keys)}
    rows = {}
    for col, column in enumerate(columns):
        for key, value in column.items():
            if value:
                rows.setdefault(row_index[key], {})[col] = _to_qq(value)
    return SDM(rows, (len(row_keys), len(columns)), QQ), row_index


def reduce_columns(columns):
    """Forme échelonnée réduite et colonnes pivots."""
    if not any(value for column in columns for value in column.values()):
        return SDM({}, (0, len(columns)), QQ), []
    matrix, _ = column_matrix(columns)
    reduced, pivots = matrix.rref()
    logger.debug(f'rref on {matrix.shape[0]}x{matrix.shape[1]} matrix: rank {len(pivots)}')
    return reduced, list(pivots)


def rank(columns):
    """Rang exact d'une famille de vecteurs creux."""
    return len(reduce_columns(list(columns))[1])


def independent_columns(columns):
    """Indices de la première sous-famille libre maximale (ordre des colonnes)."""
    return reduce_columns(list(columns))[1]


def solve_with_rank(columns, target):
    """Résout ``Σ x_k columns[k] = target`` et donne le rang de ``columns``.

    Retourne ``(solution, rang)`` ; ``solution`` vaut ``None`` si la cible
    est hors de l'espace engendré, sinon c'est le dictionnaire
    {indice de colonne: Fraction} dont le support est porté par les colonnes
    pivots.
    """
    columns = list(columns)
    last = len(columns)
    reduced, pivots = reduce_columns(columns + [target])
    if last in pivots:
        return None, len(pivots) - 1
    solution = {}
    for row, pivot in enumerate(pivots):
        value = reduced.get(row, {}).get(last)
        if value:
            solution[pivot] = _to_fraction(value)
    return solution, len(pivots)


def solve_in_columns(columns, target):
    """Comme ``solve_with_rank``, sans le rang."""
    return solve_with_rank(columns, target)[0]


def change_of_basis(source, target):
    """Matrice P telle que ``target[k] = Σ_l P[k][l] source[l]``.

    ``source`` doit être libre ; retourne ``None`` si un vecteur cible sort de
    l'espace engendré.
    """
    matrix = []
    for vector in target:
        solution = solve_in_columns(source, vector)
        if solution is None:
            return None
        matrix.append([solution.get(position, Fraction(0)) for position in range(len(source))])
    return matrix


def matrix_rank(rows):
    """Rang d'une matrice dense donnée par ses lignes."""
    columns = []
    width = len(rows[0]) if rows else 0
    for col in range(width):
        columns.append({row: rows[row][col] for row in range(len(rows)) if rows[row][col]})
    return rank(columns)


def determinant(rows):
    """Déterminant exact d'une matrice carrée dense de rationnels."""
    size = len(rows)
    matrix = SDM({i: {j: _to_qq(value) for j, value in enumerate(row) if value}
                  for i, row in enumerate(rows)}, (size, size), QQ)
    return _to_fraction(matrix.det())
