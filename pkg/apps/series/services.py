"""
Services pour l'application series.

Ce module calcule les dimensions graduées des algèbres de champs libres :
caractères complets, tordus par θ et invariants, ainsi que la formule
stable n_k du nombre de générateurs forts minimaux de l'orbifold infini.
"""

import logging

from django.conf import settings

from apps.orbifold.models import ANTI_INVARIANT, FULL, INVARIANT, check_sector

from .exceptions import InvalidOrder, OutOfStableRange
from .models import IntSeries

logger = logging.getLogger(__name__)

# Nombres de générateurs sous le poids 11 : 2, 4, 6², 8³, 9, 10⁵
STABLE_PREFIX = {2: 1, 4: 1, 6: 2, 8: 3, 9: 1, 10: 5}

STABLE_THRESHOLD = 11


def _bosonic_factor(coefficients, step, sign):
    """Multiplie en place par 1/(1 − sign·t^step)."""
    for index in range(step, len(coefficients)):
        coefficients[index] += sign * coefficients[index - step]


def _fermionic_factor(coefficients, step, sign):
    """Multiplie en place par (1 + sign·t^step)."""
    for index in range(len(coefficients) - 1, step - 1, -1):
        coefficients[index] += sign * coefficients[index - step]


def _twisted_character(algebra, order2, twisted):
    coefficients = [0] * (order2 + 1)
    coefficients[0] = 1
    for g in algebra.generators:
        sign = -1 if twisted and g.z2sign == -1 else 1
        # ∂^k g a le poids doublé weight2 + 2k
        for step in range(g.weight2, order2 + 1, 2):
            if g.is_odd:
                _fermionic_factor(coefficients, step, sign)
            else:
                _bosonic_factor(coefficients, step, sign)
    return IntSeries(coefficients, order2)


def character(algebra, sector=FULL, order=None):
    """Série de Hilbert du secteur jusqu'au poids ``order`` (inclus).

    Complet : ∏ (1 − q^m)^{−1} pour un générateur pair, ∏ (1 + q^m) pour un
    impair, m parcourant les poids de ses dérivées. Secteurs : ½(χ ± χ_θ).
    """
    check_sector(sector)
    order = settings.VAW_SETTINGS['SERIES_ORDER'] if order is None else order
    if order < 0:
        raise InvalidOrder(f'Ordre négatif : {order}', order=order)
    order2 = int(2 * order)
    full = _twisted_character(algebra, order2, twisted=False)
    if sector == FULL:
        return full
    twisted = _twisted_character(algebra, order2, twisted=True)
    if sector == INVARIANT:
        return (full + twisted).halve()
    return (full - twisted).halve()


def invariant_dimension(algebra, d):
    """Dimension de l'espace θ-invariant de poids d."""
    return character(algebra, INVARIANT, d).at_weight(d)


def sector_dimensions(algebra, order):
    """Dimensions par poids entier dans les trois secteurs."""
    return {sector: character(algebra, sector, order).weight_list()
            for sector in (FULL, INVARIANT, ANTI_INVARIANT)}


def nk_formula(k):
    """Nombre n_k de générateurs forts minimaux de poids k de l'orbifold stable (k ≥ 11)."""
    if k < STABLE_THRESHOLD:
        raise OutOfStableRange(f'n_k exige k >= {STABLE_THRESHOLD}, reçu {k}', k=k)
    m = k // 4
    return (3 * m - 2, 3 * m - 5, 3 * m, 3 * m - 4)[k % 4]


def stable_prefix():
    return dict(STABLE_PREFIX)


def stable_profile(weight_bound):
    """Profil de type de l'orbifold stable jusqu'au poids ``weight_bound``."""
    from apps.relations.models import TypeProfile

    counts = {weight: count for weight, count in STABLE_PREFIX.items() if weight <= weight_bound}
    for k in range(STABLE_THRESHOLD, weight_bound + 1):
        counts[k] = nk_formula(k)
    logger.debug(f'Stable profile up to weight {weight_bound}: {counts}')
    return TypeProfile(counts)
