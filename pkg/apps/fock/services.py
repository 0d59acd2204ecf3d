"""
Services pour l'application fock.

Ce module contient le moteur de contractions de Wick : produits a_(n)b entre
éléments d'une algèbre de champs libres, dérivation, ordre normal, ainsi que
le passage entre une algèbre et une sous-algèbre plongée.

Pour des OPE centrales, le produit de deux monômes A_(n)B s'obtient en
sommant sur les appariements partiels des jambes de A avec celles de B.
Une contraction (g, k)–(h, d) vaut (−1)^k (K+k+d−1)!/(K−1)! M[g, h] avec
K = wt g + wt h et contribue (z−w)^{−(K+k+d)}. Les jambes libres de A sont
ensuite développées en Taylor autour de w : seul l'ordre T = Σs − n − 1
contribue, réparti par la formule de Leibniz ∂^{(T)} = Σ ∏ ∂^{t_i}/t_i!.
"""

import logging
from collections import OrderedDict
from fractions import Fraction
from functools import lru_cache
from math import factorial

from django.conf import settings

from apps.scalars.models import ExtScalar

from .exceptions import MixedAlgebras, NormalizationLeak, NotInSubalgebra
from .models import VACUUM, FieldElement, canonicalize

logger = logging.getLogger(__name__)


def _compositions(total, parts):
    """Suites de ``parts`` entiers positifs ou nuls de somme ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _permutation_sign(order, odd):
    """Signe de la permutation des positions impaires listées dans ``order``."""
    odd_positions = [position for position in order if odd[position]]
    inversions = 0
    for i, left in enumerate(odd_positions):
        for right in odd_positions[i + 1:]:
            if left > right:
                inversions += 1
    return -1 if inversions % 2 else 1


class WickEngine:
    """Moteur de produits de monômes pour une algèbre donnée.

    Les produits de monômes sont mémoïsés (``VAW_SETTINGS['MEMO_SIZE']``) ;
    le cache ne change jamais le résultat.
    """

    def __init__(self, algebra, memo_size=None):
        self.algebra = algebra
        self.weight2s = algebra.weight2s
        self.odd_flags = algebra.odd_flags
        self.pairing = algebra.pairing
        if memo_size is None:
            memo_size = settings.VAW_SETTINGS['MEMO_SIZE']
        if memo_size:
            self.monomial_product = lru_cache(maxsize=memo_size)(self._monomial_product)
            self.monomial_derivative = lru_cache(maxsize=memo_size)(self._monomial_derivative)
        else:
            self.monomial_product = self._monomial_product
            self.monomial_derivative = self._monomial_derivative

    def _contraction(self, left_leg, right_leg):
        """Valeur scalaire et ordre du pôle d'une contraction."""
        g, k = left_leg
        h, d = right_leg
        value = self.pairing[g][h]
        if not value:
            return None, 0
        # K = wt g + wt h est entier dès que M[g, h] est non nul
        total = (self.weight2s[g] + self.weight2s[h]) // 2
        scalar = Fraction(factorial(total + k + d - 1), factorial(total - 1)) * value
        if k % 2:
            scalar = -scalar
        return scalar, total + k + d

    def _matchings(self, left, right):
        """Appariements partiels : liste de (paires, scalaire, ordre total)."""
        results = []

        def walk(position, used, pairs, scalar, order):
            if position == len(left):
                results.append((tuple(pairs), scalar, order))
                return
            walk(position + 1, used, pairs, scalar, order)
            for index, right_leg in enumerate(right):
                if index in used:
                    continue
                value, pole = self._contraction(left[position], right_leg)
                if value is None:
                    continue
                pairs.append((position, index))
                walk(position + 1, used | {index}, pairs, scalar * value, order + pole)
                pairs.pop()

        walk(0, frozenset(), [], Fraction(1), 0)
        return results

    def _monomial_product(self, left, n, right):
        """A_(n)B pour deux monômes canoniques ; tuple de (monôme, coefficient)."""
        odd = [self.odd_flags[g] for g, _d in left] + [self.odd_flags[g] for g, _d in right]
        offset = len(left)
        accumulated = {}
        for pairs, scalar, order in self._matchings(left, right):
            shift = order - n - 1
            if shift < 0:
                continue
            matched_left = {i for i, _j in pairs}
            matched_right = {j for _i, j in pairs}
            free_left = [i for i in range(len(left)) if i not in matched_left]
            free_right = [j for j in range(len(right)) if j not in matched_right]
            if not free_left and shift > 0:
                continue

            permutation = []
            for i, j in pairs:
                permutation.extend((i, offset + j))
            permutation.extend(free_left)
            permutation.extend(offset + j for j in free_right)
            sign = _permutation_sign(permutation, odd)

            tail = [right[j] for j in free_right]
            if not free_left:
                self._accumulate(accumulated, tail, sign * scalar)
                continue
            for shifts in _compositions(shift, len(free_left)):
                weight = Fraction(1)
                legs = []
                for i, t in zip(free_left, shifts):
                    generator, der = left[i]
                    legs.append((generator, der + t))
                    weight /= factorial(t)
                self._accumulate(accumulated, legs + tail, sign * scalar * weight)
        return tuple((m, c) for m, c in accumulated.items() if c)

    def _accumulate(self, accumulated, legs, coefficient):
        sign, monomial = canonicalize(legs, self.odd_flags)
        if not sign:
            return
        accumulated[monomial] = accumulated.get(monomial, 0) + sign * coefficient

    def _monomial_derivative(self, monomial):
        accumulated = {}
        for position, (generator, der) in enumerate(monomial):
            legs = list(monomial)
            legs[position] = (generator, der + 1)
            self._accumulate(accumulated, legs, Fraction(1))
        return tuple((m, c) for m, c in accumulated.items() if c)

    def product(self, a, n, b):
        """a_(n)b pour deux éléments de l'algèbre du moteur."""
        terms = {}
        for left, left_coefficient in a.terms.items():
            for right, right_coefficient in b.terms.items():
                factor = left_coefficient * right_coefficient
                for monomial, value in self.monomial_product(left, n, right):
                    terms[monomial] = terms.get(monomial, 0) + factor * value
        return FieldElement(self.algebra, terms)

    def derivative(self, x):
        terms = {}
        for monomial, coefficient in x.terms.items():
            for result, value in self.monomial_derivative(monomial):
                terms[result] = terms.get(result, 0) + coefficient * value
        return FieldElement(self.algebra, terms)

    def cache_info(self):
        if hasattr(self.monomial_product, 'cache_info'):
            return self.monomial_product.cache_info()
        return None


_engines = OrderedDict()


def get_engine(algebra):
    """Moteur associé à une algèbre (un seul par algèbre).

    Au plus ``VAW_SETTINGS['MAX_ENGINES']`` moteurs sont gardés ; le moins
    récemment utilisé est libéré avec sa mémoïsation.
    """
    engine = _engines.get(algebra)
    if engine is not None:
        _engines.move_to_end(algebra)
        return engine
    engine = WickEngine(algebra)
    _engines[algebra] = engine
    logger.debug(f'Wick engine created for {algebra}')
    limit = max(1, settings.VAW_SETTINGS['MAX_ENGINES'])
    while len(_engines) > limit:
        evicted, old = _engines.popitem(last=False)
        logger.debug(f'Wick engine released for {evicted}: {old.cache_info()}')
    return engine


def reset_engines():
    """Vide les moteurs et leurs mémoïsations."""
    _engines.clear()


def vacuum(algebra):
    return FieldElement.from_monomial(algebra, VACUUM)


def generator(algebra, name, der=0):
    """Le champ ∂^der(name) comme élément."""
    return FieldElement.from_monomial(algebra, ((algebra.index(name), der),))


def _same_algebra(a, b):
    if a.algebra != b.algebra:
        raise MixedAlgebras(f'{a.algebra} / {b.algebra}')


def nth_product(a, n, b):
    """Le produit a_(n)b, pour tout entier n."""
    _same_algebra(a, b)
    return get_engine(a.algebra).product(a, n, b)


def normal_order(a, b):
    """Le produit normalement ordonné :ab: = a_(−1)b."""
    return nth_product(a, -1, b)


def derivative(x):
    """Opérateur de translation ∂ (règle de Leibniz sur les jambes)."""
    return get_engine(x.algebra).derivative(x)


def derivative_power(x, k):
    for _step in range(k):
        x = derivative(x)
    return x


def divided_derivative(x, k):
    """∂^{(k)} = ∂^k / k!."""
    return derivative_power(x, k) / factorial(k)


def _leg_power(image, der, cache):
    key = (id(image), der)
    if key not in cache:
        cache[key] = derivative_power(image, der)
    return cache[key]


def embed(x, embedding):
    """Image d'un élément de la source dans l'algèbre cible."""
    if x.algebra != embedding.source:
        raise MixedAlgebras(f'{x.algebra} / {embedding.source}')
    target = embedding.target
    result = FieldElement(target)
    cache = {}
    for monomial, coefficient in x.terms.items():
        term = vacuum(target)
        for generator_index, der in reversed(monomial):
            name = embedding.source.generators[generator_index].name
            term = normal_order(_leg_power(embedding.image(name), der, cache), term)
        result = result + coefficient * term
    return result


def project_to_subalgebra(x, embedding):
    """Réécrit un élément de la cible en variables de la source.

    Chaque image de générateur doit être un multiple c·∂^e(β) d'une dérivée
    d'un générateur β de la cible ; une jambe ∂^{e+f}β devient alors
    (1/c)·∂^f(source). Les coefficients doivent redevenir rationnels.
    """
    if x.algebra != embedding.target:
        raise MixedAlgebras(f'{x.algebra} / {embedding.target}')
    source = embedding.source
    inverse = {}
    for name, image in embedding.images.items():
        ((monomial, coefficient),) = image.terms.items()
        ((target_generator, base_der),) = monomial
        inverse[target_generator] = (source.index(name), base_der, coefficient)

    terms = {}
    for monomial, coefficient in x.terms.items():
        legs = []
        value = coefficient
        for target_generator, der in monomial:
            if target_generator not in inverse:
                raise NotInSubalgebra(f'Générateur hors image : {target_generator}')
            source_generator, base_der, scale = inverse[target_generator]
            if der < base_der:
                raise NotInSubalgebra(
                    f'Ordre de dérivation {der} < {base_der} pour '
                    f'{embedding.target.generators[target_generator].name}'
                )
            legs.append((source_generator, der - base_der))
            value = _divide(value, scale)
        sign, canonical = canonicalize(legs, source.odd_flags)
        if not sign:
            continue
        terms[canonical] = terms.get(canonical, 0) + sign * value

    rational_terms = {}
    for monomial, value in terms.items():
        if isinstance(value, ExtScalar):
            rational = value.to_rational()
            if rational is None:
                raise NormalizationLeak(f'Coefficient résiduel {value}')
            value = rational
        rational_terms[monomial] = value
    return FieldElement(source, rational_terms)


def _divide(value, scale):
    """value / scale pour scale = q·n_i (inverse exact grâce à n_i² = (4i+1)!)."""
    if isinstance(scale, ExtScalar) and not scale.is_rational():
        ((key, rational),) = scale.terms.items()
        square = ExtScalar({key: 1}) * ExtScalar({key: 1})
        inverse = ExtScalar({key: 1 / (rational * square.to_rational())})
        return ExtScalar.coerce(value) * inverse
    if isinstance(scale, ExtScalar):
        scale = scale.to_rational()
    return value / scale
