"""
Services pour l'application relations.

Ce module contient l'énumération des bases graduées, les calculs de rang
exacts, le solveur de relations de découplage, le décompte des générateurs
forts minimaux et la clôture par produits d'un ensemble de générateurs
faibles.

Tous les calculs de rang sont découpés en blocs : la parité du nombre de
jambes dans chaque composante connexe du graphe d'appariement est
préservée par tous les produits a_(n)b et par ∂.
"""

import logging
from collections import Counter, defaultdict
from fractions import Fraction

from django.conf import settings

from apps.core.exceptions import ConsistencyError
from apps.fock.models import (
    VACUUM, FieldElement, canonicalize, leg_key, monomial_weight2, monomial_z2sign,
)
from apps.fock.services import derivative, normal_order, nth_product, vacuum
from apps.freefield.services import make_spec, spec_hash
from apps.orbifold.models import ANTI_INVARIANT, FULL, INVARIANT, check_sector, sector_accepts
from apps.orbifold.services import catalog_algebra, instantiate, instantiate_entry, theta
from apps.scalars import linalg
from apps.series.services import character

from .exceptions import InhomogeneousInput, InvalidBound, UnsupportedSector
from .models import (
    INFEASIBLE, SOLVED, Letter, RelationReport, TypeProfile, WeakClosureReport, WeightBasis,
    WordTerm, weight_key,
)

logger = logging.getLogger(__name__)

BASIS_NAMESPACE = 'basis'


def _doubled(weight):
    doubled = Fraction(weight) * 2
    if doubled.denominator != 1 or doubled < 0:
        raise InvalidBound(f'Poids invalide : {weight}', weight=weight)
    return int(doubled)


def _legs_up_to(algebra, weight2):
    legs = []
    for g, w2 in enumerate(algebra.weight2s):
        der = 0
        while w2 + 2 * der <= weight2:
            legs.append((g, der))
            der += 1
    return sorted(legs, key=leg_key)


def _enumerate_monomials(algebra, weight2):
    """Monômes canoniques de poids doublé ``weight2`` (jambes déjà triées)."""
    legs = _legs_up_to(algebra, weight2)
    odd = algebra.odd_flags
    weight2s = algebra.weight2s
    results = []

    def walk(start, remaining, current):
        if remaining == 0:
            results.append(tuple(current))
            return
        for position in range(start, len(legs)):
            g, der = legs[position]
            leg_weight = weight2s[g] + 2 * der
            if leg_weight > remaining:
                continue
            current.append(legs[position])
            # une jambe impaire ne se répète pas
            walk(position + 1 if odd[g] else position, remaining - leg_weight, current)
            current.pop()

    walk(0, weight2, [])
    return results


def weight_basis(algebra, d, sector=FULL, cache=None):
    """Base monomiale du secteur ``sector`` en poids ``d``.

    ``cache`` est un ``BasisCache`` optionnel ; les entrées sont indexées par
    l'empreinte de l'algèbre, le poids doublé et le secteur.
    """
    check_sector(sector)
    weight2 = _doubled(d)
    digest = spec_hash(algebra) if cache is not None else None
    if cache is not None:
        cached = cache.get(BASIS_NAMESPACE, digest, weight2, sector)
        if cached is not None:
            return WeightBasis(algebra, Fraction(weight2, 2), sector, tuple(cached))

    z2signs = algebra.z2signs
    monomials = tuple(sorted(
        monomial for monomial in _enumerate_monomials(algebra, weight2)
        if sector_accepts(sector, monomial_z2sign(monomial, z2signs))
    ))
    logger.debug(f'Weight basis of {algebra} at weight {Fraction(weight2, 2)} ({sector}): '
                 f'{len(monomials)} monomials')
    if cache is not None:
        cache.set(monomials, BASIS_NAMESPACE, digest, weight2, sector)
    return WeightBasis(algebra, Fraction(weight2, 2), sector, monomials)


def monomial_class(monomial, components):
    """Parités du nombre de jambes par composante connexe."""
    parities = [0] * (max(components) + 1 if components else 0)
    for g, _der in monomial:
        parities[components[g]] ^= 1
    return tuple(parities)


def sector_classes(x):
    """Décomposition de ``x`` selon les classes de parité de ses monômes."""
    components = x.algebra.components
    grouped = defaultdict(dict)
    for monomial, coefficient in x.terms.items():
        grouped[monomial_class(monomial, components)][monomial] = coefficient
    return {key: FieldElement(x.algebra, terms) for key, terms in grouped.items()}


def _block_rank(elements):
    blocks = defaultdict(list)
    for x in elements:
        for key, part in sector_classes(x).items():
            blocks[key].append(part.terms)
    return sum(linalg.rank(columns) for columns in blocks.values())


def _common_weight2(elements):
    weights = set()
    for x in elements:
        weights |= x.weights2()
    if len(weights) > 1:
        raise InhomogeneousInput(
            f"Poids mélangés : {', '.join(str(Fraction(w, 2)) for w in sorted(weights))}"
        )
    return weights.pop() if weights else None


def span_rank(elements):
    """Rang exact d'une famille homogène d'éléments."""
    elements = list(elements)
    _common_weight2(elements)
    return _block_rank(elements)


def _theta_class(x):
    """Signe θ commun à toutes les jambes de ``x``, ou ``None`` si mélangé."""
    z2signs = x.algebra.z2signs
    signs = {z2signs[g] for monomial in x.terms for g, _der in monomial}
    return signs.pop() if len(signs) == 1 else None


def _theta_split(algebra):
    """Vrai si l'appariement ne relie que des générateurs de même signe θ."""
    z2signs = algebra.z2signs
    return all(z2signs[g] == z2signs[h]
               for g, partners in enumerate(algebra.partners) for h, _value in partners)


def _letters(instances, weight2):
    """Lettres (entrée, ∂^k) de poids au plus ``weight2`` et leurs éléments."""
    letters, elements = [], []
    for entry, element in instances:
        entry2 = int(2 * entry.weight)
        if entry2 >= weight2:
            continue
        current = element
        for der in range((weight2 - entry2) // 2 + 1):
            if der:
                current = derivative(current)
            letters.append(Letter(entry, der))
            elements.append(current)
    return letters, elements


def _words(weights2, target2, max_degree):
    """Multi-ensembles croissants d'indices de lettres de poids total ``target2``."""
    words = []

    def walk(start, remaining, current):
        if remaining == 0:
            words.append(tuple(current))
            return
        if len(current) == max_degree:
            return
        for position in range(start, len(weights2)):
            if weights2[position] <= remaining:
                current.append(position)
                walk(position, remaining - weights2[position], current)
                current.pop()

    walk(0, target2, [])
    return words


def _word_class(word, letter_classes):
    value = None
    for position in word:
        key = letter_classes[position]
        if key is None:
            return None
        value = key if value is None else tuple(a ^ b for a, b in zip(value, key))
    return value


def decouple(target, gens, max_word_degree=None):
    """Cherche target = Σ c_w·w, w mot normalement ordonné en générateurs et dérivées.

    Les mots sont imbriqués à droite, :l_1 :l_2 ⋯ l_r::, avec des lettres
    rangées dans l'ordre du catalogue. La solution retenue est celle dont le
    support est porté par les premiers pivots de la forme échelonnée réduite.
    """
    if max_word_degree is None:
        max_word_degree = settings.VAW_SETTINGS['MAX_WORD_DEGREE']
    if max_word_degree < 1:
        raise InvalidBound(f'Degré de mot invalide : {max_word_degree}')
    algebra = target.algebra
    weight2 = _common_weight2([target])
    zero = FieldElement(algebra)

    if weight2 is None:
        return RelationReport(target, gens, SOLVED, (), zero, {})
    if weight2 == 0:
        term = WordTerm(target.coefficient(VACUUM), ())
        return RelationReport(target, gens, SOLVED, (term,), zero, {})

    instances = instantiate(gens, algebra)
    z2signs = algebra.z2signs
    target_signs = {monomial_z2sign(monomial, z2signs) for monomial in target.terms}
    generator_signs = {monomial_z2sign(monomial, z2signs)
                       for _entry, element in instances for monomial in element.terms}
    if generator_signs <= {1} and target_signs != {1}:
        logger.info(f'Decoupling of weight {Fraction(weight2, 2)} target: sector mismatch')
        return RelationReport(target, gens, INFEASIBLE, (), target,
                              {'reason': 'sector-mismatch'})

    target_theta = _theta_class(target)
    if target_theta is not None and _theta_split(algebra):
        classes = [_theta_class(element) for _entry, element in instances]
        if None not in classes:
            instances = [item for item, sign in zip(instances, classes) if sign == target_theta]

    letters, letter_elements = _letters(instances, weight2)
    letter_classes = []
    for element in letter_elements:
        keys = list(sector_classes(element))
        letter_classes.append(keys[0] if len(keys) == 1 else None)
    target_classes = set(sector_classes(target))

    words = []
    for word in _words([int(2 * letter.weight) for letter in letters], weight2, max_word_degree):
        key = _word_class(word, letter_classes)
        if key is None or key in target_classes:
            words.append(word)

    suffixes = {}

    def word_element(word):
        if word not in suffixes:
            if len(word) == 1:
                suffixes[word] = letter_elements[word[0]]
            else:
                suffixes[word] = normal_order(letter_elements[word[0]], word_element(word[1:]))
        return suffixes[word]

    columns = [word_element(word).terms for word in words]
    logger.info(f'Decoupling at weight {Fraction(weight2, 2)}: {len(letters)} letters, '
                f'{len(words)} words')
    solution, span = linalg.solve_with_rank(columns, target.terms)

    if solution is None:
        rows = len({monomial for column in columns + [target.terms] for monomial in column})
        certificate = {
            'reason': 'rank',
            'rank_span': span,
            'rank_with_target': span + 1,
            'words': len(words),
            'rows': rows,
        }
        logger.info(f'Target outside word span (rank {span} -> {span + 1})')
        return RelationReport(target, gens, INFEASIBLE, (), target, certificate)

    combination = []
    expansion = FieldElement(algebra)
    for position in sorted(solution):
        word = words[position]
        coefficient = solution[position]
        combination.append(WordTerm(coefficient, tuple(letters[index] for index in word)))
        expansion = expansion + coefficient * word_element(word)
    residual = expansion - target
    if not residual.is_zero():
        raise ConsistencyError('Le développement de la combinaison ne redonne pas la cible',
                               weight=Fraction(weight2, 2))
    logger.info(f'Target decoupled with {len(combination)} word(s)')
    return RelationReport(target, gens, SOLVED, tuple(combination), residual,
                          {'rank_span': span, 'words': len(words)})


def word_element(term, algebra):
    """Élément (sans coefficient) du mot d'un ``WordTerm``."""
    if not term.letters:
        return vacuum(algebra)
    result = None
    for letter in reversed(term.letters):
        element = instantiate_entry(letter.entry, algebra)
        for _step in range(letter.der):
            element = derivative(element)
        result = element if result is None else normal_order(element, result)
    return result


def expand_combination(report, algebra=None):
    """Σ c_w·w pour un rapport résolu."""
    algebra = algebra or report.target.algebra
    total = FieldElement(algebra)
    for term in report.combination:
        total = total + term.coefficient * word_element(term, algebra)
    return total


def _subalgebra(algebra, indices, suffix):
    generators = [algebra.generators[g] for g in indices]
    pairing = [[algebra.pairing[g][h] for h in indices] for g in indices]
    label = f'{algebra.label}|{suffix}' if algebra.label else ''
    return make_spec(generators, pairing, label)


def _strong_generators(algebra, bound2):
    """Générateurs forts de l'orbifold de ``algebra`` de poids doublé ≤ ``bound2``.

    Générateurs θ-pairs, puis champs quadratiques :g ∂^m h: en générateurs
    θ-impairs (g ≤ h ; pour g = h pair, m impair donne une dérivée).
    """
    strong = []
    odd_indices = []
    for g, spec in enumerate(algebra.generators):
        if spec.z2sign == 1:
            if spec.weight2 <= bound2:
                strong.append((FieldElement.from_monomial(algebra, ((g, 0),)), spec.weight2))
        else:
            odd_indices.append(g)
    weight2s = algebra.weight2s
    for position, g in enumerate(odd_indices):
        for h in odd_indices[position:]:
            m = 0
            while weight2s[g] + weight2s[h] + 2 * m <= bound2:
                if g == h and not algebra.odd_flags[g] and m % 2:
                    m += 1
                    continue
                sign, monomial = canonicalize([(g, 0), (h, m)], algebra.odd_flags)
                if sign:
                    element = FieldElement.from_monomial(algebra, monomial, sign)
                    strong.append((element, weight2s[g] + weight2s[h] + 2 * m))
                m += 1
    return strong


def _c1_codimensions(algebra, bound2, cache=None):
    """dim (V/C_1 V)_d pour V = algebra^{Z2} et 0 < 2d ≤ ``bound2``.

    C_1 V est engendré par ∂V et les :x c:, x générateur fort de poids au
    plus d/2, c monôme invariant de poids d − wt x > 0.
    """
    strong = _strong_generators(algebra, bound2 // 2)
    components = algebra.components
    bases = {}

    def basis(w2):
        if w2 not in bases:
            bases[w2] = weight_basis(algebra, Fraction(w2, 2), INVARIANT, cache).monomials
        return bases[w2]

    counts = {}
    for d2 in range(1, bound2 + 1):
        monomials = basis(d2)
        if not monomials:
            continue
        rows = Counter(monomial_class(monomial, components) for monomial in monomials)
        blocks = defaultdict(list)
        if d2 >= 2:
            for monomial in basis(d2 - 2):
                if not monomial:
                    continue
                for key, part in sector_classes(derivative(
                        FieldElement.from_monomial(algebra, monomial))).items():
                    blocks[key].append(part.terms)
        for x, x2 in strong:
            if 2 * x2 > d2 or x2 >= d2:
                continue
            for monomial in basis(d2 - x2):
                product = normal_order(x, FieldElement.from_monomial(algebra, monomial))
                for key, part in sector_classes(product).items():
                    blocks[key].append(part.terms)
        codimension = sum(size - linalg.rank(blocks.get(key, [])) for key, size in rows.items())
        logger.debug(f'C1 codimension of {algebra} at weight {Fraction(d2, 2)}: {codimension}')
        if codimension:
            counts[weight_key(Fraction(d2, 2))] = codimension
    return counts


def minimal_generators(algebra, sector, weight_bound, factorize=True, cache=None):
    """Profil des générateurs forts minimaux jusqu'au poids ``weight_bound``.

    Le nombre en poids d est la codimension de C_1 dans l'espace de poids d.
    Avec ``factorize``, V^{Z2} = A_+ ⊗ (A_−)^{Z2} : les générateurs θ-pairs
    comptent pour eux-mêmes et seul l'orbifold des θ-impairs est calculé.
    """
    check_sector(sector)
    if Fraction(weight_bound) < 2:
        raise InvalidBound(f'Borne de poids < 2 : {weight_bound}', bound=weight_bound)
    bound2 = _doubled(weight_bound)
    if sector == ANTI_INVARIANT:
        raise UnsupportedSector(sector=sector)

    if sector == FULL:
        counts = Counter(weight_key(g.weight) for g in algebra.generators if g.weight2 <= bound2)
        return TypeProfile(counts)

    if factorize and _theta_split(algebra):
        counts = Counter(weight_key(g.weight) for g in algebra.generators
                         if g.z2sign == 1 and g.weight2 <= bound2)
        odd_indices = [g for g, spec in enumerate(algebra.generators) if spec.z2sign == -1]
        if odd_indices:
            odd_part = _subalgebra(algebra, odd_indices, 'odd')
            counts.update(_c1_codimensions(odd_part, bound2, cache))
    else:
        counts = _c1_codimensions(algebra, bound2, cache)
    profile = TypeProfile(counts)
    logger.info(f'Minimal generators of {algebra} up to weight {weight_bound}: {profile}')
    return profile


def _absorb(spaces, candidates):
    """Ajoute aux espaces par poids les candidats indépendants ; retourne ceux-ci."""
    grouped = defaultdict(list)
    for x in candidates:
        weight2s = x.algebra.weight2s
        parts = defaultdict(dict)
        for monomial, coefficient in x.terms.items():
            parts[monomial_weight2(monomial, weight2s)][monomial] = coefficient
        for w2, terms in parts.items():
            grouped[w2].append(FieldElement(x.algebra, terms))
    added = []
    for w2, parts in grouped.items():
        existing = spaces.setdefault(w2, [])
        pivots = linalg.independent_columns([x.terms for x in existing] + [x.terms for x in parts])
        fresh = [parts[index - len(existing)] for index in pivots if index >= len(existing)]
        existing.extend(fresh)
        added.extend(fresh)
    return added


def weak_closure(gens, weight_bound, product_depth=None, algebra=None):
    """Clôture de ``gens`` par les produits s_(n)x jusqu'au poids ``weight_bound``.

    On part du vide et des générateurs ; chaque tour applique les modes des
    générateurs aux éléments obtenus au tour précédent, n parcourant la
    fenêtre qui garde un poids dans ]0, weight_bound]. Arrêt dès qu'un tour
    n'apporte rien ou après ``product_depth`` tours.
    """
    if Fraction(weight_bound) <= 0:
        raise InvalidBound(f'Borne de poids invalide : {weight_bound}', bound=weight_bound)
    depth = int(weight_bound) if product_depth is None else product_depth
    if depth < 1:
        raise InvalidBound(f'Profondeur invalide : {depth}', depth=depth)
    algebra = algebra or catalog_algebra(gens)
    bound2 = _doubled(weight_bound)

    seeds = [(element, int(2 * entry.weight)) for entry, element in instantiate(gens, algebra)
             if 2 * entry.weight <= bound2]
    spaces = {}
    frontier = _absorb(spaces, [vacuum(algebra)] + [element for element, _w2 in seeds])
    rounds = 0
    stable = False
    while rounds < depth:
        rounds += 1
        candidates = []
        for s, s2 in seeds:
            for x in frontier:
                (x2,) = x.weights2()
                # poids doublé du produit : s2 + x2 − 2n − 2, dans [1, bound2]
                low = -((bound2 + 2 - s2 - x2) // 2)
                high = (s2 + x2 - 3) // 2
                for n in range(low, high + 1):
                    product = nth_product(s, n, x)
                    if not product.is_zero():
                        candidates.append(product)
        frontier = _absorb(spaces, candidates)
        logger.debug(f'Weak closure round {rounds}: {len(candidates)} products, '
                     f'{len(frontier)} new')
        if not frontier:
            stable = True
            break

    invariant = all(theta(element) == element for element, _w2 in seeds)
    series = character(algebra, INVARIANT if invariant else FULL, Fraction(bound2, 2))
    dimensions = {}
    for w2 in range(1, bound2 + 1):
        obtained = len(spaces.get(w2, []))
        expected = series.coefficients[w2]
        if obtained or expected:
            dimensions[weight_key(Fraction(w2, 2))] = (obtained, expected)
    report = WeakClosureReport(gens, weight_bound, depth, rounds, dimensions, stable)
    logger.info(f'Weak closure of {gens.label or gens.kind}: {rounds} round(s), '
                f'saturated={report.saturated}')
    return report
