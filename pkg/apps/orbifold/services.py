"""
Services pour l'application orbifold.

Ce module contient l'action de θ, les champs quadratiques invariants
U^{2i+1,2j+1}_{a,b}, les réécritures entre familles engendrant un même
espace et les catalogues de générateurs (liste longue, générateurs forts et
faibles de la limite libre, liste minimale pour sl_7, limite stable).
"""

import logging
import re
from fractions import Fraction

from apps.core.exceptions import ConsistencyError
from apps.core.serializers import format_fraction
from apps.fock.models import FieldElement, monomial_z2sign
from apps.fock.services import derivative_power, generator, normal_order
from apps.freefield.services import generator_name, wfree_sln
from apps.scalars import linalg

from .exceptions import SpanMismatch, TypeStringError, UnsupportedCatalog
from .models import (
    CUSTOM, FULL, LONG, MINIMAL_SL7_FREE, STABLE, STRONG_FREE, WEAK_FREE, Catalog, CatalogEntry,
    SpanFamily, SpanRewrite, UIndex, check_sector, sector_accepts,
)

logger = logging.getLogger(__name__)

# Borne de poids des catalogues infinis quand aucune n'est donnée
DEFAULT_CATALOG_BOUND = 18

CATALOG_KINDS = (LONG, STRONG_FREE, WEAK_FREE, MINIMAL_SL7_FREE)


def theta(x):
    """L'automorphisme θ : chaque monôme est multiplié par le produit des signes de ses jambes."""
    z2signs = x.algebra.z2signs
    return FieldElement(x.algebra, {
        monomial: monomial_z2sign(monomial, z2signs) * coefficient
        for monomial, coefficient in x.terms.items()
    })


def project_sector(x, sector):
    """Composante de ``x`` dans un secteur (invariant, anti-invariant ou complet)."""
    check_sector(sector)
    if sector == FULL:
        return x
    z2signs = x.algebra.z2signs
    return FieldElement(x.algebra, {
        monomial: coefficient for monomial, coefficient in x.terms.items()
        if sector_accepts(sector, monomial_z2sign(monomial, z2signs))
    })


def u_field(index, algebra):
    """Le champ :(∂^a W^{2i+1})(∂^b W^{2j+1}): pour un ``UIndex``."""
    return normal_order(generator(algebra, index.left, index.a),
                        generator(algebra, index.right, index.b))


def U(i, j, a, b, algebra):
    """U^{2i+1,2j+1}_{a,b} dans ``algebra`` (UnknownGenerator si une saveur manque)."""
    return u_field(UIndex(i, j, a, b), algebra)


def _family(name, items):
    labels = tuple(label for label, _element in items)
    elements = tuple(element for _label, element in items)
    return SpanFamily(name, labels, elements, linalg.rank(x.terms for x in elements))


def _derived(index, algebra, power):
    element = derivative_power(u_field(index, algebra), power)
    label = index.label if power == 0 else f'D^{power} {index.label}'
    return label, element


def rewrite_spans(i, j, m, algebra):
    """Familles de champs U engendrant le même espace de poids 2i+2j+m+2.

    ``m`` est le nombre total de dérivations a+b. Pour i < j, les trois
    familles {U_{a,m−a}}, {∂^a U_{0,m−a}} et {∂^a U_{m−a,0}} sont des bases
    de dimension m+1. Pour i = j, la parité de m sépare {U_{a,m−a}} (famille
    génératrice) et la base {∂^{m−2a} U_{0,2a}}.
    """
    if i > j or m < 0:
        raise UnsupportedCatalog(f'Réécriture indisponible pour (i, j, m) = ({i}, {j}, {m})')

    if i < j:
        dimension = m + 1
        families = [
            _family('mixed', [(UIndex(i, j, a, m - a).label, u_field(UIndex(i, j, a, m - a), algebra))
                              for a in range(m + 1)]),
            _family('derivative', [_derived(UIndex(i, j, 0, m - a), algebra, a)
                                         for a in range(m + 1)]),
            _family('derivative-swapped', [_derived(UIndex(i, j, m - a, 0), algebra, a)
                                        for a in range(m + 1)]),
        ]
    else:
        dimension = m // 2 + 1
        families = [
            _family('mixed', [(UIndex(i, i, a, m - a).label, u_field(UIndex(i, i, a, m - a), algebra))
                              for a in range(m + 1)]),
            _family('derivative', [_derived(UIndex(i, i, 0, 2 * a), algebra, m - 2 * a)
                                   for a in range(m // 2 + 1)]),
        ]

    for family in families:
        if family.rank != dimension:
            raise SpanMismatch(
                f'Famille {family.name} de rang {family.rank}, attendu {dimension}',
                i=i, j=j, m=m,
            )

    matrices = {}
    for source in families:
        if not source.is_basis:
            continue
        columns = [x.terms for x in source.elements]
        for target in families:
            if target is source:
                continue
            matrix = linalg.change_of_basis(columns, [x.terms for x in target.elements])
            if matrix is None:
                raise SpanMismatch(f'{target.name} sort de l\'espace engendré par {source.name}',
                                   i=i, j=j, m=m)
            matrices[(source.name, target.name)] = matrix

    weight = 2 * i + 2 * j + m + 2
    logger.debug(f'Span rewrite ({i}, {j}, {m}) checked at weight {weight}')
    return SpanRewrite(i, j, m, weight, tuple(families), dimension, matrices)


def _generator_entry(k):
    name = generator_name(k)
    return CatalogEntry(name, Fraction(k), name)


def _u_entry(i, j, a, b=0, free_limit_only=False):
    index = UIndex(i, j, a, b)
    return CatalogEntry(index.label, Fraction(index.weight), index, free_limit_only)


def _even_entries(top):
    return [_generator_entry(k) for k in range(2, top + 1, 2)]


def _long_entries(d, bound):
    entries = []
    for i in range(1, d + 1):
        a = 0
        while UIndex(i, i, 0, 2 * a).weight <= bound:
            entries.append(_u_entry(i, i, 0, 2 * a))
            a += 1
        for j in range(i + 1, d + 1):
            a = 0
            while UIndex(i, j, 0, a).weight <= bound:
                entries.append(_u_entry(i, j, 0, a))
                a += 1
    return entries


def _strong_entries(d):
    entries = [_u_entry(1, 1, 0, 2 * a) for a in range(4)]
    for i in range(2, d + 1):
        entries.extend(_u_entry(1, i, 0, a) for a in range(7))
        entries.extend(_u_entry(i, i, 0, 2 * a) for a in range(3))
        for j in range(i + 1, d + 1):
            entries.extend(_u_entry(i, j, 0, a) for a in range(6))
    return entries


def _weak_entries(d):
    return [_u_entry(1, i, 0, 0) for i in range(1, d + 1)]


def _minimal_sl7_entries():
    entries = _even_entries(6)
    entries += [_u_entry(1, 1, 0, 2 * a) for a in range(4)]
    entries += [_u_entry(1, 2, 0, a) for a in range(7)]
    entries += [_u_entry(1, 3, 0, a) for a in range(6)]
    entries += [_u_entry(2, 2, 0, 2 * a) for a in range(3)]
    entries += [_u_entry(2, 3, 0, a) for a in range(4)]
    entries += [_u_entry(3, 3, 0, 2 * a) for a in range(2)]
    # survivants de la limite libre, éliminés pour k générique
    entries += [
        _u_entry(1, 3, 0, 6, free_limit_only=True),
        _u_entry(2, 3, 0, 4, free_limit_only=True),
        _u_entry(2, 3, 0, 5, free_limit_only=True),
        _u_entry(3, 3, 0, 4, free_limit_only=True),
    ]
    return entries


def _finalize(kind, n, entries, bound, label):
    if bound is not None:
        entries = [entry for entry in entries if entry.weight <= bound]
    # tri stable : l'ordre de construction départage les poids égaux
    entries = sorted(entries, key=lambda entry: entry.weight)
    labels = [entry.label for entry in entries]
    if len(set(labels)) != len(labels):
        raise ConsistencyError(f'Libellés en double dans le catalogue {label}')
    logger.info(f'Catalog {label} built with {len(entries)} entries')
    return Catalog(kind, n, tuple(entries), bound, label)


def generator_catalog(n, kind, bound=None):
    """Catalogue de générateurs de W^free(sl_n)^{Z2}, ou de la limite stable.

    ``n`` est un entier ≥ 4 ou ``"stable"`` ; ``bound`` tronque le catalogue
    en poids (obligatoire en pratique pour ``long`` et ``stable``, sinon
    ``DEFAULT_CATALOG_BOUND``).
    """
    if kind not in CATALOG_KINDS:
        raise UnsupportedCatalog(f'Type de catalogue inconnu : {kind}', kind=kind)

    if n == STABLE:
        if kind == MINIMAL_SL7_FREE:
            raise UnsupportedCatalog('La liste minimale sl_7 n\'a pas de limite stable')
        bound = DEFAULT_CATALOG_BOUND if bound is None else bound
        d = bound // 2
        if kind == LONG:
            entries = _long_entries(d, bound)
        elif kind == STRONG_FREE:
            entries = _strong_entries(d)
        else:
            entries = _weak_entries(d)
        entries = _even_entries(bound) + entries
        return _finalize(kind, None, entries, bound, f'stable:{kind}')

    if not isinstance(n, int) or isinstance(n, bool):
        raise UnsupportedCatalog(f'n invalide : {n}')
    if n < 4 and kind != LONG or n < 3:
        raise UnsupportedCatalog(f'Catalogue {kind} indisponible pour n={n}', n=n, kind=kind)
    if kind == MINIMAL_SL7_FREE and n != 7:
        raise UnsupportedCatalog(f'{MINIMAL_SL7_FREE} exige n=7, reçu n={n}', n=n)

    d = (n - 1) // 2
    if kind == LONG:
        bound = DEFAULT_CATALOG_BOUND if bound is None else bound
        entries = _even_entries(n) + _long_entries(d, bound)
    elif kind == STRONG_FREE:
        entries = _even_entries(n) + _strong_entries(d)
    elif kind == WEAK_FREE:
        entries = _even_entries(n) + _weak_entries(d)
    else:
        entries = _minimal_sl7_entries()
    return _finalize(kind, n, entries, bound, f'{kind}:{n}')


def coset_catalog(n, m, weight_bound=None, kind=LONG):
    """Catalogue de C^ψ(n, m)^{Z2} : mêmes recettes sur wfree_sln(N), N = (m+1)(m+n+1)−1."""
    from apps.curves.services import truncation_threshold

    if kind not in (LONG, STRONG_FREE):
        raise UnsupportedCatalog(f'Type {kind} indisponible pour C^ψ(n, m)', kind=kind)
    top = truncation_threshold(n, m)
    catalog = generator_catalog(top, kind, weight_bound)
    return Catalog(kind, top, catalog.entries, catalog.bound, f'coset:{n},{m}:{kind}')


def catalog_algebra(catalog):
    """L'algèbre naturelle d'un catalogue : wfree_sln(n), ou wfree_sln(borne) en limite stable."""
    if catalog.n is None:
        return wfree_sln(max(3, int(catalog.bound)))
    return wfree_sln(catalog.n)


def instantiate_entry(entry, algebra):
    if isinstance(entry.recipe, UIndex):
        return u_field(entry.recipe, algebra)
    return generator(algebra, entry.recipe)


def instantiate(catalog, algebra=None):
    """Liste de (entrée, élément) ; vérifie le poids annoncé de chaque entrée."""
    algebra = algebra or catalog_algebra(catalog)
    instances = []
    for entry in catalog.entries:
        element = instantiate_entry(entry, algebra)
        if element.weights2() != {int(2 * entry.weight)}:
            raise ConsistencyError(f'Poids incohérent pour {entry.label}', entry=entry.label)
        instances.append((entry, element))
    return instances


def type_string(counts):
    """Forme "W(2,4,6^2,...)" d'un profil {poids: multiplicité}."""
    counts = getattr(counts, 'counts', counts)
    parts = []
    for weight in sorted(counts):
        count = counts[weight]
        if not count:
            continue
        text = format_fraction(weight)
        parts.append(text if count == 1 else f'{text}^{count}')
    return f"W({','.join(parts)})"


_TYPE_RE = re.compile(r'^\s*W\s*\((.*)\)\s*$')
_TYPE_ITEM_RE = re.compile(r'^\s*(\d+(?:/\d+)?)\s*(?:\^\s*(\d+))?\s*$')


def parse_type_string(text):
    """Relit une chaîne "W(2,4,6^2)" en dictionnaire {poids: multiplicité}."""
    match = _TYPE_RE.match(text)
    if not match:
        raise TypeStringError(f'Chaîne de type invalide : {text!r}', text=text)
    body = match.group(1).strip()
    counts = {}
    if not body:
        return counts
    for item in body.split(','):
        item_match = _TYPE_ITEM_RE.match(item)
        if not item_match:
            raise TypeStringError(f'Élément invalide {item!r} dans {text!r}', text=text)
        weight = Fraction(item_match.group(1))
        if weight.denominator == 1:
            weight = int(weight)
        if weight in counts:
            raise TypeStringError(f'Poids répété {item_match.group(1)} dans {text!r}', text=text)
        counts[weight] = int(item_match.group(2) or 1)
    return counts


def custom_catalog(n, recipes):
    """Catalogue libre sur wfree_sln(n) : noms de générateurs ou ``UIndex``."""
    algebra = wfree_sln(n)
    entries = []
    for recipe in recipes:
        if isinstance(recipe, UIndex):
            entries.append(CatalogEntry(recipe.label, Fraction(recipe.weight), recipe))
        else:
            weight = algebra.generators[algebra.index(recipe)].weight
            entries.append(CatalogEntry(recipe, weight, recipe))
    return _finalize(CUSTOM, n, entries, None, f'{CUSTOM}:{n}')
