"""
Services pour l'application freefield.

Ce module construit les algèbres de champs libres utilisées par le moteur :
les quatre familles standard, W^free(sl_n), les produits tensoriels,
l'extension de Heisenberg portant le champ ν, ainsi que les contrôles de
cohérence des appariements.
"""

import hashlib
import logging
from fractions import Fraction

from apps.core.serializers import render_json
from apps.scalars.models import ExtScalar

from .exceptions import (
    DuplicateGenerator, InvalidFamilyParameter, InvalidPairing, TooSmall, UnknownGenerator,
)
from .models import EVEN, ODD, EmbeddingMap, FreeFieldSpec, GeneratorSpec

logger = logging.getLogger(__name__)

# famille: (parité des générateurs, type d'appariement, parité exigée de k)
STANDARD_FAMILIES = {
    'O_ev': (EVEN, 'orthogonal', 0),
    'S_ev': (EVEN, 'symplectic', 1),
    'S_odd': (ODD, 'symplectic', 0),
    'O_odd': (ODD, 'orthogonal', 1),
}


def _identity(size):
    return tuple(
        tuple(Fraction(1) if row == col else Fraction(0) for col in range(size))
        for row in range(size)
    )


def make_spec(generators, pairing, label=''):
    """Construit et valide une ``FreeFieldSpec``."""
    pairing = tuple(tuple(Fraction(value) for value in row) for row in pairing)
    spec = FreeFieldSpec(tuple(generators), pairing, label)
    validate_algebra(spec)
    return spec


def validate_algebra(spec):
    """Contrôle noms, dimensions et loi de signe des appariements.

    Pour M[g, h] non nul, K = wt g + wt h doit être entier et
    M[h, g] = (−1)^{|g||h| + K} M[g, h]. L'appariement est diagonal par
    blocs de poids.
    """
    names = [generator.name for generator in spec.generators]
    if len(set(names)) != len(names):
        raise DuplicateGenerator(f'Noms en double : {names}')
    size = len(spec.generators)
    if len(spec.pairing) != size or any(len(row) != size for row in spec.pairing):
        raise InvalidPairing(f'Matrice d\'appariement de taille incorrecte pour {size} générateurs')

    for generator in spec.generators:
        if generator.weight2 <= 0:
            raise InvalidPairing(f'Poids non positif pour {generator.name}')
        if generator.z2sign not in (1, -1):
            raise InvalidPairing(f'Signe Z2 invalide pour {generator.name}')
        if generator.parity not in (EVEN, ODD):
            raise InvalidPairing(f'Parité invalide pour {generator.name}')

    for g, left in enumerate(spec.generators):
        for h, right in enumerate(spec.generators):
            value = spec.pairing[g][h]
            if not value:
                continue
            if left.weight2 != right.weight2:
                raise InvalidPairing(f'Appariement entre poids distincts : {left.name}, {right.name}')
            total2 = left.weight2 + right.weight2
            if total2 % 2:
                raise InvalidPairing(f'Pôle non entier entre {left.name} et {right.name}')
            exponent = (1 if left.is_odd and right.is_odd else 0) + total2 // 2
            expected = value if exponent % 2 == 0 else -value
            if spec.pairing[h][g] != expected:
                raise InvalidPairing(
                    f'Loi de signe violée pour ({left.name}, {right.name})',
                    left=left.name, right=right.name,
                )
    return True


def make_standard_algebra(kind, n, k, prefix=None):
    """Les quatre familles standard O_ev, S_ev, S_odd, O_odd de rang n et poids k/2.

    ``prefix`` renomme les générateurs (utile avant un produit tensoriel).
    """
    if kind not in STANDARD_FAMILIES:
        raise InvalidFamilyParameter(f'Famille inconnue : {kind}')
    if n < 1 or k < 1:
        raise InvalidFamilyParameter(f'Paramètres invalides : n={n}, k={k}')
    parity, pairing_type, k_parity = STANDARD_FAMILIES[kind]
    if k % 2 != k_parity:
        raise InvalidFamilyParameter(
            f'{kind} exige k {"pair" if k_parity == 0 else "impair"}, reçu k={k}'
        )
    label = f'{kind}({n},{k})'

    if pairing_type == 'orthogonal':
        generators = [GeneratorSpec(f'{prefix or "a"}{i}', parity, k) for i in range(1, n + 1)]
        return make_spec(generators, _identity(n), label)

    generators = []
    for i in range(1, n + 1):
        generators.append(GeneratorSpec(f'{prefix or ""}a{i}', parity, k))
        generators.append(GeneratorSpec(f'{prefix or ""}b{i}', parity, k))
    size = 2 * n
    rows = [[Fraction(0)] * size for _ in range(size)]
    for i in range(n):
        rows[2 * i][2 * i + 1] = Fraction(1)
        rows[2 * i + 1][2 * i] = Fraction(-1)
    return make_spec(generators, rows, label)


def generator_name(i):
    """Nom du générateur de poids i dans W^free(sl_n) (W2 s'appelle L)."""
    return 'L' if i == 2 else f'W{i}'


def wfree_sln(n):
    """W^free(sl_n) = ⊗_{i=2}^{n} O_ev(1, 2i) : générateurs W^2 = L, …, W^n."""
    if n < 3:
        raise TooSmall(f'wfree_sln exige n >= 3, reçu {n}', n=n)
    generators = [GeneratorSpec(generator_name(i), EVEN, 2 * i, (-1) ** i) for i in range(2, n + 1)]
    return make_spec(generators, _identity(len(generators)), f'wfree-sln:{n}')


def odd_flavors(spec):
    """Indices i des saveurs impaires W^{2i+1} présentes."""
    flavors = []
    for generator in spec.generators:
        name = generator.name
        if name.startswith('W') and name[1:].isdigit():
            weight = int(name[1:])
            if weight % 2 == 1:
                flavors.append((weight - 1) // 2)
    return sorted(flavors)


def odd_flavor_algebra(d):
    """La sous-algèbre W^3, W^5, …, W^{2d+1} (facteur θ-impair de W^free)."""
    generators = [GeneratorSpec(f'W{2 * i + 1}', EVEN, 2 * (2 * i + 1), -1) for i in range(1, d + 1)]
    return make_spec(generators, _identity(d), f'odd-flavors:{d}')


def heisenberg_algebra(d):
    """H(d) : générateurs alpha3, …, alpha{2d+1} de poids 1, appariement (z−w)^{−2}."""
    generators = [GeneratorSpec(f'alpha{2 * i + 1}', EVEN, 2, -1) for i in range(1, d + 1)]
    return make_spec(generators, _identity(d), f'heisenberg:{d}')


def heisenberg_extension(d):
    """Algèbre H(d), plongement W^{2i+1} ↦ (1/n_i)∂^{2i}α^{2i+1} et champ ν.

    ``d`` est le nombre de saveurs impaires (W^3, …, W^{2d+1}) ; le signe ε
    du plongement vaut +1.
    """
    from apps.fock.models import FieldElement

    if d < 1:
        raise TooSmall(f'heisenberg_extension exige au moins une saveur, reçu {d}', d=d)
    source = odd_flavor_algebra(d)
    target = heisenberg_algebra(d)
    images = {}
    for i in range(1, d + 1):
        leg = ((target.index(f'alpha{2 * i + 1}'), 2 * i),)
        images[f'W{2 * i + 1}'] = FieldElement(target, {leg: ExtScalar.inverse_symbol(i)})
    embedding = EmbeddingMap(source, target, images)
    nu = nu_field(target)
    logger.info(f'Heisenberg extension built with {d} flavor(s)')
    return target, embedding, nu


def nu_field(algebra):
    """ν = Σ_i :(∂²α^{2i+1}) α^{2i+1}: sur les générateurs alpha de ``algebra``."""
    from apps.fock.models import FieldElement
    from apps.fock.services import generator, normal_order

    names = [name for name in algebra.names if name.startswith('alpha')]
    if not names:
        raise UnknownGenerator(f'Aucun générateur alpha dans {algebra} pour construire nu',
                               generator='nu')
    nu = FieldElement(algebra)
    for name in names:
        nu = nu + normal_order(generator(algebra, name, 2), generator(algebra, name))
    return nu


def tensor_product(*specs, label=''):
    """Produit tensoriel : générateurs concaténés, appariement diagonal par blocs."""
    generators = []
    for spec in specs:
        generators.extend(spec.generators)
    size = len(generators)
    rows = [[Fraction(0)] * size for _ in range(size)]
    offset = 0
    for spec in specs:
        for row in range(spec.size):
            for col in range(spec.size):
                rows[offset + row][offset + col] = spec.pairing[row][col]
        offset += spec.size
    label = label or ' ⊗ '.join(str(spec) for spec in specs)
    return make_spec(generators, rows, label)


def rescale(spec, factors):
    """Changement d'échelle diagonal g ↦ f_g·g.

    Retourne la nouvelle spécification (M[g, h] multiplié par f_g·f_h) et le
    dictionnaire {nom: f_g} des facteurs appliqués.
    """
    scale = []
    for generator in spec.generators:
        factor = Fraction(factors.get(generator.name, 1))
        if not factor:
            raise InvalidPairing(f'Facteur nul pour {generator.name}')
        scale.append(factor)
    unknown = set(factors) - set(spec.names)
    if unknown:
        raise UnknownGenerator(f"Générateurs inconnus : {', '.join(sorted(unknown))}")
    rows = [[spec.pairing[g][h] * scale[g] * scale[h] for h in range(spec.size)]
            for g in range(spec.size)]
    label = f'{spec.label}*rescaled' if spec.label else ''
    return make_spec(spec.generators, rows, label), dict(zip(spec.names, scale))


def spec_hash(spec):
    """Empreinte SHA-256 de la forme JSON canonique de l'algèbre (sans libellé)."""
    from .serializers import FreeFieldSpecSerializer

    data = dict(FreeFieldSpecSerializer(spec).data)
    data.pop('label', None)
    return hashlib.sha256(render_json(data).encode('utf-8')).hexdigest()
