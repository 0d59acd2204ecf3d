"""
Services pour l'application cli.

``run(argv)`` analyse la ligne de commande, délègue à l'application
concernée et retourne un ``CommandResult`` : code de sortie (0 succès ou
vrai, 2 impossible ou faux, 3 erreur de syntaxe, 4 erreur de domaine) et
document JSON versionné. Aucune sortie n'est écrite ici.
"""

import logging
import re
import time

from django.conf import settings
from django.core.management.base import CommandError, CommandParser
from rest_framework import serializers

from apps.core.cache import BasisCache
from apps.core.exceptions import EXIT_NEGATIVE, EXIT_OK, EXIT_PARSE, VawError
from apps.core.serializers import format_fraction
from apps.curves.serializers import CurveFormulaSerializer
from apps.curves.services import (
    evaluate_curve, locus_eval, truncation_curve, truncation_threshold, w4_determinant,
)
from apps.fock.services import generator
from apps.freefield.services import heisenberg_algebra, odd_flavor_algebra, wfree_sln
from apps.orbifold.models import (
    FULL, INVARIANT, LONG, SECTOR_CHOICES, STABLE, STRONG_FREE, UIndex, check_sector,
)
from apps.orbifold.serializers import CatalogSerializer
from apps.orbifold.services import (
    CATALOG_KINDS, U, coset_catalog, custom_catalog, generator_catalog, project_sector,
)
from apps.relations.identities import list_identities, verify_identity
from apps.relations.serializers import (
    IdentityReportSerializer, TypeProfileSerializer, WeakClosureSerializer,
)
from apps.relations.services import decouple, minimal_generators, weak_closure
from apps.scalars.services import parse_rational
from apps.series.services import character

from .exceptions import SectorViolation, UnknownAlgebra, UsageError, WeightMismatch
from .models import CommandResult, SuiteItem
from .parser import catalog_recipe, evaluate, parse_expression, parse_expression_list
from .serializers import (
    CurvesRequestSerializer, DecoupleBatchSerializer, ErrorSerializer, HilbertSerializer,
    OpeResultSerializer, SuiteSerializer,
)

logger = logging.getLogger(__name__)

ALGEBRA_PATTERN = re.compile(r'(wfree-sln|odd-flavors|heisenberg):(\d+)$')
ALGEBRA_BUILDERS = {
    'wfree-sln': wfree_sln,
    'odd-flavors': odd_flavor_algebra,
    'heisenberg': heisenberg_algebra,
}
DEFAULT_ALGEBRA = 'wfree-sln:4'

# Paramètres des identités paramétrées dans la suite de régression
SUITE_PARAMS = {
    'raise33_3': {'a': 2},
    'raise33_1': {'m': 2},
    'raise_cross_4': {'i': 2, 'a': 1},
    'square_5': {'i': 2},
    'cross_5': {'i': 2, 'j': 3, 'a': 0},
    'odd7': {'i': 2},
    'odd8': {'i': 3},
    'odd_r': {'i': 2, 'r': 3},
    'cross_square': {'i': 1, 'j': 2, 'r': 0},
    'lastone': {'i': 2, 'j': 3, 'r': 1},
    'nu_raising': {'i': 2, 'a': 0},
}


def parse_algebra(text):
    """Algèbre désignée par ``wfree-sln:N``, ``odd-flavors:D`` ou ``heisenberg:D``."""
    match = ALGEBRA_PATTERN.match(text or '')
    if not match:
        raise UnknownAlgebra(f'Algèbre inconnue : {text}', algebra=text)
    family, size = match.groups()
    return ALGEBRA_BUILDERS[family](int(size))


def _wfree_rank(text):
    match = ALGEBRA_PATTERN.match(text or '')
    if not match or match.group(1) != 'wfree-sln':
        raise UnknownAlgebra(f'Les catalogues exigent une algèbre wfree-sln:N, reçu {text}',
                             algebra=text)
    return int(match.group(2))


def _sector(options):
    if options.sector:
        return check_sector(options.sector)
    return INVARIANT if options.orbifold else FULL


def _catalog(text, n, bound=None):
    """Catalogue nommé (``strong-free``…) ou liste d'atomes séparés par des virgules."""
    if text in CATALOG_KINDS:
        return generator_catalog(n, text, bound)
    recipes = [catalog_recipe(node) for node in parse_expression_list(text)]
    return custom_catalog(n, recipes)


def _weight_option(text):
    return None if text is None else parse_rational(text)


def _ope(options):
    algebra = parse_algebra(options.algebra)
    sector = _sector(options)
    node = parse_expression(options.expr)
    element = project_sector(evaluate(node, algebra), sector)
    data = OpeResultSerializer({
        'algebra': str(algebra),
        'expression': str(node),
        'sector': sector,
        'element': element,
    }).data
    return CommandResult(EXIT_OK, data)


def _params(pairs):
    params = {}
    for pair in pairs or ():
        key, separator, value = pair.partition('=')
        if not separator or not key:
            raise UsageError(f'Paramètre attendu sous la forme k=v, reçu {pair}', param=pair)
        params[key.strip()] = value.strip()
    return params


def _verify(options):
    report = verify_identity(options.identity, _params(options.param))
    code = EXIT_OK if report.holds else EXIT_NEGATIVE
    return CommandResult(code, IdentityReportSerializer(report).data)


def _check_target(target, options, sector):
    if sector != FULL and project_sector(target, sector) != target:
        raise SectorViolation(f'La cible sort du secteur {sector}', sector=sector)
    weight = _weight_option(options.weight)
    if weight is not None and target.weights2() != {int(2 * weight)}:
        raise WeightMismatch(f'La cible n\'est pas homogène de poids {options.weight}',
                             weight=options.weight)


def _decouple(options):
    algebra = parse_algebra(options.algebra)
    gens = _catalog(options.gens, _wfree_rank(options.algebra), options.bound)
    sector = _sector(options)
    reports = []
    for text in options.target:
        target = evaluate(parse_expression(text), algebra)
        _check_target(target, options, sector)
        reports.append(decouple(target, gens, options.max_degree))
    code = EXIT_OK if all(report.solved for report in reports) else EXIT_NEGATIVE
    data = DecoupleBatchSerializer({
        'algebra': str(algebra),
        'generators': gens.label or gens.kind,
        'reports': reports,
    }).data
    return CommandResult(code, data)


def _catalog_command(options):
    if options.n == STABLE:
        n = STABLE
    elif options.n is not None:
        n = int(options.n)
    else:
        n = _wfree_rank(options.algebra)
    if options.m is not None:
        catalog = coset_catalog(n, options.m, options.bound)
    else:
        catalog = generator_catalog(n, options.kind, options.bound)
    return CommandResult(EXIT_OK, CatalogSerializer(catalog).data)


def _hilbert(options):
    algebra = parse_algebra(options.algebra)
    sector = _sector(options)
    upto = _weight_option(options.upto)
    series = character(algebra, sector, upto)
    data = HilbertSerializer(series, context={'algebra': str(algebra), 'sector': sector}).data
    return CommandResult(EXIT_OK, data)


def _minimal(options):
    algebra = parse_algebra(options.algebra)
    cache = BasisCache.from_settings(options.cache)
    profile = minimal_generators(algebra, _sector(options), options.bound,
                                 factorize=not options.no_factorize, cache=cache)
    return CommandResult(EXIT_OK, TypeProfileSerializer(profile).data)


def _weak_closure(options):
    algebra = parse_algebra(options.algebra)
    gens = _catalog(options.gens, _wfree_rank(options.algebra))
    report = weak_closure(gens, options.bound, options.depth, algebra)
    code = EXIT_OK if report.saturated else EXIT_NEGATIVE
    return CommandResult(code, WeakClosureSerializer(report).data)


def _curves(options):
    request = CurvesRequestSerializer(data={
        'n': options.n, 'm': options.m, 'psi': options.psi, 'locus': options.locus,
    })
    request.is_valid(raise_exception=True)
    params = request.validated_data
    n, m, psi, locus = params['n'], params['m'], params.get('psi'), params.get('locus')
    data = dict(CurveFormulaSerializer(truncation_curve(n, m)).data)
    data['locus'] = str(locus_eval(locus, n, m)) if locus else None
    data['values'] = None
    if psi is not None:
        values = evaluate_curve(n, m, psi, locus)
        data['values'] = {key: None if value is None else format_fraction(value)
                          for key, value in values.items()}
    return CommandResult(EXIT_OK, data)


def _hilbert_sl4():
    return character(wfree_sln(4), INVARIANT, 6).weight_list() == [1, 0, 1, 1, 3, 3, 7]


def _decouple_sl4():
    algebra = wfree_sln(4)
    return decouple(U(1, 1, 0, 8, algebra), generator_catalog(4, STRONG_FREE)).solved


def _minimal_sl4():
    return str(minimal_generators(wfree_sln(4), INVARIANT, 12)) == 'W(2,4,6,8,10,12)'


def _closure_sl4():
    return weak_closure(custom_catalog(4, ['L', 'W4', UIndex(1, 1)]), 8).saturated


def _curves_data():
    return truncation_threshold(1, 1) == 5 and w4_determinant().matches


def _minimal_sl5():
    profile = minimal_generators(wfree_sln(5), INVARIANT, 14)
    return str(profile) == 'W(2,4,6,8^2,9,10^3,11,12^3,13,14^2)'


def _decouple_sl7():
    algebra = wfree_sln(7)
    gens = generator_catalog(7, LONG, bound=15)
    solved = [decouple(U(*index, algebra), gens).solved
              for index in ((1, 1, 0, 10), (1, 2, 0, 8), (2, 2, 0, 6),
                            (1, 3, 0, 6), (2, 3, 0, 4), (3, 3, 0, 2))]
    return solved == [True, True, True, False, False, False]


def _sector_sl4():
    # le générateur W3 est anti-invariant : il ne peut pas être découplé
    algebra = wfree_sln(4)
    report = decouple(generator(algebra, 'W3', 3), generator_catalog(4, STRONG_FREE))
    return not report.solved


ACCEPTANCE = (
    ('hilbert:wfree-sln:4', _hilbert_sl4),
    ('decouple:wt14', _decouple_sl4),
    ('decouple:sector', _sector_sl4),
    ('minimal:wfree-sln:4', _minimal_sl4),
    ('weak-closure:wfree-sln:4', _closure_sl4),
    ('curves:w4-determinant', _curves_data),
)

SLOW_ACCEPTANCE = (
    ('minimal:wfree-sln:5', _minimal_sl5),
    ('decouple:wfree-sln:7', _decouple_sl7),
)


def _identity_check(name, params):
    return lambda: verify_identity(name, params).holds


def suite_items(slow=False):
    """(nom, vérification) pour chaque élément de la suite de régression."""
    items = []
    for entry in list_identities():
        name = entry['name']
        items.append((f'identity:{name}', _identity_check(name, SUITE_PARAMS.get(name, {}))))
    items.extend(ACCEPTANCE)
    if slow:
        items.extend(SLOW_ACCEPTANCE)
    return items


def run_suite(slow=False):
    results = []
    for name, check in suite_items(slow):
        start = time.perf_counter()
        try:
            passed = bool(check())
        except Exception as e:
            logger.error(f'Suite item {name} raised {type(e).__name__}: {e}')
            passed = False
        seconds = round(time.perf_counter() - start, 3)
        logger.info(f'Suite item {name}: {"passed" if passed else "FAILED"} in {seconds}s')
        results.append(SuiteItem(name, passed, seconds))
    return results


def _suite(options):
    results = run_suite(options.slow or settings.VAW_SETTINGS['SLOW'])
    passed = all(item.passed for item in results)
    data = SuiteSerializer({'results': results, 'passed': passed}).data
    return CommandResult(EXIT_OK if passed else EXIT_NEGATIVE, data)


HANDLERS = {
    'ope': _ope,
    'verify': _verify,
    'decouple': _decouple,
    'catalog': _catalog_command,
    'hilbert': _hilbert,
    'minimal': _minimal,
    'weak-closure': _weak_closure,
    'curves': _curves,
    'suite': _suite,
}


def build_parser():
    """Analyseur des sous-commandes ; ses erreurs lèvent ``CommandError``."""
    common = CommandParser(add_help=False, called_from_command_line=False)
    common.add_argument('--algebra', default=DEFAULT_ALGEBRA,
                        help='wfree-sln:N, odd-flavors:D ou heisenberg:D')
    common.add_argument('--orbifold', action='store_true', help='secteur invariant')
    common.add_argument('--sector', choices=[value for value, _label in SECTOR_CHOICES])
    common.add_argument('--cache', default=None, help='répertoire du cache des bases')

    parser = CommandParser(prog='vaw', called_from_command_line=False)
    commands = parser.add_subparsers(dest='command', required=True)

    ope = commands.add_parser('ope', parents=[common])
    ope.add_argument('--expr', required=True)

    verify = commands.add_parser('verify', parents=[common])
    verify.add_argument('--identity', required=True)
    verify.add_argument('--param', action='append', metavar='K=V')

    decouple_parser = commands.add_parser('decouple', parents=[common])
    decouple_parser.add_argument('--target', action='append', required=True)
    decouple_parser.add_argument('--gens', default=STRONG_FREE)
    decouple_parser.add_argument('--weight', default=None)
    decouple_parser.add_argument('--bound', type=int, default=None)
    decouple_parser.add_argument('--max-degree', dest='max_degree', type=int, default=None)

    catalog = commands.add_parser('catalog', parents=[common])
    catalog.add_argument('--n', default=None)
    catalog.add_argument('--m', type=int, default=None)
    catalog.add_argument('--kind', default=STRONG_FREE)
    catalog.add_argument('--bound', type=int, default=None)

    hilbert = commands.add_parser('hilbert', parents=[common])
    hilbert.add_argument('--upto', default=None)

    minimal = commands.add_parser('minimal', parents=[common])
    minimal.add_argument('--bound', type=int, required=True)
    minimal.add_argument('--no-factorize', dest='no_factorize', action='store_true')

    closure = commands.add_parser('weak-closure', parents=[common])
    closure.add_argument('--gens', default=STRONG_FREE)
    closure.add_argument('--bound', type=int, required=True)
    closure.add_argument('--depth', type=int, default=None)

    curves = commands.add_parser('curves', parents=[common])
    curves.add_argument('--n', type=int, required=True)
    curves.add_argument('--m', type=int, required=True)
    curves.add_argument('--psi', default=None)
    curves.add_argument('--locus', default=None)

    suite = commands.add_parser('suite', parents=[common])
    suite.add_argument('--slow', action='store_true')
    return parser


def _failure(error):
    return CommandResult(error.exit_code, ErrorSerializer(error.as_payload()).data)


def run(argv):
    """Exécute une invocation ``vaw`` et retourne son ``CommandResult``."""
    parser = build_parser()
    try:
        options = parser.parse_args(list(argv))
    except CommandError as e:
        message = str(e).removeprefix('Error: ')
        logger.error(f'Usage error: {message}')
        return _failure(UsageError(message, usage=parser.format_usage().strip()))

    logger.info(f'vaw {options.command}')
    try:
        return HANDLERS[options.command](options)
    except VawError as e:
        logger.error(f'vaw {options.command} failed: {e.code}: {e.message}')
        return _failure(e)
    except serializers.ValidationError as e:
        logger.error(f'vaw {options.command} rejected its input: {e.detail}')
        data = ErrorSerializer({
            'error': 'validation_error',
            'message': 'Entrée invalide',
            'details': e.detail if isinstance(e.detail, dict) else {'input': e.detail},
        }).data
        return CommandResult(EXIT_PARSE, data)
