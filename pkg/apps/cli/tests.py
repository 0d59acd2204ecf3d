"""Tests de l'application cli."""

import json
from fractions import Fraction
from io import StringIO
from unittest import skipUnless
from unittest.mock import patch

from django.conf import settings
from django.core.management import call_command
from django.test import SimpleTestCase

from apps.core.exceptions import (
    EXIT_DOMAIN, EXIT_NEGATIVE, EXIT_OK, EXIT_PARSE, ConsistencyError,
)
from apps.fock.services import generator, normal_order
from apps.freefield.exceptions import UnknownGenerator
from apps.freefield.services import heisenberg_extension, wfree_sln
from apps.orbifold.models import UIndex
from apps.orbifold.services import U
from apps.relations.identities import list_identities

from .exceptions import NotACatalogRecipe, ParseError
from .models import Atom, Derivative, NormalOrder, Product, Scaled, Sum, UAtom
from .parser import catalog_recipe, evaluate, parse_expression, parse_expression_list
from .services import SUITE_PARAMS, parse_algebra, run, suite_items

SLOW = settings.VAW_SETTINGS['SLOW']


class ParserTests(SimpleTestCase):

    def test_product_node(self):
        node = parse_expression('prod(U(1,1,0,0), 3, U(1,1,0,0))')
        self.assertEqual(node, Product(UAtom(1, 1, 0, 0), 3, UAtom(1, 1, 0, 0)))

    def test_derivative_power(self):
        node = parse_expression('NO(D^2 W3, W5)')
        self.assertEqual(node, NormalOrder(Derivative(2, Atom('W3')), Atom('W5')))

    def test_whitespace_insensitive(self):
        self.assertEqual(parse_expression('prod( W3 ,-1,W3 )'), parse_expression('prod(W3, -1, W3)'))

    def test_linear_combination(self):
        node = parse_expression('1/2 D U(1,1,0,0) - W4')
        self.assertEqual(node, Sum((
            Scaled(Fraction(1, 2), Derivative(1, UAtom(1, 1, 0, 0))),
            Scaled(Fraction(-1), Atom('W4')),
        )))
        self.assertEqual(str(node), '1/2 D U(1,1,0,0) - W4')

    def test_canonical_text_parses_back(self):
        for text in ('NO(D^2 W3, W5)', 'prod(L, 3, NO(W3, W3))', '2 W4 + 3', 'D (W3 + W5)'):
            node = parse_expression(text)
            self.assertEqual(parse_expression(str(node)), node)

    def test_missing_product_index(self):
        with self.assertRaises(ParseError) as context:
            parse_expression('prod(W3, )')
        self.assertEqual(context.exception.offset, 9)

    def test_error_offsets(self):
        for text, offset in (('NO(W3 W5)', 6), ('W3 #', 3), ('foo', 0), ('1/0 W3', 2),
                             ('U(1,1,0)', 7), ('W3 W4', 3), ('', 0)):
            with self.assertRaises(ParseError, msg=text) as context:
                parse_expression(text)
            self.assertEqual(context.exception.offset, offset, text)

    def test_expression_list(self):
        nodes = parse_expression_list('L, W4, U(1,2,0,1)')
        self.assertEqual(nodes, [Atom('L'), Atom('W4'), UAtom(1, 2, 0, 1)])


class EvaluateTests(SimpleTestCase):

    def setUp(self):
        self.algebra = wfree_sln(5)

    def test_normal_order_matches_u_field(self):
        element = evaluate(parse_expression('NO(D^2 W3, W5)'), self.algebra)
        self.assertEqual(element, U(1, 2, 2, 0, self.algebra))

    def test_reversed_flavors(self):
        element = evaluate(parse_expression('U(2,1,0,1)'), self.algebra)
        expected = normal_order(generator(self.algebra, 'W5'), generator(self.algebra, 'W3', 1))
        self.assertEqual(element, expected)

    def test_w2_is_virasoro(self):
        self.assertEqual(evaluate(parse_expression('W2'), self.algebra),
                         generator(self.algebra, 'L'))

    def test_central_product(self):
        element = evaluate(parse_expression('prod(W3, 5, W3)'), self.algebra)
        self.assertEqual(element.weights2(), {0})

    def test_linear_combination(self):
        element = evaluate(parse_expression('2 W4 - W4 + 3'), self.algebra)
        self.assertEqual(element.weights2(), {0, 8})

    def test_nu(self):
        target, _embedding, nu = heisenberg_extension(2)
        self.assertEqual(evaluate(parse_expression('nu'), parse_algebra('heisenberg:2')), nu)
        self.assertEqual(target, parse_algebra('heisenberg:2'))

    def test_unresolvable_flavor(self):
        with self.assertRaises(UnknownGenerator):
            evaluate(parse_expression('W7'), self.algebra)
        with self.assertRaises(UnknownGenerator):
            evaluate(parse_expression('nu'), self.algebra)

    def test_catalog_recipes(self):
        recipes = [catalog_recipe(node) for node in parse_expression_list('L, W2, U(1,2,0,1)')]
        self.assertEqual(recipes, ['L', 'L', UIndex(1, 2, 0, 1)])
        for text in ('U(2,1,0,0)', 'D W3', 'nu'):
            with self.assertRaises(NotACatalogRecipe):
                catalog_recipe(parse_expression(text))


class RunTests(SimpleTestCase):

    def test_verify(self):
        result = run(['verify', '--identity', 'wt14', '--algebra', 'wfree-sln:4'])
        self.assertEqual(result.code, EXIT_OK)
        self.assertTrue(result.payload['holds'])
        result = run(['verify', '--identity', 'odd7', '--param', 'i=2'])
        self.assertEqual(result.code, EXIT_OK)

    def test_verify_errors(self):
        self.assertEqual(run(['verify', '--identity', 'odd7']).code, EXIT_DOMAIN)
        self.assertEqual(run(['verify', '--identity', 'nope']).code, EXIT_DOMAIN)
        result = run(['verify', '--identity', 'odd7', '--param', 'i'])
        self.assertEqual(result.payload['error'], 'usage')

    def test_hilbert(self):
        result = run(['hilbert', '--algebra', 'wfree-sln:4', '--orbifold', '--upto', '6'])
        self.assertEqual(result.code, EXIT_OK)
        self.assertEqual(result.payload['coefficients'], [1, 0, 1, 1, 3, 3, 7])
        self.assertEqual(result.payload['sector'], 'invariant')
        self.assertEqual(result.payload['schema'], '1')

    def test_ope(self):
        result = run(['ope', '--algebra', 'wfree-sln:5', '--expr', 'prod(U(1,1,0,0), 3, U(1,1,0,0))'])
        self.assertEqual(result.code, EXIT_OK)
        self.assertEqual(result.payload['expression'], 'prod(U(1,1,0,0), 3, U(1,1,0,0))')
        self.assertTrue(result.payload['terms'])
        result = run(['ope', '--orbifold', '--expr', 'W3'])
        self.assertEqual(result.payload['terms'], [])

    def test_identical_inputs_give_identical_payloads(self):
        argv = ['ope', '--expr', 'NO(D W3, W3) + 1/3 D^2 L']
        self.assertEqual(run(argv).payload, run(argv).payload)

    def test_parse_error(self):
        result = run(['ope', '--expr', 'prod(W3, )'])
        self.assertEqual(result.code, EXIT_PARSE)
        self.assertEqual(result.payload['details']['offset'], '9')

    def test_unknown_generator(self):
        result = run(['ope', '--algebra', 'wfree-sln:4', '--expr', 'W9'])
        self.assertEqual(result.code, EXIT_DOMAIN)
        self.assertEqual(result.payload['error'], 'unknown_generator')

    def test_usage_errors(self):
        for argv in (['hilbert', '--frobnicate'], [], ['dance'], ['minimal'],
                     ['ope', '--expr', 'W3', '--algebra', 'sl4']):
            result = run(argv)
            self.assertEqual(result.code, EXIT_DOMAIN, argv)
        self.assertEqual(run(['hilbert', '--frobnicate']).payload['error'], 'usage')

    def test_decouple(self):
        result = run(['decouple', '--orbifold', '--target', 'U(1,1,0,8)', '--weight', '14'])
        self.assertEqual(result.code, EXIT_OK)
        (report,) = result.payload['reports']
        self.assertEqual(report['status'], 'solved')
        self.assertEqual(report['residual'], [])

    def test_decouple_infeasible(self):
        result = run(['decouple', '--target', 'U(1,1,0,8)', '--target', 'U(1,1,0,0)'])
        self.assertEqual(result.code, EXIT_NEGATIVE)
        self.assertEqual([report['status'] for report in result.payload['reports']],
                         ['solved', 'infeasible'])

    def test_decouple_custom_generators(self):
        result = run(['decouple', '--target', 'D^2 U(1,1,0,0)', '--gens', 'U(1,1,0,0)'])
        self.assertEqual(result.code, EXIT_OK)
        self.assertEqual(result.payload['reports'][0]['combination'][0]['word'], 'D^2 U(1,1,0,0)')

    def test_decouple_domain_errors(self):
        cases = (
            (['decouple', '--orbifold', '--target', 'W3'], 'sector_violation'),
            (['decouple', '--target', 'U(1,1,0,8)', '--weight', '12'], 'weight_mismatch'),
            (['decouple', '--algebra', 'odd-flavors:2', '--target', 'W3'], 'unknown_algebra'),
            (['decouple', '--target', 'W3', '--gens', 'D W3'], 'not_a_catalog_recipe'),
        )
        for argv, error in cases:
            result = run(argv)
            self.assertEqual(result.code, EXIT_DOMAIN, argv)
            self.assertEqual(result.payload['error'], error)

    @skipUnless(SLOW, 'VAW_SLOW désactivé')
    def test_sl7_free_limit_survivor(self):
        result = run(['decouple', '--algebra', 'wfree-sln:7', '--orbifold', '--gens', 'long',
                      '--bound', '15', '--weight', '16', '--target', 'U(1,3,0,6)'])
        self.assertEqual(result.code, EXIT_NEGATIVE)
        certificate = result.payload['reports'][0]['certificate']
        self.assertEqual(certificate['rank_with_target'], certificate['rank_span'] + 1)

    def test_catalog(self):
        result = run(['catalog', '--algebra', 'wfree-sln:4'])
        self.assertEqual(result.payload['type'], 'W(2,4,6,8,10,12)')
        result = run(['catalog', '--n', 'stable', '--bound', '10'])
        self.assertEqual(result.payload['type'], 'W(2,4,6^2,8^3,9,10^5)')
        result = run(['catalog', '--n', '1', '--m', '1', '--bound', '12'])
        self.assertEqual(result.payload['n'], 5)
        self.assertEqual(run(['catalog', '--n', '6', '--kind', 'minimal-sl7-free']).code, EXIT_DOMAIN)
        result = run(['catalog', '--n', '5', '--kind', 'weak-free'])
        self.assertEqual(result.code, EXIT_OK)
        self.assertEqual(result.payload['type'], 'W(2,4,6,8)')

    def test_decouple_with_catalog_kind(self):
        result = run(['decouple', '--algebra', 'wfree-sln:4', '--orbifold', '--gens', 'weak-free',
                      '--target', 'D^2 U(1,1,0,0)'])
        self.assertEqual(result.code, EXIT_OK)
        self.assertEqual(result.payload['generators'], 'weak-free:4')

    def test_minimal(self):
        result = run(['minimal', '--orbifold', '--bound', '8'])
        self.assertEqual(result.code, EXIT_OK)
        self.assertEqual(result.payload['type'], 'W(2,4,6,8)')

    def test_weak_closure(self):
        result = run(['weak-closure', '--gens', 'L, W4, U(1,1,0,0)', '--bound', '8'])
        self.assertEqual(result.code, EXIT_OK)
        self.assertTrue(result.payload['saturated'])
        result = run(['weak-closure', '--gens', 'L, W4', '--bound', '6'])
        self.assertEqual(result.code, EXIT_NEGATIVE)

    def test_curves(self):
        result = run(['curves', '--n', '2', '--m', '0', '--psi', '2'])
        self.assertEqual(result.code, EXIT_OK)
        self.assertEqual(result.payload['values'], {'c': '-2', 'lambda': None})
        self.assertIsNone(result.payload['lambda'])
        result = run(['curves', '--n', '3', '--m', '0', '--psi', '2', '--locus', 'lambda_zero'])
        self.assertEqual(result.payload['values']['locus_value'], '-2/7')
        self.assertTrue(result.payload['locus'])

    def test_curves_errors(self):
        self.assertEqual(run(['curves', '--n', '2', '--m', '0', '--psi', 'deux']).code, EXIT_PARSE)
        self.assertEqual(run(['curves', '--n', '2', '--m', '0', '--locus', 'x']).code, EXIT_PARSE)
        self.assertEqual(run(['curves', '--n', '1', '--m', '0']).code, EXIT_DOMAIN)
        self.assertEqual(run(['curves', '--n', '2', '--m', '0', '--psi', '0']).code, EXIT_DOMAIN)


class SuiteTests(SimpleTestCase):

    def test_every_identity_is_listed(self):
        names = {name for name, _check in suite_items()}
        for entry in list_identities():
            self.assertIn(f"identity:{entry['name']}", names)
            if entry['params']:
                self.assertEqual(set(SUITE_PARAMS[entry['name']]), set(entry['params']))

    def test_slow_items(self):
        self.assertGreater(len(suite_items(slow=True)), len(suite_items()))

    @patch('apps.cli.services.suite_items')
    def test_failures_are_reported(self, items):
        def broken():
            raise ConsistencyError('rang incohérent')

        items.return_value = [('ok', lambda: True), ('ko', lambda: False), ('broken', broken)]
        result = run(['suite'])
        self.assertEqual(result.code, EXIT_NEGATIVE)
        self.assertEqual(list(result.payload), ['schema', 'results', 'passed'])
        self.assertEqual([(item['name'], item['passed']) for item in result.payload['results']],
                         [('ok', True), ('ko', False), ('broken', False)])
        self.assertFalse(result.payload['passed'])

    @skipUnless(SLOW, 'VAW_SLOW désactivé')
    def test_suite_passes(self):
        result = run(['suite', '--slow'])
        self.assertEqual(result.code, EXIT_OK, result.payload)


class CommandTests(SimpleTestCase):

    def test_writes_json(self):
        out = StringIO()
        call_command('vaw', 'hilbert', '--orbifold', '--upto', '6', stdout=out)
        self.assertEqual(json.loads(out.getvalue())['coefficients'], [1, 0, 1, 1, 3, 3, 7])

    def test_exit_code(self):
        out = StringIO()
        with self.assertRaises(SystemExit) as context:
            call_command('vaw', 'decouple', '--target', 'U(1,1,0,0)', stdout=out)
        self.assertEqual(context.exception.code, EXIT_NEGATIVE)
        self.assertEqual(json.loads(out.getvalue())['reports'][0]['status'], 'infeasible')
