"""Tests de l'application core."""

import tempfile
from fractions import Fraction

from django.conf import settings
from django.test import SimpleTestCase, override_settings
from rest_framework import serializers

from .cache import BasisCache
from .exceptions import EXIT_DOMAIN, EXIT_PARSE, ConsistencyError, DomainError, SyntaxFailure
from .serializers import RationalField, SchemaSerializer, format_fraction, render_json


class PointSerializer(SchemaSerializer):
    x = RationalField()


class RationalFieldTests(SimpleTestCase):

    def test_format(self):
        self.assertEqual(format_fraction(Fraction(3, 1)), '3')
        self.assertEqual(format_fraction(Fraction(-6, 4)), '-3/2')
        self.assertEqual(format_fraction(0), '0')

    def test_parse(self):
        field = RationalField()
        self.assertEqual(field.to_internal_value(' -3/6 '), Fraction(-1, 2))
        self.assertEqual(field.to_internal_value('7'), 7)
        self.assertEqual(field.to_internal_value(5), 5)

    def test_rejects(self):
        field = RationalField()
        for value in ('1/0', '1.5', 'a/b', True, None):
            with self.assertRaises(serializers.ValidationError, msg=value):
                field.to_internal_value(value)

    def test_schema_version(self):
        self.assertEqual(render_json(PointSerializer({'x': Fraction(1, 3)}).data),
                         '{"schema":"1","x":"1/3"}')


class ExceptionTests(SimpleTestCase):

    def test_exit_codes(self):
        self.assertEqual(DomainError().exit_code, EXIT_DOMAIN)
        self.assertEqual(ConsistencyError().exit_code, EXIT_DOMAIN)
        self.assertEqual(SyntaxFailure().exit_code, EXIT_PARSE)

    def test_payload(self):
        error = DomainError('poids négatif', weight=-1)
        self.assertEqual(error.as_payload(), {
            'error': 'domain_error',
            'message': 'poids négatif',
            'details': {'weight': '-1'},
        })
        self.assertEqual(str(SyntaxFailure()), 'Erreur de syntaxe')


class BasisCacheTests(SimpleTestCase):

    def test_round_trip(self):
        with tempfile.TemporaryDirectory() as directory:
            cache = BasisCache(directory)
            self.assertIsNone(cache.get('basis', 'abc', 4, 'invariant'))
            cache.set((1, 2, 3), 'basis', 'abc', 4, 'invariant')
            self.assertEqual(BasisCache(directory).get('basis', 'abc', 4, 'invariant'), (1, 2, 3))
            self.assertIsNone(cache.get('basis', 'abd', 4, 'invariant'))
            cache.clear()
            self.assertIsNone(cache.get('basis', 'abc', 4, 'invariant'))

    def test_entry_limit(self):
        with tempfile.TemporaryDirectory() as directory:
            default = BasisCache(directory)
            self.assertEqual(default._backend._max_entries, settings.VAW_SETTINGS['CACHE_MAX_ENTRIES'])
            self.assertGreater(default.max_entries, 300)
            small = BasisCache(directory, max_entries=2)
            for weight in range(4):
                small.set((weight,), 'basis', 'abc', weight, 'full')
            self.assertEqual(small._backend._max_entries, 2)
            self.assertEqual(small.get('basis', 'abc', 3, 'full'), (3,))

    def test_from_settings(self):
        with override_settings(VAW_SETTINGS={'CACHE_DIR': ''}):
            self.assertIsNone(BasisCache.from_settings())
        with tempfile.TemporaryDirectory() as directory:
            self.assertEqual(BasisCache.from_settings(directory).directory, directory)
