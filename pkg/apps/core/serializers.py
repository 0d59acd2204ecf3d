"""
Sérialiseurs communs du projet vawbench.

Les scalaires exacts circulent en JSON sous forme textuelle ("p/q") et chaque
document émis porte ``"schema": "1"``.
"""

from fractions import Fraction

from django.conf import settings
from rest_framework import serializers
from rest_framework.renderers import JSONRenderer


def format_fraction(value):
    """Forme textuelle "p/q" (ou "p" si entier) d'un rationnel."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


class RationalField(serializers.Field):
    """Champ DRF pour un rationnel exact écrit "p/q"."""

    default_error_messages = {
        'invalid': 'Rationnel invalide : "{value}" (forme attendue "p/q").',
        'zero_denominator': 'Dénominateur nul dans "{value}".',
    }

    def to_representation(self, value):
        return format_fraction(value)

    def to_internal_value(self, data):
        if isinstance(data, int) and not isinstance(data, bool):
            return Fraction(data)
        if not isinstance(data, str):
            self.fail('invalid', value=data)
        text = data.strip()
        numerator, _, denominator = text.partition('/')
        try:
            num = int(numerator)
            den = int(denominator) if denominator else 1
        except ValueError:
            self.fail('invalid', value=data)
        if den == 0:
            self.fail('zero_denominator', value=data)
        return Fraction(num, den)


class SchemaSerializer(serializers.Serializer):
    """Base des documents JSON versionnés."""

    schema = serializers.SerializerMethodField()

    def get_schema(self, obj):
        return settings.VAW_SETTINGS['SCHEMA_VERSION']


def render_json(data):
    """Rend un document en JSON compact et déterministe."""
    return JSONRenderer().render(data).decode('utf-8')
