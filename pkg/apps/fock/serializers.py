"""
Sérialiseurs pour l'application fock.

Forme JSON d'un élément :
{terms: [{coeff: "p/q", legs: [{gen: "W3", der: 2}, …]}]}, termes dans
l'ordre canonique des monômes.
"""

import json

from rest_framework import serializers

from apps.core.serializers import RationalField, SchemaSerializer, render_json
from apps.freefield.exceptions import UnknownGenerator
from apps.scalars.services import format_scalar

from .models import FieldElement, canonicalize


class ScalarField(RationalField):
    """Coefficient : rationnel "p/q" en entrée, forme textuelle exacte en sortie."""

    def to_representation(self, value):
        return format_scalar(value)


class LegSerializer(serializers.Serializer):
    gen = serializers.CharField(max_length=32)
    der = serializers.IntegerField(min_value=0)


class TermSerializer(serializers.Serializer):
    coeff = ScalarField()
    legs = LegSerializer(many=True)


class FieldElementSerializer(SchemaSerializer):
    """
    Sérialiseur des éléments de champ.

    La désérialisation exige l'algèbre dans le contexte
    (``context={'algebra': spec}``).
    """

    terms = TermSerializer(many=True)

    def to_representation(self, instance):
        if isinstance(instance, FieldElement):
            algebra = instance.algebra
            instance = {
                'terms': [
                    {
                        'coeff': coefficient,
                        'legs': [{'gen': algebra.generators[g].name, 'der': der}
                                 for g, der in monomial],
                    }
                    for monomial, coefficient in instance.sorted_terms()
                ]
            }
        return super().to_representation(instance)

    def validate_terms(self, value):
        """Vérifie que chaque générateur existe dans l'algèbre du contexte."""
        algebra = self.context.get('algebra')
        if algebra is None:
            raise serializers.ValidationError("Aucune algèbre fournie pour la désérialisation.")
        for term in value:
            for leg in term['legs']:
                if not algebra.has(leg['gen']):
                    raise serializers.ValidationError(f"Générateur inconnu : {leg['gen']}")
        return value

    def create(self, validated_data):
        algebra = self.context['algebra']
        terms = {}
        for term in validated_data['terms']:
            try:
                legs = [(algebra.index(leg['gen']), leg['der']) for leg in term['legs']]
            except UnknownGenerator as e:
                raise serializers.ValidationError({'terms': e.message})
            sign, monomial = canonicalize(legs, algebra.odd_flags)
            if not sign:
                continue
            terms[monomial] = terms.get(monomial, 0) + sign * term['coeff']
        return FieldElement(algebra, terms)


def serialize_element(x):
    """Document JSON d'un élément (ordre canonique des termes)."""
    return render_json(FieldElementSerializer(x).data)


def deserialize_element(text, algebra):
    """Relit un document produit par ``serialize_element``."""
    serializer = FieldElementSerializer(data=json.loads(text), context={'algebra': algebra})
    serializer.is_valid(raise_exception=True)
    return serializer.save()
