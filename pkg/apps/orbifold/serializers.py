"""
Sérialiseurs pour l'application orbifold.

Forme JSON d'un catalogue : {kind, n, entries: [{label, weight, recipe}]}.
"""

from collections import Counter

from rest_framework import serializers

from apps.core.serializers import RationalField, SchemaSerializer, format_fraction

from .models import CATALOG_KIND_CHOICES, STABLE
from .services import type_string


class CatalogEntrySerializer(serializers.Serializer):
    label = serializers.CharField()
    weight = RationalField()
    recipe = serializers.CharField(source='expression')
    free_limit_only = serializers.BooleanField()


class CatalogSerializer(SchemaSerializer):
    """Catalogue de générateurs et sa chaîne de type."""

    kind = serializers.ChoiceField(choices=CATALOG_KIND_CHOICES)
    n = serializers.SerializerMethodField()
    bound = serializers.SerializerMethodField()
    entries = CatalogEntrySerializer(many=True)
    type = serializers.SerializerMethodField()

    def get_n(self, obj):
        return STABLE if obj.n is None else obj.n

    def get_bound(self, obj):
        return None if obj.bound is None else format_fraction(obj.bound)

    def get_type(self, obj):
        return type_string(Counter(entry.weight for entry in obj.generic()))


class SpanFamilySerializer(serializers.Serializer):
    name = serializers.CharField()
    labels = serializers.ListField(child=serializers.CharField())
    rank = serializers.IntegerField()


class SpanRewriteSerializer(SchemaSerializer):
    """Familles réécrites et matrices de passage exactes."""

    i = serializers.IntegerField()
    j = serializers.IntegerField()
    m = serializers.IntegerField()
    weight = serializers.IntegerField()
    dimension = serializers.IntegerField()
    families = SpanFamilySerializer(many=True)
    matrices = serializers.SerializerMethodField()

    def get_matrices(self, obj):
        return [
            {
                'source': source,
                'target': target,
                'rows': [[format_fraction(value) for value in row] for row in matrix],
            }
            for (source, target), matrix in sorted(obj.matrices.items())
        ]
