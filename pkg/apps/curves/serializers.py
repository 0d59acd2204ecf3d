"""Sérialiseurs pour l'application curves."""

from rest_framework import serializers

from apps.core.serializers import SchemaSerializer, format_fraction


class CurveFormulaSerializer(SchemaSerializer):
    """Courbe de troncature ; ``lambda`` est un mot réservé, d'où ``get_fields``."""

    n = serializers.IntegerField()
    m = serializers.IntegerField()
    threshold = serializers.IntegerField()
    c = serializers.CharField()

    def get_fields(self):
        fields = super().get_fields()
        fields['lambda'] = serializers.CharField(source='lam', allow_null=True)
        return fields


class QuotedScalarSerializer(serializers.Serializer):
    name = serializers.CharField()
    product = serializers.CharField()
    on = serializers.CharField()
    value = serializers.CharField()
    condition = serializers.CharField(allow_blank=True)
    verified = serializers.BooleanField()


class RaisingMapSerializer(SchemaSerializer):
    a = serializers.IntegerField()
    domain = serializers.ListField(child=serializers.CharField())
    codomain = serializers.ListField(child=serializers.CharField())
    matrix = serializers.SerializerMethodField()
    rank = serializers.IntegerField()
    injective = serializers.BooleanField()

    def get_matrix(self, obj):
        return [[format_fraction(value) for value in row] for row in obj.matrix]
