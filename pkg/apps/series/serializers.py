"""Sérialiseurs pour l'application series."""

from rest_framework import serializers

from apps.core.serializers import RationalField, SchemaSerializer


class IntSeriesSerializer(SchemaSerializer):
    """
    Série tronquée : coefficients par poids entier, ou par demi-poids
    (``step`` = "1/2") dès qu'un poids demi-entier est occupé.
    """

    order = RationalField()
    step = serializers.SerializerMethodField()
    coefficients = serializers.SerializerMethodField()

    def get_step(self, obj):
        return '1' if obj.is_integral_graded() else '1/2'

    def get_coefficients(self, obj):
        if obj.is_integral_graded():
            return obj.weight_list()
        return list(obj.coefficients)
