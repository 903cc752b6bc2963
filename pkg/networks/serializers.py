from rest_framework import serializers

from .exceptions import BadParameters, NetworkError
from .formats import content_hash, from_payload
from .generators import FAMILY_ALIASES, GeneratorConfig
from .models import Network

SEED_MAX = 2**64 - 1


class GeneratorConfigSerializer(serializers.Serializer):
    family = serializers.ChoiceField(choices=sorted(FAMILY_ALIASES))
    n = serializers.IntegerField(min_value=2)
    m = serializers.IntegerField(required=False, allow_null=True, min_value=1)
    d = serializers.IntegerField(required=False, allow_null=True, min_value=2)
    beta = serializers.FloatField(default=0.0, min_value=0.0, max_value=1.0)
    self_loops = serializers.BooleanField(default=True)
    seed = serializers.IntegerField(default=0, min_value=0, max_value=SEED_MAX)
    connected = serializers.BooleanField(default=True)
    edges = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(min_value=0), min_length=2, max_length=2),
        required=False,
        default=list,
    )

    def validate(self, attrs):
        try:
            self.build(attrs)
        except BadParameters as exc:
            raise serializers.ValidationError(str(exc)) from exc
        return attrs

    @staticmethod
    def build(attrs) -> GeneratorConfig:
        attrs = dict(attrs)
        attrs["edges"] = tuple(tuple(edge) for edge in attrs.get("edges", ()))
        return GeneratorConfig(**attrs)

    def to_config(self) -> GeneratorConfig:
        return self.build(self.validated_data)


class NetworkSerializer(serializers.ModelSerializer):
    family_display = serializers.CharField(source="get_family_display", read_only=True)

    class Meta:
        model = Network
        fields = [
            "id",
            "name",
            "family",
            "family_display",
            "n",
            "seed",
            "parameters",
            "content_hash",
            "payload",
            "notes",
            "created_at",
            "updated_at",
        ]
        read_only_fields = ["id", "family", "n", "seed", "parameters", "content_hash", "created_at", "updated_at"]

    def validate_payload(self, value):
        try:
            self._network = from_payload(value)
        except NetworkError as exc:
            raise serializers.ValidationError(str(exc)) from exc
        return value

    def create(self, validated_data):
        network = self._network
        validated_data.update(n=network.n, content_hash=content_hash(network), family="imported")
        return super().create(validated_data)


class NetworkSummarySerializer(serializers.ModelSerializer):
    class Meta:
        model = Network
        fields = ["id", "name", "family", "n", "seed", "content_hash", "created_at"]


class OpinionsSerializer(serializers.Serializer):
    opinions = serializers.ListField(child=serializers.FloatField(), min_length=1)
