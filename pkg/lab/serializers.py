from rest_framework import serializers

from dynamics.baselines import MAX_ITERATIONS, STEADY_STATE_TOLERANCE, STUBBORN_FRACTION
from dynamics.engine import CONSENSUS_TOLERANCE
from dynamics.models import MODELS
from experiments.samplers import DISTRIBUTIONS
from networks.serializers import SEED_MAX, GeneratorConfigSerializer
from validation.data import GAMES
from validation.hypotheses import Hypothesis


class SimulationConfigSerializer(serializers.Serializer):
    """
    One model run. The network comes from a file (``network_path``) or a
    generator config (``network``); initial opinions are given or sampled.
    """

    network_path = serializers.CharField(required=False)
    network = GeneratorConfigSerializer(required=False)
    model = serializers.ChoiceField(choices=MODELS, default="wm")
    opinions = serializers.ListField(child=serializers.FloatField(), min_length=1, required=False)
    distribution = serializers.ChoiceField(choices=sorted(DISTRIBUTIONS), default="uniform")
    seed = serializers.IntegerField(min_value=0, max_value=SEED_MAX, default=0)
    tol = serializers.FloatField(min_value=0.0, default=STEADY_STATE_TOLERANCE)
    consensus_tol = serializers.FloatField(min_value=0.0, default=CONSENSUS_TOLERANCE)
    max_iters = serializers.IntegerField(min_value=1, default=MAX_ITERATIONS)
    max_steps = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    stubborn_fraction = serializers.FloatField(min_value=0.0, max_value=1.0, default=STUBBORN_FRACTION)
    stubborn_probability = serializers.FloatField(min_value=0.0, max_value=1.0, required=False, allow_null=True, default=None)
    sample_params = serializers.BooleanField(default=True)

    def validate(self, attrs):
        if ("network_path" in attrs) == ("network" in attrs):
            raise serializers.ValidationError("give exactly one of network_path or network")
        return attrs


class ValidationConfigSerializer(serializers.Serializer):
    data = serializers.CharField(default="synthetic")
    kind = serializers.ChoiceField(choices=["median", "mean", "inertia"], default="median")
    game = serializers.ChoiceField(choices=GAMES, default="counting")
    experiments = serializers.IntegerField(min_value=1, default=4)
    seed = serializers.IntegerField(min_value=0, max_value=SEED_MAX, default=0)
    inertia = serializers.FloatField(min_value=0.0, max_value=1.0, default=0.4)
    hypotheses = serializers.ListField(
        child=serializers.ChoiceField(choices=[h.value for h in Hypothesis]),
        min_length=1,
        default=lambda: [h.value for h in Hypothesis],
    )
    transitions = serializers.ListField(
        child=serializers.ChoiceField(choices=[1, 2]), min_length=1, default=lambda: [1, 2]
    )

    @property
    def synthetic(self) -> bool:
        return self.validated_data["data"] == "synthetic"
