from dataclasses import replace

from rest_framework import serializers

from dynamics.models import MODELS
from networks.exceptions import BadParameters
from networks.serializers import SEED_MAX, GeneratorConfigSerializer

from .exceptions import ExperimentError
from .models import ExperimentRun, TrialRecord
from .presets import PRESETS, SCALES, preset
from .samplers import DISTRIBUTIONS
from .studies import (
    ConsensusStudy,
    DistributionStudy,
    ExtremenessStudy,
    GridCell,
    ManipulationStudy,
    PerturbationStudy,
)

STUDIES = {
    "consensus": ConsensusStudy,
    "extremeness": ExtremenessStudy,
    "distribution": DistributionStudy,
    "perturbation": PerturbationStudy,
    "manipulation": ManipulationStudy,
}


class TrialRecordSerializer(serializers.ModelSerializer):
    class Meta:
        model = TrialRecord
        fields = [
            "id",
            "run",
            "trial_index",
            "seed",
            "model",
            "converged",
            "consensus",
            "steps",
            "stop_reason",
            "final_opinions",
            "categories",
            "in_degree",
            "extremist_focus",
            "created_at",
        ]
        read_only_fields = fields


class ExperimentRunSerializer(serializers.ModelSerializer):
    study_display = serializers.CharField(source="get_study_display", read_only=True)
    trial_count = serializers.IntegerField(source="trials.count", read_only=True)

    class Meta:
        model = ExperimentRun
        fields = [
            "id",
            "study",
            "study_display",
            "preset",
            "scale",
            "model_ids",
            "master_seed",
            "config",
            "status",
            "aggregate",
            "manifest",
            "failures",
            "trial_count",
            "created_at",
            "updated_at",
        ]
        read_only_fields = fields


class GridCellSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=2)
    d = serializers.IntegerField(min_value=2)
    beta = serializers.FloatField(min_value=0.0, max_value=1.0)


class ExperimentConfigSerializer(serializers.Serializer):
    """
    One experiment as a JSON document: either a ``preset`` (with ``scale``) whose
    fields the remaining keys override, or an explicit ``study``.
    """

    preset = serializers.ChoiceField(choices=sorted(PRESETS), required=False)
    scale = serializers.ChoiceField(choices=SCALES, default="desk")
    study = serializers.ChoiceField(choices=sorted(STUDIES), required=False)
    master_seed = serializers.IntegerField(min_value=0, max_value=SEED_MAX, required=False)
    trials = serializers.IntegerField(min_value=0, required=False)
    models = serializers.ListField(child=serializers.ChoiceField(choices=MODELS), min_length=1, required=False)
    network = GeneratorConfigSerializer(required=False)
    cells = GridCellSerializer(many=True, required=False)
    distribution = serializers.ChoiceField(choices=sorted(DISTRIBUTIONS), required=False)
    distributions = serializers.ListField(
        child=serializers.ChoiceField(choices=sorted(DISTRIBUTIONS)), min_length=1, required=False
    )
    bins = serializers.IntegerField(min_value=1, required=False)
    tol = serializers.FloatField(min_value=0.0, required=False)
    consensus_tol = serializers.FloatField(min_value=0.0, required=False)
    max_iters = serializers.IntegerField(min_value=1, required=False)
    max_steps = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    stubborn_probability = serializers.FloatField(min_value=0.0, max_value=1.0, required=False)
    delta = serializers.FloatField(min_value=0.0, required=False)
    initial = serializers.ListField(child=serializers.FloatField(), min_length=2, required=False)
    manipulated_agent = serializers.IntegerField(min_value=0, required=False)
    signal_start = serializers.FloatField(required=False)
    signal_stop = serializers.FloatField(required=False)
    steps = serializers.IntegerField(min_value=1, required=False)

    OVERRIDES = (
        "master_seed", "trials", "models", "distribution", "distributions", "bins", "tol", "consensus_tol", "max_iters",
        "max_steps", "stubborn_probability", "delta", "initial", "manipulated_agent", "signal_start", "signal_stop", "steps",
    )

    def validate(self, attrs):
        if "preset" not in attrs and "study" not in attrs:
            raise serializers.ValidationError("give either a preset or a study")
        try:
            attrs["built"] = self.build(attrs)
        except (TypeError, ExperimentError, BadParameters) as exc:
            raise serializers.ValidationError(str(exc)) from exc
        return attrs

    @staticmethod
    def build(attrs):
        seed = attrs.get("master_seed", 0)
        if "preset" in attrs:
            study = preset(attrs["preset"], attrs.get("scale", "desk"), seed)
        else:
            kind = STUDIES[attrs["study"]]
            if "network" not in attrs and kind not in (ManipulationStudy, ConsensusStudy):
                raise ExperimentError(f"the {attrs['study']} study needs a network generator config")
            if kind is ConsensusStudy and "cells" not in attrs:
                raise ExperimentError("the consensus study needs a grid of cells")
            study = kind(**ExperimentConfigSerializer._structured(attrs, kind))

        fields = type(study).__dataclass_fields__
        overrides = {key: attrs[key] for key in ExperimentConfigSerializer.OVERRIDES if key in attrs and key in fields}
        overrides.update(ExperimentConfigSerializer._structured(attrs, type(study)))
        for key in ("models", "distributions", "initial"):
            if key in overrides:
                overrides[key] = tuple(overrides[key])
        return replace(study, **overrides) if overrides else study

    @staticmethod
    def _structured(attrs, kind) -> dict:
        structured = {}
        if "network" in attrs and kind is not ConsensusStudy:
            structured["network"] = GeneratorConfigSerializer.build(attrs["network"])
        if "cells" in attrs and kind is ConsensusStudy:
            structured["cells"] = tuple(GridCell(**cell) for cell in attrs["cells"])
        return structured

    def to_study(self):
        return self.validated_data["built"]
