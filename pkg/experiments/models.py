import uuid

from django.db import models, transaction

from dynamics.models import MODELS


class ExperimentRun(models.Model):
    STUDIES = [
        ("consensus", "Consensus probability"),
        ("extremeness", "Extremeness and centrality"),
        ("distribution", "Opinion distributions"),
        ("perturbation", "Indecisive-link perturbation"),
        ("manipulation", "Signal manipulation"),
    ]
    STATUSES = [
        ("running", "Running"),
        ("completed", "Completed"),
        ("failed", "Failed"),
    ]

    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    study = models.CharField(max_length=20, choices=STUDIES)
    preset = models.CharField(max_length=20, blank=True)
    scale = models.CharField(max_length=10, blank=True)
    model_ids = models.JSONField(default=list)
    # Seeds are unsigned 64-bit integers, stored as text to stay exact on every backend.
    master_seed = models.CharField(max_length=20, default="0")
    config = models.JSONField(default=dict)
    status = models.CharField(max_length=10, choices=STATUSES, default="running")
    aggregate = models.JSONField(default=dict)
    manifest = models.JSONField(default=dict, blank=True)
    failures = models.JSONField(default=list, blank=True)
    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        ordering = ["-created_at"]

    def __str__(self):
        label = self.preset or self.get_study_display()  # type: ignore
        return f"{label} run {str(self.id)[:8]} ({self.status})"

    @classmethod
    def record(cls, result, *, preset: str = "", scale: str = "", manifest: dict | None = None) -> "ExperimentRun":
        """Store a study result with one ``TrialRecord`` per model run."""
        config = result.config
        with transaction.atomic():
            run = cls.objects.create(
                study=result.study,
                preset=preset,
                scale=scale,
                model_ids=config.get("models", []),
                master_seed=str(config.get("master_seed", 0)),
                config=config,
                status="completed",
                aggregate=result.aggregate,
                manifest=manifest or {},
                failures=[failure.as_dict() for failure in result.failures],
            )
            TrialRecord.objects.bulk_create(
                TrialRecord(
                    run=run,
                    trial_index=outcome.trial_index,
                    seed=str(outcome.seed),
                    model=outcome.model,
                    converged=outcome.converged,
                    consensus=outcome.consensus,
                    steps=outcome.steps,
                    stop_reason=outcome.stop_reason,
                    final_opinions=outcome.final_opinions,
                    categories=outcome.categories,
                    in_degree=outcome.in_degree,
                    extremist_focus=outcome.extremist_focus,
                )
                for outcome in result.outcomes
            )
        return run

    def to_dict(self) -> dict:
        return {
            "id": str(self.id),
            "study": self.study,
            "preset": self.preset,
            "scale": self.scale,
            "model_ids": self.model_ids,
            "master_seed": int(self.master_seed),
            "status": self.status,
            "aggregate": self.aggregate,
            "trials": self.trials.count(),  # type: ignore
            "created_at": self.created_at.isoformat(),  # type: ignore
        }


class TrialRecord(models.Model):
    MODEL_CHOICES = [(model, model) for model in MODELS]

    run = models.ForeignKey(ExperimentRun, on_delete=models.CASCADE, related_name="trials")
    trial_index = models.PositiveIntegerField()
    seed = models.CharField(max_length=20)
    model = models.CharField(max_length=10, choices=MODEL_CHOICES)
    converged = models.BooleanField(default=False)  # type: ignore
    consensus = models.BooleanField(default=False)  # type: ignore
    steps = models.PositiveIntegerField(default=0)
    stop_reason = models.CharField(max_length=20)
    final_opinions = models.JSONField(default=list)
    categories = models.JSONField(default=list, blank=True)
    in_degree = models.JSONField(default=list, blank=True)
    extremist_focus = models.JSONField(default=list, blank=True)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ["run", "trial_index", "model"]
        constraints = [
            models.UniqueConstraint(fields=["run", "trial_index", "model"], name="unique_trial_per_model"),
        ]

    def __str__(self):
        return f"trial {self.trial_index} / {self.model}"
