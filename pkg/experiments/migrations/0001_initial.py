import uuid

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="ExperimentRun",
            fields=[
                ("id", models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False)),
                (
                    "study",
                    models.CharField(
                        choices=[
                            ("consensus", "Consensus probability"),
                            ("extremeness", "Extremeness and centrality"),
                            ("distribution", "Opinion distributions"),
                            ("perturbation", "Indecisive-link perturbation"),
                            ("manipulation", "Signal manipulation"),
                        ],
                        max_length=20,
                    ),
                ),
                ("preset", models.CharField(blank=True, max_length=20)),
                ("scale", models.CharField(blank=True, max_length=10)),
                ("model_ids", models.JSONField(default=list)),
                ("master_seed", models.CharField(default="0", max_length=20)),
                ("config", models.JSONField(default=dict)),
                (
                    "status",
                    models.CharField(
                        choices=[("running", "Running"), ("completed", "Completed"), ("failed", "Failed")],
                        default="running",
                        max_length=10,
                    ),
                ),
                ("aggregate", models.JSONField(default=dict)),
                ("manifest", models.JSONField(blank=True, default=dict)),
                ("failures", models.JSONField(blank=True, default=list)),
                ("created_at", models.DateTimeField(auto_now_add=True)),
                ("updated_at", models.DateTimeField(auto_now=True)),
            ],
            options={
                "ordering": ["-created_at"],
            },
        ),
        migrations.CreateModel(
            name="TrialRecord",
            fields=[
                ("id", models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name="ID")),
                ("trial_index", models.PositiveIntegerField()),
                ("seed", models.CharField(max_length=20)),
                (
                    "model",
                    models.CharField(
                        choices=[("wm", "wm"), ("degroot", "degroot"), ("stubborn", "stubborn"), ("fj", "fj"), ("nbc", "nbc")],
                        max_length=10,
                    ),
                ),
                ("converged", models.BooleanField(default=False)),
                ("consensus", models.BooleanField(default=False)),
                ("steps", models.PositiveIntegerField(default=0)),
                ("stop_reason", models.CharField(max_length=20)),
                ("final_opinions", models.JSONField(default=list)),
                ("categories", models.JSONField(blank=True, default=list)),
                ("in_degree", models.JSONField(blank=True, default=list)),
                ("extremist_focus", models.JSONField(blank=True, default=list)),
                ("created_at", models.DateTimeField(auto_now_add=True)),
                (
                    "run",
                    models.ForeignKey(
                        on_delete=django.db.models.deletion.CASCADE, related_name="trials", to="experiments.experimentrun"
                    ),
                ),
            ],
            options={
                "ordering": ["run", "trial_index", "model"],
                "constraints": [
                    models.UniqueConstraint(fields=("run", "trial_index", "model"), name="unique_trial_per_model")
                ],
            },
        ),
    ]
