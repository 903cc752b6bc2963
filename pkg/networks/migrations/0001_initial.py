from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="Network",
            fields=[
                ("id", models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name="ID")),
                ("name", models.CharField(max_length=200)),
                (
                    "family",
                    models.CharField(
                        choices=[
                            ("barabasi_albert", "Barabási-Albert"),
                            ("watts_strogatz", "Watts-Strogatz"),
                            ("explicit", "Explicit"),
                            ("imported", "Imported"),
                        ],
                        default="imported",
                        max_length=20,
                    ),
                ),
                ("n", models.PositiveIntegerField()),
                ("seed", models.CharField(blank=True, max_length=20)),
                ("parameters", models.JSONField(blank=True, default=dict)),
                ("content_hash", models.CharField(db_index=True, max_length=40)),
                ("payload", models.JSONField()),
                ("notes", models.TextField(blank=True)),
                ("created_at", models.DateTimeField(auto_now_add=True)),
                ("updated_at", models.DateTimeField(auto_now=True)),
            ],
            options={
                "ordering": ["-created_at"],
            },
        ),
    ]
