from django.db import models

from .core import InfluenceNetwork
from .formats import content_hash, from_payload, to_payload


class Network(models.Model):
    FAMILIES = [
        ("barabasi_albert", "Barabási-Albert"),
        ("watts_strogatz", "Watts-Strogatz"),
        ("explicit", "Explicit"),
        ("imported", "Imported"),
    ]

    name = models.CharField(max_length=200)
    family = models.CharField(max_length=20, choices=FAMILIES, default="imported")
    n = models.PositiveIntegerField()
    # Unsigned 64-bit generator seed as text; empty for imported networks.
    seed = models.CharField(max_length=20, blank=True)
    parameters = models.JSONField(default=dict, blank=True)
    content_hash = models.CharField(max_length=40, db_index=True)
    payload = models.JSONField()
    notes = models.TextField(blank=True)
    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        ordering = ["-created_at"]

    def __str__(self):
        return f"{self.name} (n={self.n})"

    @classmethod
    def from_influence(
        cls, network: InfluenceNetwork, *, name: str, family: str = "imported", seed=None, parameters=None, notes: str = ""
    ) -> "Network":
        """Unsaved row for ``network``."""
        return cls(
            name=name,
            family=family,
            n=network.n,
            seed="" if seed is None else str(seed),
            parameters=parameters or {},
            content_hash=content_hash(network),
            payload=to_payload(network),
            notes=notes,
        )

    @property
    def influence(self) -> InfluenceNetwork:
        return from_payload(self.payload)
