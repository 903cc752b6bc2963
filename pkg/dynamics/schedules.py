from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import Enum

from .seeding import rng_for

BLOCK = 4096


class ScheduleMode(str, Enum):
    UNIFORM_RANDOM = "uniform_random"
    PRESCRIBED = "prescribed"


@dataclass(frozen=True)
class UpdateSchedule:
    """Which agent is activated at each step: a seeded uniform stream or a fixed list."""

    mode: ScheduleMode
    seed: int | None = None
    agents: tuple[int, ...] = field(default_factory=tuple)

    @classmethod
    def uniform_random(cls, seed: int) -> "UpdateSchedule":
        return cls(ScheduleMode.UNIFORM_RANDOM, seed=seed)

    @classmethod
    def prescribed(cls, agents) -> "UpdateSchedule":
        return cls(ScheduleMode.PRESCRIBED, agents=tuple(int(i) for i in agents))

    def stream(self, n: int) -> Iterator[int]:
        if self.mode is ScheduleMode.PRESCRIBED:
            for i in self.agents:
                if not 0 <= i < n:
                    raise ValueError(f"scheduled agent {i} out of range for n={n}")
            yield from self.agents
            return

        rng = rng_for(self.seed)
        while True:
            yield from rng.integers(0, n, size=BLOCK).tolist()

    def as_dict(self) -> dict:
        if self.mode is ScheduleMode.PRESCRIBED:
            return {"mode": self.mode.value, "agents": list(self.agents)}
        return {"mode": self.mode.value, "seed": self.seed}
