"""
Per-trial random streams.

Every trial owns a seed derived from ``(master seed, trial index)`` with the
SplitMix64 finalizer, so any trial can be replayed alone and results do not
depend on which worker ran it.
"""

import numpy as np

MASK64 = (1 << 64) - 1


def splitmix64(value: int) -> int:
    z = (value + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed: int, trial_index: int) -> int:
    return splitmix64((master_seed & MASK64) ^ splitmix64(trial_index & MASK64))


def substream(seed: int, purpose: str) -> int:
    """Independent seed for one use (network, opinions, schedule, ...) inside a trial."""
    tag = int.from_bytes(purpose.encode()[:8].ljust(8, b"\0"), "little")
    return splitmix64(seed ^ splitmix64(tag))


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))
