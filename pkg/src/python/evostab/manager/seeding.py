"""
Deterministic per-run seeding.

Run i of an ensemble draws its generator seed from the (i + 1)-th output of the SplitMix64 sequence started at the master seed.
Seeds depend only on (master_seed, run_index), so runs can execute in any order or process.
"""

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64_mix(z: int) -> int:
    """SplitMix64 output finaliser"""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def run_seed(master_seed: int, run_index: int) -> int:
    if run_index < 0:
        raise ValueError(f"Run index must be non-negative, got {run_index}")
    return splitmix64_mix(master_seed + GOLDEN_GAMMA * (run_index + 1))


def run_generator(master_seed: int, run_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(run_seed(master_seed, run_index)))


def fresh_master_seed() -> int:
    """64-bit master seed drawn from OS entropy"""
    return int(np.random.SeedSequence().entropy) & MASK64
