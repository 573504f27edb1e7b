"""
Deterministic seed derivation.

Every replicate of an experiment gets its own seed, computed up front from the
experiment seed and the replicate coordinates, so results never depend on the
order in which workers pick up replicates.

``mix64`` folds its arguments one by one into a 64-bit state with the
splitmix64 finalizer::

    z = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2**64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2**64
    z = z ^ (z >> 31)
"""
import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_MULTIPLIER_1 = 0xBF58476D1CE4E5B9
MIX_MULTIPLIER_2 = 0x94D049BB133111EB


def splitmix64(value):
    z = (value + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * MIX_MULTIPLIER_1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_MULTIPLIER_2) & MASK64
    return z ^ (z >> 31)


def mix64(seed, *coordinates):
    state = splitmix64(int(seed) & MASK64)
    for coordinate in coordinates:
        state = splitmix64(state ^ (int(coordinate) & MASK64))
    return state


def make_rng(seed, *coordinates):
    if coordinates:
        seed = mix64(seed, *coordinates)
    return np.random.default_rng(int(seed) & MASK64)
