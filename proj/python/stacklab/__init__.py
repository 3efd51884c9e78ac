"""Cutting-and-stacking constructions with exact arithmetic.

Thin Python surface over the C++ core: seeded sampling of Ornstein spacer
parameters, eigenvalue candidate screens via exact interval chains, and the
experiment runner.
"""

from ._stacklab import (
    ConstructionError,
    ParameterError,
    chacon_pattern_stages,
    chain_survivors,
    circle_norm,
    correlation,
    deterministic_heights,
    ornstein_heights,
    prng_next,
    run_experiment,
    sample_omega,
    sample_uniform,
    screen,
)

__all__ = [
    "ConstructionError",
    "ParameterError",
    "chacon_pattern_stages",
    "chain_survivors",
    "circle_norm",
    "correlation",
    "deterministic_heights",
    "ornstein_heights",
    "prng_next",
    "run_experiment",
    "sample_omega",
    "sample_uniform",
    "screen",
]
