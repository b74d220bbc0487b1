"""Ternary reversible circuit synthesis (Python bindings)."""

from ._core import (
    DEFAULT_SEED,
    ParseError,
    __version__,
    bench_function,
    class_size,
    compose3,
    costs,
    draw,
    natural_cycles,
    optimize,
    perm_from_rank,
    perm_rank,
    simulate,
    synthesize,
)

__all__ = [
    "DEFAULT_SEED",
    "ParseError",
    "__version__",
    "bench_function",
    "class_size",
    "compose3",
    "costs",
    "draw",
    "natural_cycles",
    "optimize",
    "perm_from_rank",
    "perm_rank",
    "simulate",
    "synthesize",
]
