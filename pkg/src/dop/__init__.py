"""Exact combinatorics and geometry of double order polytopes."""
from .double_poset import (
    MINUS,
    PLUS,
    AlternatingChain,
    AlternatingCycle,
    CrossingWitness,
    DoublePoset,
    common_linear_extension,
    crossing_witness,
    decompose,
    enumerate_chains,
    enumerate_cycles,
    is_compatible,
    is_crossed,
    split,
    walk_functional,
)
from .errors import (
    CycleError,
    DimensionTooLarge,
    DopError,
    EmptyInput,
    GuardExceeded,
    InvalidWitness,
    ParseError,
    UnknownLabel,
    ZeroFunctional,
)
from .io import parse_instance, render_instance
from .poset import Poset, antichain, build_poset, chain, filters

__version__ = "0.1.0"

__all__ = [
    "AlternatingChain",
    "AlternatingCycle",
    "CrossingWitness",
    "CycleError",
    "DimensionTooLarge",
    "DopError",
    "DoublePoset",
    "EmptyInput",
    "GuardExceeded",
    "InvalidWitness",
    "MINUS",
    "PLUS",
    "ParseError",
    "Poset",
    "UnknownLabel",
    "ZeroFunctional",
    "antichain",
    "build_poset",
    "chain",
    "common_linear_extension",
    "crossing_witness",
    "decompose",
    "enumerate_chains",
    "enumerate_cycles",
    "filters",
    "is_compatible",
    "is_crossed",
    "parse_instance",
    "render_instance",
    "split",
    "walk_functional",
]
