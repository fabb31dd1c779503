"""Livelock decision for parameterized self-disabling unidirectional rings."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    InvalidProtocol,
    PseudolivelockGraph,
    Transition,
    build_h,
    filter_pairs,
    phi,
    pl,
    shad,
    validate_protocol,
)
from .decide import Decision, Verdict, decide, decide_ring11, decide_symmetric  # noqa: E402
from .protocols import GENERATORS, ProtocolSpec, generate  # noqa: E402

__all__ = [
    "Decision",
    "GENERATORS",
    "InvalidProtocol",
    "ProtocolSpec",
    "PseudolivelockGraph",
    "Transition",
    "Verdict",
    "build_h",
    "decide",
    "decide_ring11",
    "decide_symmetric",
    "filter_pairs",
    "generate",
    "phi",
    "pl",
    "shad",
    "validate_protocol",
]
