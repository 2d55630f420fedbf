"""lawlint: law smell detection for hierarchically structured legal corpora."""

from .corpus import Element, Reference, Snapshot, TokenStream, load_snapshot, tokenize
from .detectors import (
    EntityDetector,
    LongElementDetector,
    PhraseMiner,
    ReferenceTreeDetector,
    SyntaxDetector,
)
from .report import SmellFinding

__version__ = "0.1.0"

__all__ = [
    "Element",
    "Reference",
    "Snapshot",
    "TokenStream",
    "load_snapshot",
    "tokenize",
    "PhraseMiner",
    "LongElementDetector",
    "SyntaxDetector",
    "ReferenceTreeDetector",
    "EntityDetector",
    "SmellFinding",
]
