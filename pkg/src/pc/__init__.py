from .presentation import ExponentVector, PcPresentation, Word, build_presentation, make_word, vector_word
from .collector import Collector, ConsistencyViolation, consistency_check
from .pcp_format import PcDocument, format_document, format_presentation, parse_document, parse_presentation

__all__ = [
    "Collector",
    "ConsistencyViolation",
    "ExponentVector",
    "PcDocument",
    "PcPresentation",
    "Word",
    "build_presentation",
    "consistency_check",
    "format_document",
    "format_presentation",
    "make_word",
    "parse_document",
    "parse_presentation",
    "vector_word",
]
