from spans.hspan import HSpan, Membership, membership, quotient_reduce, intersection_is_zero, span_sum
from spans.algebra import (
    SubalgebraPresentation,
    IdealPresentation,
    PierceDecomposition,
    close_subalgebra,
    verify_ideal,
    nilpotency_index,
    ideal_powers,
    pierce_decompose,
    corner,
    corner_span,
    radical_complement_check,
)

__all__ = [
    "HSpan",
    "Membership",
    "membership",
    "quotient_reduce",
    "intersection_is_zero",
    "span_sum",
    "SubalgebraPresentation",
    "IdealPresentation",
    "PierceDecomposition",
    "close_subalgebra",
    "verify_ideal",
    "nilpotency_index",
    "ideal_powers",
    "pierce_decompose",
    "corner",
    "corner_span",
    "radical_complement_check",
]
