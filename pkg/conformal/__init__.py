from conformal.cend import (
    CendElem,
    nth_product,
    d_action,
    brace_product,
    locality,
    locality_bound,
    is_idempotent,
    is_unit_on,
    unit_from_polynomial,
)
from conformal.identities import IdentityReport, check_conformal_identities

__all__ = [
    "CendElem",
    "nth_product",
    "d_action",
    "brace_product",
    "locality",
    "locality_bound",
    "is_idempotent",
    "is_unit_on",
    "unit_from_polynomial",
    "IdentityReport",
    "check_conformal_identities",
]
