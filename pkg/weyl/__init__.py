from weyl.algebra import WeylPoly, WeylOp, weyl_normal_form, rewrite_word
from weyl.realization import (
    OperatorSequence,
    realize,
    cross_check_operator_product,
    interpolate_conformal,
)
from weyl.module import TruncatedModule, act_on_module, check_module_axioms
from weyl.tc import TCReport, tc_fixture_check

__all__ = [
    "WeylPoly",
    "WeylOp",
    "weyl_normal_form",
    "rewrite_word",
    "OperatorSequence",
    "realize",
    "cross_check_operator_product",
    "interpolate_conformal",
    "TruncatedModule",
    "act_on_module",
    "check_module_axioms",
    "TCReport",
    "tc_fixture_check",
]
