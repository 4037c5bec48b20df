from lifting.context import LiftContext, LiftReport, RelationCheck
from lifting.idempotents import lift_idempotent, lift_idempotent_zero, lift_orthogonal_family
from lifting.generator import lift_conformal_generator
from lifting.matrix_units import MatrixUnitSystem, build_matrix_units, verify_cend_relations
from lifting.splitting import BlockSpec, SplitRecord, SplitResult, resplit, split_radical
from lifting.fixtures import FIXTURES, LiftFixture, load_fixture

__all__ = [
    "LiftContext",
    "LiftReport",
    "RelationCheck",
    "lift_idempotent",
    "lift_idempotent_zero",
    "lift_orthogonal_family",
    "lift_conformal_generator",
    "MatrixUnitSystem",
    "build_matrix_units",
    "verify_cend_relations",
    "BlockSpec",
    "SplitRecord",
    "SplitResult",
    "resplit",
    "split_radical",
    "FIXTURES",
    "LiftFixture",
    "load_fixture",
]
