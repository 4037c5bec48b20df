from counterexample.algebra import (
    CxElem,
    CxCheckReport,
    cx_embed,
    cx_product,
    cx_radical_membership,
    cx_theta,
    verify_closure,
    verify_radical,
    verify_theta,
)
from counterexample.psi import (
    ObstructionCertificate,
    PsiAnsatz,
    cx_forced_psi,
    cx_obstruction,
    cx_propagate_psi,
    cx_sweep,
    homogeneous_control,
    witness_replay,
)

__all__ = [
    "CxElem",
    "CxCheckReport",
    "cx_embed",
    "cx_product",
    "cx_radical_membership",
    "cx_theta",
    "verify_closure",
    "verify_radical",
    "verify_theta",
    "ObstructionCertificate",
    "PsiAnsatz",
    "cx_forced_psi",
    "cx_obstruction",
    "cx_propagate_psi",
    "cx_sweep",
    "homogeneous_control",
    "witness_replay",
]
