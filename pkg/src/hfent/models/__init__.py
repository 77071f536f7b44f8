"""Model Hamiltonians and the sum-rule experiment."""

from hfent.models.base import ModelBundle
from hfent.models.fermion_z2 import FermionZ2Params, fermion_z2_build
from hfent.models.sumrule import SumRuleReport, SumRuleRow, run_sum_rule
from hfent.models.toric import GaugedToricReport, ToricStackParams, gauged_toric_check, toric_stack_build

MODEL_BUILDERS = {
    "fermion-z2": (FermionZ2Params, fermion_z2_build),
    "toric-stack": (ToricStackParams, toric_stack_build),
}

__all__ = [
    "ModelBundle",
    "FermionZ2Params",
    "fermion_z2_build",
    "ToricStackParams",
    "toric_stack_build",
    "gauged_toric_check",
    "GaugedToricReport",
    "SumRuleReport",
    "SumRuleRow",
    "run_sum_rule",
    "MODEL_BUILDERS",
]
