"""Exact computer algebra for the mod-l motivic Steenrod algebra."""

from .base import (
    BaseScalar,
    Bidegree,
    PrimeMismatch,
    binomial_mod_l,
    scalar_add,
    scalar_mul,
    steenrod_action_on_base,
)
from .dual import (
    DualElement,
    MilnorMonomial,
    TwistedTensor,
    counit,
    dual_coproduct,
    dual_multiply,
    enumerate_monomials,
    make_monomial,
    normalize_tensor,
    right_unit,
)
from .steenrod import (
    ADMISSIBLE,
    MILNOR,
    OperationTensor,
    SteenrodElement,
    TriangularityError,
    adem_normalize,
    adem_table,
    commute_coefficient,
    convert_basis,
    coproduct,
    make_named,
    multiply,
    pair,
    pairing_matrix,
    specialize,
)
from .module_action import ModuleElement, act, act_generator, act_rigid, module_multiply
from .charclass import FormalBundle, SymmetricPoly, s_R, thom_class_action, to_chern

__version__ = "0.1.0"

__all__ = [
    "ADMISSIBLE",
    "BaseScalar",
    "Bidegree",
    "DualElement",
    "FormalBundle",
    "MILNOR",
    "MilnorMonomial",
    "ModuleElement",
    "OperationTensor",
    "PrimeMismatch",
    "SteenrodElement",
    "SymmetricPoly",
    "TriangularityError",
    "TwistedTensor",
    "act",
    "act_generator",
    "act_rigid",
    "adem_normalize",
    "adem_table",
    "binomial_mod_l",
    "commute_coefficient",
    "convert_basis",
    "coproduct",
    "counit",
    "dual_coproduct",
    "dual_multiply",
    "enumerate_monomials",
    "make_monomial",
    "make_named",
    "module_multiply",
    "multiply",
    "normalize_tensor",
    "pair",
    "pairing_matrix",
    "right_unit",
    "s_R",
    "scalar_add",
    "scalar_mul",
    "specialize",
    "steenrod_action_on_base",
    "thom_class_action",
    "to_chern",
]
