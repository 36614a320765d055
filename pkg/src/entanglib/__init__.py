"""Certified spectral and nuclear norms of tensors, with entanglement and separability checks."""

from .antisym_tensors import WedgeTensor, slater_rank_d2, wedge, wedge_pure_density
from .entanglement_measures import (EntanglementReport, alpha_lower_bound, gme, nuclear_energy,
                                    symmetric_alpha_bounds)
from .errors import (ArgumentError, BudgetError, CapacityError, DimensionError, EntanglibError, LPError,
                     ParameterError, ValidationError)
from .hermitian_tensors import DensityTensor, HermitianTensor, identity_on_sym, make_density, pure_density
from .optim_engine import Decomposition, NormEstimate, bnuc, bspec, nuclear_norm, spectral_norm
from .separability import (SeparabilityVerdict, ppt_check, real_strong_separability_sym, separability_via_nuclear,
                           spec_floor_check, strong_separability_bisym)
from .sphere_covering import CoveringGrid, choose_m, covering_radius_check
from .state_library import NamedState, get_state, list_states
from .sym_poly import BiSymTensor, SymTensor
from .tensor_core import DenseTensor

__all__ = [
    "WedgeTensor", "slater_rank_d2", "wedge", "wedge_pure_density", "EntanglementReport", "alpha_lower_bound",
    "gme", "nuclear_energy", "symmetric_alpha_bounds", "ArgumentError", "BudgetError", "CapacityError",
    "DimensionError", "EntanglibError", "LPError", "ParameterError", "ValidationError", "DensityTensor",
    "HermitianTensor", "identity_on_sym", "make_density", "pure_density", "Decomposition", "NormEstimate",
    "bnuc", "bspec", "nuclear_norm", "spectral_norm", "SeparabilityVerdict", "ppt_check",
    "real_strong_separability_sym", "separability_via_nuclear", "spec_floor_check",
    "strong_separability_bisym", "CoveringGrid", "choose_m", "covering_radius_check", "NamedState",
    "get_state", "list_states", "BiSymTensor", "SymTensor", "DenseTensor",
]

__version__ = "0.1.0"
