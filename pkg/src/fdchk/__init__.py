"""Numerical functional-dissipativity checker for divergence-form
operators with complex coefficients.

The package decides, at desk scale, whether u -> div(A(x) grad u) is
dissipative with respect to an Orlicz weight: ``orlicz`` holds the weight
machinery (Young function, conjugate inversion, the lam evaluator),
``criterion`` the algebraic tests (lambda0, pointwise margins, block
quadratic form), ``pde`` the discrete harness (dissipativity integral,
probe searches, backward-Euler semigroup), ``expr`` the coefficient
expression language, and ``cli`` the batch front-end.
"""

from .criterion import (CriterionReport, Lambda0Result, MatrixField,
                        SamplingConfig, Witness, check_operator,
                        check_pointwise, form_min_eig, lambda0,
                        necessary_real_part, strong_ellipticity_margin,
                        sufficient_condition)
from .grids import GridDomain, GridField
from .orlicz import (AuxBundle, PhiSpec, ValidationReport, conjugate_psi,
                     duality_check, luxemburg_norm, orlicz_integral,
                     validate_phi, young_Phi)
from .pde import (ProbeFamily, ProbeResult, Trajectory, assemble_operator,
                  dissipativity_integral, evolve, form_integral_v,
                  probe_search)

__version__ = "0.1.0"

__all__ = [
    "AuxBundle", "PhiSpec", "ValidationReport", "conjugate_psi",
    "duality_check", "luxemburg_norm", "orlicz_integral", "validate_phi",
    "young_Phi",
    "CriterionReport", "Lambda0Result", "MatrixField", "SamplingConfig",
    "Witness", "check_operator", "check_pointwise", "form_min_eig",
    "lambda0", "necessary_real_part", "strong_ellipticity_margin",
    "sufficient_condition",
    "GridDomain", "GridField",
    "ProbeFamily", "ProbeResult", "Trajectory", "assemble_operator",
    "dissipativity_integral", "evolve", "form_integral_v", "probe_search",
]
