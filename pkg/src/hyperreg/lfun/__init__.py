from .dirichlet import (DirichletChar, dirichlet_L, dedekind_quadratic_deriv0,
                        kronecker_character, functional_equation_residual)
from .euler import EulerFactorTable, euler_ingest, dirichlet_coefficients
from .motive import LFunctionSpec, motive_L, CoverageError

__all__ = ["DirichletChar", "dirichlet_L", "dedekind_quadratic_deriv0",
           "kronecker_character", "functional_equation_residual",
           "EulerFactorTable", "euler_ingest", "dirichlet_coefficients",
           "LFunctionSpec", "motive_L", "CoverageError"]
