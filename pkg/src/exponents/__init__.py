from .expurgated import (
    ExpurgationAnalyzer,
    LambdaSurface,
    alpha,
    fr_expurgated_exponent,
    fr_expurgated_one,
    fr_expurgated_rho,
    fr_expurgated_rho_sweep,
    gamma,
    lambda_pairwise,
)
from .false_accept import fa_exponent_gallager, fa_exponent_types, gallager_source_function
from .false_reject import (
    fr_map_exponent,
    fr_objective,
    fr_random_exponent,
    fr_random_exponent_given_type,
    inner_fr_exponent,
)
from .optimize import ExponentResult, check_convergence, grid_maximize, grid_minimize
from .secrecy import secrecy_exponent, typical_leakage_bound

__all__ = [
    'ExpurgationAnalyzer', 'LambdaSurface', 'alpha', 'fr_expurgated_exponent',
    'fr_expurgated_one', 'fr_expurgated_rho', 'fr_expurgated_rho_sweep', 'gamma',
    'lambda_pairwise',
    'fa_exponent_gallager', 'fa_exponent_types', 'gallager_source_function',
    'fr_map_exponent', 'fr_objective', 'fr_random_exponent',
    'fr_random_exponent_given_type', 'inner_fr_exponent',
    'ExponentResult', 'check_convergence', 'grid_maximize', 'grid_minimize',
    'secrecy_exponent', 'typical_leakage_bound',
]
