from .exact import (
    exact_fa,
    exact_fr,
    exact_fr_given_source,
    exact_leakage,
    expurgated_fr,
    source_vector_probs,
)
from .fitting import ExponentFit, fit_exponent
from .simulation import (
    SimulationReport,
    code_seeds,
    count_fa_successes,
    count_fr_errors,
    estimate_fa,
    estimate_fr,
    wilson_interval,
)
from .source import SourceModel

__all__ = [
    'exact_fa', 'exact_fr', 'exact_fr_given_source', 'exact_leakage', 'expurgated_fr',
    'source_vector_probs', 'ExponentFit', 'fit_exponent', 'SimulationReport', 'code_seeds',
    'count_fa_successes', 'count_fr_errors', 'estimate_fa', 'estimate_fr',
    'wilson_interval', 'SourceModel',
]
