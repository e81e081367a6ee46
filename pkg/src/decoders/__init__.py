from .likelihood import (
    KeyPosterior,
    PosteriorStatus,
    PosteriorTable,
    imposter_decode,
    imposter_guesses,
    key_posterior,
    map_decode,
    posterior_from_scores,
    posterior_table,
    sample_index,
    stochastic_decode,
)
from .metric import (
    DecodingMetric,
    MetricKind,
    map_limit,
    matched_metric,
    metric_value,
    min_entropy,
    mismatched,
    tempered_likelihood,
)

__all__ = [
    'KeyPosterior', 'PosteriorStatus', 'PosteriorTable', 'imposter_decode',
    'imposter_guesses', 'key_posterior', 'map_decode', 'posterior_from_scores',
    'posterior_table', 'sample_index', 'stochastic_decode',
    'DecodingMetric', 'MetricKind', 'map_limit', 'matched_metric', 'metric_value',
    'min_entropy', 'mismatched', 'tempered_likelihood',
]
