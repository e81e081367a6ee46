"""Run configuration: a JSON document validated by pydantic, with flag overrides"""

import hashlib
import json
import logging
from pathlib import Path
from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

import config
from ..codec.binning import RatePair
from ..decoders.metric import (
    DecodingMetric,
    map_limit,
    matched_metric,
    min_entropy,
    mismatched,
    tempered_likelihood,
)
from ..errors import ConfigError
from ..measures.distributions import CondPmf, JointPmf
from ..montecarlo.source import SourceModel

LOGGER = logging.getLogger(__name__)

ExponentKind = Literal['fr_random', 'fr_map', 'fr_expurgated', 'fa_types', 'fa_gallager', 'secrecy']


class SourceSpec(BaseModel):
    """A named DSBS family or an explicit joint pmf (rows x, columns y)"""

    model_config = ConfigDict(extra='forbid')

    family: Literal['dsbs', 'joint'] = 'dsbs'
    crossover: float = Field(config.DEFAULT_CROSSOVER, ge=0.0, le=1.0)
    joint: Optional[List[List[float]]] = None

    @model_validator(mode='after')
    def _check_joint(self):
        if self.family == 'joint':
            if self.joint is None:
                raise ValueError("family 'joint' needs a joint pmf")
            JointPmf(np.array(self.joint))
        return self

    def build(self) -> SourceModel:
        if self.family == 'dsbs':
            return SourceModel.dsbs(self.crossover)
        return SourceModel(JointPmf(np.array(self.joint)))


class MetricSpec(BaseModel):
    """Decoder metric; ``channel`` is the decoder's P'(x|y) (one row per y) for 'mismatched'"""

    model_config = ConfigDict(extra='forbid')

    kind: Literal['tempered_likelihood', 'mismatched', 'min_entropy', 'map_limit'] = 'tempered_likelihood'
    beta: float = Field(1.0, gt=0.0)
    channel: Optional[List[List[float]]] = None
    base: Literal['tempered_likelihood', 'min_entropy'] = 'tempered_likelihood'

    @model_validator(mode='after')
    def _check_channel(self):
        if self.kind == 'mismatched':
            if self.channel is None:
                raise ValueError("a mismatched metric needs a channel")
            CondPmf(np.array(self.channel))
        return self

    def build(self, model: SourceModel) -> DecodingMetric:
        if self.kind == 'tempered_likelihood':
            return matched_metric(model.p_xy, self.beta)
        if self.kind == 'mismatched':
            return mismatched(self.beta, CondPmf(np.array(self.channel)))
        if self.kind == 'min_entropy':
            return min_entropy(self.beta)
        if self.base == 'min_entropy':
            return map_limit(min_entropy(1.0))
        return map_limit(tempered_likelihood(1.0, model.p_x_given_y))


class RateSweep(BaseModel):
    model_config = ConfigDict(extra='forbid')

    start: float = Field(ge=0.0)
    stop: float = Field(ge=0.0)
    steps: int = Field(ge=0)

    def values(self) -> List[float]:
        return [float(v) for v in np.linspace(self.start, self.stop, self.steps)]


class RunConfig(BaseModel):
    model_config = ConfigDict(extra='forbid')

    source: SourceSpec = Field(default_factory=SourceSpec)
    metric: MetricSpec = Field(default_factory=MetricSpec)
    r_w: List[float] = Field(default_factory=lambda: [0.6])
    r_w_sweep: Optional[RateSweep] = None
    r_s: List[float] = Field(default_factory=lambda: [0.2])
    n_values: List[int] = Field(default_factory=lambda: list(config.DEFAULT_N_VALUES))
    trials: int = Field(config.DEFAULT_TRIALS_PER_CODE, gt=0)
    codes: int = Field(config.DEFAULT_NUM_CODES, gt=0)
    master_seed: int = Field(config.DEFAULT_MASTER_SEED, ge=0, lt=2 ** 63)
    grid_resolution: int = Field(config.GRID_RESOLUTION, ge=1)
    exponent_kinds: List[ExponentKind] = Field(default_factory=lambda: list(config.DEFAULT_EXPONENT_KINDS))
    check_convergence: bool = True
    threads: int = Field(config.DEFAULT_THREADS, ge=1)
    units: Literal['nats', 'bits'] = config.DEFAULT_UNITS
    out_csv: Optional[str] = None
    out_json: Optional[str] = None

    @field_validator('r_w', 'r_s')
    @classmethod
    def _non_negative_rates(cls, values):
        if any(not np.isfinite(v) or v < 0.0 for v in values):
            raise ValueError("rates must be finite and non-negative")
        return values

    @field_validator('n_values')
    @classmethod
    def _positive_blocklengths(cls, values):
        if any(n < 1 for n in values):
            raise ValueError("blocklengths must be positive")
        return values

    def w_rates(self) -> List[float]:
        return self.r_w_sweep.values() if self.r_w_sweep is not None else list(self.r_w)

    def rate_pairs(self) -> List[RatePair]:
        return [RatePair(r_s=r_s, r_w=r_w) for r_w in self.w_rates() for r_s in self.r_s]

    def config_hash(self) -> str:
        """SHA-256 of the canonical JSON of every field that affects results"""
        payload = self.model_dump(mode='json', exclude={'out_csv', 'out_json', 'threads'})
        canonical = json.dumps(payload, sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


def load_run_config(path=None, overrides=None) -> RunConfig:
    """Read the JSON config (if any) and apply flag overrides; flags win"""
    data = {}
    if path is not None:
        try:
            data = json.loads(Path(path).read_text(encoding='utf-8'))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"config {path} must hold a JSON object")
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value
    try:
        run_config = RunConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc
    LOGGER.info("run config %s", run_config.config_hash()[:12])
    return run_config
