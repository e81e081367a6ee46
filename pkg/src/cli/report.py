"""CSV / JSON emission and console summaries"""

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List

import numpy as np
import pandas as pd

import config

LOGGER = logging.getLogger(__name__)


@dataclass
class CommandOutput:
    """Rows of one subcommand; ``details`` carries JSON-only extras such as argmin arrays"""

    command: str
    columns: List[str]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    details: List[Dict[str, Any]] = field(default_factory=list)

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=self.columns)


def to_units(value, units):
    """Convert a nats quantity for display"""
    if value is None or units == 'nats':
        return value
    return value / config.NATS_PER_BIT


def write_csv(output: CommandOutput, path) -> None:
    output.frame().to_csv(
        path, index=False, float_format=config.CSV_FLOAT_FORMAT,
        lineterminator='\n', encoding='utf-8',
    )
    LOGGER.info("wrote %d %s rows to %s", len(output.rows), output.command, path)


def _strict(item):
    """Plain JSON values; non-finite floats become 'inf' / '-inf' strings or null for NaN"""
    if isinstance(item, dict):
        return {key: _strict(value) for key, value in item.items()}
    if isinstance(item, (list, tuple)):
        return [_strict(value) for value in item]
    if isinstance(item, np.ndarray):
        return _strict(item.tolist())
    if isinstance(item, np.generic):
        item = item.item()
    if isinstance(item, float) and not math.isfinite(item):
        if math.isnan(item):
            return None
        return 'inf' if item > 0 else '-inf'
    return item


def write_json(output: CommandOutput, path, run_config) -> None:
    document = {
        'schema_version': config.CSV_SCHEMA_VERSION,
        'command': output.command,
        'config_hash': run_config.config_hash(),
        'config': run_config.model_dump(mode='json'),
        'rows': output.rows,
        'details': output.details,
    }
    text = json.dumps(_strict(document), indent=2, allow_nan=False)
    Path(path).write_text(text + '\n', encoding='utf-8')
    LOGGER.info("wrote %s JSON to %s", output.command, path)


def suffixed(path, command):
    """<stem>_<command><suffix>, used when one run writes several tables"""
    path = Path(path)
    return path.with_name(f"{path.stem}_{command}{path.suffix}")


def print_summary(output: CommandOutput, columns=None) -> None:
    print(f"\n{output.command}: {len(output.rows)} row(s)")
    if output.rows:
        frame = output.frame()
        shown = [c for c in (columns or output.columns) if c in frame.columns]
        print(frame[shown].to_string(index=False))
