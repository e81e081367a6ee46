from .commands import COMMANDS, cmd_exponent, cmd_leakage, cmd_simulate, cmd_sweep, summary_columns
from .report import CommandOutput, print_summary, suffixed, write_csv, write_json
from .settings import MetricSpec, RateSweep, RunConfig, SourceSpec, load_run_config

__all__ = [
    'COMMANDS', 'cmd_exponent', 'cmd_leakage', 'cmd_simulate', 'cmd_sweep', 'summary_columns',
    'CommandOutput', 'print_summary', 'suffixed', 'write_csv', 'write_json',
    'MetricSpec', 'RateSweep', 'RunConfig', 'SourceSpec', 'load_run_config',
]
