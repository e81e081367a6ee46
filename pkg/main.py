#!/usr/bin/env python3
"""
Biometric Secret-Key Binning - Main Entry Point

Computes false-reject, false-accept and secrecy error exponents of
Slepian-Wolf random binning for biometric secret-key authentication, and
checks them against seeded Monte Carlo simulations of realized codes.

Usage:
    python main.py {exponent,simulate,leakage,sweep} [options]

Subcommands:
    exponent            Error exponents over the configured rate pairs
    simulate            FR / FA estimates with Wilson intervals per blocklength
    leakage             Exact key-helper leakage I(S; W) per realized code
    sweep               All three, written to <stem>_<command> files

Options:
    --config PATH       JSON run configuration (flags override its values)
    --seed SEED         Master seed for code and trial streams
    --grid RES          Simplex grid resolution for the exponent optimisers
    --r-w R [R ...]     Helper rates in nats per symbol
    --r-s R [R ...]     Key rates in nats per symbol
    --n N [N ...]       Blocklengths for simulate / leakage
    --codes K           Random codes drawn per blocklength
    --trials T          Trials per code
    --out-csv PATH      Write the result table as CSV
    --out-json PATH     Write the result table and argmins as JSON
    --threads K         Worker threads (results do not depend on K)
    --units {nats,bits} Display units for rates, exponents and leakage
    --no-convergence-check
                        Skip the doubled-resolution convergence re-run
    --log-level LEVEL   Logging level (default: WARNING)
"""

import argparse
import logging
import sys

import config
from src.cli import (
    COMMANDS,
    cmd_sweep,
    load_run_config,
    print_summary,
    suffixed,
    summary_columns,
    write_csv,
    write_json,
)
from src.errors import ConfigError, GuardExceededError

LOGGER = logging.getLogger(__name__)


def parse_arguments(argv=None):
    """Parse command line arguments"""
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        '--config', type=str, default=None,
        help='JSON run configuration file'
    )
    shared.add_argument(
        '--seed', type=int, default=None,
        help='Master seed for code and trial streams'
    )
    shared.add_argument(
        '--grid', type=int, default=None,
        help=f'Simplex grid resolution (default: {config.GRID_RESOLUTION})'
    )
    shared.add_argument(
        '--r-w', type=float, nargs='+', default=None,
        help='Helper rates in nats per symbol'
    )
    shared.add_argument(
        '--r-s', type=float, nargs='+', default=None,
        help='Key rates in nats per symbol'
    )
    shared.add_argument(
        '--n', type=int, nargs='+', default=None,
        help='Blocklengths for simulate / leakage'
    )
    shared.add_argument(
        '--codes', type=int, default=None,
        help='Random codes drawn per blocklength'
    )
    shared.add_argument(
        '--trials', type=int, default=None,
        help='Trials per code'
    )
    shared.add_argument(
        '--out-csv', type=str, default=None,
        help='Write the result table as CSV'
    )
    shared.add_argument(
        '--out-json', type=str, default=None,
        help='Write the result table and argmins as JSON'
    )
    shared.add_argument(
        '--threads', type=int, default=None,
        help='Worker threads'
    )
    shared.add_argument(
        '--units', choices=['nats', 'bits'], default=None,
        help='Display units (computation is always in nats)'
    )
    shared.add_argument(
        '--no-convergence-check', action='store_true',
        help='Skip the doubled-resolution convergence re-run'
    )
    shared.add_argument(
        '--log-level', default='WARNING',
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
        help='Logging level'
    )

    parser = argparse.ArgumentParser(
        description='Error exponents and simulations for biometric secret-key binning'
    )
    subparsers = parser.add_subparsers(dest='command', required=True)
    subparsers.add_parser('exponent', parents=[shared], help='Compute error exponents')
    subparsers.add_parser('simulate', parents=[shared], help='Monte Carlo FR / FA estimates')
    subparsers.add_parser('leakage', parents=[shared], help='Exact leakage of realized codes')
    subparsers.add_parser('sweep', parents=[shared], help='Exponent, simulate and leakage together')
    return parser.parse_args(argv)


def build_overrides(args):
    overrides = {
        'master_seed': args.seed,
        'grid_resolution': args.grid,
        'r_w': args.r_w,
        'r_s': args.r_s,
        'n_values': args.n,
        'codes': args.codes,
        'trials': args.trials,
        'out_csv': args.out_csv,
        'out_json': args.out_json,
        'threads': args.threads,
        'units': args.units,
    }
    if args.no_convergence_check:
        overrides['check_convergence'] = False
    return overrides


def emit(output, run_config, csv_path, json_path):
    if csv_path:
        write_csv(output, csv_path)
    if json_path:
        write_json(output, json_path, run_config)
    print_summary(output, summary_columns(output.command))


def main(argv=None):
    """Main entry point"""
    args = parse_arguments(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )

    try:
        run_config = load_run_config(args.config, build_overrides(args))
        if args.command == 'sweep':
            for command, output in cmd_sweep(run_config).items():
                emit(
                    output, run_config,
                    suffixed(run_config.out_csv, command) if run_config.out_csv else None,
                    suffixed(run_config.out_json, command) if run_config.out_json else None,
                )
        else:
            output = COMMANDS[args.command](run_config)
            emit(output, run_config, run_config.out_csv, run_config.out_json)
    except ConfigError as exc:
        print(f"Configuration error: {exc}", file=sys.stderr)
        return config.EXIT_CONFIG_ERROR
    except GuardExceededError as exc:
        print(f"Refused: {exc}", file=sys.stderr)
        return config.EXIT_GUARD_VIOLATION

    if args.command == 'exponent':
        unconverged = [row for row in output.rows if row['converged'] is False]
        if unconverged:
            print(f"\n{len(unconverged)} exponent(s) did not converge at the requested resolution")
    return config.EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
