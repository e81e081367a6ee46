"""Configuration settings for secret-key binning analysis"""

import math

# Probability objects
PMF_TOLERANCE = 1e-12  # Allowed deviation of a pmf sum from 1
RANGE_TOLERANCE = 1e-9  # Rounding allowed outside [0, 1] or [0, ln m] before clipping

# Enumeration guards
TYPE_ENUMERATION_GUARD = 10 ** 7  # Max joint types / simplex points in one stream
SOURCE_ENUMERATION_GUARD = 2 ** 24  # Max |X|^n for a materialized binning code
PAIR_ENUMERATION_GUARD = 2 ** 24  # Max (|X||Y|)^n for exact FR evaluation
POSTERIOR_TABLE_GUARD = 2 ** 24  # Max m_w * m_s cells in one posterior table
POSTERIOR_CACHE_CELLS = 2 ** 22  # Max cached posterior cells per simulated code
MAX_BIN_COUNT = 2 ** 32  # Tables are stored as u32

# Code sampling
CODE_CHUNK_VECTORS = 1 << 18  # Source vectors generated per counter chunk

# Simplex optimisation
GRID_RESOLUTION = 60  # Default grid steps per free coordinate (binary alphabets)
GRID_POINT_BUDGET = 250_000  # Resolution is scaled down until a grid fits
NESTED_GRID_BUDGET = 200_000_000  # Max outer x inner evaluations of a nested min
INNER_GRID_BUDGET = 14_142  # Inner grid of a nested min, about sqrt of the nested budget
REFINE_FACTOR = 10  # Local refinement resolution multiplier
LOCAL_GRID_BUDGET = 50_000  # Max points in one local refinement window
GRID_CHUNK_ELEMENTS = 4_000_000  # Max broadcast elements per vectorised block
CONSTRAINT_SLACK = 1e-9  # Slack on constrained minimisations
CONVERGENCE_TOLERANCE = 5e-3  # Doubling resolution may change a value by this much

# Expurgated exponent
EXPURGATION_RESOLUTION = 24  # Grid over Q_{X'|X}
LAMBDA_RESOLUTION = 16  # Grid over Q_{Y|XX'}
ALPHA_TABLE_RESOLUTION = 200  # Q_Y table used when alpha has no closed form
EXPURGATION_BETAS = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0)
RHO_GRID = (1.0, 2.0, 4.0, 8.0, 16.0, 64.0)

# Gallager-form FA exponent
GALLAGER_RESOLUTION = 1000  # Steps over s and rho in [0, 1]

# Monte Carlo
TRIAL_CHUNK = 1 << 16  # Trials drawn per counter chunk
CONFIDENCE_LEVEL = 0.95
FIT_N_MIN = 4  # Exponent fits ignore blocklengths below this

# Reporting
CSV_SCHEMA_VERSION = 1
CSV_FLOAT_FORMAT = '%.10g'
NATS_PER_BIT = math.log(2.0)
DEFAULT_UNITS = 'nats'
DEFAULT_THREADS = 1

# Exit codes
EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_GUARD_VIOLATION = 3

# Default run
DEFAULT_CROSSOVER = 0.1
DEFAULT_MASTER_SEED = 20240601
DEFAULT_N_VALUES = (4, 6, 8)
DEFAULT_NUM_CODES = 20
DEFAULT_TRIALS_PER_CODE = 10_000
DEFAULT_EXPONENT_KINDS = ('fr_random', 'fr_map', 'fa_types', 'fa_gallager', 'secrecy')
