# pylint: skip-file
"""
This is the settings file.

Defaults for every tunable value live here. A YAML file passed with
--config, the HAARMOMENTS_CAP environment variable and command line
flags override them, in that order (see haarmoments.config).

========================================================================
Log levels:

5  | Trace    | Every step of a computation, including cache hits and
              | individual index-summation terms.

10 | Debug    | Results of expensive intermediate computations such as
              | character tables, Weingarten class functions and
              | projector assembly.

20 | Info     | What the command line tool is currently doing.

30 | Warning  | Requests that were refused or degraded, e.g. a cap that
              | was hit or a cache that was evicted.

40 | Error    | Failed verifications and internal consistency failures.

50 | Critical | Failures that prevent the tool from producing any
              | output.

60 | Nothing  | No messages at all.
"""

# Log level
console_log_level = 30

# Output format ("text" or "json")
output_format = "text"

# Digits printed for floating point results
float_precision = 12

# Largest d^k an exact or floating dense operator may have
dense_size_cap = 4096

# Largest k for which character tables are built
character_table_cap = 10

# Number of weights k whose character values stay memoized
character_cache_weights = 12

# Default seed for all Monte Carlo work
default_seed = 20240521

# Monte Carlo streams per estimate and worker threads
mc_chunks = 4
mc_workers = 4
mc_batch_size = 2048

# Samples used by verify/mcverify when none are given
mc_samples = 100000

# Acceptance threshold for Monte Carlo z-scores
mc_z_threshold = 5.0

# Weyl quadrature limits
quadrature_max_n = 5
quadrature_max_points = 4194304

# Environment variable overriding the dense cap
cap_environment_variable = "HAARMOMENTS_CAP"
