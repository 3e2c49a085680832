"""Device-level simulator of a strain-gated two-MTJ analog multiplier with a
domain-wall accumulator.

The heavy lifting lives in the compiled extension; this package re-exports its
surface. Matrices are nested lists of ints, results are plain dicts.
"""

from ._core import (
    Config,
    analytic_constants,
    crossbar_report,
    default_config,
    encoding,
    linear_fit,
    load_config,
    matmul,
    oracle_matmul,
    steady_angle,
    transfer_curve,
)

__all__ = [
    "Config",
    "analytic_constants",
    "crossbar_report",
    "default_config",
    "encoding",
    "linear_fit",
    "load_config",
    "matmul",
    "oracle_matmul",
    "steady_angle",
    "transfer_curve",
]
