"""Python bindings for the cosim C++ library."""

from ._cosim import *  # noqa: F401,F403
from ._cosim import (
    CosimError,
    as_similarity,
    blend_changes,
    correlate,
    cosine_similarity,
    euclidean_distance,
    grid_points,
    grid_search,
    locate_occurrence,
    mean_pool,
    parse_records,
    run_cli,
    score_synthetic,
    validate,
)

__version__ = "0.1.0"
