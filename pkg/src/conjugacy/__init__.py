"""Quantify topological conjugacy of finitely sampled dynamical systems.

Given two trajectories (and optionally a candidate connecting map), the
four tests in :mod:`conjugacy.measures` score how close the data is to
being related by a topological (semi-)conjugacy.  Supporting modules
provide delay embeddings, exact nearest-neighbor machinery, benchmark
trajectory generators, and a declarative experiment harness with a CLI.
"""

from ._backend import BACKEND
from .core import (
    ConnectingMap,
    TimeSeries,
    diam,
    distance,
    modone,
    read_series_csv,
    series_std,
    write_series_csv,
)
from .embedding import observable_mean, project, takens_embed
from .generators import (
    add_noise,
    gen_circle,
    gen_interval_map,
    gen_klein,
    gen_lorenz,
    gen_torus,
)
from .harness import (
    BUILTIN_EXPERIMENTS,
    SpecValidationError,
    builtin_experiment,
    load_spec,
    run_experiment,
    sweep,
    validate_spec,
)
from .maps import make_map
from .measures import (
    NoAdmissiblePairsError,
    TestParams,
    TestResult,
    compare_series,
    conjtest,
    conjtest_plus,
    fnn_dim,
    fnn_test,
    knn_test,
)
from .neighbors import (
    NeighborIndex,
    NeighborQueryResult,
    hausdorff,
    knn,
    knn_excl,
    validate_index,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BUILTIN_EXPERIMENTS",
    "ConnectingMap",
    "SpecValidationError",
    "builtin_experiment",
    "load_spec",
    "run_experiment",
    "sweep",
    "validate_spec",
    "NeighborIndex",
    "NeighborQueryResult",
    "NoAdmissiblePairsError",
    "TestParams",
    "TestResult",
    "TimeSeries",
    "add_noise",
    "compare_series",
    "conjtest",
    "conjtest_plus",
    "diam",
    "distance",
    "fnn_dim",
    "fnn_test",
    "gen_circle",
    "gen_interval_map",
    "gen_klein",
    "gen_lorenz",
    "gen_torus",
    "hausdorff",
    "knn",
    "knn_excl",
    "knn_test",
    "make_map",
    "modone",
    "observable_mean",
    "project",
    "read_series_csv",
    "series_std",
    "takens_embed",
    "validate_index",
    "write_series_csv",
]
