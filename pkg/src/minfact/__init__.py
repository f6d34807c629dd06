"""Exact computation library for minimal factorizations of the n-cycle.

Everything numeric in the exact code paths is an integer or a
``fractions.Fraction``; floats only appear in the Monte Carlo and
limit-law helpers, which are tagged as such.
"""

from minfact.errors import (
    CapExceededError,
    DomainError,
    MinfactError,
    ParseError,
    ValidationError,
)
from minfact.factorizations import (
    Factorization,
    Transposition,
    enumerate_factorizations,
    gamma,
    is_minimal,
    phi,
    stat_M,
    stat_T,
)
from minfact.trees import (
    VertexTree,
    enumerate_trees,
    prufer_decode,
    prufer_encode,
    sample_tree,
)
from minfact.bijections import (
    DecoratedTree,
    EdgeTree,
    alpha,
    alpha_inverse,
    e_inverse,
    e_map,
    f_map,
    find_labels,
    next_label,
    triple_of,
)
from minfact.polynomials import Poly3
from minfact.series import SeriesT, exp_rw_series, tree_fn_series
from minfact.identities import IdentityVerdict, gen_F, gen_G
from minfact.distributions import (
    PmfTable,
    compare_report,
    pmf_limit,
    pmf_montecarlo,
    pmf_oracle_dfs,
    pmf_oracle_tree,
    pmf_theorem1,
)
from minfact.verify import run_suite

__version__ = "0.1.0"

__all__ = [
    "CapExceededError",
    "DecoratedTree",
    "DomainError",
    "EdgeTree",
    "Factorization",
    "IdentityVerdict",
    "MinfactError",
    "ParseError",
    "PmfTable",
    "Poly3",
    "SeriesT",
    "Transposition",
    "ValidationError",
    "VertexTree",
    "alpha",
    "alpha_inverse",
    "compare_report",
    "e_inverse",
    "e_map",
    "enumerate_factorizations",
    "enumerate_trees",
    "exp_rw_series",
    "f_map",
    "find_labels",
    "gamma",
    "gen_F",
    "gen_G",
    "is_minimal",
    "next_label",
    "phi",
    "pmf_limit",
    "pmf_montecarlo",
    "pmf_oracle_dfs",
    "pmf_oracle_tree",
    "pmf_theorem1",
    "prufer_decode",
    "prufer_encode",
    "run_suite",
    "sample_tree",
    "stat_M",
    "stat_T",
    "tree_fn_series",
    "triple_of",
]
