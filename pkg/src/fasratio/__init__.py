"""Feedback arc sets of directed Erdos-Renyi graphs: solvers, tail bounds,
the scaled-difference surface check and Monte Carlo experiments."""
from fasratio.bounds import (
    BoundParams,
    amplify_by_permutations,
    bennett_bound,
    bennett_h,
    bennett_small_eps,
    chernoff_direct_bound,
    exact_ratio_tail,
    hoeffding_ratio_bound,
    threshold_constant,
)
from fasratio.errors import CapacityError, EdgeListError, FasratioError, HypothesisError
from fasratio.experiments import (
    ExperimentConfig,
    ExperimentSummary,
    compare_to_bounds,
    run_fas_trials,
    run_ratio_trials,
)
from fasratio.fas import FasSolution, solve_bruteforce, solve_exact_dp, solve_local_search
from fasratio.graph import ArcSplit, Digraph, VertexOrdering, arc_split, ratio_event, relabel, sample_digraph
from fasratio.surface import SurfaceGrid, scan_surface, scaled_difference

__version__ = "0.1.0"
