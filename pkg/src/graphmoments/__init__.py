"""Spectral analysis of graphs from local structural counts.

The package computes the first five spectral moments of an undirected simple
graph from degrees, triangles, quadrangles, and pentagons, then turns
truncated moment sequences into certified bounds: inner approximations of
the spectral support (hence bounds on the extreme eigenvalues) and optimal
upper bounds on the fraction of eigenvalues in an interval.  A dense
eigensolver is included purely as desk-scale ground truth.
"""

__version__ = "0.1.0"

from .graph import EgoSpec, Graph, bfs_distances, ego_subgraph, generate, load_edge_list
from .census import (CensusAggregates, NodeCensus, aggregates, brute_force_cycles,
                     edge_triangle_counts, node_census, walk_diagonal)
from .moments import (MomentSequence, load_moments, moments_from_aggregates,
                      moments_from_census, moments_from_spectrum, moments_from_walks)
from .hankel import (FeasibilityResult, HankelPair, LocalizingMatrix, hankel_pair,
                     is_feasible_hamburger, localizing_matrix, strong_duality_holds)
from .bounds import SupportBounds, bounds_bisect, bounds_s1, bounds_s2, solve_cubic
from .sdp import SdpBlock, SdpProblem, SdpSolution, min_eig, solve_sdp
from .eigencount import (EigencountResult, IntervalQuery, cdf_bound_sweep,
                         eigencount_upper, primal_lp_oracle)
from .estimators import (EstimatorReport, chung_lu_estimator, classical_bounds,
                         estimator_report, social_estimators)
from .spectrum import SpectrumSummary, eigenvalues, histogram, spectral_cdf
from .analysis import (AnalysisReport, EgoBatchResult, analyze_graph, analyze_moments,
                       pearson, report_csv, sample_ego)
from .errors import (ConsistencyError, DegenerateInputError, InfeasibleMomentsError,
                     ParseError, ValidationError)

__all__ = [name for name in dir() if not name.startswith("_")]
