"""Distributed k-center: LOCAL, CONGEST and CLIQUE simulations, an exact
oracle, and the lower-bound constructions for the LOCAL and CONGEST models."""

__version__ = "0.1.0"

from .graph import (DisconnectedGraphError, Graph, GraphError, GraphFormatError, UnknownNodeError,
                    complete_graph, cycle_graph, diameter, distance_matrix, eccentricity, format_graph,
                    gnp_graph, parse_graph, path_graph, read_graph, relabel, sssp, star_graph, write_graph)
from .kcenter import (ORACLE_WORK_LIMIT, CenterSolution, DistanceSource, OracleLimitError, coverage_radius,
                      exact_distances, greedy_gonzalez, make_stretch_oracle, opt_k_bruteforce)
from .sim import (BandwidthError, IllegalRecipientError, Model, ModelConfig, NodeInput, NodeProgram,
                  NonTerminationError, SimStats, SimulationError, View, local_views, message_bits, run_sync)
from .congest import congest_kcenter
from .clique import clique_kcenter
from .local import (AdversaryError, RearrangementReport, ViewAlgorithm, bfs_depth, build_rearranged_cycle,
                    cycle_opt_k, local_kcenter_alg1, lower_bound_ratio, make_view_algorithm)
from .gadgets import (DisjointnessInstance, GadgetGraph, GadgetVariant, build_gkxy, build_gxy, verify_claim1,
                      verify_claim2, verify_lemma4)
