"""Local greedy submodular maximisation under limited information.

Agents pick one strategy each, in the order of a directed acyclic information
graph, maximising their marginal gain against the choices they can see. The
package runs that greedy, computes the clique/colouring performance bounds of a
graph, and reproduces the random-graph experiments.
"""

from .bounds import (BoundReport, CliquePartition, bound_report, check_prop2,
                     detect_interconnected_cliques, lower_bound_clique, lower_bound_special,
                     upper_bound_alg1, upper_bound_chromatic, verify_theorem2)
from .core import (GroundSet, Instance, SubmodularOracle, brute_force_opt, check_monotone,
                   check_normalized, check_submodular, evaluate, marginal, telescoping_value)
from .dag import (BoundCertificate, Coloring, InfoDag, chromatic_number, clique_number,
                  greedy_topological_coloring, in_neighbors, new_dag, read_graph, write_graph)
from .errors import InvalidGraphError, InvalidInputError, SizeGuardError
from .experiments import (ExperimentConfig, run_ba_sweep, run_correlation_experiment,
                          run_ws_sweep, spearman)
from .graphgen import (gen_ba_dag, gen_bipartite_gap, gen_complete_dag, gen_empty, gen_er_dag,
                       gen_interconnected_cliques, gen_ws_dag)
from .greedy import Solution, TieBreak, approximation_ratio, run_sequential, run_synchronous
from .objectives import (CoverageGrid, Disk, DisjointReduction, make_adversarial, make_coverage,
                         make_universal, reduce_to_disjoint)

__version__ = "0.1.0"
