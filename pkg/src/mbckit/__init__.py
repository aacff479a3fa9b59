"""Group betweenness centrality maximization toolkit.

Core objects: :class:`Graph` and :class:`CostedInstance` for input,
:func:`apsp` and :class:`GbcOracle` for path counting and incremental
evaluation, the greedy and exact solvers, a budgeted-coverage bridge,
a tree dynamic program, and hard-instance generators.
"""

from .errors import (
    CapExceededError,
    ConsistencyError,
    ContractViolationError,
    DisconnectedGraphError,
    DuplicateEdgeError,
    FormatError,
    GraphLoadError,
    NotATreeError,
    SelfLoopError,
    UnknownLabelError,
)
from .graph import (
    CostedInstance,
    Graph,
    PathCounts,
    apsp,
    cost_array,
    enumerate_shortest_paths,
    on_shortest_path,
    parse_costs,
    parse_graph,
    parse_instance,
    to_instance_json,
)
from .gbc import GbcOracle, brandes_bc, gbc_direct, gbc_modified
from .greedy import Solution, greedy_modified, greedy_ratio, greedy_unit
from .exact import solve_exact
from .coverage import (
    CoverageInstance,
    CoverageSolution,
    coverage_greedy,
    coverage_weight,
    dump_coverage,
    reduce_to_coverage,
)
from .tree import DpTable, RootedTree, binarize, root_tree, tree_solve, tree_solve_full
from .generators import (
    ApxInstanceMeta,
    TightInstanceMeta,
    gen_apx,
    gen_random,
    gen_random_costs,
    gen_random_tree,
    gen_tight,
)

__version__ = "0.1.0"

__all__ = [
    "ApxInstanceMeta",
    "CapExceededError",
    "ConsistencyError",
    "ContractViolationError",
    "CostedInstance",
    "CoverageInstance",
    "CoverageSolution",
    "DisconnectedGraphError",
    "DpTable",
    "DuplicateEdgeError",
    "FormatError",
    "GbcOracle",
    "Graph",
    "GraphLoadError",
    "NotATreeError",
    "PathCounts",
    "RootedTree",
    "SelfLoopError",
    "Solution",
    "TightInstanceMeta",
    "UnknownLabelError",
    "apsp",
    "binarize",
    "brandes_bc",
    "cost_array",
    "coverage_greedy",
    "coverage_weight",
    "dump_coverage",
    "enumerate_shortest_paths",
    "gbc_direct",
    "gbc_modified",
    "gen_apx",
    "gen_random",
    "gen_random_costs",
    "gen_random_tree",
    "gen_tight",
    "greedy_modified",
    "greedy_ratio",
    "greedy_unit",
    "on_shortest_path",
    "parse_costs",
    "parse_graph",
    "parse_instance",
    "reduce_to_coverage",
    "root_tree",
    "solve_exact",
    "to_instance_json",
    "tree_solve",
    "tree_solve_full",
    "__version__",
]
