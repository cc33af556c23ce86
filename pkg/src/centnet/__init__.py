"""centnet: centrality metric catalog and network-resilience experiments."""

from .errors import (
    CentnetError,
    ConvergenceError,
    GraphInputError,
    SingularMatrixError,
    SizeCapError,
    UnsupportedGraphError,
)
from .graph import (
    ComponentLabeling,
    Graph,
    build_graph,
    components,
    giant_fraction,
    max_flow,
    power_iteration,
    shortest_paths,
    solve_linear,
)
from .params import GroupSelectParams, MetricParams, ScoreVector
from .resilience import (
    AttackOutcome,
    AttackPlan,
    infectious_attack,
    mean_infected_per_attacker,
    non_infectious_attack,
    rank_targets,
    rgc,
    run_experiment,
)

__version__ = "0.1.0"

__all__ = [
    "AttackOutcome", "AttackPlan", "CentnetError", "ComponentLabeling",
    "ConvergenceError", "Graph", "GraphInputError", "GroupSelectParams",
    "MetricParams", "ScoreVector", "SingularMatrixError", "SizeCapError",
    "UnsupportedGraphError", "build_graph", "components", "giant_fraction",
    "infectious_attack", "max_flow", "mean_infected_per_attacker",
    "non_infectious_attack", "power_iteration", "rank_targets", "rgc",
    "run_experiment", "shortest_paths", "solve_linear",
]
