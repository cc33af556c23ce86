"""Targeted/random attack experiments: removal cascades, giant-component
measurement, and the relative-graph-centrality bookkeeping."""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import GraphInputError
from .graph import Graph, components
from .params import ScoreVector


@dataclass
class AttackPlan:
    """One experiment: attack kind, target sources, removal fractions.

    kind "random" is shorthand for a non-infectious plan whose only
    source is random removal.
    """

    kind: str                       # non-infectious | infectious | random
    sources: list                   # metric/strategy source specs
    phi_grid: list[float]
    beta: float = 0.05
    runs: int = 1
    rng_seed: int = 0

    def __post_init__(self):
        if self.kind not in ("non-infectious", "infectious", "random"):
            raise GraphInputError(f"unknown attack kind {self.kind!r}")
        if not 0.0 <= self.beta <= 1.0:
            raise GraphInputError("beta must lie in [0,1]")
        if self.runs < 1:
            raise GraphInputError("runs must be >= 1")
        grid = sorted(float(x) for x in self.phi_grid)
        if grid and (grid[0] < 0.0 or grid[-1] > 1.0):
            raise GraphInputError("phi values must lie in [0,1]")
        if not grid or grid[0] > 0.0:
            grid = [0.0] + grid
        self.phi_grid = grid
        if self.kind == "random":
            self.kind = "non-infectious"
            self.sources = ["random"]


@dataclass
class AttackOutcome:
    """Result of a single (source, phi, run) cell."""

    metric: str
    phi: float
    run: int
    giant_fraction: float
    seeds: int
    infected_total: int | None = None     # None for non-infectious rows
    node_states: list | None = None       # 'S' / 'R' final labels
    elapsed_ms: float = 0.0

    @property
    def infected_fraction(self) -> float | None:
        if self.infected_total is None or self.node_states is None:
            return None
        n = len(self.node_states)
        return self.infected_total / n if n else 0.0


@dataclass
class ExperimentResult:
    rows: list
    summary: dict                   # (metric, phi) -> (mean, std)
    errors: list = field(default_factory=list)


def rank_targets(scores: ScoreVector) -> list[int]:
    """Descending score, ascending node id on ties."""
    vals = scores.values
    return sorted(range(len(vals)), key=lambda v: (-vals[v], v))


def removal_count(phi: float, n: int) -> int:
    return min(n, math.ceil(phi * n - 1e-9))


def non_infectious_attack(g: Graph, ordering=None, seed_set=None,
                          phi_grid=(0.0,), metric: str = "") -> list[AttackOutcome]:
    """Remove static-ranked prefixes and report giant fractions.

    The ordering is computed once on the intact graph; the giant
    fraction is normalized by the original node count. A phi=0 row is
    always emitted.
    """
    n = g.n
    if seed_set is not None:
        phis = sorted({0.0, len(seed_set) / n if n else 0.0})
        prefix = list(seed_set)
    else:
        if ordering is None or len(ordering) != n:
            raise GraphInputError("ordering must cover every node")
        phis = sorted(set(phi_grid) | {0.0})
        prefix = list(ordering)
    rows = []
    for phi in phis:
        start = time.perf_counter()
        k = len(prefix) if seed_set is not None and phi > 0 \
            else removal_count(phi, n)
        mask = [True] * n
        for v in prefix[:k]:
            mask[v] = False
        giant = components(g, mask=mask).giant_size / n if n else 0.0
        elapsed = (time.perf_counter() - start) * 1000.0
        rows.append(AttackOutcome(metric, phi, 0, giant, seeds=k,
                                  elapsed_ms=elapsed))
    return rows


def infectious_attack(g: Graph, seeds, beta: float,
                      rng_seed: int = 0, metric: str = "",
                      phi: float = 0.0, run: int = 0) -> AttackOutcome:
    """Single-attempt SIR cascade.

    Seeds start Infected; each round every Infected node attacks each
    still-Susceptible out-neighbor that has never been attacked before,
    with success probability beta, then turns Removed. A node that
    survives its one attempt is immune for good (it stays in S). The
    giant fraction is measured on the subgraph induced by S nodes,
    normalized by the original node count.
    """
    if not 0.0 <= beta <= 1.0:
        raise GraphInputError("beta must lie in [0,1]")
    seeds = sorted(set(seeds))
    if not seeds:
        raise GraphInputError("infectious attack needs at least one seed")
    n = g.n
    start = time.perf_counter()
    rng = random.Random(rng_seed)
    S, I, R = 0, 1, 2
    state = [S] * n
    attempted = [False] * n
    for v in seeds:
        state[v] = I
        attempted[v] = True
    infected = list(seeds)
    ever = len(seeds)
    while infected:
        new = []
        for v in infected:
            for u, _ in g.adj[v]:
                if state[u] == S and not attempted[u]:
                    attempted[u] = True
                    if rng.random() < beta:
                        state[u] = I
                        new.append(u)
        for v in infected:
            state[v] = R
        ever += len(new)
        infected = new
    mask = [state[v] == S for v in range(n)]
    giant = components(g, mask=mask).giant_size / n if n else 0.0
    labels = ["S" if state[v] == S else "R" for v in range(n)]
    elapsed = (time.perf_counter() - start) * 1000.0
    return AttackOutcome(metric, phi, run, giant, seeds=len(seeds),
                         infected_total=ever, node_states=labels,
                         elapsed_ms=elapsed)


def mean_infected_per_attacker(outcome: AttackOutcome) -> float:
    """(infected_total - seeds) / seeds."""
    if outcome.infected_total is None:
        raise GraphInputError("outcome is not from an infectious attack")
    if outcome.seeds == 0:
        raise GraphInputError("outcome has zero seeds")
    return (outcome.infected_total - outcome.seeds) / outcome.seeds


def rgc(gc_before: float, gc_after: float) -> float:
    """Relative graph centrality: (GC - GC') / GC."""
    if gc_before == 0:
        raise GraphInputError("rgc needs a nonzero baseline value")
    return (gc_before - gc_after) / gc_before


# -- whole-plan driver ---------------------------------------------------------


def _source_name(source) -> str:
    if isinstance(source, str):
        return source
    if isinstance(source, dict):
        return source.get("metric") or source.get("strategy") or "?"
    return str(source)


def _resolve_ordering(g: Graph, source, plan: AttackPlan):
    """Static target ordering for a source, or None for random."""
    from . import registry

    if source == "random" or (isinstance(source, dict)
                              and source.get("metric") == "random"):
        return None
    if isinstance(source, dict) and "strategy" in source:
        budget = max((removal_count(phi, g.n) for phi in plan.phi_grid),
                     default=0)
        budget = max(budget, 1)
        result = registry.run_strategy(g, source["strategy"], budget,
                                       source.get("params") or {})
        order = list(result.seeds)
        rest = [v for v in range(g.n) if v not in set(order)]
        return order + rest
    metric_id = source if isinstance(source, str) else source["metric"]
    overrides = {} if isinstance(source, str) else (source.get("params") or {})
    scores = registry.compute_point_metric(g, metric_id, overrides)
    return rank_targets(scores)


def run_experiment(plan: AttackPlan, g: Graph,
                   threads: int = 1) -> ExperimentResult:
    """Execute a plan: per-source rankings, per-run simulations,
    per-(source, phi) mean and standard deviation."""
    rows: list[AttackOutcome] = []
    errors: list[tuple[str, str]] = []
    n = g.n
    for source in plan.sources:
        name = _source_name(source)
        try:
            ordering = _resolve_ordering(g, source, plan)
        except Exception as exc:    # per-metric failure: record, continue
            errors.append((name, f"{type(exc).__name__}: {exc}"))
            continue

        def one_run(run: int, ordering=ordering, name=name):
            out = []
            rng = random.Random(plan.rng_seed + run)
            order = ordering
            if order is None:
                order = list(range(n))
                rng.shuffle(order)
            if plan.kind == "non-infectious":
                for row in non_infectious_attack(
                        g, ordering=order,
                        phi_grid=plan.phi_grid, metric=name):
                    row.run = run
                    out.append(row)
            else:
                for phi in plan.phi_grid:
                    k = removal_count(phi, n)
                    if k == 0:
                        giant = components(g).giant_size / n if n else 0.0
                        out.append(AttackOutcome(name, phi, run, giant,
                                                 seeds=0, infected_total=0,
                                                 node_states=["S"] * n))
                        continue
                    out.append(infectious_attack(
                        g, order[:k], plan.beta,
                        rng_seed=plan.rng_seed + run, metric=name,
                        phi=phi, run=run))
            return out

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                for chunk in pool.map(one_run, range(plan.runs)):
                    rows.extend(chunk)
        else:
            for run in range(plan.runs):
                rows.extend(one_run(run))

    summary: dict = {}
    buckets: dict = {}
    for row in rows:
        buckets.setdefault((row.metric, row.phi), []).append(
            row.giant_fraction)
    for key, vals in buckets.items():
        mean = sum(vals) / len(vals)
        var = sum((x - mean) ** 2 for x in vals) / len(vals)
        summary[key] = (mean, math.sqrt(var))
    return ExperimentResult(rows, summary, errors)
