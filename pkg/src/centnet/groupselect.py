"""Seed-set selection strategies that avoid naive top-K clustering.

All strategies are deterministic: candidate ties break toward the
lowest node id.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GraphInputError
from .graph import INF, Graph, shortest_paths
from .params import GroupSelectParams


@dataclass
class SelectionStep:
    chosen: int
    score: float
    excluded: int        # candidates ruled out at this step


@dataclass
class SelectionResult:
    seeds: list[int]
    per_step: list[SelectionStep] = field(default_factory=list)
    stop_reason: str = "budget"

    def __post_init__(self):
        if len(set(self.seeds)) != len(self.seeds):
            raise GraphInputError("selection produced duplicate seeds")


def _argmax(scores: dict) -> tuple[int, float]:
    """Highest score, lowest node id on ties."""
    best_v, best_s = None, -INF
    for v in sorted(scores):
        s = scores[v]
        if s > best_s:
            best_v, best_s = v, s
    return best_v, best_s


# -- DegreeDistance and its improvements --------------------------------------


def degree_distance(g: Graph, params: GroupSelectParams | None = None,
                    variant: str = "plain") -> SelectionResult:
    """Greedy max degree with a minimum-distance spacing constraint.

    plain: candidates closer than t_td to any seed are excluded.
    fidd:  close candidates stay admissible while their pooled count of
           common neighbors / neighbors-of-neighbors with the seed set
           is below theta.
    sidd:  additionally drops candidates whose two-hop activation
           influence on some seed exceeds beta_inf.
    """
    if variant not in ("plain", "fidd", "sidd"):
        raise GraphInputError(f"unknown degree-distance variant {variant!r}")
    params = params or GroupSelectParams()
    if params.budget > g.n:
        raise GraphInputError("budget exceeds node count")
    deg = g.degrees()
    nbr = [set(g.all_neighbors(v)) for v in range(g.n)]
    seeds: list[int] = []
    steps: list[SelectionStep] = []
    seed_dist: dict[int, list[float]] = {}

    def admissible(u: int, seed_nbrs: set, seed_nbrs2: set) -> bool:
        near = [s for s in seeds if seed_dist[s][u] < params.t_td]
        if not near:
            return True
        if variant == "plain":
            return False
        pooled = len(nbr[u] & seed_nbrs) + len(nbr[u] & seed_nbrs2)
        if pooled >= params.theta:
            return False
        if variant == "sidd":
            p = params.p
            for s in near:
                direct = p if u in nbr[s] else 0.0
                influence = direct + sum(
                    p * p for w in nbr[u] & nbr[s])
                if influence > params.beta_inf:
                    return False
        return True

    while len(seeds) < params.budget:
        # pooled common-neighbor sets of the current seed set
        seed_nbrs: set = set()
        seed_nbrs2: set = set()
        for s in seeds:
            seed_nbrs |= nbr[s]
            for w in nbr[s]:
                seed_nbrs2 |= nbr[w]
        seed_nbrs -= set(seeds)
        seed_nbrs2 -= set(seeds)
        scores = {}
        excluded = 0
        for u in range(g.n):
            if u in seeds:
                continue
            if admissible(u, seed_nbrs, seed_nbrs2):
                scores[u] = float(deg[u])
            else:
                excluded += 1
        if not scores:
            return SelectionResult(seeds, steps, "infeasible")
        v, s = _argmax(scores)
        seeds.append(v)
        seed_dist[v] = shortest_paths(g, v).dist
        steps.append(SelectionStep(v, s, excluded))
    return SelectionResult(seeds, steps, "budget")


# -- discount heuristics -------------------------------------------------------


def single_discount(g: Graph, budget: int) -> SelectionResult:
    """Iteratively pick argmax of degree minus links into the seed set."""
    if budget > g.n:
        raise GraphInputError("budget exceeds node count")
    deg = g.degrees()
    nbr = [set(g.all_neighbors(v)) for v in range(g.n)]
    seeds: list[int] = []
    steps = []
    chosen: set = set()
    while len(seeds) < budget:
        scores = {u: float(deg[u] - len(nbr[u] & chosen))
                  for u in range(g.n) if u not in chosen}
        v, s = _argmax(scores)
        seeds.append(v)
        chosen.add(v)
        steps.append(SelectionStep(v, s, 0))
    return SelectionResult(seeds, steps, "budget")


def degree_discount(g: Graph, budget: int, p: float = 0.05) -> SelectionResult:
    """Independent-cascade-aware discount: d - 2t - (d - t) t p."""
    if budget > g.n:
        raise GraphInputError("budget exceeds node count")
    if not 0.0 <= p <= 1.0:
        raise GraphInputError("p must lie in [0,1]")
    deg = g.degrees()
    nbr = [set(g.all_neighbors(v)) for v in range(g.n)]
    seeds: list[int] = []
    steps = []
    chosen: set = set()
    while len(seeds) < budget:
        scores = {}
        for u in range(g.n):
            if u in chosen:
                continue
            t = len(nbr[u] & chosen)
            scores[u] = deg[u] - 2.0 * t - (deg[u] - t) * t * p
        v, s = _argmax(scores)
        seeds.append(v)
        chosen.add(v)
        steps.append(SelectionStep(v, s, 0))
    return SelectionResult(seeds, steps, "budget")


def degree_punishment(g: Graph, budget: int, omega: float = 0.05,
                      r: int = 2, initial_seeds=()) -> SelectionResult:
    """Penalize candidates by walk-counted closeness to the seed set.

    Punishment from seed u to candidate v is deg(u) * sum over walk
    lengths h < r of (A^h)_{uv} omega^h, evaluated on the intact graph.
    `initial_seeds` pre-populates the seed set (they count toward the
    budget but produce no selection step).
    """
    if budget > g.n:
        raise GraphInputError("budget exceeds node count")
    if r < 2:
        raise GraphInputError("r must be >= 2")
    if not 0.0 <= omega <= 1.0:
        raise GraphInputError("omega must lie in [0,1]")
    n = g.n
    deg = g.degrees()
    seeds: list[int] = []
    steps = []
    penalty = [0.0] * n            # sum over seeds of p_{u -> v}

    def absorb(v: int):
        # accumulate the new seed's punishment: walks of length 1..r-1
        walk = [0.0] * n
        walk[v] = 1.0
        scale = omega
        for _ in range(1, r):
            nxt = [0.0] * n
            for a in range(n):
                wa = walk[a]
                if wa:
                    for b, _w in g.adj[a]:
                        nxt[b] += wa
            for b in range(n):
                penalty[b] += deg[v] * nxt[b] * scale
            walk = nxt
            scale *= omega

    for v in initial_seeds:
        seeds.append(v)
        absorb(v)
    while len(seeds) < budget:
        scores = {u: deg[u] - penalty[u]
                  for u in range(n) if u not in seeds}
        v, s = _argmax(scores)
        seeds.append(v)
        steps.append(SelectionStep(v, s, 0))
        absorb(v)
    return SelectionResult(seeds, steps, "budget")


# -- collective influence ------------------------------------------------------


def _frontier_degree_sum(adj_sets, res_deg, removed, v, ell) -> float:
    """Sum of (residual degree - 1) over the exact-distance-ell shell."""
    seen = {v}
    frontier = [v]
    for _ in range(ell):
        nxt = []
        for a in frontier:
            for b in adj_sets[a]:
                if b not in seen and not removed[b]:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
        if not frontier:
            break
    return float(sum(res_deg[b] - 1 for b in frontier))


def collective_influence(g: Graph, budget: int | None = None,
                         ell: int = 2,
                         stop_on_lambda: bool = False) -> SelectionResult:
    """Optimal-percolation heuristic: repeatedly remove the node with the
    highest CI on the residual graph.

    CI(v) = (deg v - 1) * sum over the distance-ell frontier of
    (deg u - 1), degrees taken in the residual graph. With
    `stop_on_lambda`, selection ends once the non-backtracking eigenvalue
    estimate lambda = (sum CI / (n <k>))^(1/(ell+1)) drops to 1; <k> is
    the mean degree of the ORIGINAL network.
    """
    if ell < 1:
        raise GraphInputError("ell must be >= 1")
    if budget is None and not stop_on_lambda:
        raise GraphInputError("need a budget or the stopping rule")
    n = g.n
    if budget is not None and budget > n:
        raise GraphInputError("budget exceeds node count")
    adj_sets = [set(g.all_neighbors(v)) for v in range(n)]
    res_deg = [len(adj_sets[v]) for v in range(n)]
    removed = [False] * n
    mean_deg = sum(res_deg) / n if n else 0.0
    seeds: list[int] = []
    steps = []
    stop_reason = "budget"
    limit = budget if budget is not None else n
    while len(seeds) < limit:
        ci = {}
        for v in range(n):
            if removed[v]:
                continue
            ci[v] = (res_deg[v] - 1) * _frontier_degree_sum(
                adj_sets, res_deg, removed, v, ell)
        if stop_on_lambda and n and mean_deg > 0:
            lam = (sum(ci.values()) / (n * mean_deg)) ** (1.0 / (ell + 1))
            if lam <= 1.0:
                stop_reason = "stopping-rule"
                break
        if not ci:
            stop_reason = "exhausted"
            break
        v, s = _argmax(ci)
        seeds.append(v)
        steps.append(SelectionStep(v, s, 0))
        removed[v] = True
        for b in adj_sets[v]:
            if not removed[b]:
                res_deg[b] -= 1
    return SelectionResult(seeds, steps, stop_reason)


def collective_influence_lambda(g: Graph, removed_nodes,
                                ell: int = 2) -> float:
    """The stopping-rule estimate on the residual graph after removals."""
    n = g.n
    adj_sets = [set(g.all_neighbors(v)) for v in range(n)]
    removed = [False] * n
    for v in removed_nodes:
        removed[v] = True
    res_deg = [sum(1 for b in adj_sets[v] if not removed[b])
               for v in range(n)]
    mean_deg = sum(len(s) for s in adj_sets) / n if n else 0.0
    total = 0.0
    for v in range(n):
        if not removed[v]:
            total += (res_deg[v] - 1) * _frontier_degree_sum(
                adj_sets, res_deg, removed, v, ell)
    if n == 0 or mean_deg == 0:
        return 0.0
    return (total / (n * mean_deg)) ** (1.0 / (ell + 1))
