"""Point centralities defined as fixed points or decomposition sweeps."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceError,
    GraphInputError,
    UnsupportedGraphError,
)
from .graph import DENSE_CAP, Graph, power_iteration, spectral_radius
from .params import MetricParams, ScoreVector, score_vector


@dataclass
class DecompositionResult:
    """Outcome of an iterative pruning sweep."""

    shell_index: list[int]
    removal_order: list[tuple[int, int]]   # (node, stage value)

    def as_scores(self) -> ScoreVector:
        return score_vector("k-shell", [float(s) for s in self.shell_index])


def _mutual_adjacency(g: Graph) -> list[list[tuple[int, int]]]:
    """Per node: (neighbor, #arcs between them in either direction)."""
    if not g.directed:
        return [[(u, 1) for u, _ in g.adj[v]] for v in range(g.n)]
    out = []
    for v in range(g.n):
        cnt: dict[int, int] = {}
        for u, _ in g.adj[v]:
            cnt[u] = cnt.get(u, 0) + 1
        for u, _ in g.in_adj[v]:
            cnt[u] = cnt.get(u, 0) + 1
        out.append(sorted(cnt.items()))
    return out


def k_shell(g: Graph) -> DecompositionResult:
    """Iterative minimum-degree pruning; directed graphs use total degree."""
    n = g.n
    deg = g.degrees()
    nbrs = _mutual_adjacency(g)
    alive = [True] * n
    shell = [0] * n
    order: list[tuple[int, int]] = []
    remaining = n
    while remaining:
        k = min(deg[v] for v in range(n) if alive[v])
        queue = [v for v in range(n) if alive[v] and deg[v] <= k]
        while queue:
            v = queue.pop(0)
            if not alive[v]:
                continue
            alive[v] = False
            remaining -= 1
            shell[v] = k
            order.append((v, k))
            for u, c in nbrs[v]:
                if alive[u]:
                    deg[u] -= c
                    if deg[u] <= k:
                        queue.append(u)
    return DecompositionResult(shell, order)


def mixed_degree_decomposition(g: Graph,
                               lambda_mdd: float = 0.7) -> ScoreVector:
    """Pruning by residual + lambda * exhausted degree.

    lambda 0 reproduces the k-shell index, lambda 1 the degree.
    """
    if not 0.0 <= lambda_mdd <= 1.0:
        raise GraphInputError("lambda_mdd must lie in [0,1]")
    n = g.n
    k_r = g.degrees()
    k_e = [0] * n
    nbrs = _mutual_adjacency(g)
    alive = [True] * n
    score = [0.0] * n
    remaining = n
    while remaining:
        mixed = [k_r[v] + lambda_mdd * k_e[v] for v in range(n)]
        m_stage = min(mixed[v] for v in range(n) if alive[v])
        queue = [v for v in range(n) if alive[v] and mixed[v] <= m_stage]
        while queue:
            v = queue.pop(0)
            if not alive[v]:
                continue
            alive[v] = False
            remaining -= 1
            score[v] = m_stage
            for u, c in nbrs[v]:
                if alive[u]:
                    k_r[u] -= c
                    k_e[u] += c
                    if k_r[u] + lambda_mdd * k_e[u] <= m_stage:
                        queue.append(u)
    return score_vector("mixed-degree", score, {"lambda_mdd": lambda_mdd})


def coreness_family(g: Graph, variant: str = "nc") -> ScoreVector:
    """Neighborhood coreness: sum of neighbor shell indices (nc) or of
    neighbor nc values (nc-plus)."""
    shell = k_shell(g).shell_index
    nc = [float(sum(shell[u] for u in g.all_neighbors(v)))
          for v in range(g.n)]
    if variant == "nc":
        return score_vector("nc", nc)
    if variant == "nc-plus":
        ncp = [float(sum(nc[u] for u in g.all_neighbors(v)))
               for v in range(g.n)]
        return score_vector("nc-plus", ncp)
    raise GraphInputError(f"unknown coreness variant {variant!r}")


# -- eigen-style fixed points ---------------------------------------------


def _agg_lists(g: Graph, aggregate: str):
    """Adjacency used for score aggregation at a node.

    Directed graphs default to in-neighbors (prestige reading); the
    'out' flag flips to out-neighbors.
    """
    if not g.directed or aggregate == "in":
        return g.in_adj
    if aggregate == "out":
        return g.adj
    raise GraphInputError(f"unknown aggregation {aggregate!r}")


def eigen_family(g: Graph, metric: str,
                 params: MetricParams | None = None,
                 aggregate: str = "in") -> ScoreVector:
    params = params or MetricParams()
    if metric == "eigenvector":
        return _eigenvector(g, params, aggregate)
    if metric == "katz":
        return _katz(g, params, aggregate)
    if metric == "pagerank":
        return _pagerank(g, params)
    if metric == "contribution":
        return _contribution(g, params)
    if metric == "cumulative-nomination":
        return _cumulative_nomination(g, params)
    if metric == "dynamical-influence":
        return _dynamical_influence(g, params)
    raise GraphInputError(f"unknown eigen metric {metric!r}")


def _eigenvector(g: Graph, params: MetricParams,
                 aggregate: str) -> ScoreVector:
    if g.n == 0:
        return score_vector("eigenvector", [])
    lists = _agg_lists(g, aggregate)

    def action(x):
        # +I shift keeps the iteration convergent on bipartite/periodic
        # graphs without moving the eigenvector
        y = x.copy()
        for v in range(g.n):
            y[v] += sum(w * x[u] for u, w in lists[v])
        return y

    _, vec = power_iteration(action, np.ones(g.n),
                             tol=params.tol, max_iter=params.max_iter)
    return score_vector("eigenvector", vec,
                        {"aggregate": aggregate if g.directed else "n/a"})


def _katz(g: Graph, params: MetricParams, aggregate: str) -> ScoreVector:
    from .graph import solve_linear
    lam = spectral_radius(g)
    alpha = params.alpha
    if alpha is None:
        alpha = 0.85 / lam if lam > 0 else 0.85
    beta = 1.0 if params.beta is None else params.beta
    if lam > 0 and alpha >= 1.0 / lam:
        raise GraphInputError(
            f"katz alpha {alpha} must be below 1/lambda_max = {1.0 / lam:.6g}")
    lists = _agg_lists(g, aggregate)
    m = np.eye(g.n)
    for v in range(g.n):
        for u, w in lists[v]:
            m[v, u] -= alpha * w
    x = solve_linear(m, np.full(g.n, beta))
    return score_vector("katz", x, {"alpha": alpha, "beta": beta})


def _pagerank(g: Graph, params: MetricParams,
              normalized: bool = False) -> ScoreVector:
    alpha = 0.85 if params.alpha is None else params.alpha
    beta = 1.0 if params.beta is None else params.beta
    if not 0.0 < alpha < 1.0:
        raise GraphInputError("pagerank alpha must lie in (0,1)")
    n = g.n
    if n == 0:
        return score_vector("pagerank", [])
    outdeg = [max(g.out_degree(v), 1) for v in range(n)]
    x = [beta] * n
    for it in range(params.max_iter):
        nxt = [beta + alpha * sum(x[u] / outdeg[u]
                                  for u, _ in g.in_adj[v])
               for v in range(n)]
        gap = max(abs(a - b) for a, b in zip(nxt, x))
        x = nxt
        if gap < params.tol:
            break
    else:
        raise ConvergenceError("pagerank did not converge", residual=gap)
    if normalized:
        s = sum(x)
        x = [v / s for v in x]
    return score_vector("pagerank", x, {"alpha": alpha, "beta": beta,
                                        "normalized": normalized})


def pagerank(g: Graph, params: MetricParams | None = None,
             normalized: bool = False) -> ScoreVector:
    return _pagerank(g, params or MetricParams(), normalized)


def _jaccard_dissimilarity(g: Graph) -> dict:
    nbr = [set(g.all_neighbors(v)) for v in range(g.n)]
    out = {}
    for v in range(g.n):
        for u in g.all_neighbors(v):
            inter = len(nbr[u] & nbr[v])
            union = len(nbr[u] | nbr[v])
            out[(u, v)] = 1.0 - (inter / union if union else 0.0)
    return out


def _contribution(g: Graph, params: MetricParams) -> ScoreVector:
    if g.n == 0:
        return score_vector("contribution", [])
    dis = _jaccard_dissimilarity(g)
    lists = g.in_adj if g.directed else g.adj

    def action(x):
        y = x.copy()
        for v in range(g.n):
            y[v] += sum(w * dis[(u, v)] * x[u] for u, w in lists[v])
        return y

    _, vec = power_iteration(action, np.ones(g.n),
                             tol=params.tol, max_iter=params.max_iter)
    return score_vector("contribution", vec)


def _cumulative_nomination(g: Graph, params: MetricParams) -> ScoreVector:
    n = g.n
    if n == 0:
        return score_vector("cumulative-nomination", [])
    lists = g.in_adj if g.directed else g.adj
    p = [1.0 / n] * n
    for it in range(params.max_iter):
        raw = [p[v] + sum(p[u] for u, _ in lists[v]) for v in range(n)]
        total = sum(raw)
        nxt = [x / total for x in raw]
        gap = max(abs(a - b) for a, b in zip(nxt, p))
        p = nxt
        if gap < params.tol:
            return score_vector("cumulative-nomination", p)
    raise ConvergenceError("cumulative nomination did not converge",
                           residual=gap)


def _dynamical_influence(g: Graph, params: MetricParams) -> ScoreVector:
    """Left principal eigenvector of the dynamics matrix (M = A),
    normalized to sum 1."""
    if g.n == 0:
        return score_vector("dynamical-influence", [])

    def action(x):
        # left eigenvector of A = right eigenvector of A^T; shift as usual
        y = x.copy()
        for u in range(g.n):
            for v, w in g.adj[u]:
                y[v] += w * x[u]
        return y

    _, vec = power_iteration(action, np.ones(g.n),
                             tol=params.tol, max_iter=params.max_iter)
    s = float(np.sum(vec))
    return score_vector("dynamical-influence", vec / s)


# -- HITS and SALSA --------------------------------------------------------


def hits(g: Graph, tol: float = 1e-10,
         max_iter: int = 10000) -> tuple[ScoreVector, ScoreVector]:
    """Authority and hub scores: principal eigenvectors of A^T A and
    A A^T via alternating updates with L2 normalization."""
    if not g.directed:
        raise UnsupportedGraphError("hits needs a directed graph")
    n = g.n
    if g.m == 0:
        warnings.warn("hits on an edgeless graph: uniform fallback")
        u = [1.0 / np.sqrt(n)] * n if n else []
        return (score_vector("authority", u), score_vector("hub", u))
    auth = np.full(n, 1.0 / np.sqrt(n))
    hub = np.full(n, 1.0 / np.sqrt(n))
    for _ in range(max_iter):
        new_auth = np.zeros(n)
        for u in range(n):
            for v, w in g.adj[u]:
                new_auth[v] += w * hub[u]
        na = np.linalg.norm(new_auth)
        if na > 0:
            new_auth /= na
        new_hub = np.zeros(n)
        for u in range(n):
            hv = 0.0
            for v, w in g.adj[u]:
                hv += w * new_auth[v]
            new_hub[u] = hv
        nh = np.linalg.norm(new_hub)
        if nh > 0:
            new_hub /= nh
        gap = max(np.max(np.abs(new_auth - auth)),
                  np.max(np.abs(new_hub - hub)))
        auth, hub = new_auth, new_hub
        if gap < tol:
            break
    else:
        raise ConvergenceError("hits did not converge", residual=gap)
    return (score_vector("authority", auth), score_vector("hub", hub))


def salsa(g: Graph, tol: float = 1e-10,
          max_iter: int = 10000) -> tuple[ScoreVector, ScoreVector]:
    """Stationary scores of the two-step random walks on the bipartite
    hub/authority expansion; each side sums to 1, absent nodes score 0."""
    if not g.directed:
        raise UnsupportedGraphError("salsa needs a directed graph")
    n = g.n
    outdeg = [g.out_degree(v) for v in range(n)]
    indeg = [g.in_degree(v) for v in range(n)]
    hub_side = [v for v in range(n) if outdeg[v] > 0]
    auth_side = [v for v in range(n) if indeg[v] > 0]

    def step_hub(pi):
        mid = [0.0] * n
        for u in hub_side:
            share = pi[u] / outdeg[u]
            for x, _ in g.adj[u]:
                mid[x] += share
        out = [0.0] * n
        for x in auth_side:
            share = mid[x] / indeg[x]
            for v, _ in g.in_adj[x]:
                out[v] += share
        return out

    def step_auth(pi):
        mid = [0.0] * n
        for u in auth_side:
            share = pi[u] / indeg[u]
            for x, _ in g.in_adj[u]:
                mid[x] += share
        out = [0.0] * n
        for x in hub_side:
            share = mid[x] / outdeg[x]
            for v, _ in g.adj[x]:
                out[v] += share
        return out

    def stationary(side, step):
        if not side:
            return [0.0] * n
        pi = [0.0] * n
        for v in side:
            pi[v] = 1.0 / len(side)
        for _ in range(max_iter):
            nxt = step(pi)
            total = sum(nxt)
            nxt = [x / total for x in nxt]
            gap = max(abs(a - b) for a, b in zip(nxt, pi))
            pi = nxt
            if gap < tol:
                return pi
        raise ConvergenceError("salsa did not converge", residual=gap)

    hub_scores = stationary(hub_side, step_hub)
    auth_scores = stationary(auth_side, step_auth)
    return (score_vector("salsa-authority", auth_scores),
            score_vector("salsa-hub", hub_scores))


def leader_rank(g: Graph, tol: float = 1e-10,
                max_iter: int = 100000) -> ScoreVector:
    """Ground-node random redistribution; score s_v(t_e) + s_g(t_e)/n."""
    if not g.directed:
        raise UnsupportedGraphError("leaderrank needs a directed graph")
    n = g.n
    if n == 0:
        return score_vector("leaderrank", [])
    ground = n
    outdeg = [g.out_degree(v) + 1 for v in range(n)] + [n]
    s = [1.0] * n + [0.0]
    for _ in range(max_iter):
        nxt = [0.0] * (n + 1)
        for v in range(n):
            nxt[v] = s[ground] / n + sum(s[u] / outdeg[u]
                                         for u, _ in g.in_adj[v])
        nxt[ground] = sum(s[v] / outdeg[v] for v in range(n))
        gap = max(abs(a - b) for a, b in zip(nxt, s))
        s = nxt
        if gap < tol:
            break
    else:
        raise ConvergenceError("leaderrank did not converge", residual=gap)
    final = [s[v] + s[ground] / n for v in range(n)]
    return score_vector("leaderrank", final)


# -- walk-sum metrics -------------------------------------------------------


def diffusion_centrality(g: Graph, q: float = 0.1, T: int = 10) -> ScoreVector:
    """Sum over t = 1..T of (qA)^t applied to the all-ones vector."""
    if not 0.0 < q <= 1.0:
        raise GraphInputError("q must lie in (0,1]")
    if T < 1:
        raise GraphInputError("T must be >= 1")
    n = g.n
    x = [1.0] * n
    acc = [0.0] * n
    for _ in range(T):
        nxt = [q * sum(w * x[u] for u, w in g.adj[v]) for v in range(n)]
        x = nxt
        for v in range(n):
            acc[v] += x[v]
    return score_vector("diffusion", acc, {"q": q, "T": T})


def subgraph_centrality(g: Graph) -> ScoreVector:
    """Weighted closed-walk count: sum_j (u_j^v)^2 e^{lambda_j}."""
    if g.directed:
        raise UnsupportedGraphError(
            "subgraph centrality needs an undirected graph")
    if g.n > DENSE_CAP:
        raise GraphInputError(
            f"subgraph centrality is dense-only (n <= {DENSE_CAP})")
    if g.n == 0:
        return score_vector("subgraph", [])
    a = g.adjacency_matrix()
    lam, vecs = np.linalg.eigh(a)
    vals = (vecs ** 2) @ np.exp(lam)
    return score_vector("subgraph", vals)
