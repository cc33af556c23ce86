"""Point centralities requiring whole-graph path or flow computations."""

from __future__ import annotations

import math

import numpy as np

from .errors import GraphInputError, UnsupportedGraphError
from .graph import (
    INF,
    Graph,
    components,
    max_flow,
    power_iteration,
    shortest_paths,
    solve_linear,
)
from .iterative import k_shell
from .params import MetricParams, ScoreVector, score_vector

_CLAMP = 1e-12


def _require_connected(g: Graph, name: str):
    if g.n and components(g).giant_size != g.n:
        raise UnsupportedGraphError(f"{name} needs a connected graph")


# -- shortest-path betweenness family ------------------------------------


def _dependencies(sp) -> list[float]:
    """Brandes dependency accumulation over one shortest-path DAG."""
    delta = [0.0] * len(sp.dist)
    sigma = sp.sigma
    preds = sp.preds
    for w in reversed(sp.order):
        dw = delta[w]
        coeff = (1.0 + dw) / sigma[w]
        for v in preds[w]:
            delta[v] += sigma[v] * coeff
    return delta


def betweenness_family(g: Graph, metric: str = "betweenness",
                       params: MetricParams | None = None,
                       normalized: bool = False) -> ScoreVector:
    """Betweenness, L-betweenness, percolation, and load centralities.

    Betweenness sums over unordered pairs on undirected graphs and
    ordered pairs on directed graphs; the normalization divisor is the
    Freeman pair count.
    """
    params = params or MetricParams()
    n = g.n
    if metric in ("betweenness", "l-betweenness"):
        cap = None if metric == "betweenness" else float(params.L)
        acc = [0.0] * n
        for s in range(n):
            sp = shortest_paths(g, s, cap=cap)
            delta = _dependencies(sp)
            for v in range(n):
                if v != s:
                    acc[v] += delta[v]
        if not g.directed:
            acc = [x / 2.0 for x in acc]
        if normalized:
            acc = _freeman_normalize(acc, n, g.directed)
        extra = {"L": params.L} if metric == "l-betweenness" else {}
        return score_vector(metric, acc, {"normalized": normalized, **extra})

    if metric == "percolation":
        states = params.percolation_states
        if states is None:
            states = [1.0] * n      # fully percolated network
        if len(states) != n or not any(x > 0 for x in states):
            raise GraphInputError(
                "percolation centrality needs per-node states with at "
                "least one positive entry")
        total = sum(states)
        acc = [0.0] * n
        for r in range(n):
            if states[r] == 0.0:
                continue
            sp = shortest_paths(g, r)
            delta = _dependencies(sp)
            xr = states[r]
            for v in range(n):
                if v != r:
                    acc[v] += xr * delta[v]
        vals = [0.0] * n
        if n > 2:
            for v in range(n):
                rest = total - states[v]
                if rest > 0.0:
                    vals[v] = acc[v] / ((n - 2) * rest)
        return score_vector("percolation", vals)

    if metric == "load":
        return _load(g)

    raise GraphInputError(f"unknown betweenness metric {metric!r}")


def _freeman_normalize(acc, n, directed):
    pairs = (n - 1) * (n - 2) if directed else (n - 1) * (n - 2) / 2.0
    if pairs <= 0:
        return [0.0] * n
    return [x / pairs for x in acc]


def _load(g: Graph) -> ScoreVector:
    """Goh's packet-splitting load: unit packets split evenly at each
    branching point, accumulated over ordered pairs."""
    n = g.n
    acc = [0.0] * n
    for s in range(n):
        sp = shortest_paths(g, s)
        amount = [0.0] * n
        for v in sp.order:
            amount[v] += 1.0
        for w in reversed(sp.order):
            preds = sp.preds[w]
            if not preds:
                continue
            share = amount[w] / len(preds)
            for v in preds:
                amount[v] += share
        for v in range(n):
            if v != s and sp.dist[v] < INF:
                acc[v] += amount[v] - 1.0
    return score_vector("load", acc)


# -- flow family ----------------------------------------------------------


def flow_betweenness(g: Graph, normalized: bool = False,
                     pair_distance_cap: int | None = None,
                     with_diagnostics: bool = False):
    """Max-flow betweenness: unordered source-sink pairs on undirected
    graphs (Freeman pair convention, like betweenness), ordered pairs on
    directed graphs.

    The deterministic augmenting order of graph max flow defines the
    flow decomposition; on undirected graphs the lower node id acts as
    the source. `pair_distance_cap` restricts to pairs within that many
    hops (the tractability device used for large graphs).
    """
    n = g.n
    acc = [0.0] * n
    skipped = 0
    for s in range(n):
        reach = None
        if pair_distance_cap is not None:
            d = shortest_paths(g, s, cap=float(pair_distance_cap)).dist
            reach = [t for t in range(n) if t != s and d[t] < INF]
            skipped += (n - 1) - len(reach)
        targets = reach if reach is not None else \
            [t for t in range(n) if t != s]
        if not g.directed:
            targets = [t for t in targets if t > s]
        for t in targets:
            res = max_flow(g, s, t)
            if res.value == 0:
                continue
            for v in range(n):
                if v == s or v == t:
                    continue
                contrib = res.throughflow[v]
                if normalized:
                    contrib /= res.value
                acc[v] += contrib
    sv = score_vector("flow-betweenness", acc,
                      {"normalized": normalized,
                       "pair_distance_cap": pair_distance_cap})
    if with_diagnostics:
        return sv, {"skipped_pairs": skipped}
    return sv


def _grounded_inverse(g: Graph, nodes: list[int]) -> np.ndarray:
    """Inverse of the weighted Laplacian on `nodes` with the last node
    grounded, embedded back as an n x n matrix (zero row/column)."""
    idx = {v: i for i, v in enumerate(nodes)}
    k = len(nodes)
    lap = np.zeros((k, k))
    for v in nodes:
        i = idx[v]
        for u, w in g.adj[v]:
            if u in idx:
                lap[i, i] += w
                lap[i, idx[u]] -= w
    tinv = solve_linear(lap[:-1, :-1])
    full = np.zeros((g.n, g.n))
    head = np.asarray(nodes[:-1])
    full[np.ix_(head, head)] = tinv
    return full


def _component_nodes(g: Graph) -> list[list[int]]:
    lab = components(g)
    out: list[list[int]] = [[] for _ in lab.sizes]
    for v, c in enumerate(lab.component_id):
        out[c].append(v)
    return out


def current_flow_betweenness(g: Graph,
                             per_component: bool = False) -> ScoreVector:
    """Electrical-current betweenness, ordered pairs, prefactor
    1/((n-1)(n-2)); edges as unit (or weight) conductances."""
    if g.directed:
        raise UnsupportedGraphError(
            "current-flow betweenness needs an undirected graph")
    comps = _component_nodes(g)
    if len(comps) > 1 and not per_component:
        raise UnsupportedGraphError(
            "current-flow betweenness on a disconnected graph needs "
            "per_component=True")
    vals = [0.0] * g.n
    for nodes in comps:
        nc = len(nodes)
        if nc < 3:
            continue
        tmat = _grounded_inverse(g, nodes)
        inside = set(nodes)
        edge_sum = {v: 0.0 for v in nodes}
        for v in nodes:
            for u, w in g.adj[v]:
                if u < v or u not in inside:
                    continue
                f = w * (tmat[v, nodes] - tmat[u, nodes])
                f.sort()
                # sum over node pairs s<t of |F(s)-F(t)| via sorted prefix
                i = np.arange(nc)
                s_e = float(np.sum((2 * i - nc + 1) * f))
                edge_sum[v] += s_e
                edge_sum[u] += s_e
        for v in nodes:
            vals[v] = (edge_sum[v] - (nc - 1)) / ((nc - 1) * (nc - 2))
    return score_vector("current-flow-betweenness", vals)


def current_flow_closeness(g: Graph,
                           per_component: bool = False) -> ScoreVector:
    """Closeness under effective resistances, aligned with information
    centrality (count-n prefactor)."""
    if g.directed:
        raise UnsupportedGraphError(
            "current-flow closeness needs an undirected graph")
    comps = _component_nodes(g)
    if len(comps) > 1 and not per_component:
        raise UnsupportedGraphError(
            "current-flow closeness on a disconnected graph needs "
            "per_component=True")
    vals = [0.0] * g.n
    for nodes in comps:
        nc = len(nodes)
        if nc < 2:
            continue
        tmat = _grounded_inverse(g, nodes)
        for v in nodes:
            total = 0.0
            for w in nodes:
                if w != v:
                    total += tmat[v, v] + tmat[w, w] - 2 * tmat[v, w]
            vals[v] = nc / total
    return score_vector("current-flow-closeness", vals)


def flow_family(g: Graph, metric: str, normalized: bool = False,
                per_component: bool = False,
                pair_distance_cap: int | None = None) -> ScoreVector:
    if metric == "flow-betweenness":
        return flow_betweenness(g, normalized=normalized,
                                pair_distance_cap=pair_distance_cap)
    if metric == "current-flow-betweenness":
        return current_flow_betweenness(g, per_component=per_component)
    if metric == "current-flow-closeness":
        return current_flow_closeness(g, per_component=per_component)
    raise GraphInputError(f"unknown flow metric {metric!r}")


def random_walk_betweenness(g: Graph) -> ScoreVector:
    """Newman's random-walk betweenness by direct pair accumulation.

    Deliberately naive (O(n^2 m)): this is the independent oracle for
    the current-flow equivalence claim, so it must not share the
    sorted-prefix shortcut with current_flow_betweenness.
    """
    if g.directed:
        raise UnsupportedGraphError(
            "random-walk betweenness needs an undirected graph")
    _require_connected(g, "random-walk betweenness")
    n = g.n
    if n < 2:
        return score_vector("random-walk-betweenness", [0.0] * n)
    nodes = list(range(n))
    tmat = _grounded_inverse(g, nodes)
    raw = [0.0] * n
    for s in range(n):
        for t in range(s + 1, n):
            for v in range(n):
                if v == s or v == t:
                    raw[v] += 1.0
                    continue
                cur = 0.0
                for u, w in g.adj[v]:
                    cur += w * abs(tmat[v, s] - tmat[v, t]
                                   - tmat[u, s] + tmat[u, t])
                raw[v] += 0.5 * cur
    denom = 0.5 * n * (n - 1)
    return score_vector("random-walk-betweenness",
                        [x / denom for x in raw])


# -- closeness family -------------------------------------------------------


def closeness_family(g: Graph, metric: str = "closeness",
                     params: MetricParams | None = None,
                     reachable_only: bool = False,
                     with_diagnostics: bool = False):
    """Closeness, Bavelas ratio, residual/decay, eccentricity,
    straightness.

    Default disconnected handling is strict: a node with any unreachable
    peer scores 0 for closeness/bavelas/eccentricity. With
    `reachable_only`, sums run over the node's reachable set instead.
    Residual and straightness always skip unreachable pairs.
    """
    params = params or MetricParams()
    n = g.n
    skipped = 0
    if metric == "straightness" and g.coords is None:
        raise GraphInputError("straightness needs node coordinates")

    if metric == "bavelas":
        base, diag = closeness_family(g, "closeness", params,
                                      reachable_only, True)
        total = sum(base.values)
        if total == 0:
            vals = [0.0] * n
        else:
            vals = [x / total for x in base.values]
        sv = score_vector("bavelas", vals)
        return (sv, diag) if with_diagnostics else sv

    vals = [0.0] * n
    for v in range(n):
        dist = shortest_paths(g, v).dist
        reach = [dist[u] for u in range(n) if u != v and dist[u] < INF]
        miss = (n - 1) - len(reach)
        skipped += miss
        if metric == "closeness":
            if not reach or (miss and not reachable_only):
                vals[v] = 0.0
            else:
                vals[v] = 1.0 / sum(reach)
        elif metric == "eccentricity":
            if not reach or (miss and not reachable_only):
                vals[v] = 0.0
            else:
                vals[v] = 1.0 / max(reach)
        elif metric == "residual":
            vals[v] = sum(params.delta_decay ** d for d in reach)
        elif metric == "straightness":
            tot = 0.0
            cnt = 0
            for u in range(n):
                if u == v or dist[u] == INF:
                    continue
                de = math.dist(g.coords[v], g.coords[u])
                tot += de / dist[u]
                cnt += 1
            vals[v] = tot / cnt if cnt else 0.0
        else:
            raise GraphInputError(f"unknown closeness metric {metric!r}")
    extra = {"delta": params.delta_decay} if metric == "residual" else {}
    sv = score_vector(metric, vals,
                      {"reachable_only": reachable_only, **extra})
    if with_diagnostics:
        return sv, {"skipped_pairs": skipped}
    return sv


def information_centrality(g: Graph) -> ScoreVector:
    """Stephenson-Zelen information centrality via C = D - A + J."""
    if g.directed:
        raise UnsupportedGraphError(
            "information centrality needs an undirected graph")
    _require_connected(g, "information centrality")
    n = g.n
    if n < 2:
        return score_vector("information", [0.0] * n)
    a = g.adjacency_matrix()
    d = np.diag(a.sum(axis=1))
    c = solve_linear(d - a + np.ones((n, n)))
    diag = np.diag(c)
    vals = []
    for v in range(n):
        denom = float(np.sum(diag + diag[v] - 2.0 * c[v, :]))
        vals.append(n / denom)
    return score_vector("information", vals)


# -- k-shell tie-broken ranking -------------------------------------------


def improved_method(g: Graph, with_diagnostics: bool = False):
    """Rank k-shell ties by distance to the network core.

    Returns [(node, shell, theta)] sorted by shell descending, theta
    ascending, node id ascending. Unreachable core members are skipped
    from the distance sums (count reported via diagnostics).
    """
    shell = k_shell(g).shell_index
    ks_max = max(shell, default=0)
    core = [v for v in range(g.n) if shell[v] == ks_max]
    skipped = 0
    rows = []
    for v in range(g.n):
        dist = shortest_paths(g, v).dist
        total = 0.0
        for u in core:
            if dist[u] == INF:
                skipped += 1
            else:
                total += dist[u]
        theta = (ks_max - shell[v] + 1) * total
        rows.append((v, shell[v], theta))
    rows.sort(key=lambda r: (-r[1], r[2], r[0]))
    ranked = [(v, s, t) for v, s, t in rows]
    if with_diagnostics:
        return ranked, {"skipped_pairs": skipped}
    return ranked


def improved_method_scores(g: Graph) -> ScoreVector:
    """Rank-derived scores so the ordering plugs into attack rankings."""
    ranked = improved_method(g)
    vals = [0.0] * g.n
    for pos, (v, _, _) in enumerate(ranked):
        vals[v] = float(g.n - pos)
    return score_vector("improved-method", vals)


# -- generalized weighted (GDSP) family -------------------------------------


def _alpha_distance_graph(g: Graph, alpha: float) -> Graph:
    """Reweight: edge strength w becomes traversal length 1/w^alpha."""
    from .graph import graph_from_arcs
    arcs = []
    for v in range(g.n):
        for u, w in g.adj[v]:
            if g.directed or v < u:
                arcs.append((v, u, 1.0 / (w ** alpha)))
    return graph_from_arcs(g.n, g.directed, arcs)


def generalized_weighted_family(g: Graph, metric: str,
                                alpha: float = 0.5) -> ScoreVector:
    """Degree/closeness/betweenness interpolating unweighted (alpha 0)
    and strength-weighted (alpha 1) readings."""
    if alpha < 0:
        raise GraphInputError("alpha must be >= 0")
    if metric == "gdsp-degree":
        vals = []
        for v in range(g.n):
            k = float(g.degree(v))
            strength = sum(w for _, w in g.adj[v])
            if g.directed:
                strength += sum(w for _, w in g.in_adj[v])
            vals.append((k ** (1.0 - alpha)) * (strength ** alpha))
        return score_vector("gdsp-degree", vals, {"alpha": alpha})
    if metric not in ("gdsp-closeness", "gdsp-betweenness"):
        raise GraphInputError(f"unknown generalized metric {metric!r}")
    h = g if (alpha == 0.0 and g.unit_weights) else \
        _alpha_distance_graph(g, alpha)
    if metric == "gdsp-closeness":
        base = closeness_family(h, "closeness")
        return score_vector("gdsp-closeness", base.values, {"alpha": alpha})
    base = betweenness_family(h, "betweenness")
    return score_vector("gdsp-betweenness", base.values, {"alpha": alpha})


def weight_neighborhood(g: Graph, benchmark: str = "degree",
                        alpha: float = 0.5,
                        params: MetricParams | None = None) -> ScoreVector:
    """Benchmark score plus degree-power-weighted neighbor scores."""
    if not 0.0 <= alpha <= 1.0:
        raise GraphInputError("alpha must lie in [0,1]")
    phi = _benchmark_scores(g, benchmark, params)
    deg = g.degrees()
    weights = []
    for v in range(g.n):
        for u, _ in g.adj[v]:
            if g.directed or v < u:
                weights.append((deg[u] * deg[v]) ** alpha)
    mean_w = sum(weights) / len(weights) if weights else 1.0
    vals = []
    for v in range(g.n):
        s = phi[v]
        for u in g.all_neighbors(v):
            w_uv = (deg[u] * deg[v]) ** alpha
            s += (w_uv / mean_w) * phi[u]
        vals.append(s)
    return score_vector("weight-neighborhood", vals,
                        {"alpha": alpha, "benchmark": benchmark})


def _benchmark_scores(g: Graph, benchmark: str,
                      params: MetricParams | None):
    from .local import degree_family
    if benchmark == "degree":
        return degree_family(g).values
    if benchmark == "betweenness":
        return betweenness_family(g, "betweenness", params).values
    if benchmark == "k-shell":
        return [float(s) for s in k_shell(g).shell_index]
    raise GraphInputError(
        f"unsupported weight-neighborhood benchmark {benchmark!r}")


# -- AHP ---------------------------------------------------------------------


def _si_spread_scores(g: Graph, params: MetricParams) -> list[float]:
    """Mean infected fraction after si_steps of an SI cascade from each
    node; si_runs seeded replicates."""
    import random

    n = g.n
    totals = [0.0] * n
    for rep in range(params.si_runs):
        rng = random.Random(params.rng_seed + rep)
        for seed in range(n):
            infected = {seed}
            frontier = [seed]
            for _ in range(params.si_steps):
                new = []
                for v in frontier:
                    for u, _ in g.adj[v]:
                        if u not in infected and \
                                rng.random() < params.si_beta:
                            infected.add(u)
                            new.append(u)
                if not new:
                    break
                frontier = new
            totals[seed] += len(infected) / n
    return [t / params.si_runs for t in totals]


def ahp_centrality(g: Graph,
                   params: MetricParams | None = None) -> ScoreVector:
    """Analytic-hierarchy combination of degree, betweenness, closeness,
    weighted by agreement with a short SI spreading score."""
    params = params or MetricParams()
    n = g.n
    if n == 0:
        return score_vector("ahp", [])
    cols = [
        ("degree", [float(g.degree(v)) for v in range(n)]),
        ("betweenness", list(betweenness_family(g, "betweenness").values)),
        ("closeness", list(closeness_family(g, "closeness").values)),
        ("si-spread", _si_spread_scores(g, params)),
    ]
    d = np.zeros((n, 4))
    for j, (name, col) in enumerate(cols):
        total = sum(col)
        if total <= 0.0:
            raise GraphInputError(
                f"ahp attribute column {name!r} is degenerate (all zero)")
        d[:, j] = col
    r = d / d.sum(axis=0)

    e = np.zeros(3)
    for j in range(3):
        v_ij = 1.0 / np.maximum(np.abs(r[:, j] - r[:, 3]), _CLAMP)
        e[j] = float(np.sum(v_ij))
    w = e / e.sum()

    s = np.zeros((n, 3))
    for j in range(3):
        col = np.maximum(d[:, j], _CLAMP)
        inv = 1.0 / col

        def action(x, col=col, inv=inv):
            # B^(j) = col inv^T is rank one; apply without materializing
            return col * float(inv @ x)

        _, vec = power_iteration(action, np.ones(n), tol=params.tol,
                                 max_iter=params.max_iter)
        s[:, j] = vec
    scores = s @ w
    return score_vector("ahp", scores, {
        "si_beta": params.si_beta, "si_steps": params.si_steps,
        "si_runs": params.si_runs, "rng_seed": params.rng_seed})
