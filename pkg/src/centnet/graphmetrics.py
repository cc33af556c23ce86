"""Whole-graph centralization and cohesion measures."""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .errors import GraphInputError, SizeCapError, UnsupportedGraphError
from .graph import INF, Graph, all_distances, components, shortest_paths
from .globalmetrics import betweenness_family, closeness_family, \
    flow_betweenness
from .iterative import k_shell
from .local import local_clustering
from .params import ScoreVector, score_vector


@dataclass
class GraphMetricValue:
    metric_id: str
    value: object                 # real, integer, or node-set tuple
    skipped_pairs: int = 0
    details: dict = field(default_factory=dict)

    def numeric(self) -> float:
        """Scalar view; node sets report their size."""
        if isinstance(self.value, (tuple, list, frozenset, set)):
            return float(len(self.value))
        return float(self.value)


# -- distance / dominance ----------------------------------------------------


def dispersion(g: Graph) -> GraphMetricValue:
    """Sum of distances over ordered reachable pairs (compactness)."""
    total = 0.0
    skipped = 0
    for v in range(g.n):
        dist = shortest_paths(g, v).dist
        for u in range(g.n):
            if u == v:
                continue
            if dist[u] == INF:
                skipped += 1
            else:
                total += dist[u]
    return GraphMetricValue("dispersion", total, skipped)


def degree_gc(g: Graph, normalized: bool = False) -> GraphMetricValue:
    """Degree dominance of the most connected vertex."""
    deg = g.degrees()
    if not deg:
        return GraphMetricValue("degree-gc", 0.0)
    d_star = max(deg)
    if normalized:
        if g.n < 3:
            raise GraphInputError("normalized degree-GC needs n >= 3")
        value = sum(d_star - d for d in deg) / (g.n ** 2 - 3 * g.n + 2)
    else:
        value = float(sum(_binom2(1 + d_star - d) for d in deg))
    return GraphMetricValue("degree-gc", value,
                            details={"normalized": normalized})


def _binom2(a: int) -> int:
    return a * (a - 1) // 2 if a >= 2 else 0


def centralization(g: Graph, base: str) -> GraphMetricValue:
    """Summed gap to the most central node, star-normalized to [0,1]."""
    n = g.n
    if n < 3:
        raise GraphInputError("centralization needs n >= 3")
    if base == "betweenness":
        raw = betweenness_family(g, "betweenness").values
        pairs = (n - 1) * (n - 2) if g.directed else (n - 1) * (n - 2) / 2
        norm = [x / pairs for x in raw]
        value = sum(max(norm) - x for x in norm) / (n - 1)
    elif base == "closeness":
        if components(g).giant_size != n:
            raise UnsupportedGraphError(
                "closeness centralization needs a connected graph")
        clo = closeness_family(g, "closeness").values
        norm = [(n - 1) * x for x in clo]
        value = sum(max(norm) - x for x in norm) \
            / ((n ** 2 - 3 * n + 2) / (2 * n - 3))
    elif base == "flow-betweenness":
        raw = flow_betweenness(g, normalized=True).values
        pairs = (n - 1) * (n - 2) if g.directed else (n - 1) * (n - 2) / 2
        norm = [x / pairs for x in raw]
        value = sum(max(norm) - x for x in norm) / (n - 1)
    else:
        raise GraphInputError(f"unknown centralization base {base!r}")
    return GraphMetricValue(f"{base}-gc", value)


def reciprocity(g: Graph) -> GraphMetricValue:
    """Tr(A^2) / m: fraction of arcs that are reciprocated."""
    if not g.directed:
        raise UnsupportedGraphError("reciprocity needs a directed graph")
    m = g.m
    if m == 0:
        return GraphMetricValue("reciprocity", 0.0)
    out_sets = [set(g.neighbors(v)) for v in range(g.n)]
    co = sum(1 for v in range(g.n) for u in out_sets[v] if v in out_sets[u])
    return GraphMetricValue("reciprocity", co / m)


# -- cohesive subgroups -------------------------------------------------------


def k_core_set(g: Graph, k: int) -> tuple:
    """Maximal vertex set whose induced subgraph has min degree >= k."""
    from .iterative import _mutual_adjacency
    deg = g.degrees()
    nbrs = _mutual_adjacency(g)
    alive = [True] * g.n
    queue = deque(v for v in range(g.n) if deg[v] < k)
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for u, c in nbrs[v]:
            if alive[u]:
                deg[u] -= c
                if deg[u] < k:
                    queue.append(u)
    return tuple(v for v in range(g.n) if alive[v])


def _max_clique(g: Graph) -> tuple:
    """Exact maximum clique, branch and bound with pivoting."""
    nbr = [set(g.all_neighbors(v)) for v in range(g.n)]
    best: list[int] = []

    def expand(r: list[int], p: set):
        nonlocal best
        if not p:
            if len(r) > len(best):
                best = r[:]
            return
        if len(r) + len(p) <= len(best):
            return
        pivot = max(p, key=lambda v: len(nbr[v] & p))
        for v in sorted(p - nbr[pivot]):
            r.append(v)
            expand(r, p & nbr[v])
            r.pop()
            p = p - {v}
            if len(r) + len(p) <= len(best):
                break

    expand([], set(range(g.n)))
    return tuple(sorted(best))


def _max_kplex(g: Graph, k: int) -> tuple:
    """Exact maximum k-plex by bounded enumeration."""
    n = g.n
    nbr = [set(g.all_neighbors(v)) for v in range(n)]
    best: list[int] = []

    def can_add(s: list[int], counts: dict, v: int) -> bool:
        size = len(s) + 1
        dv = sum(1 for u in s if u in nbr[v])
        if dv < size - k:
            return False
        return all(counts[u] + (1 if v in nbr[u] else 0) >= size - k
                   for u in s)

    def expand(s: list[int], counts: dict, cands: list[int]):
        nonlocal best
        if len(s) > len(best):
            best = s[:]
        if len(s) + len(cands) <= len(best):
            return
        for i, v in enumerate(cands):
            if not can_add(s, counts, v):
                continue
            counts2 = {u: c + (1 if v in nbr[u] else 0)
                       for u, c in counts.items()}
            counts2[v] = sum(1 for u in s if u in nbr[v])
            expand(s + [v], counts2, cands[i + 1:])

    expand([], {}, list(range(n)))
    return tuple(sorted(best))


def _split_max_flow(n: int, arcs: set, s: int, t: int,
                    forbidden: set) -> tuple[int, set]:
    """Unit-vertex-capacity max flow via node splitting.

    Returns (flow value, min vertex cut). Node v becomes v_in = 2v,
    v_out = 2v+1 with a capacity-1 internal arc; graph arcs get a large
    capacity. `forbidden` nodes are excluded entirely.
    """
    big = n + 1
    cap: dict[tuple[int, int], int] = {}
    adj: dict[int, set] = {}

    def add(a, b, c):
        cap[(a, b)] = cap.get((a, b), 0) + c
        cap.setdefault((b, a), cap.get((b, a), 0))
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)

    for v in range(n):
        if v in forbidden:
            continue
        add(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in arcs:
        if u in forbidden or v in forbidden:
            continue
        add(2 * u + 1, 2 * v, big)

    flow: dict[tuple[int, int], int] = {}
    src, dst = 2 * s, 2 * t + 1
    value = 0
    while True:
        prev = {src: src}
        q = deque([src])
        while q and dst not in prev:
            a = q.popleft()
            for b in sorted(adj.get(a, ())):
                if b not in prev and \
                        cap.get((a, b), 0) - flow.get((a, b), 0) > 0:
                    prev[b] = a
                    q.append(b)
        if dst not in prev:
            break
        b = dst
        while b != src:
            a = prev[b]
            flow[(a, b)] = flow.get((a, b), 0) + 1
            flow[(b, a)] = flow.get((b, a), 0) - 1
            b = a
        value += 1
    # residual-reachable side determines the vertex cut
    side = {src}
    q = deque([src])
    while q:
        a = q.popleft()
        for b in adj.get(a, ()):
            if b not in side and cap.get((a, b), 0) - flow.get((a, b), 0) > 0:
                side.add(b)
                q.append(b)
    cut = {v for v in range(n)
           if v not in forbidden and 2 * v in side and 2 * v + 1 not in side}
    return value, cut


def _vertex_connectivity(g: Graph, nodes: list[int]) -> tuple[int, set]:
    """(kappa, witness min cut) of the induced subgraph on `nodes`."""
    node_set = set(nodes)
    nbr = {v: set(g.all_neighbors(v)) & node_set for v in nodes}
    arcs = {(u, v) for u in nodes for v in nbr[u]}
    k = len(nodes)
    if all(len(nbr[v]) == k - 1 for v in nodes):
        return k - 1, set()
    forbidden = set(range(g.n)) - node_set
    v0 = min(nodes, key=lambda v: (len(nbr[v]), v))
    best = len(nbr[v0])
    best_cut = set(nbr[v0])
    pairs = [(v0, u) for u in nodes if u != v0 and u not in nbr[v0]]
    nb = sorted(nbr[v0])
    pairs += [(a, b) for a, b in combinations(nb, 2) if b not in nbr[a]]
    for s, t in pairs:
        val, cut = _split_max_flow(g.n, arcs, s, t, forbidden)
        if val < best:
            best, best_cut = val, cut
    return best, best_cut


def k_component(g: Graph, k: int) -> tuple:
    """Largest vertex set whose induced subgraph is k-vertex-connected.

    Cohesive refinement: candidates start from components of the k-core;
    a candidate failing the connectivity test is split along a minimum
    vertex cut and the pieces retried.
    """
    best: tuple = ()
    core = k_core_set(g, k)
    if not core:
        return best
    sub_labels = components(g, mask=[v in set(core) for v in range(g.n)])
    stack = [sorted(sub_labels.members(c)) for c in range(len(sub_labels.sizes))
             if sub_labels.sizes[c] > k]
    seen: set = set()
    while stack:
        cand = stack.pop()
        key = tuple(cand)
        if key in seen or len(cand) <= max(k, len(best)):
            continue
        seen.add(key)
        kappa, cut = _vertex_connectivity(g, cand)
        if kappa >= k:
            if len(cand) > len(best):
                best = tuple(cand)
            continue
        if not cut:
            continue
        # Moody-White refinement: each side of the separator, with the
        # separator re-attached, is inspected recursively
        rest = [v for v in cand if v not in cut]
        mask = [False] * g.n
        for v in rest:
            mask[v] = True
        lab = components(g, mask=mask)
        for c in range(len(lab.sizes)):
            piece = sorted(set(lab.members(c)) | cut)
            if len(piece) > k and len(piece) < len(cand):
                stack.append(piece)
    return best


def cohesive_subgroup(g: Graph, kind: str, k: int = 1,
                      size_cap: int = 200) -> GraphMetricValue:
    """k-core / maximum clique / maximum k-plex / largest k-component."""
    if k < 1:
        raise GraphInputError("k must be >= 1")
    if k > g.n:
        return GraphMetricValue(kind, ())
    if kind in ("k-clique-max", "k-plex-max") and g.n > size_cap:
        raise SizeCapError(
            f"{kind} is exponential; n={g.n} exceeds size_cap={size_cap} "
            f"(raise size_cap explicitly to force)")
    if kind == "k-core":
        return GraphMetricValue("k-core", k_core_set(g, k),
                                details={"k": k})
    if kind == "k-clique-max":
        return GraphMetricValue("k-clique-max", _max_clique(g))
    if kind == "k-plex-max":
        return GraphMetricValue("k-plex-max", _max_kplex(g, k),
                                details={"k": k})
    if kind == "k-component":
        return GraphMetricValue("k-component", k_component(g, k),
                                details={"k": k})
    raise GraphInputError(f"unknown cohesive subgroup kind {kind!r}")


# -- clustering / assortativity ----------------------------------------------


def global_clustering(g: Graph) -> GraphMetricValue:
    """Mean local clustering coefficient (degree <2 contributes 0)."""
    cc = local_clustering(g)
    value = sum(cc) / len(cc) if cc else 0.0
    return GraphMetricValue("global-clustering", value)


def _endpoint_series(g: Graph, mode: str):
    xs, ys = [], []
    indeg = [g.in_degree(v) for v in range(g.n)]
    outdeg = [g.out_degree(v) for v in range(g.n)]
    deg = g.degrees()
    for u in range(g.n):
        for v, _ in g.adj[u]:
            if mode == "undirected":
                xs.append(deg[u] - 1)
                ys.append(deg[v] - 1)
            elif mode == "directed-out-in":
                xs.append(outdeg[u] - 1)
                ys.append(indeg[v] - 1)
            elif mode == "in-in":
                xs.append(indeg[u] - 1)
                ys.append(indeg[v] - 1)
            elif mode == "out-out":
                xs.append(outdeg[u] - 1)
                ys.append(outdeg[v] - 1)
            else:
                raise GraphInputError(f"unknown assortativity mode {mode!r}")
    return xs, ys


def assortativity(g: Graph, mode: str = "undirected") -> GraphMetricValue:
    """Pearson correlation of excess degrees across edge endpoints."""
    if mode != "undirected" and not g.directed:
        raise UnsupportedGraphError(f"{mode} assortativity needs a "
                                    "directed graph")
    xs, ys = _endpoint_series(g, mode)
    if len(xs) < 2:
        raise GraphInputError("assortativity needs at least 2 edges")
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    cov = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    vx = sum((x - mx) ** 2 for x in xs)
    vy = sum((y - my) ** 2 for y in ys)
    if vx == 0.0 or vy == 0.0:
        raise GraphInputError(
            "assortativity undefined: zero excess-degree variance")
    return GraphMetricValue(f"assortativity-{mode}",
                            cov / math.sqrt(vx * vy))


def local_assortativity(g: Graph) -> ScoreVector:
    """Per-node assortativity share; sums to the global coefficient."""
    if g.directed:
        raise UnsupportedGraphError(
            "local assortativity is defined on undirected graphs")
    xs, _ = _endpoint_series(g, "undirected")
    if len(xs) < 2:
        raise GraphInputError("local assortativity needs at least 2 edges")
    mu = sum(xs) / len(xs)
    var = sum((x - mu) ** 2 for x in xs) / len(xs)
    if var == 0.0:
        raise GraphInputError(
            "local assortativity undefined: zero excess-degree variance")
    m = g.m
    deg = g.degrees()
    vals = []
    for v in range(g.n):
        j = deg[v] - 1
        nbrs = g.neighbors(v)
        kbar = sum(deg[u] - 1 for u in nbrs) / deg[v] if nbrs else 0.0
        vals.append((j + 1) * (j * kbar - mu * mu) / (2 * m * var))
    return score_vector("local-assortativity", vals)


# -- hyperbolicity -------------------------------------------------------------


def delta_hyperbolicity(g: Graph, sample_count: int = 1000,
                        rng_seed: int = 0) -> GraphMetricValue:
    """Thin-triangle curvature over sampled (or exhaustive) node triples.

    For each triple, delta is the smallest worst-case distance any node
    has to the three geodesic sets. Reports max delta as the value; the
    mean delta and mean delta / (min side length) ride in details.
    """
    if sample_count < 1:
        raise GraphInputError("sample_count must be >= 1")
    n = g.n
    if n and components(g).giant_size != n:
        raise UnsupportedGraphError("delta-hyperbolicity needs a "
                                    "connected graph")
    if n < 3:
        return GraphMetricValue("delta-hyperbolicity", 0.0,
                                details={"mean_delta": 0.0,
                                         "mean_ratio": 0.0, "triples": 0})
    dist = all_distances(g)
    total = n * (n - 1) * (n - 2) // 6
    if sample_count >= total:
        triples = list(combinations(range(n), 3))
    else:
        rng = random.Random(rng_seed)
        triples = [tuple(sorted(rng.sample(range(n), 3)))
                   for _ in range(sample_count)]

    def geodesic_nodes(u, v):
        duv = dist[u][v]
        return [w for w in range(n) if dist[u][w] + dist[w][v] == duv]

    deltas = []
    ratios = []
    for i, j, k in triples:
        sides = [geodesic_nodes(i, j), geodesic_nodes(i, k),
                 geodesic_nodes(j, k)]
        best = INF
        for m in range(n):
            dm = dist[m]
            worst = max(min(dm[w] for w in side) for side in sides)
            if worst < best:
                best = worst
                if best == 0:
                    break
        ell = min(dist[i][j], dist[i][k], dist[j][k])
        deltas.append(best)
        ratios.append(best / ell)
    return GraphMetricValue(
        "delta-hyperbolicity", max(deltas),
        details={"mean_delta": sum(deltas) / len(deltas),
                 "mean_ratio": sum(ratios) / len(ratios),
                 "triples": len(triples)})
