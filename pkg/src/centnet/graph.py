"""Immutable graph representation and the algorithmic substrate.

Everything downstream (metric families, group selection, attack
simulation) builds on the primitives here: single-source shortest paths
with path counts, connected components, unit-capacity max flow with a
deterministic augmenting order, power iteration, and dense linear solves.
"""

from __future__ import annotations

import heapq
import json
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import (
    ConvergenceError,
    GraphInputError,
    SingularMatrixError,
)

INF = math.inf

# Dense solves and eigendecompositions refuse anything bigger than this.
DENSE_CAP = 5000


@dataclass(frozen=True)
class Graph:
    """Immutable adjacency structure with dense integer node ids.

    Node ids are 0..n-1 assigned in first-appearance order of the input
    edge list. Undirected adjacency is symmetric; weights are strictly
    positive; self-loops were dropped at build time.
    """

    n: int
    directed: bool
    adj: tuple            # adj[v] = tuple of (neighbor, weight), sorted by neighbor
    in_adj: tuple         # in-neighbors; same object as adj when undirected
    labels: tuple | None = None
    coords: tuple | None = None
    self_loops_dropped: int = 0
    duplicates_collapsed: int = 0
    _label_to_id: dict = field(default_factory=dict, repr=False)

    # -- basic accessors ------------------------------------------------

    @property
    def m(self) -> int:
        """Edge count: undirected edges, or arcs when directed."""
        total = sum(len(a) for a in self.adj)
        return total if self.directed else total // 2

    def neighbors(self, v: int) -> list[int]:
        return [u for u, _ in self.adj[v]]

    def in_neighbors(self, v: int) -> list[int]:
        return [u for u, _ in self.in_adj[v]]

    def out_degree(self, v: int) -> int:
        return len(self.adj[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_adj[v])

    def degree(self, v: int) -> int:
        """Total degree: in+out for directed graphs."""
        if self.directed:
            return len(self.adj[v]) + len(self.in_adj[v])
        return len(self.adj[v])

    def all_neighbors(self, v: int) -> list[int]:
        """Neighbors ignoring direction (sorted, deduplicated)."""
        if not self.directed:
            return self.neighbors(v)
        return sorted({u for u, _ in self.adj[v]} |
                      {u for u, _ in self.in_adj[v]})

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    @property
    def unit_weights(self) -> bool:
        return all(w == 1.0 for a in self.adj for _, w in a)

    def label_of(self, v: int):
        return self.labels[v] if self.labels is not None else v

    def id_of(self, label) -> int:
        if self.labels is None:
            return int(label)
        return self._label_to_id[label]

    def adjacency_matrix(self) -> np.ndarray:
        """Dense weighted adjacency; A[u][v] = w for an arc u->v."""
        a = np.zeros((self.n, self.n))
        for u in range(self.n):
            for v, w in self.adj[u]:
                a[u, v] = w
        return a

    def neighbor_sets(self) -> list[set]:
        """Out-neighbor sets, cached per call site (graph is immutable)."""
        return [set(self.neighbors(v)) for v in range(self.n)]

    def induced(self, nodes) -> tuple["Graph", list[int]]:
        """Subgraph on `nodes`; returns (graph, original ids in new order)."""
        keep = sorted(set(nodes))
        pos = {v: i for i, v in enumerate(keep)}
        arcs = []
        for v in keep:
            for u, w in self.adj[v]:
                if u in pos and (self.directed or v < u):
                    arcs.append((pos[v], pos[u], w))
        sub = graph_from_arcs(len(keep), self.directed, arcs)
        return sub, keep


def build_graph(edges, directed: bool = False, isolated=(),
                coordinates=None) -> Graph:
    """Construct a Graph from (u, v) or (u, v, weight) tuples.

    Endpoint labels may be any hashable token; dense ids are assigned in
    first-appearance order. Self-loops are dropped (counted), duplicate
    edges collapse to the first occurrence (counted). `isolated` declares
    extra nodes with no edges. `coordinates` maps label -> (x, y).
    """
    label_to_id: dict = {}
    labels: list = []

    def intern(lbl):
        i = label_to_id.get(lbl)
        if i is None:
            i = len(labels)
            label_to_id[lbl] = i
            labels.append(lbl)
        return i

    seen: set = set()
    arcs: list[tuple[int, int, float]] = []
    loops = 0
    dups = 0
    for idx, e in enumerate(edges):
        if len(e) == 3:
            u, v, w = e
            w = float(w)
        else:
            u, v = e
            w = 1.0
        if not (w > 0.0) or not math.isfinite(w):
            raise GraphInputError(
                f"edge {idx} ({u!r}, {v!r}): weight must be positive, got {w}")
        ui, vi = intern(u), intern(v)
        if ui == vi:
            loops += 1
            continue
        key = (ui, vi) if directed or ui < vi else (vi, ui)
        if key in seen:
            dups += 1
            continue
        seen.add(key)
        arcs.append((ui, vi, w))
    for lbl in isolated:
        intern(lbl)

    n = len(labels)
    out: list[list] = [[] for _ in range(n)]
    inn: list[list] = [[] for _ in range(n)]
    for u, v, w in arcs:
        out[u].append((v, w))
        inn[v].append((u, w))
        if not directed:
            out[v].append((u, w))
            inn[u].append((v, w))
    adj = tuple(tuple(sorted(a)) for a in out)
    in_adj = adj if not directed else tuple(tuple(sorted(a)) for a in inn)

    coords = None
    if coordinates is not None:
        coords = tuple(tuple(map(float, coordinates[lbl])) for lbl in labels)

    plain = all(lbl == i for i, lbl in enumerate(labels))
    return Graph(n=n, directed=directed, adj=adj, in_adj=in_adj,
                 labels=None if plain else tuple(labels),
                 coords=coords, self_loops_dropped=loops,
                 duplicates_collapsed=dups,
                 _label_to_id=label_to_id if not plain else {})


def graph_from_arcs(n: int, directed: bool, arcs,
                    coords=None) -> Graph:
    """Id-preserving constructor for internal reweighting/subgraphs.

    `arcs` are (u, v, w) with 0 <= u, v < n already deduplicated.
    """
    out: list[list] = [[] for _ in range(n)]
    inn: list[list] = [[] for _ in range(n)]
    for u, v, w in arcs:
        out[u].append((v, w))
        inn[v].append((u, w))
        if not directed:
            out[v].append((u, w))
            inn[u].append((v, w))
    adj = tuple(tuple(sorted(a)) for a in out)
    in_adj = adj if not directed else tuple(tuple(sorted(a)) for a in inn)
    return Graph(n=n, directed=directed, adj=adj, in_adj=in_adj,
                 coords=coords)


# -- shortest paths -----------------------------------------------------


@dataclass
class ShortestPaths:
    """Single-source result: distances, geodesic counts, and the
    shortest-path DAG (predecessor lists + a stack in non-decreasing
    distance order) needed by dependency accumulation."""

    source: int
    dist: list[float]
    sigma: list[int]
    preds: list[list[int]]
    order: list[int]      # visited nodes, non-decreasing distance


def shortest_paths(g: Graph, source: int, cap: float | None = None,
                   reverse: bool = False) -> ShortestPaths:
    """BFS when all weights are 1, Dijkstra otherwise.

    Unreachable nodes get distance inf and sigma 0. With `cap`, nodes
    beyond that distance are treated as unreachable. `reverse` walks
    in-edges (directed graphs only).
    """
    if not 0 <= source < g.n:
        raise GraphInputError(f"invalid source node {source}")
    adj = g.in_adj if reverse else g.adj
    if g.unit_weights:
        return _bfs(g.n, adj, source, cap)
    return _dijkstra(g.n, adj, source, cap)


def _bfs(n, adj, source, cap):
    dist = [INF] * n
    sigma = [0] * n
    preds: list[list[int]] = [[] for _ in range(n)]
    order = [source]
    dist[source] = 0.0
    sigma[source] = 1
    q = deque([source])
    limit = INF if cap is None else cap
    while q:
        v = q.popleft()
        dv = dist[v]
        if dv >= limit:
            continue
        sv = sigma[v]
        for u, _ in adj[v]:
            du = dist[u]
            if du == INF:
                dist[u] = dv + 1.0
                q.append(u)
                order.append(u)
                sigma[u] = sv
                preds[u].append(v)
            elif du == dv + 1.0:
                sigma[u] += sv
                preds[u].append(v)
    if cap is not None:
        for v in range(n):
            if dist[v] > cap:
                dist[v] = INF
                sigma[v] = 0
                preds[v] = []
        order = [v for v in order if dist[v] < INF]
    return ShortestPaths(source, dist, sigma, preds, order)


_EPS = 1e-12


def _dijkstra(n, adj, source, cap):
    dist = [INF] * n
    sigma = [0] * n
    preds: list[list[int]] = [[] for _ in range(n)]
    done = [False] * n
    order = []
    dist[source] = 0.0
    sigma[source] = 1
    heap = [(0.0, source)]
    limit = INF if cap is None else cap
    while heap:
        dv, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        if dv > limit + _EPS:
            break
        order.append(v)
        sv = sigma[v]
        for u, w in adj[v]:
            if done[u]:
                continue
            alt = dv + w
            du = dist[u]
            if alt < du - _EPS:
                dist[u] = alt
                sigma[u] = sv
                preds[u] = [v]
                heapq.heappush(heap, (alt, u))
            elif abs(alt - du) <= _EPS:
                sigma[u] += sv
                preds[u].append(v)
    for v in range(n):
        if dist[v] > limit + _EPS and dist[v] != INF:
            dist[v] = INF
            sigma[v] = 0
            preds[v] = []
    order = [v for v in order if dist[v] < INF]
    return ShortestPaths(source, dist, sigma, preds, order)


def all_distances(g: Graph, cap: float | None = None) -> list[list[float]]:
    """Distance rows from every source (out-distances when directed)."""
    return [shortest_paths(g, s, cap=cap).dist for s in range(g.n)]


# -- connected components ----------------------------------------------


@dataclass
class ComponentLabeling:
    component_id: list[int]
    sizes: list[int]
    giant_size: int

    def members(self, cid: int) -> list[int]:
        return [v for v, c in enumerate(self.component_id) if c == cid]


def components(g: Graph, mode: str = "weak",
               mask=None) -> ComponentLabeling:
    """Label connected components.

    `mode` is "weak" (direction ignored) or "strong" (SCCs; same as weak
    on undirected graphs). `mask[v] = False` excludes v, as if removed.
    """
    if mode not in ("weak", "strong"):
        raise GraphInputError(f"unknown component mode {mode!r}")
    n = g.n
    alive = mask if mask is not None else [True] * n
    if mode == "strong" and g.directed:
        return _tarjan_scc(g, alive)
    comp = [-1] * n
    sizes = []
    for s in range(n):
        if comp[s] >= 0 or not alive[s]:
            continue
        cid = len(sizes)
        comp[s] = cid
        size = 1
        q = deque([s])
        while q:
            v = q.popleft()
            for u, _ in g.adj[v]:
                if comp[u] < 0 and alive[u]:
                    comp[u] = cid
                    size += 1
                    q.append(u)
            if g.directed:
                for u, _ in g.in_adj[v]:
                    if comp[u] < 0 and alive[u]:
                        comp[u] = cid
                        size += 1
                        q.append(u)
        sizes.append(size)
    return ComponentLabeling(comp, sizes, max(sizes, default=0))


def _tarjan_scc(g: Graph, alive) -> ComponentLabeling:
    n = g.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    sizes: list[int] = []
    counter = 0
    for root in range(n):
        if index[root] >= 0 or not alive[root]:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            nbrs = g.adj[v]
            while pi < len(nbrs):
                u = nbrs[pi][0]
                pi += 1
                if not alive[u]:
                    continue
                if index[u] < 0:
                    work[-1] = (v, pi)
                    work.append((u, 0))
                    advanced = True
                    break
                if on_stack[u]:
                    low[v] = min(low[v], index[u])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                cid = len(sizes)
                size = 0
                while True:
                    u = stack.pop()
                    on_stack[u] = False
                    comp[u] = cid
                    size += 1
                    if u == v:
                        break
                sizes.append(size)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return ComponentLabeling(comp, sizes, max(sizes, default=0))


def giant_fraction(g: Graph, mask=None, mode: str = "weak") -> float:
    """Giant-component size over the ORIGINAL node count."""
    if g.n == 0:
        return 0.0
    return components(g, mode=mode, mask=mask).giant_size / g.n


# -- max flow -----------------------------------------------------------


@dataclass
class MaxFlowResult:
    value: int
    throughflow: list[float]   # per node; equals value at s and t
    edge_flow: dict            # (u, v) -> signed flow on that arc


def max_flow(g: Graph, s: int, t: int) -> MaxFlowResult:
    """Edmonds-Karp on unit capacities with ascending-node-id BFS.

    The augmenting order is deterministic, so the per-node throughflow
    of the returned decomposition is reproducible. Undirected edges act
    as capacity 1 in each direction.
    """
    if s == t:
        raise GraphInputError("max_flow requires s != t")
    n = g.n
    capacity: dict[tuple[int, int], int] = {}
    for u in range(n):
        for v, _ in g.adj[u]:
            capacity[(u, v)] = 1
    residual_nbrs = [
        sorted({u for u, _ in g.adj[v]} | {u for u, _ in g.in_adj[v]})
        for v in range(n)
    ]

    flow: dict[tuple[int, int], int] = {}
    value = 0
    while True:
        # BFS over the residual graph, neighbors in ascending id order
        prev = [-1] * n
        prev[s] = s
        q = deque([s])
        while q and prev[t] < 0:
            v = q.popleft()
            for u in residual_nbrs[v]:
                if prev[u] < 0 and \
                        capacity.get((v, u), 0) - flow.get((v, u), 0) > 0:
                    prev[u] = v
                    q.append(u)
        if prev[t] < 0:
            break
        v = t
        while v != s:
            u = prev[v]
            flow[(u, v)] = flow.get((u, v), 0) + 1
            flow[(v, u)] = flow.get((v, u), 0) - 1
            v = u
        value += 1

    through = [0.0] * n
    for (u, v), f in flow.items():
        if f > 0:
            through[v] += f
    through[s] = float(value)
    through[t] = float(value)
    edge_flow = {k: f for k, f in flow.items() if f > 0}
    return MaxFlowResult(value, through, edge_flow)


# -- spectral / linear substrate -----------------------------------------


def power_iteration(matvec, init, tol: float = 1e-10,
                    max_iter: int = 100000) -> tuple[float, np.ndarray]:
    """Principal eigenpair of a non-negative linear action.

    `matvec` maps an n-vector to an n-vector; `init` must be strictly
    positive. Convergence: successive normalized iterates differ by less
    than `tol` in the sup norm. Returns (eigenvalue, L2-unit vector).
    """
    x = np.asarray(init, dtype=float)
    if x.ndim != 1 or np.any(x <= 0):
        raise GraphInputError("power iteration needs a strictly positive init")
    x = x / np.linalg.norm(x)
    gap = INF
    for _ in range(max_iter):
        y = np.asarray(matvec(x), dtype=float)
        norm = np.linalg.norm(y)
        if norm == 0.0:
            # action annihilates the iterate; eigenvalue 0, keep direction
            return 0.0, x
        y /= norm
        gap = np.max(np.abs(y - x))
        x = y
        if gap < tol:
            lam = float(np.dot(x, np.asarray(matvec(x), dtype=float)))
            return lam, x
    raise ConvergenceError(
        f"power iteration did not converge in {max_iter} iterations "
        f"(last gap {gap:.3e})", residual=gap)


def spectral_radius(g: Graph, tol: float = 1e-12,
                    max_iter: int = 100000) -> float:
    """Largest adjacency eigenvalue via shifted power iteration.

    The +I shift makes the iteration converge on bipartite/periodic
    graphs without changing eigenvectors.
    """
    if g.n == 0:
        return 0.0
    a = g.adjacency_matrix()
    if not g.directed:
        shifted = a + np.eye(g.n)
        lam, _ = power_iteration(lambda x: shifted @ x, np.ones(g.n),
                                 tol=tol, max_iter=max_iter)
        return lam - 1.0
    # directed: power-iterate A^T A to get sigma_max bound... use the
    # symmetrized walk matrix only as a fallback; dense graphs here are
    # desk-scale so a direct eigensolve is fine.
    ev = np.linalg.eigvals(a)
    return float(np.max(np.abs(ev)))


def solve_linear(m, b=None):
    """Solve M x = b, or invert M when b is None.

    Raises SingularMatrixError naming the offending pivot when M is
    singular to working precision. Dense only; guarded by DENSE_CAP.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise GraphInputError("solve_linear needs a square matrix")
    n = m.shape[0]
    if n > DENSE_CAP:
        raise GraphInputError(
            f"matrix order {n} exceeds the dense cap {DENSE_CAP}")
    lu, piv = scipy.linalg.lu_factor(m, check_finite=False)
    diag = np.abs(np.diag(lu))
    scale = max(np.max(np.abs(m)), 1.0)
    bad = np.nonzero(diag <= scale * n * np.finfo(float).eps)[0]
    if bad.size:
        raise SingularMatrixError(
            f"matrix singular to working precision at pivot {int(bad[0])}",
            pivot=int(bad[0]))
    rhs = np.eye(n) if b is None else np.asarray(b, dtype=float)
    x = scipy.linalg.lu_solve((lu, piv), rhs, check_finite=False)
    return x


def params_digest(params: dict) -> str:
    """Canonical serialization of the tunables a metric actually used."""
    return json.dumps(params, sort_keys=True, separators=(",", ":"),
                      default=str)
