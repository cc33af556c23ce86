"""Independent brute-force oracles.

These deliberately avoid the library's algorithmic shortcuts: path
enumeration instead of dependency accumulation, Floyd-Warshall instead
of per-source BFS, per-definition k-core peeling instead of staged
pruning, bipartition search instead of augmenting paths.
"""

import math
from itertools import combinations

import numpy as np

INF = math.inf


def floyd_warshall(g):
    n = g.n
    d = np.full((n, n), INF)
    np.fill_diagonal(d, 0.0)
    for u in range(n):
        for v, w in g.adj[u]:
            d[u, v] = min(d[u, v], w)
    for k in range(n):
        d = np.minimum(d, d[:, k:k + 1] + d[k:k + 1, :])
    return d


def all_shortest_path_lists(g, s, t, dist):
    """Every geodesic from s to t as an explicit node list (DFS)."""
    if dist[s][t] == INF:
        return []
    paths = []

    def walk(u, acc):
        if u == t:
            paths.append(acc[:])
            return
        for v, w in g.adj[u]:
            if dist[s][u] + w + dist[v][t] == dist[s][t] and \
                    dist[s][v] == dist[s][u] + w:
                acc.append(v)
                walk(v, acc)
                acc.pop()

    walk(s, [s])
    return paths


def bf_betweenness_paths(g):
    """Betweenness by full geodesic enumeration (tiny graphs only)."""
    n = g.n
    dist = floyd_warshall(g)
    acc = [0.0] * n
    pairs = [(s, t) for s in range(n) for t in range(n) if s != t] \
        if g.directed else list(combinations(range(n), 2))
    for s, t in pairs:
        paths = all_shortest_path_lists(g, s, t, dist)
        if not paths:
            continue
        for v in range(n):
            if v in (s, t):
                continue
            through = sum(1 for p in paths if v in p)
            acc[v] += through / len(paths)
    return acc


def sigma_counts(g, s, dist):
    """Geodesic counts from s by distance-ordered dynamic programming."""
    n = g.n
    order = sorted((v for v in range(n) if dist[s][v] < INF),
                   key=lambda v: dist[s][v])
    sigma = [0] * n
    sigma[s] = 1
    for v in order:
        if v == s:
            continue
        sigma[v] = sum(sigma[u] for u, w in g.in_adj[v]
                       if dist[s][u] + w == dist[s][v])
    return sigma


def bf_betweenness_sigma(g):
    """Betweenness via the sigma_sv * sigma_vt / sigma_st identity."""
    n = g.n
    dist = floyd_warshall(g)
    sig = [sigma_counts(g, s, dist) for s in range(n)]
    acc = [0.0] * n
    pairs = [(s, t) for s in range(n) for t in range(n) if s != t] \
        if g.directed else list(combinations(range(n), 2))
    for s, t in pairs:
        if dist[s][t] == INF:
            continue
        st = sig[s][t]
        for v in range(n):
            if v in (s, t):
                continue
            if dist[s][v] + dist[v][t] == dist[s][t]:
                acc[v] += sig[s][v] * sig[v][t] / st
    return acc


def bf_load(g):
    """Load by per-pair packet simulation toward each target."""
    n = g.n
    dist = floyd_warshall(g)
    acc = [0.0] * n
    for s in range(n):
        for t in range(n):
            if s == t or dist[s][t] == INF:
                continue
            # walk the packet backward from t, splitting among the
            # predecessors (neighbors strictly closer to s) evenly
            amount = {t: 1.0}
            order = sorted(
                (v for v in range(n)
                 if dist[s][v] + dist[v][t] == dist[s][t]
                 and dist[s][v] < INF),
                key=lambda v: -dist[s][v])
            for v in order:
                if v == s or v not in amount:
                    continue
                preds = [u for u, w in
                         (g.in_adj[v] if g.directed else g.adj[v])
                         if dist[s][u] + w == dist[s][v]]
                share = amount[v] / len(preds)
                for u in preds:
                    amount[u] = amount.get(u, 0.0) + share
            for v in range(n):
                if v not in (s, t) and v in amount:
                    acc[v] += amount[v]
    return acc


def bf_closeness(g):
    n = g.n
    dist = floyd_warshall(g)
    out = []
    for v in range(n):
        ds = [dist[v][u] for u in range(n) if u != v]
        if not ds or any(d == INF for d in ds):
            out.append(0.0)
        else:
            out.append(1.0 / sum(ds))
    return out


def bf_eccentricity(g):
    n = g.n
    dist = floyd_warshall(g)
    out = []
    for v in range(n):
        ds = [dist[v][u] for u in range(n) if u != v]
        if not ds or any(d == INF for d in ds):
            out.append(0.0)
        else:
            out.append(1.0 / max(ds))
    return out


def bf_k_shell(g):
    """Shell index straight from the defining maximal-subgraph property:
    shell(v) = max k such that v survives min-degree-k peeling."""
    n = g.n

    def k_core_members(k):
        alive = set(range(n))
        changed = True
        while changed:
            changed = False
            for v in list(alive):
                deg = sum(1 for u, _ in g.adj[v] if u in alive)
                if g.directed:
                    deg += sum(1 for u, _ in g.in_adj[v] if u in alive)
                if deg < k:
                    alive.discard(v)
                    changed = True
        return alive

    maxdeg = max((g.degree(v) for v in range(n)), default=0)
    shell = [0] * n
    for k in range(1, maxdeg + 1):
        for v in k_core_members(k):
            shell[v] = k
    return shell


def bf_min_edge_cut(g, s, t):
    """Minimum s-t edge cut over all vertex bipartitions."""
    n = g.n
    others = [v for v in range(n) if v not in (s, t)]
    best = INF
    for mask in range(1 << len(others)):
        side = {s}
        for i, v in enumerate(others):
            if mask >> i & 1:
                side.add(v)
        # adj stores both orientations of an undirected edge, but only
        # the u-in-side -> v-outside direction is counted, so each
        # crossing edge contributes exactly once either way
        crossing = 0
        for u in range(n):
            for v, _ in g.adj[u]:
                if u in side and v not in side:
                    crossing += 1
        best = min(best, crossing)
    return best


def bf_local_clustering(g):
    """Undirected clustering by explicit triple enumeration."""
    out = []
    nbr = [set(g.neighbors(v)) for v in range(g.n)]
    for v in range(g.n):
        k = len(nbr[v])
        if k < 2:
            out.append(0.0)
            continue
        closed = sum(1 for a, b in combinations(sorted(nbr[v]), 2)
                     if b in nbr[a])
        out.append(closed / (k * (k - 1) / 2))
    return out


def bf_assortativity_ejk(g):
    """Degree assortativity from the joint excess-degree table e_jk."""
    pairs = []
    deg = g.degrees()
    for u in range(g.n):
        for v, _ in g.adj[u]:
            pairs.append((deg[u] - 1, deg[v] - 1))
    maxj = max(max(j, k) for j, k in pairs)
    e = np.zeros((maxj + 1, maxj + 1))
    for j, k in pairs:
        e[j, k] += 1
    e /= e.sum()
    q = e.sum(axis=1)
    js = np.arange(maxj + 1)
    mu = float(js @ q)
    var = float((js ** 2) @ q - mu ** 2)
    num = sum(j * k * (e[j, k] - q[j] * q[k])
              for j in range(maxj + 1) for k in range(maxj + 1))
    return num / var


def bf_delta_hyperbolicity(g, dist=None):
    """Exhaustive thin-triangle delta over all triples."""
    n = g.n
    if dist is None:
        dist = floyd_warshall(g)
    best = 0.0
    for i, j, k in combinations(range(n), 3):
        sides = []
        for (a, b) in ((i, j), (i, k), (j, k)):
            dab = dist[a][b]
            sides.append([w for w in range(n)
                          if dist[a][w] + dist[w][b] == dab])
        delta = min(
            max(min(dist[m][w] for w in side) for side in sides)
            for m in range(n))
        best = max(best, delta)
    return best


def quantize(values, rel=1e-9):
    """Round scores to a relative grid so exact mathematical ties that
    differ by accumulation-order noise rank as ties."""
    scale = max((abs(x) for x in values), default=1.0) or 1.0
    return [round(x / scale, 9) for x in values]


def spearman(xs, ys):
    """Spearman rank correlation with average ranks for ties."""

    def ranks(vals):
        order = sorted(range(len(vals)), key=lambda i: vals[i])
        rk = [0.0] * len(vals)
        i = 0
        while i < len(order):
            j = i
            while j + 1 < len(order) and \
                    vals[order[j + 1]] == vals[order[i]]:
                j += 1
            avg = (i + j) / 2.0 + 1.0
            for t in range(i, j + 1):
                rk[order[t]] = avg
            i = j + 1
        return rk

    rx, ry = ranks(xs), ranks(ys)
    mx = sum(rx) / len(rx)
    my = sum(ry) / len(ry)
    cov = sum((a - mx) * (b - my) for a, b in zip(rx, ry))
    vx = math.sqrt(sum((a - mx) ** 2 for a in rx))
    vy = math.sqrt(sum((b - my) ** 2 for b in ry))
    if vx == 0 or vy == 0:
        return 1.0 if rx == ry else 0.0
    return cov / (vx * vy)
