"""Straight-line reference loop used to cross-check the engine on small
instances.

Everything is recomputed from scratch each round with plain Python floats
and explicit scans: full distance table, full rewiring pass, linear max
search, direct cluster flood-fill, direct weighted mean. The only contracts
shared with the engine are the stream constructor and the tie-break rule
(uniform index into the canonically ordered tie list, drawing only when two
or more pairs tie), which are part of the documented interface.
"""

from __future__ import annotations


def reference_run(opinions, adjacency, epsilon, phi, p, rng, max_steps=1_000_000):
    """Run the co-evolution loop; returns (steps, clusters, aggregate, opinions)
    or None if the cap is hit."""
    n = len(opinions)
    o = [float(x) for x in opinions]
    a = [[bool(adjacency[i][j]) for j in range(n)] for i in range(n)]
    steps = 0
    while True:
        d = [[abs(o[i] - o[j]) for j in range(n)] for i in range(n)]
        band = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if phi <= d[i][j] < epsilon
        ]
        if not band:
            break
        if steps >= max_steps:
            return None
        for i in range(n):
            for j in range(i + 1, n):
                if d[i][j] >= epsilon:
                    a[i][j] = a[j][i] = False
                elif d[i][j] < phi:
                    a[i][j] = a[j][i] = True
        best = max(d[i][j] for i, j in band)
        ties = [(i, j) for (i, j) in band if d[i][j] == best]
        if len(ties) == 1:
            i, j = ties[0]
        else:
            i, j = ties[int(rng.integers(len(ties)))]
        k_i = sum(a[i])
        k_j = sum(a[j])
        if k_i == 0 and k_j == 0:
            k_i = k_j = 1
        denom = (k_i + k_j) * p
        alpha_i = 1.0 - k_j / denom
        alpha_j = 1.0 - k_i / denom
        o_i, o_j = o[i], o[j]
        o[i] = alpha_i * o_i + (1.0 - alpha_i) * o_j
        o[j] = alpha_j * o_j + (1.0 - alpha_j) * o_i
        steps += 1
    d = [[abs(o[i] - o[j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if d[i][j] >= epsilon:
                a[i][j] = a[j][i] = False
            elif d[i][j] < phi:
                a[i][j] = a[j][i] = True
    clusters = _flood_clusters(o, phi)
    k = [sum(row) for row in a]
    total = sum(k)
    if total == 0:
        agg = sum(o) / n
    else:
        agg = sum(o[i] * k[i] for i in range(n)) / total
    return steps, clusters, agg, o


def _flood_clusters(o, phi):
    """Connected components of the |o_i - o_j| < phi relation as a set of
    frozensets."""
    n = len(o)
    unvisited = set(range(n))
    clusters = set()
    while unvisited:
        start = min(unvisited)
        unvisited.discard(start)
        members = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            linked = [u for u in unvisited if abs(o[v] - o[u]) < phi]
            for u in linked:
                unvisited.discard(u)
                members.add(u)
                frontier.append(u)
        clusters.add(frozenset(members))
    return clusters
