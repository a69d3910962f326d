"""Brute-force reference implementations used as test oracles.

Nothing here imports the closure, enumeration or decision code it checks.
Inputs are plain order matrices (lists of lists of bool) so the oracles do
not depend on the library's table construction either.
"""

import itertools

import networkx as nx


def lub_table(leq):
    """Join table from an order matrix, or None if some pair lacks a join."""
    n = len(leq)
    table = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            ubs = [z for z in range(n) if leq[x][z] and leq[y][z]]
            least = [u for u in ubs if all(leq[u][v] for v in ubs)]
            if len(least) != 1:
                return None
            table[x][y] = least[0]
    return table


def glb_table(leq):
    flipped = [[leq[y][x] for y in range(len(leq))] for x in range(len(leq))]
    return lub_table(flipped)


def count_lattices(n):
    """Isomorphism classes of n-element lattices, by a second, unrelated route."""
    if n <= 2:
        return 1
    m = n - 2
    slots = [(i, j) for i in range(m) for j in range(i + 1, m)]
    reps = []
    for bits in range(1 << len(slots)):
        rel = [[i == j for j in range(m)] for i in range(m)]
        for k, (i, j) in enumerate(slots):
            if bits >> k & 1:
                rel[i][j] = True
        if any(
            rel[i][j] and rel[j][k] and not rel[i][k]
            for i in range(m)
            for j in range(m)
            for k in range(m)
        ):
            continue
        leq = [[True] * n] + [[False] + row + [True] for row in rel] + [[False] * (n - 1) + [True]]
        if lub_table(leq) is None or glb_table(leq) is None:
            continue
        g = nx.DiGraph()
        g.add_nodes_from(range(n))
        g.add_edges_from((x, y) for x in range(n) for y in range(n) if x != y and leq[x][y])
        sig = sorted(g.out_degree(v) * 100 + g.in_degree(v) for v in g)
        if not any(s == sig and nx.is_isomorphic(g, h) for s, h in reps):
            reps.append((sig, g))
    return len(reps)


def brute_tolerances(leq):
    """All tolerances, by checking every reflexive symmetric relation."""
    n = len(leq)
    join, meet = lub_table(leq), glb_table(leq)
    off = [(x, y) for x in range(n) for y in range(x + 1, n)]
    found = []
    for bits in range(1 << len(off)):
        rel = {(x, x) for x in range(n)}
        for k, (x, y) in enumerate(off):
            if bits >> k & 1:
                rel.add((x, y))
                rel.add((y, x))
        if all(
            (join[a][c], join[b][d]) in rel and (meet[a][c], meet[b][d]) in rel
            for (a, b) in rel
            for (c, d) in rel
        ):
            found.append(frozenset(rel))
    return found


def brute_generated_tolerance(leq, seed):
    """Least tolerance containing seed: intersect every tolerance above it."""
    n = len(leq)
    full = frozenset(itertools.product(range(n), repeat=2))
    out = full
    for T in brute_tolerances(leq):
        if set(seed) <= T:
            out &= T
    return out


def monotone_maps(leq, lo=None, hi=None):
    """Every order-preserving unary map, optionally with fixed values at 0 and 1."""
    n = len(leq)
    bottom = next(x for x in range(n) if all(leq[x]))
    top = next(x for x in range(n) if all(leq[y][x] for y in range(n)))
    for values in itertools.product(range(n), repeat=n):
        if lo is not None and values[bottom] != lo:
            continue
        if hi is not None and values[top] != hi:
            continue
        if all(leq[values[x]][values[y]] for x in range(n) for y in range(n) if leq[x][y]):
            yield values


def reference_chi(leq, a):
    n = len(leq)
    bottom = next(x for x in range(n) if all(leq[x]))
    top = next(x for x in range(n) if all(leq[y][x] for y in range(n)))
    return tuple(top if x != bottom and leq[a][x] else bottom for x in range(n))
