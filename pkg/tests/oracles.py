"""Brute-force reference computations.

These work directly on tensor index sets and plain Python sets, never on
the library's bitmask indices, so they check the library from outside.
"""

from itertools import combinations


def two_chain_pairs(network):
    """All unordered pairs of distinct tensors whose index sets meet."""
    ts = network.tensors
    out = set()
    for a, b in combinations(ts, 2):
        if (a.covariant | a.contravariant) & (b.covariant | b.contravariant):
            out.add(frozenset((a.id, b.id)))
    return out


def induced_pairs(network, P):
    P = set(P)
    return {pair for pair in two_chain_pairs(network) if pair <= P}


def connected(P, S):
    P = set(P)
    if not P:
        return False
    reached = {next(iter(P))}
    changed = True
    while changed:
        changed = False
        for pair in S:
            if pair & reached and not pair <= reached:
                reached |= pair
                changed = True
    return reached == P


def subsets(items):
    items = sorted(items, key=sorted)
    for r in range(len(items) + 1):
        for combo in combinations(items, r):
            yield frozenset(combo)


def connected_spanning_sets(network, P):
    """Every S within the 2-chains on P that connects all of P."""
    P = frozenset(P)
    if len(P) == 1:
        return [frozenset()]
    return [S for S in subsets(induced_pairs(network, P)) if connected(P, S)]


def all_chains(network):
    """Every (P, S) with P nonempty and S a connected spanning set on P."""
    ids = [t.id for t in network.tensors]
    out = []
    for r in range(1, len(ids) + 1):
        for P in combinations(ids, r):
            for S in connected_spanning_sets(network, P):
                out.append((frozenset(P), S))
    return out


def as_pair(chain):
    return (chain.tensors, chain.pairs)


def spanning_trees(network, P):
    """Acyclic connected sets of |P| - 1 two-chains on P."""
    P = frozenset(P)
    if len(P) == 1:
        return [frozenset()]
    edges = sorted(induced_pairs(network, P), key=sorted)
    return [frozenset(c) for c in combinations(edges, len(P) - 1) if connected(P, c)]


def tree_count(nodes, edges):
    """Spanning trees of a simple graph, counted one by one.

    Walks the edge list choosing or skipping each edge, keeps only choices
    that stay acyclic, and counts every choice of n - 1 edges.
    """
    nodes = list(nodes)
    n = len(nodes)
    if n <= 1:
        return 1
    index = {v: i for i, v in enumerate(nodes)}
    es = [(index[a], index[b]) for a, b in edges]
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    count = 0

    def grow(i, chosen):
        nonlocal count
        if chosen == n - 1:
            count += 1
            return
        if len(es) - i < n - 1 - chosen:
            return
        a, b = es[i]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            grow(i + 1, chosen + 1)
            parent[ra] = ra
        grow(i + 1, chosen)

    grow(0, 0)
    return count


def nonassociativity_pattern(chains):
    """Three nonempty chains with P1&P2, P1&P3 nonempty and P2&P3 empty, or None."""
    ps = [P for P, _ in chains]
    for p1 in ps:
        for p2 in ps:
            if not p1 & p2:
                continue
            for p3 in ps:
                if p1 & p3 and not p2 & p3:
                    return p1, p2, p3
    return None


def reachable(network, v):
    """Vertices reachable from v along directed edges, including v."""
    seen = {v}
    frontier = [v]
    while frontier:
        x = frontier.pop()
        for t in network.tensors:
            (s,) = t.covariant
            (r,) = t.contravariant
            if s == x and r not in seen:
                seen.add(r)
                frontier.append(r)
    return seen
