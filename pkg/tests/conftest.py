"""Shared brute-force oracles and generators for the test suite.

Every oracle here is deliberately independent of the implementation it
checks: chordality by chordless-cycle enumeration, series-parallel by
explicit K4-minor search, LP solving by vertex enumeration over exact
rational linear algebra.
"""

import random
from fractions import Fraction
from itertools import combinations

from homdom.graphs import Graph, bits_of, from_edges


def random_graph(n: int, rng: random.Random, edge_prob=Fraction(1, 2)) -> Graph:
    a, b = edge_prob.numerator, edge_prob.denominator
    edges = [(u, v) for v in range(n) for u in range(v) if rng.randrange(b) < a]
    return from_edges(n, edges)


def _is_connected(G: Graph) -> bool:
    return G.n == 0 or len(G.connected_components()) == 1


def brute_force_chordal(G: Graph) -> bool:
    """No chordless cycle of length >= 4: check every induced subgraph."""
    for mask in range(1 << G.n):
        verts = bits_of(mask)
        if len(verts) < 4:
            continue
        sub = G.induced(verts)
        if all(sub.degree(v) == 2 for v in range(sub.n)) and _is_connected(sub):
            return False
    return True


def brute_force_k4_minor(G: Graph) -> bool:
    """Explicit search for four disjoint connected branch sets, pairwise
    joined by an edge."""
    conn = [
        m for m in range(1, 1 << G.n) if _is_connected(G.induced(bits_of(m)))
    ]

    def joined(m1: int, m2: int) -> bool:
        return any(G.adj[v] & m2 for v in bits_of(m1))

    def search(chosen: list[int], used: int, start: int) -> bool:
        if len(chosen) == 4:
            return True
        for idx in range(start, len(conn)):
            m = conn[idx]
            if m & used:
                continue
            if all(joined(m, c) for c in chosen):
                if search(chosen + [m], used | m, idx + 1):
                    return True
        return False

    return search([], 0, 0)


# -- exact rational linear algebra for the LP oracle ----------------------


def solve_square(matrix, rhs):
    """Solve an n x n rational system; None if singular."""
    n = len(rhs)
    a = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def brute_force_lp(lp):
    """Enumerate candidate vertices as intersections of n constraint
    hyperplanes (rows plus lower-bound facets); assumes a bounded feasible
    region so feasibility is equivalent to having a feasible vertex.

    Returns ("optimal", best value) or ("infeasible", None).
    """
    n = lp.n_vars
    facets = []
    for row in lp.rows:
        coeffs = [Fraction(0)] * n
        for j, a in row.terms:
            coeffs[j] += a
        facets.append((coeffs, row.rhs))
    for j, lb in enumerate(lp.lower_bounds):
        if lb is not None:
            coeffs = [Fraction(0)] * n
            coeffs[j] = Fraction(1)
            facets.append((coeffs, lb))

    obj = [Fraction(0)] * n
    for j, c in lp.objective:
        obj[j] += c
    sign = 1 if lp.sense == "min" else -1

    def feasible(x):
        for row in lp.rows:
            lhs = sum(a * x[j] for j, a in row.terms)
            if row.rel == "<=" and lhs > row.rhs:
                return False
            if row.rel == ">=" and lhs < row.rhs:
                return False
            if row.rel == "=" and lhs != row.rhs:
                return False
        for j, lb in enumerate(lp.lower_bounds):
            if lb is not None and x[j] < lb:
                return False
        return True

    best = None
    for subset in combinations(range(len(facets)), n):
        matrix = [facets[i][0] for i in subset]
        rhs = [facets[i][1] for i in subset]
        x = solve_square(matrix, rhs)
        if x is None or not feasible(x):
            continue
        val = sign * sum(c * xi for c, xi in zip(obj, x))
        if best is None or val < best:
            best = val
    if best is None:
        return "infeasible", None
    return "optimal", sign * best
