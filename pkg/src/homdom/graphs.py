"""Undirected simple labeled graphs with bitmask adjacency rows.

Vertices are 0-based integers 0..n-1.  Row ``adj[v]`` is an integer whose
bit ``u`` is set iff {u, v} is an edge.  Graphs are immutable; every
operation returns a fresh Graph.  Disjoint unions remember their
factorization (``component_spec``) so downstream solvers can exploit it
without re-decomposing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GraphTooLarge, MalformedInput, NotChordal

MAX_VERTICES = 63


@dataclass(frozen=True)
class Graph:
    """Simple loopless undirected graph on vertices 0..n-1."""

    n: int
    adj: tuple[int, ...]
    component_spec: tuple[tuple["Graph", int], ...] | None = field(
        default=None, compare=False
    )

    def __post_init__(self):
        if self.n < 0:
            raise MalformedInput("vertex count must be non-negative")
        if self.n > MAX_VERTICES:
            raise GraphTooLarge(f"n={self.n} exceeds cap of {MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise MalformedInput("adjacency must have one row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise MalformedInput(f"adjacency row {v} references missing vertices")
            if row >> v & 1:
                raise MalformedInput(f"self-loop at vertex {v}")
        for v in range(self.n):
            for u in range(v):
                if (self.adj[v] >> u & 1) != (self.adj[u] >> v & 1):
                    raise MalformedInput(f"adjacency not symmetric at {{{u},{v}}}")
        if self.component_spec is not None:
            self._check_spec()

    def _check_spec(self):
        offset = 0
        for part, mult in self.component_spec:
            if mult < 0:
                raise MalformedInput("component multiplicity must be >= 0")
            for _ in range(mult):
                for v in range(part.n):
                    if self.adj[offset + v] != part.adj[v] << offset:
                        raise MalformedInput("component_spec does not match adjacency")
                offset += part.n
        if offset != self.n:
            raise MalformedInput("component_spec does not cover all vertices")

    # -- basic accessors ------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """All edges as sorted (u, v) pairs with u < v, in lexicographic order."""
        out = []
        for u in range(self.n):
            row = self.adj[u] >> (u + 1) << (u + 1)
            while row:
                v = (row & -row).bit_length() - 1
                out.append((u, v))
                row &= row - 1
        return out

    @property
    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def is_regular(self) -> bool:
        if self.n == 0:
            return True
        d = self.degree(0)
        return all(self.degree(v) == d for v in range(self.n))

    def connected_components(self) -> list[tuple[int, ...]]:
        """Vertex sets of the connected components, each sorted, ordered by minimum vertex."""
        seen = 0
        comps = []
        for start in range(self.n):
            if seen >> start & 1:
                continue
            mask = 1 << start
            frontier = mask
            while frontier:
                nxt = 0
                while frontier:
                    v = (frontier & -frontier).bit_length() - 1
                    frontier &= frontier - 1
                    nxt |= self.adj[v] & ~mask
                mask |= nxt
                frontier = nxt
            seen |= mask
            comps.append(tuple(_bits(mask)))
        return comps

    def induced(self, vertices: tuple[int, ...]) -> Graph:
        """Induced subgraph relabeled 0..k-1 in the order of the sorted vertex list."""
        verts = sorted(vertices)
        index = {v: i for i, v in enumerate(verts)}
        rows = [0] * len(verts)
        for v in verts:
            row = 0
            for u in _bits(self.adj[v]):
                if u in index:
                    row |= 1 << index[u]
            rows[index[v]] = row
        return Graph(len(verts), tuple(rows))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask &= mask - 1


def bits_of(mask: int) -> tuple[int, ...]:
    """Sorted vertices of a subset bitmask."""
    return tuple(_bits(mask))


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def subset_label(mask: int) -> str:
    """Render a subset bitmask as a sorted vertex list, e.g. ``{0,2}``."""
    return "{" + ",".join(str(v) for v in _bits(mask)) + "}"


# -- constructors -------------------------------------------------------


def from_edges(n: int, edges) -> Graph:
    rows = [0] * n
    for u, v in edges:
        if u == v:
            raise MalformedInput(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise MalformedInput(f"edge ({u},{v}) out of range for n={n}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def path(k: int) -> Graph:
    """The path with k edges on vertices 0..k; path(0) is a single isolated vertex."""
    if k < 0:
        raise MalformedInput("path length must be non-negative")
    return from_edges(k + 1, [(i, i + 1) for i in range(k)])


def cycle(k: int) -> Graph:
    """The cycle with k edges on vertices 0..k-1; requires k >= 3."""
    if k < 3:
        raise MalformedInput("cycle needs at least 3 edges")
    return from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def star(k: int) -> Graph:
    """The star with k leaves: center 0 joined to 1..k."""
    if k < 0:
        raise MalformedInput("star size must be non-negative")
    return from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def complete(k: int) -> Graph:
    return from_edges(k, [(i, j) for j in range(k) for i in range(j)])


def disjoint_union(parts) -> Graph:
    """Disjoint union of (graph, multiplicity) parts with shifted labels.

    The factorization is retained on the result as ``component_spec``.
    """
    spec = tuple((g, int(m)) for g, m in parts)
    rows: list[int] = []
    offset = 0
    for g, m in spec:
        if m < 0:
            raise MalformedInput("multiplicity must be >= 0")
        for _ in range(m):
            rows.extend(r << offset for r in g.adj)
            offset += g.n
    return Graph(offset, tuple(rows), component_spec=spec)


def expand_components(G: Graph) -> list[tuple[Graph, int]]:
    """Connected components with multiplicities, merging equal labeled graphs.

    Uses the recorded factorization when present so union shapes like
    P0^2 P5^3 never get re-decomposed; otherwise splits by connectivity.
    """
    pieces: list[Graph] = []

    def walk(g: Graph, mult: int):
        if mult == 0:
            return
        if g.component_spec is not None:
            for sub, m in g.component_spec:
                walk(sub, mult * m)
        else:
            comps = g.connected_components()
            if len(comps) == 1 and g.n > 0:
                pieces.extend([g] * mult)
            else:
                for verts in comps:
                    pieces.extend([g.induced(verts)] * mult)

    walk(G, 1)
    grouped: list[tuple[Graph, int]] = []
    for g in pieces:
        for i, (h, m) in enumerate(grouped):
            if h == g:
                grouped[i] = (h, m + 1)
                break
        else:
            grouped.append((g, 1))
    return grouped


# -- cliques and chordality ---------------------------------------------


def maximal_cliques(G: Graph) -> list[int]:
    """All inclusion-maximal cliques as bitmasks, sorted ascending.

    An isolated vertex is a maximal clique of size 1.
    """
    out: list[int] = []
    full = (1 << G.n) - 1

    def extend(r: int, p: int, x: int):
        if p == 0 and x == 0:
            out.append(r)
            return
        # pivot on the candidate with most neighbors in p
        pivot = -1
        best = -1
        pool = p | x
        while pool:
            v = (pool & -pool).bit_length() - 1
            pool &= pool - 1
            cnt = (G.adj[v] & p).bit_count()
            if cnt > best:
                best, pivot = cnt, v
        cand = p & ~G.adj[pivot]
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            extend(r | 1 << v, p & G.adj[v], x & G.adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    if G.n:
        extend(0, full, 0)
    return sorted(out)


def lex_bfs(G: Graph) -> tuple[int, ...]:
    """Lexicographic BFS visit order; ties broken by smallest vertex index."""
    labels: list[list[int]] = [[] for _ in range(G.n)]
    visited = [False] * G.n
    order = []
    for step in range(G.n):
        best = -1
        for v in range(G.n):
            if not visited[v] and (best < 0 or labels[v] > labels[best]):
                best = v
        visited[best] = True
        order.append(best)
        for u in _bits(G.adj[best]):
            if not visited[u]:
                labels[u].append(G.n - step)
    return tuple(order)


def _verify_peo(G: Graph, elim: tuple[int, ...]) -> bool:
    pos = {v: i for i, v in enumerate(elim)}
    for v in elim:
        later = 0
        for u in _bits(G.adj[v]):
            if pos[u] > pos[v]:
                later |= 1 << u
        if later:
            parent = min(_bits(later), key=lambda u: pos[u])
            if (later & ~(1 << parent)) & ~G.adj[parent]:
                return False
    return True


def is_chordal(G: Graph) -> tuple[bool, tuple[int, ...] | None]:
    """Chordality test via lexicographic BFS.

    Returns (True, perfect elimination ordering) or (False, None).  The
    ordering lists vertices first-eliminated first and is verified before
    being returned.
    """
    if G.n == 0:
        return True, ()
    elim = tuple(reversed(lex_bfs(G)))
    if _verify_peo(G, elim):
        return True, elim
    return False, None


@dataclass(frozen=True)
class CliqueTree:
    """Clique forest of a chordal graph.

    ``edges`` joins clique indices within connected components; the
    separator for edge k is ``separators[k]``.  Components of the graph
    yield disjoint trees (no empty cross-component separators are stored).
    """

    cliques: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    separators: tuple[int, ...]


def clique_tree(G: Graph) -> CliqueTree:
    """Maximum-weight spanning forest over clique-intersection sizes.

    Requires a chordal input; the resulting forest satisfies the
    running-intersection property.
    """
    ok, _ = is_chordal(G)
    if not ok:
        raise NotChordal("clique tree requires a chordal graph")
    cliques = maximal_cliques(G)
    k = len(cliques)
    candidates = []
    for j in range(k):
        for i in range(j):
            w = (cliques[i] & cliques[j]).bit_count()
            if w:
                candidates.append((-w, i, j))
    candidates.sort()
    parent = list(range(k))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    edges = []
    seps = []
    for negw, i, j in candidates:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            edges.append((i, j))
            seps.append(cliques[i] & cliques[j])
    return CliqueTree(tuple(cliques), tuple(edges), tuple(seps))


# -- series-parallel recognition ----------------------------------------


def is_series_parallel(G: Graph) -> bool:
    """True iff G has no K4 minor.

    Runs the exhaustive reduction: drop loops, merge parallel edges,
    delete degree<=1 vertices, suppress degree-2 vertices; G is
    series-parallel iff this empties the graph.
    """
    # multigraph state: neighbor multiset per live vertex
    mult: dict[tuple[int, int], int] = {}
    nbrs: dict[int, set[int]] = {v: set() for v in range(G.n)}
    for u, v in G.edges():
        mult[(u, v)] = 1
        nbrs[u].add(v)
        nbrs[v].add(u)

    def drop_edge(a, b):
        key = (min(a, b), max(a, b))
        del mult[key]
        nbrs[a].discard(b)
        nbrs[b].discard(a)

    changed = True
    while changed and nbrs:
        changed = False
        for key in list(mult):
            if mult.get(key, 0) > 1:
                mult[key] = 1
                changed = True
        for v in list(nbrs):
            deg = sum(mult[(min(v, u), max(v, u))] for u in nbrs[v])
            if deg <= 1:
                for u in list(nbrs[v]):
                    drop_edge(v, u)
                del nbrs[v]
                changed = True
            elif deg == 2:
                ends = []
                for u in nbrs[v]:
                    ends.extend([u] * mult[(min(v, u), max(v, u))])
                a, b = ends
                for u in list(nbrs[v]):
                    drop_edge(v, u)
                del nbrs[v]
                if a != b:
                    key = (min(a, b), max(a, b))
                    mult[key] = mult.get(key, 0) + 1
                    nbrs[a].add(b)
                    nbrs[b].add(a)
                changed = True
    return not nbrs


# -- file format and graph-spec mini-language ----------------------------


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: header "n m", then m lines "u v", LF endings."""
    if not text.endswith("\n"):
        raise MalformedInput("file must end with a newline")
    lines = text.split("\n")[:-1]
    if not lines:
        raise MalformedInput("missing header line")
    header = _split_pair(lines[0])
    n, m = header
    if n > MAX_VERTICES:
        raise GraphTooLarge(f"n={n} exceeds cap of {MAX_VERTICES}")
    if len(lines) - 1 != m:
        raise MalformedInput(f"expected {m} edge lines, found {len(lines) - 1}")
    rows = [0] * n
    for line in lines[1:]:
        u, v = _split_pair(line)
        if u == v:
            raise MalformedInput(f"self-loop at vertex {u}")
        if not u < v:
            raise MalformedInput(f"edge endpoints must satisfy u < v: got {u} {v}")
        if v >= n:
            raise MalformedInput(f"vertex {v} out of range for n={n}")
        if rows[u] >> v & 1:
            raise MalformedInput(f"duplicate edge {u} {v}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def _split_pair(line: str) -> tuple[int, int]:
    parts = line.split(" ")
    if len(parts) != 2:
        raise MalformedInput(f"expected two fields: {line!r}")
    out = []
    for p in parts:
        if not p.isdigit() or (len(p) > 1 and p[0] == "0"):
            raise MalformedInput(f"not a decimal integer: {p!r}")
        out.append(int(p))
    return out[0], out[1]


def serialize_graph(G: Graph) -> str:
    lines = [f"{G.n} {G.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def parse_graph_spec(spec: str) -> Graph:
    """Parse the CLI mini-language: ``path:K``, ``cycle:K``, or
    ``union:M1*path:K1+M2*path:K2+...``."""
    if spec.startswith("path:"):
        return path(_spec_int(spec[5:]))
    if spec.startswith("cycle:"):
        return cycle(_spec_int(spec[6:]))
    if spec.startswith("union:"):
        parts = []
        for item in spec[6:].split("+"):
            mult, _, rest = item.partition("*")
            if not rest.startswith("path:"):
                raise MalformedInput(f"union items must be M*path:K, got {item!r}")
            parts.append((path(_spec_int(rest[5:])), _spec_int(mult)))
        if not parts:
            raise MalformedInput("empty union spec")
        return disjoint_union(parts)
    raise MalformedInput(f"unknown graph spec {spec!r}")


def _spec_int(s: str) -> int:
    if not s.isdigit():
        raise MalformedInput(f"expected a number in graph spec, got {s!r}")
    return int(s)
