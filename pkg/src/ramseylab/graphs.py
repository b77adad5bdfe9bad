"""Small dense graphs on up to 64 vertices, with bitset adjacency.

Vertices are 0..n-1 and every neighborhood is a Python int used as a
bitset, so adjacency tests, common neighborhoods and clique search are
single integer operations.  Graphs are immutable and hashable.  The
canonical edge order used everywhere (coloring, CNF variables, edge
sampling) is lexicographic on (min, max).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

MAX_VERTICES = 64


def _bits(x: int) -> Iterator[int]:
    """Yield set bit positions of x in increasing order."""
    while x:
        b = x & -x
        yield b.bit_length() - 1
        x ^= b


class Graph:
    """Immutable undirected simple graph.

    adj[v] is the neighborhood bitset of v.  labels, when present, give
    each vertex a part index (used by multipartite families).
    """

    __slots__ = ("n", "adj", "labels", "_edges")

    def __init__(self, n: int, adj: tuple[int, ...], labels: Optional[tuple[int, ...]] = None):
        if not 0 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        if len(adj) != n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & (1 << v):
                raise ValueError(f"loop at vertex {v}")
            if row & ~full:
                raise ValueError(f"neighbor out of range at vertex {v}")
            for u in _bits(row):
                if not adj[u] & (1 << v):
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        if labels is not None and len(labels) != n:
            raise ValueError("label length does not match vertex count")
        self.n = n
        self.adj = tuple(adj)
        self.labels = tuple(labels) if labels is not None else None
        self._edges: Optional[tuple[tuple[int, int], ...]] = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Optional[Iterable[int]] = None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), tuple(labels) if labels is not None else None)

    # -- basic queries -------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] & (1 << v))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges as (min, max) pairs in canonical lexicographic order."""
        if self._edges is None:
            out = []
            for u in range(self.n):
                for v in _bits(self.adj[u] >> (u + 1)):
                    out.append((u, u + 1 + v))
            out.sort()
            self._edges = tuple(out)
        return self._edges

    @property
    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges())}

    def is_complete(self) -> bool:
        full = (1 << self.n) - 1
        return all(self.adj[v] == full ^ (1 << v) for v in range(self.n))

    # -- derived graphs ------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled 0..k-1 preserving vertex order."""
        vs = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vs)}
        edges = [(pos[u], pos[v]) for u, v in itertools.combinations(vs, 2)
                 if self.has_edge(u, v)]
        labels = tuple(self.labels[v] for v in vs) if self.labels is not None else None
        return Graph.from_edges(len(vs), edges, labels)

    def union(self, other: "Graph") -> "Graph":
        """Edge union on a shared vertex set; keeps this graph's labels."""
        if other.n != self.n:
            raise ValueError("union requires equal vertex counts")
        adj = tuple(a | b for a, b in zip(self.adj, other.adj))
        return Graph(self.n, adj, self.labels)

    def subgraph_with_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Same vertex set, only the given edges (must exist here)."""
        es = list(edges)
        for u, v in es:
            if not self.has_edge(u, v):
                raise ValueError(f"({u},{v}) is not an edge")
        return Graph.from_edges(self.n, es, self.labels)

    def two_coloring(self) -> Optional[tuple[int, ...]]:
        """A proper 2-coloring of the vertices, or None if an odd cycle exists."""
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            queue = [s]
            while queue:
                u = queue.pop()
                for v in _bits(self.adj[u]):
                    if color[v] < 0:
                        color[v] = 1 - color[u]
                        queue.append(v)
                    elif color[v] == color[u]:
                        return None
        return tuple(color)

    def has_odd_cycle(self) -> bool:
        return self.two_coloring() is None

    # -- value semantics ----------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Graph) and self.n == other.n
                and self.adj == other.adj and self.labels == other.labels)

    def __hash__(self) -> int:
        return hash((self.n, self.adj, self.labels))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


# ---------------------------------------------------------------------
# Patterns


@dataclass(frozen=True)
class Pattern:
    """A target shape to look for as a (not necessarily induced) subgraph.

    kind is one of "clique", "cycle", "path", "arbitrary".  size is the
    vertex count for clique/path and the length for cycle; arbitrary
    patterns carry their graph.
    """

    kind: str
    size: int = 0
    graph: Optional[Graph] = None

    def __post_init__(self):
        if self.kind not in ("clique", "cycle", "path", "arbitrary"):
            raise ValueError(f"unknown pattern kind {self.kind!r}")
        if self.kind == "clique" and self.size < 1:
            raise ValueError("clique size must be >= 1")
        if self.kind == "cycle" and self.size < 3:
            raise ValueError("cycle length must be >= 3")
        if self.kind == "path" and self.size < 1:
            raise ValueError("path vertex count must be >= 1")
        if self.kind == "arbitrary" and (self.graph is None or self.graph.n < 1):
            raise ValueError("arbitrary pattern needs a nonempty graph")

    @property
    def vertex_count(self) -> int:
        if self.kind == "arbitrary":
            return self.graph.n
        return self.size

    @property
    def pattern_edge_count(self) -> int:
        if self.kind == "clique":
            return self.size * (self.size - 1) // 2
        if self.kind == "cycle":
            return self.size
        if self.kind == "path":
            return self.size - 1
        return self.graph.edge_count

    def to_graph(self) -> Graph:
        if self.kind == "clique":
            return clique_graph(self.size)
        if self.kind == "cycle":
            return cycle_graph(self.size)
        if self.kind == "path":
            return path_graph(self.size)
        return self.graph

    def describe(self) -> str:
        if self.kind == "clique":
            return f"K{self.size}"
        if self.kind == "cycle":
            return f"C{self.size}"
        if self.kind == "path":
            return f"P{self.size}"
        return f"graph(n={self.graph.n},m={self.graph.edge_count})"


def clique(t: int) -> Pattern:
    return Pattern("clique", t)


def cycle(length: int) -> Pattern:
    return Pattern("cycle", length)


def path(vertices: int) -> Pattern:
    return Pattern("path", vertices)


def arbitrary(g: Graph) -> Pattern:
    return Pattern("arbitrary", 0, g)


def clique_order(pat: Pattern) -> Optional[int]:
    """Order t if the pattern is (isomorphic to) a complete graph K_t."""
    if pat.kind == "clique":
        return pat.size
    if pat.kind == "cycle":
        return 3 if pat.size == 3 else None
    if pat.kind == "path":
        return pat.size if pat.size <= 2 else None
    g = pat.graph
    if all(g.degree(v) == g.n - 1 for v in range(g.n)):
        return g.n
    return None


def cycle_length(pat: Pattern) -> Optional[int]:
    """Length l if the pattern is (isomorphic to) a cycle C_l."""
    if pat.kind == "cycle":
        return pat.size
    if pat.kind == "clique":
        return 3 if pat.size == 3 else None
    if pat.kind == "path":
        return None
    g = pat.graph
    if g.n >= 3 and all(g.degree(v) == 2 for v in range(g.n)):
        # connected 2-regular = a single cycle
        seen = {0}
        frontier = g.adj[0]
        while True:
            new = 0
            for v in _bits(frontier):
                if v not in seen:
                    seen.add(v)
                    new |= g.adj[v]
            if not new:
                break
            frontier = new
        if len(seen) == g.n:
            return g.n
    return None


# ---------------------------------------------------------------------
# Containment search

def _iter_cliques(adj: tuple[int, ...], cand: int, need: int) -> Iterator[tuple[int, ...]]:
    """Yield vertex tuples of need-cliques inside the candidate bitset.

    Pivoting: some clique of the wanted size meets cand minus N(pivot)
    whenever any exists, so only those vertices are branched on.
    """
    if need == 0:
        yield ()
        return
    if cand.bit_count() < need:
        return
    pivot = max(_bits(cand), key=lambda u: (adj[u] & cand).bit_count())
    branch = cand & ~adj[pivot]
    for v in _bits(branch):
        for rest in _iter_cliques(adj, cand & adj[v], need - 1):
            yield (v,) + rest
        cand &= ~(1 << v)
        if cand.bit_count() < need:
            return


def _iter_cycles_through(adj, u: int, v: int, length: int) -> Iterator[tuple[int, ...]]:
    """Cycles of the given length using edge (u,v), as vertex tuples starting u, ending v."""
    target = 1 << v
    path_ = [u]
    used = 1 << u

    def extend() -> Iterator[tuple[int, ...]]:
        nonlocal used
        last = path_[-1]
        if len(path_) == length - 1:
            if adj[last] & target:
                yield tuple(path_) + (v,)
            return
        for w in _bits(adj[last] & ~used & ~target):
            path_.append(w)
            used |= 1 << w
            yield from extend()
            used ^= 1 << w
            path_.pop()

    yield from extend()


def _iter_cycles(g: Graph, length: int) -> Iterator[tuple[int, ...]]:
    """Each cycle exactly once: minimum vertex first, lower neighbor second."""
    adj = g.adj
    for s in range(g.n):
        higher = ~((1 << (s + 1)) - 1)
        path_ = [s]
        used = 1 << s

        def extend() -> Iterator[tuple[int, ...]]:
            nonlocal used
            last = path_[-1]
            if len(path_) == length:
                if adj[last] & (1 << s) and path_[1] < path_[-1]:
                    yield tuple(path_)
                return
            for w in _bits(adj[last] & higher & ~used):
                path_.append(w)
                used |= 1 << w
                yield from extend()
                used ^= 1 << w
                path_.pop()

        yield from extend()


def _iter_paths(g: Graph, k: int) -> Iterator[tuple[int, ...]]:
    """Each path on k vertices exactly once (smaller endpoint first)."""
    if k == 1:
        for v in range(g.n):
            yield (v,)
        return
    adj = g.adj
    for s in range(g.n):
        path_ = [s]
        used = 1 << s

        def extend() -> Iterator[tuple[int, ...]]:
            nonlocal used
            last = path_[-1]
            if len(path_) == k:
                if path_[0] < path_[-1]:
                    yield tuple(path_)
                return
            for w in _bits(adj[last] & ~used):
                path_.append(w)
                used |= 1 << w
                yield from extend()
                used ^= 1 << w
                path_.pop()

        yield from extend()


def _iter_embeddings(n: int, adj, pg: Graph, pinned: Optional[dict[int, int]] = None
                     ) -> Iterator[tuple[int, ...]]:
    """Injective maps of pg into the host adjacency sending edges to edges.

    pinned maps pattern vertices to fixed host vertices.  Pattern
    vertices are assigned in decreasing-degree order with bitset
    filtering against already-placed neighbors.
    """
    pn = pg.n
    if pn > n:
        return
    order = sorted(range(pn), key=lambda v: (-pg.degree(v), v))
    if pinned:
        order.sort(key=lambda v: 0 if v in pinned else 1)
    assign = [-1] * pn
    used = 0
    full = (1 << n) - 1

    def place(i: int) -> Iterator[tuple[int, ...]]:
        nonlocal used
        if i == pn:
            yield tuple(assign)
            return
        pv = order[i]
        cand = full & ~used
        if pinned and pv in pinned:
            cand &= 1 << pinned[pv]
        for pu in _bits(pg.adj[pv]):
            if assign[pu] >= 0:
                cand &= adj[assign[pu]]
        deg = pg.degree(pv)
        for hv in _bits(cand):
            if adj[hv].bit_count() < deg:
                continue
            assign[pv] = hv
            used |= 1 << hv
            yield from place(i + 1)
            used ^= 1 << hv
            assign[pv] = -1

    yield from place(0)


def find_pattern(g: Graph, pat: Pattern) -> Optional[tuple[int, ...]]:
    """A witness vertex tuple for one copy of pat in g, or None."""
    if pat.vertex_count > g.n:
        return None
    if pat.kind == "clique":
        full = (1 << g.n) - 1
        for w in _iter_cliques(g.adj, full, pat.size):
            return tuple(sorted(w))
        return None
    if pat.kind == "cycle":
        for w in _iter_cycles(g, pat.size):
            return w
        return None
    if pat.kind == "path":
        for w in _iter_paths(g, pat.size):
            return w
        return None
    for w in _iter_embeddings(g.n, g.adj, pat.graph):
        return w
    return None


def contains_pattern(g: Graph, pat: Pattern) -> bool:
    return find_pattern(g, pat) is not None


def iter_pattern_witnesses_through_edge(g: Graph, pat: Pattern, e: tuple[int, int]
                                        ) -> Iterator[tuple[int, ...]]:
    """All copies of pat in g that use edge e, as witness vertex tuples.

    Copies may repeat for arbitrary patterns with automorphisms; callers
    that need distinct copies deduplicate by edge set.
    """
    u, v = e
    if not g.has_edge(u, v):
        raise ValueError(f"({u},{v}) is not an edge of the graph")
    if pat.kind == "clique":
        if pat.size < 2:
            return
        if pat.size == 2:
            yield (u, v)
            return
        for rest in _iter_cliques(g.adj, g.adj[u] & g.adj[v], pat.size - 2):
            yield (u, v) + rest
        return
    if pat.kind == "cycle":
        yield from _iter_cycles_through(g.adj, u, v, pat.size)
        return
    if pat.kind == "path":
        if pat.size < 2:
            return
        yield from _iter_paths_through(g.adj, u, v, pat.size)
        return
    pg = pat.graph
    seen = set()
    for a, b in pg.edges():
        for x, y in ((u, v), (v, u)):
            for w in _iter_embeddings(g.n, g.adj, pg, {a: x, b: y}):
                key = frozenset(w)
                if key in seen:
                    continue
                seen.add(key)
                yield w


def _iter_paths_through(adj, u: int, v: int, k: int) -> Iterator[tuple[int, ...]]:
    """Paths on k vertices containing edge (u,v): left arm from u, right arm from v."""

    def arms(start: int, avoid: int, length: int) -> Iterator[tuple[tuple[int, ...], int]]:
        # simple paths (start, ...) of `length` vertices avoiding bitset `avoid`
        if length == 1:
            yield (start,), 1 << start
            return
        for w in _bits(adj[start] & ~avoid & ~(1 << start)):
            for tail, bits in arms(w, avoid | (1 << start), length - 1):
                yield (start,) + tail, bits | (1 << start)

    for left_len in range(1, k):
        right_len = k - left_len
        for left, lbits in arms(u, 1 << v, left_len):
            for right, rbits in arms(v, lbits, right_len):
                yield tuple(reversed(left)) + right


def find_pattern_through_edge(g: Graph, pat: Pattern, e: tuple[int, int],
                              forbidden: frozenset = frozenset()) -> Optional[tuple[int, ...]]:
    """First copy of pat through e whose vertex set is not forbidden."""
    for w in iter_pattern_witnesses_through_edge(g, pat, e):
        if not forbidden or frozenset(w) not in forbidden:
            return w
    return None


def enumerate_copies(g: Graph, pat: Pattern) -> list[tuple[tuple[int, ...], tuple[tuple[int, int], ...]]]:
    """All distinct copies of pat in g as (witness vertices, canonical edge list).

    Copies are distinct edge subsets; the list order is deterministic.
    """
    out = []
    seen = set()

    def emit(w: tuple[int, ...], edges: Iterable[tuple[int, int]]):
        es = tuple(sorted((min(a, b), max(a, b)) for a, b in edges))
        if es not in seen:
            seen.add(es)
            out.append((w, es))

    if pat.kind == "clique":
        if pat.vertex_count > g.n:
            return []
        for vs in itertools.combinations(range(g.n), pat.size):
            if all(g.has_edge(a, b) for a, b in itertools.combinations(vs, 2)):
                emit(vs, itertools.combinations(vs, 2))
    elif pat.kind == "cycle":
        for w in _iter_cycles(g, pat.size):
            emit(w, zip(w, w[1:] + (w[0],)))
    elif pat.kind == "path":
        for w in _iter_paths(g, pat.size):
            emit(w, zip(w, w[1:]))
    else:
        pg = pat.graph
        pedges = pg.edges()
        for w in _iter_embeddings(g.n, g.adj, pg):
            emit(w, ((w[a], w[b]) for a, b in pedges))
    return out


# ---------------------------------------------------------------------
# Named families

def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, [])


def clique_graph(t: int) -> Graph:
    return Graph.from_edges(t, itertools.combinations(range(t), 2))


def cycle_graph(length: int) -> Graph:
    if length < 3:
        raise ValueError("cycle length must be >= 3")
    return Graph.from_edges(length, [(i, (i + 1) % length) for i in range(length)])


def path_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def complete_multipartite(sizes: Iterable[int]) -> Graph:
    """Complete multipartite graph; vertex labels record the part index."""
    sizes = list(sizes)
    if any(s < 1 for s in sizes):
        raise ValueError("part sizes must be positive")
    labels = [i for i, s in enumerate(sizes) for _ in range(s)]
    n = len(labels)
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2)
             if labels[u] != labels[v]]
    return Graph.from_edges(n, edges, labels)


def turan_graph(n: int, k: int) -> Graph:
    """Balanced complete k-partite graph on n vertices."""
    if k < 1 or k > n:
        raise ValueError("turan graph needs 1 <= k <= n")
    q, r = divmod(n, k)
    sizes = [q + 1] * r + [q] * (k - r)
    return complete_multipartite(sizes)


def blowup(base: Graph, m: int) -> Graph:
    """Replace each vertex by an independent set of size m.

    Base edges become complete bipartite between the corresponding sets;
    labels record the base vertex.
    """
    if m < 1:
        raise ValueError("blowup factor must be >= 1")
    n = base.n * m
    if n > MAX_VERTICES:
        raise ValueError("blowup exceeds vertex capacity")
    labels = [v for v in range(base.n) for _ in range(m)]
    edges = []
    for u, v in base.edges():
        for a in range(m):
            for b in range(m):
                edges.append((u * m + a, v * m + b))
    return Graph.from_edges(n, edges, labels)


def hm_graph(m: int) -> Graph:
    """Five parts of size m; parts 0-1 and 2-3 joined by perfect matchings,
    every other pair of parts joined completely."""
    return hmr_graph(m, 2)


def hmr_graph(m: int, r: int) -> Graph:
    """2^r + 1 parts of size m; the first 2^(r-1) consecutive part pairs are
    joined by perfect matchings, all other pairs completely."""
    if m < 1 or r < 1:
        raise ValueError("need m >= 1 and r >= 1")
    parts = (1 << r) + 1
    n = parts * m
    if n > MAX_VERTICES:
        raise ValueError("graph exceeds vertex capacity")
    labels = [p for p in range(parts) for _ in range(m)]
    matched = {(2 * i, 2 * i + 1) for i in range(1 << (r - 1))}
    edges = []
    for p, q in itertools.combinations(range(parts), 2):
        if (p, q) in matched:
            edges.extend((p * m + a, q * m + a) for a in range(m))
        else:
            edges.extend((p * m + a, q * m + b) for a in range(m) for b in range(m))
    return Graph.from_edges(n, edges, labels)


def part_vertices(g: Graph, part: int) -> list[int]:
    if g.labels is None:
        raise ValueError("graph has no part labels")
    return [v for v in range(g.n) if g.labels[v] == part]


def with_labels(g: Graph, labels: Sequence[int]) -> Graph:
    """Same graph, different vertex labels (e.g. part ids pulled back
    through a blow-up)."""
    if len(labels) != g.n:
        raise ValueError("label count must match vertex count")
    return Graph(g.n, tuple(g.adj), tuple(labels))


def build_family(descriptor) -> Graph:
    """Build a named family from a dict or a compact string.

    Accepts {"family": "turan", "args": [12, 4]} or "turan:12,4".
    Families: empty, clique, cycle, path, complete_multipartite, turan,
    blowup (graph6 base), hm, hmr.
    """
    from . import graph6

    if isinstance(descriptor, str):
        name, _, rest = descriptor.partition(":")
        args = [a for a in rest.split(",") if a] if rest else []
    else:
        name = descriptor["family"]
        args = list(descriptor.get("args", []))
    name = name.strip().lower()
    if name == "empty":
        return empty_graph(int(args[0]))
    if name == "clique":
        return clique_graph(int(args[0]))
    if name == "cycle":
        return cycle_graph(int(args[0]))
    if name == "path":
        return path_graph(int(args[0]))
    if name == "complete_multipartite":
        return complete_multipartite([int(a) for a in args])
    if name == "turan":
        return turan_graph(int(args[0]), int(args[1]))
    if name == "blowup":
        return blowup(graph6.decode(str(args[0])), int(args[1]))
    if name == "hm":
        return hm_graph(int(args[0]))
    if name == "hmr":
        return hmr_graph(int(args[0]), int(args[1]))
    if name == "graph6":
        return graph6.decode(str(args[0]))
    raise ValueError(f"unknown family {name!r}")
