"""Loopless multigraphs with stable edge identities.

Vertices are integers 0..n-1. Every edge carries an integer id that survives
deletion, contraction, quotient, and induced subgraph, so callers can iterate
over the edges of one graph while deciding questions about graphs derived from
it. All operations build fresh graphs; nothing is mutated after construction.

Parallel edges are first-class (they matter for mod-3 orientations), loops are
rejected at construction and silently dropped by contraction.
"""

from __future__ import annotations

import itertools
from typing import Iterable, NamedTuple

import numpy as np

from .errors import CapExceeded

VERTEX_LIMIT = 64

# subset enumeration is used up to this many vertices; beyond it the
# connectivity queries switch to augmenting-path min cuts
ENUM_VERTEX_CAP = 20

# canonical forms enumerate permutations within degree classes; the product of
# class factorials must stay under this
CANONICAL_PERM_CAP = 500_000

INFINITY = float("inf")


class Edge(NamedTuple):
    id: int
    u: int
    v: int

    def other(self, w: int) -> int:
        return self.v if w == self.u else self.u


class Contraction(NamedTuple):
    graph: "MultiGraph"
    vertex_map: tuple[int, ...]
    removed_edges: tuple[int, ...]


class Quotient(NamedTuple):
    graph: "MultiGraph"
    blocks: tuple[tuple[int, ...], ...]
    removed_edges: tuple[int, ...]


class Induced(NamedTuple):
    graph: "MultiGraph"
    vertices: tuple[int, ...]


class MultiGraph:
    """Immutable loopless multigraph on vertices 0..n-1."""

    __slots__ = ("n", "edges", "_degrees", "_adj", "_by_id")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        if n > VERTEX_LIMIT:
            raise ValueError(f"graphs beyond {VERTEX_LIMIT} vertices are out of scope, got n={n}")
        es = tuple(sorted((Edge(*e) for e in edges), key=lambda e: e.id))
        seen: set[int] = set()
        for e in es:
            if not (0 <= e.u < n and 0 <= e.v < n):
                raise ValueError(f"edge {e} has an endpoint outside 0..{n - 1}")
            if e.u == e.v:
                raise ValueError(f"loops are not allowed: {e}")
            if e.id in seen:
                raise ValueError(f"duplicate edge id {e.id}")
            seen.add(e.id)
        self.n = n
        self.edges = es
        degs = [0] * n
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for e in es:
            degs[e.u] += 1
            degs[e.v] += 1
            adj[e.u].append((e.v, e.id))
            adj[e.v].append((e.u, e.id))
        self._degrees = tuple(degs)
        self._adj = tuple(tuple(a) for a in adj)
        self._by_id = {e.id: e for e in es}

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "MultiGraph":
        """Build a graph with edge ids assigned 0..m-1 in input order."""
        return cls(n, [(i, u, v) for i, (u, v) in enumerate(pairs)])

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self._degrees[v]

    @property
    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    @property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per-vertex tuple of (neighbor, edge_id)."""
        return self._adj

    def edge(self, eid: int) -> Edge:
        return self._by_id[eid]

    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e.id for e in self.edges)

    def pair_counts(self) -> dict[tuple[int, int], int]:
        """Multiplicity of each unordered endpoint pair."""
        out: dict[tuple[int, int], int] = {}
        for e in self.edges:
            key = (min(e.u, e.v), max(e.u, e.v))
            out[key] = out.get(key, 0) + 1
        return out

    def is_simple(self) -> bool:
        return all(c == 1 for c in self.pair_counts().values())

    def next_edge_id(self) -> int:
        return max((e.id for e in self.edges), default=-1) + 1

    def add_edge(self, u: int, v: int) -> "MultiGraph":
        eid = self.next_edge_id()
        return MultiGraph(self.n, list(self.edges) + [(eid, u, v)])

    def delete_edge(self, eid: int) -> "MultiGraph":
        if eid not in self._by_id:
            raise KeyError(f"no edge with id {eid}")
        return MultiGraph(self.n, [e for e in self.edges if e.id != eid])

    def delete_edges(self, eids: Iterable[int]) -> "MultiGraph":
        drop = set(eids)
        return MultiGraph(self.n, [e for e in self.edges if e.id not in drop])

    def contract_edge(self, eid: int) -> Contraction:
        """Contract one edge, merging its endpoints.

        Every parallel copy of the contracted pair becomes a loop and is
        removed (their ids are reported). Vertices are relabeled densely:
        the larger endpoint disappears, everything above it shifts down by
        one. Surviving edges keep their ids.
        """
        e = self._by_id[eid]
        a, b = min(e.u, e.v), max(e.u, e.v)
        vmap = [v - (1 if v > b else 0) for v in range(self.n)]
        vmap[b] = vmap[a]
        kept: list[tuple[int, int, int]] = []
        removed: list[int] = []
        for f in self.edges:
            if {f.u, f.v} == {a, b}:
                removed.append(f.id)
            else:
                kept.append((f.id, vmap[f.u], vmap[f.v]))
        return Contraction(MultiGraph(self.n - 1, kept), tuple(vmap), tuple(removed))

    def quotient(self, blocks: Iterable[Iterable[int]]) -> Quotient:
        """Identify each block of a vertex partition to a single vertex.

        Blocks are normalized (sorted by minimum element) and become the new
        vertices in that order. Edges inside a block are removed, edges
        between blocks are kept with multiplicity and keep their ids.
        """
        norm = normalize_partition(self.n, blocks)
        vmap = [0] * self.n
        for i, blk in enumerate(norm):
            for v in blk:
                vmap[v] = i
        kept: list[tuple[int, int, int]] = []
        removed: list[int] = []
        for e in self.edges:
            if vmap[e.u] == vmap[e.v]:
                removed.append(e.id)
            else:
                kept.append((e.id, vmap[e.u], vmap[e.v]))
        return Quotient(MultiGraph(len(norm), kept), norm, tuple(removed))

    def induced(self, vertices: Iterable[int]) -> Induced:
        vs = tuple(sorted(set(vertices)))
        if not all(0 <= v < self.n for v in vs):
            raise ValueError("induced vertex set out of range")
        idx = {v: i for i, v in enumerate(vs)}
        kept = [(e.id, idx[e.u], idx[e.v]) for e in self.edges if e.u in idx and e.v in idx]
        return Induced(MultiGraph(len(vs), kept), vs)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [[e.id, e.u, e.v] for e in self.edges]}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MultiGraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# partitions

VertexPartition = tuple[tuple[int, ...], ...]


def normalize_partition(n: int, blocks: Iterable[Iterable[int]]) -> VertexPartition:
    """Validate a vertex partition and bring it to canonical order.

    Blocks must be nonempty, disjoint, and cover 0..n-1 exactly. The result
    lists each block as a sorted tuple, blocks ordered by smallest element.
    """
    mats = [tuple(sorted(b)) for b in blocks]
    seen: set[int] = set()
    for blk in mats:
        if not blk:
            raise ValueError("empty block in partition")
        if len(set(blk)) != len(blk):
            raise ValueError(f"repeated vertex inside block {blk}")
        for v in blk:
            if not (0 <= v < n):
                raise ValueError(f"vertex {v} out of range in partition")
            if v in seen:
                raise ValueError(f"vertex {v} appears in two blocks")
            seen.add(v)
    if len(seen) != n:
        missing = sorted(set(range(n)) - seen)
        raise ValueError(f"partition does not cover vertices {missing}")
    return tuple(sorted(mats, key=lambda b: b[0]))


# ---------------------------------------------------------------------------
# traversal

def connected_components(g: MultiGraph) -> list[tuple[int, ...]]:
    seen = [False] * g.n
    comps: list[tuple[int, ...]] = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = [s]
        while stack:
            v = stack.pop()
            for w, _ in g.adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def is_connected(g: MultiGraph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def bridges(g: MultiGraph) -> tuple[int, ...]:
    """Edge ids of all bridges, ascending.

    Iterative lowpoint DFS. An edge parallel to another edge is never a
    bridge, which falls out naturally because only the specific tree edge id
    is skipped when scanning back edges.
    """
    n = g.n
    disc = [-1] * n
    low = [0] * n
    out: list[int] = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        stack: list[tuple[int, int, int]] = [(root, -1, 0)]  # vertex, entering edge id, adj index
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, pe, i = stack.pop()
            if i < len(g.adjacency[v]):
                stack.append((v, pe, i + 1))
                w, eid = g.adjacency[v][i]
                if eid == pe:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, eid, 0))
                else:
                    low[v] = min(low[v], disc[w])
            elif pe != -1:
                # leaving v: fold its lowpoint into the parent
                parent = g.edge(pe).other(v)
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    out.append(pe)
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# cuts

_CHUNK = 1 << 18


def _subset_cut_sizes(g: MultiGraph, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Cut data for subset codes lo..hi-1 over vertices 1..n-1 (vertex 0 fixed outside).

    Returns (cut sizes, side-S has an edge, complement side has an edge).
    """
    ids = np.arange(lo, hi, dtype=np.uint64)
    k = len(ids)
    cuts = np.zeros(k, dtype=np.int32)
    s_edge = np.zeros(k, dtype=bool)
    c_edge = np.zeros(k, dtype=bool)
    for e in g.edges:
        bu = ((ids >> np.uint64(e.u - 1)) & np.uint64(1)).astype(bool) if e.u > 0 else np.zeros(k, dtype=bool)
        bv = ((ids >> np.uint64(e.v - 1)) & np.uint64(1)).astype(bool) if e.v > 0 else np.zeros(k, dtype=bool)
        cuts += (bu ^ bv).astype(np.int32)
        s_edge |= bu & bv
        c_edge |= ~bu & ~bv
    return cuts, s_edge, c_edge


def _edge_connectivity_enum(g: MultiGraph) -> int:
    best = g.m + 1
    total = 1 << (g.n - 1)
    for lo in range(1, total, _CHUNK):
        cuts, _, _ = _subset_cut_sizes(g, lo, min(lo + _CHUNK, total))
        best = min(best, int(cuts.min()))
    return best


def _essential_connectivity_enum(g: MultiGraph) -> float:
    best = INFINITY
    total = 1 << (g.n - 1)
    for lo in range(1, total, _CHUNK):
        cuts, s_edge, c_edge = _subset_cut_sizes(g, lo, min(lo + _CHUNK, total))
        ok = s_edge & c_edge
        if ok.any():
            best = min(best, int(cuts[ok].min()))
    return best


def _collapsed_capacities(n: int, edges: Iterable[Edge]) -> list[dict[int, int]]:
    cap: list[dict[int, int]] = [dict() for _ in range(n)]
    for e in edges:
        cap[e.u][e.v] = cap[e.u].get(e.v, 0) + 1
        cap[e.v][e.u] = cap[e.v].get(e.u, 0) + 1
    return cap


def _max_flow(cap: list[dict[int, int]], s: int, t: int) -> int:
    """Edmonds-Karp on an undirected capacity map (mutates a copy)."""
    res = [dict(d) for d in cap]
    flow = 0
    while True:
        parent = {s: -1}
        queue = [s]
        for v in queue:
            if v == t:
                break
            for w, c in res[v].items():
                if c > 0 and w not in parent:
                    parent[w] = v
                    queue.append(w)
        if t not in parent:
            return flow
        aug = min(res[parent[v]][v] for v in _walk_back(parent, s, t))
        for v in _walk_back(parent, s, t):
            p = parent[v]
            res[p][v] -= aug
            res[v][p] = res[v].get(p, 0) + aug
        flow += aug


def _walk_back(parent: dict[int, int], s: int, t: int):
    v = t
    while v != s:
        yield v
        v = parent[v]


def _edge_connectivity_flow(g: MultiGraph) -> int:
    cap = _collapsed_capacities(g.n, g.edges)
    return min(_max_flow(cap, 0, t) for t in range(1, g.n))


def _essential_connectivity_flow(g: MultiGraph) -> float:
    # minimum over bipartitions keeping edge e on one side and f on the other:
    # merge the endpoints of each and take the min cut between the merged nodes
    best = INFINITY
    pairs = sorted(g.pair_counts())
    for (a, b), (c, d) in itertools.combinations(pairs, 2):
        if {a, b} & {c, d}:
            continue
        vmap = list(range(g.n))
        vmap[b] = a
        vmap[d] = c
        merged = [Edge(e.id, vmap[e.u], vmap[e.v]) for e in g.edges]
        merged = [e for e in merged if e.u != e.v]
        cap = _collapsed_capacities(g.n, merged)
        best = min(best, _max_flow(cap, a, c))
    return best


def edge_connectivity(g: MultiGraph) -> int:
    """Minimum edge cut size over all bipartitions, exactly.

    Subset enumeration up to ENUM_VERTEX_CAP vertices, augmenting-path min
    cuts above that. Disconnected input returns 0.
    """
    if g.n < 2:
        raise ValueError("edge connectivity needs at least two vertices")
    if not is_connected(g):
        return 0
    if g.n <= ENUM_VERTEX_CAP:
        return _edge_connectivity_enum(g)
    return _edge_connectivity_flow(g)


def essential_edge_connectivity(g: MultiGraph) -> float:
    """Minimum size of an edge cut with at least one edge on each side.

    Returns INFINITY when no such cut exists (too few disjoint edges).
    """
    if not is_connected(g):
        # loopless, so exactly the multi-vertex components carry edges
        carriers = [c for c in connected_components(g) if len(c) >= 2]
        if len(carriers) >= 2:
            return 0
        if not carriers:
            return INFINITY
        return essential_edge_connectivity(g.induced(carriers[0]).graph)
    if g.n < 2:
        return INFINITY
    if g.n <= ENUM_VERTEX_CAP:
        return _essential_connectivity_enum(g)
    return _essential_connectivity_flow(g)


# ---------------------------------------------------------------------------
# recognition and isomorphism

def recognize_small(g: MultiGraph) -> str:
    """Classify as one of K1, K2, K3, P3, K4, or other (exact, not up to minors)."""
    if g.n == 1 and g.m == 0:
        return "K1"
    if g.n == 2 and g.m == 1:
        return "K2"
    if g.n == 3 and g.m == 3 and g.is_simple():
        return "K3"
    if g.n == 3 and g.m == 2 and g.is_simple() and sorted(g.degrees) == [1, 1, 2]:
        return "P3"
    if g.n == 4 and g.m == 6 and g.is_simple():
        return "K4"
    return "other"


def _degree_classes(g: MultiGraph) -> list[list[int]]:
    """Vertices grouped by degree, degree ascending; cap-guarded on group size."""
    order = sorted(range(g.n), key=lambda v: (g.degrees[v], v))
    classes: list[list[int]] = []
    for v in order:
        if classes and g.degrees[classes[-1][0]] == g.degrees[v]:
            classes[-1].append(v)
        else:
            classes.append([v])
    count = 1
    for cls in classes:
        for i in range(2, len(cls) + 1):
            count *= i
        if count > CANONICAL_PERM_CAP:
            raise CapExceeded(f"degree classes admit more than {CANONICAL_PERM_CAP} permutations")
    return classes


def _class_relabelings(g: MultiGraph):
    """Vertex -> new-label maps sending each degree class to a fixed block of
    consecutive labels. Isomorphic graphs range over identical image sets, so
    minimizing the relabeled edge list over these maps is label-invariant."""
    for choice in itertools.product(*(itertools.permutations(c) for c in _degree_classes(g))):
        perm = [0] * g.n
        pos = 0
        for img in choice:
            for v in img:
                perm[v] = pos
                pos += 1
        yield tuple(perm)


def _degree_class_permutations(g: MultiGraph):
    """All vertex permutations mapping each degree class onto itself."""
    classes = _degree_classes(g)
    for choice in itertools.product(*(itertools.permutations(c) for c in classes)):
        perm = [0] * g.n
        for cls, img in zip(classes, choice):
            for a, b in zip(cls, img):
                perm[a] = b
        yield tuple(perm)


def _edge_key(g: MultiGraph, perm: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((min(perm[e.u], perm[e.v]), max(perm[e.u], perm[e.v])) for e in g.edges))


def canonical_form(g: MultiGraph) -> tuple:
    """Label-invariant canonical key: (n, lexicographically least permuted edge list)."""
    if g.n == 0:
        return (0, ())
    best = None
    for perm in _class_relabelings(g):
        key = _edge_key(g, perm)
        if best is None or key < best:
            best = key
    return (g.n, best)


def are_isomorphic(g: MultiGraph, h: MultiGraph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees) != sorted(h.degrees):
        return False
    return canonical_form(g) == canonical_form(h)


def automorphisms(g: MultiGraph):
    """Yield all vertex permutations preserving the edge multiset."""
    base = _edge_key(g, tuple(range(g.n)))
    for perm in _degree_class_permutations(g):
        if _edge_key(g, perm) == base:
            yield perm


def edge_orbits(g: MultiGraph) -> list[tuple[int, ...]]:
    """Orbits of edge ids under the automorphism group.

    Parallel copies of one endpoint pair always share an orbit. Useful for
    cutting down case sweeps that are symmetric in the choice of edge.
    """
    pair_of: dict[int, tuple[int, int]] = {}
    ids_of: dict[tuple[int, int], list[int]] = {}
    for e in g.edges:
        key = (min(e.u, e.v), max(e.u, e.v))
        pair_of[e.id] = key
        ids_of.setdefault(key, []).append(e.id)
    # union pairs related by some automorphism
    parent: dict[tuple[int, int], tuple[int, int]] = {p: p for p in ids_of}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for perm in automorphisms(g):
        for p in ids_of:
            q = (min(perm[p[0]], perm[p[1]]), max(perm[p[0]], perm[p[1]]))
            ra, rb = find(p), find(q)
            if ra != rb:
                parent[ra] = rb
    groups: dict[tuple[int, int], list[int]] = {}
    for p, ids in ids_of.items():
        groups.setdefault(find(p), []).extend(ids)
    return sorted((tuple(sorted(v)) for v in groups.values()), key=lambda t: t[0])
