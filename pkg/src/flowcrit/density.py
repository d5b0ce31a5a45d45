"""Partition potential, forest decompositions, tree packings, density bounds.

The potential of a vertex partition X1..Xt is sum(d(Xi)) - 8t + 20, where
d(Xi) counts edges leaving the block (parallel edges with multiplicity). The
potential of a graph is the exact minimum over all set partitions of V. The
single-block partition always scores 12 and the all-singleton one scores
2m - 8n + 20, so the interesting minimizers live in between.

Writing int(X) for the number of edges inside block X, the potential equals

    2m + 20 - 2 * sum over blocks of (int(X) + 4)

which is the form the branch-and-bound minimizer works with: growing a
partition vertex by vertex, each vertex contributes its edges back into its
own block when it joins one, or a flat 4 when it opens one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import BoundViolation, CapExceeded
from .criticality import CriticalityCertificate, ReductionTrace, z3_reduce
from .flows import is_z3_connected
from .multigraph import (
    Edge,
    MultiGraph,
    VertexPartition,
    is_connected,
    normalize_partition,
    recognize_small,
)

POTENTIAL_VERTEX_CAP = 13  # Bell(13) is 27.6M, the last comfortable size


def rho_of_partition(g: MultiGraph, blocks: Iterable[Iterable[int]]) -> int:
    """Exact potential of one partition: sum of block boundary degrees - 8t + 20."""
    norm = normalize_partition(g.n, blocks)
    owner = [0] * g.n
    for i, blk in enumerate(norm):
        for v in blk:
            owner[v] = i
    cross = sum(1 for e in g.edges if owner[e.u] != owner[e.v])
    return 2 * cross - 8 * len(norm) + 20


@dataclass(frozen=True)
class RhoResult:
    value: int
    partition: VertexPartition
    rgs: tuple[int, ...]  # restricted growth string of the minimizer
    trivial: bool         # all singletons
    k2_trivial: bool      # one block inducing a single edge, rest singletons
    k3_trivial: bool      # one block inducing a triangle, rest singletons

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "partition": [list(b) for b in self.partition],
            "rgs": list(self.rgs),
            "trivial": self.trivial,
            "k2_trivial": self.k2_trivial,
            "k3_trivial": self.k3_trivial,
        }


def _rgs_to_blocks(rgs: Sequence[int]) -> VertexPartition:
    t = max(rgs, default=-1) + 1
    blocks: list[list[int]] = [[] for _ in range(t)]
    for v, d in enumerate(rgs):
        blocks[d].append(v)
    return tuple(tuple(b) for b in blocks)


def rho_min(g: MultiGraph) -> RhoResult:
    """Exact minimum of the potential over all vertex partitions.

    Depth-first over restricted growth strings in lexicographic order, so the
    reported minimizer is the first one in that order. A prefix dies when
    even the best completion cannot beat the incumbent: every unplaced vertex
    v contributes at most max(4, back(v)) to the block-credit sum, where
    back(v) counts v's edges to lower-numbered vertices (a joiner banks at
    most back(v), an opener banks exactly 4). Ties never evict the incumbent,
    which keeps the lexicographic-first guarantee.
    """
    n, m = g.n, g.m
    if n > POTENTIAL_VERTEX_CAP:
        raise CapExceeded(f"potential minimization capped at {POTENTIAL_VERTEX_CAP} vertices, got {n}")
    back: list[dict[int, int]] = [dict() for _ in range(n)]
    for e in g.edges:
        lo, hi = min(e.u, e.v), max(e.u, e.v)
        back[hi][lo] = back[hi].get(lo, 0) + 1
    suffix = [0] * (n + 1)
    for v in range(n - 1, -1, -1):
        suffix[v] = suffix[v + 1] + max(4, sum(back[v].values()))

    best_val: int | None = None
    best_rgs: tuple[int, ...] = ()
    rgs = [0] * n

    def dfs(i: int, credit: int, nblocks: int) -> None:
        nonlocal best_val, best_rgs
        if best_val is not None and 2 * m + 20 - 2 * (credit + suffix[i]) > best_val:
            return
        if i == n:
            val = 2 * m + 20 - 2 * credit
            if best_val is None or val < best_val:
                best_val, best_rgs = val, tuple(rgs[:n])
            return
        gain = [0] * nblocks
        for w, mult in back[i].items():
            gain[rgs[w]] += mult
        for d in range(nblocks + 1):
            rgs[i] = d
            if d < nblocks:
                dfs(i + 1, credit + gain[d], nblocks)
            else:
                dfs(i + 1, credit + 4, nblocks + 1)

    dfs(0, 0, 0)
    assert best_val is not None
    blocks = _rgs_to_blocks(best_rgs)
    big = [b for b in blocks if len(b) > 1]
    k2 = k3 = False
    if len(big) == 1:
        sub = g.induced(big[0]).graph
        complete = sub.is_simple() and sub.m == sub.n * (sub.n - 1) // 2
        k2 = complete and sub.n == 2
        k3 = complete and sub.n == 3
    return RhoResult(best_val, blocks, best_rgs, trivial=not big, k2_trivial=k2, k3_trivial=k3)


@dataclass(frozen=True)
class DichotomyReport:
    """Outcome of the potential dichotomy on one graph.

    Nonnegative potential must force one of two branches: the graph is
    Z3-connected, or its reduction terminates in K2, K3, P3, or K4. A graph
    landing in neither branch would contradict a proven statement, so holds
    is reported rather than assumed.
    """

    rho: int
    hypothesis_met: bool
    z3_connected: bool | None = None
    reduced_to: str | None = None
    holds: bool | None = None
    trace: ReductionTrace | None = None

    @property
    def conclusion(self) -> str:
        if self.z3_connected:
            return "z3-connected"
        if not self.hypothesis_met:
            return "hypothesis-not-met"
        return f"reduced-to-{self.reduced_to}"

    def to_json(self) -> dict:
        out: dict = {"rho": self.rho, "hypothesis_met": self.hypothesis_met,
                     "conclusion": self.conclusion, "holds": self.holds}
        if self.trace is not None:
            out["reduction"] = self.trace.to_json()
        return out


def check_potential_dichotomy(g: MultiGraph) -> DichotomyReport:
    """Evaluate the dichotomy: rho >= 0 implies Z3-connected or reduction to a small target.

    Branch (i) is checked even when rho is negative (the report then says the
    hypothesis failed but still names the branch that happens to hold); holds
    stays None for negative rho because the statement claims nothing there.
    """
    rho = rho_min(g).value
    met = rho >= 0
    z3, _ = is_z3_connected(g)
    if z3:
        return DichotomyReport(rho, met, z3_connected=True, holds=True if met else None)
    if not met:
        return DichotomyReport(rho, False, z3_connected=False)
    trace = z3_reduce(g)
    target = trace.reduced_to
    return DichotomyReport(rho, True, z3_connected=False, reduced_to=target,
                           holds=target in ("K2", "K3", "P3", "K4"), trace=trace)


# ---------------------------------------------------------------------------
# forests and spanning trees by matroid-union augmentation

class ForestViolation(NamedTuple):
    vertices: tuple[int, ...]
    edges: tuple[int, ...]  # these satisfy |edges| > k * (|vertices| - 1)


class ForestDecomposition(NamedTuple):
    forests: tuple[tuple[int, ...], ...] | None
    violation: ForestViolation | None


class PackingViolation(NamedTuple):
    blocks: VertexPartition
    cross_edges: int  # strictly fewer than k * (len(blocks) - 1)


class TreePacking(NamedTuple):
    trees: tuple[tuple[int, ...], ...] | None
    violation: PackingViolation | None


class _ForestUnion:
    """k edge-disjoint forests over a fixed graph, grown one edge at a time.

    insert(e) either augments (possibly shuffling edges between forests along
    an exchange path found by breadth-first search) or proves e dependent and
    returns the closed set of edges the search visited. That closed set spans
    its vertex set in every forest simultaneously, which is exactly what the
    failure certificates are built from.
    """

    def __init__(self, g: MultiGraph, k: int):
        self.g = g
        self.k = k
        self.adj: list[dict[int, list[tuple[int, int]]]] = [dict() for _ in range(k)]
        self.where: dict[int, int] = {}

    def _tree_path(self, fi: int, a: int, b: int) -> list[int] | None:
        """Edge ids on the forest-fi path from a to b, or None if disconnected."""
        if a == b:
            return []
        adj = self.adj[fi]
        prev: dict[int, tuple[int, int]] = {a: (-1, -1)}
        queue = [a]
        for v in queue:
            for w, eid in adj.get(v, ()):
                if w not in prev:
                    prev[w] = (v, eid)
                    if w == b:
                        path = []
                        x = b
                        while x != a:
                            px, peid = prev[x]
                            path.append(peid)
                            x = px
                        return path
                    queue.append(w)
        return None

    def _attach(self, e: Edge, fi: int) -> None:
        assert self._tree_path(fi, e.u, e.v) is None, "attach would close a cycle"
        self.adj[fi].setdefault(e.u, []).append((e.v, e.id))
        self.adj[fi].setdefault(e.v, []).append((e.u, e.id))
        self.where[e.id] = fi

    def _detach(self, e: Edge, fi: int) -> None:
        self.adj[fi][e.u].remove((e.v, e.id))
        self.adj[fi][e.v].remove((e.u, e.id))
        del self.where[e.id]

    def insert(self, e0: Edge) -> tuple[bool, list[int]]:
        """Try to fit e0 in; on failure return the visited edge ids (e0 first)."""
        parent: dict[int, int] = {}
        seen = {e0.id}
        queue = [e0]
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            for fi in range(self.k):
                path = self._tree_path(fi, x.u, x.v)
                if path is None:
                    # free slot: ripple displacements back toward e0
                    cur, dest = x, fi
                    while True:
                        src = self.where.get(cur.id)
                        if src is not None:
                            self._detach(cur, src)
                        self._attach(cur, dest)
                        if cur.id not in parent:
                            break
                        cur = self.g.edge(parent[cur.id])
                        dest = src
                    return True, []
                for peid in path:
                    if peid not in seen:
                        seen.add(peid)
                        parent[peid] = x.id
                        queue.append(self.g.edge(peid))
        return False, [e.id for e in queue]

    def forests(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for eid, fi in sorted(self.where.items()):
            out[fi].append(eid)
        return tuple(tuple(f) for f in out)


def _closure_vertices(g: MultiGraph, eids: Iterable[int]) -> tuple[int, ...]:
    vs: set[int] = set()
    for eid in eids:
        e = g.edge(eid)
        vs.add(e.u)
        vs.add(e.v)
    return tuple(sorted(vs))


def decompose_into_forests(g: MultiGraph, k: int) -> ForestDecomposition:
    """Partition the edges into k forests, or certify impossibility.

    The certificate is a subgraph H with more than k(|V(H)|-1) edges: the
    closed edge set of the failed augmentation search spans its vertex set W
    as a tree inside each of the k forests, so it holds exactly k(|W|-1)
    edges, and the unplaceable edge tips it over.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    union = _ForestUnion(g, k)
    for e in g.edges:
        ok, visited = union.insert(e)
        if not ok:
            vs = _closure_vertices(g, visited)
            assert len(visited) > k * (len(vs) - 1), "failure certificate fails its own inequality"
            return ForestDecomposition(None, ForestViolation(vs, tuple(sorted(visited))))
    return ForestDecomposition(union.forests(), None)


def spanning_tree_packing(g: MultiGraph, k: int) -> TreePacking:
    """Find k edge-disjoint spanning trees, or certify impossibility.

    The certificate is a vertex partition P crossed by fewer than k(|P|-1)
    edges. It is assembled from the failed searches: each unplaceable edge
    yields a vertex set that every forest spans as a tree; overlapping sets
    merge into blocks, untouched vertices stay singletons, and counting the
    placed edges inside the blocks leaves too few to cross.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if not is_connected(g):
        raise ValueError("spanning tree packing needs a connected graph")
    if g.n <= 1:
        return TreePacking(tuple(() for _ in range(k)), None)
    union = _ForestUnion(g, k)
    rejected: list[Edge] = []
    for e in g.edges:
        ok, _ = union.insert(e)
        if not ok:
            rejected.append(e)
    if len(union.where) == k * (g.n - 1):
        return TreePacking(union.forests(), None)
    parent = list(range(g.n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in rejected:
        ok, visited = union.insert(e)  # read-only on failure
        assert not ok, "an edge rejected earlier became insertable"
        vs = _closure_vertices(g, visited)
        for v in vs[1:]:
            ra, rb = find(vs[0]), find(v)
            if ra != rb:
                parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    blocks = normalize_partition(g.n, list(groups.values()))
    owner = [0] * g.n
    for i, blk in enumerate(blocks):
        for v in blk:
            owner[v] = i
    cross = sum(1 for e in g.edges if owner[e.u] != owner[e.v])
    assert cross < k * (len(blocks) - 1), "packing certificate fails its own inequality"
    return TreePacking(None, PackingViolation(blocks, cross))


# ---------------------------------------------------------------------------
# density bounds

@dataclass(frozen=True)
class DensityReport:
    """Edge-count bound checks for one certified-critical graph.

    Proven facts (violations are hard errors upstream):
      lower_ok            5m >= 8n - 2, equality reserved for K4;
                          off K4 the sharper 5m >= 8n + 2
      upper_ok            m <= 4n - 10, equality reserved for K4;
                          off K4 the sharper m <= 4n - 11
      low_degree_ok       2m < 5n + 18 * n8, n8 = vertices of degree <= 8

    Conjectured (violations are reported as flags, never errors):
      linear_3n8_ok       m <= 3n - 8, stated for n >= 7 only (None below)
      degree3_ok          2m < 5n + 2 * n3, n3 = vertices of degree 3
    """

    n: int
    m: int
    n3: int
    n8: int
    is_k4: bool
    lower_ok: bool
    upper_ok: bool
    low_degree_ok: bool
    linear_3n8_ok: bool | None
    degree3_ok: bool
    conjecture_flags: tuple[str, ...]

    CSV_FIELDS = ("n", "m", "n3", "n8", "lower_ok", "upper_ok",
                  "low_degree_ok", "linear_3n8_ok", "degree3_ok")

    def to_json(self) -> dict:
        return {
            "n": self.n, "m": self.m, "n3": self.n3, "n8": self.n8,
            "is_k4": self.is_k4,
            "lower_ok": self.lower_ok, "upper_ok": self.upper_ok,
            "low_degree_ok": self.low_degree_ok,
            "linear_3n8_ok": self.linear_3n8_ok,
            "degree3_ok": self.degree3_ok,
            "conjecture_flags": list(self.conjecture_flags),
        }

    def csv_row(self) -> dict:
        row = self.to_json()
        return {key: ("NA" if row[key] is None else row[key]) for key in self.CSV_FIELDS}


def density_report(g: MultiGraph, certificate: CriticalityCertificate) -> DensityReport:
    """Evaluate all edge-count bounds for a certified-critical graph.

    A violated proven bound raises BoundViolation with a diagnostic dump,
    because it can only mean a bug. Violated conjectured bounds come back as
    flags for the caller to headline.
    """
    if not certificate.is_critical:
        raise ValueError("density bounds apply to certified-critical graphs only")
    n, m = g.n, g.m
    n3 = sum(1 for d in g.degrees if d == 3)
    n8 = sum(1 for d in g.degrees if d <= 8)
    is_k4 = recognize_small(g) == "K4"
    if is_k4:
        lower_ok = 5 * m >= 8 * n - 2
        upper_ok = m <= 4 * n - 10
    else:
        lower_ok = 5 * m >= 8 * n + 2
        upper_ok = m <= 4 * n - 11
    low_degree_ok = 2 * m < 5 * n + 18 * n8
    if not (lower_ok and upper_ok and low_degree_ok):
        raise BoundViolation(
            "proven density bound violated on certified-critical input",
            {"graph": g.to_json(), "certificate": certificate.to_json(),
             "n": n, "m": m, "n3": n3, "n8": n8, "is_k4": is_k4,
             "lower_ok": lower_ok, "upper_ok": upper_ok, "low_degree_ok": low_degree_ok},
        )
    linear_ok = (m <= 3 * n - 8) if n >= 7 else None
    degree3_ok = 2 * m < 5 * n + 2 * n3
    flags = []
    if linear_ok is False:
        flags.append("3n-8")
    if not degree3_ok:
        flags.append("5n/2+n3")
    return DensityReport(n, m, n3, n8, is_k4, lower_ok, upper_ok,
                         low_degree_ok, linear_ok, degree3_ok, tuple(flags))
