"""Exact decision procedures for modulo-3 orientations and Z3-connectivity.

Everything here is decided by exhaustive search with pruning, never by
heuristics, and every positive answer carries a witness orientation that can
be re-verified from scratch. Negative answers from the backtracking solver
are genuine exhaustion proofs (the search is complete), and a separate
brute-force oracle over all 2^m orientations provides an independent route
for cross-checking.

A boundary assigns each vertex a target in {0,1,2}; an orientation satisfies
it when out-degree minus in-degree is congruent to the target modulo 3 at
every vertex. The all-zero boundary is the modulo 3-orientation, equivalent
to a nowhere-zero 3-flow.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import CapExceeded
from .multigraph import Edge, MultiGraph, bridges

# the backtracking solver and the boundary sweep are exponential; these caps
# turn runaway inputs into errors instead of silent non-answers
SOLVER_VERTEX_CAP = 20
Z3_VERTEX_CAP = 12
BRUTE_EDGE_CAP = 24

Z3Boundary = tuple[int, ...]


def check_boundary(g: MultiGraph, beta: Sequence[int]) -> Z3Boundary:
    """Validate a boundary for g: one value per vertex, in {0,1,2}, summing to 0 mod 3."""
    b = tuple(int(x) for x in beta)
    if len(b) != g.n:
        raise ValueError(f"boundary has {len(b)} entries for {g.n} vertices")
    if any(x not in (0, 1, 2) for x in b):
        raise ValueError("boundary values must lie in {0, 1, 2}")
    if sum(b) % 3 != 0:
        raise ValueError("boundary values must sum to 0 mod 3")
    return b


def zero_boundary(g: MultiGraph) -> Z3Boundary:
    return (0,) * g.n


@dataclass(frozen=True)
class Orientation:
    """A direction for every edge, stored as (edge_id, tail, head) sorted by id."""

    arcs: tuple[tuple[int, int, int], ...]

    def imbalances(self, g: MultiGraph) -> tuple[int, ...]:
        """Out-degree minus in-degree at each vertex; raises if arcs don't match g."""
        if len(self.arcs) != g.m:
            raise ValueError(f"orientation covers {len(self.arcs)} edges, graph has {g.m}")
        imb = [0] * g.n
        for eid, tail, head in self.arcs:
            e = g.edge(eid)
            if {tail, head} != {e.u, e.v}:
                raise ValueError(f"arc {(eid, tail, head)} does not match edge {e}")
            imb[tail] += 1
            imb[head] -= 1
        return tuple(imb)

    def satisfies(self, g: MultiGraph, beta: Sequence[int]) -> bool:
        b = check_boundary(g, beta)
        return all((x - t) % 3 == 0 for x, t in zip(self.imbalances(g), b))

    def reversed_copy(self) -> "Orientation":
        return Orientation(tuple((eid, h, t) for eid, t, h in self.arcs))

    def to_json(self) -> list[list[int]]:
        return [list(a) for a in self.arcs]

    @classmethod
    def from_arcs(cls, arcs) -> "Orientation":
        return cls(tuple(sorted((int(a), int(b), int(c)) for a, b, c in arcs)))


class BipartiteOrientation(NamedTuple):
    graph: MultiGraph
    orientation: Orientation
    constructed: bool  # False means the generic solver had to step in


def _frontier_edge_order(g: MultiGraph) -> list[Edge]:
    """Edges sorted so each one closes into already-visited territory.

    Vertices get breadth-first discovery positions (per component, ascending
    roots); an edge is keyed by the later endpoint position. Orienting edges
    in this order means the feasibility test at a vertex fires as soon as its
    last incident edge is placed, which is what makes the pruning bite.
    """
    pos = [-1] * g.n
    t = 0
    for root in range(g.n):
        if pos[root] != -1:
            continue
        pos[root] = t
        t += 1
        queue = [root]
        for v in queue:
            for w, _ in g.adjacency[v]:
                if pos[w] == -1:
                    pos[w] = t
                    t += 1
                    queue.append(w)
    return sorted(g.edges, key=lambda e: (max(pos[e.u], pos[e.v]), min(pos[e.u], pos[e.v]), e.id))


def find_beta_orientation(g: MultiGraph, beta: Sequence[int]) -> Orientation | None:
    """Find an orientation with imbalance congruent to beta mod 3 everywhere.

    Complete backtracking over a frontier edge order. At each vertex the
    solver tracks the imbalance a of already-oriented incident edges and the
    count r of unoriented ones; the reachable final imbalances are exactly
    {a-r, a-r+2, ..., a+r}, so the branch dies unless beta(v) - a is hit by
    some member of that set mod 3: any residue when r >= 2, a nonzero
    residue when r = 1, zero when r = 0.

    Returns the first witness in the deterministic search order (stored
    direction tried before its reverse), or None after exhausting the tree.
    """
    b = check_boundary(g, beta)
    if g.n > SOLVER_VERTEX_CAP:
        raise CapExceeded(f"orientation solver capped at {SOLVER_VERTEX_CAP} vertices, got {g.n}")
    order = _frontier_edge_order(g)
    m = g.m
    rem = list(g.degrees)
    imb = [0] * g.n

    def feasible(v: int) -> bool:
        r = rem[v]
        if r >= 2:
            return True
        d = (b[v] - imb[v]) % 3
        return d == 0 if r == 0 else d != 0

    for v in range(g.n):
        if not feasible(v):
            return None

    choice = [-1] * m  # -1 untried, 0 stored direction, 1 reversed
    i = 0
    while 0 <= i < m:
        e = order[i]
        c = choice[i] + 1
        if choice[i] != -1:
            # retract the current direction before trying the next one
            tail, head = (e.u, e.v) if choice[i] == 0 else (e.v, e.u)
            imb[tail] -= 1
            imb[head] += 1
            rem[e.u] += 1
            rem[e.v] += 1
            choice[i] = -1
        placed = False
        while c <= 1:
            tail, head = (e.u, e.v) if c == 0 else (e.v, e.u)
            imb[tail] += 1
            imb[head] -= 1
            rem[e.u] -= 1
            rem[e.v] -= 1
            if feasible(e.u) and feasible(e.v):
                choice[i] = c
                placed = True
                break
            imb[tail] -= 1
            imb[head] += 1
            rem[e.u] += 1
            rem[e.v] += 1
            c += 1
        i = i + 1 if placed else i - 1
    if i < 0:
        return None
    arcs = []
    for j, e in enumerate(order):
        tail, head = (e.u, e.v) if choice[j] == 0 else (e.v, e.u)
        arcs.append((e.id, tail, head))
    return Orientation(tuple(sorted(arcs)))


def has_mod3_orientation(g: MultiGraph) -> tuple[bool, Orientation | None]:
    """Decide existence of an all-balanced orientation (nowhere-zero 3-flow).

    A bridge forces imbalance +-1 across its own cut, so bridged graphs are
    rejected outright, independent of any size cap.
    """
    if bridges(g):
        return False, None
    ori = find_beta_orientation(g, zero_boundary(g))
    return (ori is not None), ori


def is_z3_connected(g: MultiGraph) -> tuple[bool, Z3Boundary | None]:
    """Decide whether every boundary admits an orientation.

    Sweeps all 3^(n-1) boundaries in lexicographic order (the last vertex is
    the forced complement); the first failing boundary is the certificate,
    making the answer reproducible regardless of internal scheduling.
    """
    if g.n > Z3_VERTEX_CAP:
        raise CapExceeded(f"boundary sweep capped at {Z3_VERTEX_CAP} vertices, got {g.n}")
    if g.n == 0:
        return True, None
    for prefix in itertools.product((0, 1, 2), repeat=g.n - 1):
        beta = prefix + ((-sum(prefix)) % 3,)
        if find_beta_orientation(g, beta) is None:
            return False, beta
    return True, None


_BRUTE_CHUNK = 1 << 18


def brute_force_beta(g: MultiGraph, beta: Sequence[int]) -> Orientation | None:
    """Independent oracle: enumerate all 2^m orientations outright.

    Bit j of the enumeration code flips edge j (in id order) from its stored
    direction; codes ascend, so the witness is the lexicographically first
    one preferring stored directions. Same contract as find_beta_orientation,
    no shared machinery.
    """
    b = check_boundary(g, beta)
    m = g.m
    if m > BRUTE_EDGE_CAP:
        raise CapExceeded(f"brute force capped at {BRUTE_EDGE_CAP} edges, got {m}")
    if m == 0:
        return Orientation(()) if all(x == 0 for x in b) else None
    target = np.array(b, dtype=np.int16)
    total = 1 << m
    for lo in range(0, total, _BRUTE_CHUNK):
        codes = np.arange(lo, min(lo + _BRUTE_CHUNK, total), dtype=np.uint32)
        imb = np.zeros((len(codes), g.n), dtype=np.int16)
        for j, e in enumerate(g.edges):
            sign = 1 - 2 * ((codes >> j) & 1).astype(np.int16)
            imb[:, e.u] += sign
            imb[:, e.v] -= sign
        hit = np.flatnonzero(((imb - target) % 3 == 0).all(axis=1))
        if hit.size:
            code = int(codes[hit[0]])
            arcs = []
            for j, e in enumerate(g.edges):
                tail, head = (e.v, e.u) if (code >> j) & 1 else (e.u, e.v)
                arcs.append((e.id, tail, head))
            return Orientation(tuple(sorted(arcs)))
    return None


def special_bipartite_orientation(t: int, k: int) -> BipartiteOrientation:
    """Orient the complete bipartite graph on parts {x1,x2,x3} and t-3 others.

    Produces the orientation whose imbalance is congruent to k mod 3 at each
    of the three high-degree vertices and to 0 at every other vertex. Each
    low-degree vertex y treats all three of its edges uniformly (all toward
    it or all away), so y is automatically balanced; choosing o of the t-3
    vertices to point away from the high side, with 2o - (t-3) congruent to
    k mod 3, lands the high side on k. Since o only needs to be 0, 1, or 2
    and t >= 5 gives at least two low vertices, the construction always
    closes; the generic solver remains as a recorded fallback and the result
    says which path ran.

    Vertices: 0,1,2 are the high side, 3..t-1 the rest. Edge ids: 3*j + x
    for the edge between x and vertex 3+j.
    """
    if t < 5:
        raise ValueError(f"need t >= 5, got {t}")
    if k not in (0, 1, 2):
        raise ValueError(f"k must be 0, 1, or 2, got {k}")
    s = t - 3
    g = MultiGraph.from_pairs(t, [(x, y) for y in range(3, t) for x in (0, 1, 2)])
    o = (2 * (k + s)) % 3
    arcs = []
    for j in range(s):
        y = 3 + j
        for x in (0, 1, 2):
            eid = 3 * j + x
            arcs.append((eid, x, y) if j < o else (eid, y, x))
    ori = Orientation(tuple(sorted(arcs)))
    beta = tuple([k, k, k] + [0] * s)
    if ori.satisfies(g, beta):
        return BipartiteOrientation(g, ori, True)
    # never reached for t >= 5; kept so a construction bug surfaces as a
    # flagged fallback rather than a wrong answer
    fallback = find_beta_orientation(g, beta) if t <= SOLVER_VERTEX_CAP else None
    if fallback is None:
        raise RuntimeError(f"no orientation for t={t}, k={k}")
    return BipartiteOrientation(g, fallback, False)
