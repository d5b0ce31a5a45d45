"""Shared builders, exhaustive generators, and reference oracles.

The oracles here are deliberately naive re-implementations (itertools over
everything, no pruning, no numpy) so the package's optimized routes have an
independent answer to agree with. Dedup by canonical_form is safe for
exhaustive sweeps: the canonical key is a relabeled edge list, so equal keys
always mean isomorphic graphs; a hypothetical over-split only repeats work.
"""

from __future__ import annotations

import itertools
import random
from math import ceil, inf

from flowcrit.multigraph import MultiGraph, canonical_form, is_connected


# --- small named graphs -----------------------------------------------------

def complete(n: int) -> MultiGraph:
    return MultiGraph.from_pairs(n, list(itertools.combinations(range(n), 2)))


def cycle(n: int) -> MultiGraph:
    return MultiGraph.from_pairs(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> MultiGraph:
    return MultiGraph.from_pairs(n, [(i, i + 1) for i in range(n - 1)])


def doubled(g: MultiGraph) -> MultiGraph:
    pairs = [(e.u, e.v) for e in g.edges]
    return MultiGraph.from_pairs(g.n, pairs + pairs)


def k4() -> MultiGraph:
    return complete(4)


# --- exhaustive generation ---------------------------------------------------

def multiplicity_vectors(pairs: int, max_edges: int, max_mult: int | None = None):
    """All tuples of per-pair multiplicities with total <= max_edges."""
    cap = max_edges if max_mult is None else max_mult

    def rec(i: int, left: int, acc: list[int]):
        if i == pairs:
            yield tuple(acc)
            return
        for c in range(min(left, cap) + 1):
            acc.append(c)
            yield from rec(i + 1, left - c, acc)
            acc.pop()

    yield from rec(0, max_edges, [])


def multigraphs_up_to_iso(n: int, max_edges: int, max_mult: int | None = None,
                          connected_only: bool = False):
    """Loopless multigraphs on n vertices up to isomorphism."""
    pairs = list(itertools.combinations(range(n), 2))
    seen = set()
    for mult in multiplicity_vectors(len(pairs), max_edges, max_mult):
        edges = []
        for p, c in zip(pairs, mult):
            edges.extend([p] * c)
        g = MultiGraph.from_pairs(n, edges)
        if connected_only and not is_connected(g):
            continue
        key = canonical_form(g)
        if key in seen:
            continue
        seen.add(key)
        yield g


def simple_graphs_up_to_iso(n: int, connected_only: bool = False):
    yield from multigraphs_up_to_iso(n, n * (n - 1) // 2, max_mult=1,
                                     connected_only=connected_only)


# --- random generation (seeded by callers) -----------------------------------

def random_multigraph(rng: random.Random, n: int, m: int, max_mult: int = 3) -> MultiGraph:
    pairs = list(itertools.combinations(range(n), 2))
    m = min(m, len(pairs) * max_mult)  # cap at what the multiplicity bound allows
    count: dict[tuple[int, int], int] = {}
    edges: list[tuple[int, int]] = []
    while len(edges) < m:
        p = rng.choice(pairs)
        if count.get(p, 0) >= max_mult:
            continue
        count[p] = count.get(p, 0) + 1
        edges.append(p)
    return MultiGraph.from_pairs(n, edges)


def random_connected_multigraph(rng: random.Random, n: int, extra: int,
                                max_mult: int = 3) -> MultiGraph:
    edges = []
    verts = list(range(n))
    rng.shuffle(verts)
    for i in range(1, n):
        edges.append((verts[i], verts[rng.randrange(i)]))
    count = {}
    for u, v in edges:
        count[(min(u, v), max(u, v))] = 1
    pairs = list(itertools.combinations(range(n), 2))
    extra = min(extra, len(pairs) * max_mult - len(edges))
    added = 0
    while added < extra:
        p = rng.choice(pairs)
        if count.get(p, 0) >= max_mult:
            continue
        count[p] = count.get(p, 0) + 1
        edges.append(p)
        added += 1
    return MultiGraph.from_pairs(n, edges)


# --- reference oracles --------------------------------------------------------

def naive_beta_reachable(g: MultiGraph, beta) -> bool:
    """Try all 2^m orientations, pure python. Only for small m."""
    for choice in itertools.product((0, 1), repeat=g.m):
        imb = [0] * g.n
        for e, c in zip(g.edges, choice):
            tail, head = (e.u, e.v) if c == 0 else (e.v, e.u)
            imb[tail] += 1
            imb[head] -= 1
        if all((imb[v] - beta[v]) % 3 == 0 for v in range(g.n)):
            return True
    return False


def all_boundaries(n: int):
    """Every valid boundary: entries in {0,1,2}, total divisible by 3."""
    for prefix in itertools.product((0, 1, 2), repeat=n - 1):
        yield prefix + ((-sum(prefix)) % 3,)


def brute_edge_connectivity(g: MultiGraph) -> int:
    best = None
    for mask in range(1, 1 << (g.n - 1)):
        side = {v for v in range(g.n) if mask >> v & 1}
        cut = sum(1 for e in g.edges if (e.u in side) != (e.v in side))
        best = cut if best is None else min(best, cut)
    return best


def brute_essential_connectivity(g: MultiGraph):
    """Min cut that splits the graph into >= 2 edge-carrying pieces.

    Component-based formulation: remove a candidate cut (cross edges of a
    bipartition) and require at least two resulting components to contain an
    edge. Distinct from the package's side-has-edge formulation.
    """
    best = inf
    for mask in range(1, 1 << (g.n - 1)):
        side = {v for v in range(g.n) if mask >> v & 1}
        keep = [e for e in g.edges if (e.u in side) == (e.v in side)]
        cut = g.m - len(keep)
        parent = list(range(g.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in keep:
            parent[find(e.u)] = find(e.v)
        carrying = {find(e.u) for e in keep}
        if len(carrying) >= 2:
            best = min(best, cut)
    return best


def set_partitions(items: tuple):
    """All partitions of items into nonempty blocks (first element anchored)."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for sub in set_partitions(rest):
        yield ((first,),) + sub
        for i, block in enumerate(sub):
            yield sub[:i] + ((first,) + block,) + sub[i + 1:]


def rgs_strings(n: int):
    """Restricted growth strings in lexicographic order."""
    def rec(i: int, mx: int, acc: list[int]):
        if i == n:
            yield tuple(acc)
            return
        for v in range(mx + 2):
            acc.append(v)
            yield from rec(i + 1, max(mx, v), acc)
            acc.pop()

    yield from rec(0, -1, [])


def rho_of_blocks(g: MultiGraph, blocks) -> int:
    """Independent potential formula: sum of block boundary degrees - 8t + 20."""
    owner = {}
    for i, blk in enumerate(blocks):
        for v in blk:
            owner[v] = i
    boundary = [0] * len(blocks)
    for e in g.edges:
        if owner[e.u] != owner[e.v]:
            boundary[owner[e.u]] += 1
            boundary[owner[e.v]] += 1
    return sum(boundary) - 8 * len(blocks) + 20


def brute_rho_min(g: MultiGraph):
    """(value, first lexicographic minimizing RGS), no pruning."""
    best_val, best_rgs = None, None
    for rgs in rgs_strings(g.n):
        blocks: dict[int, list[int]] = {}
        for v, b in enumerate(rgs):
            blocks.setdefault(b, []).append(v)
        val = rho_of_blocks(g, list(blocks.values()))
        if best_val is None or val < best_val:
            best_val, best_rgs = val, rgs
    return best_val, best_rgs


def brute_arboricity(g: MultiGraph) -> int:
    """Max over induced subgraphs with >= 2 vertices of ceil(m / (n-1))."""
    best = 0 if g.m == 0 else 1
    for size in range(2, g.n + 1):
        for vs in itertools.combinations(range(g.n), size):
            inside = sum(1 for e in g.edges if e.u in vs and e.v in vs)
            if inside:
                best = max(best, ceil(inside / (size - 1)))
    return best


def brute_tree_packing_number(g: MultiGraph) -> int:
    """Min over partitions P of floor(cross(P) / (|P|-1)), per the packing
    theorem; the graph packs k spanning trees iff this is >= k."""
    best = None
    for blocks in set_partitions(tuple(range(g.n))):
        t = len(blocks)
        if t < 2:
            continue
        owner = {}
        for i, blk in enumerate(blocks):
            for v in blk:
                owner[v] = i
        cross = sum(1 for e in g.edges if owner[e.u] != owner[e.v])
        val = cross // (t - 1)
        best = val if best is None else min(best, val)
    return best
