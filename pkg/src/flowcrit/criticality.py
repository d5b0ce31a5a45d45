"""Certification of 3-flow-criticality and reduction by Z3-connected pieces.

A bridgeless graph is 3-flow-critical when it admits no nowhere-zero 3-flow
but every single-edge contraction does. The certificate for a critical graph
carries one witness orientation per edge of the contraction G/e, plus an
attestation that the no-flow claim for G itself came from a complete search.

A graph is Z3-reduced when no vertex subset of size at least two induces a
Z3-connected subgraph. Induced subgraphs suffice: every subgraph is a
spanning subgraph of the induced one on the same vertices, and adding edges
preserves Z3-connectivity, so an offending subgraph implies an offending
induced one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

from .errors import CapExceeded
from .flows import Orientation, has_mod3_orientation, is_z3_connected
from .multigraph import (
    MultiGraph,
    bridges,
    canonical_form,
    connected_components,
    edge_connectivity,
    essential_edge_connectivity,
    is_connected,
    recognize_small,
)

REDUCE_VERTEX_CAP = 12       # subset sweep inherits the boundary-sweep cap
ALL_ORDERS_VERTEX_CAP = 6    # the try-every-order debug mode


@dataclass(frozen=True)
class CriticalityCertificate:
    verdict: str  # "critical" | "not-critical"
    reason: str | None = None  # "disconnected" | "bridge" | "admits-flow" | "contraction-flowless"
    base: dict | None = None
    edge_witnesses: tuple[tuple[int, Orientation], ...] | None = None
    flow_witness: Orientation | None = None
    failing_edge: int | None = None
    bridge_edges: tuple[int, ...] | None = None

    @property
    def is_critical(self) -> bool:
        return self.verdict == "critical"

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.reason is not None:
            out["reason"] = self.reason
        if self.base is not None:
            out["base"] = self.base
        if self.edge_witnesses is not None:
            out["per_edge"] = [
                {"edge": eid, "orientation": ori.to_json()} for eid, ori in self.edge_witnesses
            ]
        if self.flow_witness is not None:
            out["orientation"] = self.flow_witness.to_json()
        if self.failing_edge is not None:
            out["edge"] = self.failing_edge
        if self.bridge_edges is not None:
            out["bridges"] = list(self.bridge_edges)
        return out


def is_3_flow_critical(g: MultiGraph) -> CriticalityCertificate:
    """Decide criticality with a fully re-verifiable certificate.

    Bridged or disconnected input is classified not-critical with the reason
    attached rather than rejected; the definition presupposes a connected
    bridgeless graph and the certificate says which hypothesis failed.
    Contractions of parallel copies of one endpoint pair give the same graph,
    so the flow question is decided once per pair and the witness is shared.
    """
    if not is_connected(g):
        return CriticalityCertificate("not-critical", reason="disconnected")
    br = bridges(g)
    if br:
        return CriticalityCertificate("not-critical", reason="bridge", bridge_edges=br)
    ok, witness = has_mod3_orientation(g)
    if ok:
        return CriticalityCertificate("not-critical", reason="admits-flow", flow_witness=witness)
    by_pair: dict[tuple[int, int], Orientation | None] = {}
    witnesses: list[tuple[int, Orientation]] = []
    for e in g.edges:
        pair = (min(e.u, e.v), max(e.u, e.v))
        if pair not in by_pair:
            contracted = g.contract_edge(e.id).graph
            by_pair[pair] = has_mod3_orientation(contracted)[1]
        w = by_pair[pair]
        if w is None:
            return CriticalityCertificate("not-critical", reason="contraction-flowless", failing_edge=e.id)
        witnesses.append((e.id, w))
    base = {"no_flow_search": "complete-backtracking", "vertices": g.n, "edges": g.m}
    return CriticalityCertificate("critical", base=base, edge_witnesses=tuple(witnesses))


def check_deletion_flow(g: MultiGraph) -> bool:
    """True iff every single-edge deletion admits a nowhere-zero 3-flow."""
    return all(has_mod3_orientation(g.delete_edge(e.id))[0] for e in g.edges)


def _z3_subset_candidates(g: MultiGraph):
    """Vertex subsets in the fixed sweep order: size ascending, then lexicographic."""
    for size in range(2, g.n + 1):
        yield from itertools.combinations(range(g.n), size)


def _induced_z3_connected(g: MultiGraph, vs: tuple[int, ...]) -> bool:
    sub = g.induced(vs).graph
    # cheap necessary conditions before the boundary sweep: a nontrivial
    # Z3-connected graph is connected with min degree 2 and no bridges
    if sub.m < sub.n or min(sub.degrees) < 2 or not is_connected(sub) or bridges(sub):
        return False
    return is_z3_connected(sub)[0]


def is_z3_reduced(g: MultiGraph) -> tuple[bool, tuple[int, ...] | None]:
    """Decide Z3-reducedness; on failure return the first offending vertex set."""
    if g.n > REDUCE_VERTEX_CAP:
        raise CapExceeded(f"reducedness sweep capped at {REDUCE_VERTEX_CAP} vertices, got {g.n}")
    for vs in _z3_subset_candidates(g):
        if _induced_z3_connected(g, vs):
            return False, vs
    return True, None


class ReductionStep(NamedTuple):
    contracted: tuple[int, ...]  # vertex labels in the graph the step was applied to
    original: tuple[int, ...]    # the same set pulled back to the input graph's labels
    graph: MultiGraph            # graph after the contraction


@dataclass(frozen=True)
class ReductionTrace:
    initial: MultiGraph
    steps: tuple[ReductionStep, ...]
    final: MultiGraph
    partition: tuple[tuple[int, ...], ...]  # original vertices per final vertex

    @property
    def reduced_to(self) -> str:
        return recognize_small(self.final)

    def to_json(self) -> dict:
        return {
            "steps": [
                {"vertices": list(s.contracted), "original_vertices": list(s.original),
                 "graph": s.graph.to_json()}
                for s in self.steps
            ],
            "final": self.final.to_json(),
            "partition": [list(b) for b in self.partition],
            "reduced_to": self.reduced_to,
        }


def z3_reduce(g: MultiGraph) -> ReductionTrace:
    """Contract nontrivial Z3-connected induced subgraphs until none remains.

    The order is fixed: always the smallest such vertex set, ties broken
    lexicographically. Whether a different order can reach a different
    terminal graph is exercised separately by z3_reduce_all_orders.
    """
    if g.n > REDUCE_VERTEX_CAP:
        raise CapExceeded(f"reduction capped at {REDUCE_VERTEX_CAP} vertices, got {g.n}")
    current = g
    blocks: list[tuple[int, ...]] = [(v,) for v in range(g.n)]
    steps: list[ReductionStep] = []
    while True:
        found = None
        for vs in _z3_subset_candidates(current):
            if _induced_z3_connected(current, vs):
                found = vs
                break
        if found is None:
            break
        part = [found] + [(v,) for v in range(current.n) if v not in found]
        q = current.quotient(part)
        merged: list[tuple[int, ...]] = []
        for blk in q.blocks:
            merged.append(tuple(sorted(itertools.chain.from_iterable(blocks[v] for v in blk))))
        original = tuple(sorted(itertools.chain.from_iterable(blocks[v] for v in found)))
        current = q.graph
        blocks = merged
        steps.append(ReductionStep(found, original, current))
    return ReductionTrace(g, tuple(steps), current, tuple(blocks))


def z3_reduce_all_orders(g: MultiGraph) -> tuple[list[MultiGraph], bool]:
    """Debug mode: reduce along every possible contraction order.

    Returns representatives of the terminal graphs, distinct up to
    isomorphism, and whether there is only one. Memoized on canonical forms;
    capped tight because the branching is factorial.
    """
    if g.n > ALL_ORDERS_VERTEX_CAP:
        raise CapExceeded(f"all-orders reduction capped at {ALL_ORDERS_VERTEX_CAP} vertices, got {g.n}")
    seen: dict[tuple, list[MultiGraph]] = {}

    def explore(h: MultiGraph) -> list[MultiGraph]:
        key = canonical_form(h)
        if key in seen:
            return seen[key]
        seen[key] = []  # cycle-proof placeholder; contractions strictly shrink n so no revisits
        choices = [vs for vs in _z3_subset_candidates(h) if _induced_z3_connected(h, vs)]
        if not choices:
            out = [h]
        else:
            canon: dict[tuple, MultiGraph] = {}
            for vs in choices:
                part = [vs] + [(v,) for v in range(h.n) if v not in vs]
                for term in explore(h.quotient(part).graph):
                    canon.setdefault(canonical_form(term), term)
            out = [canon[k] for k in sorted(canon)]
        seen[key] = out
        return out

    terminals = explore(g)
    return terminals, len(terminals) == 1


def wheel_index(g: MultiGraph) -> int | None:
    """Return k if g is the wheel with k rim vertices (k >= 3), else None.

    A wheel is a hub adjacent to every vertex of a cycle; all rim vertices
    have degree 3 and the hub has degree k. For k = 3 this is K4 and any
    vertex may serve as hub.
    """
    k = g.n - 1
    if k < 3 or g.m != 2 * k or not g.is_simple():
        return None
    degs = sorted(g.degrees)
    if k == 3:
        if degs != [3, 3, 3, 3]:
            return None
        hubs = list(range(g.n))
    else:
        if degs != [3] * k + [k]:
            return None
        hubs = [v for v in range(g.n) if g.degree(v) == k]
    for hub in hubs:
        rim = [v for v in range(g.n) if v != hub]
        if any((min(hub, v), max(hub, v)) not in g.pair_counts() for v in rim):
            continue
        sub = g.induced(rim).graph
        if sub.m == k and all(d == 2 for d in sub.degrees) and is_connected(sub):
            return k
    return None


def is_odd_wheel(g: MultiGraph) -> bool:
    k = wheel_index(g)
    return k is not None and k % 2 == 1


@dataclass(frozen=True)
class StructureReport:
    """The four structural facts every critical graph must satisfy.

    deletion_flows_ok   every single-edge deletion admits a flow
    connectivity_ok     3-edge-connected and essentially 4-edge-connected
    z3_reduced_ok       no nontrivial Z3-connected induced subgraph
                        (None when the input exceeds the reducedness cap)
    degree3_ok          degree-3 vertices induce a forest, or g is an odd wheel

    vacuous means the input was not certified critical, so the checks are
    reported for debugging value only.
    """

    critical: bool
    vacuous: bool
    deletion_flows_ok: bool
    connectivity_ok: bool
    edge_conn: int
    essential_conn: float
    z3_reduced_ok: bool | None
    degree3_ok: bool
    degree3_acyclic: bool
    odd_wheel: bool

    @property
    def all_ok(self) -> bool:
        return bool(
            self.deletion_flows_ok and self.connectivity_ok
            and self.z3_reduced_ok and self.degree3_ok
        )

    def to_json(self) -> dict:
        return {
            "critical": self.critical,
            "vacuous": self.vacuous,
            "deletion_flows_ok": self.deletion_flows_ok,
            "connectivity_ok": self.connectivity_ok,
            "edge_connectivity": self.edge_conn,
            "essential_edge_connectivity":
                "inf" if self.essential_conn == float("inf") else self.essential_conn,
            "z3_reduced_ok": self.z3_reduced_ok,
            "degree3_ok": self.degree3_ok,
            "degree3_acyclic": self.degree3_acyclic,
            "odd_wheel": self.odd_wheel,
            "all_ok": self.all_ok,
        }


def verify_structure(g: MultiGraph, certificate: CriticalityCertificate | None = None) -> StructureReport:
    """Run the four structural checks, labeling them vacuous off critical input.

    The criticality certificate is recomputed when not supplied.
    """
    if certificate is None:
        certificate = is_3_flow_critical(g)
    critical = certificate.is_critical
    deletion_ok = check_deletion_flow(g)
    if g.n >= 2:
        lam = edge_connectivity(g)
        ess = essential_edge_connectivity(g)
    else:
        lam, ess = 0, float("inf")
    conn_ok = lam >= 3 and ess >= 4
    try:
        reduced_ok = is_z3_reduced(g)[0]
    except CapExceeded:
        reduced_ok = None
    v3 = [v for v in range(g.n) if g.degree(v) == 3]
    sub = g.induced(v3).graph
    acyclic = sub.m == sub.n - len(connected_components(sub))
    odd = is_odd_wheel(g)
    return StructureReport(
        critical=critical,
        vacuous=not critical,
        deletion_flows_ok=deletion_ok,
        connectivity_ok=conn_ok,
        edge_conn=lam,
        essential_conn=ess,
        z3_reduced_ok=reduced_ok,
        degree3_ok=acyclic or odd,
        degree3_acyclic=acyclic,
        odd_wheel=odd,
    )
