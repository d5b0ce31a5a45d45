"""Builders for the graph families under study and the density-family planner.

Labeling is fixed once and for all so fixtures and certificates stay
byte-stable: wheels put the hub last, the augmented bipartite family puts the
three high-degree vertices first with the extra edge joining 0 and 1, and the
2-sum keeps the first operand's labels.

The planner works the arithmetic of the target-ratio family: given a rational
ratio r = q/p strictly between 7/4 and 3, it picks the scale s and the
bipartite size t so that the assembled 2-sum has edge count within 5/8 of
r times its vertex count. All of it in exact rationals; the two closing
inequalities are re-verified, never assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .criticality import is_3_flow_critical
from .flows import SOLVER_VERTEX_CAP
from .multigraph import MultiGraph


def wheel(k: int) -> MultiGraph:
    """The wheel with a k-cycle rim (vertices 0..k-1) and hub k.

    Edge ids: rim edge i joins i and (i+1) mod k for i < k; spoke k+i joins
    i and the hub.
    """
    if k < 3:
        raise ValueError(f"wheels need a rim of at least 3, got {k}")
    pairs = [(i, (i + 1) % k) for i in range(k)]
    pairs += [(i, k) for i in range(k)]
    return MultiGraph.from_pairs(k + 1, pairs)


def k3plus(n: int) -> MultiGraph:
    """Complete bipartite graph on {0,1,2} versus n-3 vertices, plus the edge 01.

    Has exactly 3n - 8 edges. Edge ids: 3j + x joins x and 3 + j; the extra
    edge comes last.
    """
    if n < 6:
        raise ValueError(f"the augmented bipartite family starts at 6 vertices, got {n}")
    pairs = [(x, y) for y in range(3, n) for x in (0, 1, 2)]
    pairs.append((0, 1))
    return MultiGraph.from_pairs(n, pairs)


@dataclass(frozen=True)
class TwoSumSpec:
    """One 2-sum: glue g1 and g2 across chosen edges e1, e2.

    Both chosen edges are removed, their endpoint pairs are identified
    pairwise, and one fresh edge joins the two merged vertices. By default
    the smaller-labeled endpoints merge together; flip crosses them.
    """

    g1: MultiGraph
    e1: int
    g2: MultiGraph
    e2: int
    flip: bool = False


def two_sum(spec: TwoSumSpec) -> MultiGraph:
    g1, g2 = spec.g1, spec.g2
    try:
        f1 = g1.edge(spec.e1)
        f2 = g2.edge(spec.e2)
    except KeyError as exc:
        raise ValueError(f"chosen edge not present: {exc}") from None
    u1, v1 = min(f1.u, f1.v), max(f1.u, f1.v)
    u2, v2 = min(f2.u, f2.v), max(f2.u, f2.v)
    if spec.flip:
        u2, v2 = v2, u2
    # g1 keeps its labels; g2's survivors follow in ascending order
    vmap2 = {u2: u1, v2: v1}
    nxt = g1.n
    for v in range(g2.n):
        if v not in vmap2:
            vmap2[v] = nxt
            nxt += 1
    pairs = [(e.u, e.v) for e in g1.edges if e.id != spec.e1]
    pairs += [(vmap2[e.u], vmap2[e.v]) for e in g2.edges if e.id != spec.e2]
    pairs.append((u1, v1))
    return MultiGraph.from_pairs(g1.n + g2.n - 2, pairs)


@dataclass(frozen=True)
class FamilyPlan:
    """Exact arithmetic for one member of the target-ratio density family.

    ratio is q/p in lowest terms; s scales the seed (8s+7 vertices, 14s+12
    edges); t sizes the bipartite partner; a <= t <= b is the window the
    closing inequalities allow, of width 5p/(4(3p-q)) > 1. Predicted shape:
    n = 8s + t + 5 vertices and m = 14s + 3t + 3 edges.
    """

    p: int
    q: int
    ratio: Fraction
    floor: int
    s: int
    a: Fraction
    b: Fraction
    t: int
    n: int
    m: int

    def to_json(self) -> dict:
        return {
            "p": self.p, "q": self.q, "ratio": str(self.ratio), "floor": self.floor,
            "s": self.s, "a": str(self.a), "b": str(self.b), "t": self.t,
            "n": self.n, "m": self.m,
        }


def plan_density_family(p: int, q: int, floor: int = 1) -> FamilyPlan:
    """Plan a critical graph whose edge density sits within 5/8 of (q/p) * n.

    The ratio must lie strictly between 7/4 and 3 and is normalized to lowest
    terms first. s is the smallest integer at least 6(3p-q)/(8q-14p) + floor;
    t is the smallest integer in [a, b]. Both final inequalities
    r*n - 5/8 <= m <= r*n + 5/8 are re-checked exactly and a failure raises,
    since the window argument guarantees them.
    """
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive integers")
    if floor < 1:
        raise ValueError(f"floor must be at least 1, got {floor}")
    g = math.gcd(p, q)
    p, q = p // g, q // g
    ratio = Fraction(q, p)
    if not (Fraction(7, 4) < ratio < Fraction(3)):
        raise ValueError(f"ratio {ratio} outside the open interval (7/4, 3)")
    s = math.ceil(Fraction(6 * (3 * p - q), 8 * q - 14 * p) + floor)
    a = Fraction((8 * q - 14 * p) * s + 5 * q - 3 * p, 3 * p - q) - Fraction(5 * p, 8 * (3 * p - q))
    b = a + Fraction(5 * p, 4 * (3 * p - q))
    t = math.ceil(a)
    if not (a <= t <= b):
        raise AssertionError(f"no integer in the window [{a}, {b}]")
    n = 8 * s + t + 5
    m = 14 * s + 3 * t + 3
    if not (ratio * n - Fraction(5, 8) <= m <= ratio * n + Fraction(5, 8)):
        raise AssertionError(f"closing inequalities failed for p={p} q={q} s={s} t={t}")
    return FamilyPlan(p, q, ratio, floor, s, a, b, t, n, m)


class AssembledFamily(NamedTuple):
    graph: MultiGraph
    plan: FamilyPlan
    seed_verified: bool  # False when the seed was too large to certify here


def assemble_density_family(plan: FamilyPlan, seed: MultiGraph) -> AssembledFamily:
    """Glue the seed to the planned bipartite partner by a 2-sum.

    The seed must have exactly 8s+7 vertices and 14s+12 edges. Small seeds
    are certified critical on the spot; larger ones are accepted as-is with
    seed_verified False, since criticality of the output rides on the seed's.
    The chosen edges are the lowest-id edge of each operand.
    """
    want_n, want_m = 8 * plan.s + 7, 14 * plan.s + 12
    if seed.n != want_n or seed.m != want_m:
        raise ValueError(
            f"seed shape mismatch: need {want_n} vertices / {want_m} edges, "
            f"got {seed.n} / {seed.m}"
        )
    verified = False
    if seed.n <= SOLVER_VERTEX_CAP:
        cert = is_3_flow_critical(seed)
        if not cert.is_critical:
            raise ValueError(f"seed is not 3-flow-critical ({cert.reason})")
        verified = True
    partner = k3plus(plan.t)
    out = two_sum(TwoSumSpec(seed, seed.edges[0].id, partner, partner.edges[0].id))
    if out.n != plan.n or out.m != plan.m:
        raise AssertionError(f"assembled shape {out.n}/{out.m} misses plan {plan.n}/{plan.m}")
    return AssembledFamily(out, plan, verified)
