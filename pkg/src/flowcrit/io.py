"""Reading and writing graphs.

Two formats:

  edge-list   first line "n m", then m lines "u v"; lines starting with '#'
              are comments; trailing '#' comments are tolerated. Parallel
              edges are expressed by repeating a line. Edge ids are assigned
              0..m-1 in file order, so text -> graph -> text is stable.

  graph6      standard 6-bit encoding of simple graphs, one graph per line,
              optional ">>graph6<<" header. Supports n up to 64, which needs
              the three-byte long form for n in {63, 64}. Edge ids follow
              the column order of the encoded upper triangle.
"""

from __future__ import annotations

from .errors import GraphFormatError
from .multigraph import VERTEX_LIMIT, MultiGraph

GRAPH6_HEADER = ">>graph6<<"


def parse_edge_list(text: str) -> MultiGraph:
    rows: list[tuple[int, ...]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two integers per line, got {raw!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphFormatError(f"non-integer token in line {raw!r}") from None
    if not rows:
        raise GraphFormatError("empty input, no 'n m' header")
    n, m = rows[0]
    if n < 0 or m < 0:
        raise GraphFormatError(f"bad header n={n} m={m}")
    if n > VERTEX_LIMIT:
        raise GraphFormatError(f"n={n} exceeds the {VERTEX_LIMIT}-vertex limit")
    if len(rows) - 1 != m:
        raise GraphFormatError(f"header promises {m} edges, found {len(rows) - 1}")
    for u, v in rows[1:]:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge {u} {v} out of range for n={n}")
        if u == v:
            raise GraphFormatError(f"loop {u} {v} not allowed")
    return MultiGraph.from_pairs(n, rows[1:])


def serialize_edge_list(g: MultiGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{e.u} {e.v}" for e in g.edges]
    return "\n".join(lines) + "\n"


def _g6_bytes(line: str) -> list[int]:
    vals = []
    for ch in line:
        b = ord(ch) - 63
        if not (0 <= b < 64):
            raise GraphFormatError(f"invalid graph6 character {ch!r}")
        vals.append(b)
    return vals


def parse_graph6(line: str) -> MultiGraph:
    line = line.strip()
    if line.startswith(GRAPH6_HEADER):
        line = line[len(GRAPH6_HEADER):]
    if not line:
        raise GraphFormatError("empty graph6 line")
    vals = _g6_bytes(line)
    if vals[0] == 63:  # '~' long form, 18-bit vertex count
        if len(vals) < 4:
            raise GraphFormatError("truncated graph6 long-form header")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    else:
        n = vals[0]
        body = vals[1:]
    if n > VERTEX_LIMIT:
        raise GraphFormatError(f"graph6 n={n} exceeds the {VERTEX_LIMIT}-vertex limit")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise GraphFormatError(f"graph6 body has {len(body)} groups, expected {need} for n={n}")
    bits = []
    for b in body:
        bits.extend((b >> k) & 1 for k in (5, 4, 3, 2, 1, 0))
    if any(bits[nbits:]):
        raise GraphFormatError("nonzero padding bits in graph6 body")
    pairs = []
    i = 0
    for v in range(n):
        for u in range(v):
            if bits[i]:
                pairs.append((u, v))
            i += 1
    return MultiGraph.from_pairs(n, pairs)


def serialize_graph6(g: MultiGraph) -> str:
    if not g.is_simple():
        raise GraphFormatError("graph6 encodes simple graphs only, input has parallel edges")
    n = g.n
    adj = {(min(e.u, e.v), max(e.u, e.v)) for e in g.edges}
    bits = []
    for v in range(n):
        for u in range(v):
            bits.append(1 if (u, v) in adj else 0)
    while len(bits) % 6:
        bits.append(0)
    if n <= 62:
        head = chr(n + 63)
    else:
        head = "~" + chr(((n >> 12) & 63) + 63) + chr(((n >> 6) & 63) + 63) + chr((n & 63) + 63)
    body = "".join(
        chr(63 + (bits[i] << 5 | bits[i + 1] << 4 | bits[i + 2] << 3
                  | bits[i + 3] << 2 | bits[i + 4] << 1 | bits[i + 5]))
        for i in range(0, len(bits), 6)
    )
    return head + body


def _looks_like_edge_list(text: str) -> bool:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        return len(parts) == 2 and all(p.isdigit() for p in parts)
    return False


def parse_graph(text: str, fmt: str | None = None) -> MultiGraph:
    """Parse one graph, sniffing the format when fmt is None."""
    if fmt is None:
        fmt = "edgelist" if _looks_like_edge_list(text) else "graph6"
    if fmt == "edgelist":
        return parse_edge_list(text)
    if fmt == "graph6":
        stripped = [ln for ln in text.splitlines() if ln.strip()]
        if len(stripped) != 1:
            raise GraphFormatError(f"expected one graph6 line, found {len(stripped)}")
        return parse_graph6(stripped[0])
    raise GraphFormatError(f"unknown format {fmt!r}")


def serialize_graph(g: MultiGraph, fmt: str = "edgelist") -> str:
    if fmt == "edgelist":
        return serialize_edge_list(g)
    if fmt == "graph6":
        return serialize_graph6(g) + "\n"
    raise GraphFormatError(f"unknown format {fmt!r}")
