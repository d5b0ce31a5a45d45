"""Batch scanner over graph6 streams.

One record per input line, in input order, byte-reproducible regardless of
worker count: workers are pure, results reassemble in order, and wall-clock
timing stays out of the serialized stream unless explicitly requested (it is
the one inherently nondeterministic field).

A record carries the graph fingerprint, the cheap verdicts, and, for graphs
surviving the filters, the criticality certificate plus structure and density
reports. Caps and decode failures are per-record outcomes, never fatal to
the scan.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, fields
from multiprocessing import Pool

from .criticality import is_3_flow_critical, verify_structure
from .density import DensityReport, density_report
from .errors import CapExceeded, GraphFormatError
from .io import parse_graph6
from .multigraph import MultiGraph, bridges, canonical_form, edge_connectivity, is_connected


@dataclass
class ScanRecord:
    line: int
    status: str | None = None   # "ok" | "filtered" | "decode-error" | "skipped: cap"
    error: str | None = None
    n: int | None = None
    m: int | None = None
    degrees: list[int] | None = None
    hash: str | None = None
    bridgeless: bool | None = None
    edge_connectivity: int | None = None
    filtered_reason: str | None = None
    critical: bool | None = None
    certificate: dict | None = None
    structure: dict | None = None
    density: dict | None = None
    elapsed_ms: float | None = None

    def to_json(self, with_timings: bool = False) -> dict:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        if not with_timings:
            # timing is the one field that varies between otherwise
            # identical runs; keep it out of comparable output
            del out["elapsed_ms"]
        return out


def _fingerprint(g: MultiGraph) -> str:
    n, key = canonical_form(g)
    return hashlib.sha256(repr((n, key)).encode()).hexdigest()[:16]


def process_line(task: tuple[int, str, bool]) -> ScanRecord:
    """Full pipeline for one graph6 line; pure, safe in any worker."""
    line_no, line, require_3ec = task
    rec = ScanRecord(line=line_no)
    t0 = time.perf_counter()
    try:
        g = parse_graph6(line)
    except GraphFormatError as exc:
        rec.status = "decode-error"
        rec.error = str(exc)
        rec.elapsed_ms = (time.perf_counter() - t0) * 1000.0
        return rec
    rec.n, rec.m = g.n, g.m
    rec.degrees = sorted(g.degrees)
    try:
        rec.hash = _fingerprint(g)
        if not is_connected(g):
            rec.status = "filtered"
            rec.filtered_reason = "disconnected"
            return rec
        br = bridges(g)
        rec.bridgeless = not br
        lam = edge_connectivity(g) if g.n >= 2 else None
        rec.edge_connectivity = lam
        if br:
            rec.status = "filtered"
            rec.filtered_reason = "bridge"
            return rec
        if require_3ec and (lam is None or lam < 3):
            rec.status = "filtered"
            rec.filtered_reason = "not-3-edge-connected"
            return rec
        cert = is_3_flow_critical(g)
        rec.critical = cert.is_critical
        rec.certificate = cert.to_json()
        if cert.is_critical:
            rec.structure = verify_structure(g, cert).to_json()
            rec.density = density_report(g, cert).to_json()
        rec.status = "ok"
    except CapExceeded as exc:
        rec.status = "skipped: cap"
        rec.error = str(exc)
    finally:
        rec.elapsed_ms = (time.perf_counter() - t0) * 1000.0
    return rec


def scan_lines(lines, jobs: int = 1, require_3ec: bool = False) -> tuple[list[ScanRecord], dict]:
    """Scan graph6 lines; returns (records in input order, summary).

    Blank lines are skipped without producing records. jobs > 1 fans the
    pure per-line pipeline out to a process pool; order and content of the
    output are identical to the sequential run.
    """
    tasks = [(i, line, require_3ec) for i, line in enumerate(lines, start=1) if line.strip()]
    if jobs > 1 and len(tasks) > 1:
        with Pool(processes=jobs) as pool:
            records = list(pool.imap(process_line, tasks, chunksize=1))
    else:
        records = [process_line(t) for t in tasks]
    return records, summarize(records)


def summarize(records: list[ScanRecord]) -> dict:
    by_n: dict[str, int] = {}
    flags: dict[str, int] = {}
    counts = {"total": len(records), "ok": 0, "filtered": 0,
              "decode_errors": 0, "skipped_cap": 0, "critical": 0}
    for rec in records:
        if rec.status == "ok":
            counts["ok"] += 1
        elif rec.status == "filtered":
            counts["filtered"] += 1
        elif rec.status == "decode-error":
            counts["decode_errors"] += 1
        elif rec.status == "skipped: cap":
            counts["skipped_cap"] += 1
        if rec.critical:
            counts["critical"] += 1
            by_n[str(rec.n)] = by_n.get(str(rec.n), 0) + 1
            for flag in (rec.density or {}).get("conjecture_flags", ()):
                flags[flag] = flags.get(flag, 0) + 1
    return {
        "summary": {
            **counts,
            "criticals_by_n": dict(sorted(by_n.items(), key=lambda kv: int(kv[0]))),
            "conjecture_flag_hits": dict(sorted(flags.items())),
        }
    }


def record_to_json(rec: ScanRecord, with_timings: bool = False) -> str:
    """Stable single-line serialization of one record."""
    return json.dumps(rec.to_json(with_timings), separators=(",", ":"))


def density_rows(records: list[ScanRecord]) -> list[dict]:
    """CSV-ready bound rows for the critical graphs, in input order."""
    rows = []
    for rec in records:
        if rec.critical and rec.density:
            rows.append({key: ("NA" if rec.density[key] is None else rec.density[key])
                         for key in DensityReport.CSV_FIELDS})
    return rows
