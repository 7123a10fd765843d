"""Verification suites and their structured report."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable

from ..hyperbits import format_vertex
from .graph import MATERIALIZE_MAX, edge_count, graph_id, materialize
from .layers import layer_matching_edge_formula, proposition_edge_floor
from .metrics import (
    DIAMETER_MAX,
    antipodal_distances,
    degree_scan,
    diameter_sampled,
    multi_source_bfs,
    stretch_scan,
    symmetry_check,
)

SCHEMA_VERSION = 1
SUITES = ("degree", "symmetry", "diameter", "antipodal", "stretch", "proposition", "edges")


@dataclass
class Expectations:
    max_degree: int | None = None
    diameter: int | None = None
    antipodal_distance: int | None = None
    stretch: int | None = None
    edge_count: int | None = None
    diameter_n_audit: bool = False  # run the edge/min-degree audit for diameter-n graphs


@dataclass
class Budgets:
    materialize_max: int = MATERIALIZE_MAX
    diameter_max: int = DIAMETER_MAX
    sample_count: int = 10_000


@dataclass
class VerificationReport:
    graph_id: str
    n: int
    suites: list[str]
    seed: int
    degree_histogram: dict[int, int] = field(default_factory=dict)
    degree_mode: str = ""
    max_degree: int | None = None
    min_degree: int | None = None
    edge_count: int | None = None
    diameter: int | None = None
    diameter_mode: str = ""
    eccentricity_samples: list[int] = field(default_factory=list)
    stretch_stats: dict[str, Any] | None = None
    measurements: dict[str, Any] = field(default_factory=dict)
    violations: list[dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def violate(self, check: str, detail: str, witnesses: Iterable[int] = ()) -> None:
        self.violations.append({
            "check": check,
            "detail": detail,
            "witnesses": [format_vertex(w, self.n) for w in witnesses],
        })

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "graph_id": self.graph_id,
            "n": self.n,
            "suites": list(self.suites),
            "seed": self.seed,
            "passed": self.passed,
            "degree_mode": self.degree_mode,
            "degree_histogram": {str(k): v for k, v in sorted(self.degree_histogram.items())},
            "max_degree": self.max_degree,
            "min_degree": self.min_degree,
            "edge_count": self.edge_count,
            "diameter": self.diameter,
            "diameter_mode": self.diameter_mode,
            "eccentricity_samples": list(self.eccentricity_samples),
            "stretch_stats": self.stretch_stats,
            "measurements": dict(sorted(self.measurements.items())),
            "violations": list(self.violations),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def run_verification(graph, suites: Iterable[str], expect: Expectations,
                     budgets: Budgets | None = None, seed: int = 0) -> VerificationReport:
    budgets = budgets or Budgets()
    suites = [s for s in SUITES if s in set(suites)]
    n = graph.n
    report = VerificationReport(graph_id(graph), n, suites, seed)
    exhaustive = n <= budgets.materialize_max
    mat = materialize(graph, budgets.materialize_max) if exhaustive else None
    subject = mat if mat is not None else graph

    if "degree" in suites:
        stats = degree_scan(subject, None if exhaustive else budgets.sample_count, seed)
        report.degree_mode = "exhaustive" if exhaustive else f"sampled({budgets.sample_count})"
        report.degree_histogram = stats.histogram
        report.max_degree = stats.max_degree
        report.min_degree = stats.min_degree
        if expect.max_degree is not None and stats.max_degree > expect.max_degree:
            bad = _first_vertices(subject, lambda d: d > expect.max_degree, exhaustive,
                                  budgets.sample_count, seed)
            report.violate("max_degree", f"max degree {stats.max_degree} > {expect.max_degree}", bad)

    if "symmetry" in suites:
        samples = None if exhaustive else budgets.sample_count
        bad = symmetry_check(subject, samples, seed)
        report.measurements["symmetry_mode"] = "exhaustive" if exhaustive else f"sampled({samples})"
        if bad:
            report.violate("symmetry", f"{len(bad)} asymmetric edge(s) found",
                           [x for pair in bad for x in pair])

    if exhaustive and ("edges" in suites or "proposition" in suites):
        report.edge_count = edge_count(mat)

    if "edges" in suites and expect.edge_count is not None:
        if not exhaustive:
            report.violate("edges", "edge count needs the graph materialized")
        elif report.edge_count != expect.edge_count:
            report.violate("edges", f"edge count {report.edge_count} != {expect.edge_count}")

    if "diameter" in suites:
        if n <= budgets.diameter_max and exhaustive:
            res = multi_source_bfs(mat)
            report.diameter = res.max_eccentricity
            report.diameter_mode = "exhaustive"
            report.eccentricity_samples = [int(e) for e in res.eccentricity[: 16]]
            report.measurements["connected"] = res.connected
            if not res.connected and expect.diameter is not None:
                lost = [int(s) for s, e in zip(res.sources, res.eccentricity) if e < 0][:5]
                report.violate("connected", "graph is disconnected", lost)
        elif exhaustive:
            sources = min(32, budgets.sample_count)
            report.diameter = diameter_sampled(mat, sources, seed)
            report.diameter_mode = f"sampled_lower_bound({sources})"
        else:
            report.diameter_mode = "skipped(capacity)"
        if expect.diameter is not None and report.diameter is not None:
            exact = report.diameter_mode == "exhaustive"
            if report.diameter > expect.diameter or (exact and report.diameter != expect.diameter):
                report.violate("diameter", f"diameter {report.diameter} != {expect.diameter}")

    if "antipodal" in suites and expect.antipodal_distance is not None:
        if exhaustive and n <= budgets.diameter_max + 1:
            dist = antipodal_distances(mat)
            wrong = [v for v in range(1 << n) if dist[v] != expect.antipodal_distance]
            report.measurements["antipodal_distance_max"] = int(dist.max())
            if wrong:
                report.violate("antipodal", f"{len(wrong)} vertices not at distance "
                               f"{expect.antipodal_distance} from their antipode", wrong[:5])
        else:
            report.measurements["antipodal_distance_max"] = None

    if "stretch" in suites and exhaustive:
        stats = stretch_scan(mat, expect.stretch if expect.stretch is not None else 1 << 30,
                             samples=budgets.sample_count, seed=seed)
        report.stretch_stats = {
            "pairs": stats.pairs, "min": stats.min, "mean": round(stats.mean, 6),
            "max": stats.max, "histogram": {str(k): v for k, v in stats.histogram.items()},
        }
        report.measurements["stretch_unreachable_pairs"] = len(stats.unreachable)
        if stats.unreachable and expect.stretch is not None:
            report.violate("stretch", "unreachable pairs", [x for p in stats.unreachable[:3] for x in p])
        if expect.stretch is not None and stats.exceeding:
            u, v, st = stats.exceeding[0]
            report.violate("stretch", f"{len(stats.exceeding)}+ pairs with stretch > "
                           f"{expect.stretch} (first: {st})", [u, v])
        odd = [k for k in stats.histogram if k % 2 or k < 0]
        if odd:
            report.violate("stretch", f"odd or negative stretch values {odd}")

    if "proposition" in suites and expect.diameter_n_audit and exhaustive and n >= 2:
        floor = proposition_edge_floor(n)
        report.measurements["proposition_edge_floor"] = floor
        min_deg = report.min_degree if report.min_degree is not None else int(mat.degrees().min())
        report.min_degree = min_deg
        if report.edge_count < floor:
            report.violate("proposition", f"edge count {report.edge_count} < {floor}")
        if min_deg < 2:
            report.violate("proposition", f"min degree {min_deg} < 2")
    return report


def _first_vertices(graph, pred, exhaustive, samples, seed, limit=5):
    from .metrics import _vertex_sample
    from .graph import neighbor_mask

    pool = range(1 << graph.n) if exhaustive else _vertex_sample(graph.n, samples, seed)
    out = []
    for v in pool:
        if pred(neighbor_mask(graph, v).bit_count()):
            out.append(v)
            if len(out) >= limit:
                break
    return out


def layer_matching_expectations(n: int) -> Expectations:
    return Expectations(edge_count=layer_matching_edge_formula(n))
