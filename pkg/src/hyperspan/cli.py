"""Batch front-end: build, route and verify hypercube subgraph constructions.

Exit status: 0 pass, 1 property violation, 2 configuration error, 3 capacity.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path as FilePath
from typing import Any, Sequence

from .add_spanner import AdditiveSpanner, SpannerParams, paper_params
from .antipodal import AntipodalCycleGraph
from .diam_spanner import DEFAULT_THRESHOLD, DiameterSpanner
from .errors import CapacityError, HyperspanError, ParameterError
from .hyperbits import antipode, distinct_coordinate_sums, format_vertex, greedy_path, parse_vertex
from .verify import (
    Budgets,
    Expectations,
    Hypercube,
    degree_scan,
    materialize,
    read_edge_list,
    run_verification,
    validate_path,
    write_edge_list,
)
from .verify.graph import MATERIALIZE_MAX
from .verify.layers import LayerMatchingGraph, layer_matching_edge_formula
from .verify.metrics import DIAMETER_MAX, shortest_path
from .verify.report import SUITES

CONSTRUCTIONS = ("qn", "antipodal", "diam", "addspanner", "layermatch")
EXIT_OK, EXIT_VIOLATION, EXIT_CONFIG, EXIT_CAPACITY = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    construction: str | None = None
    n: int | None = None
    k: int = 1
    q: int | None = None
    block_sizes: tuple[int, ...] | None = None
    s: int | None = None
    g: int | None = None
    schedule: str | None = None
    threshold: int = DEFAULT_THRESHOLD
    force: bool = False
    rule: str = "chain"
    materialize_max: int = MATERIALIZE_MAX
    diameter_max: int = DIAMETER_MAX
    sample_count: int = int(os.environ.get("HYPERSPAN_SAMPLE_COUNT", "10000"))
    seed: int = 0
    out: str | None = None
    report: str | None = None
    edges: str | None = None
    suites: tuple[str, ...] = SUITES
    expect_diameter: int | None = None
    expect_max_degree: int | None = None
    src: str | None = None
    dst: str | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def budgets(self) -> Budgets:
        return Budgets(self.materialize_max, self.diameter_max, self.sample_count)


def _load_schedule(path: str) -> dict[tuple[int, int], SpannerParams]:
    try:
        doc = json.loads(FilePath(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParameterError(f"cannot read schedule {path}: {exc}") from exc
    entries = doc.get("entries", []) if isinstance(doc, dict) else doc
    out = {}
    for entry in entries:
        p = SpannerParams.from_dict(entry)
        out[(p.k, p.n)] = p
    return out


def additive_params(cfg: RunConfig) -> tuple[SpannerParams, dict | None]:
    schedule = _load_schedule(cfg.schedule) if cfg.schedule else None
    overrides = (cfg.q, cfg.block_sizes, cfg.s, cfg.g)
    if cfg.k == 0:
        return SpannerParams.base(cfg.n), schedule
    if all(v is not None for v in overrides):
        return SpannerParams(n=cfg.n, k=cfg.k, q=cfg.q, block_sizes=tuple(cfg.block_sizes),
                             s=cfg.s, g=cfg.g), schedule
    if any(v is not None for v in overrides):
        raise ParameterError("override mode needs all of --q, --block-sizes, --s, --g")
    if schedule is not None and (cfg.k, cfg.n) in schedule:
        return schedule[(cfg.k, cfg.n)], schedule
    return paper_params(cfg.n, cfg.k), schedule


def build_graph(cfg: RunConfig):
    if cfg.edges:
        with open(cfg.edges) as fh:
            return read_edge_list(fh, graph_id=f"edgelist({FilePath(cfg.edges).name})")
    if cfg.n is None or cfg.n < 1:
        raise ParameterError("--n must be a positive integer")
    c = cfg.construction
    if c == "qn":
        return Hypercube(cfg.n)
    if c == "antipodal":
        return AntipodalCycleGraph(cfg.n)
    if c == "diam":
        return DiameterSpanner(cfg.n, cfg.threshold, cfg.force)
    if c == "addspanner":
        params, schedule = additive_params(cfg)
        return AdditiveSpanner(params, schedule)
    if c == "layermatch":
        return LayerMatchingGraph(cfg.n, cfg.rule)
    raise ParameterError(f"unknown construction {c!r}")


def expectations(cfg: RunConfig, graph) -> Expectations:
    n = graph.n
    c = None if cfg.edges else cfg.construction
    exp = Expectations()
    if c == "qn":
        exp = Expectations(max_degree=n, diameter=n, stretch=0, diameter_n_audit=True)
    elif c == "antipodal":
        exp = Expectations(max_degree=10, antipodal_distance=n)
    elif c == "diam":
        exp = Expectations(max_degree=120, diameter=n, diameter_n_audit=True)
    elif c == "addspanner":
        exp = Expectations(stretch=2 * graph.k)
    elif c == "layermatch":
        exp = Expectations(edge_count=layer_matching_edge_formula(n))
    if cfg.expect_diameter is not None:
        exp.diameter = cfg.expect_diameter
        exp.diameter_n_audit = cfg.expect_diameter == n
    if cfg.expect_max_degree is not None:
        exp.max_degree = cfg.expect_max_degree
    return exp


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def cmd_build(cfg: RunConfig) -> int:
    graph = build_graph(cfg)
    n = graph.n
    summary: dict[str, Any] = {"command": "build", "graph_id": getattr(graph, "graph_id", "?"),
                               "n": n, "vertices": 1 << n}
    if n <= cfg.materialize_max:
        mat = materialize(graph, cfg.materialize_max)
        stats = degree_scan(mat)
        if cfg.out:
            with open(cfg.out, "w", newline="\n") as fh:
                m = write_edge_list(mat, fh)
        else:
            m = int(mat.degrees().sum()) // 2
        summary.update(mode="materialized", edges=m, max_degree=stats.max_degree,
                       min_degree=stats.min_degree, edge_list=cfg.out)
    else:
        if cfg.out:
            raise CapacityError(f"edge-list export needs n <= {cfg.materialize_max}, got {n}")
        stats = degree_scan(graph, cfg.sample_count, cfg.seed)
        summary.update(mode=f"sampled({cfg.sample_count})", edges=None,
                       max_degree=stats.max_degree, min_degree=stats.min_degree, edge_list=None)
    _emit(summary)
    return EXIT_OK


def cmd_route(cfg: RunConfig) -> int:
    graph = build_graph(cfg)
    n = graph.n
    src, dst = parse_vertex(cfg.src, n), parse_vertex(cfg.dst, n)
    doc: dict[str, Any] = {"command": "route", "graph_id": getattr(graph, "graph_id", "?")}
    if isinstance(graph, AdditiveSpanner):
        rep = graph.route(src, dst)
        path = rep.path
        doc["fallback_rounds"] = rep.fallback_rounds
    elif isinstance(graph, DiameterSpanner):
        path = graph.route(src, dst)
    elif isinstance(graph, Hypercube):
        path = greedy_path(src, dst)
    elif isinstance(graph, AntipodalCycleGraph) and dst == antipode(src, n):
        path = graph.antipodal_walk(src)
    else:
        path = shortest_path(graph, src, dst, cfg.materialize_max)
        if path is None:
            doc.update(valid=False, error="unreachable")
            _emit(doc)
            return EXIT_VIOLATION
    bad = validate_path(graph, path, dst, src)
    ham = (src ^ dst).bit_count()
    doc.update(
        path=[format_vertex(v, n) for v in path],
        length=len(path) - 1,
        hamming_distance=ham,
        slack=len(path) - 1 - ham,
        distinct_sums=distinct_coordinate_sums(path),
        valid=bad is None,
    )
    if bad is not None:
        doc["bad_index"] = bad
    _emit(doc)
    return EXIT_OK if bad is None else EXIT_VIOLATION


def cmd_verify(cfg: RunConfig) -> int:
    graph = build_graph(cfg)
    report = run_verification(graph, cfg.suites, expectations(cfg, graph), cfg.budgets, cfg.seed)
    text = report.to_json()
    if cfg.report:
        with open(cfg.report, "w", newline="\n") as fh:
            fh.write(text)
    summary = {"command": "verify", "graph_id": report.graph_id, "passed": report.passed,
               "violations": report.violations, "report": cfg.report}
    _emit(summary)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _suite_list(text: str) -> tuple[str, ...]:
    items = tuple(x.strip() for x in text.split(",") if x.strip())
    unknown = [x for x in items if x not in SUITES]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown suites {unknown}; choose from {SUITES}")
    return items


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperspan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--construction", choices=CONSTRUCTIONS, default="qn")
    common.add_argument("--n", type=int)
    common.add_argument("--k", type=int, default=1, help="additive spanner level")
    common.add_argument("--q", type=int)
    common.add_argument("--block-sizes", type=_int_list)
    common.add_argument("--s", type=int)
    common.add_argument("--g", type=int)
    common.add_argument("--schedule", help="JSON parameter schedule for sub-spanners")
    common.add_argument("--threshold", type=int, default=DEFAULT_THRESHOLD)
    common.add_argument("--force", action="store_true", help="structured diam graph below threshold")
    common.add_argument("--rule", choices=("chain", "bracket"), default="chain")
    common.add_argument("--materialize-max", type=int, default=MATERIALIZE_MAX)
    common.add_argument("--diameter-max", type=int, default=DIAMETER_MAX)
    common.add_argument("--sample-count", type=int,
                        default=int(os.environ.get("HYPERSPAN_SAMPLE_COUNT", "10000")))
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--edges", help="read the graph from an edge-list file instead")

    p = sub.add_parser("build", parents=[common], help="build and export an edge list")
    p.add_argument("--out")
    p = sub.add_parser("route", parents=[common], help="route between two vertices")
    p.add_argument("src")
    p.add_argument("dst")
    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--report")
    p.add_argument("--suites", type=_suite_list, default=SUITES)
    p.add_argument("--expect-diameter", type=int)
    p.add_argument("--expect-max-degree", type=int)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in vars(args).items() if k in fields})


COMMANDS = {"build": cmd_build, "route": cmd_route, "verify": cmd_verify}


def _fail(code: int, exc: Exception) -> int:
    doc = {"error": type(exc).__name__, "message": str(exc)}
    violations = getattr(exc, "violations", None)
    if violations:
        doc["violations"] = violations
    sys.stderr.write(json.dumps(doc) + "\n")
    return code


def main(argv: Sequence[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    cfg = config_from_args(args)
    try:
        return COMMANDS[cfg.command](cfg)
    except CapacityError as exc:
        return _fail(EXIT_CAPACITY, exc)
    except (HyperspanError, ValueError, OSError) as exc:
        return _fail(EXIT_CONFIG, exc)


if __name__ == "__main__":
    sys.exit(main())
