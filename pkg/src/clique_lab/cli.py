"""Command line front end.

Exit codes: 0 success, 1 a requested check failed, 2 invalid input
(including the excluded case ``G_1(0)``), 3 a vertex cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import shlex
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields

from . import export
from .cliques import DEFAULT_ITERATE_CAP, clique_graph, iterate, maximal_cliques
from .geo import injectivity_check, render_ascii, side_length_law, triangle_of
from .graph import SizeGuardError
from .lattice import LatticeError, WindowSpec, build_window, format_point, make_point, parse_spec
from .quotient import QuotientError, QuotientSpec, build_quotient, validate, verify_quotient_theorem
from .theorem import CLAIM_IDS, ExcludedCaseError, counterexample_d4, divergence_witness, verify_claim

COMMANDS = ("build", "cliques", "kgraph", "iterate", "verify", "quotient", "geo", "counterexample-d4")
THREADS_ENV = "CLIQUE_LAB_THREADS"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    spec: str | None = None
    radius: int = 4
    margin: int = 2
    gens: str | None = None
    steps: int = 0
    cap: int = DEFAULT_ITERATE_CAP
    format: str | None = None
    out: str | None = None
    claims: str = "all"
    point: str | None = None
    d4_counterexample: bool = False
    timings: bool = False

    def argv(self) -> list[str]:
        args = [self.command]
        if self.spec is not None:
            args.append(self.spec)
        defaults = RunConfig(self.command)
        for f in fields(self):
            if f.name in ("command", "spec"):
                continue
            value = getattr(self, f.name)
            if value == getattr(defaults, f.name):
                continue
            flag = "--" + f.name.replace("_", "-")
            if isinstance(value, bool):
                args.append(flag)
            else:
                args.extend([flag, str(value)])
        return args

    def canonical(self) -> str:
        return shlex.join(self.argv())


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "dot", "table"))
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--radius", type=int, default=4, help="box half-width of lattice windows")
    common.add_argument("--margin", type=int, default=2, help="interior margin for window checks")
    common.add_argument("--gens", help='translation generators, e.g. "7,-7,0;0,7,-7"')
    common.add_argument("--steps", type=int, default=0)
    common.add_argument("--cap", type=int, default=DEFAULT_ITERATE_CAP, help="vertex cap for clique iteration")

    parser = argparse.ArgumentParser(prog="clique-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("build", "cliques", "kgraph", "iterate"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("spec", help='layered graph, e.g. "G:d=3,n=1" or "G*:d=3,n=3/2"')
        if name == "iterate":
            p.add_argument("--timings", action="store_true", help="include wall-clock seconds (not reproducible)")
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("spec", nargs="?")
    p.add_argument("--claims", default="all", help=f"comma separated subset of {','.join(CLAIM_IDS)} or 'all'")
    p.add_argument("--d4-counterexample", action="store_true")
    p = sub.add_parser("quotient", parents=[common])
    p.add_argument("spec", nargs="?")
    p = sub.add_parser("geo", parents=[common])
    p.add_argument("spec", nargs="?")
    p.add_argument("--point", help='a point of Z^3 or Z^3+1/2, e.g. "1/2,1/2,-1/2"')
    sub.add_parser("counterexample-d4", parents=[common])
    return parser


def parse_config(argv: list[str]) -> RunConfig:
    ns = _parser().parse_args(argv)
    values = {f.name: getattr(ns, f.name) for f in fields(RunConfig) if hasattr(ns, f.name)}
    return RunConfig(**values)


def _dump(obj) -> str:
    return json.dumps(_finite(obj), indent=2) + "\n"


def _finite(obj):
    if isinstance(obj, float) and math.isinf(obj):
        return None
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    return obj


def _window(cfg: RunConfig) -> WindowSpec:
    return WindowSpec(cfg.radius, cfg.margin)


def _build_window(cfg: RunConfig) -> WindowSpec:
    # the margin only matters for interior checks
    return WindowSpec(cfg.radius, max(0, min(cfg.margin, cfg.radius - 1)))


def _graph(cfg: RunConfig):
    spec = parse_spec(cfg.spec)
    if cfg.gens:
        return build_quotient(spec, QuotientSpec.parse(cfg.gens))
    return build_window(spec, _build_window(cfg))


def _stats(g) -> str:
    return (
        f"vertices  {g.vertex_count}\n"
        f"edges     {g.edge_count}\n"
        f"max_deg   {g.max_degree}\n"
    )


def cmd_build(cfg: RunConfig) -> tuple[int, str]:
    g = _graph(cfg)
    fmt = cfg.format or "json"
    if fmt == "dot":
        return 0, export.to_dot(g)
    if fmt == "table":
        return 0, _stats(g)
    return 0, export.to_json(g)


def cmd_cliques(cfg: RunConfig) -> tuple[int, str]:
    cl = maximal_cliques(_graph(cfg))
    if (cfg.format or "json") == "table":
        lines = [" ".join(format_point(p) for p in pts) for pts in cl.label_sets()]
        return 0, "\n".join(lines) + "\n"
    return 0, _dump({"count": len(cl), "cliques": [[list(p) for p in pts] for pts in cl.label_sets()]})


def cmd_kgraph(cfg: RunConfig) -> tuple[int, str]:
    kg, _ = clique_graph(_graph(cfg))
    fmt = cfg.format or "json"
    if fmt == "dot":
        return 0, export.to_dot(kg, "kG")
    if fmt == "table":
        return 0, _stats(kg)
    return 0, export.to_json(kg)


def cmd_iterate(cfg: RunConfig) -> tuple[int, str]:
    g = _graph(cfg)
    _, report = iterate(g, cfg.steps, cfg.cap)
    if (cfg.format or "table") == "json":
        return 0, report.to_jsonl(cfg.timings)
    return 0, report.to_table(cfg.timings)


def _run_claim(args):
    claim, spec_text, radius, margin = args
    spec = parse_spec(spec_text)
    return verify_claim(claim, spec, WindowSpec(radius, margin)).to_json()


def _workers() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    reports = []
    if cfg.d4_counterexample:
        reports.append(counterexample_d4().to_json())
    if cfg.spec is not None:
        spec = parse_spec(cfg.spec)
        _window(cfg)
        if cfg.claims == "all":
            claims = [c for c in CLAIM_IDS if c != "d4"]
        else:
            claims = [c.strip() for c in cfg.claims.split(",") if c.strip()]
            unknown = [c for c in claims if c not in CLAIM_IDS]
            if unknown:
                raise UsageError(f"unknown claims {unknown}")
        if spec.d == 1 and spec.kind == "primal" and spec.level_doubled == 0:
            raise ExcludedCaseError("G_1(0) is a single vertex and is excluded")
        jobs = [(c, cfg.spec, cfg.radius, cfg.margin) for c in claims]
        workers = min(_workers(), len(jobs)) or 1
        if workers > 1:
            with ProcessPoolExecutor(workers) as pool:
                reports.extend(pool.map(_run_claim, jobs))
        else:
            reports.extend(_run_claim(job) for job in jobs)
    if not reports:
        raise UsageError("verify needs a spec or --d4-counterexample")
    ok = all(r["verdict"] == "pass" for r in reports)
    return (0 if ok else 1), _dump({"all_passed": ok, "reports": reports})


def cmd_quotient(cfg: RunConfig) -> tuple[int, str]:
    if not cfg.gens:
        raise UsageError("quotient needs --gens")
    qs = QuotientSpec.parse(cfg.gens)
    index = validate(qs)
    if cfg.steps > 0:
        report = verify_quotient_theorem(qs, cfg.steps, cfg.cap)
        doc = report.to_json()
        if (cfg.format or "json") == "table":
            head = "step  predicted        vertices  max_deg  max_clique  iso\n"
            rows = "".join(
                f"{r['step']:>4}  {r['predicted']:<15}  {r['vertices']:>8}  {r['max_degree']:>7}  {r['max_clique']:>10}  "
                f"{'yes' if r['explicit_map'] else 'no'}\n"
                for r in doc["details"]["steps"]
            )
            return (0 if report.passed else 1), head + rows
        return (0 if report.passed else 1), _dump(doc)
    spec = parse_spec(cfg.spec or "G:d=3,n=0")
    g = build_quotient(spec, qs)
    components, gap = divergence_witness(g)
    doc = {
        "spec": str(spec),
        "gens": str(qs),
        "index": index,
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "max_degree": g.max_degree,
        "low_degree_components": components,
        "low_degree_min_distance": gap,
    }
    if (cfg.format or "json") == "table":
        return 0, "".join(f"{k:<24}{'inf' if v == math.inf else v}\n" for k, v in doc.items())
    return 0, _dump(doc)


def cmd_geo(cfg: RunConfig) -> tuple[int, str]:
    fmt = cfg.format or "table"
    if cfg.point:
        x = make_point(cfg.point.split(","))
        t = triangle_of(x)
        if fmt == "json":
            return 0, _dump({"point": list(x), "side_length": t.side_length, "orientation": t.orientation,
                             "vertices": [list(v) for v in t.vertices]})
        text = f"T_{format_point(x)}: side {t.side_length}, {t.orientation}\n"
        text += " ".join(format_point(v) for v in t.vertices) + "\n"
        return 0, text + render_ascii(t)
    if cfg.spec is None:
        raise UsageError("geo needs a spec or --point")
    spec = parse_spec(cfg.spec)
    w = _build_window(cfg)
    g = build_window(spec, w)
    laws = [side_length_law(spec, w), injectivity_check(spec, w)]
    ok = all(r.passed for r in laws)
    if fmt == "json":
        table = [
            {"point": list(x), "side_length": t.side_length, "vertices": [list(v) for v in t.vertices]}
            for x, t in ((x, triangle_of(x)) for x in g.labels)
        ]
        return (0 if ok else 1), _dump({"reports": [r.to_json() for r in laws], "table": table})
    lines = [f"{r.claim}: {'pass' if r.passed else 'fail'} {r.details}" for r in laws]
    for x in g.labels:
        t = triangle_of(x)
        lines.append(f"{format_point(x)}  m={t.side_length}  |T|={len(t.vertices)}")
    return (0 if ok else 1), "\n".join(lines) + "\n"


def cmd_counterexample_d4(cfg: RunConfig) -> tuple[int, str]:
    report = counterexample_d4()
    return (0 if report.passed else 1), _dump(report.to_json())


HANDLERS = {
    "build": cmd_build,
    "cliques": cmd_cliques,
    "kgraph": cmd_kgraph,
    "iterate": cmd_iterate,
    "verify": cmd_verify,
    "quotient": cmd_quotient,
    "geo": cmd_geo,
    "counterexample-d4": cmd_counterexample_d4,
}


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, text = HANDLERS[cfg.command](cfg)
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (LatticeError, QuotientError, ExcludedCaseError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
