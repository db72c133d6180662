"""Batch command-line front end.

Every subcommand emits a deterministic report (text or JSON); wall-clock
timing is isolated in the report footer / a dedicated JSON field so that
repeated runs are byte-identical elsewhere.  Exit codes: 0 success or pass,
1 verification failure, 2 usage or parse error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .triplesystem import TripleSystem
from .construction import (
    Layout,
    complex_from_layout,
    conjectured_max,
    enumerate_construction4,
    parse_layout,
    render_layout,
)
from .invariants import empty_clusters, fingerprint
from .isomorphism import CanonicalForm, are_isomorphic, canonical_form
from .search import min_missing_cover

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("TURAN34_JOBS", "1")))
    except ValueError:
        return 1


def _emit(report_text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(report_text)
    else:
        sys.stdout.write(report_text)


def _json_report(subcommand: str, params: dict, payload: dict, status: str, elapsed: float) -> str:
    report = {
        "subcommand": subcommand,
        "parameters": params,
        "results": payload,
        "status": status,
        "elapsed_seconds": round(elapsed, 3),
    }
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _canonical_key_worker(ts: TripleSystem) -> tuple:
    return canonical_form(ts).key


def _map_jobs(fn, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# -- subcommands ----------------------------------------------------------------


def cmd_enumerate(args) -> int:
    start = time.monotonic()
    layouts = enumerate_construction4(args.n)
    systems = [complex_from_layout(l) for l in layouts]
    if args.format == "json":
        payload = {
            "n": args.n,
            "count": len(layouts),
            "complexes": [
                {
                    "layout": render_layout(l),
                    "system": ts.render(),
                    "triangles": ts.triangle_count(),
                }
                for l, ts in zip(layouts, systems)
            ],
        }
        text = _json_report(
            "enumerate", {"n": args.n}, payload, "complete", time.monotonic() - start
        )
    else:
        lines = [f"enumerate n={args.n}"]
        for i, (l, ts) in enumerate(zip(layouts, systems)):
            lines.append(f"-- complex {i} ({ts.triangle_count()} triangles)")
            lines.append(render_layout(l).rstrip())
            lines.append(ts.render().rstrip())
        lines.append(f"count: {len(layouts)}")
        lines.append(f"elapsed: {time.monotonic() - start:.3f}s")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_PASS


def cmd_verify(args) -> int:
    start = time.monotonic()
    layouts = enumerate_construction4(args.n)
    systems = [complex_from_layout(l) for l in layouts]
    bound = conjectured_max(args.n)
    failures = []
    failing = set()
    for i, ts in enumerate(systems):
        if ts.find_k4() is not None:
            failures.append(f"complex {i}: contains a K4")
            failing.add(i)
            continue
        if ts.triangle_count() != bound:
            failures.append(
                f"complex {i}: {ts.triangle_count()} triangles, expected {bound}"
            )
            failing.add(i)
        if not ts.is_maximal_k4_free():
            failures.append(f"complex {i}: not maximal")
            failing.add(i)
    keys = _map_jobs(_canonical_key_worker, systems, args.jobs)
    seen: dict[tuple, int] = {}
    for i, key in enumerate(keys):
        if key in seen:
            failures.append(f"complex {i}: isomorphic to complex {seen[key]}")
            failing.add(i)
        else:
            seen[key] = i
    elapsed = time.monotonic() - start
    status = "complete"
    passed = len(systems) - len(failing)
    if args.format == "json":
        payload = {
            "n": args.n,
            "count": len(systems),
            "passed": passed,
            "bound": bound,
            "failures": failures,
        }
        text = _json_report("verify", {"n": args.n}, payload, status, elapsed)
    else:
        lines = [f"verify n={args.n}: bound {bound}"]
        lines.extend(failures)
        verdict = "pass" if not failures else "FAIL"
        lines.append(f"{verdict}, {passed}/{len(systems)} complexes")
        lines.append(f"elapsed: {elapsed:.3f}s")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_PASS if not failures else EXIT_FAIL


def _load_system(path: str) -> TripleSystem:
    with open(path, encoding="utf-8") as fh:
        return TripleSystem.parse(fh.read())


def cmd_invariants(args) -> int:
    start = time.monotonic()
    ts = _load_system(args.file)
    record = fingerprint(ts)
    clusters = empty_clusters(ts)
    elapsed = time.monotonic() - start
    if args.format == "json":
        payload = {
            "file": args.file,
            "record": json.loads(record.to_json()),
            "clusters": [sorted(c) for c in clusters],
        }
        text = _json_report(
            "invariants", {"file": args.file}, payload, "complete", elapsed
        )
    else:
        lines = [f"invariants {args.file}: n={ts.n}, {ts.triangle_count()} triangles"]
        census = dict(record.cluster_size_census)
        lines.append(
            "empty clusters by size: "
            + (
                ", ".join(f"{s}:{c}" for s, c in sorted(census.items()))
                or "none"
            )
        )
        for c in clusters:
            lines.append("cluster " + " ".join(str(v) for v in sorted(c)))
        lines.append(record.to_json())
        lines.append(f"elapsed: {elapsed:.3f}s")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_PASS


def cmd_iso(args) -> int:
    start = time.monotonic()
    a = _load_system(args.file_a)
    b = _load_system(args.file_b)
    verdict, witness = are_isomorphic(a, b)
    elapsed = time.monotonic() - start
    if args.format == "json":
        payload = {
            "file_a": args.file_a,
            "file_b": args.file_b,
            "isomorphic": verdict,
            "witness": list(witness) if witness else None,
        }
        text = _json_report(
            "iso",
            {"file_a": args.file_a, "file_b": args.file_b},
            payload,
            "complete",
            elapsed,
        )
    else:
        lines = [f"iso {args.file_a} {args.file_b}"]
        if verdict:
            lines.append("isomorphic")
            lines.append("witness " + " ".join(str(v) for v in witness))
        else:
            lines.append("not isomorphic")
        lines.append(f"elapsed: {elapsed:.3f}s")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_PASS


def cmd_search(args) -> int:
    start = time.monotonic()
    report = min_missing_cover(args.n, budget_seconds=args.budget)
    elapsed = time.monotonic() - start
    status = "complete" if report.complete else "budget-exceeded"
    if args.format == "json":
        payload = {
            "n": args.n,
            "m": report.cover_size,
            "t": report.t3,
            "class_count": report.class_count if report.complete else None,
            "classes": [ts.render() for ts in report.classes]
            if report.complete
            else [],
            "nodes": report.nodes,
        }
        text = _json_report(
            "search", {"n": args.n, "budget": args.budget}, payload, status, elapsed
        )
    else:
        lines = [f"search n={args.n}"]
        if report.complete:
            lines.append(f"m={report.cover_size} t={report.t3}")
            lines.append(f"classes: {report.class_count}")
            for i, ts in enumerate(report.classes):
                lines.append(f"-- class {i}")
                lines.append(ts.render().rstrip())
        else:
            lines.append("budget exceeded: results incomplete")
        lines.append(f"nodes: {report.nodes}")
        lines.append(f"elapsed: {elapsed:.3f}s")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_PASS if report.complete else EXIT_BUDGET


def cmd_show(args) -> int:
    start = time.monotonic()
    with open(args.file, encoding="utf-8") as fh:
        raw = fh.read()
    stripped = next(
        (line for line in raw.splitlines() if line.strip() and not line.startswith("#")),
        "",
    )
    if stripped.startswith("layout"):
        layout = parse_layout(raw)
        ts = complex_from_layout(layout)
        source = render_layout(layout)
    else:
        ts = TripleSystem.parse(raw)
        source = None
    elapsed = time.monotonic() - start
    if args.format == "json":
        payload = {
            "file": args.file,
            "n": ts.n,
            "triangles": ts.triangle_count(),
            "missing": len(ts.missing_triples()),
            "system": ts.render(),
        }
        if source:
            payload["layout"] = source
        text = _json_report("show", {"file": args.file}, payload, "complete", elapsed)
    else:
        lines = [f"show {args.file}"]
        if source:
            lines.append(source.rstrip())
        lines.append(ts.render().rstrip())
        lines.append(
            f"n={ts.n} triangles={ts.triangle_count()} missing={len(ts.missing_triples())}"
        )
        lines.append(f"elapsed: {elapsed:.3f}s")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_PASS


# -- argument parsing --------------------------------------------------------------


def _positive_n(value: str) -> int:
    n = int(value)
    if n < 3:
        raise argparse.ArgumentTypeError(f"need n >= 3, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="turan34",
        description="Extremal K4-free triple systems: enumerate, verify, classify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", metavar="PATH", default=None)
        p.add_argument("--jobs", type=int, default=_default_jobs())

    p = sub.add_parser("enumerate", help="list the extremal family for n")
    p.add_argument("n", type=_positive_n)
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="check the family: K4-free, maximal, bound, distinct")
    p.add_argument("n", type=_positive_n)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invariants", help="fingerprint a system file")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("iso", help="isomorphism verdict for two system files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    common(p)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("search", help="exhaustive minimum-cover search for n")
    p.add_argument("n", type=lambda v: _check_min(v, 4))
    p.add_argument("--budget", type=float, default=None, metavar="SECONDS")
    common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("show", help="parse and display a layout or system file")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_show)

    return parser


def _check_min(value: str, floor: int) -> int:
    n = int(value)
    if n < floor:
        raise argparse.ArgumentTypeError(f"need n >= {floor}, got {n}")
    return n


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
