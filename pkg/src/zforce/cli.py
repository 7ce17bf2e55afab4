"""Command-line entry point: ``zforce gen|analyze|certify|hunt``.

Graphs stream one per line, as graph6 or as a JSON object
``{"n": ..., "edges": [...]}``. Exit codes: 0 success, 2 usage or parse
error, 3 a bound was violated, 4 a certificate failed verification.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Callable, Iterable, Iterator, TextIO

from . import certify as cert_mod
from .errors import PreconditionError, ZForceError
from .forcing import solver_cap
from .generators import (
    ENUMERATION_CAP,
    enumerate_connected_claw_free_cubic,
    k4,
    necklace,
    prism,
    random_claw_free_cubic,
)
from .graph import Graph, are_isomorphic, decode_graph6, encode_graph6, from_json
from .solvers import bounds_report

log = logging.getLogger("zforce")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VIOLATION = 3
EXIT_VERIFY = 4


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    format: str = "json"
    cap: int | None = None
    max_n: int | None = None
    seed: int = 0
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.cap is not None and self.cap <= 0:
            raise UsageError("--cap must be positive")
        if self.max_n is not None and self.max_n <= 0:
            raise UsageError("--max-n must be positive")
        if self.jobs <= 0:
            raise UsageError("--jobs must be positive")

    @property
    def effective_cap(self) -> int:
        return self.cap if self.cap is not None else solver_cap()


# --- I/O --------------------------------------------------------------------


def parse_graph_line(line: str) -> Graph:
    text = line.strip()
    if text.startswith("{"):
        return from_json(json.loads(text))
    return decode_graph6(text)


def read_graphs(stream: TextIO) -> list[tuple[str, Graph]]:
    out = []
    for lineno, line in enumerate(stream, 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            g = parse_graph_line(line)
        except (ZForceError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"line {lineno}: cannot parse graph: {exc}") from exc
        out.append((encode_graph6(g).decode(), g))
    return out


def _open_input(path: str | None):
    if path is None or path == "-":
        return contextlib.nullcontext(sys.stdin)
    try:
        return open(path, encoding="ascii")
    except OSError as exc:
        raise UsageError(str(exc)) from exc


def _emit_graph(g: Graph, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        out.write(json.dumps(g.to_json()) + "\n")
    elif fmt == "dot":
        out.write(graph_dot(g))
    else:
        out.write(encode_graph6(g).decode() + "\n")


def graph_dot(g: Graph, certificate: cert_mod.Certificate | None = None) -> str:
    """DOT text: S filled, I with a heavy red outline, matching edges bold."""
    lines = ["graph G {", "  node [shape=circle];"]
    s = certificate.s if certificate else frozenset()
    i = certificate.i if certificate else frozenset()
    m = {tuple(sorted(e)) for e in certificate.m} if certificate else set()
    for v in range(g.n):
        attrs = []
        if v in s:
            attrs += ["style=filled", "fillcolor=black", "fontcolor=white"]
        if v in i:
            attrs += ["color=red", "penwidth=3"]
        lines.append(f"  {v}" + (f" [{', '.join(attrs)}];" if attrs else ";"))
    for u, v in g.sorted_edges():
        lines.append(f"  {u} -- {v}" + (" [penwidth=3, style=bold];" if (u, v) in m else ";"))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _map(fn: Callable, items: list, jobs: int) -> Iterator:
    if jobs <= 1 or len(items) <= 1:
        yield from map(fn, items)
        return
    with Pool(jobs) as pool:
        # imap keeps input order regardless of completion order
        yield from pool.imap(fn, items)


# --- workers (top level so they pickle) -------------------------------------


def _analyze_one(args: tuple[str, Graph, int]) -> dict:
    g6, g, cap = args
    try:
        report = bounds_report(g, cap=cap)
    except PreconditionError as exc:
        return {"graph": g6, "status": "skipped", "reason": type(exc).__name__, "message": str(exc)}
    except ZForceError as exc:
        return {"graph": g6, "status": "error", "reason": type(exc).__name__, "message": str(exc)}
    return {"graph": g6, "status": "ok", "report": report.to_json()}


def _certify_one(args: tuple[str, Graph]) -> dict:
    g6, g = args
    try:
        c = cert_mod.build_certificate(g)
    except PreconditionError as exc:
        return {"graph": g6, "status": "skipped", "reason": type(exc).__name__, "message": str(exc)}
    except ZForceError as exc:
        return {"graph": g6, "status": "error", "reason": type(exc).__name__, "message": str(exc)}
    v = cert_mod.verify_certificate(g, c)
    return {"graph": g6, "status": "ok", "certificate": c.to_json(), "verification": v.to_json()}


# --- commands ---------------------------------------------------------------


def cmd_gen(ns: argparse.Namespace, out: TextIO) -> int:
    fmt = ns.format if ns.format in ("json", "graph6", "dot") else "graph6"
    kind = ns.kind
    if kind == "prism":
        graphs = [prism()]
    elif kind == "k4":
        graphs = [k4()]
    elif kind == "necklace":
        graphs = [necklace(ns.k)]
    elif kind == "random":
        graphs = [random_claw_free_cubic(ns.units, ns.diamond_fraction, ns.seed)]
    else:
        max_n = ns.max_n if ns.max_n is not None else 12
        graphs = enumerate_connected_claw_free_cubic(max_n)
    for g in graphs:
        _emit_graph(g, fmt, out)
    return EXIT_OK


def _table_row(rec: dict) -> str:
    if rec["status"] != "ok":
        return f"{rec['graph']}\t{rec['status']}\t{rec['reason']}"
    r = rec["report"]
    bad = [row["name"] for row in r["inequalities"] if not row["holds"]]
    return (
        f"{rec['graph']}\tn={r['n']}\tz={r['z']}\tft={r['ft']}\talpha={r['alpha']}"
        f"\talpha'={r['alpha_prime']}\tcert={r['cert_size']}\t"
        + ("ok" if not bad else "VIOLATED:" + ",".join(bad))
    )


def cmd_analyze(cfg: RunConfig, out: TextIO) -> int:
    with _open_input(cfg.input) as stream:
        graphs = read_graphs(stream)
    status = EXIT_OK
    items = [(g6, g, cfg.effective_cap) for g6, g in graphs]
    for rec in _map(_analyze_one, items, cfg.jobs):
        if rec["status"] == "ok":
            failed = [row["name"] for row in rec["report"]["inequalities"] if not row["holds"]]
            if failed:
                log.error("bound violated on %s: %s", rec["graph"], ", ".join(failed))
                status = EXIT_VIOLATION
        elif rec["status"] == "error":
            log.warning("%s: %s", rec["graph"], rec["message"])
        out.write((_table_row(rec) if cfg.format == "table" else json.dumps(rec)) + "\n")
    return status


def cmd_certify(cfg: RunConfig, out: TextIO, emit_dot: bool) -> int:
    with _open_input(cfg.input) as stream:
        graphs = read_graphs(stream)
    status = EXIT_OK
    lookup = dict(graphs)
    for rec in _map(_certify_one, graphs, cfg.jobs):
        if rec["status"] == "ok" and not rec["verification"]["ok"]:
            log.error("certificate failed verification on %s", rec["graph"])
            status = EXIT_VERIFY
        if (emit_dot or cfg.format == "dot") and rec["status"] == "ok":
            c = cert_mod.Certificate.from_json(rec["certificate"])
            out.write(graph_dot(lookup[rec["graph"]], c))
        elif cfg.format == "table":
            if rec["status"] == "ok":
                c = rec["certificate"]
                out.write(f"{rec['graph']}\t{c['mode']}\t|S|={len(c['S'])}\t|I|={len(c['I'])}"
                          f"\t{'verified' if rec['verification']['ok'] else 'FAILED'}\n")
            else:
                out.write(f"{rec['graph']}\t{rec['status']}\t{rec['reason']}\n")
        else:
            out.write(json.dumps(rec) + "\n")
    return status


KNOWN_EXTREMAL = {"prism": prism, "N2": lambda: necklace(2), "N3": lambda: necklace(3)}


def hunt(max_n: int, cap: int | None = None, jobs: int = 1) -> list[dict]:
    """All corpus graphs up to ``max_n`` with Z = alpha + 1."""
    if max_n > ENUMERATION_CAP:
        raise UsageError(f"--max-n {max_n} exceeds the enumeration cap of {ENUMERATION_CAP}")
    corpus = enumerate_connected_claw_free_cubic(max_n)
    items = [(encode_graph6(g).decode(), g, cap if cap is not None else solver_cap()) for g in corpus]
    findings = []
    for (g6, g, _), rec in zip(items, _map(_analyze_one, items, jobs)):
        if rec["status"] != "ok" or not rec["report"]["flags"]["z_equals_alpha_plus_one"]:
            continue
        name = next((k for k, f in KNOWN_EXTREMAL.items() if are_isomorphic(g, f())), None)
        c = cert_mod.build_certificate(g)
        findings.append(
            {
                "graph": g6,
                "n": g.n,
                "known": name,
                "discovery": name is None,
                "certificate": c.to_json(),
                "report": rec["report"],
            }
        )
        if name is None:
            log.warning("discovery: %s has Z = alpha + 1 and is not prism/N2/N3", g6)
    return findings


def cmd_hunt(cfg: RunConfig, out: TextIO) -> int:
    findings = hunt(cfg.max_n if cfg.max_n is not None else 12, cfg.cap, cfg.jobs)
    for f in findings:
        if cfg.format == "table":
            out.write(f"{f['graph']}\tn={f['n']}\t{f['known'] or 'DISCOVERY'}\n")
        else:
            out.write(json.dumps(f) + "\n")
    log.info("%d graph(s) with Z = alpha + 1", len(findings))
    return EXIT_OK


# --- argument parsing -------------------------------------------------------


def _common(p: argparse.ArgumentParser, with_input: bool = True) -> None:
    if with_input:
        p.add_argument("--input", default="-", help="graph file (graph6 or JSON lines), - for stdin")
    p.add_argument("--format", choices=["json", "dot", "graph6", "table"], default=None)
    p.add_argument("--cap", type=int, default=None, help="vertex cap for exponential solvers")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zforce", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit named, random or enumerated graphs")
    gen.add_argument("kind", choices=["prism", "k4", "necklace", "random", "enumerate"])
    gen.add_argument("--k", type=int, default=2, help="number of diamonds in a necklace")
    gen.add_argument("--units", type=int, default=4)
    gen.add_argument("--diamond-fraction", type=float, default=0.5)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--max-n", type=int, default=None)
    _common(gen, with_input=False)

    an = sub.add_parser("analyze", help="bounds report per input graph")
    _common(an)

    ce = sub.add_parser("certify", help="build and verify constructive certificates")
    ce.add_argument("--emit-dot", action="store_true", help="render certificates as DOT")
    _common(ce)

    hu = sub.add_parser("hunt", help="list corpus graphs with Z = alpha + 1")
    hu.add_argument("--max-n", type=int, default=12)
    _common(hu, with_input=False)
    return parser


def main(argv: Iterable[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    ns = parser.parse_args(None if argv is None else list(argv))
    logging.basicConfig(
        level=logging.DEBUG if ns.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = RunConfig(
            command=ns.command,
            input=getattr(ns, "input", None),
            format=ns.format or ("graph6" if ns.command == "gen" else "json"),
            cap=ns.cap,
            max_n=getattr(ns, "max_n", None),
            seed=getattr(ns, "seed", 0),
            jobs=ns.jobs,
        )
        if ns.command == "gen":
            return cmd_gen(ns, out)
        if ns.command == "analyze":
            return cmd_analyze(cfg, out)
        if ns.command == "certify":
            return cmd_certify(cfg, out, ns.emit_dot)
        return cmd_hunt(cfg, out)
    except UsageError as exc:
        print(f"zforce: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ZForceError as exc:
        print(f"zforce: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
