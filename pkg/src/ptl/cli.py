"""``ptl`` command line.

Exit codes:
    0  success / PASS
    1  verification FAIL
    2  parse or usage error
    3  input graph is not planar
    4  certificate failure
    5  precondition violation
    6  exhaustive bound exceeded
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Sequence

from . import __version__
from .blocks import decompose
from .construct import MAX_K, WitnessSpec, build_witness, dump_witness, verify_witness
from .discharge import FAIL, PASS, PRECONDITION, bound_chain, lemma32_check
from .embed import (
    DisconnectedGraphError,
    EmbeddingError,
    KuratowskiWitness,
    PlaneGraph,
    looks_like_embedding,
    read_embedding,
    test_planarity,
)
from .graph import GraphFormatError, parse_graph6, write_graph6
from .patterns import PRESETS
from .search import BoundExceeded, bound_table, max_n_bound, table_json, table_text

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NONPLANAR = 3
EXIT_CERTIFICATE = 4
EXIT_PRECONDITION = 5
EXIT_BOUND = 6

SCHEMA_VERSION = 1


class CliError(Exception):
    def __init__(self, message: str, code: int, payload: dict[str, Any] | None = None):
        super().__init__(message)
        self.code = code
        self.payload = payload or {}


@dataclass(frozen=True)
class RunConfig:
    command: str
    inp: str | None = None
    out: str | None = None
    family: str = "K4+Theta5"
    n_values: tuple[int, ...] = ()
    k: int | None = None
    workers: int = 1
    fmt: str = "text"
    outer_face: int | None = None
    long_run: bool = False

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise CliError("--workers must be at least 1", EXIT_USAGE)


def parse_n(text: str) -> tuple[int, ...]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            a, b = int(lo), int(hi)
            if a > b:
                raise ValueError
            return tuple(range(a, b + 1))
        if "," in text:
            return tuple(int(x) for x in text.split(","))
        return (int(text),)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n or n-range {text!r}; use 5, 3..7 or 3,5,8") from None


def _read_input(path: str | None) -> str:
    if path is None:
        raise CliError("--in is required", EXIT_USAGE)
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="ascii") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_USAGE) from None


def load_plane_graph(path: str | None, outer_face: int | None = None) -> PlaneGraph:
    """Embedding file as is, or a graph6 line embedded by the planarity test."""
    text = _read_input(path)
    if looks_like_embedding(text):
        try:
            pg = read_embedding(text)
        except (EmbeddingError, GraphFormatError) as exc:
            raise CliError(f"bad embedding file: {exc}", EXIT_USAGE) from None
    else:
        line = next((ln for ln in text.splitlines() if ln.strip()), "")
        try:
            g = parse_graph6(line.strip())
        except GraphFormatError as exc:
            raise CliError(f"bad graph6 input: {exc}", EXIT_USAGE) from None
        try:
            res = test_planarity(g)
        except DisconnectedGraphError as exc:
            raise CliError(str(exc), EXIT_USAGE) from None
        if isinstance(res, KuratowskiWitness):
            raise CliError(
                "graph is not planar",
                EXIT_NONPLANAR,
                {"kuratowski": {"kind": res.kind, "branch": list(res.branch), "paths": [list(p) for p in res.paths]}},
            )
        pg = res
    if outer_face is not None:
        try:
            pg = pg.with_outer(outer_face)
        except EmbeddingError as exc:
            raise CliError(str(exc), EXIT_USAGE) from None
    return pg


def _emit(cfg: RunConfig, payload: dict[str, Any], text: str) -> None:
    if cfg.fmt == "json":
        payload = {"schema_version": SCHEMA_VERSION, **payload}
        out = json.dumps(payload, indent=2)
    else:
        out = text
    if cfg.out and cfg.command not in ("construct", "search"):
        with open(cfg.out, "w", encoding="ascii") as fh:
            fh.write(out + "\n")
    else:
        print(out)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_decompose(cfg: RunConfig) -> int:
    pg = load_plane_graph(cfg.inp, cfg.outer_face)
    dec = decompose(pg)
    _emit(cfg, dec.report(), dec.to_text())
    return EXIT_OK


def cmd_faces(cfg: RunConfig) -> int:
    pg = load_plane_graph(cfg.inp, cfg.outer_face)
    faces = [{"index": i, "length": len(w), "vertices": pg.face_vertices(i)} for i, w in enumerate(pg.faces)]
    lines = [f"n={pg.graph.n} e={pg.graph.num_edges} f={pg.num_faces} outer={pg.outer}"]
    for f in faces:
        mark = " (outer)" if f["index"] == pg.outer else ""
        lines.append(f"{f['index']:>4} len={f['length']:<3} {' '.join(map(str, f['vertices']))}{mark}")
    payload = {"n": pg.graph.n, "e": pg.graph.num_edges, "outer_face": pg.outer, "faces": faces, "euler": pg.euler_ok()}
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK


def cmd_discharge(cfg: RunConfig) -> int:
    pg = load_plane_graph(cfg.inp, cfg.outer_face)
    res = lemma32_check(pg)
    chain = bound_chain(pg.graph, planar=True)
    payload = res.report()
    payload["bound_chain"] = chain.report()
    led = res.ledger
    lines = [f"{res.verdict}  c(G) = {led.c_total.numerator}/{led.c_total.denominator}  f(G) = {led.f_total}  e(G) = {led.e_total}"]
    for r in led.rows:
        lines.append(f"  {r.block.tag:12s} e={r.block.num_edges} f={r.f} c={r.c}  {list(r.block.vertices)}")
    for v in res.violations:
        lines.append(f"  precondition: {v}")
    if res.verdict == PRECONDITION and res.low_degree_vertex is not None:
        steps = " ".join(f"{v}:{d}" for v, d in chain.trace.steps)
        lines.append(f"  reduction trace (vertex:degree): {steps}")
        lines.append(f"  core: n'={chain.trace.n_prime} e'={chain.trace.e_prime}")
    lines.append(f"  25n-11e = {chain.exact}  lower bound {chain.lower_bound}  verdict {chain.verdict or 'n/a (n < 25)'}")
    _emit(cfg, payload, "\n".join(lines))
    if res.verdict == PASS:
        return EXIT_OK
    if res.verdict == FAIL:
        return EXIT_CERTIFICATE
    return EXIT_PRECONDITION


def cmd_search(cfg: RunConfig) -> int:
    if cfg.family not in PRESETS:
        raise CliError(f"unknown family {cfg.family!r}; choose from {', '.join(PRESETS)}", EXIT_USAGE)
    if not cfg.n_values:
        raise CliError("--n is required", EXIT_USAGE)
    if min(cfg.n_values) < 3:
        raise CliError("n must be at least 3", EXIT_USAGE)
    try:
        rows = bound_table(cfg.n_values, cfg.family, workers=cfg.workers, long_run=cfg.long_run)
    except BoundExceeded as exc:
        raise CliError(str(exc), EXIT_BOUND) from None
    if cfg.fmt == "json":
        print(table_json(rows, cfg.family))
    else:
        print(table_text(rows))
    if cfg.out:
        with open(cfg.out, "w", encoding="ascii") as fh:
            for r in rows:
                for w in r.witnesses:
                    fh.write(write_graph6(w) + "\n")
    return EXIT_OK


def cmd_construct(cfg: RunConfig) -> int:
    if cfg.k is None:
        raise CliError("--k is required", EXIT_USAGE)
    if not 0 <= cfg.k <= MAX_K:
        raise CliError(f"--k must lie in 0..{MAX_K}", EXIT_BOUND)
    pg = build_witness(cfg.k)
    text = dump_witness(pg)
    if cfg.out:
        with open(cfg.out, "w", encoding="ascii") as fh:
            fh.write(text)
        rep = verify_witness(pg, WitnessSpec(cfg.k))
        _emit(RunConfig("verify", fmt=cfg.fmt), rep.report(), rep.to_text())
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.k is None:
        raise CliError("--spec is required", EXIT_USAGE)
    if cfg.k < 0:
        raise CliError("--spec must be non-negative", EXIT_USAGE)
    pg = load_plane_graph(cfg.inp, cfg.outer_face)
    rep = verify_witness(pg, WitnessSpec(cfg.k))
    _emit(cfg, rep.report(), rep.to_text())
    return EXIT_OK if rep.passed else EXIT_FAIL


COMMANDS = {
    "decompose": cmd_decompose,
    "discharge": cmd_discharge,
    "search": cmd_search,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "faces": cmd_faces,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ptl", description="Planar Turan toolkit for {K4, Theta5}.")
    p.add_argument("--version", action="version", version=f"ptl {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser, with_input: bool = True) -> None:
        if with_input:
            sp.add_argument("--in", dest="inp", metavar="FILE", help="graph6 line or embedding file ('-' for stdin)")
            sp.add_argument("--outer-face", type=int, default=None, help="face index to treat as unbounded")
        sp.add_argument("--out", metavar="FILE")
        sp.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")

    for name, helptext in (
        ("decompose", "triangular-block decomposition"),
        ("discharge", "certificate ledger and bound chain"),
        ("faces", "face walks of the embedding"),
    ):
        common(sub.add_parser(name, help=helptext))

    sp = sub.add_parser("search", help="exhaustive extremal table")
    common(sp, with_input=False)
    sp.add_argument("--family", default="K4+Theta5", help=f"one of {', '.join(PRESETS)}")
    sp.add_argument("--n", dest="n_values", type=parse_n, required=True, help="n, a..b, or a,b,c")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--long-run", action="store_true", help=f"allow n up to 11 (default cap {max_n_bound()})")

    sp = sub.add_parser("construct", help="build a tight witness")
    common(sp, with_input=False)
    sp.add_argument("--k", type=int, required=True)

    sp = sub.add_parser("verify", help="check a witness file against n = 88k+24")
    common(sp)
    sp.add_argument("--spec", "--k", dest="k", type=int, required=True)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = RunConfig(
            command=ns.command,
            inp=getattr(ns, "inp", None),
            out=ns.out,
            family=getattr(ns, "family", "K4+Theta5"),
            n_values=getattr(ns, "n_values", ()) or (),
            k=getattr(ns, "k", None),
            workers=getattr(ns, "workers", 1),
            fmt=ns.fmt,
            outer_face=getattr(ns, "outer_face", None),
            long_run=getattr(ns, "long_run", False),
        )
        return COMMANDS[ns.command](cfg)
    except CliError as exc:
        payload = {"schema_version": SCHEMA_VERSION, "error": str(exc), "exit_code": exc.code, **exc.payload}
        if getattr(ns, "fmt", "text") == "json":
            print(json.dumps(payload, indent=2))
        else:
            print(f"error: {exc}", file=sys.stderr)
            for key, val in exc.payload.items():
                print(f"{key}: {json.dumps(val)}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
