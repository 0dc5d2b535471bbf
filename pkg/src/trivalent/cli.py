"""Command-line entry point.

Heavy modules are imported lazily so that ``--threads`` can set the BLAS
thread variables before numpy loads.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
THREAD_VARS = ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS")

DEFAULTS = {
    "k": 2,
    "k_max": 5,
    "dense_cap": 2048,
    "tol": 1e-5,
    "out": None,
    "cache": None,
    "threads": 1,
    "seed": 0,
    "format": None,
    "enum_cap": 1 << 16,
}

log = logging.getLogger("trivalent")


class UsageError(ValueError):
    pass


# configuration -----------------------------------------------------------

def load_config(path: str | None) -> dict:
    if not path:
        return {}
    if sys.version_info >= (3, 11):
        import tomllib
    else:
        import tomli as tomllib
    with open(path, "rb") as fh:
        doc = tomllib.load(fh)
    doc = {k.replace("-", "_"): v for k, v in doc.get("trivalent", doc).items()}
    unknown = set(doc) - set(DEFAULTS)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return doc


def resolve(args: argparse.Namespace) -> dict:
    """Flags > config file > environment (cache only) > defaults."""
    cfg = dict(DEFAULTS)
    if os.environ.get("TRIVALENT_CACHE"):
        cfg["cache"] = os.environ["TRIVALENT_CACHE"]
    cfg.update(load_config(args.config))
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if cfg["dense_cap"] <= 0 or cfg["enum_cap"] <= 0 or cfg["threads"] <= 0:
        raise UsageError("caps and thread count must be positive")
    if not 1 <= cfg["k"] <= 8 or not 1 <= cfg["k_max"] <= 8:
        raise UsageError("k must lie in 1..8")
    return cfg


def _set_threads(n: int) -> None:
    for var in THREAD_VARS:
        os.environ[var] = str(n)


# output ------------------------------------------------------------------

def _emit(cfg: dict, name: str, text: str, sidecar: str | None = None) -> None:
    if cfg["out"] is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    (out / name).write_text(text)
    if sidecar is not None:
        (out / (name + ".meta")).write_text(sidecar)
    log.info("wrote %s", out / name)


def _header(kind: str, **inputs) -> dict:
    from .cache import input_hash

    return {"tool": "trivalent", "version": __version__, "input_hash": input_hash(kind, **inputs)}


def _with_header(doc: dict, hdr: dict) -> str:
    return json.dumps({**hdr, **doc}, indent=1, sort_keys=True, default=_jsonable) + "\n"


def _jsonable(o):
    import numpy as np

    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    return str(o)


def _graph_text(g, fmt: str, hdr: dict) -> tuple[str, str | None]:
    from .graphs import core

    if fmt == "edgelist":
        return core.to_edgelist(g, hdr), None
    if fmt == "dot":
        return core.to_dot(g, hdr), None
    if fmt == "graph6":
        # graph6 has no comment syntax; the header goes to a sidecar file
        return core.to_graph6(g) + "\n", json.dumps(hdr, sort_keys=True) + "\n"
    if fmt == "json":
        return _with_header({"name": g.name, "n": g.nverts, "edges": g.edges().tolist()}, hdr), None
    raise UsageError(f"format {fmt} does not apply to graphs")


def _fmt(cfg: dict, allowed: tuple[str, ...]) -> str:
    fmt = cfg["format"] or allowed[0]
    if fmt not in allowed:
        raise UsageError(f"--format must be one of {', '.join(allowed)}")
    return fmt


# commands ----------------------------------------------------------------

def cmd_group(cfg: dict, args) -> int:
    from . import pipeline
    from .group import pcp as P

    k = cfg["k"]
    _fmt(cfg, ("json",))
    pcp = pipeline.group(k)
    gens = P.labelled_generators(pcp)
    doc = {
        "k": k,
        "order_exponent": pcp.ngens,
        "layer_sizes": pcp.layer_sizes(),
        "generator_orders": {name: P.element_order(pcp, g) for name, g in zip(P.GENERATOR_LABELS, gens)},
        "pcp": json.loads(pcp.to_json()),
    }
    _emit(cfg, f"G_{k}.json", _with_header(doc, _header("group", k=k)))
    return EXIT_OK


def cmd_graph(cfg: dict, args) -> int:
    from . import pipeline

    k = cfg["k"]
    fmt = _fmt(cfg, ("edgelist", "dot", "graph6", "json"))
    g = {"X": pipeline.cayley_graph, "T": pipeline.tk, "dual": pipeline.tk_dual}[args.which](k)
    text, side = _graph_text(g, fmt, _header("graph", k=k, which=args.which))
    stem = {"X": "X", "T": "T", "dual": "Tdual"}[args.which]
    _emit(cfg, f"{stem}_{k}.{fmt}", text, side)
    return EXIT_OK


def cmd_spectrum(cfg: dict, args) -> int:
    from . import pipeline
    from .spectral import spectrum_report

    fmt = _fmt(cfg, ("json", "csv"))
    ks = range(cfg["k"], cfg["k"] + 1) if args.k is not None or args.k_max is None else range(1, cfg["k_max"] + 1)
    which = ("X", "T") if args.which == "both" else (args.which,)
    reports = []
    for k in ks:
        for w in which:
            g = pipeline.cayley_graph(k) if w == "X" else pipeline.tk(k)
            r = spectrum_report(g, dense_cap=cfg["dense_cap"], seed=cfg["seed"])
            reports.append({"k": k, "which": w, **{f: getattr(r, f) for f in
                            ("n", "d", "lambda1", "lambda_min", "sigma", "ramanujan", "method", "residual")}})
    hdr = _header("spectrum", ks=list(ks), which=list(which), dense_cap=cfg["dense_cap"], seed=cfg["seed"])
    if fmt == "json":
        text = _with_header({"reports": reports}, hdr)
    else:
        cols = list(reports[0])
        lines = [f"# version: {hdr['version']}", f"# input_hash: {hdr['input_hash']}", ",".join(cols)]
        lines += [",".join(_csv_cell(r[c]) for c in cols) for r in reports]
        text = "\n".join(lines) + "\n"
    _emit(cfg, f"spectrum.{fmt}", text)
    return EXIT_OK


def _csv_cell(v) -> str:
    return repr(float(v)) if isinstance(v, float) else str(v)


def cmd_faces(cfg: dict, args) -> int:
    from .surface.report import reports_csv, surface_report

    fmt = _fmt(cfg, ("json", "csv"))
    if fmt == "json":
        k = cfg["k"]
        text = _with_header(json.loads(surface_report(k).to_json()), _header("faces", k=k))
        _emit(cfg, f"surface_{k}.json", text)
    else:
        ks = list(range(1, cfg["k_max"] + 1))
        hdr = _header("faces", ks=ks)
        body = reports_csv([surface_report(k) for k in ks])
        _emit(cfg, "surfaces.csv", f"# version: {hdr['version']}\n# input_hash: {hdr['input_hash']}\n{body}")
    return EXIT_OK


def cmd_platonic(cfg: dict, args) -> int:
    from .platonic import build_platonic, duality_verdict

    if args.duality is not None:
        _fmt(cfg, ("json",))
        v = duality_verdict(args.duality)
        _emit(cfg, f"duality_{args.duality}.json", _with_header(v, _header("duality", k=args.duality)))
        return EXIT_OK
    if args.n is None or args.n < 2:
        raise UsageError("platonic needs --n N with N >= 2, or --duality K")
    fmt = _fmt(cfg, ("graph6", "edgelist", "dot", "json"))
    text, side = _graph_text(build_platonic(args.n), fmt, _header("platonic", N=args.n))
    _emit(cfg, f"Pi_{args.n}.{fmt}", text, side)
    return EXIT_OK


def cmd_render(cfg: dict, args) -> int:
    from . import pipeline
    from .surface.render import render_disk

    k = cfg["k"]
    _fmt(cfg, ("svg",))
    svg = render_disk(pipeline.oriented(k), pipeline.faces(k), radius=args.radius, title=f"S_{k}")
    hdr = _header("render", k=k, radius=args.radius)
    comment = f"<!-- trivalent {hdr['version']} input_hash {hdr['input_hash']} -->"
    head, sep, rest = svg.partition("?>\n")
    svg = head + sep + comment + "\n" + rest if sep else comment + "\n" + svg
    _emit(cfg, f"S_{k}_r{args.radius}.svg", svg)
    return EXIT_OK


def cmd_verify_all(cfg: dict, args) -> int:
    from .verify import verify_all

    k_max = 6 if args.with_k6 else min(cfg["k_max"], 5)
    ledger = verify_all(k_max=k_max, seed=cfg["seed"], dense_cap=cfg["dense_cap"], tol=cfg["tol"])
    print(ledger.table())
    hdr = _header("verify", k_max=k_max, seed=cfg["seed"], dense_cap=cfg["dense_cap"], tol=cfg["tol"])
    doc = json.loads(ledger.to_json(runtimes=not args.no_runtimes))
    text = _with_header(doc, hdr)
    if cfg["out"] is not None:
        _emit(cfg, "ledger.json", text)
    return EXIT_OK if ledger.passed else EXIT_FAIL


COMMANDS = {
    "group": cmd_group,
    "graph": cmd_graph,
    "spectrum": cmd_spectrum,
    "faces": cmd_faces,
    "platonic": cmd_platonic,
    "render": cmd_render,
    "verify-all": cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, help="level k of the tower")
    common.add_argument("--k-max", type=int, help="largest level for multi-k commands")
    common.add_argument("--dense-cap", type=int, help="largest graph sent to the dense eigensolver")
    common.add_argument("--tol", type=float, help="eigenvalue tolerance for table checks")
    common.add_argument("--out", help="output directory (default: stdout)")
    common.add_argument("--cache", help="cache directory (overrides $TRIVALENT_CACHE)")
    common.add_argument("--threads", type=int, help="BLAS thread count")
    common.add_argument("--seed", type=int, help="seed for iterative solvers and random checks")
    common.add_argument("--format", choices=("json", "csv", "dot", "graph6", "edgelist", "svg"))
    common.add_argument("--config", help="TOML config file")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="trivalent", description="Trivalent expanders from 2-group towers.")
    p.add_argument("--version", action="version", version=f"trivalent {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("group", parents=[common], help="pc-presentation of G_k")
    g = sub.add_parser("graph", parents=[common], help="export X_k, T_k or the dual of T_k")
    g.add_argument("--which", choices=("X", "T", "dual"), default="T")
    s = sub.add_parser("spectrum", parents=[common], help="extreme eigenvalues and Ramanujan verdicts")
    s.add_argument("--which", choices=("X", "T", "both"), default="both")
    sub.add_parser("faces", parents=[common], help="surface report (json for one k, csv for 1..k-max)")
    pl = sub.add_parser("platonic", parents=[common], help="Platonic graph Pi_N or a duality verdict")
    pl.add_argument("--n", type=int)
    pl.add_argument("--duality", type=int, metavar="K")
    r = sub.add_parser("render", parents=[common], help="SVG of the tessellation in the Poincare disk")
    r.add_argument("--radius", type=int, default=1)
    v = sub.add_parser("verify-all", parents=[common], help="run every acceptance check")
    v.add_argument("--with-k6", action="store_true", help="extend the surface and group checks to k = 6")
    v.add_argument("--no-runtimes", action="store_true", help="omit runtimes from the JSON ledger")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = resolve(args)
    except (UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _set_threads(cfg["threads"])

    from . import pipeline
    from .graphs.isomorphism import SearchLimitExceeded
    from .group.pcp import EnumerationCapExceeded
    from .group.pquotient import ClassLimitExceeded
    from .spectral import NotConverged, SizeCapExceeded
    from .surface.render import RenderError

    cache = None
    if cfg["cache"]:
        from .cache import Cache

        cache = Cache(cfg["cache"])
    pipeline.configure(cache=cache, enum_cap=cfg["enum_cap"])
    try:
        return COMMANDS[args.command](cfg, args)
    except (UsageError, RenderError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EnumerationCapExceeded, SizeCapExceeded, SearchLimitExceeded, ClassLimitExceeded, NotConverged) as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
