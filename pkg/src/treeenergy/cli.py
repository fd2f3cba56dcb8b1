"""Command-line front end: ``treeenergy <command> [options]``.

Exit codes: 0 success, 1 parameter or input error, 2 size cap exceeded,
3 invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Optional, Sequence

from . import __version__
from .alpha import alpha_table
from .cache import CACHE_ENV, EnergyCache, default_cache_dir
from .errors import CapExceededError, InvariantViolation, ParameterError, TreeParseError
from .experiments import EnergyEngine, conjecture1, hypo_census, minimal
from .enumeration import EnumSpec, enumerate_trees
from .spectral import (
    DEFAULT_DENSE_CAP,
    EIG_TOL,
    ENGINE_VERSION,
    ROOT_TOL,
    Method,
    spectrum_csv,
    spectrum_dense,
    spectrum_from_polynomial,
    matching_polynomial,
)
from .treeio import dump_trees, parse_graph6, read_tree, serialize_tree, to_graph6
from .trees import Tree, bn_tree, build_tstar, canonical_code, complete_dary, digital_expansion, path_tree, star_tree

log = logging.getLogger("treeenergy")

EXIT_OK, EXIT_PARAM, EXIT_CAP, EXIT_INVARIANT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2, our cap code
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARAM, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    """Result-affecting settings, embedded in every output.

    Cache location and worker count are deliberately excluded: they never
    change the numbers, and including them would break byte-identity
    between cached and uncached runs.
    """

    command: str
    params: dict = field(default_factory=dict)
    format: str = "csv"
    dense_cap: int = DEFAULT_DENSE_CAP
    eps: float = 1e-10
    eig_tol: float = EIG_TOL
    root_tol: float = ROOT_TOL

    def validate(self) -> None:
        if self.format not in ("csv", "json"):
            raise ParameterError(f"unknown format {self.format!r}")
        if self.dense_cap < 1:
            raise ParameterError("--dense-cap must be positive")
        if not self.eig_tol > 0 or not self.root_tol > 0:
            raise ParameterError("tolerances must be positive")


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------


def parse_range(text: str) -> list[int]:
    """``"2..14"`` -> [2, ..., 14]; ``"7"`` -> [7]; ``"2,5,9"`` -> [2, 5, 9]."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            a, b = int(lo), int(hi)
            if a > b:
                raise ParameterError(f"empty range {text!r}")
            return list(range(a, b + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ParameterError(f"cannot parse integer range {text!r}") from None


def _ints(text: str, count: int, what: str) -> list[int]:
    parts = text.split(",")
    if len(parts) != count:
        raise ParameterError(f"{what} needs {count} comma-separated integers, got {text!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParameterError(f"{what}: non-integer in {text!r}") from None


def resolve_tree(spec: str) -> Tree:
    """Constructor spec (``cstar:d,h``, ``bn:n``, ``tstar:n,d``, ``path:n``,
    ``star:n``) or a file path (edge list, or graph6 for ``.g6``)."""
    kind, _, arg = spec.partition(":")
    if arg and kind in ("cstar", "bn", "tstar", "path", "star"):
        if kind == "cstar":
            d, h = _ints(arg, 2, "cstar")
            tree = complete_dary(d, h).tree
        elif kind == "bn":
            (level,) = _ints(arg, 1, "bn")
            tree = bn_tree(level)
        elif kind == "tstar":
            n, d = _ints(arg, 2, "tstar")
            tree = build_tstar(n, d)
        elif kind == "path":
            (n,) = _ints(arg, 1, "path")
            tree = path_tree(n)
        else:
            (n,) = _ints(arg, 1, "star")
            tree = star_tree(n)
        return tree
    path = Path(spec)
    if not path.exists():
        raise ParameterError(f"{spec!r} is neither a constructor spec nor an existing file")
    if path.suffix == ".g6":
        with open(path, "rb") as fh:
            first = next((line for line in fh if line.strip()), None)
        if first is None:
            raise TreeParseError(f"{spec}: no graph6 record")
        return parse_graph6(first)
    return read_tree(path)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _fmt(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.17g}"
    if isinstance(v, (list, tuple)):
        return ";".join(_fmt(x) for x in v)
    return str(v)


def _jsonable(v: Any) -> Any:
    if isinstance(v, float):
        return v if math.isfinite(v) else None
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, Method):
        return v.value
    return v


def render(config: RunConfig, columns: Sequence[str], rows: list[dict], summary: Optional[dict] = None) -> str:
    cfg = _jsonable(asdict(config))
    if config.format == "json":
        doc = {"config": cfg, "engine_version": ENGINE_VERSION,
               "rows": [_jsonable({c: r[c] for c in columns}) for r in rows]}
        if summary is not None:
            doc["summary"] = _jsonable(summary)
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    buf.write(f"# engine_version: {ENGINE_VERSION}\n")
    buf.write(f"# config: {json.dumps(cfg, sort_keys=True)}\n")
    if summary is not None:
        buf.write(f"# summary: {json.dumps(_jsonable(summary), sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in columns])
    return buf.getvalue()


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _engine(args: argparse.Namespace, method: Method = Method.DENSE) -> EnergyEngine:
    cache = None
    if not args.no_cache:
        cache = EnergyCache(args.cache_dir or default_cache_dir())
    return EnergyEngine(method, dense_cap=args.dense_cap, eig_tol=args.eig_tol,
                        root_tol=args.root_tol, cache=cache, workers=args.workers)


def _config(args: argparse.Namespace, **params: Any) -> RunConfig:
    cfg = RunConfig(args.command, params, args.format, args.dense_cap, args.eps, args.eig_tol, args.root_tol)
    cfg.validate()
    return cfg


def _report_cache(engine: EnergyEngine) -> None:
    if engine.cache is not None:
        log.info("cache %s: %s", engine.cache.directory, engine.cache.stats())


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_alpha(args: argparse.Namespace) -> int:
    ds = parse_range(args.d)
    cfg = _config(args, d=ds)
    if ds != list(range(ds[0], ds[-1] + 1)):
        raise ParameterError("--d must be a contiguous range")
    table = alpha_table(ds[0], ds[-1], args.eps)
    rows = [{"d": e.d, "alpha": e.value, "j_max": e.j_max, "tail_bound": e.tail_bound} for e in table]
    _emit(args, render(cfg, ["d", "alpha", "j_max", "tail_bound"], rows))
    return EXIT_OK


def cmd_energy(args: argparse.Namespace) -> int:
    method = Method(args.method)
    cfg = _config(args, tree=args.tree, method=method.value)
    tree = resolve_tree(args.tree)
    engine = _engine(args, method)
    res = engine.energy(tree)
    if args.spectrum_out:
        if method is Method.DENSE:
            spec = spectrum_dense(tree, args.dense_cap)
        else:
            spec = spectrum_from_polynomial(matching_polynomial(tree), args.root_tol)
        Path(args.spectrum_out).write_text(spectrum_csv(spec), encoding="utf-8")
    rows = [{"tree": args.tree, "n": tree.n, "energy": res.value, "method": res.method.value,
             "error_bound": res.error_bound}]
    _emit(args, render(cfg, ["tree", "n", "energy", "method", "error_bound"], rows))
    _report_cache(engine)
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    tree = resolve_tree(args.tree)
    if args.as_ == "graph6":
        text = to_graph6(tree) + "\n"
    elif args.as_ == "code":
        text = canonical_code(tree) + "\n"
    elif args.as_ == "expansion":
        if not args.tree.startswith("tstar:"):
            raise ParameterError("--as expansion needs a tstar:n,d constructor")
        n, d = _ints(args.tree.split(":", 1)[1], 2, "tstar")
        e = digital_expansion(n, d)
        cfg = _config(args, tree=args.tree)
        row = {"n": n, "d": d, "l": e.l, "a": e.a, "r": e.r, "terminal": e.terminal.value,
               "q_l": e.q_l, "r_l": e.r_l}
        text = render(cfg, list(row), [row])
    else:
        text = serialize_tree(tree)
    _emit(args, text)
    return EXIT_OK


def cmd_conjecture1(args: argparse.Namespace) -> int:
    cfg = _config(args, max_level=args.max_level)
    if args.max_level < 0:
        raise ParameterError("--max-level must be >= 0")
    engine = _engine(args)
    res = conjecture1(args.max_level, args.eps, engine)
    cols = ["level", "vertex_count", "energy", "ratio", "gap", "error_bound", "envelope"]
    rows = [asdict(r) for r in res.rows]
    summary = {"alpha_2": res.alpha.value, "alpha_tail_bound": res.alpha.tail_bound,
               "monotone": res.monotone, "first_level_above_one": res.first_above_one,
               "bn_iso_tstar_checked_upto": res.iso_checked_upto}
    if not res.monotone:
        log.warning("ratio sequence is NOT strictly increasing")
    _emit(args, render(cfg, cols, rows, summary))
    if args.plot_file:
        with open(args.plot_file, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("# vertex_count ratio\n")
            for r in res.rows:
                fh.write(f"{r.vertex_count} {r.ratio:.17g}\n")
    _report_cache(engine)
    return EXIT_OK


def cmd_minimal(args: argparse.Namespace) -> int:
    ns = parse_range(args.n)
    cfg = _config(args, n=ns, d=args.d)
    engine = _engine(args, Method.CROSS)
    rows = []
    for row in minimal(ns, args.d, args.eps, engine):
        r = row.report
        rows.append({"n": r.n, "d": r.d, "count": r.count, "min_energy": r.min_energy,
                     "min_energy_per_vertex": row.energy_per_vertex, "alpha_d": row.alpha_d,
                     "argmin_unique": r.argmin_unique, "resolution": r.resolution,
                     "tstar_match": r.tstar_match, "runner_up_gap": r.runner_up_gap,
                     "argmin_code": r.argmin_code})
    if args.dump:
        with open(args.dump, "w", encoding="utf-8", newline="\n") as fh:
            for n in ns:
                dump_trees(enumerate_trees(EnumSpec(n, args.d + 1)), fh)
    cols = ["n", "d", "count", "min_energy", "min_energy_per_vertex", "alpha_d", "argmin_unique",
            "resolution", "tstar_match", "runner_up_gap", "argmin_code"]
    _emit(args, render(cfg, cols, rows))
    _report_cache(engine)
    return EXIT_OK


def cmd_hypo_census(args: argparse.Namespace) -> int:
    cfg = _config(args, max_n=args.max_n, max_degree=args.max_degree,
                  tstar_d=args.tstar_d, tstar_max_n=args.tstar_max_n)
    engine = _engine(args)
    res = hypo_census(args.max_n, args.max_degree, engine, args.tstar_d or None, args.tstar_max_n)
    cols = ["n", "max_degree", "total", "hypo", "strong", "hypo_witnesses", "strong_witnesses", "boundary"]
    rows = [asdict(r) for r in res.rows]
    summary = None
    if res.tstar is not None:
        s = res.tstar
        summary = {"tstar_d": s.d, "tstar_max_n": s.max_n, "first_hypo_n": s.first_hypo,
                   "first_strong_n": s.first_strong, "hypo_for_all_n_from": s.hypo_from,
                   "strong_for_all_n_from": s.strong_from, "boundary_n": list(s.boundary),
                   "final_ratio": s.energies[-1] / s.max_n}
        if args.plot_file:
            with open(args.plot_file, "w", encoding="utf-8", newline="\n") as fh:
                fh.write("# n energy_per_vertex\n")
                for n, e in enumerate(s.energies, start=1):
                    fh.write(f"{n} {e / n:.17g}\n")
    _emit(args, render(cfg, cols, rows, summary))
    _report_cache(engine)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--cache-dir", default=None,
                        help=f"energy cache directory (default ${CACHE_ENV} or ~/.cache/treeenergy)")
    common.add_argument("--no-cache", action="store_true", help="disable the energy cache")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--dense-cap", type=int, default=DEFAULT_DENSE_CAP)
    common.add_argument("--eps", type=float, default=1e-10, help="accuracy for alpha_d")
    common.add_argument("--eig-tol", type=float, default=EIG_TOL)
    common.add_argument("--root-tol", type=float, default=ROOT_TOL)
    common.add_argument("-o", "--output", default=None, help="write to a file instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="treeenergy", description="Energy of extremal bounded-degree trees.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({ENGINE_VERSION})")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("alpha", parents=[common], help="table of alpha_d")
    s.add_argument("--d", default="2..8", help="d or d_min..d_max")
    s.set_defaults(func=cmd_alpha)

    s = sub.add_parser("energy", parents=[common], help="energy of one tree")
    s.add_argument("tree", help="cstar:d,h | bn:n | tstar:n,d | path:n | star:n | FILE")
    s.add_argument("--method", choices=[m.value for m in Method], default="dense")
    s.add_argument("--spectrum-out", default=None, help="write eigenvalues as CSV")
    s.set_defaults(func=cmd_energy)

    s = sub.add_parser("construct", parents=[common], help="print a constructed tree")
    s.add_argument("tree")
    s.add_argument("--as", dest="as_", choices=("edgelist", "graph6", "code", "expansion"), default="edgelist")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("conjecture1", parents=[common], help="E(B_n)/|B_n| against alpha_2")
    s.add_argument("--max-level", type=int, default=10)
    s.add_argument("--plot-file", default=None, help="two-column vertex_count/ratio file")
    s.set_defaults(func=cmd_conjecture1)

    s = sub.add_parser("minimal", parents=[common], help="exhaustive minimum-energy trees")
    s.add_argument("--n", required=True, help="n or n_min..n_max")
    s.add_argument("--d", type=int, default=2, help="maximum degree is d + 1")
    s.add_argument("--dump", default=None, help="also write every enumerated tree (edge lists)")
    s.set_defaults(func=cmd_minimal)

    s = sub.add_parser("hypo-census", parents=[common], help="hypoenergetic tree census")
    s.add_argument("--max-n", type=int, default=16)
    s.add_argument("--max-degree", type=int, default=3)
    s.add_argument("--tstar-d", type=int, default=3, help="also scan T*_{n,d}; 0 disables")
    s.add_argument("--tstar-max-n", type=int, default=2000)
    s.add_argument("--plot-file", default=None, help="two-column n/(E/n) file for the T* scan")
    s.set_defaults(func=cmd_hypo_census)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(levelname)s: %(message)s")
    if args.cache_dir is None:
        args.cache_dir = os.environ.get(CACHE_ENV)
    try:
        return args.func(args)
    except (ParameterError, TreeParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvariantViolation as exc:
        print(f"INVARIANT VIOLATION: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
