"""Command line front end.

Subcommands:
    scores     monotone per-edge scores for the origin edge of a family
    folner     boundary-to-bulk ratios of growing balls
    qicheck    distortion and energy-comparison battery for built-in maps
    cor4       hd dimension estimates along a ball sequence
    decompose  finite Hodge split of an edge function given as window JSON
               plus edge CSV

Output is CSV (default) or JSON (--format json, validating against
schemas/output.schema.json). Runs are deterministic: identical flags give
byte-identical output, independent of --jobs.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .dimension import (_ordered_map, corollary4_table, folner_profile,
                        score_report)
from .edgespace import edge_function_from_csv
from .errors import (CutoffExceededError, HodgedimError,
                     IncompatibleDomainError, IncompatibleRhsError,
                     InsufficientWindowError, InvalidFamilyError,
                     InvalidWindowError, MissingEdgeError, SizeLimitError,
                     SolverFailureError)
from .families import encode_vertex, make_family
from .quasi import builtin_maps, suite_row
from .solver import hodge_decompose_finite
from .windows import origin_edge, window_from_json

_CONFIG_ERRORS = (InvalidFamilyError, InvalidWindowError,
                  IncompatibleDomainError, MissingEdgeError, SizeLimitError,
                  InsufficientWindowError, ValueError, OSError)
_NUMERIC_ERRORS = (SolverFailureError, IncompatibleRhsError,
                   CutoffExceededError)


def _parse_radii(text: str):
    out = []
    for token in text.split(","):
        token = token.strip()
        if ".." in token:
            lo, hi = token.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif token:
            out.append(int(token))
    if not out:
        raise ValueError(f"no radii in {text!r}")
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hodgedim",
        description="Dimension traces and Hodge splits on graph families.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, family=True):
        if family:
            p.add_argument("--family", required=True,
                           help="z<d>, tree<d>, ladder, comb, diag_lattice, "
                                "or lattice/tree with --d")
            p.add_argument("--d", type=int, default=None,
                           help="degree parameter for lattice/tree")
        p.add_argument("--tol", type=float, default=1e-10,
                       help="solver tolerance (default 1e-10)")
        p.add_argument("--jobs", type=int, default=1,
                       help="worker threads (output is identical for any value)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default="-",
                       help="output path, '-' for stdout (default)")

    p = sub.add_parser("scores", help="per-edge scores along a radius schedule")
    p.add_argument("--radii", required=True, help="e.g. 2,4,8 or 1..8")
    common(p)

    p = sub.add_parser("folner", help="boundary ratios of balls")
    p.add_argument("--radii", required=True)
    common(p)

    p = sub.add_parser("qicheck", help="quasi-isometry check battery")
    p.add_argument("--window-radii", required=True, dest="window_radii")
    p.add_argument("--map", default=None,
                   help="comma-separated built-in map names (default: all)")
    common(p)

    p = sub.add_parser("cor4", help="hd dimension along growing windows")
    p.add_argument("--window-radii", required=True, dest="window_radii")
    p.add_argument("--factor", type=int, default=4,
                   help="score radius = factor * window radius")
    common(p)

    p = sub.add_parser("decompose", help="finite Hodge split of an edge function")
    p.add_argument("--window", required=True, help="window JSON path")
    p.add_argument("--edges", required=True, help="edge function CSV path")
    common(p, family=False)

    return parser


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(command: str, columns, rows, fmt: str, out_path: str) -> None:
    if fmt == "json":
        text = json.dumps({"command": command,
                           "rows": [dict(zip(columns, r)) for r in rows]},
                          sort_keys=True, separators=(",", ":")) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_cell(v) for v in r])
        text = buf.getvalue()
    if out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _family(ns):
    return make_family(ns.family, ns.d)


def _cmd_scores(ns):
    fam = _family(ns)
    radii = _parse_radii(ns.radii)
    rep = score_report(fam, origin_edge(fam), radii, tol=ns.tol, jobs=ns.jobs)
    tail = encode_vertex(rep.edge.tail)
    head = encode_vertex(rep.edge.head)
    rows = [(rep.family, tail, head, r, rep.star[i], rep.diamond[i],
             rep.hd[i], rep.cg_iterations[i], rep.residuals[i])
            for i, r in enumerate(rep.radii)]
    return ("family", "edge_tail", "edge_head", "R", "star", "diamond", "hd",
            "cg_iters", "residual"), rows


def _cmd_folner(ns):
    fam = _family(ns)
    radii = _parse_radii(ns.radii)
    if any(r < 0 for r in radii):
        raise InvalidWindowError("radii must be >= 0")
    rows = [(fam.name, row.radius, row.n_vertices, row.n_edges,
             row.sigma_size, row.ratio_v, row.ratio_e)
            for row in folner_profile(fam, fam.origin, radii)]
    return ("family", "radius", "V", "E", "sigma", "ratio_v", "ratio_e"), rows


def _cmd_qicheck(ns):
    fam = _family(ns)
    radii = _parse_radii(ns.window_radii)
    available = {m.name: m for m in builtin_maps(fam)}
    if ns.map is None:
        chosen = list(available.values())
    else:
        chosen = []
        for name in ns.map.split(","):
            name = name.strip()
            if name not in available:
                raise ValueError(
                    f"unknown map {name!r} for family {fam.name}; "
                    f"available: {', '.join(sorted(available))}")
            chosen.append(available[name])
    tasks = [(m, r) for m in chosen for r in radii]

    def work(task):
        m, r = task
        q = suite_row(m, r, tol=ns.tol)
        return (q.map_name, q.window_radius, q.k_est, q.density_gap,
                q.wobble, q.lemma5_ratio, q.lemma5_bound, q.lemma6_ratio,
                q.lemma6_bound)

    rows = _ordered_map(work, tasks, ns.jobs)
    return ("map_name", "window_radius", "k_est", "density_gap", "wobble",
            "lemma5_ratio", "lemma5_bound", "lemma6_ratio", "lemma6_bound"), rows


def _cmd_cor4(ns):
    fam = _family(ns)
    radii = _parse_radii(ns.window_radii)
    table = corollary4_table(fam, fam.origin, radii, ns.factor, tol=ns.tol,
                             jobs=ns.jobs)
    rows = [(fam.name, row.window_radius, row.score_radius,
             row.hd_dim_estimate, row.sigma_over_e) for row in table]
    return ("family", "window_radius", "score_radius", "hd_dim_estimate",
            "sigma_over_E"), rows


def _cmd_decompose(ns):
    with open(ns.window, "r", encoding="utf-8") as fh:
        window = window_from_json(fh.read())
    with open(ns.edges, "r", encoding="utf-8") as fh:
        u = edge_function_from_csv(window, fh.read())
    parts = hodge_decompose_finite(window, u, tol=ns.tol)
    rep = parts.report
    verts = window.vertices
    rows = []
    for k in range(window.n_edges):
        a = verts[window.edge_tails[k]]
        b = verts[window.edge_heads[k]]
        rows.append((encode_vertex(a), encode_vertex(b),
                     float(u.values[k]), float(parts.star.values[k]),
                     float(parts.diamond.values[k]), rep.iterations,
                     rep.residual, rep.converged))
    return ("tail", "head", "value", "star", "diamond", "iterations",
            "residual", "converged"), rows


_HANDLERS = {"scores": _cmd_scores, "folner": _cmd_folner,
             "qicheck": _cmd_qicheck, "cor4": _cmd_cor4,
             "decompose": _cmd_decompose}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        if ns.jobs < 1:
            raise ValueError("--jobs must be >= 1")
        if ns.tol <= 0:
            raise ValueError("--tol must be positive")
        columns, rows = _HANDLERS[ns.command](ns)
        _emit(ns.command, columns, rows, ns.format, ns.out)
    except _CONFIG_ERRORS as exc:
        print(f"hodgedim: configuration error: {exc}", file=sys.stderr)
        return 2
    except _NUMERIC_ERRORS as exc:
        print(f"hodgedim: numerical failure: {exc}", file=sys.stderr)
        return 3
    except HodgedimError as exc:
        print(f"hodgedim: error: {exc}", file=sys.stderr)
        return 2
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
