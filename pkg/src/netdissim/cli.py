"""Command-line interface.

Commands: ndi, nsi, centrality, batch, fit. Exit codes: 0 on success, 1 for
input problems (unreadable files, parse errors, disconnected graphs without
--lcc, bad flags), 2 when an iterative solver fails to converge. Output is
deterministic for a given input and flag set.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analysis import (
    BatchFailure,
    batch_evaluate,
    correlation_study,
    read_manifest,
    read_summaries_csv,
    spectral_radius_ratio,
    summaries_to_csv,
)
from .centrality import centrality_table, metric_table_to_csv
from .graph import (
    DisconnectedGraphError,
    Graph,
    connected_components,
    extract_largest_component,
    parse_edge_list,
)
from .linalg import ConvergenceError
from .ndi import (
    AveragingConvention,
    compute_ndi,
    report_to_json,
    report_to_node_csv,
    round_sig,
)
from .nsi import compute_nsi
from .svg import render_fit_scatter_svg, render_sorted_ndi_svg

CONVENTION_FLAGS = {
    "row-mean": AveragingConvention.ROW_MEAN,
    "nondiag-nm1": AveragingConvention.NONDIAG_OVER_N_MINUS_1,
    "entry-mean": AveragingConvention.ENTRY_MEAN,
}


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; this tool reserves 2 for
    # numerical failures, so usage problems are remapped to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="netdissim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_graph_flags=True):
        p.add_argument("--precision", type=int, default=6, metavar="DIGITS",
                       help="significant digits in output (default 6)")
        p.add_argument("-o", "--output", metavar="PATH",
                       help="write the main report here instead of stdout")
        if with_graph_flags:
            p.add_argument("--lcc", action="store_true",
                           help="analyze the largest connected component")

    p_ndi = sub.add_parser("ndi", help="dissimilarity report for one network")
    p_ndi.add_argument("input", help="edge-list file")
    p_ndi.add_argument("--convention", choices=sorted(CONVENTION_FLAGS),
                       default="row-mean", help="distance-matrix averaging")
    p_ndi.add_argument("--retention", type=float, default=1.0, metavar="VAR",
                       help="component retention threshold (default 1.0)")
    p_ndi.add_argument("--format", choices=["json", "csv"], default="json")
    p_ndi.add_argument("--svg", metavar="PATH",
                       help="also write the sorted node curve as SVG")
    add_common(p_ndi)

    p_nsi = sub.add_parser("nsi", help="similarity index for one network")
    p_nsi.add_argument("input", help="edge-list file")
    p_nsi.add_argument("--epsilon", type=float, default=1e-6,
                       help="binary-search tolerance (default 1e-6)")
    p_nsi.add_argument("--format", choices=["json", "csv"], default="json")
    add_common(p_nsi)

    p_cen = sub.add_parser("centrality", help="per-node metric table")
    p_cen.add_argument("input", help="edge-list file")
    p_cen.add_argument("--format", choices=["json", "csv"], default="csv")
    add_common(p_cen)

    p_batch = sub.add_parser("batch", help="evaluate a manifest of networks")
    p_batch.add_argument("manifest", help="CSV with header name,path")
    p_batch.add_argument("--convention", choices=sorted(CONVENTION_FLAGS),
                         default="row-mean")
    p_batch.add_argument("--retention", type=float, default=1.0, metavar="VAR")
    p_batch.add_argument("--epsilon", type=float, default=1e-6)
    p_batch.add_argument("--format", choices=["json", "csv"], default="json",
                         help="json: summaries+failures+fits; csv: summary table")
    p_batch.add_argument("--svg", metavar="PATH",
                         help="write fit scatters next to PATH "
                              "(suffixes _ndi_vs_lambda_sp / _ndi_vs_nsi)")
    add_common(p_batch)

    p_fit = sub.add_parser("fit", help="correlation study over a summary CSV")
    p_fit.add_argument("--fit-from-csv", required=True, metavar="PATH",
                       help="summary CSV with columns name,nodes,edges,lambda_sp,ndi,nsi")
    p_fit.add_argument("--svg", metavar="PATH",
                       help="write fit scatters next to PATH")
    add_common(p_fit, with_graph_flags=False)

    return parser


def _load_graph(path: str, use_lcc: bool) -> Graph:
    text = Path(path).read_text()
    g = parse_edge_list(text)
    if use_lcc:
        return extract_largest_component(g)
    labeling = connected_components(g)
    if labeling.num_components != 1:
        raise DisconnectedGraphError(
            f"graph has {labeling.num_components} components; "
            "pass --lcc to analyze the largest one",
            num_components=labeling.num_components,
        )
    return g


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _fit_payload(summaries, failures, study, precision: int) -> dict:
    doc: dict = {
        "summaries": [
            {
                "name": s.name,
                "nodes": s.n,
                "edges": s.edges,
                "lambda_sp": round_sig(s.lambda_sp, precision),
                "ndi": round_sig(s.ndi, precision),
                "nsi": round_sig(s.nsi, precision),
            }
            for s in summaries
        ],
        "failures": [
            {"name": f.name, "path": f.path, "error": f.error} for f in failures
        ],
    }
    if study is not None:
        doc["fits"] = {
            predictor: {
                "response": "ndi",
                "slope": round_sig(fit.slope, precision),
                "intercept": round_sig(fit.intercept, precision),
                "r_squared": round_sig(fit.r_squared, precision),
            }
            for predictor, fit in study.fits.items()
        }
        doc["skipped_fits"] = [
            {"predictor": predictor, "reason": reason}
            for predictor, reason in study.skipped
        ]
    return doc


def _write_fit_scatters(summaries, study, svg_path: str) -> None:
    base = Path(svg_path)
    stem = base.with_suffix("")
    ys = [s.ndi for s in summaries]
    for predictor, suffix, x_label in (
        ("lambda_sp", "_ndi_vs_lambda_sp.svg", "spectral radius ratio"),
        ("nsi", "_ndi_vs_nsi.svg", "node similarity index"),
    ):
        xs = [getattr(s, predictor) for s in summaries]
        render_fit_scatter_svg(
            xs,
            ys,
            fit=study.fits.get(predictor) if study else None,
            x_label=x_label,
            y_label="network dissimilarity index",
            title=f"dissimilarity vs {x_label}",
            path=str(stem) + suffix,
        )


def _run(args: argparse.Namespace) -> int:
    precision = args.precision
    if precision < 1:
        raise ValueError("--precision must be at least 1")

    if args.command == "ndi":
        g = _load_graph(args.input, args.lcc)
        report = compute_ndi(
            g,
            convention=CONVENTION_FLAGS[args.convention],
            retention_threshold=args.retention,
        )
        if args.format == "json":
            _emit(report_to_json(report, precision=precision), args.output)
        else:
            _emit(report_to_node_csv(report, precision=precision), args.output)
        if args.svg:
            render_sorted_ndi_svg(report, args.svg)
        return 0

    if args.command == "nsi":
        g = _load_graph(args.input, args.lcc)
        result = compute_nsi(g, epsilon=args.epsilon)
        if args.format == "json":
            doc = {
                "network": {"n": g.n, "edges": g.m_edges},
                "nsi": {
                    "value": round_sig(result.nsi, precision),
                    "min_threshold": round_sig(result.min_threshold, precision),
                    "method": result.method,
                    "normalization": result.normalization,
                    "k": result.k,
                },
            }
            _emit(json.dumps(doc, indent=2) + "\n", args.output)
        else:
            _emit(
                "n,edges,nsi,min_threshold,method,normalization,k\n"
                f"{g.n},{g.m_edges},{result.nsi:.{precision}g},"
                f"{result.min_threshold:.{precision}g},{result.method},"
                f"{result.normalization},{result.k}\n",
                args.output,
            )
        return 0

    if args.command == "centrality":
        g = _load_graph(args.input, args.lcc)
        table = centrality_table(g)
        if args.format == "csv":
            _emit(metric_table_to_csv(table, precision=precision), args.output)
        else:
            doc = {
                "network": {"n": g.n, "edges": g.m_edges},
                "columns": [c.lower() for c in table.column_names],
                "nodes": [
                    {
                        "label": label,
                        **{
                            c.lower(): round_sig(float(table.values[i, j]), precision)
                            for j, c in enumerate(table.column_names)
                        },
                    }
                    for i, label in enumerate(table.node_labels)
                ],
            }
            _emit(json.dumps(doc, indent=2) + "\n", args.output)
        return 0

    if args.command == "batch":
        manifest = read_manifest(args.manifest)
        results = batch_evaluate(
            manifest,
            use_lcc=args.lcc,
            convention=CONVENTION_FLAGS[args.convention],
            retention_threshold=args.retention,
            epsilon=args.epsilon,
        )
        summaries = [r for r in results if not isinstance(r, BatchFailure)]
        failures = [r for r in results if isinstance(r, BatchFailure)]
        study = correlation_study(summaries) if len(summaries) >= 3 else None
        if args.format == "csv":
            _emit(summaries_to_csv(results, precision=precision), args.output)
            for f in failures:
                print(f"failed: {f.name} ({f.path}): {f.error}", file=sys.stderr)
        else:
            doc = _fit_payload(summaries, failures, study, precision)
            _emit(json.dumps(doc, indent=2) + "\n", args.output)
        if args.svg and summaries:
            _write_fit_scatters(summaries, study, args.svg)
        return 0

    if args.command == "fit":
        summaries = read_summaries_csv(args.fit_from_csv)
        study = correlation_study(summaries)
        doc = _fit_payload(summaries, [], study, precision)
        _emit(json.dumps(doc, indent=2) + "\n", args.output)
        if args.svg:
            _write_fit_scatters(summaries, study, args.svg)
        return 0

    raise ValueError(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help exits 0, usage errors exit 1
        return int(exc.code or 0)
    try:
        return _run(args)
    except ConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
