"""Command line interface.

Subcommands: ingest validate, graph metrics, graph export,
community detect, sentiment train, sentiment eval, sentiment label, and
compare. Exit codes: 0 success, 1 internal failure, 2 bad input or
configuration (argparse uses 2 for usage errors as well).
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from . import classify, community, metrics
from .config import RunConfig, load_run_config
from .errors import UndefinedMetricError, ValidationError
from .evaluate import confusion, evaluate, format_percentages, sentiment_percentages
from .graph import EdgePolicy, build_graph, export_edgelist
from .ingest import parse_labeled_corpus, parse_records
from .textprep import load_pipeline_config

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2

NETWORK_ROWS = (
    ("size", "higher"),
    ("edges", "higher"),
    ("density", "higher"),
    ("modularity", "higher"),
    ("diameter", "lower"),
    ("avg_path_length", "lower"),
    ("avg_degree", "higher"),
    ("reachability", "higher"),
    ("connected_components", "lower"),
)
SENTIMENT_ROWS = (("positive_pct", "higher"), ("negative_pct", "lower"))


@dataclass
class Context:
    cfg: RunConfig | None
    seed: int
    fmt: str
    policy: EdgePolicy
    pipeline: object
    train_fraction: float
    alpha: float
    node_limit: int


def _context(args) -> Context:
    cfg = load_run_config(args.config) if getattr(args, "config", None) else None
    base_policy = cfg.edge_policy if cfg else EdgePolicy()
    policy = EdgePolicy(
        use_mentions=base_policy.use_mentions and not getattr(args, "no_mentions", False),
        use_replies=base_policy.use_replies and not getattr(args, "no_replies", False),
    )
    return Context(
        cfg=cfg,
        seed=args.seed if getattr(args, "seed", None) is not None else (cfg.seed if cfg else 0),
        fmt=getattr(args, "fmt", None) or (cfg.output_format if cfg else "table"),
        policy=policy,
        pipeline=cfg.pipeline if cfg else load_pipeline_config(),
        train_fraction=getattr(args, "train_fraction", None) or (cfg.train_fraction if cfg else 0.8),
        alpha=getattr(args, "alpha", None) if getattr(args, "alpha", None) is not None else (cfg.alpha if cfg else 1.0),
        node_limit=cfg.exact_metrics_node_limit if cfg else 50_000,
    )


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _parse_timestamp(raw: str) -> datetime | None:
    try:
        stamp = datetime.fromisoformat(raw.replace("Z", "+00:00"))
    except ValueError:
        return None
    if stamp.tzinfo is None:
        stamp = stamp.replace(tzinfo=timezone.utc)
    return stamp


def _filter_window(records, since: str | None, until: str | None):
    if since is None and until is None:
        return records
    lo = _parse_timestamp(since) if since else None
    hi = _parse_timestamp(until) if until else None
    if since and lo is None:
        raise ValidationError(f"cannot parse --since timestamp {since!r}")
    if until and hi is None:
        raise ValidationError(f"cannot parse --until timestamp {until!r}")
    kept = []
    for rec in records:
        stamp = _parse_timestamp(rec.created_at)
        if stamp is None:
            continue
        if lo is not None and stamp < lo:
            continue
        if hi is not None and stamp > hi:
            continue
        kept.append(rec)
    return kept


def _records_for(args, ctx: Context):
    if getattr(args, "records", None):
        path = args.records
    elif getattr(args, "brand", None):
        if ctx.cfg is None:
            raise ValidationError("--brand requires --config")
        path = ctx.cfg.brand(args.brand).records
    else:
        raise ValidationError("provide a records path or --brand with --config")
    result = parse_records(path, format=getattr(args, "records_format", None))
    records = _filter_window(result.records, getattr(args, "since", None), getattr(args, "until", None))
    if not records:
        raise ValidationError("no records in the selected time window")
    return records, result


def _labeled_for(args, ctx: Context):
    if getattr(args, "labeled", None):
        return parse_labeled_corpus(args.labeled)
    if getattr(args, "brand", None):
        if ctx.cfg is None:
            raise ValidationError("--brand requires --config")
        brand = ctx.cfg.brand(args.brand)
        if brand.labeled is None:
            raise ValidationError(f"brand {brand.name!r} has no labeled data configured")
        return parse_labeled_corpus(brand.labeled)
    raise ValidationError("provide a labeled CSV path or --brand with --config")


def _kv_csv(pairs) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for key, value in pairs:
        writer.writerow([key, "n/a" if value is None else value])
    return buf.getvalue()


# --- command handlers -------------------------------------------------


def _cmd_ingest_validate(args) -> int:
    ctx = _context(args)
    if args.as_labeled:
        docs = parse_labeled_corpus(args.records)
        counts = {"documents": len(docs)}
        for label in ("positive", "negative"):
            counts[label] = sum(1 for d in docs if d.label == label)
        if ctx.fmt == "json":
            _emit(json.dumps(counts) + "\n", args.out)
        elif ctx.fmt == "csv":
            _emit(_kv_csv(counts.items()), args.out)
        else:
            _emit("".join(f"{k}: {v}\n" for k, v in counts.items()), args.out)
        return EXIT_OK
    records, result = _records_for(args, ctx)
    summary = {"records": len(records), "skipped": result.skipped, "skipped_lines": result.skipped_lines[:20]}
    if ctx.fmt == "json":
        _emit(json.dumps(summary) + "\n", args.out)
    elif ctx.fmt == "csv":
        _emit(_kv_csv([("records", len(records)), ("skipped", result.skipped)]), args.out)
    else:
        text = f"records: {len(records)}\nskipped: {result.skipped}\n"
        if result.skipped_lines:
            shown = ", ".join(str(n) for n in result.skipped_lines[:20])
            text += f"skipped lines: {shown}\n"
        _emit(text, args.out)
    return EXIT_OK


def _graph_report(records, ctx: Context, workers=None) -> metrics.MetricsReport:
    g = build_graph(records, ctx.policy)
    partition = community.detect_communities(g, seed=ctx.seed) if g.edge_count else None
    return metrics.compute_all(
        g,
        partition,
        exact_node_limit=ctx.node_limit,
        seed=ctx.seed,
        workers=workers,
    )


def _cmd_graph_metrics(args) -> int:
    ctx = _context(args)
    records, _ = _records_for(args, ctx)
    report = _graph_report(records, ctx, workers=args.workers)
    if ctx.fmt == "json":
        _emit(report.to_json() + "\n", args.out)
    elif ctx.fmt == "csv":
        _emit(_kv_csv(report.to_dict().items()), args.out)
    else:
        _emit(report.to_text(), args.out)
    return EXIT_OK


def _cmd_graph_export(args) -> int:
    ctx = _context(args)
    records, _ = _records_for(args, ctx)
    g = build_graph(records, ctx.policy)
    _emit(export_edgelist(g, format=args.edge_format), args.out)
    return EXIT_OK


def _cmd_community_detect(args) -> int:
    ctx = _context(args)
    records, _ = _records_for(args, ctx)
    g = build_graph(records, ctx.policy)
    partition = community.detect_communities(g, seed=ctx.seed)
    _emit(partition.to_text(g), args.out)
    return EXIT_OK


def _cmd_sentiment_train(args) -> int:
    ctx = _context(args)
    docs = _labeled_for(args, ctx)
    model = classify.train(docs, ctx.pipeline, alpha=ctx.alpha)
    classify.save_model(model, args.model_out)
    summary = {
        "documents": len(docs),
        "vocabulary": len(model.vocabulary),
        "model": str(args.model_out),
    }
    if ctx.fmt == "json":
        _emit(json.dumps(summary) + "\n", args.out)
    else:
        _emit("".join(f"{k}: {v}\n" for k, v in summary.items()), args.out)
    return EXIT_OK


def _tally(model, records, pipeline):
    positive = 0
    for rec in records:
        if classify.predict(model, rec.text, pipeline).label == "positive":
            positive += 1
    negative = len(records) - positive
    pos_pct, _ = sentiment_percentages(positive, negative)
    pos_str, neg_str = format_percentages(pos_pct)
    return {
        "positive_pct": pos_str,
        "negative_pct": neg_str,
        "positive_count": positive,
        "negative_count": negative,
    }


def _cmd_sentiment_eval(args) -> int:
    ctx = _context(args)
    docs = _labeled_for(args, ctx)
    train_docs, test_docs = classify.split(docs, ctx.train_fraction, ctx.seed)
    model = classify.train(train_docs, ctx.pipeline, alpha=ctx.alpha)
    golds = [d.label for d in test_docs]
    preds = [classify.predict(model, d.text, ctx.pipeline).label for d in test_docs]
    matrix = confusion(golds, preds)
    report = evaluate(matrix)

    tally = None
    if getattr(args, "records", None) or getattr(args, "brand", None):
        try:
            records, _ = _records_for(args, ctx)
        except ValidationError:
            records = None
        if records:
            tally = _tally(model, records, ctx.pipeline)

    cells = {"tp": matrix.tp, "fp": matrix.fp, "fn": matrix.fn, "tn": matrix.tn}
    if ctx.fmt == "json":
        payload = {"evaluation": report.to_dict(), "confusion": cells}
        if tally:
            payload["tally"] = tally
        _emit(json.dumps(payload) + "\n", args.out)
    elif ctx.fmt == "csv":
        pairs = list(report.to_dict().items()) + list(cells.items())
        if tally:
            pairs += list(tally.items())
        _emit(_kv_csv(pairs), args.out)
    else:
        text = report.to_text()
        text += "".join(f"{k}: {v}\n" for k, v in cells.items())
        if tally:
            text += "".join(f"{k}: {v}\n" for k, v in tally.items())
        _emit(text, args.out)
    return EXIT_OK


def _cmd_sentiment_label(args) -> int:
    ctx = _context(args)
    records, _ = _records_for(args, ctx)
    if args.model:
        model = classify.load_model(args.model, ctx.pipeline)
    else:
        docs = _labeled_for(args, ctx)
        model = classify.train(docs, ctx.pipeline, alpha=ctx.alpha)
    labeled = [(rid, pred) for rid, pred in classify.label_corpus(model, records, ctx.pipeline)]
    if ctx.fmt == "json":
        rows = [
            {"id": rid, "label": p.label, "confidence": p.confidence} for rid, p in labeled
        ]
        _emit(json.dumps(rows) + "\n", args.out)
    elif ctx.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["id", "label", "confidence"])
        for rid, p in labeled:
            writer.writerow([rid, p.label, f"{p.confidence:.6f}"])
        _emit(buf.getvalue(), args.out)
    else:
        _emit("".join(f"{rid}\t{p.label}\t{p.confidence:.6f}\n" for rid, p in labeled), args.out)
    return EXIT_OK


def _row_best(values: dict, direction: str):
    """Winning brand for one row; (None, True) marks a tie."""
    defined = {k: v for k, v in values.items() if v is not None}
    if not defined:
        return None, False
    best = max(defined.values()) if direction == "higher" else min(defined.values())
    winners = [k for k, v in defined.items() if v == best]
    if len(winners) == 1:
        return winners[0], False
    return None, True


def _cmd_compare(args) -> int:
    ctx = _context(args)
    if ctx.cfg is None:
        raise ValidationError("compare requires --config")
    brands = ctx.cfg.brands
    if len(brands) < 2:
        raise ValidationError("compare needs at least 2 configured brands")
    labeled_count = sum(1 for b in brands if b.labeled is not None)
    if 0 < labeled_count < len(brands):
        missing = ", ".join(b.name for b in brands if b.labeled is None)
        raise ValidationError(f"labeled data must cover every brand or none; missing: {missing}")
    include_sentiment = labeled_count == len(brands)

    per_brand = {}
    for brand in brands:
        result = parse_records(brand.records)
        report = _graph_report(result.records, ctx)
        values = report.to_dict()
        if include_sentiment:
            train_docs, _ = classify.split(
                parse_labeled_corpus(brand.labeled), ctx.train_fraction, ctx.seed
            )
            model = classify.train(train_docs, ctx.pipeline, alpha=ctx.alpha)
            tally = _tally(model, result.records, ctx.pipeline)
            values["positive_pct"] = float(tally["positive_pct"])
            values["negative_pct"] = float(tally["negative_pct"])
        per_brand[brand.name] = values

    names = [b.name for b in brands]
    rows = []
    rows_won = {name: 0 for name in names}
    ties = 0
    row_specs = NETWORK_ROWS + (SENTIMENT_ROWS if include_sentiment else ())
    for prop, direction in row_specs:
        values = {name: per_brand[name].get(prop) for name in names}
        best, tied = _row_best(values, direction)
        if best is not None:
            rows_won[best] += 1
        ties += tied
        if prop.endswith("_pct"):
            values = {
                name: None if v is None else f"{v:.2f}" for name, v in values.items()
            }
        rows.append({"property": prop, "values": values, "best": best})

    if ctx.fmt == "json":
        payload = {"brands": names, "rows": rows, "rows_won": rows_won, "ties": ties}
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    elif ctx.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["property"] + names + ["best"])
        for row in rows:
            cells = [_cell(row["values"][name]) for name in names]
            writer.writerow([row["property"]] + cells + [row["best"] or ""])
        writer.writerow(["rows_won"] + [rows_won[name] for name in names] + [""])
        _emit(buf.getvalue(), args.out)
    else:
        _emit(_compare_table(names, rows, rows_won, ties), args.out)
    return EXIT_OK


def _cell(value) -> str:
    if value is None:
        return "n/a"
    if isinstance(value, float):
        return format(value, ".6g")
    return str(value)


def _compare_table(names, rows, rows_won, ties) -> str:
    header = ["property"] + list(names)
    body = []
    for row in rows:
        cells = [row["property"]]
        for name in names:
            text = _cell(row["values"][name])
            if row["best"] == name:
                text += " *"
            cells.append(text)
        body.append(cells)
    widths = [max(len(r[c]) for r in [header] + body) for c in range(len(header))]
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(header)).rstrip()]
    for cells in body:
        lines.append("  ".join(cells[i].ljust(widths[i]) for i in range(len(cells))).rstrip())
    footer = "rows won: " + ", ".join(f"{name}: {rows_won[name]}" for name in names)
    if ties:
        footer += f" (ties: {ties})"
    lines.append(footer)
    return "\n".join(lines) + "\n"


# --- parser -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="INI run configuration")
    common.add_argument("--seed", type=int, default=None, help="seed for every randomized step")
    common.add_argument("--format", dest="fmt", choices=("table", "json", "csv"), default=None)
    common.add_argument("--out", type=Path, default=None, help="write output here instead of stdout")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("records", nargs="?", type=Path, help="records file (JSONL or CSV)")
    source.add_argument("--brand", help="brand name from the config file")
    source.add_argument("--records-format", choices=("jsonl", "csv"), default=None)
    source.add_argument("--no-mentions", action="store_true", help="ignore mention edges")
    source.add_argument("--no-replies", action="store_true", help="ignore reply edges")
    source.add_argument("--since", help="keep records at or after this ISO-8601 timestamp")
    source.add_argument("--until", help="keep records at or before this ISO-8601 timestamp")

    parser = argparse.ArgumentParser(
        prog="convograph",
        description="Conversation-graph metrics and sentiment analytics for brand communities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ingest_p = sub.add_parser("ingest", help="record file utilities")
    ingest_sub = ingest_p.add_subparsers(dest="subcommand", required=True)
    p = ingest_sub.add_parser("validate", parents=[common, source], help="parse a file and report counts")
    p.add_argument("--as-labeled", action="store_true", help="validate a labeled sentiment CSV instead")
    p.set_defaults(handler=_cmd_ingest_validate)

    graph_p = sub.add_parser("graph", help="graph construction and metrics")
    graph_sub = graph_p.add_subparsers(dest="subcommand", required=True)
    p = graph_sub.add_parser("metrics", parents=[common, source], help="compute the network property report")
    p.add_argument("--workers", type=int, default=None, help="threads for the BFS sweep")
    p.set_defaults(handler=_cmd_graph_metrics)
    p = graph_sub.add_parser("export", parents=[common, source], help="write the edge list")
    p.add_argument("--edge-format", choices=("tsv", "dot"), default="tsv")
    p.set_defaults(handler=_cmd_graph_export)

    community_p = sub.add_parser("community", help="community detection")
    community_sub = community_p.add_subparsers(dest="subcommand", required=True)
    p = community_sub.add_parser(
        "detect", parents=[common, source], help="assign communities (two-column text output)"
    )
    p.set_defaults(handler=_cmd_community_detect)

    sentiment_p = sub.add_parser("sentiment", help="classifier training, evaluation, labeling")
    sentiment_sub = sentiment_p.add_subparsers(dest="subcommand", required=True)
    p = sentiment_sub.add_parser("train", parents=[common], help="train on a full labeled CSV and save the model")
    p.add_argument("--labeled", type=Path, help="labeled CSV (header: text,label)")
    p.add_argument("--brand", help="brand whose labeled data to use")
    p.add_argument("--alpha", type=float, default=None, help="Laplace smoothing strength")
    p.add_argument("--model-out", type=Path, required=True)
    p.set_defaults(handler=_cmd_sentiment_train)
    p = sentiment_sub.add_parser(
        "eval", parents=[common], help="split, train, and score on the held-out test set"
    )
    p.add_argument("--labeled", type=Path, help="labeled CSV (header: text,label)")
    p.add_argument("--brand", help="brand whose labeled data (and records) to use")
    p.add_argument("--records", type=Path, help="also auto-label these records and tally percentages")
    p.add_argument("--records-format", choices=("jsonl", "csv"), default=None)
    p.add_argument("--train-fraction", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.set_defaults(handler=_cmd_sentiment_eval)
    p = sentiment_sub.add_parser("label", parents=[common, source], help="predict a label per record")
    p.add_argument("--model", type=Path, help="saved model JSON")
    p.add_argument("--labeled", type=Path, help="train on this labeled CSV instead of loading a model")
    p.add_argument("--alpha", type=float, default=None)
    p.set_defaults(handler=_cmd_sentiment_label)

    p = sub.add_parser("compare", parents=[common], help="side-by-side brand report")
    p.set_defaults(handler=_cmd_compare)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ValidationError, UndefinedMetricError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001 - last resort, keep the CLI contract
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
