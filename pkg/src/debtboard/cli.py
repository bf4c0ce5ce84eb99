"""Command-line interface.

Exit codes: 0 success, 1 data/validation errors, 2 usage errors.  Every
subcommand reads the registry document given by ``--registry`` or the
``DEBTBOARD_REGISTRY`` environment variable, and produces deterministic
output for a fixed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .alignment import LEVELS_DESC, alignment_report, misalignment_listing
from .canvas import (
    CanvasFormat,
    build_business_value_canvas,
    build_prioritization_canvas,
    render_canvas,
)
from .errors import DebtboardError
from .model import Dimension, Level, Registry, validate_registry
from .rules import prioritize_backlog, what_if
from .storage import (
    SkippedRow,
    import_tracker_export,
    load_registry,
    parse_rule_table,
    read_tracker_csv,
    read_tracker_json,
    save_registry,
)
from .value import impact_profile, payment_recommendation

ENV_REGISTRY = "DEBTBOARD_REGISTRY"


def _registry_path(args: argparse.Namespace) -> Path:
    path = args.registry or os.environ.get(ENV_REGISTRY)
    if not path:
        print(
            f"error: no registry given; pass --registry or set {ENV_REGISTRY}",
            file=sys.stderr,
        )
        raise SystemExit(2)
    return Path(path)


def _load(args: argparse.Namespace) -> Registry:
    return load_registry(_registry_path(args).read_bytes())


def _load_validated(args: argparse.Namespace) -> Registry:
    registry = _load(args)
    report = validate_registry(registry)
    if not report.ok:
        for finding in report.errors():
            print(f"ERROR {finding.entity_id}: {finding.message}", file=sys.stderr)
        print(
            f"registry failed validation with {len(report.errors())} error(s)",
            file=sys.stderr,
        )
        raise SystemExit(1)
    return registry


def _read_json_file(path: str, what: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        print(f"error: {what} {path}: invalid JSON: {exc.msg}", file=sys.stderr)
        raise SystemExit(1) from None


# --- subcommands --------------------------------------------------------------


def cmd_validate(args: argparse.Namespace) -> int:
    registry = _load(args)
    report = validate_registry(registry)
    for finding in report.findings:
        print(f"{finding.severity.value.upper()} {finding.entity_id}: {finding.message}")
    errors, warnings = report.errors(), report.warnings()
    print(f"{len(errors)} error(s), {len(warnings)} warning(s)")
    return 0 if report.ok else 1


def cmd_prioritize(args: argparse.Namespace) -> int:
    registry = _load_validated(args)
    assets = registry.asset_index()
    processes = registry.process_index()
    items = registry.item_index()
    for position, ranked in enumerate(prioritize_backlog(registry), start=1):
        item = items[ranked.item_id]
        asset_name = assets[ranked.decisive_asset].name
        process_name = (
            processes[ranked.decisive_process].name
            if ranked.decisive_process is not None
            else "-"
        )
        print(
            f"{position}. [rank {ranked.rank}] {ranked.item_id}  {item.title}"
            f"  (via {asset_name} -> {process_name})"
        )
    return 0


def cmd_impact(args: argparse.Namespace) -> int:
    registry = _load_validated(args)
    item = registry.item_index().get(args.item_id)
    if item is None:
        print(f"error: unknown technical debt item: {args.item_id!r}", file=sys.stderr)
        return 1
    profile = impact_profile(item, registry)
    scheme = registry.value_map.scheme
    for label in scheme.labels:
        names = sorted(profile.by_horizon[label])
        print(f"{label}: {'; '.join(names) if names else '(none)'}")
    recommendation = payment_recommendation(profile, scheme)
    print(f"recommendation: {recommendation if recommendation is not None else 'none'}")
    return 0


def cmd_align(args: argparse.Namespace) -> int:
    registry = _load_validated(args)
    dimension = Dimension(args.metric)
    report = alignment_report(registry.backlog, registry, dimension)
    print(f"alignment by {dimension.value}")
    print(f"{'level':<8} {'matched':>7} {'total':>6} {'percent':>8}")
    for level in LEVELS_DESC:
        stats = report.per_level[level]
        print(f"{level.value:<8} {stats.matched:>7} {stats.total:>6} {stats.display:>8}")
    print(
        f"{'total':<8} {report.total.matched:>7} {report.total.total:>6} "
        f"{report.total.display:>8}"
    )
    listing = misalignment_listing(registry.backlog, registry, dimension)
    if listing:
        print("misaligned items:")
        for entry in listing:
            print(
                f"  {entry.item_id}  technical={entry.technical.value}"
                f"  business={entry.business.value}"
            )
    return 0


def cmd_canvas(args: argparse.Namespace) -> int:
    registry = _load_validated(args)
    if args.which == "prioritization":
        canvas = build_prioritization_canvas(registry)
    else:
        canvas = build_business_value_canvas(registry)
    body = render_canvas(canvas, CanvasFormat(args.format))
    if args.out:
        Path(args.out).write_bytes(body)
    else:
        sys.stdout.buffer.write(body)
        sys.stdout.buffer.flush()
    return 0


def cmd_import(args: argparse.Namespace) -> int:
    registry = _load_validated(args)
    rows_path = Path(args.rows)
    fmt = args.format or ("json" if rows_path.suffix.lower() == ".json" else "csv")
    data = rows_path.read_bytes()
    rows = read_tracker_json(data) if fmt == "json" else read_tracker_csv(data)

    mapping = _read_json_file(args.mapping, "mapping file")
    if not isinstance(mapping, dict) or not all(
        isinstance(v, str) for v in mapping.values()
    ):
        print("error: mapping file must be an object of component -> asset id", file=sys.stderr)
        return 1
    asset_ids = set(registry.asset_index())
    unresolved = sorted(set(mapping.values()) - asset_ids)
    if unresolved:
        print(
            "error: mapping targets unknown configuration items: " + ", ".join(unresolved),
            file=sys.stderr,
        )
        return 1

    label_levels = None
    if args.labels:
        raw = _read_json_file(args.labels, "labels file")
        try:
            label_levels = {k: Level.from_label(v) for k, v in raw.items()}
        except (ValueError, AttributeError) as exc:
            print(f"error: labels file: {exc}", file=sys.stderr)
            return 1

    items, report = import_tracker_export(rows, mapping, label_levels)

    existing = set(registry.item_index())
    accepted = []
    for item in items:
        if item.id in existing:
            report.imported.remove(item.id)
            report.skipped.append(
                SkippedRow(item.id, "item id already present in the backlog")
            )
            continue
        existing.add(item.id)
        accepted.append(item)

    print(f"imported {len(accepted)} item(s), skipped {len(report.skipped)}")
    for skip in report.skipped:
        print(f"skip {skip.external_id}: {skip.reason}")

    if args.dry_run:
        return 0

    registry.backlog.items.extend(accepted)
    final = validate_registry(registry)
    if not final.ok:
        for finding in final.errors():
            print(f"ERROR {finding.entity_id}: {finding.message}", file=sys.stderr)
        print("import would leave the registry invalid; nothing written", file=sys.stderr)
        return 1
    _registry_path(args).write_bytes(save_registry(registry))
    return 0


def cmd_what_if(args: argparse.Namespace) -> int:
    registry = _load_validated(args)
    raw = _read_json_file(args.rules, "rules file")
    candidate = parse_rule_table(raw, "$")
    diff = what_if(registry, candidate)
    items = registry.item_index()
    for entry in diff.entries:
        marker = ""
        if entry.position_delta > 0:
            marker = f"  (up {entry.position_delta})"
        elif entry.position_delta < 0:
            marker = f"  (down {-entry.position_delta})"
        print(
            f"{entry.new_position}. {entry.item_id}  {items[entry.item_id].title}"
            f"  rank {entry.old_rank}->{entry.new_rank}"
            f"  position {entry.old_position}->{entry.new_position}{marker}"
        )
    if not diff.moved():
        print("no position changes")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import RegistryStore, create_app

    store = RegistryStore.from_path(_registry_path(args))
    ui_dir = args.ui if args.ui else None
    app = create_app(store, ui_dir=ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="debtboard",
        description="Business-driven technical debt prioritization.",
        epilog=f"The registry path may also be set via {ENV_REGISTRY}.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--registry", help="path to the registry document")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check registry invariants")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("prioritize", parents=[common], help="print the ordered backlog")
    p.set_defaults(func=cmd_prioritize)

    p = sub.add_parser("impact", parents=[common], help="impact profile of one item")
    p.add_argument("item_id", help="technical debt item id")
    p.set_defaults(func=cmd_impact)

    p = sub.add_parser("align", parents=[common], help="technical vs business alignment")
    p.add_argument(
        "--metric",
        choices=[d.value for d in Dimension],
        default=Dimension.CRITICALITY.value,
        help="business rating to compare against (default: criticality)",
    )
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("canvas", parents=[common], help="render a canvas document")
    p.add_argument(
        "--which",
        choices=["prioritization", "business-value"],
        required=True,
        help="which canvas to render",
    )
    p.add_argument(
        "--format",
        choices=[f.value for f in CanvasFormat],
        default=CanvasFormat.PLAIN_TABLE.value,
        help="output format (default: plain-table)",
    )
    p.add_argument("--out", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_canvas)

    p = sub.add_parser(
        "import", parents=[common], help="import debt items from a tracker export"
    )
    p.add_argument("--rows", required=True, help="export file (.csv or .json)")
    p.add_argument(
        "--format",
        choices=["csv", "json"],
        help="export format (default: by file extension)",
    )
    p.add_argument(
        "--mapping",
        required=True,
        help="JSON file mapping tracker components to configuration item ids",
    )
    p.add_argument(
        "--labels",
        help="JSON file mapping extra tracker labels to levels (high/medium/low)",
    )
    p.add_argument(
        "--dry-run",
        action="store_true",
        help="report what would be imported without writing",
    )
    p.set_defaults(func=cmd_import)

    p = sub.add_parser(
        "what-if", parents=[common], help="compare backlog order under a candidate rule table"
    )
    p.add_argument("--rules", required=True, help="JSON file with the candidate rule table")
    p.set_defaults(func=cmd_what_if)

    p = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--ui", help="directory with the built web UI to serve at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except DebtboardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
