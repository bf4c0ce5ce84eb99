"""HTTP service: snapshot-consistent reads, compare-and-set mutations.

The registry is held behind a single-writer store.  Every response carries
the snapshot id it was computed from; mutations must present that id in an
``If-Match`` header and are rejected with 409 when it is stale.  Accepted
mutations are validated first (the registry can never enter a state with
Error findings), appended to a replayable mutation log, and written through
to the registry document when the store is file-backed.
"""

from __future__ import annotations

import copy
import json
import threading
from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.staticfiles import StaticFiles

from .alignment import LEVELS_DESC, alignment_report, misalignment_listing
from .canvas import (
    build_business_value_canvas,
    build_prioritization_canvas,
    render_canvas,
)
from .errors import (
    DebtboardError,
    InvalidRuleTable,
    MissingTechnicalPriority,
    ParseError,
    UnsupportedFormat,
    UnsupportedVersion,
)
from .model import (
    Dimension,
    Finding,
    Registry,
    ValidationReport,
    validate_registry,
)
from .rules import prioritize_backlog, what_if
from .storage import (
    load_registry,
    parse_asset,
    parse_item,
    parse_process,
    parse_registry_document,
    parse_rule_table,
    parse_value_map,
    registry_document,
    save_registry,
)
from .value import impact_profile, payment_recommendation


class StaleSnapshot(DebtboardError):
    """The presented snapshot id is no longer current."""

    def __init__(self, current: int):
        super().__init__(f"stale snapshot; current snapshot is {current}")
        self.current = current


class ValidationFailed(DebtboardError):
    """The mutation would leave the registry with Error findings."""

    def __init__(self, report: ValidationReport):
        super().__init__(
            "registry validation failed: "
            + "; ".join(f.message for f in report.errors())
        )
        self.report = report


class MutationTargetNotFound(DebtboardError):
    def __init__(self, kind: str, entity_id: str):
        super().__init__(f"no {kind} with id {entity_id!r}")
        self.kind = kind
        self.entity_id = entity_id


def _upsert(entities: list, replacement: Any) -> None:
    for i, existing in enumerate(entities):
        if existing.id == replacement.id:
            entities[i] = replacement
            return
    entities.append(replacement)


def _delete(entities: list, entity_id: str, kind: str) -> None:
    for i, existing in enumerate(entities):
        if existing.id == entity_id:
            del entities[i]
            return
    raise MutationTargetNotFound(kind, entity_id)


def apply_mutation(registry: Registry, action: str, payload: Any) -> Registry:
    """Apply one logged mutation; returns the (possibly replaced) registry.

    Payloads are plain JSON values exactly as received over the API, which
    keeps the mutation log replayable without any extra serialization step.
    """
    if action == "replace-registry":
        return parse_registry_document(payload)
    if action == "put-process":
        _upsert(registry.processes, parse_process(payload, "$"))
    elif action == "delete-process":
        _delete(registry.processes, payload["id"], "business process")
    elif action == "put-asset":
        _upsert(registry.assets, parse_asset(payload, "$"))
    elif action == "delete-asset":
        _delete(registry.assets, payload["id"], "configuration item")
    elif action == "put-item":
        _upsert(registry.backlog.items, parse_item(payload, "$"))
    elif action == "delete-item":
        _delete(registry.backlog.items, payload["id"], "debt item")
    elif action == "put-rule-table":
        registry.rule_table = parse_rule_table(payload, "$")
    elif action == "put-value-map":
        registry.value_map = parse_value_map(payload, "$")
    else:
        raise ValueError(f"unknown mutation action {action!r}")
    return registry


def replay_log(initial: Registry, log: list[tuple[str, Any]]) -> Registry:
    """Reapply a recorded mutation log to a copy of the initial registry."""
    registry = copy.deepcopy(initial)
    for action, payload in log:
        registry = apply_mutation(registry, action, payload)
    return registry


class RegistryStore:
    """Single-writer registry holder with monotonically increasing snapshots.

    Readers take (snapshot, registry) pairs; handlers must treat the registry
    as immutable.  Mutations go through :meth:`mutate`, which serializes
    writers, enforces compare-and-set on the snapshot id, validates the
    candidate state, and only then commits.
    """

    def __init__(self, registry: Registry, path: Path | str | None = None):
        report = validate_registry(registry)
        if not report.ok:
            raise ValidationFailed(report)
        self._registry = registry
        self._snapshot = 1
        self._lock = threading.Lock()
        self._path = Path(path) if path is not None else None
        self.mutation_log: list[tuple[str, Any]] = []

    @classmethod
    def from_path(cls, path: Path | str) -> RegistryStore:
        return cls(load_registry(Path(path).read_bytes()), path=path)

    @property
    def path(self) -> Path | None:
        return self._path

    def read(self) -> tuple[int, Registry]:
        with self._lock:
            return self._snapshot, self._registry

    def mutate(
        self, expected_snapshot: int, action: str, payload: Any
    ) -> tuple[int, ValidationReport]:
        with self._lock:
            if expected_snapshot != self._snapshot:
                raise StaleSnapshot(self._snapshot)
            candidate = apply_mutation(
                copy.deepcopy(self._registry), action, payload
            )
            report = validate_registry(candidate)
            if not report.ok:
                raise ValidationFailed(report)
            self._registry = candidate
            self._snapshot += 1
            self.mutation_log.append((action, payload))
            if self._path is not None:
                self._path.write_bytes(save_registry(candidate))
            return self._snapshot, report


# --- payload shaping ----------------------------------------------------------


def finding_payload(finding: Finding) -> dict[str, str]:
    return {
        "severity": finding.severity.value,
        "entityId": finding.entity_id,
        "message": finding.message,
    }


def backlog_payload(registry: Registry) -> list[dict[str, Any]]:
    assets = registry.asset_index()
    processes = registry.process_index()
    items = registry.item_index()
    rows = []
    for position, ranked in enumerate(prioritize_backlog(registry), start=1):
        item = items[ranked.item_id]
        asset = assets[ranked.decisive_asset]
        process = (
            processes[ranked.decisive_process]
            if ranked.decisive_process is not None
            else None
        )
        rows.append(
            {
                "position": position,
                "itemId": ranked.item_id,
                "title": item.title,
                "rank": ranked.rank,
                "technicalPriority": (
                    item.technical_priority.value
                    if item.technical_priority is not None
                    else None
                ),
                "createdAt": item.created_at.isoformat(),
                "decisiveAsset": {"id": asset.id, "name": asset.name},
                "decisiveProcess": (
                    {"id": process.id, "name": process.name}
                    if process is not None
                    else None
                ),
                "decisiveCell": {
                    "processType": ranked.decisive_cell[0].value,
                    "assetState": ranked.decisive_cell[1].value,
                },
            }
        )
    return rows


def alignment_payload(registry: Registry, dimension: Dimension) -> dict[str, Any]:
    report = alignment_report(registry.backlog, registry, dimension)
    listing = misalignment_listing(registry.backlog, registry, dimension)
    return {
        "metric": dimension.value,
        "perLevel": {
            level.value: {
                "matched": stats.matched,
                "total": stats.total,
                "percent": stats.display,
            }
            for level, stats in report.per_level.items()
        },
        "total": {
            "matched": report.total.matched,
            "total": report.total.total,
            "percent": report.total.display,
        },
        "confusion": {
            technical.value: {
                business.value: report.confusion[technical][business]
                for business in LEVELS_DESC
            }
            for technical in LEVELS_DESC
        },
        "misalignments": [
            {
                "itemId": entry.item_id,
                "technical": entry.technical.value,
                "business": entry.business.value,
            }
            for entry in listing
        ],
    }


_CANVAS_MEDIA_TYPES = {
    "graph-text": "text/vnd.graphviz; charset=utf-8",
    "vector-image": "image/svg+xml",
    "plain-table": "text/plain; charset=utf-8",
}


# --- HTTP app -----------------------------------------------------------------


def _expected_snapshot(request: Request) -> int:
    header = request.headers.get("if-match")
    if header is None:
        raise HTTPException(
            status_code=428,
            detail={
                "message": "If-Match header with the current snapshot id is required"
            },
        )
    try:
        return int(header.strip().strip('"'))
    except ValueError:
        raise HTTPException(
            status_code=400,
            detail={"message": f"If-Match must be a snapshot id, got {header!r}"},
        ) from None


async def _json_body(request: Request) -> Any:
    raw = await request.body()
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise HTTPException(
            status_code=400,
            detail={
                "message": f"invalid JSON body: {exc.msg} (line {exc.lineno}, column {exc.colno})"
            },
        ) from None


def create_app(store: RegistryStore, ui_dir: Path | str | None = None) -> FastAPI:
    app = FastAPI(title="debtboard", docs_url=None, redoc_url=None)

    def _run_mutation(request: Request, action: str, payload: Any) -> dict[str, Any]:
        expected = _expected_snapshot(request)
        try:
            snapshot, report = store.mutate(expected, action, payload)
        except StaleSnapshot as exc:
            raise HTTPException(
                status_code=409,
                detail={"message": str(exc), "snapshot": exc.current},
            ) from None
        except ValidationFailed as exc:
            raise HTTPException(
                status_code=400,
                detail={
                    "message": "registry validation failed",
                    "findings": [finding_payload(f) for f in exc.report.findings],
                },
            ) from None
        except (ParseError, UnsupportedVersion) as exc:
            raise HTTPException(
                status_code=400, detail={"message": str(exc)}
            ) from None
        except MutationTargetNotFound as exc:
            raise HTTPException(
                status_code=404, detail={"message": str(exc)}
            ) from None
        return {
            "snapshot": snapshot,
            "warnings": [finding_payload(f) for f in report.warnings()],
        }

    @app.get("/api/registry")
    def get_registry() -> dict[str, Any]:
        snapshot, registry = store.read()
        return {"snapshot": snapshot, "document": registry_document(registry)}

    @app.get("/api/validation")
    def get_validation() -> dict[str, Any]:
        snapshot, registry = store.read()
        report = validate_registry(registry)
        return {
            "snapshot": snapshot,
            "ok": report.ok,
            "findings": [finding_payload(f) for f in report.findings],
        }

    @app.get("/api/backlog")
    def get_backlog() -> dict[str, Any]:
        snapshot, registry = store.read()
        return {"snapshot": snapshot, "items": backlog_payload(registry)}

    @app.get("/api/items/{item_id}/impact")
    def get_impact(item_id: str) -> dict[str, Any]:
        snapshot, registry = store.read()
        stored = registry.item_index().get(item_id)
        if stored is None:
            raise HTTPException(
                status_code=404,
                detail={"message": f"unknown technical debt item: {item_id!r}"},
            )
        profile = impact_profile(stored, registry)
        scheme = registry.value_map.scheme
        return {
            "snapshot": snapshot,
            "itemId": item_id,
            "horizons": list(scheme.labels),
            "profile": {
                label: sorted(profile.by_horizon[label]) for label in scheme.labels
            },
            "recommendation": payment_recommendation(profile, scheme),
        }

    @app.get("/api/alignment")
    def get_alignment(metric: str = "criticality") -> dict[str, Any]:
        try:
            dimension = Dimension(metric)
        except ValueError:
            raise HTTPException(
                status_code=400,
                detail={
                    "message": f"metric must be criticality or urgency, got {metric!r}"
                },
            ) from None
        snapshot, registry = store.read()
        try:
            payload = alignment_payload(registry, dimension)
        except MissingTechnicalPriority as exc:
            raise HTTPException(
                status_code=400,
                detail={"message": str(exc), "itemIds": exc.item_ids},
            ) from None
        return {"snapshot": snapshot, **payload}

    @app.get("/api/canvas/{which}")
    def get_canvas(which: str, format: str = "plain-table") -> Response:
        snapshot, registry = store.read()
        if which == "prioritization":
            canvas = build_prioritization_canvas(registry)
        elif which == "business-value":
            canvas = build_business_value_canvas(registry)
        else:
            raise HTTPException(
                status_code=404,
                detail={
                    "message": f"unknown canvas {which!r}; expected prioritization or business-value"
                },
            )
        try:
            body = render_canvas(canvas, format)
        except UnsupportedFormat as exc:
            raise HTTPException(
                status_code=400, detail={"message": str(exc)}
            ) from None
        return Response(
            content=body,
            media_type=_CANVAS_MEDIA_TYPES[format],
            headers={"X-Snapshot": str(snapshot)},
        )

    @app.post("/api/what-if")
    async def post_what_if(request: Request) -> dict[str, Any]:
        payload = await _json_body(request)
        snapshot, registry = store.read()
        try:
            candidate = parse_rule_table(payload, "$")
            diff = what_if(registry, candidate)
        except ParseError as exc:
            raise HTTPException(
                status_code=400, detail={"message": str(exc)}
            ) from None
        except InvalidRuleTable as exc:
            raise HTTPException(
                status_code=400,
                detail={"message": "invalid rule table", "problems": exc.problems},
            ) from None
        return {
            "snapshot": snapshot,
            "entries": [
                {
                    "itemId": entry.item_id,
                    "oldRank": entry.old_rank,
                    "newRank": entry.new_rank,
                    "oldPosition": entry.old_position,
                    "newPosition": entry.new_position,
                    "positionDelta": entry.position_delta,
                }
                for entry in diff.entries
            ],
            "movedCount": len(diff.moved()),
        }

    @app.put("/api/registry")
    async def put_registry(request: Request) -> dict[str, Any]:
        return _run_mutation(request, "replace-registry", await _json_body(request))

    def _check_id_match(payload: Any, entity_id: str) -> None:
        if isinstance(payload, dict) and payload.get("id") not in (None, entity_id):
            raise HTTPException(
                status_code=400,
                detail={
                    "message": f"body id {payload.get('id')!r} does not match path id {entity_id!r}"
                },
            )

    @app.put("/api/processes/{process_id}")
    async def put_process(process_id: str, request: Request) -> dict[str, Any]:
        payload = await _json_body(request)
        _check_id_match(payload, process_id)
        return _run_mutation(request, "put-process", payload)

    @app.delete("/api/processes/{process_id}")
    def delete_process(process_id: str, request: Request) -> dict[str, Any]:
        return _run_mutation(request, "delete-process", {"id": process_id})

    @app.put("/api/assets/{asset_id}")
    async def put_asset(asset_id: str, request: Request) -> dict[str, Any]:
        payload = await _json_body(request)
        _check_id_match(payload, asset_id)
        return _run_mutation(request, "put-asset", payload)

    @app.delete("/api/assets/{asset_id}")
    def delete_asset(asset_id: str, request: Request) -> dict[str, Any]:
        return _run_mutation(request, "delete-asset", {"id": asset_id})

    @app.put("/api/items/{item_id}")
    async def put_item(item_id: str, request: Request) -> dict[str, Any]:
        payload = await _json_body(request)
        _check_id_match(payload, item_id)
        return _run_mutation(request, "put-item", payload)

    @app.delete("/api/items/{item_id}")
    def delete_item(item_id: str, request: Request) -> dict[str, Any]:
        return _run_mutation(request, "delete-item", {"id": item_id})

    @app.put("/api/rule-table")
    async def put_rule_table(request: Request) -> dict[str, Any]:
        return _run_mutation(request, "put-rule-table", await _json_body(request))

    @app.put("/api/value-map")
    async def put_value_map(request: Request) -> dict[str, Any]:
        return _run_mutation(request, "put-value-map", await _json_body(request))

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
