"""Registry document format, load/save round-tripping, and tracker import.

The registry lives in a single JSON document with an explicit formatVersion.
Unknown fields anywhere in the document are kept on the parsed objects and
emitted again on save, so third-party annotations survive a round trip.
Schema violations raise ParseError with a JSONPath-style location.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any

from .errors import ParseError, UnsupportedVersion
from .model import (
    AssetState,
    Attachment,
    BPElement,
    BusinessMetric,
    BusinessProcess,
    BusinessValueMap,
    ConfigurationItem,
    HorizonScheme,
    Level,
    PrioritizationRuleTable,
    ProcessType,
    Registry,
    TechnicalDebtItem,
    TechnicalDebtList,
)

FORMAT_VERSION = 1


def _kind(value: Any) -> str:
    return type(value).__name__ if value is not None else "null"


class _Fields:
    """Tracks which keys of a JSON object were consumed; the rest are extras."""

    def __init__(self, raw: Any, path: str):
        if not isinstance(raw, dict):
            raise ParseError(path, f"expected object, got {_kind(raw)}")
        self.raw = raw
        self.path = path
        self._taken: set[str] = set()

    def take(self, key: str, required: bool = False) -> tuple[Any, str]:
        subpath = f"{self.path}.{key}"
        if key not in self.raw or self.raw[key] is None:
            if required and key not in self.raw:
                raise ParseError(subpath, "missing required field")
            if required:
                raise ParseError(subpath, "must not be null")
            self._taken.add(key)
            return None, subpath
        self._taken.add(key)
        return self.raw[key], subpath

    def extras(self) -> dict[str, Any]:
        return {k: v for k, v in self.raw.items() if k not in self._taken}


def _str(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise ParseError(path, f"expected string, got {_kind(value)}")
    return value


def _int(value: Any, path: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(path, f"expected integer, got {_kind(value)}")
    return value


def _list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise ParseError(path, f"expected array, got {_kind(value)}")
    return value


def _level(value: Any, path: str) -> Level:
    try:
        return Level.from_label(_str(value, path))
    except ValueError as exc:
        raise ParseError(path, str(exc)) from None


def _enum(cls: type, value: Any, path: str):
    text = _str(value, path)
    try:
        return cls(text)
    except ValueError:
        allowed = ", ".join(member.value for member in cls)
        raise ParseError(path, f"expected one of: {allowed}; got {text!r}") from None


def _id_set(value: Any, path: str) -> set[str]:
    items = _list(value, path)
    out: set[str] = set()
    for i, entry in enumerate(items):
        text = _str(entry, f"{path}[{i}]")
        if text in out:
            raise ParseError(f"{path}[{i}]", f"duplicate entry {text!r} in id set")
        out.add(text)
    return out


def _timestamp(value: Any, path: str) -> datetime:
    text = _str(value, path)
    # Python 3.10's fromisoformat does not accept a trailing Z.
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        return datetime.fromisoformat(text)
    except ValueError:
        raise ParseError(path, f"not an ISO-8601 timestamp: {value!r}") from None


# --- section parsers ---------------------------------------------------------


def parse_element(raw: Any, path: str) -> BPElement:
    fields = _Fields(raw, path)
    eid, p = fields.take("id", required=True)
    name, np = fields.take("name", required=True)
    priority, pp = fields.take("priority", required=True)
    criticality, cp = fields.take("criticality", required=True)
    return BPElement(
        id=_str(eid, p),
        name=_str(name, np),
        priority=_level(priority, pp),
        criticality=_level(criticality, cp),
        extra=fields.extras(),
    )


def parse_process(raw: Any, path: str) -> BusinessProcess:
    fields = _Fields(raw, path)
    pid, p = fields.take("id", required=True)
    name, np = fields.take("name", required=True)
    ptype, tp = fields.take("type", required=True)
    criticality, cp = fields.take("criticality", required=True)
    urgency, up = fields.take("urgency", required=True)
    priority, prp = fields.take("priority")
    elements_raw, ep = fields.take("elements")
    elements = [
        parse_element(entry, f"{ep}[{i}]")
        for i, entry in enumerate(_list(elements_raw, ep) if elements_raw is not None else [])
    ]
    return BusinessProcess(
        id=_str(pid, p),
        name=_str(name, np),
        type=_enum(ProcessType, ptype, tp),
        criticality=_level(criticality, cp),
        urgency=_level(urgency, up),
        elements=elements,
        priority=None if priority is None else _level(priority, prp),
        extra=fields.extras(),
    )


def parse_asset(raw: Any, path: str) -> ConfigurationItem:
    fields = _Fields(raw, path)
    aid, p = fields.take("id", required=True)
    name, np = fields.take("name", required=True)
    state, sp = fields.take("state", required=True)
    supports, up = fields.take("supports")
    return ConfigurationItem(
        id=_str(aid, p),
        name=_str(name, np),
        state=_enum(AssetState, state, sp),
        supports=_id_set(supports, up) if supports is not None else set(),
        extra=fields.extras(),
    )


def parse_item(raw: Any, path: str) -> TechnicalDebtItem:
    fields = _Fields(raw, path)
    iid, p = fields.take("id", required=True)
    title, tp = fields.take("title", required=True)
    description, dp = fields.take("description")
    affects, ap = fields.take("affects", required=True)
    created, cp = fields.take("createdAt", required=True)
    technical, tpp = fields.take("technicalPriority")
    label, lp = fields.take("debtTypeLabel")
    return TechnicalDebtItem(
        id=_str(iid, p),
        title=_str(title, tp),
        description="" if description is None else _str(description, dp),
        affects=_id_set(affects, ap),
        created_at=_timestamp(created, cp),
        technical_priority=None if technical is None else _level(technical, tpp),
        debt_type_label=None if label is None else _str(label, lp),
        extra=fields.extras(),
    )


def parse_backlog(raw: Any, path: str) -> TechnicalDebtList:
    fields = _Fields(raw, path)
    bid, p = fields.take("id", required=True)
    items_raw, ip = fields.take("items")
    items = [
        parse_item(entry, f"{ip}[{i}]")
        for i, entry in enumerate(_list(items_raw, ip) if items_raw is not None else [])
    ]
    return TechnicalDebtList(id=_str(bid, p), items=items, extra=fields.extras())


def parse_rule_table(raw: Any, path: str) -> PrioritizationRuleTable:
    fields = _Fields(raw, path)
    cells_raw, cp = fields.take("cells", required=True)
    cells: dict[tuple[ProcessType, AssetState], int] = {}
    cell_extras: dict[tuple[ProcessType, AssetState], dict[str, Any]] = {}
    for i, entry in enumerate(_list(cells_raw, cp)):
        cell_fields = _Fields(entry, f"{cp}[{i}]")
        ptype, pp = cell_fields.take("processType", required=True)
        state, sp = cell_fields.take("assetState", required=True)
        rank, rp = cell_fields.take("rank", required=True)
        key = (_enum(ProcessType, ptype, pp), _enum(AssetState, state, sp))
        if key in cells:
            raise ParseError(
                f"{cp}[{i}]",
                f"duplicate cell ({key[0].value}, {key[1].value})",
            )
        cells[key] = _int(rank, rp)
        extras = cell_fields.extras()
        if extras:
            cell_extras[key] = extras
    return PrioritizationRuleTable(
        cells=cells, extra=fields.extras(), cell_extras=cell_extras
    )


def parse_metric(raw: Any, path: str) -> BusinessMetric:
    fields = _Fields(raw, path)
    mid, p = fields.take("id", required=True)
    name, np = fields.take("name", required=True)
    horizon, hp = fields.take("horizon", required=True)
    return BusinessMetric(
        id=_str(mid, p),
        name=_str(name, np),
        horizon=_str(horizon, hp),
        extra=fields.extras(),
    )


def parse_value_map(raw: Any, path: str) -> BusinessValueMap:
    fields = _Fields(raw, path)
    horizons, hp = fields.take("horizons", required=True)
    labels = [_str(v, f"{hp}[{i}]") for i, v in enumerate(_list(horizons, hp))]
    attachments_raw, ap = fields.take("attachments")
    attachments = []
    for i, entry in enumerate(
        _list(attachments_raw, ap) if attachments_raw is not None else []
    ):
        att_fields = _Fields(entry, f"{ap}[{i}]")
        subject, sp = att_fields.take("subject", required=True)
        metric, mp = att_fields.take("metric", required=True)
        attachments.append(
            Attachment(
                subject_id=_str(subject, sp),
                metric=parse_metric(metric, mp),
                extra=att_fields.extras(),
            )
        )
    return BusinessValueMap(
        scheme=HorizonScheme(labels=labels),
        attachments=attachments,
        extra=fields.extras(),
    )


def parse_registry_document(raw: Any, path: str = "$") -> Registry:
    fields = _Fields(raw, path)
    version, vp = fields.take("formatVersion", required=True)
    if _int(version, vp) != FORMAT_VERSION:
        raise UnsupportedVersion(version, FORMAT_VERSION)
    processes_raw, pp = fields.take("processes", required=True)
    assets_raw, ap = fields.take("assets", required=True)
    backlog_raw, bp = fields.take("backlog", required=True)
    rules_raw, rp = fields.take("ruleTable", required=True)
    value_raw, vmp = fields.take("valueMap", required=True)
    return Registry(
        processes=[
            parse_process(entry, f"{pp}[{i}]")
            for i, entry in enumerate(_list(processes_raw, pp))
        ],
        assets=[
            parse_asset(entry, f"{ap}[{i}]")
            for i, entry in enumerate(_list(assets_raw, ap))
        ],
        backlog=parse_backlog(backlog_raw, bp),
        rule_table=parse_rule_table(rules_raw, rp),
        value_map=parse_value_map(value_raw, vmp),
        extra=fields.extras(),
    )


def load_registry(data: bytes | str) -> Registry:
    """Parse a registry document; ParseError locations point into the JSON."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"$ (line {exc.lineno}, column {exc.colno})", f"invalid JSON: {exc.msg}"
        ) from None
    return parse_registry_document(raw)


# --- serialization -----------------------------------------------------------


def _with_extras(known: dict[str, Any], extras: dict[str, Any]) -> dict[str, Any]:
    out = dict(known)
    out.update(extras)
    return out


def element_payload(element: BPElement) -> dict[str, Any]:
    return _with_extras(
        {
            "id": element.id,
            "name": element.name,
            "priority": element.priority.value,
            "criticality": element.criticality.value,
        },
        element.extra,
    )


def process_payload(process: BusinessProcess) -> dict[str, Any]:
    known: dict[str, Any] = {
        "id": process.id,
        "name": process.name,
        "type": process.type.value,
        "criticality": process.criticality.value,
        "urgency": process.urgency.value,
    }
    if process.priority is not None:
        known["priority"] = process.priority.value
    known["elements"] = [element_payload(e) for e in process.elements]
    return _with_extras(known, process.extra)


def asset_payload(asset: ConfigurationItem) -> dict[str, Any]:
    return _with_extras(
        {
            "id": asset.id,
            "name": asset.name,
            "state": asset.state.value,
            "supports": sorted(asset.supports),
        },
        asset.extra,
    )


def item_payload(item: TechnicalDebtItem) -> dict[str, Any]:
    known: dict[str, Any] = {
        "id": item.id,
        "title": item.title,
        "description": item.description,
        "affects": sorted(item.affects),
        "createdAt": item.created_at.isoformat(),
    }
    if item.technical_priority is not None:
        known["technicalPriority"] = item.technical_priority.value
    if item.debt_type_label is not None:
        known["debtTypeLabel"] = item.debt_type_label
    return _with_extras(known, item.extra)


def backlog_payload(backlog: TechnicalDebtList) -> dict[str, Any]:
    return _with_extras(
        {"id": backlog.id, "items": [item_payload(i) for i in backlog.items]},
        backlog.extra,
    )


def rule_table_payload(table: PrioritizationRuleTable) -> dict[str, Any]:
    cells = []
    ordered = [cell for cell in _CANONICAL_CELLS if cell in table.cells]
    ordered += [cell for cell in table.cells if cell not in _CANONICAL_CELLS]
    for cell in ordered:
        entry = {
            "processType": cell[0].value,
            "assetState": cell[1].value,
            "rank": table.cells[cell],
        }
        cells.append(_with_extras(entry, table.cell_extras.get(cell, {})))
    return _with_extras({"cells": cells}, table.extra)


_CANONICAL_CELLS = (
    (ProcessType.CORE_SUPPORT, AssetState.OPERATIONAL),
    (ProcessType.CORE_SUPPORT, AssetState.TO_BE_OPERATIONAL),
    (ProcessType.OTHER, AssetState.OPERATIONAL),
    (ProcessType.OTHER, AssetState.TO_BE_OPERATIONAL),
)


def metric_payload(metric: BusinessMetric) -> dict[str, Any]:
    return _with_extras(
        {"id": metric.id, "name": metric.name, "horizon": metric.horizon},
        metric.extra,
    )


def value_map_payload(value_map: BusinessValueMap) -> dict[str, Any]:
    return _with_extras(
        {
            "horizons": list(value_map.scheme.labels),
            "attachments": [
                _with_extras(
                    {"subject": att.subject_id, "metric": metric_payload(att.metric)},
                    att.extra,
                )
                for att in value_map.attachments
            ],
        },
        value_map.extra,
    )


def registry_document(registry: Registry) -> dict[str, Any]:
    return _with_extras(
        {
            "formatVersion": FORMAT_VERSION,
            "processes": [process_payload(p) for p in registry.processes],
            "assets": [asset_payload(a) for a in registry.assets],
            "backlog": backlog_payload(registry.backlog),
            "ruleTable": rule_table_payload(registry.rule_table),
            "valueMap": value_map_payload(registry.value_map),
        },
        registry.extra,
    )


def save_registry(registry: Registry) -> bytes:
    """Serialize to the canonical document encoding (stable, diff-friendly)."""
    text = json.dumps(registry_document(registry), indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


# --- tracker import -----------------------------------------------------------

DEFAULT_LABEL_LEVELS = {
    "high": Level.HIGH,
    "medium": Level.MEDIUM,
    "low": Level.LOW,
}


@dataclass
class TrackerExportRow:
    external_id: str
    title: str
    description: str = ""
    labels: list[str] = field(default_factory=list)
    created_at: datetime = field(default_factory=lambda: datetime.fromtimestamp(0))
    components: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class SkippedRow:
    external_id: str
    reason: str


@dataclass
class ImportReport:
    imported: list[str] = field(default_factory=list)
    skipped: list[SkippedRow] = field(default_factory=list)

    @property
    def imported_count(self) -> int:
        return len(self.imported)

    @property
    def skipped_count(self) -> int:
        return len(self.skipped)


def import_tracker_export(
    rows: list[TrackerExportRow],
    component_mapping: dict[str, str],
    label_levels: dict[str, Level] | None = None,
) -> tuple[list[TechnicalDebtItem], ImportReport]:
    """Turn tracker rows into debt items via the component-to-asset mapping.

    Rows with no mappable component are reported, never silently dropped.
    The first label (in row order) recognized by the synonym table becomes
    the technical priority.  Deterministic and order-preserving.
    """
    synonyms = {k.lower(): v for k, v in DEFAULT_LABEL_LEVELS.items()}
    for key, level in (label_levels or {}).items():
        synonyms[key.lower()] = level

    items: list[TechnicalDebtItem] = []
    report = ImportReport()
    seen_ids: set[str] = set()
    for row in rows:
        if row.external_id in seen_ids:
            report.skipped.append(
                SkippedRow(row.external_id, "duplicate external id in batch")
            )
            continue
        seen_ids.add(row.external_id)
        mapped = {
            component_mapping[c] for c in row.components if c in component_mapping
        }
        if not mapped:
            unmatched = ", ".join(row.components) if row.components else "(none)"
            report.skipped.append(
                SkippedRow(
                    row.external_id,
                    f"no component maps to a configuration item; components: {unmatched}",
                )
            )
            continue
        technical = None
        for label in row.labels:
            if label.lower() in synonyms:
                technical = synonyms[label.lower()]
                break
        items.append(
            TechnicalDebtItem(
                id=row.external_id,
                title=row.title,
                description=row.description,
                affects=mapped,
                created_at=row.created_at,
                technical_priority=technical,
            )
        )
        report.imported.append(row.external_id)
    return items, report


_CSV_REQUIRED = ("id", "title", "created")
_CSV_LIST_SEP = ";"


def read_tracker_csv(data: bytes | str) -> list[TrackerExportRow]:
    """Read a delimited tracker export.

    Column contract (header names case-insensitive): required ``id``,
    ``title``, ``created`` (ISO-8601); optional ``description``, ``labels``
    and ``components`` (each a ``;``-separated list).  Unknown columns are
    ignored.
    """
    text = data.decode("utf-8-sig") if isinstance(data, bytes) else data
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        raise ParseError("$.header", "empty delimited file")
    header = {name.strip().lower(): name for name in reader.fieldnames}
    for required in _CSV_REQUIRED:
        if required not in header:
            raise ParseError("$.header", f"missing column {required!r}")

    def cell(row: dict, key: str) -> str:
        value = row.get(header.get(key, ""), "")
        return (value or "").strip()

    def cells(row: dict, key: str) -> list[str]:
        raw = cell(row, key)
        return [part.strip() for part in raw.split(_CSV_LIST_SEP) if part.strip()]

    rows = []
    for i, raw_row in enumerate(reader):
        rows.append(
            TrackerExportRow(
                external_id=cell(raw_row, "id"),
                title=cell(raw_row, "title"),
                description=cell(raw_row, "description"),
                labels=cells(raw_row, "labels"),
                created_at=_timestamp(cell(raw_row, "created"), f"$.row[{i}].created"),
                components=cells(raw_row, "components"),
            )
        )
    return rows


def read_tracker_json(data: bytes | str) -> list[TrackerExportRow]:
    """Read a JSON tracker export: an array of row objects.

    Keys: ``externalId``, ``title`` (required); ``description``, ``labels``,
    ``createdAt``, ``components`` (optional).
    """
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"$ (line {exc.lineno}, column {exc.colno})", f"invalid JSON: {exc.msg}"
        ) from None
    entries = _list(raw, "$")
    rows = []
    for i, entry in enumerate(entries):
        fields = _Fields(entry, f"$[{i}]")
        external, ep = fields.take("externalId", required=True)
        title, tp = fields.take("title", required=True)
        description, dp = fields.take("description")
        labels, lp = fields.take("labels")
        created, cp = fields.take("createdAt")
        components, comp = fields.take("components")
        rows.append(
            TrackerExportRow(
                external_id=_str(external, ep),
                title=_str(title, tp),
                description="" if description is None else _str(description, dp),
                labels=[]
                if labels is None
                else [_str(v, f"{lp}[{j}]") for j, v in enumerate(_list(labels, lp))],
                created_at=datetime.fromtimestamp(0)
                if created is None
                else _timestamp(created, cp),
                components=[]
                if components is None
                else [
                    _str(v, f"{comp}[{j}]")
                    for j, v in enumerate(_list(components, comp))
                ],
            )
        )
    return rows
