"""Domain model: business processes, IT assets, debt items, and registry validation.

The registry is the aggregate everything else operates on.  All types are
plain dataclasses; every entity carries an ``extra`` dict holding unknown
fields read from a registry document so they survive a load/save round trip.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from functools import total_ordering
from typing import Any


@total_ordering
class Level(Enum):
    """Three-step business rating, ordered high > medium > low."""

    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"

    @property
    def strength(self) -> int:
        return _LEVEL_STRENGTH[self]

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Level):
            return NotImplemented
        return self.strength < other.strength

    @classmethod
    def from_label(cls, label: str) -> Level:
        try:
            return cls(label.strip().lower())
        except ValueError:
            raise ValueError(f"not a level: {label!r} (expected high/medium/low)") from None


_LEVEL_STRENGTH = {Level.LOW: 0, Level.MEDIUM: 1, Level.HIGH: 2}


class ProcessType(Enum):
    CORE_SUPPORT = "core-support"
    OTHER = "other"


class AssetState(Enum):
    OPERATIONAL = "operational"
    TO_BE_OPERATIONAL = "to-be-operational"


class Dimension(Enum):
    """Which business rating of a process drives an analysis."""

    CRITICALITY = "criticality"
    URGENCY = "urgency"


@dataclass
class BPElement:
    """Constituent part of a business process with its own business ratings.

    Element ratings are stored and exported for reporting; they do not feed
    the rule engine, which evaluates at process level.
    """

    id: str
    name: str
    priority: Level
    criticality: Level
    extra: dict[str, Any] = field(default_factory=dict, repr=False)


@dataclass
class BusinessProcess:
    id: str
    name: str
    type: ProcessType
    criticality: Level
    urgency: Level
    elements: list[BPElement] = field(default_factory=list)
    # Optional overall rating; user-supplied only, never computed from elements.
    priority: Level | None = None
    extra: dict[str, Any] = field(default_factory=dict, repr=False)

    def rating(self, dimension: Dimension) -> Level:
        return self.criticality if dimension is Dimension.CRITICALITY else self.urgency


@dataclass
class ConfigurationItem:
    """A managed IT asset (system, service, module, documentation)."""

    id: str
    name: str
    state: AssetState
    supports: set[str] = field(default_factory=set)
    extra: dict[str, Any] = field(default_factory=dict, repr=False)


@dataclass
class TechnicalDebtItem:
    id: str
    title: str
    description: str
    affects: set[str]
    created_at: datetime
    # Team-supplied purely technical rating; read only by alignment analysis.
    technical_priority: Level | None = None
    # Informational label; never influences computed priority.
    debt_type_label: str | None = None
    extra: dict[str, Any] = field(default_factory=dict, repr=False)


@dataclass
class TechnicalDebtList:
    id: str
    items: list[TechnicalDebtItem] = field(default_factory=list)
    extra: dict[str, Any] = field(default_factory=dict, repr=False)


RULE_TABLE_CELLS: tuple[tuple[ProcessType, AssetState], ...] = (
    (ProcessType.CORE_SUPPORT, AssetState.OPERATIONAL),
    (ProcessType.CORE_SUPPORT, AssetState.TO_BE_OPERATIONAL),
    (ProcessType.OTHER, AssetState.OPERATIONAL),
    (ProcessType.OTHER, AssetState.TO_BE_OPERATIONAL),
)


@dataclass
class PrioritizationRuleTable:
    """Rank per (process type, asset state) pair; 1 is the highest priority.

    Must be total over all four cells, and core/support may never rank worse
    than other at the same asset state (business dominance).
    """

    cells: dict[tuple[ProcessType, AssetState], int]
    extra: dict[str, Any] = field(default_factory=dict, repr=False)
    cell_extras: dict[tuple[ProcessType, AssetState], dict[str, Any]] = field(
        default_factory=dict, repr=False
    )

    def rank_for(self, process_type: ProcessType, state: AssetState) -> int:
        return self.cells[(process_type, state)]

    def problems(self) -> list[str]:
        """All violated rule-table invariants, empty when the table is valid."""
        found: list[str] = []
        for cell in RULE_TABLE_CELLS:
            if cell not in self.cells:
                found.append(
                    f"missing cell ({cell[0].value}, {cell[1].value})"
                )
        for cell, rank in self.cells.items():
            if cell not in RULE_TABLE_CELLS:
                found.append(f"unknown cell {cell!r}")
            elif not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
                found.append(
                    f"rank for ({cell[0].value}, {cell[1].value}) must be a positive integer, got {rank!r}"
                )
        if not found:
            for state in (AssetState.OPERATIONAL, AssetState.TO_BE_OPERATIONAL):
                core = self.cells[(ProcessType.CORE_SUPPORT, state)]
                other = self.cells[(ProcessType.OTHER, state)]
                if core > other:
                    found.append(
                        f"business dominance violated at state {state.value}: "
                        f"core-support rank {core} > other rank {other}"
                    )
        return found


@dataclass
class HorizonScheme:
    """Ordered impact horizons, soonest first."""

    labels: list[str] = field(
        default_factory=lambda: ["immediate", "short-term", "long-term"]
    )


DEFAULT_HORIZONS = ("immediate", "short-term", "long-term")


@dataclass
class BusinessMetric:
    id: str
    name: str
    horizon: str
    extra: dict[str, Any] = field(default_factory=dict, repr=False)


@dataclass
class Attachment:
    """A business metric attached to a process or asset."""

    subject_id: str
    metric: BusinessMetric
    extra: dict[str, Any] = field(default_factory=dict, repr=False)


@dataclass
class BusinessValueMap:
    scheme: HorizonScheme = field(default_factory=HorizonScheme)
    attachments: list[Attachment] = field(default_factory=list)
    extra: dict[str, Any] = field(default_factory=dict, repr=False)


@dataclass
class Registry:
    """Aggregate root: everything the prioritization engine needs."""

    processes: list[BusinessProcess] = field(default_factory=list)
    assets: list[ConfigurationItem] = field(default_factory=list)
    backlog: TechnicalDebtList = field(
        default_factory=lambda: TechnicalDebtList(id="backlog")
    )
    rule_table: PrioritizationRuleTable = field(
        default_factory=lambda: PrioritizationRuleTable(
            cells=dict(zip(RULE_TABLE_CELLS, (1, 2, 3, 4)))
        )
    )
    value_map: BusinessValueMap = field(default_factory=BusinessValueMap)
    extra: dict[str, Any] = field(default_factory=dict, repr=False)

    def process_index(self) -> dict[str, BusinessProcess]:
        return {p.id: p for p in self.processes}

    def asset_index(self) -> dict[str, ConfigurationItem]:
        return {a.id: a for a in self.assets}

    def item_index(self) -> dict[str, TechnicalDebtItem]:
        return {i.id: i for i in self.backlog.items}


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Finding:
    severity: Severity
    entity_id: str
    message: str


@dataclass
class ValidationReport:
    findings: list[Finding]

    @property
    def ok(self) -> bool:
        """True when no Error-severity finding is present (warnings allowed)."""
        return not self.errors()

    def errors(self) -> list[Finding]:
        return [f for f in self.findings if f.severity is Severity.ERROR]

    def warnings(self) -> list[Finding]:
        return [f for f in self.findings if f.severity is Severity.WARNING]


def sort_instant(dt: datetime) -> datetime:
    """Comparable instant for tie-breaking; naive timestamps count as UTC."""
    if dt.tzinfo is None:
        return dt.replace(tzinfo=timezone.utc)
    return dt


def validate_registry(registry: Registry) -> ValidationReport:
    """Check every cross-reference and structural invariant of the registry.

    Never raises: every broken invariant becomes a finding.  A registry with
    zero Error findings is accepted by all other operations.  The findings
    are a pure function of the registry contents, so permuting entity lists
    yields the same report.
    """
    findings: list[Finding] = []

    def error(entity_id: str, message: str) -> None:
        findings.append(Finding(Severity.ERROR, entity_id, message))

    def warning(entity_id: str, message: str) -> None:
        findings.append(Finding(Severity.WARNING, entity_id, message))

    def check_duplicates(kind: str, ids: list[str]) -> None:
        seen: dict[str, int] = {}
        for i in ids:
            seen[i] = seen.get(i, 0) + 1
        for i, count in seen.items():
            if count > 1:
                error(i, f"duplicate {kind} id ({count} occurrences)")

    check_duplicates("business process", [p.id for p in registry.processes])
    check_duplicates("configuration item", [a.id for a in registry.assets])
    check_duplicates("debt item", [i.id for i in registry.backlog.items])

    process_ids = {p.id for p in registry.processes}
    asset_ids = {a.id for a in registry.assets}

    for process in registry.processes:
        if process.id == "":
            error(process.id, "business process has an empty id")
        check_duplicates(
            f"element (within process {process.id})",
            [e.id for e in process.elements],
        )
        for element in process.elements:
            if element.id == "":
                error(process.id, "business process element has an empty id")

    for asset in registry.assets:
        if asset.id == "":
            error(asset.id, "configuration item has an empty id")
        for pid in sorted(asset.supports):
            if pid not in process_ids:
                error(asset.id, f"supports unknown business process {pid!r}")
        if not asset.supports:
            warning(
                asset.id,
                "configuration item supports no business process; "
                "it will be prioritized as if supporting an 'other' process",
            )

    for item in registry.backlog.items:
        if item.id == "":
            error(item.id, "debt item has an empty id")
        if not item.affects:
            error(item.id, "debt item affects no configuration item")
        for aid in sorted(item.affects):
            if aid not in asset_ids:
                error(item.id, f"affects unknown configuration item {aid!r}")

    for problem in registry.rule_table.problems():
        error("ruleTable", problem)

    scheme = registry.value_map.scheme
    if not scheme.labels:
        error("valueMap", "horizon scheme has no labels")
    label_seen: dict[str, int] = {}
    for label in scheme.labels:
        if label == "":
            error("valueMap", "horizon scheme contains an empty label")
        label_seen[label] = label_seen.get(label, 0) + 1
    for label, count in label_seen.items():
        if count > 1:
            error("valueMap", f"duplicate horizon label {label!r} ({count} occurrences)")

    subject_ids = process_ids | asset_ids
    scheme_labels = set(scheme.labels)
    pair_counts: dict[tuple[str, str], int] = {}
    metric_defs: dict[str, tuple[str, str]] = {}
    conflicting: set[str] = set()
    for att in registry.value_map.attachments:
        metric = att.metric
        if metric.id == "":
            error(att.subject_id, "attached business metric has an empty id")
        if att.subject_id not in subject_ids:
            error(
                att.subject_id,
                f"attachment subject {att.subject_id!r} is neither a process nor an asset",
            )
        if metric.horizon not in scheme_labels:
            error(
                metric.id,
                f"metric horizon {metric.horizon!r} is not in the horizon scheme",
            )
        pair = (att.subject_id, metric.id)
        pair_counts[pair] = pair_counts.get(pair, 0) + 1
        definition = (metric.name, metric.horizon)
        if metric.id in metric_defs and metric_defs[metric.id] != definition:
            conflicting.add(metric.id)
        metric_defs.setdefault(metric.id, definition)
    for (subject_id, metric_id), count in pair_counts.items():
        if count > 1:
            error(
                subject_id,
                f"metric {metric_id!r} attached to {subject_id!r} {count} times",
            )
    for metric_id in sorted(conflicting):
        error(
            metric_id,
            f"metric {metric_id!r} has conflicting definitions across attachments",
        )

    findings.sort(key=lambda f: (f.severity.value, f.entity_id, f.message))
    return ValidationReport(findings)
