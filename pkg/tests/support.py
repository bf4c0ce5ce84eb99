"""Shared test helpers: random registry generation and independent oracles.

The oracles here deliberately avoid the library's own code paths: ranking is
re-derived by literal enumeration, percentages via the decimal module, and
graph text is re-parsed with a small regex scanner.  Agreement between the
library and these independent reimplementations is what the property tests
assert.
"""

from __future__ import annotations

import re
from datetime import datetime, timedelta, timezone
from decimal import ROUND_HALF_UP, Decimal
from random import Random

from debtboard.model import (
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

WORDS = (
    "Sales", "Billing", "Support", "Catalog", "Checkout", "Ledger",
    "Reporting", "Inventory", "Shipping", "Payroll", "Portal", "Gateway",
)

LEVELS = (Level.LOW, Level.MEDIUM, Level.HIGH)


def make_rule_table(rng: Random) -> PrioritizationRuleTable:
    """A random table satisfying totality and business dominance."""
    if rng.random() < 0.3:
        ranks = (1, 2, 3, 4)
    else:
        other_op = rng.randint(1, 6)
        other_tbo = rng.randint(1, 6)
        ranks = (
            rng.randint(1, other_op),
            rng.randint(1, other_tbo),
            other_op,
            other_tbo,
        )
    return PrioritizationRuleTable(
        cells={
            (ProcessType.CORE_SUPPORT, AssetState.OPERATIONAL): ranks[0],
            (ProcessType.CORE_SUPPORT, AssetState.TO_BE_OPERATIONAL): ranks[1],
            (ProcessType.OTHER, AssetState.OPERATIONAL): ranks[2],
            (ProcessType.OTHER, AssetState.TO_BE_OPERATIONAL): ranks[3],
        }
    )


def make_registry(
    rng: Random,
    max_entities: int = 20,
    *,
    with_technical: bool = False,
    default_table: bool = False,
) -> Registry:
    """A random registry that always passes validation (warnings allowed)."""
    n_processes = rng.randint(1, min(6, max_entities - 2))
    n_assets = rng.randint(1, min(6, max_entities - n_processes - 1))
    n_items = rng.randint(0, max(0, min(8, max_entities - n_processes - n_assets)))

    processes = []
    for i in range(n_processes):
        elements = [
            BPElement(
                id=f"p{i}e{j}",
                name=rng.choice(WORDS),
                priority=rng.choice(LEVELS),
                criticality=rng.choice(LEVELS),
            )
            for j in range(rng.randint(0, 2))
        ]
        processes.append(
            BusinessProcess(
                id=f"p{i}",
                name=rng.choice(WORDS),
                type=rng.choice((ProcessType.CORE_SUPPORT, ProcessType.OTHER)),
                criticality=rng.choice(LEVELS),
                urgency=rng.choice(LEVELS),
                elements=elements,
                priority=rng.choice(LEVELS) if rng.random() < 0.3 else None,
            )
        )

    assets = []
    for i in range(n_assets):
        supports = {
            p.id for p in processes if rng.random() < 0.4
        }
        assets.append(
            ConfigurationItem(
                id=f"a{i}",
                name=rng.choice(WORDS) + " " + rng.choice(("web", "batch", "db", "api")),
                state=rng.choice(
                    (AssetState.OPERATIONAL, AssetState.TO_BE_OPERATIONAL)
                ),
                supports=supports,
            )
        )

    base = datetime(2024, 1, 1, tzinfo=timezone.utc)
    items = []
    for i in range(n_items):
        affects = {a.id for a in rng.sample(assets, rng.randint(1, len(assets)))}
        items.append(
            TechnicalDebtItem(
                id=f"t{i}",
                title=f"{rng.choice(WORDS)} cleanup {i}",
                description="",
                affects=affects,
                created_at=base + timedelta(minutes=rng.randint(0, 5)),
                technical_priority=(
                    rng.choice(LEVELS)
                    if with_technical or rng.random() < 0.5
                    else None
                ),
                debt_type_label=rng.choice((None, "code", "architecture", "test")),
            )
        )

    scheme_labels = (
        ["immediate", "short-term", "long-term"]
        if rng.random() < 0.7
        else ["now", "soon", "later", "someday"][: rng.randint(1, 4)]
    )
    metric_catalog = [
        BusinessMetric(
            id=f"m{i}",
            name=rng.choice(("revenue", "churn", "cost", "satisfaction", "volume")),
            horizon=rng.choice(scheme_labels),
        )
        for i in range(rng.randint(0, 5))
    ]
    subjects = [p.id for p in processes] + [a.id for a in assets]
    attachments = []
    seen_pairs = set()
    for metric in metric_catalog:
        for subject in subjects:
            if rng.random() < 0.25 and (subject, metric.id) not in seen_pairs:
                seen_pairs.add((subject, metric.id))
                attachments.append(Attachment(subject_id=subject, metric=metric))

    return Registry(
        processes=processes,
        assets=assets,
        backlog=TechnicalDebtList(id="backlog", items=items),
        rule_table=(
            PrioritizationRuleTable(
                cells={
                    (ProcessType.CORE_SUPPORT, AssetState.OPERATIONAL): 1,
                    (ProcessType.CORE_SUPPORT, AssetState.TO_BE_OPERATIONAL): 2,
                    (ProcessType.OTHER, AssetState.OPERATIONAL): 3,
                    (ProcessType.OTHER, AssetState.TO_BE_OPERATIONAL): 4,
                }
            )
            if default_table
            else make_rule_table(rng)
        ),
        value_map=BusinessValueMap(
            scheme=HorizonScheme(labels=list(scheme_labels)),
            attachments=attachments,
        ),
    )


# --- independent oracles ------------------------------------------------------


def brute_rank(item: TechnicalDebtItem, registry: Registry) -> int:
    """Exhaustive min over all (asset, process) pairs, written from scratch."""
    table = registry.rule_table.cells
    ranks = []
    for asset in registry.assets:
        if asset.id not in item.affects:
            continue
        if asset.supports:
            for process in registry.processes:
                if process.id in asset.supports:
                    ranks.append(table[(process.type, asset.state)])
        else:
            ranks.append(table[(ProcessType.OTHER, asset.state)])
    return min(ranks)


def brute_order(registry: Registry) -> list[str]:
    """Backlog order recomputed independently of the rule engine."""

    def instant(dt: datetime) -> datetime:
        return dt if dt.tzinfo is not None else dt.replace(tzinfo=timezone.utc)

    keyed = [
        (brute_rank(item, registry), instant(item.created_at), item.id)
        for item in registry.backlog.items
    ]
    return [item_id for _, _, item_id in sorted(keyed)]


def brute_business_level(
    item: TechnicalDebtItem, registry: Registry, attr: str
) -> Level:
    """Strongest process rating reachable from the item; Low when none."""
    strengths = {Level.LOW: 0, Level.MEDIUM: 1, Level.HIGH: 2}
    best = None
    for asset in registry.assets:
        if asset.id not in item.affects:
            continue
        for process in registry.processes:
            if process.id in asset.supports:
                level = getattr(process, attr)
                if best is None or strengths[level] > strengths[best]:
                    best = level
    return best if best is not None else Level.LOW


def percent_oracle(matched: int, total: int) -> str:
    """One-decimal half-up rendering via the decimal module."""
    if total == 0:
        return "n/a"
    value = Decimal(100 * matched) / Decimal(total)
    return str(value.quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


# --- graph-text parse-back ----------------------------------------------------

_NODE_RE = re.compile(r'^\s*"((?:[^"\\]|\\.)*)" \[(?:shape=\w+|tooltip="((?:[^"\\]|\\.)*)")\];$')
_EDGE_RE = re.compile(r'^\s*"((?:[^"\\]|\\.)*)" -> "((?:[^"\\]|\\.)*)"(?: \[label="(?:[^"\\]|\\.)*"\])?;$')
_CLUSTER_RE = re.compile(r"^\s*subgraph cluster_(\w+) \{$")
_LABEL_RE = re.compile(r'^\s*label="((?:[^"\\]|\\.)*)";$')


def _unescape(text: str) -> str:
    return text.replace("\\n", "\n").replace('\\"', '"').replace("\\\\", "\\")


def parse_graph_text(text: str):
    """Recover (clusters, node name -> id, edges-by-name) from emitted DOT.

    Returns:
        clusters: dict cluster label -> set of entity ids
        ids: dict node name -> entity id (from tooltips)
        edges: set of (tail node name, head node name)
    """
    clusters: dict[str, set[str]] = {}
    ids: dict[str, str] = {}
    edges: set[tuple[str, str]] = set()
    current_label: str | None = None
    in_cluster = False
    for line in text.splitlines():
        if _CLUSTER_RE.match(line):
            in_cluster = True
            current_label = None
            continue
        if in_cluster and line.strip() == "}":
            in_cluster = False
            continue
        label_match = _LABEL_RE.match(line)
        if label_match and in_cluster:
            current_label = _unescape(label_match.group(1))
            clusters.setdefault(current_label, set())
            continue
        node_match = _NODE_RE.match(line)
        if node_match:
            name = _unescape(node_match.group(1))
            tooltip = node_match.group(2)
            if tooltip is not None:
                ids[name] = _unescape(tooltip)
                if in_cluster and current_label is not None:
                    clusters[current_label].add(_unescape(tooltip))
            continue
        edge_match = _EDGE_RE.match(line)
        if edge_match:
            edges.add((_unescape(edge_match.group(1)), _unescape(edge_match.group(2))))
    return clusters, ids, edges
