"""Business-value side: impact profiles and process-level business ratings."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnknownItem
from .model import (
    Dimension,
    HorizonScheme,
    Level,
    Registry,
    TechnicalDebtItem,
)


@dataclass
class ImpactProfile:
    """Metric names a debt item can touch, grouped by impact horizon.

    Every scheme label is present as a key; sets may be empty.  Metrics are
    deduplicated by metric id, displayed by name.
    """

    by_horizon: dict[str, set[str]]


def _reachable_subjects(item: TechnicalDebtItem, registry: Registry) -> set[str]:
    assets = registry.asset_index()
    subjects = set(item.affects)
    for asset_id in item.affects:
        asset = assets.get(asset_id)
        if asset is not None:
            subjects |= asset.supports
    return subjects


def _resolve_item(item: TechnicalDebtItem, registry: Registry) -> TechnicalDebtItem:
    stored = registry.item_index().get(item.id)
    if stored is None:
        raise UnknownItem(item.id)
    return stored


def impact_profile(item: TechnicalDebtItem, registry: Registry) -> ImpactProfile:
    """Union of metrics attached to the item's assets and their processes."""
    stored = _resolve_item(item, registry)
    subjects = _reachable_subjects(stored, registry)
    scheme = registry.value_map.scheme
    metrics_by_id = {}
    for attachment in registry.value_map.attachments:
        if attachment.subject_id in subjects:
            metrics_by_id[attachment.metric.id] = attachment.metric
    by_horizon: dict[str, set[str]] = {label: set() for label in scheme.labels}
    for metric in metrics_by_id.values():
        by_horizon[metric.horizon].add(metric.name)
    return ImpactProfile(by_horizon=by_horizon)


def business_priority(
    item: TechnicalDebtItem, registry: Registry, dimension: Dimension
) -> Level:
    """Strongest criticality or urgency over every process the item reaches.

    Items reaching no process rate Low: absence of any business linkage is
    the weakest evidenced claim, and validation already warns about it.
    """
    stored = _resolve_item(item, registry)
    processes = registry.process_index()
    assets = registry.asset_index()
    levels = []
    for asset_id in stored.affects:
        asset = assets.get(asset_id)
        if asset is None:
            continue
        for process_id in asset.supports:
            process = processes.get(process_id)
            if process is not None:
                levels.append(process.rating(dimension))
    return max(levels) if levels else Level.LOW


def payment_recommendation(profile: ImpactProfile, scheme: HorizonScheme) -> str | None:
    """Earliest horizon with any potential impact; None when all are empty."""
    for label in scheme.labels:
        if profile.by_horizon.get(label):
            return label
    return None
