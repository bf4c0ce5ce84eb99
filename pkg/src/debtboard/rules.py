"""Rule engine: rank debt items by how their assets touch business processes.

An item's rank is the minimum rule-table rank over every (affected asset,
supported process) pair it can reach; the best cell wins, because a debt
touching anything business-critical is business-critical.  An asset that
supports no process contributes a virtual pair classified as an 'other'
process at the asset's state.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidRuleTable, UnknownItem
from .model import (
    RULE_TABLE_CELLS,
    AssetState,
    PrioritizationRuleTable,
    ProcessType,
    Registry,
    TechnicalDebtItem,
    sort_instant,
)

DEFAULT_RULE_RANKS = (1, 2, 3, 4)


def default_rule_table() -> PrioritizationRuleTable:
    """Ranks 1-4 with core/support before other, operational before to-be.

    Debt on live assets hurts the running business first, so within each
    process type the operational state ranks ahead.
    """
    return PrioritizationRuleTable(cells=dict(zip(RULE_TABLE_CELLS, DEFAULT_RULE_RANKS)))


@dataclass(frozen=True)
class PrioritizedItem:
    item_id: str
    rank: int
    decisive_cell: tuple[ProcessType, AssetState]
    # The (asset, process) pair that produced the rank; process is None when
    # the decisive asset supports no process.  Ties break lexicographically.
    decisive_asset: str
    decisive_process: str | None


@dataclass(frozen=True)
class DiffEntry:
    item_id: str
    old_rank: int
    new_rank: int
    old_position: int
    new_position: int

    @property
    def position_delta(self) -> int:
        """Positive when the item moved toward the front of the backlog."""
        return self.old_position - self.new_position


@dataclass
class BacklogDiff:
    entries: list[DiffEntry]

    def moved(self) -> list[DiffEntry]:
        return [e for e in self.entries if e.position_delta != 0]


def _rank_candidates(
    item: TechnicalDebtItem, registry: Registry, table: PrioritizationRuleTable
) -> list[tuple[int, str, str | None, tuple[ProcessType, AssetState]]]:
    assets = registry.asset_index()
    processes = registry.process_index()
    candidates = []
    for asset_id in sorted(item.affects):
        asset = assets.get(asset_id)
        if asset is None:
            raise ValueError(
                f"registry not validated: item {item.id!r} affects unknown asset {asset_id!r}"
            )
        if not asset.supports:
            cell = (ProcessType.OTHER, asset.state)
            candidates.append((table.rank_for(*cell), asset_id, None, cell))
            continue
        for process_id in sorted(asset.supports):
            process = processes.get(process_id)
            if process is None:
                raise ValueError(
                    f"registry not validated: asset {asset_id!r} supports unknown process {process_id!r}"
                )
            cell = (process.type, asset.state)
            candidates.append((table.rank_for(*cell), asset_id, process_id, cell))
    return candidates


def item_rank(
    item: TechnicalDebtItem,
    registry: Registry,
    *,
    table: PrioritizationRuleTable | None = None,
) -> PrioritizedItem:
    """Rank one backlog item; the registry's copy of the item is authoritative."""
    stored = registry.item_index().get(item.id)
    if stored is None:
        raise UnknownItem(item.id)
    if table is None:
        table = registry.rule_table
    best = min(
        _rank_candidates(stored, registry, table),
        key=lambda c: (c[0], c[1], c[2] or ""),
    )
    rank, asset_id, process_id, cell = best
    return PrioritizedItem(
        item_id=stored.id,
        rank=rank,
        decisive_cell=cell,
        decisive_asset=asset_id,
        decisive_process=process_id,
    )


def prioritize_backlog(
    registry: Registry, *, table: PrioritizationRuleTable | None = None
) -> list[PrioritizedItem]:
    """Whole backlog ordered by rank, then created-at, then item id.

    Equal-rank items are the stakeholders' call; the engine only guarantees a
    stable, explainable order.
    """
    ranked = [item_rank(item, registry, table=table) for item in registry.backlog.items]
    by_id = registry.item_index()
    ranked.sort(
        key=lambda p: (p.rank, sort_instant(by_id[p.item_id].created_at), p.item_id)
    )
    return ranked


def what_if(registry: Registry, candidate: PrioritizationRuleTable) -> BacklogDiff:
    """Compare backlog orderings under the current and a candidate rule table.

    The registry is not modified.  Raises InvalidRuleTable when the candidate
    breaks totality or business dominance.
    """
    problems = candidate.problems()
    if problems:
        raise InvalidRuleTable(problems)
    old = prioritize_backlog(registry)
    new = prioritize_backlog(registry, table=candidate)
    old_by_id = {p.item_id: (p.rank, pos) for pos, p in enumerate(old, start=1)}
    entries = []
    for pos, ranked in enumerate(new, start=1):
        old_rank, old_pos = old_by_id[ranked.item_id]
        entries.append(
            DiffEntry(
                item_id=ranked.item_id,
                old_rank=old_rank,
                new_rank=ranked.rank,
                old_position=old_pos,
                new_position=pos,
            )
        )
    return BacklogDiff(entries=entries)
