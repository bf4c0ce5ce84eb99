from datetime import datetime, timezone
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from debtboard.errors import InvalidRuleTable, UnknownItem
from debtboard.model import (
    AssetState,
    BusinessProcess,
    ConfigurationItem,
    Level,
    PrioritizationRuleTable,
    ProcessType,
    Registry,
    TechnicalDebtItem,
    TechnicalDebtList,
)
from debtboard.rules import default_rule_table, item_rank, prioritize_backlog, what_if
from support import brute_order, brute_rank, make_registry

T0 = datetime(2024, 1, 1, tzinfo=timezone.utc)


def test_default_table_core_operational_is_rank_one():
    table = default_rule_table()
    assert table.rank_for(ProcessType.CORE_SUPPORT, AssetState.OPERATIONAL) == 1


def test_default_table_satisfies_dominance():
    assert default_rule_table().problems() == []


def four_cell_registry():
    """One item per rule-table cell, each through a dedicated asset/process."""
    combos = [
        (ProcessType.CORE_SUPPORT, AssetState.OPERATIONAL),
        (ProcessType.CORE_SUPPORT, AssetState.TO_BE_OPERATIONAL),
        (ProcessType.OTHER, AssetState.OPERATIONAL),
        (ProcessType.OTHER, AssetState.TO_BE_OPERATIONAL),
    ]
    processes, assets, items = [], [], []
    for i, (ptype, state) in enumerate(combos):
        processes.append(
            BusinessProcess(
                id=f"p{i}", name=f"P{i}", type=ptype,
                criticality=Level.MEDIUM, urgency=Level.MEDIUM,
            )
        )
        assets.append(
            ConfigurationItem(id=f"a{i}", name=f"A{i}", state=state, supports={f"p{i}"})
        )
        items.append(
            TechnicalDebtItem(
                id=f"t{i}", title=f"T{i}", description="",
                affects={f"a{i}"}, created_at=T0,
            )
        )
    return Registry(
        processes=processes, assets=assets,
        backlog=TechnicalDebtList(id="b", items=items),
    )


def test_default_table_covers_all_four_ranks_without_ties():
    registry = four_cell_registry()
    ranks = [item_rank(i, registry).rank for i in registry.backlog.items]
    assert ranks == [1, 2, 3, 4]


def test_sales_fixture_decisive_pair(sales):
    ranked = item_rank(sales.item_index()["td-checkout-cache"], sales)
    assert ranked.rank == 1
    assert ranked.decisive_asset == "ci-sales-web"
    assert ranked.decisive_process == "bp-sales"
    assert ranked.decisive_cell == (ProcessType.CORE_SUPPORT, AssetState.OPERATIONAL)


def test_min_aggregation_over_multiple_pairs(sales):
    item = sales.item_index()["td-batch-rewrite"]
    item.affects = {"ci-reporting-batch", "ci-sales-web"}
    assert item_rank(item, sales).rank == 1
    assert item_rank(item, sales).decisive_asset == "ci-sales-web"


def test_unsupporting_asset_counts_as_other(sales):
    sales.assets.append(
        ConfigurationItem(id="ci-island", name="Island", state=AssetState.OPERATIONAL)
    )
    sales.backlog.items.append(
        TechnicalDebtItem(
            id="td-island", title="x", description="",
            affects={"ci-island"}, created_at=T0,
        )
    )
    ranked = item_rank(sales.item_index()["td-island"], sales)
    assert ranked.rank == 3  # (other, operational) under the default table
    assert ranked.decisive_process is None


def test_unknown_item_raises(sales):
    ghost = TechnicalDebtItem(
        id="td-ghost", title="x", description="", affects={"ci-sales-web"},
        created_at=T0,
    )
    with pytest.raises(UnknownItem):
        item_rank(ghost, sales)


def test_registry_copy_of_item_is_authoritative(sales):
    # Pass a stale object with different affects; the stored item wins.
    stale = TechnicalDebtItem(
        id="td-checkout-cache", title="stale", description="",
        affects={"ci-reporting-batch"}, created_at=T0,
    )
    assert item_rank(stale, sales).decisive_asset == "ci-sales-web"


def test_backlog_order_breaks_ties_by_created_then_id():
    registry = four_cell_registry()
    # Make all cells rank equally so only the tie-breakers order the list.
    registry.rule_table = PrioritizationRuleTable(
        cells={cell: 1 for cell in registry.rule_table.cells}
    )
    registry.backlog.items[0].created_at = datetime(2024, 1, 2, tzinfo=timezone.utc)
    ordered = [p.item_id for p in prioritize_backlog(registry)]
    assert ordered == ["t1", "t2", "t3", "t0"]


def test_naive_timestamps_compare_as_utc():
    registry = four_cell_registry()
    registry.backlog.items[0].created_at = datetime(2024, 1, 1, 0, 0, 1)  # naive
    assert [p.item_id for p in prioritize_backlog(registry)] == ["t0", "t1", "t2", "t3"]


def swapped_table():
    return PrioritizationRuleTable(
        cells={
            (ProcessType.CORE_SUPPORT, AssetState.OPERATIONAL): 2,
            (ProcessType.CORE_SUPPORT, AssetState.TO_BE_OPERATIONAL): 1,
            (ProcessType.OTHER, AssetState.OPERATIONAL): 4,
            (ProcessType.OTHER, AssetState.TO_BE_OPERATIONAL): 3,
        }
    )


def test_what_if_reports_moves():
    registry = four_cell_registry()
    diff = what_if(registry, swapped_table())
    by_id = {e.item_id: e for e in diff.entries}
    assert by_id["t1"].new_position == 1 and by_id["t1"].position_delta == 1
    assert by_id["t0"].new_position == 2 and by_id["t0"].position_delta == -1
    assert [e.new_position for e in diff.entries] == [1, 2, 3, 4]
    assert len(diff.moved()) == 4


def test_what_if_same_table_reports_no_moves():
    registry = four_cell_registry()
    diff = what_if(registry, default_rule_table())
    assert diff.moved() == []
    assert all(e.old_rank == e.new_rank for e in diff.entries)


def test_what_if_rejects_invalid_table():
    registry = four_cell_registry()
    bad = default_rule_table()
    bad.cells[(ProcessType.CORE_SUPPORT, AssetState.OPERATIONAL)] = 9
    with pytest.raises(InvalidRuleTable) as exc_info:
        what_if(registry, bad)
    assert any("dominance" in p for p in exc_info.value.problems)


def test_what_if_does_not_mutate_registry():
    registry = four_cell_registry()
    before = [p.item_id for p in prioritize_backlog(registry)]
    what_if(registry, swapped_table())
    assert [p.item_id for p in prioritize_backlog(registry)] == before


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=100, deadline=None)
def test_item_rank_matches_brute_force(seed):
    registry = make_registry(Random(seed))
    for item in registry.backlog.items:
        assert item_rank(item, registry).rank == brute_rank(item, registry)


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=100, deadline=None)
def test_backlog_order_matches_brute_force(seed):
    registry = make_registry(Random(seed))
    assert [p.item_id for p in prioritize_backlog(registry)] == brute_order(registry)


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_rank_is_min_over_candidate_cells(seed):
    registry = make_registry(Random(seed))
    cells = registry.rule_table.cells
    for item in registry.backlog.items:
        ranked = item_rank(item, registry)
        assert ranked.rank == cells[ranked.decisive_cell]
        assert ranked.decisive_asset in item.affects
