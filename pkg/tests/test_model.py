from random import Random

from hypothesis import given, settings
from hypothesis import strategies as st

from debtboard.model import (
    AssetState,
    Attachment,
    BusinessMetric,
    BusinessProcess,
    BusinessValueMap,
    ConfigurationItem,
    HorizonScheme,
    Level,
    PrioritizationRuleTable,
    ProcessType,
    Registry,
    Severity,
    TechnicalDebtItem,
    TechnicalDebtList,
    validate_registry,
)
from support import make_registry

from datetime import datetime, timezone


NOW = datetime(2024, 5, 1, tzinfo=timezone.utc)


def test_level_ordering():
    assert Level.HIGH > Level.MEDIUM > Level.LOW
    assert max([Level.LOW, Level.HIGH, Level.MEDIUM]) is Level.HIGH


def test_level_from_label_case_insensitive():
    assert Level.from_label(" High ") is Level.HIGH
    assert Level.from_label("MEDIUM") is Level.MEDIUM


def test_level_from_label_rejects_garbage():
    try:
        Level.from_label("urgentish")
    except ValueError as exc:
        assert "urgentish" in str(exc)
    else:
        raise AssertionError("expected ValueError")


def _table(cs_op, cs_tbo, o_op, o_tbo):
    return PrioritizationRuleTable(
        cells={
            (ProcessType.CORE_SUPPORT, AssetState.OPERATIONAL): cs_op,
            (ProcessType.CORE_SUPPORT, AssetState.TO_BE_OPERATIONAL): cs_tbo,
            (ProcessType.OTHER, AssetState.OPERATIONAL): o_op,
            (ProcessType.OTHER, AssetState.TO_BE_OPERATIONAL): o_tbo,
        }
    )


class TestRuleTableProblems:
    def test_default_shape_is_clean(self):
        assert _table(1, 2, 3, 4).problems() == []

    def test_missing_cell(self):
        table = _table(1, 2, 3, 4)
        del table.cells[(ProcessType.OTHER, AssetState.OPERATIONAL)]
        assert any("missing cell" in p for p in table.problems())

    def test_non_positive_rank(self):
        assert any("positive" in p for p in _table(0, 2, 3, 4).problems())

    def test_bool_rank_rejected(self):
        assert any("positive" in p for p in _table(True, 2, 3, 4).problems())

    def test_dominance_violation_names_state(self):
        problems = _table(4, 2, 3, 4).problems()
        assert len(problems) == 1
        assert "operational" in problems[0] and "core-support rank 4" in problems[0]

    def test_equal_ranks_allowed(self):
        assert _table(3, 3, 3, 3).problems() == []


def _tiny_registry():
    process = BusinessProcess(
        id="bp-1",
        name="Sales",
        type=ProcessType.CORE_SUPPORT,
        criticality=Level.HIGH,
        urgency=Level.MEDIUM,
    )
    asset = ConfigurationItem(
        id="ci-1", name="Web", state=AssetState.OPERATIONAL, supports={"bp-1"}
    )
    item = TechnicalDebtItem(
        id="td-1",
        title="x",
        description="",
        affects={"ci-1"},
        created_at=NOW,
    )
    return Registry(
        processes=[process],
        assets=[asset],
        backlog=TechnicalDebtList(id="b", items=[item]),
    )


def test_valid_registry_has_no_findings():
    assert validate_registry(_tiny_registry()).findings == []


def test_empty_affects_is_an_error():
    registry = _tiny_registry()
    registry.backlog.items[0].affects = set()
    report = validate_registry(registry)
    assert [f.message for f in report.errors()] == [
        "debt item affects no configuration item"
    ]


def test_unknown_supports_reference_names_the_id():
    registry = _tiny_registry()
    registry.assets[0].supports = {"bp-99"}
    report = validate_registry(registry)
    assert any("bp-99" in f.message for f in report.errors())


def test_unsupporting_asset_yields_exactly_one_warning():
    # Enumerate the rules on a three-entity fixture: only the empty-supports
    # warning may fire, and nothing is an error.
    registry = _tiny_registry()
    registry.assets[0].supports = set()
    report = validate_registry(registry)
    assert report.errors() == []
    assert len(report.warnings()) == 1
    assert report.warnings()[0].entity_id == "ci-1"


def test_duplicate_ids_reported_once_per_id():
    registry = _tiny_registry()
    registry.processes.append(registry.processes[0])
    registry.processes.append(registry.processes[0])
    report = validate_registry(registry)
    dup = [f for f in report.errors() if "duplicate" in f.message]
    assert len(dup) == 1
    assert "3 occurrences" in dup[0].message


def test_unknown_affects_reference():
    registry = _tiny_registry()
    registry.backlog.items[0].affects = {"ci-1", "ci-zz"}
    report = validate_registry(registry)
    assert any("ci-zz" in f.message for f in report.errors())


def test_rule_table_problems_become_findings():
    registry = _tiny_registry()
    registry.rule_table = _table(4, 2, 3, 4)
    report = validate_registry(registry)
    assert any(f.entity_id == "ruleTable" for f in report.errors())


class TestValueMapValidation:
    def test_duplicate_horizon_label(self):
        registry = _tiny_registry()
        registry.value_map.scheme = HorizonScheme(labels=["now", "now"])
        report = validate_registry(registry)
        assert any("duplicate horizon label" in f.message for f in report.errors())

    def test_empty_scheme(self):
        registry = _tiny_registry()
        registry.value_map.scheme = HorizonScheme(labels=[])
        assert not validate_registry(registry).ok

    def test_metric_horizon_must_be_in_scheme(self):
        registry = _tiny_registry()
        registry.value_map.attachments = [
            Attachment("bp-1", BusinessMetric("m1", "revenue", "next-century"))
        ]
        report = validate_registry(registry)
        assert any("next-century" in f.message for f in report.errors())

    def test_unknown_subject(self):
        registry = _tiny_registry()
        registry.value_map.attachments = [
            Attachment("ghost", BusinessMetric("m1", "revenue", "immediate"))
        ]
        assert not validate_registry(registry).ok

    def test_duplicate_subject_metric_pair(self):
        registry = _tiny_registry()
        metric = BusinessMetric("m1", "revenue", "immediate")
        registry.value_map.attachments = [
            Attachment("bp-1", metric),
            Attachment("bp-1", metric),
        ]
        report = validate_registry(registry)
        assert any("attached to" in f.message for f in report.errors())

    def test_conflicting_metric_definitions(self):
        registry = _tiny_registry()
        registry.value_map.attachments = [
            Attachment("bp-1", BusinessMetric("m1", "revenue", "immediate")),
            Attachment("ci-1", BusinessMetric("m1", "revenue", "short-term")),
        ]
        report = validate_registry(registry)
        assert any("conflicting definitions" in f.message for f in report.errors())

    def test_asset_attachments_are_legal(self):
        registry = _tiny_registry()
        registry.value_map.attachments = [
            Attachment("ci-1", BusinessMetric("m1", "cost", "long-term"))
        ]
        assert validate_registry(registry).ok


def test_errors_sort_before_warnings():
    registry = _tiny_registry()
    registry.assets[0].supports = set()          # warning
    registry.backlog.items[0].affects = set()    # error
    findings = validate_registry(registry).findings
    severities = [f.severity for f in findings]
    assert severities == sorted(severities, key=lambda s: s.value)
    assert severities[0] is Severity.ERROR


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_generated_registries_validate_clean_of_errors(seed):
    registry = make_registry(Random(seed))
    assert validate_registry(registry).ok


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_validation_is_order_independent(seed):
    rng = Random(seed)
    registry = make_registry(rng)
    before = validate_registry(registry).findings
    rng.shuffle(registry.processes)
    rng.shuffle(registry.assets)
    rng.shuffle(registry.backlog.items)
    rng.shuffle(registry.value_map.attachments)
    after = validate_registry(registry).findings
    assert sorted(before, key=str) == sorted(after, key=str)


def test_registry_indexes():
    registry = _tiny_registry()
    assert set(registry.process_index()) == {"bp-1"}
    assert set(registry.asset_index()) == {"ci-1"}
    assert set(registry.item_index()) == {"td-1"}


def test_process_rating_picks_dimension():
    from debtboard.model import Dimension

    process = _tiny_registry().processes[0]
    assert process.rating(Dimension.CRITICALITY) is Level.HIGH
    assert process.rating(Dimension.URGENCY) is Level.MEDIUM


def test_value_map_defaults():
    assert BusinessValueMap().scheme.labels == ["immediate", "short-term", "long-term"]
