"""A small worked example registry for demos and tests.

A web shop: the Sales process (core, business-critical) runs on an
operational web frontend; an internal reporting process (non-core) waits on
a batch pipeline that is still being built.  Two debt items compete for
attention — one on each asset — so the backlog ordering makes the
rule-table's business-first stance visible at a glance.
"""

from __future__ import annotations

from datetime import datetime, timezone

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
    ProcessType,
    Registry,
    TechnicalDebtItem,
    TechnicalDebtList,
)
from .rules import default_rule_table


def sales_registry() -> Registry:
    processes = [
        BusinessProcess(
            id="bp-sales",
            name="Sales",
            type=ProcessType.CORE_SUPPORT,
            criticality=Level.HIGH,
            urgency=Level.HIGH,
            elements=[
                BPElement(
                    id="bpe-checkout",
                    name="Checkout",
                    priority=Level.HIGH,
                    criticality=Level.HIGH,
                )
            ],
        ),
        BusinessProcess(
            id="bp-reporting",
            name="Internal reporting",
            type=ProcessType.OTHER,
            criticality=Level.LOW,
            urgency=Level.LOW,
            elements=[],
        ),
    ]
    assets = [
        ConfigurationItem(
            id="ci-sales-web",
            name="Sales web",
            state=AssetState.OPERATIONAL,
            supports={"bp-sales"},
        ),
        ConfigurationItem(
            id="ci-reporting-batch",
            name="Reporting batch",
            state=AssetState.TO_BE_OPERATIONAL,
            supports={"bp-reporting"},
        ),
    ]
    backlog = TechnicalDebtList(
        id="backlog-main",
        items=[
            TechnicalDebtItem(
                id="td-batch-rewrite",
                title="Rewrite reporting batch scheduler",
                description="The scheduler is a pile of cron scripts; replace before go-live.",
                affects={"ci-reporting-batch"},
                created_at=datetime(2024, 2, 19, 14, 5, tzinfo=timezone.utc),
                technical_priority=Level.HIGH,
                debt_type_label="architecture",
            ),
            TechnicalDebtItem(
                id="td-checkout-cache",
                title="Replace ad-hoc checkout cache",
                description="Hand-rolled cache in the checkout path; invalidation bugs keep surfacing.",
                affects={"ci-sales-web"},
                created_at=datetime(2024, 3, 4, 9, 30, tzinfo=timezone.utc),
                technical_priority=Level.MEDIUM,
                debt_type_label="code",
            ),
        ],
    )
    scheme = HorizonScheme()
    value_map = BusinessValueMap(
        scheme=scheme,
        attachments=[
            Attachment(
                subject_id="bp-sales",
                metric=BusinessMetric(
                    id="m-sales-volume", name="sales volume", horizon="immediate"
                ),
            ),
            Attachment(
                subject_id="bp-sales",
                metric=BusinessMetric(
                    id="m-customer-relationship",
                    name="customer relationship",
                    horizon="immediate",
                ),
            ),
            Attachment(
                subject_id="bp-sales",
                metric=BusinessMetric(
                    id="m-revenue", name="revenue", horizon="short-term"
                ),
            ),
            Attachment(
                subject_id="ci-reporting-batch",
                metric=BusinessMetric(
                    id="m-infra-cost", name="infrastructure cost", horizon="short-term"
                ),
            ),
        ],
    )
    return Registry(
        processes=processes,
        assets=assets,
        backlog=backlog,
        rule_table=default_rule_table(),
        value_map=value_map,
    )
