"""Alignment between a technical prioritization and the business expectation.

Counts, per level and in total, how many items' team-supplied technical
rating matches the business rating derived from the processes they reach.
Percentages are kept exact internally and rendered at one decimal, half-up.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import MissingTechnicalPriority
from .model import Dimension, Level, Registry, TechnicalDebtList
from .value import business_priority

LEVELS_DESC = (Level.HIGH, Level.MEDIUM, Level.LOW)


def format_percent(value: Fraction) -> str:
    """Render an exact percentage at one decimal place, rounding half up."""
    tenths = value * 10
    whole = tenths.numerator // tenths.denominator
    if tenths - whole >= Fraction(1, 2):
        whole += 1
    return f"{whole // 10}.{whole % 10}"


def percent_display(matched: int, total: int) -> str:
    return "n/a" if total == 0 else format_percent(Fraction(100 * matched, total))


@dataclass(frozen=True)
class LevelStats:
    matched: int
    total: int

    @property
    def percentage(self) -> Fraction | None:
        if self.total == 0:
            return None
        return Fraction(100 * self.matched, self.total)

    @property
    def display(self) -> str:
        return percent_display(self.matched, self.total)


@dataclass
class AlignmentReport:
    dimension: Dimension
    per_level: dict[Level, LevelStats]
    total: LevelStats
    # Rows are the technical level, columns the business level.
    confusion: dict[Level, dict[Level, int]]


@dataclass(frozen=True)
class Misalignment:
    item_id: str
    technical: Level
    business: Level


def _pairs(
    backlog: TechnicalDebtList, registry: Registry, dimension: Dimension
) -> list[tuple[str, Level, Level]]:
    missing = [item.id for item in backlog.items if item.technical_priority is None]
    if missing:
        raise MissingTechnicalPriority(missing)
    return [
        (item.id, item.technical_priority, business_priority(item, registry, dimension))
        for item in backlog.items
    ]


def alignment_report(
    backlog: TechnicalDebtList, registry: Registry, dimension: Dimension
) -> AlignmentReport:
    """Per-level and total match counts plus the full confusion matrix.

    No item is ever dropped: every (technical, business) pair lands in
    exactly one confusion cell.
    """
    confusion = {t: {b: 0 for b in LEVELS_DESC} for t in LEVELS_DESC}
    for _, technical, business in _pairs(backlog, registry, dimension):
        confusion[technical][business] += 1
    per_level = {}
    for level in LEVELS_DESC:
        row_total = sum(confusion[level].values())
        per_level[level] = LevelStats(matched=confusion[level][level], total=row_total)
    total = LevelStats(
        matched=sum(per_level[lv].matched for lv in LEVELS_DESC),
        total=sum(per_level[lv].total for lv in LEVELS_DESC),
    )
    return AlignmentReport(
        dimension=dimension, per_level=per_level, total=total, confusion=confusion
    )


def misalignment_listing(
    backlog: TechnicalDebtList, registry: Registry, dimension: Dimension
) -> list[Misalignment]:
    """Every off-diagonal item, most business-critical first, ties by id."""
    mismatched = [
        Misalignment(item_id, technical, business)
        for item_id, technical, business in _pairs(backlog, registry, dimension)
        if technical is not business
    ]
    mismatched.sort(key=lambda m: (-m.business.strength, m.item_id))
    return mismatched
