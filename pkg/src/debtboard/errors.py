"""Exception types shared across the engine."""

from __future__ import annotations


class DebtboardError(Exception):
    """Base class for all engine errors."""


class UnknownItem(DebtboardError):
    """A debt item id does not resolve against the registry backlog."""

    def __init__(self, item_id: str):
        super().__init__(f"unknown technical debt item: {item_id!r}")
        self.item_id = item_id


class InvalidRuleTable(DebtboardError):
    """A candidate rule table violates totality or business dominance."""

    def __init__(self, problems: list[str]):
        super().__init__("invalid rule table: " + "; ".join(problems))
        self.problems = problems


class MissingTechnicalPriority(DebtboardError):
    """Alignment analysis needs a technical rating on every item."""

    def __init__(self, item_ids: list[str]):
        super().__init__(
            "items missing a technical priority: " + ", ".join(item_ids)
        )
        self.item_ids = item_ids


class UnsupportedFormat(DebtboardError):
    """Requested canvas output format is not one of the known formats."""

    def __init__(self, fmt: str, supported: tuple[str, ...]):
        super().__init__(
            f"unsupported format {fmt!r}; supported: {', '.join(supported)}"
        )
        self.format = fmt
        self.supported = supported


class ParseError(DebtboardError):
    """A registry or import document failed schema checks.

    ``location`` is a JSONPath-ish pointer into the offending document,
    e.g. ``$.processes[2].criticality``.
    """

    def __init__(self, location: str, reason: str):
        super().__init__(f"{location}: {reason}")
        self.location = location
        self.reason = reason


class UnsupportedVersion(DebtboardError):
    """Registry document declares a formatVersion this build cannot read."""

    def __init__(self, found: object, supported: int):
        super().__init__(
            f"unsupported formatVersion {found!r}; this build reads version {supported}"
        )
        self.found = found
        self.supported = supported
