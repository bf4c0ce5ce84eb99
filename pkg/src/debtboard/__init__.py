"""Business-driven technical debt prioritization engine."""

from .alignment import (
    AlignmentReport,
    LevelStats,
    Misalignment,
    alignment_report,
    format_percent,
    misalignment_listing,
    percent_display,
)
from .canvas import (
    BusinessValueCanvas,
    CanvasFormat,
    EntityRef,
    PrioritizationCanvas,
    Quadrant,
    build_business_value_canvas,
    build_prioritization_canvas,
    render_canvas,
)
from .errors import (
    DebtboardError,
    InvalidRuleTable,
    MissingTechnicalPriority,
    ParseError,
    UnknownItem,
    UnsupportedFormat,
    UnsupportedVersion,
)
from .fixtures import sales_registry
from .model import (
    AssetState,
    Attachment,
    BPElement,
    BusinessMetric,
    BusinessProcess,
    BusinessValueMap,
    ConfigurationItem,
    Dimension,
    Finding,
    HorizonScheme,
    Level,
    PrioritizationRuleTable,
    ProcessType,
    Registry,
    Severity,
    TechnicalDebtItem,
    TechnicalDebtList,
    ValidationReport,
    validate_registry,
)
from .rules import (
    BacklogDiff,
    DiffEntry,
    PrioritizedItem,
    default_rule_table,
    item_rank,
    prioritize_backlog,
    what_if,
)
from .storage import (
    FORMAT_VERSION,
    ImportReport,
    TrackerExportRow,
    import_tracker_export,
    load_registry,
    read_tracker_csv,
    read_tracker_json,
    save_registry,
)
from .value import (
    ImpactProfile,
    business_priority,
    impact_profile,
    payment_recommendation,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentReport",
    "AssetState",
    "Attachment",
    "BPElement",
    "BacklogDiff",
    "BusinessMetric",
    "BusinessProcess",
    "BusinessValueCanvas",
    "BusinessValueMap",
    "CanvasFormat",
    "ConfigurationItem",
    "DebtboardError",
    "DiffEntry",
    "Dimension",
    "EntityRef",
    "FORMAT_VERSION",
    "Finding",
    "HorizonScheme",
    "ImpactProfile",
    "ImportReport",
    "InvalidRuleTable",
    "Level",
    "LevelStats",
    "Misalignment",
    "MissingTechnicalPriority",
    "ParseError",
    "PrioritizationCanvas",
    "PrioritizationRuleTable",
    "PrioritizedItem",
    "ProcessType",
    "Quadrant",
    "Registry",
    "Severity",
    "TechnicalDebtItem",
    "TechnicalDebtList",
    "TrackerExportRow",
    "UnknownItem",
    "UnsupportedFormat",
    "UnsupportedVersion",
    "ValidationReport",
    "alignment_report",
    "build_business_value_canvas",
    "build_prioritization_canvas",
    "business_priority",
    "default_rule_table",
    "format_percent",
    "impact_profile",
    "import_tracker_export",
    "item_rank",
    "load_registry",
    "misalignment_listing",
    "payment_recommendation",
    "percent_display",
    "prioritize_backlog",
    "read_tracker_csv",
    "read_tracker_json",
    "render_canvas",
    "sales_registry",
    "save_registry",
    "validate_registry",
    "what_if",
]
