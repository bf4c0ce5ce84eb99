"""Deterministic canvas documents: the four-quadrant prioritization board and
the horizon-column business-value board.

Three output formats: DOT graph text, SVG, and an aligned monospace table.
Rendering is a pure function of the canvas value; identical input gives
byte-identical output, so every format is golden-file testable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .errors import UnsupportedFormat
from .model import AssetState, ProcessType, Registry


class Quadrant(Enum):
    CORE_SUPPORT_PROCESSES = "core-support-processes"
    OTHER_PROCESSES = "other-processes"
    OPERATIONAL_ASSETS = "operational-assets"
    TO_BE_OPERATIONAL_ASSETS = "to-be-operational-assets"

    @property
    def title(self) -> str:
        return _QUADRANT_TITLES[self]


_QUADRANT_TITLES = {
    Quadrant.CORE_SUPPORT_PROCESSES: "Core/support processes",
    Quadrant.OTHER_PROCESSES: "Other processes",
    Quadrant.OPERATIONAL_ASSETS: "Operational assets",
    Quadrant.TO_BE_OPERATIONAL_ASSETS: "To-be operational assets",
}

# Left column: processes by type.  Right column: assets by state.
PROCESS_QUADRANTS = (Quadrant.CORE_SUPPORT_PROCESSES, Quadrant.OTHER_PROCESSES)
ASSET_QUADRANTS = (Quadrant.OPERATIONAL_ASSETS, Quadrant.TO_BE_OPERATIONAL_ASSETS)


@dataclass(frozen=True)
class EntityRef:
    id: str
    name: str


@dataclass
class PrioritizationCanvas:
    quadrants: dict[Quadrant, list[EntityRef]]
    # Dependency arrows, asset id -> process id; equals the supports relation.
    edges: set[tuple[str, str]]


class SubjectKind(Enum):
    PROCESS = "process"
    ASSET = "asset"


@dataclass
class ValueRow:
    subject: EntityRef
    kind: SubjectKind
    cells: dict[str, set[str]]


@dataclass
class BusinessValueCanvas:
    horizons: list[str]
    rows: list[ValueRow] = field(default_factory=list)


class CanvasFormat(Enum):
    GRAPH_TEXT = "graph-text"
    VECTOR_IMAGE = "vector-image"
    PLAIN_TABLE = "plain-table"


def _by_name(refs: list[EntityRef]) -> list[EntityRef]:
    return sorted(refs, key=lambda r: (r.name, r.id))


def build_prioritization_canvas(registry: Registry) -> PrioritizationCanvas:
    """Place every process and asset in its quadrant; edges mirror supports."""
    quadrants: dict[Quadrant, list[EntityRef]] = {q: [] for q in Quadrant}
    for process in registry.processes:
        quadrant = (
            Quadrant.CORE_SUPPORT_PROCESSES
            if process.type is ProcessType.CORE_SUPPORT
            else Quadrant.OTHER_PROCESSES
        )
        quadrants[quadrant].append(EntityRef(process.id, process.name))
    for asset in registry.assets:
        quadrant = (
            Quadrant.OPERATIONAL_ASSETS
            if asset.state is AssetState.OPERATIONAL
            else Quadrant.TO_BE_OPERATIONAL_ASSETS
        )
        quadrants[quadrant].append(EntityRef(asset.id, asset.name))
    for quadrant in quadrants:
        quadrants[quadrant] = _by_name(quadrants[quadrant])
    edges = {
        (asset.id, process_id)
        for asset in registry.assets
        for process_id in asset.supports
    }
    return PrioritizationCanvas(quadrants=quadrants, edges=edges)


def build_business_value_canvas(registry: Registry) -> BusinessValueCanvas:
    """One row per process and asset, metric names partitioned by horizon."""
    horizons = list(registry.value_map.scheme.labels)
    names_by_subject: dict[str, dict[str, set[str]]] = {}
    for attachment in registry.value_map.attachments:
        cell = names_by_subject.setdefault(attachment.subject_id, {})
        cell.setdefault(attachment.metric.horizon, set()).add(attachment.metric.name)
    rows = []
    for kind, refs in (
        (SubjectKind.PROCESS, _by_name([EntityRef(p.id, p.name) for p in registry.processes])),
        (SubjectKind.ASSET, _by_name([EntityRef(a.id, a.name) for a in registry.assets])),
    ):
        for ref in refs:
            attached = names_by_subject.get(ref.id, {})
            cells = {label: set(attached.get(label, set())) for label in horizons}
            rows.append(ValueRow(subject=ref, kind=kind, cells=cells))
    return BusinessValueCanvas(horizons=horizons, rows=rows)


def render_canvas(
    canvas: PrioritizationCanvas | BusinessValueCanvas,
    fmt: CanvasFormat | str,
) -> bytes:
    """Render a canvas to document bytes in the requested format."""
    if not isinstance(fmt, CanvasFormat):
        try:
            fmt = CanvasFormat(fmt)
        except ValueError:
            raise UnsupportedFormat(
                str(fmt), tuple(f.value for f in CanvasFormat)
            ) from None
    if isinstance(canvas, PrioritizationCanvas):
        renderer = {
            CanvasFormat.GRAPH_TEXT: _prioritization_dot,
            CanvasFormat.VECTOR_IMAGE: _prioritization_svg,
            CanvasFormat.PLAIN_TABLE: _prioritization_table,
        }[fmt]
    else:
        renderer = {
            CanvasFormat.GRAPH_TEXT: _business_value_dot,
            CanvasFormat.VECTOR_IMAGE: _business_value_svg,
            CanvasFormat.PLAIN_TABLE: _business_value_table,
        }[fmt]
    return renderer(canvas).encode("utf-8")


# --- shared helpers ---------------------------------------------------------


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")


def _xml_escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def _plain(text: str) -> str:
    # Monospace tables rely on one-line cells.
    return " ".join(text.split()) or "-"


def _allocate_node_names(groups: Iterable[list[EntityRef]]) -> dict[str, str]:
    """Map entity id -> display-unique node name.

    Uses the entity name when unique, otherwise disambiguates with the id,
    then with primes in the pathological case of literal clashes.
    """
    names: dict[str, str] = {}
    used: set[str] = set()
    for refs in groups:
        for ref in refs:
            candidate = ref.name
            if candidate in used:
                candidate = f"{ref.name} ({ref.id})"
            while candidate in used:
                candidate += "'"
            used.add(candidate)
            names[ref.id] = candidate
    return names


# --- prioritization canvas renderers ---------------------------------------

_QUADRANT_ORDER = (
    Quadrant.CORE_SUPPORT_PROCESSES,
    Quadrant.OTHER_PROCESSES,
    Quadrant.OPERATIONAL_ASSETS,
    Quadrant.TO_BE_OPERATIONAL_ASSETS,
)


def _prioritization_dot(canvas: PrioritizationCanvas) -> str:
    node_names = _allocate_node_names(canvas.quadrants[q] for q in _QUADRANT_ORDER)
    lines = [
        "digraph prioritization_canvas {",
        "  rankdir=RL;",
        "  node [shape=box];",
    ]
    for quadrant in _QUADRANT_ORDER:
        cluster = quadrant.value.replace("-", "_")
        lines.append(f"  subgraph cluster_{cluster} {{")
        lines.append(f'    label="{_dot_escape(quadrant.title)}";')
        for ref in canvas.quadrants[quadrant]:
            lines.append(
                f'    "{_dot_escape(node_names[ref.id])}" [tooltip="{_dot_escape(ref.id)}"];'
            )
        lines.append("  }")
    for asset_id, process_id in sorted(
        canvas.edges, key=lambda e: (node_names[e[0]], node_names[e[1]])
    ):
        lines.append(
            f'  "{_dot_escape(node_names[asset_id])}" -> "{_dot_escape(node_names[process_id])}";'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


_SVG_COL_W = 420
_SVG_PAD = 20
_SVG_GAP = 40
_SVG_ROW_H = 24
_SVG_TITLE_H = 34


def _quadrant_height(count: int) -> int:
    return _SVG_TITLE_H + _SVG_ROW_H * count + 10


def _prioritization_svg(canvas: PrioritizationCanvas) -> str:
    left_x = _SVG_PAD
    right_x = _SVG_PAD + _SVG_COL_W + _SVG_GAP
    width = right_x + _SVG_COL_W + _SVG_PAD

    bands = (
        (Quadrant.CORE_SUPPORT_PROCESSES, Quadrant.OPERATIONAL_ASSETS),
        (Quadrant.OTHER_PROCESSES, Quadrant.TO_BE_OPERATIONAL_ASSETS),
    )
    anchors: dict[str, tuple[int, int]] = {}
    parts: list[str] = []
    y = _SVG_PAD
    for left_q, right_q in bands:
        band_h = max(
            _quadrant_height(len(canvas.quadrants[left_q])),
            _quadrant_height(len(canvas.quadrants[right_q])),
        )
        for quadrant, x in ((left_q, left_x), (right_q, right_x)):
            parts.append(
                f'<rect x="{x}" y="{y}" width="{_SVG_COL_W}" height="{band_h}" '
                f'fill="none" stroke="#444"/>'
            )
            parts.append(
                f'<text x="{x + 10}" y="{y + 22}" font-family="monospace" '
                f'font-size="15" font-weight="bold">{_xml_escape(quadrant.title)}</text>'
            )
            for i, ref in enumerate(canvas.quadrants[quadrant]):
                baseline = y + _SVG_TITLE_H + _SVG_ROW_H * (i + 1) - 8
                parts.append(
                    f'<g><title>{_xml_escape(ref.id)}</title>'
                    f'<text x="{x + 14}" y="{baseline}" font-family="monospace" '
                    f'font-size="14">{_xml_escape(ref.name)}</text></g>'
                )
                anchor_x = x + _SVG_COL_W if quadrant in PROCESS_QUADRANTS else x
                anchors[ref.id] = (anchor_x, baseline - 5)
        y += band_h + _SVG_PAD
    height = y

    edge_parts = []
    for asset_id, process_id in sorted(canvas.edges):
        if asset_id in anchors and process_id in anchors:
            (x1, y1), (x2, y2) = anchors[asset_id], anchors[process_id]
            edge_parts.append(
                f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                f'stroke="#888" marker-end="url(#arrow)"/>'
            )

    header = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        "<defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" "
        "refY=\"3\" orient=\"auto\"><path d=\"M0,0 L7,3 L0,6 z\" fill=\"#888\"/>"
        "</marker></defs>\n"
    )
    return header + "\n".join(edge_parts + parts) + "\n</svg>\n"


def _pad_columns(left: list[str], right: list[str]) -> list[str]:
    depth = max(len(left), len(right))
    left = left + [""] * (depth - len(left))
    right = right + [""] * (depth - len(right))
    width = max(len(cell) for cell in left)
    return [f"{l:<{width}} | {r}".rstrip() for l, r in zip(left, right)]


def _prioritization_table(canvas: PrioritizationCanvas) -> str:
    def column(quadrant: Quadrant) -> list[str]:
        return [quadrant.title] + [
            f"{_plain(ref.name)} [{ref.id}]" for ref in canvas.quadrants[quadrant]
        ]

    names: dict[str, str] = {}
    for quadrant in _QUADRANT_ORDER:
        for ref in canvas.quadrants[quadrant]:
            names[ref.id] = _plain(ref.name)

    lines = _pad_columns(
        column(Quadrant.CORE_SUPPORT_PROCESSES), column(Quadrant.OPERATIONAL_ASSETS)
    )
    lines.append("")
    lines += _pad_columns(
        column(Quadrant.OTHER_PROCESSES), column(Quadrant.TO_BE_OPERATIONAL_ASSETS)
    )
    lines.append("")
    lines.append("Edges (asset -> process)")
    for asset_id, process_id in sorted(
        canvas.edges, key=lambda e: (names.get(e[0], ""), e[0], names.get(e[1], ""), e[1])
    ):
        lines.append(
            f"{names.get(asset_id, '?')} [{asset_id}] -> "
            f"{names.get(process_id, '?')} [{process_id}]"
        )
    return "\n".join(lines) + "\n"


# --- business-value canvas renderers ----------------------------------------


def _business_value_dot(canvas: BusinessValueCanvas) -> str:
    node_names = _allocate_node_names([[row.subject for row in canvas.rows]])
    metric_names = sorted({name for row in canvas.rows for cell in row.cells.values() for name in cell})
    used = set(node_names.values())
    metric_nodes = {}
    for name in metric_names:
        candidate = name
        while candidate in used:
            candidate += "'"
        used.add(candidate)
        metric_nodes[name] = candidate

    lines = [
        "digraph business_value_canvas {",
        "  rankdir=LR;",
        "  node [shape=box];",
    ]
    for row in canvas.rows:
        lines.append(
            f'  "{_dot_escape(node_names[row.subject.id])}" '
            f'[tooltip="{_dot_escape(row.subject.id)}"];'
        )
    for name in metric_names:
        lines.append(f'  "{_dot_escape(metric_nodes[name])}" [shape=ellipse];')
    edges = []
    for row in canvas.rows:
        for label in canvas.horizons:
            for name in sorted(row.cells.get(label, set())):
                edges.append((node_names[row.subject.id], metric_nodes[name], label))
    for subject, metric, label in sorted(edges):
        lines.append(
            f'  "{_dot_escape(subject)}" -> "{_dot_escape(metric)}" '
            f'[label="{_dot_escape(label)}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


_BV_SUBJECT_W = 280
_BV_COL_W = 230
_BV_LINE_H = 18


def _business_value_svg(canvas: BusinessValueCanvas) -> str:
    width = _SVG_PAD * 2 + _BV_SUBJECT_W + _BV_COL_W * len(canvas.horizons)
    parts: list[str] = []
    y = _SVG_PAD
    header_h = 30

    def cell_x(col: int) -> int:
        return _SVG_PAD + (_BV_SUBJECT_W + _BV_COL_W * (col - 1) if col else 0)

    headers = ["Subject"] + list(canvas.horizons)
    for col, label in enumerate(headers):
        w = _BV_SUBJECT_W if col == 0 else _BV_COL_W
        parts.append(
            f'<rect x="{cell_x(col)}" y="{y}" width="{w}" height="{header_h}" '
            f'fill="none" stroke="#444"/>'
        )
        parts.append(
            f'<text x="{cell_x(col) + 8}" y="{y + 20}" font-family="monospace" '
            f'font-size="14" font-weight="bold">{_xml_escape(label)}</text>'
        )
    y += header_h
    for row in canvas.rows:
        depth = max([1] + [len(row.cells.get(label, set())) for label in canvas.horizons])
        row_h = 12 + _BV_LINE_H * depth
        parts.append(
            f'<rect x="{cell_x(0)}" y="{y}" width="{_BV_SUBJECT_W}" height="{row_h}" '
            f'fill="none" stroke="#444"/>'
        )
        parts.append(
            f'<g><title>{_xml_escape(row.subject.id)}</title>'
            f'<text x="{cell_x(0) + 8}" y="{y + 22}" font-family="monospace" '
            f'font-size="14">{_xml_escape(row.subject.name)}</text></g>'
        )
        for col, label in enumerate(canvas.horizons, start=1):
            parts.append(
                f'<rect x="{cell_x(col)}" y="{y}" width="{_BV_COL_W}" height="{row_h}" '
                f'fill="none" stroke="#444"/>'
            )
            for i, name in enumerate(sorted(row.cells.get(label, set()))):
                parts.append(
                    f'<text x="{cell_x(col) + 8}" y="{y + 22 + _BV_LINE_H * i}" '
                    f'font-family="monospace" font-size="13">{_xml_escape(name)}</text>'
                )
        y += row_h
    height = y + _SVG_PAD
    header = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
    )
    return header + "\n".join(parts) + "\n</svg>\n"


def _business_value_table(canvas: BusinessValueCanvas) -> str:
    headers = ["Subject"] + list(canvas.horizons)
    rows = []
    for row in canvas.rows:
        cells = [f"{_plain(row.subject.name)} [{row.subject.id}]"]
        for label in canvas.horizons:
            cells.append("; ".join(sorted(row.cells.get(label, set()))))
        rows.append(cells)
    widths = [
        max([len(headers[i])] + [len(r[i]) for r in rows]) for i in range(len(headers))
    ]
    lines = [
        " | ".join(f"{headers[i]:<{widths[i]}}" for i in range(len(headers))).rstrip(),
        "-+-".join("-" * widths[i] for i in range(len(headers))),
    ]
    for cells in rows:
        lines.append(
            " | ".join(f"{cells[i]:<{widths[i]}}" for i in range(len(headers))).rstrip()
        )
    return "\n".join(lines) + "\n"
