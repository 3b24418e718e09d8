"""
SVG rendering of rank-2 cell partitions.
Each alcove of the window is drawn as a triangle, filled by two-sided cell and
outlined by left cell, with a legend. The plane basis holds integer
approximations of the simple root images (87 stands for 50√3), so the drawing is
approximate; each vertex is computed exactly in that basis and rounded once at
emit time, so identical partitions give identical documents.
"""

import logging
import xml.etree.ElementTree as ET
from fractions import Fraction

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('svg_render')

# Integer approximations of the simple root images in the drawing plane (y pointing up)
PLANE_BASIS = {
    "A2": ((100, 0), (-50, 87)),
    "B2": ((100, -100), (0, 100)),
    "G2": ((100, 0), (-150, 87)),
}

FILLS = ["#f4f1de", "#81b29a", "#f2cc8f", "#e07a5f", "#3d405b", "#a8dadc", "#9c6644", "#cdb4db"]
STROKES = ["#1d3557", "#6a040f", "#2b9348", "#7b2cbf", "#e85d04", "#006d77", "#495057", "#b5179e"]
DASHES = ["", "4 2", "1 2", "6 2 1 2"]
MARGIN = 20
LEGEND_WIDTH = 220


class RenderError(ValueError):
    """Raised for partitions that cannot be drawn in the plane."""


def _to_plane(basis, point):
    x = sum(Fraction(point[j]) * basis[j][0] for j in range(2))
    y = sum(Fraction(point[j]) * basis[j][1] for j in range(2))
    return round(x), -round(y)


def render_svg(partition, elements=None):
    """
    Draw the alcoves of a rank-2 partition.

    Args:
        partition (CellPartition): Partition of a rank-2 group
        elements (list, optional): Window to draw, defaults to the partition window

    Returns:
        str: SVG document
    """
    group = partition.group
    if group.rank != 2 or group.name not in PLANE_BASIS:
        raise RenderError(f"Cell pictures need a rank-2 type, got {group.name}")
    basis = PLANE_BASIS[group.name]
    elements = partition.elements if elements is None else elements

    polygons = []
    for g in elements:
        vertices = [_to_plane(basis, v) for v in group.alcove_vertices(group.alcove_of(g))]
        polygons.append((g, vertices))

    xs = [x for _, vs in polygons for x, _ in vs]
    ys = [y for _, vs in polygons for _, y in vs]
    min_x, max_x, min_y, max_y = min(xs), max(xs), min(ys), max(ys)
    width = max_x - min_x + 2 * MARGIN
    height = max_y - min_y + 2 * MARGIN
    legend_rows = sorted(partition.two_sided_members)

    svg = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "width": str(width + LEGEND_WIDTH),
        "height": str(max(height, 30 + 20 * len(legend_rows))),
        "viewBox": f"0 0 {width + LEGEND_WIDTH} {max(height, 30 + 20 * len(legend_rows))}",
    })
    ET.SubElement(svg, "title").text = f"Cells of type {group.name}, radius {partition.radius}"
    layer = ET.SubElement(svg, "g", {"id": "alcoves"})

    for g, vertices in polygons:
        omega = partition.two_sided[g]
        left_id = partition.left_cells[g]
        attrs = {
            "points": " ".join(f"{x - min_x + MARGIN},{y - min_y + MARGIN}" for x, y in vertices),
            "fill": FILLS[omega % len(FILLS)],
            "stroke": STROKES[left_id % len(STROKES)],
            "stroke-width": "1",
            "data-element": group.key(g),
            "data-left-cell": str(left_id),
            "data-two-sided-cell": str(omega),
        }
        dash = DASHES[left_id % len(DASHES)]
        if dash:
            attrs["stroke-dasharray"] = dash
        if g.length == 0:
            attrs["stroke"] = "#000000"
            attrs["stroke-width"] = "3"
            attrs["id"] = "fundamental-alcove"
        ET.SubElement(layer, "polygon", attrs)

    legend = ET.SubElement(svg, "g", {"id": "legend"})
    left = width + 10
    for row, omega in enumerate(legend_rows):
        y = 20 + 20 * row
        value, certified = partition.a_value(omega)
        note = "" if partition.two_sided_complete[omega] else ", incomplete"
        a_text = "?" if value is None else f"{value}{'' if certified else '*'}"
        ET.SubElement(legend, "rect", {"x": str(left), "y": str(y - 12), "width": "14", "height": "14",
                                       "fill": FILLS[omega % len(FILLS)], "stroke": "#000000"})
        text = ET.SubElement(legend, "text", {"x": str(left + 20), "y": str(y), "font-size": "12"})
        text.text = f"cell {omega}: a = {a_text}, {len(partition.two_sided_members[omega])} elements{note}"

    logger.info(f"Rendered {len(polygons)} alcoves of {group.name}")
    return ET.tostring(svg, encoding="unicode")
