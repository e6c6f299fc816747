"""Core geometry and domain types shared by the whole toolkit.

Pixel coordinates follow raster conventions: origin at the top-left corner,
x grows rightward, y grows downward.  Object classes map to wire indices as
node = 0 and the twelve edge direction classes = 1..12 in declaration order
of :class:`EdgeClass`.

All types are immutable values and all operations are pure, so everything
here is safe to use from any number of concurrent workers.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class BBox:
    """Axis-aligned box in pixel coordinates, x0 <= x1 and y0 <= y1."""

    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self) -> None:
        if not (self.x0 <= self.x1 and self.y0 <= self.y1):
            raise ValueError(f"invalid box: {self}")

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def center(self) -> Point:
        return Point((self.x0 + self.x1) / 2.0, (self.y0 + self.y1) / 2.0)

    def contains_point(self, p: Point) -> bool:
        return self.x0 <= p.x <= self.x1 and self.y0 <= p.y <= self.y1

    def contains_box(self, other: "BBox") -> bool:
        return (self.x0 <= other.x0 and other.x1 <= self.x1
                and self.y0 <= other.y0 and other.y1 <= self.y1)

    def intersection_area(self, other: "BBox") -> float:
        w = min(self.x1, other.x1) - max(self.x0, other.x0)
        h = min(self.y1, other.y1) - max(self.y0, other.y0)
        if w <= 0.0 or h <= 0.0:
            return 0.0
        return w * h

    def expand(self, margin: float) -> "BBox":
        return BBox(self.x0 - margin, self.y0 - margin,
                    self.x1 + margin, self.y1 + margin)

    def translate(self, dx: float, dy: float) -> "BBox":
        return BBox(self.x0 + dx, self.y0 + dy, self.x1 + dx, self.y1 + dy)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x0, self.y0, self.x1, self.y1)


def iou(a: BBox, b: BBox) -> float:
    """Intersection area over union area of two boxes, 0.0 when the union
    is empty."""
    inter = a.intersection_area(b)
    union = a.area + b.area - inter
    if union <= 0.0:
        return 0.0
    return inter / union


def containment_ratio(inner: BBox, outer: BBox) -> float:
    """Fraction of ``inner``'s area that lies inside ``outer``.

    A zero-area ``inner`` counts as fully contained (1.0) when it lies
    inside ``outer`` and as 0.0 otherwise.
    """
    if inner.area <= 0.0:
        return 1.0 if outer.contains_box(inner) else 0.0
    return inner.intersection_area(outer) / inner.area


def point_to_box_distance(p: Point, box: BBox) -> float:
    """Euclidean distance from a point to a box; 0 when the point is inside."""
    dx = max(box.x0 - p.x, 0.0, p.x - box.x1)
    dy = max(box.y0 - p.y, 0.0, p.y - box.y1)
    return math.hypot(dx, dy)


def point_to_segment_distance(p: Point, a: Point, b: Point) -> float:
    ax, ay = b.x - a.x, b.y - a.y
    seg_len_sq = ax * ax + ay * ay
    if seg_len_sq == 0.0:
        return math.hypot(p.x - a.x, p.y - a.y)
    t = ((p.x - a.x) * ax + (p.y - a.y) * ay) / seg_len_sq
    t = min(1.0, max(0.0, t))
    return math.hypot(p.x - (a.x + t * ax), p.y - (a.y + t * ay))


def point_to_polyline_distance(p: Point, polyline: list[Point]) -> float:
    if len(polyline) == 1:
        return math.hypot(p.x - polyline[0].x, p.y - polyline[0].y)
    return min(point_to_segment_distance(p, a, b)
               for a, b in zip(polyline, polyline[1:]))


class EdgeClass(Enum):
    """Direction classes naming where an edge starts and ends within its
    bounding box.

    The first eight are unidirectional (two opposing corners for diagonal
    edges, two opposing side centers for horizontal/vertical ones); the
    ``BI_*`` four cover bidirectional edges, one per axis.
    """

    TL2BR = "tl2br"
    BR2TL = "br2tl"
    TR2BL = "tr2bl"
    BL2TR = "bl2tr"
    R2L = "r2l"
    L2R = "l2r"
    T2B = "t2b"
    B2T = "b2t"
    BI_TL2BR = "bi_tl2br"
    BI_TR2BL = "bi_tr2bl"
    BI_R2L = "bi_r2l"
    BI_T2B = "bi_t2b"

    @property
    def bidirectional(self) -> bool:
        return self.value.startswith("bi_")

    @property
    def diagonal(self) -> bool:
        return self in _DIAGONAL_CLASSES

    @property
    def index(self) -> int:
        """Wire index, 1..12 (0 is reserved for nodes)."""
        return _EDGE_CLASS_ORDER.index(self) + 1

    def folded(self) -> "EdgeClass":
        """The bidirectional class covering this class's axis."""
        return _FOLD[self] if not self.bidirectional else self


_EDGE_CLASS_ORDER = list(EdgeClass)

_DIAGONAL_CLASSES = {
    EdgeClass.TL2BR, EdgeClass.BR2TL, EdgeClass.TR2BL, EdgeClass.BL2TR,
    EdgeClass.BI_TL2BR, EdgeClass.BI_TR2BL,
}

_FOLD = {
    EdgeClass.TL2BR: EdgeClass.BI_TL2BR,
    EdgeClass.BR2TL: EdgeClass.BI_TL2BR,
    EdgeClass.TR2BL: EdgeClass.BI_TR2BL,
    EdgeClass.BL2TR: EdgeClass.BI_TR2BL,
    EdgeClass.R2L: EdgeClass.BI_R2L,
    EdgeClass.L2R: EdgeClass.BI_R2L,
    EdgeClass.T2B: EdgeClass.BI_T2B,
    EdgeClass.B2T: EdgeClass.BI_T2B,
}

# Unit-ish direction vectors of the unidirectional classes (y grows down).
DIRECTION_VECTORS: dict[EdgeClass, tuple[float, float]] = {
    EdgeClass.L2R: (1.0, 0.0),
    EdgeClass.TL2BR: (1.0, 1.0),
    EdgeClass.T2B: (0.0, 1.0),
    EdgeClass.TR2BL: (-1.0, 1.0),
    EdgeClass.R2L: (-1.0, 0.0),
    EdgeClass.BR2TL: (-1.0, -1.0),
    EdgeClass.B2T: (0.0, -1.0),
    EdgeClass.BL2TR: (1.0, -1.0),
}


def object_class_index(cls: EdgeClass | None) -> int:
    """Wire index of an object class: node (None) = 0, edges 1..12."""
    return 0 if cls is None else cls.index


def object_class_from_index(index: int) -> EdgeClass | None:
    if index == 0:
        return None
    if 1 <= index <= 12:
        return _EDGE_CLASS_ORDER[index - 1]
    raise ValueError(f"unknown object class index {index}")


# Edges within this slope of an axis snap to the horizontal/vertical class.
SNAP_TANGENT = math.tan(math.radians(2.5))


def edge_class_from_endpoints(start: Point, end: Point,
                              bidirectional: bool = False) -> EdgeClass:
    """Classify an edge by the direction of its start->end vector.

    Vectors within 2.5 degrees (inclusive) of an axis get the matching
    horizontal/vertical class preserving travel direction; anything else is
    diagonal, chosen by quadrant.  With ``bidirectional`` the result is
    folded onto the corresponding ``BI_*`` class, making endpoint order
    irrelevant.
    """
    dx = end.x - start.x
    dy = end.y - start.y
    if dx == 0.0 and dy == 0.0:
        raise ValueError("degenerate edge: start and end coincide")

    if abs(dy) <= abs(dx) * SNAP_TANGENT:
        cls = EdgeClass.L2R if dx > 0 else EdgeClass.R2L
    elif abs(dx) <= abs(dy) * SNAP_TANGENT:
        cls = EdgeClass.T2B if dy > 0 else EdgeClass.B2T
    elif dx > 0:
        cls = EdgeClass.TL2BR if dy > 0 else EdgeClass.BL2TR
    else:
        cls = EdgeClass.TR2BL if dy > 0 else EdgeClass.BR2TL

    return cls.folded() if bidirectional else cls


def connection_points(cls: EdgeClass, box: BBox) -> tuple[Point, Point]:
    """Start and end points implied by a direction class on a box.

    Diagonal classes use the two opposing corners named by the class;
    horizontal/vertical classes use the opposing side centers.  For
    bidirectional classes the pair is returned in canonical order,
    top-left-most point first.
    """
    xm = (box.x0 + box.x1) / 2.0
    ym = (box.y0 + box.y1) / 2.0
    tl = Point(box.x0, box.y0)
    br = Point(box.x1, box.y1)
    tr = Point(box.x1, box.y0)
    bl = Point(box.x0, box.y1)
    left = Point(box.x0, ym)
    right = Point(box.x1, ym)
    top = Point(xm, box.y0)
    bottom = Point(xm, box.y1)

    table = {
        EdgeClass.TL2BR: (tl, br),
        EdgeClass.BR2TL: (br, tl),
        EdgeClass.TR2BL: (tr, bl),
        EdgeClass.BL2TR: (bl, tr),
        EdgeClass.L2R: (left, right),
        EdgeClass.R2L: (right, left),
        EdgeClass.T2B: (top, bottom),
        EdgeClass.B2T: (bottom, top),
        EdgeClass.BI_TL2BR: (tl, br),
        EdgeClass.BI_TR2BL: (tr, bl),
        EdgeClass.BI_R2L: (left, right),
        EdgeClass.BI_T2B: (top, bottom),
    }
    start, end = table[cls]
    if cls.bidirectional and (end.y, end.x) < (start.y, start.x):
        start, end = end, start
    return start, end


def edge_courses(cls: EdgeClass, box: BBox) -> list[list[Point]]:
    """Possible courses of an edge within its box.

    The straight segment between the class's connection points, plus (for
    diagonal classes) the two L-shaped polylines through the corner
    alternatives.  Axis-aligned classes have degenerate corners, so only
    the straight course is returned for them.
    """
    start, end = connection_points(cls, box)
    courses = [[start, end]]
    if cls.diagonal:
        courses.append([start, Point(start.x, end.y), end])
        courses.append([start, Point(end.x, start.y), end])
    return courses


class TextPurpose(Enum):
    """What a piece of text in an image belongs to."""

    NODE = "node"
    EDGE = "edge"
    PLAIN = "plain"


@dataclass(frozen=True)
class Detection:
    """A class-labeled box with a confidence; ``cls`` None means node."""

    cls: EdgeClass | None
    box: BBox
    confidence: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence out of range: {self.confidence}")


@dataclass(frozen=True)
class TextDetection:
    """A recognized string with its box; content may be empty."""

    content: str
    box: BBox
    confidence: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence out of range: {self.confidence}")


@dataclass
class GraphNode:
    id: str
    content: str = ""
    sub_nodes: list[str] = field(default_factory=list)

    @property
    def is_grouping(self) -> bool:
        return bool(self.sub_nodes)


@dataclass
class GraphEdge:
    id: str
    source: str
    target: str
    weight: float | None = None
    bidirectional: bool = False
    # tip rendering style tag; carried in memory only, never serialized
    tip_style: str = "filled"


@dataclass
class GraphDoc:
    """A graph document: node list plus edge list.

    Nodes with sub-nodes are groupings.  ``validate`` enforces referential
    integrity (unique ids, resolvable references, acyclic and, for
    generated documents, non-nested sub-node relations, no edge between a
    grouping and one of its own sub-nodes).
    """

    nodes: list[GraphNode] = field(default_factory=list)
    edges: list[GraphEdge] = field(default_factory=list)

    def node_by_id(self, node_id: str) -> GraphNode:
        for node in self.nodes:
            if node.id == node_id:
                return node
        raise KeyError(node_id)

    def validate(self, forbid_nesting: bool = False) -> None:
        node_ids = [n.id for n in self.nodes]
        if len(set(node_ids)) != len(node_ids):
            raise ValueError("duplicate node ids")
        edge_ids = [e.id for e in self.edges]
        if len(set(edge_ids)) != len(edge_ids):
            raise ValueError("duplicate edge ids")
        known = set(node_ids)
        members: dict[str, set[str]] = {}
        for node in self.nodes:
            for sub in node.sub_nodes:
                if sub not in known:
                    raise ValueError(f"unknown sub-node {sub!r} in {node.id!r}")
                if sub == node.id:
                    raise ValueError(f"node {node.id!r} is its own sub-node")
            members[node.id] = set(node.sub_nodes)
        if forbid_nesting:
            groupings = {nid for nid, subs in members.items() if subs}
            for nid in groupings:
                if any(nid in subs for subs in members.values()):
                    raise ValueError(f"nested grouping {nid!r}")
        for edge in self.edges:
            if edge.source not in known or edge.target not in known:
                raise ValueError(f"edge {edge.id!r} references unknown node")
            if (edge.target in members.get(edge.source, ())
                    or edge.source in members.get(edge.target, ())):
                raise ValueError(
                    f"edge {edge.id!r} connects a grouping to its own sub-node")

    def to_json_dict(self) -> dict:
        return {
            "nodes": [
                {"id": n.id, "content": n.content, "sub_nodes": list(n.sub_nodes)}
                for n in self.nodes
            ],
            "edges": [
                {"id": e.id, "weight": e.weight, "source": e.source,
                 "target": e.target, "bidirectional": e.bidirectional}
                for e in self.edges
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "GraphDoc":
        nodes = [GraphNode(id=d["id"], content=d.get("content", ""),
                           sub_nodes=list(d.get("sub_nodes", [])))
                 for d in data.get("nodes", [])]
        edges = [GraphEdge(id=d["id"], source=d["source"], target=d["target"],
                           weight=d.get("weight"),
                           bidirectional=bool(d.get("bidirectional", False)))
                 for d in data.get("edges", [])]
        return cls(nodes=nodes, edges=edges)


_NUMBER_RE = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)$")


def parse_weight(text: str) -> float | None:
    """Parse a text as a numeric edge weight; None when it does not lex as
    a plain decimal number (optional sign, digits, one decimal point)."""
    if _NUMBER_RE.fullmatch(text.strip()):
        return float(text.strip())
    return None
