"""Random scene sampling and ground-truth emission.

A scene is laid out on a grid: every cell independently hosts a node, a
background text, or nothing.  A subset of adjacent nodes may be wrapped in
a rectangular grouping.  Edges are then routed between distinct anchors
(top-level nodes or the grouping) by rejection sampling, avoiding node
interiors and duplicate pairs; each edge gets a direction class, a weight
in [0, 1] shown as text near its midpoint, and per-edge style flags.

Placement is engineered so that a perfect detector could rebuild the graph
from boxes alone: weight texts are rejection-sampled until their own edge
is the closest candidate course by a clear margin, background texts never
intersect edge boxes, and edges never attach to grouping members.  When a
retry budget runs out the scene degrades gracefully (fewer edges or texts)
and records a warning instead of failing.

Everything is deterministic for a given (config, seed).
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

import numpy as np

from .core import (
    BBox,
    EdgeClass,
    GraphDoc,
    GraphEdge,
    GraphNode,
    Point,
    TextPurpose,
    containment_ratio,
    edge_class_from_endpoints,
    edge_courses,
    point_to_polyline_distance,
)
from .renderer import RasterImage, edge_envelope_box, render_scene, text_extent

_MASK64 = (1 << 64) - 1

# Layout margins in pixels: image border to grid, cell border to node box,
# grouping padding around member boxes.
_IMAGE_MARGIN = 10.0
_CELL_MARGIN = 20.0
_GROUPING_PAD = 10.0

# Weight texts are accepted once their own edge beats every other candidate
# course by this margin; the ambiguity filter flags ties below 2 px.
_WEIGHT_MARGIN = 3.0
_WEIGHT_TRIES = 50
_BGTEXT_TRIES = 50


def splitmix64(x: int) -> int:
    """One mixing step of the splitmix64 generator (finalizer only)."""
    z = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_seed(master_seed: int, index: int) -> int:
    """Per-image seed: splitmix64 mix of the master seed xor the index."""
    return splitmix64((master_seed ^ index) & _MASK64)


def default_word_list() -> tuple[str, ...]:
    text = resources.files("svckit").joinpath("words.txt").read_text("ascii")
    return tuple(w for w in text.split() if w)


@dataclass(frozen=True)
class GenConfig:
    """Scene sampling parameters.

    Defaults are tuned so that large samples average about 1.3 node objects
    per edge, edges are bidirectional 20% of the time, and diagonal
    direction classes dominate the horizontal/vertical ones.
    """

    image_width_range: tuple[int, int] = (640, 1000)
    image_height_range: tuple[int, int] = (480, 800)
    grid_rows_range: tuple[int, int] = (3, 4)
    grid_cols_range: tuple[int, int] = (3, 4)
    p_cell_node: float = 0.45
    p_cell_bgtext: float = 0.20
    p_cell_empty: float = 0.35
    edge_count_range: tuple[int, int] = (3, 7)
    p_bidirectional: float = 0.20
    p_grouping: float = 0.30
    text_size_range: tuple[int, int] = (9, 16)
    line_width_range: tuple[int, int] = (1, 3)
    p_striped: float = 0.5
    p_filled_tip: float = 0.5
    p_weight_background: float = 0.5
    p_antialias: float = 0.5
    word_list: tuple[str, ...] = ()
    seed: int = 0
    edge_retry_budget: int = 100

    def validate(self) -> None:
        probs = {
            "p_cell_node": self.p_cell_node,
            "p_cell_bgtext": self.p_cell_bgtext,
            "p_cell_empty": self.p_cell_empty,
            "p_bidirectional": self.p_bidirectional,
            "p_grouping": self.p_grouping,
            "p_striped": self.p_striped,
            "p_filled_tip": self.p_filled_tip,
            "p_weight_background": self.p_weight_background,
            "p_antialias": self.p_antialias,
        }
        for name, p in probs.items():
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} out of [0, 1]: {p}")
        cell_sum = self.p_cell_node + self.p_cell_bgtext + self.p_cell_empty
        if abs(cell_sum - 1.0) > 1e-9:
            raise ValueError(f"cell probabilities sum to {cell_sum}, not 1")
        for name in ("image_width_range", "image_height_range",
                     "grid_rows_range", "grid_cols_range",
                     "edge_count_range", "text_size_range",
                     "line_width_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name} is empty: ({lo}, {hi})")
        if self.edge_retry_budget < 1:
            raise ValueError("edge_retry_budget must be positive")
        # worst-case cell must still fit a node that can hold a short word
        min_cell_w = ((self.image_width_range[0] - 2 * _IMAGE_MARGIN)
                      / self.grid_cols_range[1])
        min_cell_h = ((self.image_height_range[0] - 2 * _IMAGE_MARGIN)
                      / self.grid_rows_range[1])
        ts_hi = self.text_size_range[1]
        if min_cell_w - 2 * _CELL_MARGIN < 3 * ts_hi + 14:
            raise ValueError("cells too narrow for node text at max size")
        if min_cell_h - 2 * _CELL_MARGIN < ts_hi + 16:
            raise ValueError("cells too short for node text at max size")

    def words(self) -> tuple[str, ...]:
        return self.word_list if self.word_list else default_word_list()


@dataclass
class SceneNode:
    id: str
    shape: str  # "rect" or "ellipse"
    box: BBox
    content: str


@dataclass
class SceneGrouping:
    id: str
    box: BBox
    member_ids: list[str]


@dataclass
class SceneEdge:
    id: str
    polyline: list[Point]
    cls: EdgeClass
    source: str
    target: str
    bidirectional: bool
    weight: float
    weight_text_box: BBox
    box: BBox  # annotation box: envelope of stroke, caps and tips
    striped: bool
    filled_tip: bool
    weight_background: bool


@dataclass
class BackgroundText:
    content: str
    box: BBox


@dataclass
class SceneSpec:
    """The sampled layout of one image before rendering."""

    width: int
    height: int
    line_width: int
    text_size: int
    antialias: bool
    nodes: list[SceneNode] = field(default_factory=list)
    groupings: list[SceneGrouping] = field(default_factory=list)
    edges: list[SceneEdge] = field(default_factory=list)
    background_texts: list[BackgroundText] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class ObjectAnnotation:
    cls: EdgeClass | None
    box: BBox
    source_id: str | None = None  # scene element id, not serialized


@dataclass(frozen=True)
class TextAnnotation:
    purpose: TextPurpose
    box: BBox
    content: str
    source_id: str | None = None


@dataclass
class AnnotationSet:
    objects: list[ObjectAnnotation] = field(default_factory=list)
    texts: list[TextAnnotation] = field(default_factory=list)


def _nearest_point_in_box(p: Point, box: BBox) -> Point:
    return Point(min(max(p.x, box.x0), box.x1), min(max(p.y, box.y0), box.y1))


def _outset_from_box(p: Point, box: BBox, amount: float) -> Point:
    dx = amount if p.x >= box.x1 else (-amount if p.x <= box.x0 else 0.0)
    dy = amount if p.y >= box.y1 else (-amount if p.y <= box.y0 else 0.0)
    return Point(p.x + dx, p.y + dy)


def _attachment_points(box_a: BBox, box_b: BBox,
                       line_width: float) -> tuple[Point, Point]:
    """Boundary attachment points between two boxes: each box's boundary
    point nearest the other's center, pushed outward by one line width."""
    p0 = _nearest_point_in_box(box_b.center, box_a)
    p1 = _nearest_point_in_box(box_a.center, box_b)
    return (_outset_from_box(p0, box_a, line_width),
            _outset_from_box(p1, box_b, line_width))


def _segment_intersects_box(a: Point, b: Point, box: BBox) -> bool:
    # Liang-Barsky clip of the parametric segment against the box slabs
    dx, dy = b.x - a.x, b.y - a.y
    t0, t1 = 0.0, 1.0
    for d, lo, hi, origin in ((dx, box.x0, box.x1, a.x),
                              (dy, box.y0, box.y1, a.y)):
        if d == 0.0:
            if origin < lo or origin > hi:
                return False
        else:
            ta, tb = (lo - origin) / d, (hi - origin) / d
            if ta > tb:
                ta, tb = tb, ta
            t0, t1 = max(t0, ta), min(t1, tb)
            if t0 > t1:
                return False
    return True


def _polyline_midpoint(points: list[Point]) -> Point:
    lengths = [math.hypot(b.x - a.x, b.y - a.y)
               for a, b in zip(points, points[1:])]
    target = sum(lengths) / 2.0
    for (a, b), seg_len in zip(zip(points, points[1:]), lengths):
        if target <= seg_len:
            if seg_len == 0.0:
                return a
            t = target / seg_len
            return Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
        target -= seg_len
    return points[-1]


def _fit_words(rng: np.random.Generator, words: tuple[str, ...],
               max_width: float, text_size: int, max_count: int) -> str:
    """Pick 1..max_count words whose rendered width fits max_width."""
    fitting = [w for w in words
               if text_extent(w, text_size)[0] <= max_width]
    if not fitting:
        fitting = [min(words, key=len)]
    target = int(rng.integers(1, max_count + 1))
    chosen = [fitting[int(rng.integers(len(fitting)))]]
    while len(chosen) < target:
        candidate = words[int(rng.integers(len(words)))]
        attempt = " ".join(chosen + [candidate])
        if text_extent(attempt, text_size)[0] <= max_width:
            chosen.append(candidate)
        else:
            break
    return " ".join(chosen)


def _min_course_distance(center: Point, courses: list[list[Point]]) -> float:
    return min(point_to_polyline_distance(center, c) for c in courses)


def sample_scene(config: GenConfig, seed: int) -> SceneSpec:
    """Sample one scene; deterministic for a given (config, seed)."""
    config.validate()
    rng = np.random.default_rng(seed)
    words = config.words()

    width = int(rng.integers(config.image_width_range[0],
                             config.image_width_range[1] + 1))
    height = int(rng.integers(config.image_height_range[0],
                              config.image_height_range[1] + 1))
    rows = int(rng.integers(config.grid_rows_range[0],
                            config.grid_rows_range[1] + 1))
    cols = int(rng.integers(config.grid_cols_range[0],
                            config.grid_cols_range[1] + 1))
    text_size = int(rng.integers(config.text_size_range[0],
                                 config.text_size_range[1] + 1))
    line_width = int(rng.integers(config.line_width_range[0],
                                  config.line_width_range[1] + 1))
    antialias = bool(rng.random() < config.p_antialias)

    scene = SceneSpec(width=width, height=height, line_width=line_width,
                      text_size=text_size, antialias=antialias)

    cell_w = (width - 2 * _IMAGE_MARGIN) / cols
    cell_h = (height - 2 * _IMAGE_MARGIN) / rows

    def cell_box(r: int, c: int) -> BBox:
        x0 = _IMAGE_MARGIN + c * cell_w
        y0 = _IMAGE_MARGIN + r * cell_h
        return BBox(x0, y0, x0 + cell_w, y0 + cell_h)

    cell_kinds: dict[tuple[int, int], str] = {}
    for r in range(rows):
        for c in range(cols):
            u = rng.random()
            if u < config.p_cell_node:
                cell_kinds[(r, c)] = "node"
            elif u < config.p_cell_node + config.p_cell_bgtext:
                cell_kinds[(r, c)] = "bgtext"
            else:
                cell_kinds[(r, c)] = "empty"

    if all(kind != "node" for kind in cell_kinds.values()):
        # degenerate scenes break graph metrics downstream; promote one cell
        cells = sorted(cell_kinds)
        promoted = cells[int(rng.integers(len(cells)))]
        cell_kinds[promoted] = "node"
        scene.warnings.append("no node cell sampled; promoted one cell")

    node_by_cell: dict[tuple[int, int], SceneNode] = {}
    for (r, c) in sorted(cell_kinds):
        if cell_kinds[(r, c)] != "node":
            continue
        cb = cell_box(r, c)
        avail_w = cell_w - 2 * _CELL_MARGIN
        avail_h = cell_h - 2 * _CELL_MARGIN
        shape = "rect" if rng.random() < 0.5 else "ellipse"
        min_w = max(3 * text_size + 10, 36.0)
        min_h = max(text_size + 14, 26.0)
        w = float(rng.uniform(min(min_w, avail_w), avail_w))
        h = float(rng.uniform(min(min_h, avail_h), avail_h))
        x0 = cb.x0 + _CELL_MARGIN + float(rng.uniform(0.0, avail_w - w))
        y0 = cb.y0 + _CELL_MARGIN + float(rng.uniform(0.0, avail_h - h))
        box = BBox(x0, y0, x0 + w, y0 + h)
        max_text_w = (w - 8.0) / math.sqrt(2.0) if shape == "ellipse" else w - 10.0
        content = _fit_words(rng, words, max_text_w, text_size, 3)
        node = SceneNode(id=f"n{len(scene.nodes)}", shape=shape, box=box,
                         content=content)
        scene.nodes.append(node)
        node_by_cell[(r, c)] = node

    bg_requests: list[tuple[BBox, str]] = []
    for (r, c) in sorted(cell_kinds):
        if cell_kinds[(r, c)] != "bgtext":
            continue
        cb = cell_box(r, c)
        content = _fit_words(rng, words, cell_w - 12.0, text_size, 2)
        bg_requests.append((cb, content))

    member_ids: set[str] = set()
    if scene.nodes and rng.random() < config.p_grouping:
        adjacent_pairs = []
        for (r, c), node in node_by_cell.items():
            for (r2, c2) in ((r, c + 1), (r + 1, c)):
                if (r2, c2) in node_by_cell:
                    adjacent_pairs.append((node, node_by_cell[(r2, c2)]))
        if adjacent_pairs:
            a, b = adjacent_pairs[int(rng.integers(len(adjacent_pairs)))]
            gbox = BBox(min(a.box.x0, b.box.x0) - _GROUPING_PAD,
                        min(a.box.y0, b.box.y0) - _GROUPING_PAD,
                        max(a.box.x1, b.box.x1) + _GROUPING_PAD,
                        max(a.box.y1, b.box.y1) + _GROUPING_PAD)
            scene.groupings.append(
                SceneGrouping(id="g0", box=gbox, member_ids=[a.id, b.id]))
            member_ids = {a.id, b.id}

    # anchors an edge may attach to: top-level nodes and the grouping.
    # Members stay inside the grouping box, so reconstruction could not
    # tell a member attachment from a grouping attachment.
    anchors: list[tuple[str, BBox]] = [
        (n.id, n.box) for n in scene.nodes if n.id not in member_ids
    ] + [(g.id, g.box) for g in scene.groupings]
    obstacle_boxes = {aid: box for aid, box in anchors}

    edge_target = int(rng.integers(config.edge_count_range[0],
                                   config.edge_count_range[1] + 1))
    if len(anchors) < 2:
        if edge_target > 0:
            scene.warnings.append(
                f"not enough anchors for edges: wanted {edge_target}")
        edge_target = 0

    clearance = line_width / 2.0 + 2.0
    placed: list[dict] = []
    used_pairs: set[frozenset[str]] = set()
    for _ in range(edge_target):
        accepted = None
        for _attempt in range(config.edge_retry_budget):
            i = int(rng.integers(len(anchors)))
            j = int(rng.integers(len(anchors) - 1))
            if j >= i:
                j += 1
            (id_a, box_a), (id_b, box_b) = anchors[i], anchors[j]
            if frozenset((id_a, id_b)) in used_pairs:
                continue
            p0, p1 = _attachment_points(box_a, box_b, line_width)
            if p0 == p1:
                continue
            angled = bool(rng.random() < 0.5)
            corner_first = bool(rng.random() < 0.5)
            if angled and abs(p1.x - p0.x) >= 20 and abs(p1.y - p0.y) >= 20:
                corner = (Point(p0.x, p1.y) if corner_first
                          else Point(p1.x, p0.y))
                polyline = [p0, corner, p1]
            else:
                polyline = [p0, p1]
            collision = False
            for seg_a, seg_b in zip(polyline, polyline[1:]):
                for oid, obox in obstacle_boxes.items():
                    if oid in (id_a, id_b):
                        continue
                    if _segment_intersects_box(seg_a, seg_b,
                                               obox.expand(clearance)):
                        collision = True
                        break
                if collision:
                    break
            if collision:
                continue
            if bool(rng.random() < 0.5):
                polyline = polyline[::-1]
                id_a, id_b = id_b, id_a
            accepted = {"source": id_a, "target": id_b, "polyline": polyline}
            used_pairs.add(frozenset((id_a, id_b)))
            break
        if accepted is None:
            scene.warnings.append(
                f"edge placement budget exhausted: placed {len(placed)}"
                f" of {edge_target}")
            break
        accepted["bidirectional"] = bool(rng.random() < config.p_bidirectional)
        accepted["striped"] = bool(rng.random() < config.p_striped)
        accepted["filled_tip"] = bool(rng.random() < config.p_filled_tip)
        accepted["weight_background"] = bool(
            rng.random() < config.p_weight_background)
        accepted["weight"] = round(float(rng.uniform(0.0, 1.0)), 2)
        placed.append(accepted)

    for entry in placed:
        poly = entry["polyline"]
        entry["cls"] = edge_class_from_endpoints(poly[0], poly[-1],
                                                 entry["bidirectional"])
        entry["box"] = edge_envelope_box(poly, line_width,
                                         tip_at_start=entry["bidirectional"],
                                         tip_at_end=True)
        entry["courses"] = edge_courses(entry["cls"], entry["box"])

    node_boxes = [n.box for n in scene.nodes] + [g.box for g in scene.groupings]
    kept: list[dict] = []
    for idx, entry in enumerate(placed):
        text = f"{entry['weight']:.2f}"
        tw, th = text_extent(text, text_size)
        midpoint = _polyline_midpoint(entry["polyline"])
        radius = 1.5 * text_size
        best_box = None
        best_margin = -math.inf
        for _try in range(_WEIGHT_TRIES):
            angle = float(rng.uniform(0.0, 2.0 * math.pi))
            dist = radius * math.sqrt(float(rng.uniform(0.0, 1.0)))
            cx = midpoint.x + dist * math.cos(angle)
            cy = midpoint.y + dist * math.sin(angle)
            box = BBox(cx - tw / 2.0, cy - th / 2.0,
                       cx + tw / 2.0, cy + th / 2.0)
            if box.x0 < 2 or box.y0 < 2 or box.x1 > width - 2 or box.y1 > height - 2:
                continue
            if box.intersection_area(entry["box"]) <= 0.0:
                continue
            if any(containment_ratio(box, nb) >= 0.5 for nb in node_boxes):
                continue
            center = box.center
            d_own = _min_course_distance(center, entry["courses"])
            margin = math.inf
            for other_idx, other in enumerate(placed):
                if other_idx == idx:
                    continue
                if box.intersection_area(other["box"]) <= 0.0:
                    continue
                d_other = _min_course_distance(center, other["courses"])
                margin = min(margin, d_other - d_own)
            if margin > best_margin:
                best_margin = margin
                best_box = box
            if margin >= _WEIGHT_MARGIN:
                break
        if best_box is None or best_margin <= 0.0:
            scene.warnings.append(
                "edge removed: weight text cannot be placed unambiguously")
            continue
        entry["weight_text_box"] = best_box
        kept.append(entry)

    for entry in kept:
        scene.edges.append(SceneEdge(
            id=f"e{len(scene.edges)}",
            polyline=entry["polyline"],
            cls=entry["cls"],
            source=entry["source"],
            target=entry["target"],
            bidirectional=entry["bidirectional"],
            weight=entry["weight"],
            weight_text_box=entry["weight_text_box"],
            box=entry["box"],
            striped=entry["striped"],
            filled_tip=entry["filled_tip"],
            weight_background=entry["weight_background"],
        ))

    edge_boxes = [e.box for e in scene.edges]
    for cb, content in bg_requests:
        tw, th = text_extent(content, text_size)
        max_x = cell_w - 12.0 - tw
        max_y = cell_h - 12.0 - th
        if max_x < 0 or max_y < 0:
            scene.warnings.append("background text dropped: does not fit cell")
            continue
        box = None
        for _try in range(_BGTEXT_TRIES):
            x0 = cb.x0 + 6.0 + float(rng.uniform(0.0, max_x))
            y0 = cb.y0 + 6.0 + float(rng.uniform(0.0, max_y))
            candidate = BBox(x0, y0, x0 + tw, y0 + th)
            if any(candidate.intersection_area(eb) > 0.0 for eb in edge_boxes):
                continue
            box = candidate
            break
        if box is None:
            scene.warnings.append(
                "background text dropped: no position clear of edge boxes")
            continue
        scene.background_texts.append(BackgroundText(content=content, box=box))

    return scene


def node_text_box(node: SceneNode, text_size: int) -> BBox:
    """Box of a node's rendered content (centered in the node)."""
    tw, th = text_extent(node.content, text_size)
    cx, cy = node.box.center
    return BBox(cx - tw / 2.0, cy - th / 2.0, cx + tw / 2.0, cy + th / 2.0)


def emit_ground_truth(scene: SceneSpec) -> tuple[AnnotationSet, GraphDoc]:
    """Object and text annotations plus the graph document for a scene."""
    annotations = AnnotationSet()
    for node in scene.nodes:
        annotations.objects.append(
            ObjectAnnotation(cls=None, box=node.box, source_id=node.id))
    for grouping in scene.groupings:
        annotations.objects.append(
            ObjectAnnotation(cls=None, box=grouping.box, source_id=grouping.id))
    for edge in scene.edges:
        annotations.objects.append(
            ObjectAnnotation(cls=edge.cls, box=edge.box, source_id=edge.id))

    for node in scene.nodes:
        if node.content:
            annotations.texts.append(TextAnnotation(
                purpose=TextPurpose.NODE,
                box=node_text_box(node, scene.text_size),
                content=node.content, source_id=node.id))
    for edge in scene.edges:
        annotations.texts.append(TextAnnotation(
            purpose=TextPurpose.EDGE, box=edge.weight_text_box,
            content=f"{edge.weight:.2f}", source_id=edge.id))
    for bg in scene.background_texts:
        annotations.texts.append(TextAnnotation(
            purpose=TextPurpose.PLAIN, box=bg.box, content=bg.content))

    doc = GraphDoc()
    for node in scene.nodes:
        doc.nodes.append(GraphNode(id=node.id, content=node.content))
    for grouping in scene.groupings:
        doc.nodes.append(GraphNode(id=grouping.id, content="",
                                   sub_nodes=list(grouping.member_ids)))
    for edge in scene.edges:
        doc.edges.append(GraphEdge(
            id=edge.id, source=edge.source, target=edge.target,
            weight=edge.weight, bidirectional=edge.bidirectional,
            tip_style="filled" if edge.filled_tip else "lines"))
    doc.validate(forbid_nesting=True)
    return annotations, doc


def split_counts(count: int, fractions: tuple[float, float, float],
                 ) -> tuple[int, int, int]:
    """Per-split image counts: floor each fraction, remainder to train."""
    if count < 1:
        raise ValueError("count must be at least 1")
    if abs(sum(fractions) - 1.0) > 1e-9:
        raise ValueError(f"split fractions sum to {sum(fractions)}, not 1")
    train = math.floor(count * fractions[0])
    val = math.floor(count * fractions[1])
    test = math.floor(count * fractions[2])
    train += count - (train + val + test)
    return train, val, test


SPLIT_NAMES = ("train", "val", "test")


@dataclass
class DatasetManifest:
    out_dir: str
    count: int
    master_seed: int
    split_counts: dict[str, int]
    class_counts: dict[str, int]
    warnings: dict[str, list[str]]

    def to_json_dict(self) -> dict:
        return {
            "out_dir": self.out_dir,
            "count": self.count,
            "master_seed": self.master_seed,
            "split_counts": dict(self.split_counts),
            "class_counts": dict(self.class_counts),
            "warnings": {k: list(v) for k, v in sorted(self.warnings.items())},
        }


def _generate_one(args) -> tuple[str, str, int, int, dict[str, int], list[str]]:
    config, master_seed, index, split, out_dir, skip_images = args
    from . import formats

    stem = f"img_{index:05d}"
    seed = derive_seed(master_seed, index)
    scene = sample_scene(config, seed)
    annotations, doc = emit_ground_truth(scene)
    split_dir = Path(out_dir) / split
    formats.write_object_annotations(
        split_dir / "labels" / f"{stem}.txt", annotations.objects,
        scene.width, scene.height)
    formats.write_text_annotations(
        split_dir / "texts" / f"{stem}.txt", annotations.texts,
        scene.width, scene.height)
    formats.write_graph_doc(split_dir / "graphs" / f"{stem}.json", doc)
    formats.write_graph_sidecar(
        split_dir / "graphs" / f"{stem}.boxes.json",
        node_boxes={a.source_id: a.box for a in annotations.objects
                    if a.cls is None},
        edge_boxes={a.source_id: a.box for a in annotations.objects
                    if a.cls is not None},
        edge_texts={e.id: f"{e.weight:.2f}" for e in doc.edges},
        warnings=scene.warnings)
    if not skip_images:
        image = render_scene(scene)
        formats.ensure_dir(split_dir / "images")
        image.save_png(split_dir / "images" / f"{stem}.png")
    counts: dict[str, int] = {}
    for ann in annotations.objects:
        key = "node" if ann.cls is None else ann.cls.value
        counts[key] = counts.get(key, 0) + 1
    return stem, split, scene.width, scene.height, counts, list(scene.warnings)


def generate_dataset(config: GenConfig, count: int,
                     split: tuple[float, float, float] = (0.7, 0.2, 0.1),
                     out_dir: str | Path = "dataset",
                     master_seed: int | None = None,
                     workers: int = 1,
                     skip_images: bool = False) -> DatasetManifest:
    """Write a train/val/test dataset tree and return its manifest.

    Per-image seeds derive from the master seed, so identical inputs
    produce byte-identical label, text, and graph files.
    """
    from . import formats

    config.validate()
    if master_seed is None:
        master_seed = config.seed
    counts = split_counts(count, split)
    out = Path(out_dir)
    split_of_index = []
    for name, n in zip(SPLIT_NAMES, counts):
        split_of_index.extend([name] * n)
    for name in SPLIT_NAMES:
        for sub in ("images", "labels", "texts", "graphs"):
            if sub == "images" and skip_images:
                continue
            formats.ensure_dir(out / name / sub)

    jobs = [(config, master_seed, i, split_of_index[i], str(out), skip_images)
            for i in range(count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_generate_one, jobs, chunksize=8))
    else:
        results = [_generate_one(job) for job in jobs]

    class_counts: dict[str, int] = {}
    warnings: dict[str, list[str]] = {}
    sizes: dict[str, dict[str, tuple[int, int]]] = {n: {} for n in SPLIT_NAMES}
    for stem, split_name, w, h, img_counts, img_warnings in results:
        sizes[split_name][stem] = (w, h)
        for key, n in img_counts.items():
            class_counts[key] = class_counts.get(key, 0) + n
        if img_warnings:
            warnings[stem] = img_warnings

    for name in SPLIT_NAMES:
        formats.write_sizes(out / name / "sizes.json", sizes[name])

    manifest = DatasetManifest(
        out_dir=str(out), count=count, master_seed=master_seed,
        split_counts=dict(zip(SPLIT_NAMES, counts)),
        class_counts=class_counts, warnings=warnings)
    formats.write_json(out / "manifest.json", manifest.to_json_dict())
    return manifest
