"""Graph reconstruction from structure and text detections.

Three stages: grouping detection (a node box almost completely inside a
larger node box becomes its sub-node), edge linking (each edge's class
implies two connection points on its box; each point attaches to the
nearest node box), and text mapping (texts overlapping a node enough become
its content; remaining texts go to the edge whose possible courses pass
closest; anything left is background and dropped).

All geometry is relative, so reconstruction is translation invariant and
permutation of the input detections only relabels ids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import (
    BBox,
    Detection,
    GraphDoc,
    GraphEdge,
    GraphNode,
    TextDetection,
    connection_points,
    containment_ratio,
    edge_courses,
    parse_weight,
    point_to_box_distance,
    point_to_polyline_distance,
)


@dataclass(frozen=True)
class ReconstructParams:
    """Thresholds for the reconstruction heuristics.

    ``grouping_containment_min`` quantifies "almost completely inside" for
    sub-node detection, ``node_text_overlap_min`` the node/text overlap, and
    ``edge_text_candidate_min`` the minimum text/edge box IoU for an edge to
    be considered for a text (any positive intersection rescues a text that
    would otherwise have no candidate).
    """

    grouping_containment_min: float = 0.95
    node_text_overlap_min: float = 0.80
    edge_text_candidate_min: float = 0.01
    max_attach_distance: float = math.inf

    def validate(self) -> None:
        for name in ("grouping_containment_min", "node_text_overlap_min",
                     "edge_text_candidate_min"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} out of [0, 1]: {v}")
        if self.max_attach_distance < 0:
            raise ValueError("max_attach_distance must be non-negative")


@dataclass
class ReconstructedGraph:
    """A graph document plus the originating box of every element."""

    doc: GraphDoc
    node_boxes: dict[str, BBox] = field(default_factory=dict)
    edge_boxes: dict[str, BBox] = field(default_factory=dict)
    edge_classes: dict[str, object] = field(default_factory=dict)
    edge_texts: dict[str, str] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def validate(self) -> None:
        self.doc.validate()
        for node in self.doc.nodes:
            if node.id not in self.node_boxes:
                raise ValueError(f"node {node.id!r} has no box")
        for edge in self.doc.edges:
            if edge.id not in self.edge_boxes:
                raise ValueError(f"edge {edge.id!r} has no box")

    def contents(self) -> dict[str, str]:
        """Per-element text content keyed by id (for text metrics)."""
        out = {n.id: n.content for n in self.doc.nodes}
        for e in self.doc.edges:
            if e.id in self.edge_texts:
                out[e.id] = self.edge_texts[e.id]
            elif e.weight is not None:
                out[e.id] = f"{e.weight:.2f}"
            else:
                out[e.id] = ""
        return out

    @classmethod
    def from_ground_truth(cls, annotations, doc: GraphDoc,
                          ) -> "ReconstructedGraph":
        node_boxes = {a.source_id: a.box for a in annotations.objects
                      if a.cls is None and a.source_id is not None}
        edge_boxes = {a.source_id: a.box for a in annotations.objects
                      if a.cls is not None and a.source_id is not None}
        edge_classes = {a.source_id: a.cls for a in annotations.objects
                        if a.cls is not None and a.source_id is not None}
        edge_texts = {e.id: f"{e.weight:.2f}" for e in doc.edges
                      if e.weight is not None}
        graph = cls(doc=doc, node_boxes=node_boxes, edge_boxes=edge_boxes,
                    edge_classes=edge_classes, edge_texts=edge_texts)
        graph.validate()
        return graph


def detect_groupings(nodes: list[Detection],
                     params: ReconstructParams) -> dict[int, int]:
    """Sub-node assignment: maps a node index to the index of its grouping.

    A node becomes a sub-node of the smallest strictly larger node that
    contains at least ``grouping_containment_min`` of its area (ties broken
    by detection order).
    """
    assignment: dict[int, int] = {}
    for i, inner in enumerate(nodes):
        best: int | None = None
        for j, outer in enumerate(nodes):
            if i == j or not inner.box.area < outer.box.area:
                continue
            if containment_ratio(inner.box, outer.box) \
                    < params.grouping_containment_min:
                continue
            if best is None or outer.box.area < nodes[best].box.area:
                best = j
        if best is not None:
            assignment[i] = best
    return assignment


@dataclass
class _LinkedEdge:
    det_index: int
    source: int
    target: int
    bidirectional: bool


def _endpoint_candidates(point, nodes: list[Detection],
                         params: ReconstructParams) -> list[int]:
    ranked = sorted(
        range(len(nodes)),
        key=lambda k: (point_to_box_distance(point, nodes[k].box),
                       nodes[k].box.area, k))
    return [k for k in ranked
            if point_to_box_distance(point, nodes[k].box)
            <= params.max_attach_distance]


def link_edges(nodes: list[Detection], grouping: dict[int, int],
               edges: list[Detection], params: ReconstructParams,
               ) -> tuple[list[_LinkedEdge], list[str]]:
    """Attach every edge detection to two nodes via its connection points.

    Points inside several boxes prefer the smallest (deepest) one.  An edge
    may not link a grouping to one of its own sub-nodes: the offending
    candidate is dropped and the next nearest takes its place.  Edges whose
    endpoints resolve to the same node are discarded.
    """
    linked: list[_LinkedEdge] = []
    warnings: list[str] = []
    if edges and not nodes:
        warnings.append(f"no nodes available; dropped {len(edges)} edges")
        return linked, warnings

    for det_index, det in enumerate(edges):
        start, end = connection_points(det.cls, det.box)
        cand_start = _endpoint_candidates(start, nodes, params)
        cand_end = _endpoint_candidates(end, nodes, params)
        si, ei = 0, 0
        chosen: tuple[int, int] | None = None
        while si < len(cand_start) and ei < len(cand_end):
            a, b = cand_start[si], cand_end[ei]
            conflict = grouping.get(a) == b or grouping.get(b) == a
            if not conflict:
                chosen = (a, b)
                break
            # advance the endpoint that is less certain (farther away)
            da = point_to_box_distance(start, nodes[a].box)
            db = point_to_box_distance(end, nodes[b].box)
            if da >= db:
                si += 1
            else:
                ei += 1
        if chosen is None:
            warnings.append(
                f"edge detection {det_index} dropped: no attachable nodes")
            continue
        a, b = chosen
        if a == b:
            warnings.append(
                f"edge detection {det_index} dropped: both endpoints resolve"
                f" to the same node")
            continue
        bidirectional = det.cls.bidirectional
        if bidirectional and b < a:
            a, b = b, a
        linked.append(_LinkedEdge(det_index=det_index, source=a, target=b,
                                  bidirectional=bidirectional))
    return linked, warnings


def map_texts(graph: ReconstructedGraph, texts: list[TextDetection],
              params: ReconstructParams) -> ReconstructedGraph:
    """Assign recognized texts to nodes and edges of a linked graph.

    Node phase: texts contained at least ``node_text_overlap_min`` in a node
    box join that node's content, deepest qualifying node first (sub-node
    before grouping, then smaller box).  Edge phase: each remaining text
    goes to the overlapping edge whose possible courses pass nearest its
    center; numeric texts set the edge weight.  Leftover texts are treated
    as background and dropped.
    """
    doc = graph.doc
    groupings = {n.id for n in doc.nodes if n.sub_nodes}
    node_claims: dict[str, list[TextDetection]] = {n.id: [] for n in doc.nodes}
    remaining: list[TextDetection] = []

    for text in texts:
        qualifying = [
            n.id for n in doc.nodes
            if containment_ratio(text.box, graph.node_boxes[n.id])
            >= params.node_text_overlap_min
        ]
        if qualifying:
            chosen = min(qualifying, key=lambda nid: (
                nid in groupings, graph.node_boxes[nid].area, nid))
            node_claims[chosen].append(text)
        else:
            remaining.append(text)

    for node in doc.nodes:
        claims = node_claims[node.id]
        if claims:
            claims.sort(key=lambda t: (t.box.y0, t.box.x0))
            node.content = " ".join(t.content for t in claims)

    edge_claims: dict[str, list[TextDetection]] = {e.id: [] for e in doc.edges}
    courses = {
        e.id: edge_courses(graph.edge_classes[e.id], graph.edge_boxes[e.id])
        for e in doc.edges
    }
    for text in remaining:
        # candidate rule: IoU above the threshold or any positive
        # intersection; the union keeps small texts on large edge boxes
        candidates = [
            e for e in doc.edges
            if text.box.intersection_area(graph.edge_boxes[e.id]) > 0.0
            or _box_iou(text.box, graph.edge_boxes[e.id])
            >= params.edge_text_candidate_min
        ]
        if not candidates:
            continue  # background text
        center = text.box.center
        chosen = min(candidates, key=lambda e: (
            min(point_to_polyline_distance(center, c) for c in courses[e.id]),
            graph.edge_boxes[e.id].area, e.id))
        edge_claims[chosen.id].append(text)

    for edge in doc.edges:
        claims = edge_claims[edge.id]
        if not claims:
            continue
        claims.sort(key=lambda t: (t.box.y0, t.box.x0))
        graph.edge_texts[edge.id] = " ".join(t.content for t in claims)
        for text in claims:
            weight = parse_weight(text.content)
            if weight is not None:
                edge.weight = weight
                break
    return graph


def _box_iou(a: BBox, b: BBox) -> float:
    inter = a.intersection_area(b)
    union = a.area + b.area - inter
    return inter / union if union > 0.0 else 0.0


def reconstruct(detections: list[Detection], texts: list[TextDetection],
                params: ReconstructParams | None = None) -> ReconstructedGraph:
    """Full pipeline: groupings, edge links, then text mapping.

    Ids are assigned deterministically by detection order (n0, n1, ... and
    e0, e1, ...).  Never aborts on valid input; problems become warnings.
    """
    params = params or ReconstructParams()
    params.validate()
    node_dets = [d for d in detections if d.cls is None]
    edge_dets = [d for d in detections if d.cls is not None]

    grouping = detect_groupings(node_dets, params)
    linked, warnings = link_edges(node_dets, grouping, edge_dets, params)

    doc = GraphDoc()
    node_boxes: dict[str, BBox] = {}
    for i, det in enumerate(node_dets):
        doc.nodes.append(GraphNode(id=f"n{i}"))
        node_boxes[f"n{i}"] = det.box
    for i, container in sorted(grouping.items()):
        doc.nodes[container].sub_nodes.append(f"n{i}")

    edge_boxes: dict[str, BBox] = {}
    edge_classes: dict[str, object] = {}
    for k, link in enumerate(linked):
        edge_id = f"e{k}"
        det = edge_dets[link.det_index]
        doc.edges.append(GraphEdge(
            id=edge_id, source=f"n{link.source}", target=f"n{link.target}",
            bidirectional=link.bidirectional))
        edge_boxes[edge_id] = det.box
        edge_classes[edge_id] = det.cls

    graph = ReconstructedGraph(doc=doc, node_boxes=node_boxes,
                               edge_boxes=edge_boxes,
                               edge_classes=edge_classes, warnings=warnings)
    graph = map_texts(graph, texts, params)
    graph.validate()
    return graph
