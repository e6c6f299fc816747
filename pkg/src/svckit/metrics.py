"""Evaluation metrics: detection mAP, graph matching errors, text errors.

Structure matching approximates a one-to-one mapping greedily: candidate
pairs above an IoU threshold are consumed in descending IoU order, nodes
with nodes and edges with edges.  Edge pairs additionally require their
endpoints' matched nodes to correspond (with direction in directed mode,
as an unordered pair in undirected mode).  The undirected matching extends
the directed one, so it always matches a superset of its pairs.

The isomorphic error counts prediction and ground-truth elements left
without a match (false positives plus false negatives); its normalized
variant divides by the ground-truth element count and can exceed 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import (
    BBox,
    Detection,
    EdgeClass,
    TextPurpose,
    edge_courses,
    iou,
    point_to_polyline_distance,
)
from .generator import AnnotationSet
from .reconstruct import ReconstructedGraph


class DegenerateGraphError(ValueError):
    """Raised when a normalization denominator is empty."""


@dataclass
class Matching:
    """One-to-one element correspondence between prediction and ground truth."""

    directed: bool
    node_pairs: list[tuple[str, str]] = field(default_factory=list)
    edge_pairs: list[tuple[str, str]] = field(default_factory=list)
    unmatched_pred_nodes: list[str] = field(default_factory=list)
    unmatched_gt_nodes: list[str] = field(default_factory=list)
    unmatched_pred_edges: list[str] = field(default_factory=list)
    unmatched_gt_edges: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class IsoReport:
    iso_error: int
    norm_iso_error: float
    node_norm_error: float
    edge_norm_error: float
    directed: bool


def _greedy_pairs(candidates: list[tuple[float, int, int]],
                  ) -> list[tuple[int, int]]:
    """Consume (iou, pred_idx, gt_idx) candidates by descending IoU."""
    taken_pred: set[int] = set()
    taken_gt: set[int] = set()
    pairs = []
    for score, pi, gi in sorted(candidates, key=lambda c: (-c[0], c[1], c[2])):
        if pi in taken_pred or gi in taken_gt:
            continue
        taken_pred.add(pi)
        taken_gt.add(gi)
        pairs.append((pi, gi))
    return pairs


def match_structures(pred: ReconstructedGraph, gt: ReconstructedGraph,
                     iou_threshold: float = 0.5,
                     directed: bool = True) -> Matching:
    """Greedy one-to-one matching of nodes and edges by box IoU.

    Edge candidates must have both endpoint nodes matched to the ground
    truth edge's endpoints; in directed mode a unidirectional prediction
    must also agree on orientation and bidirectional only matches
    bidirectional.  The undirected matching is built on top of the directed
    one, so its pairs are always a superset.
    """
    pred_nodes = pred.doc.nodes
    gt_nodes = gt.doc.nodes
    node_candidates = []
    for pi, pn in enumerate(pred_nodes):
        for gi, gn in enumerate(gt_nodes):
            score = iou(pred.node_boxes[pn.id], gt.node_boxes[gn.id])
            if score >= iou_threshold:
                node_candidates.append((score, pi, gi))
    node_pairs = _greedy_pairs(node_candidates)
    node_map = {pred_nodes[pi].id: gt_nodes[gi].id for pi, gi in node_pairs}

    def directed_eligible(pe, ge) -> bool:
        if pe.bidirectional != ge.bidirectional:
            return False
        src, tgt = node_map.get(pe.source), node_map.get(pe.target)
        if src is None or tgt is None:
            return False
        if pe.bidirectional:
            return {src, tgt} == {ge.source, ge.target}
        return src == ge.source and tgt == ge.target

    def undirected_eligible(pe, ge) -> bool:
        src, tgt = node_map.get(pe.source), node_map.get(pe.target)
        if src is None or tgt is None:
            return False
        return {src, tgt} == {ge.source, ge.target}

    pred_edges = pred.doc.edges
    gt_edges = gt.doc.edges

    def edge_candidates(eligible, skip_pred=(), skip_gt=()):
        out = []
        for pi, pe in enumerate(pred_edges):
            if pi in skip_pred:
                continue
            for gi, ge in enumerate(gt_edges):
                if gi in skip_gt:
                    continue
                score = iou(pred.edge_boxes[pe.id], gt.edge_boxes[ge.id])
                if score >= iou_threshold and eligible(pe, ge):
                    out.append((score, pi, gi))
        return out

    edge_pairs = _greedy_pairs(edge_candidates(directed_eligible))
    if not directed:
        matched_pred = {pi for pi, _ in edge_pairs}
        matched_gt = {gi for _, gi in edge_pairs}
        extra = edge_candidates(undirected_eligible,
                                skip_pred=matched_pred, skip_gt=matched_gt)
        edge_pairs = edge_pairs + _greedy_pairs(extra)

    matching = Matching(directed=directed)
    matching.node_pairs = [(pred_nodes[pi].id, gt_nodes[gi].id)
                           for pi, gi in node_pairs]
    matching.edge_pairs = [(pred_edges[pi].id, gt_edges[gi].id)
                           for pi, gi in edge_pairs]
    matched_pn = {p for p, _ in matching.node_pairs}
    matched_gn = {g for _, g in matching.node_pairs}
    matched_pe = {p for p, _ in matching.edge_pairs}
    matched_ge = {g for _, g in matching.edge_pairs}
    matching.unmatched_pred_nodes = [n.id for n in pred_nodes
                                     if n.id not in matched_pn]
    matching.unmatched_gt_nodes = [n.id for n in gt_nodes
                                   if n.id not in matched_gn]
    matching.unmatched_pred_edges = [e.id for e in pred_edges
                                     if e.id not in matched_pe]
    matching.unmatched_gt_edges = [e.id for e in gt_edges
                                   if e.id not in matched_ge]
    return matching


def isomorphic_error(matching: Matching) -> int:
    """Count of prediction and ground-truth elements without a match."""
    return (len(matching.unmatched_pred_nodes)
            + len(matching.unmatched_gt_nodes)
            + len(matching.unmatched_pred_edges)
            + len(matching.unmatched_gt_edges))


def _ratio(numerator: int, denominator: int) -> float:
    if denominator == 0:
        return 0.0 if numerator == 0 else math.inf
    return numerator / denominator


def norm_isomorphic_error(matching: Matching, gt_node_count: int,
                          gt_edge_count: int) -> IsoReport:
    """Isomorphic error normalized by the ground-truth element counts."""
    if gt_node_count + gt_edge_count == 0:
        raise DegenerateGraphError("ground truth has no nodes or edges")
    unmatched_nodes = (len(matching.unmatched_pred_nodes)
                       + len(matching.unmatched_gt_nodes))
    unmatched_edges = (len(matching.unmatched_pred_edges)
                       + len(matching.unmatched_gt_edges))
    total = unmatched_nodes + unmatched_edges
    return IsoReport(
        iso_error=total,
        norm_iso_error=total / (gt_node_count + gt_edge_count),
        node_norm_error=_ratio(unmatched_nodes, gt_node_count),
        edge_norm_error=_ratio(unmatched_edges, gt_edge_count),
        directed=matching.directed,
    )


def levenshtein(x: str, y: str) -> int:
    """Minimum number of deletions, insertions and replacements turning
    ``x`` into ``y``."""
    if len(x) < len(y):
        x, y = y, x
    previous = list(range(len(y) + 1))
    for i, cx in enumerate(x, start=1):
        current = [i]
        for j, cy in enumerate(y, start=1):
            current.append(min(previous[j] + 1,
                               current[j - 1] + 1,
                               previous[j - 1] + (cx != cy)))
        previous = current
    return previous[len(y)]


def text_rec_error(matching: Matching, pred_contents: dict[str, str],
                   gt_contents: dict[str, str]) -> float:
    """Total edit distance over matched structures divided by the total
    ground-truth character count of those structures."""
    pairs = matching.node_pairs + matching.edge_pairs
    denominator = sum(len(gt_contents.get(g, "")) for _, g in pairs)
    if denominator == 0:
        raise DegenerateGraphError("matched ground-truth contents are empty")
    numerator = sum(
        levenshtein(gt_contents.get(g, ""), pred_contents.get(p, ""))
        for p, g in pairs)
    return numerator / denominator


COCO_IOU_THRESHOLDS = tuple(t / 100.0 for t in range(50, 100, 5))


@dataclass
class ClassDetectionStats:
    labels: int
    average_precision: float | None  # None when the class has no labels
    precision_at_50: float | None


@dataclass
class DetectionReport:
    per_class: dict[str, ClassDetectionStats]
    mean_ap: float
    mean_precision_at_50: float
    total_labels: int

    def to_json_dict(self) -> dict:
        classes = {}
        for name, stats in self.per_class.items():
            classes[name] = {
                "labels": stats.labels,
                "map_percent": (None if stats.average_precision is None
                                else round(stats.average_precision * 100, 1)),
                "precision_at_50_percent": (
                    None if stats.precision_at_50 is None
                    else round(stats.precision_at_50 * 100, 1)),
            }
        return {
            "classes": classes,
            "all": {"labels": self.total_labels,
                    "map_percent": round(self.mean_ap * 100, 1),
                    "precision_at_50_percent":
                        round(self.mean_precision_at_50 * 100, 1)},
        }


def _interpolated_ap(recalls: list[float], precisions: list[float]) -> float:
    """Area under the precision-recall curve, 101-point interpolation."""
    total = 0.0
    for i in range(101):
        r = i / 100.0
        best = 0.0
        for rec, prec in zip(recalls, precisions):
            if rec >= r and prec > best:
                best = prec
        total += best
    return total / 101.0


def average_precision(detections: list[tuple[str, Detection]],
                      gt_boxes: dict[str, list[BBox]],
                      iou_thresholds=COCO_IOU_THRESHOLDS,
                      ) -> tuple[float | None, float | None]:
    """AP for one class over a dataset, averaged over the IoU thresholds.

    ``detections`` are (image stem, detection) pairs; ``gt_boxes`` maps
    stems to that class's ground-truth boxes.  Returns (AP, precision at
    the first threshold); both None when the class has no ground truth.
    """
    total_gt = sum(len(v) for v in gt_boxes.values())
    if total_gt == 0:
        return None, None
    ordered = sorted(enumerate(detections),
                     key=lambda item: (-item[1][1].confidence, item[1][0],
                                       item[0]))
    ap_sum = 0.0
    precision_at_first = 0.0
    for t_index, threshold in enumerate(iou_thresholds):
        matched: dict[str, list[bool]] = {
            stem: [False] * len(boxes) for stem, boxes in gt_boxes.items()}
        tp, fp = 0, 0
        recalls: list[float] = []
        precisions: list[float] = []
        for _, (stem, det) in ordered:
            best_iou, best_j = 0.0, -1
            for j, box in enumerate(gt_boxes.get(stem, [])):
                if matched.get(stem, [])[j]:
                    continue
                score = iou(det.box, box)
                if score > best_iou:
                    best_iou, best_j = score, j
            if best_j >= 0 and best_iou >= threshold:
                matched[stem][best_j] = True
                tp += 1
            else:
                fp += 1
            recalls.append(tp / total_gt)
            precisions.append(tp / (tp + fp))
        ap_sum += _interpolated_ap(recalls, precisions)
        if t_index == 0:
            precision_at_first = (tp / (tp + fp)) if (tp + fp) else 0.0
    return ap_sum / len(iou_thresholds), precision_at_first


def evaluate_detections(per_image_detections: dict[str, list[Detection]],
                        per_image_gt: dict[str, list[tuple[object, BBox]]],
                        iou_thresholds=COCO_IOU_THRESHOLDS) -> DetectionReport:
    """mAP over all classes that appear in the ground truth.

    Classes with zero ground-truth instances are reported with None and
    excluded from the mean.
    """
    class_names = ["node"] + [c.value for c in EdgeClass]
    per_class: dict[str, ClassDetectionStats] = {}
    ap_values: list[float] = []
    precision_values: list[float] = []
    total_labels = 0
    for name in class_names:
        dets = []
        gts: dict[str, list[BBox]] = {}
        for stem, items in per_image_gt.items():
            boxes = [box for cls, box in items
                     if ("node" if cls is None else cls.value) == name]
            if boxes:
                gts[stem] = boxes
        for stem, items in per_image_detections.items():
            for det in items:
                if ("node" if det.cls is None else det.cls.value) == name:
                    dets.append((stem, det))
        labels = sum(len(v) for v in gts.values())
        total_labels += labels
        ap, precision = average_precision(dets, gts, iou_thresholds)
        per_class[name] = ClassDetectionStats(
            labels=labels, average_precision=ap, precision_at_50=precision)
        if ap is not None:
            ap_values.append(ap)
            precision_values.append(precision or 0.0)
    mean_ap = sum(ap_values) / len(ap_values) if ap_values else 0.0
    mean_precision = (sum(precision_values) / len(precision_values)
                      if precision_values else 0.0)
    return DetectionReport(per_class=per_class, mean_ap=mean_ap,
                           mean_precision_at_50=mean_precision,
                           total_labels=total_labels)


# A generated scene counts as ambiguous when two edge boxes overlap heavily
# or a weight text is nearly equidistant to its two best candidate edges.
AMBIGUITY_EDGE_IOU = 0.3
AMBIGUITY_COURSE_TIE_PX = 2.0


def is_ambiguous_scene(annotations: AnnotationSet) -> bool:
    """Whether the ground-truth graph is not uniquely recoverable from
    boxes alone (overlapping edges or near-tied weight text placement)."""
    edge_objects = [(o.cls, o.box) for o in annotations.objects
                    if o.cls is not None]
    for i in range(len(edge_objects)):
        for j in range(i + 1, len(edge_objects)):
            if iou(edge_objects[i][1], edge_objects[j][1]) > AMBIGUITY_EDGE_IOU:
                return True
    for text in annotations.texts:
        if text.purpose is not TextPurpose.EDGE:
            continue
        center = text.box.center
        distances = []
        for cls, box in edge_objects:
            if text.box.intersection_area(box) <= 0.0:
                continue
            courses = edge_courses(cls, box)
            distances.append(min(point_to_polyline_distance(center, c)
                                 for c in courses))
        distances.sort()
        if len(distances) >= 2 \
                and distances[1] - distances[0] < AMBIGUITY_COURSE_TIE_PX:
            return True
    return False


def aggregate(values: list[float]) -> dict[str, float] | None:
    """Mean/std/best/worst summary of per-image metric values."""
    if not values:
        return None
    mean = sum(values) / len(values)
    variance = sum((v - mean) ** 2 for v in values) / len(values)
    return {"mean": mean, "std": math.sqrt(variance),
            "best": min(values), "worst": max(values)}
