"""Synthetic structured-visual-content toolkit.

Procedurally generates flow-chart-like images with full ground truth
(bounding boxes, edge direction classes, graph documents), simulates
detector/OCR output, reconstructs graph representations from detections,
and scores predictions with detection and graph metrics.
"""

from .core import (
    BBox,
    Detection,
    EdgeClass,
    GraphDoc,
    GraphEdge,
    GraphNode,
    Point,
    TextDetection,
    TextPurpose,
    connection_points,
    containment_ratio,
    edge_class_from_endpoints,
    edge_courses,
    iou,
)
from .generator import (
    AnnotationSet,
    GenConfig,
    SceneSpec,
    derive_seed,
    emit_ground_truth,
    generate_dataset,
    sample_scene,
    split_counts,
)
from .metrics import (
    DegenerateGraphError,
    IsoReport,
    Matching,
    evaluate_detections,
    is_ambiguous_scene,
    isomorphic_error,
    levenshtein,
    match_structures,
    norm_isomorphic_error,
    text_rec_error,
)
from .reconstruct import ReconstructedGraph, ReconstructParams, reconstruct
from .renderer import RasterImage, render_overlay, render_scene
from .simulate import (
    NoiseParams,
    oracle_detections,
    oracle_texts,
    perturb_detections,
    perturb_texts,
)

__all__ = [
    "AnnotationSet",
    "BBox",
    "DegenerateGraphError",
    "Detection",
    "EdgeClass",
    "GenConfig",
    "GraphDoc",
    "GraphEdge",
    "GraphNode",
    "IsoReport",
    "Matching",
    "NoiseParams",
    "Point",
    "RasterImage",
    "ReconstructParams",
    "ReconstructedGraph",
    "SceneSpec",
    "TextDetection",
    "TextPurpose",
    "connection_points",
    "containment_ratio",
    "derive_seed",
    "edge_class_from_endpoints",
    "edge_courses",
    "emit_ground_truth",
    "evaluate_detections",
    "generate_dataset",
    "iou",
    "is_ambiguous_scene",
    "isomorphic_error",
    "levenshtein",
    "match_structures",
    "norm_isomorphic_error",
    "oracle_detections",
    "oracle_texts",
    "perturb_detections",
    "perturb_texts",
    "reconstruct",
    "render_overlay",
    "render_scene",
    "sample_scene",
    "split_counts",
    "text_rec_error",
]
