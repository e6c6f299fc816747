"""Readers and writers for the on-disk formats.

Geometry lines use center/size coordinates normalized to [0, 1] by the
image dimensions, printed with 6 decimal places, single spaces, and LF line
endings, so identical inputs give byte-identical files:

- object annotations: ``<class_index> <cx> <cy> <w> <h>``
- text annotations:   ``<purpose> <cx> <cy> <w> <h> <utf8-content>``
- detections:         ``<class_index> <cx> <cy> <w> <h> <confidence>``
- text detections:    ``<cx> <cy> <w> <h> <confidence> <utf8-content>``

Graph documents are JSON with top-level ``nodes`` and ``edges`` arrays; a
``<stem>.boxes.json`` sidecar carries the per-element pixel boxes (plus any
edge texts and warnings) that the graph metrics need.  ``sizes.json`` maps
image stems to pixel dimensions so normalized files can be brought back to
pixel space.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .core import (
    BBox,
    Detection,
    GraphDoc,
    TextDetection,
    TextPurpose,
    object_class_from_index,
    object_class_index,
)


def ensure_dir(path: str | Path) -> Path:
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p


def atomic_write_text(path: str | Path, content: str) -> None:
    """Write via a temp file and rename so readers never see partial files."""
    path = Path(path)
    ensure_dir(path.parent)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(content, encoding="utf-8", newline="\n")
    os.replace(tmp, path)


def write_json(path: str | Path, data) -> None:
    atomic_write_text(path, json.dumps(data, indent=2) + "\n")


def read_json(path: str | Path):
    return json.loads(Path(path).read_text(encoding="utf-8"))


def normalize_box(box: BBox, width: float, height: float,
                  ) -> tuple[float, float, float, float]:
    cx = (box.x0 + box.x1) / 2.0 / width
    cy = (box.y0 + box.y1) / 2.0 / height
    return cx, cy, box.width / width, box.height / height


def denormalize_box(cx: float, cy: float, w: float, h: float,
                    width: float, height: float) -> BBox:
    return BBox((cx - w / 2.0) * width, (cy - h / 2.0) * height,
                (cx + w / 2.0) * width, (cy + h / 2.0) * height)


def _geometry(box: BBox, width: float, height: float) -> str:
    cx, cy, w, h = normalize_box(box, width, height)
    return f"{cx:.6f} {cy:.6f} {w:.6f} {h:.6f}"


def write_object_annotations(path, objects, width: int, height: int) -> None:
    lines = [f"{object_class_index(o.cls)} {_geometry(o.box, width, height)}"
             for o in objects]
    atomic_write_text(path, "".join(line + "\n" for line in lines))


def read_object_annotations(path, width: int, height: int,
                            ) -> list[tuple[object, BBox]]:
    """(class, box) pairs; class is None for nodes, an EdgeClass otherwise."""
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        parts = line.split()
        cls = object_class_from_index(int(parts[0]))
        box = denormalize_box(*map(float, parts[1:5]), width, height)
        out.append((cls, box))
    return out


def write_text_annotations(path, texts, width: int, height: int) -> None:
    lines = [f"{t.purpose.value} {_geometry(t.box, width, height)} {t.content}"
             for t in texts]
    atomic_write_text(path, "".join(line + "\n" for line in lines))


def read_text_annotations(path, width: int, height: int,
                          ) -> list[tuple[TextPurpose, BBox, str]]:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        parts = line.split(maxsplit=5)
        purpose = TextPurpose(parts[0])
        box = denormalize_box(*map(float, parts[1:5]), width, height)
        content = parts[5] if len(parts) > 5 else ""
        out.append((purpose, box, content))
    return out


def write_detections(path, detections: list[Detection],
                     width: int, height: int) -> None:
    lines = [f"{object_class_index(d.cls)} {_geometry(d.box, width, height)}"
             f" {d.confidence:.6f}" for d in detections]
    atomic_write_text(path, "".join(line + "\n" for line in lines))


def read_detections(path, width: int, height: int) -> list[Detection]:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        parts = line.split()
        cls = object_class_from_index(int(parts[0]))
        box = denormalize_box(*map(float, parts[1:5]), width, height)
        confidence = float(parts[5]) if len(parts) > 5 else 1.0
        out.append(Detection(cls=cls, box=box, confidence=confidence))
    return out


def write_text_detections(path, texts: list[TextDetection],
                          width: int, height: int) -> None:
    lines = [f"{_geometry(t.box, width, height)} {t.confidence:.6f} {t.content}"
             for t in texts]
    atomic_write_text(path, "".join(line + "\n" for line in lines))


def read_text_detections(path, width: int, height: int) -> list[TextDetection]:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        parts = line.split(maxsplit=5)
        box = denormalize_box(*map(float, parts[0:4]), width, height)
        confidence = float(parts[4])
        content = parts[5] if len(parts) > 5 else ""
        out.append(TextDetection(content=content, box=box,
                                 confidence=confidence))
    return out


def write_graph_doc(path, doc: GraphDoc) -> None:
    write_json(path, doc.to_json_dict())


def read_graph_doc(path) -> GraphDoc:
    return GraphDoc.from_json_dict(read_json(path))


def write_graph_sidecar(path, node_boxes: dict[str, BBox],
                        edge_boxes: dict[str, BBox],
                        edge_texts: dict[str, str],
                        warnings: list[str]) -> None:
    write_json(path, {
        "node_boxes": {k: list(v.as_tuple()) for k, v in node_boxes.items()},
        "edge_boxes": {k: list(v.as_tuple()) for k, v in edge_boxes.items()},
        "edge_texts": dict(edge_texts),
        "warnings": list(warnings),
    })


def read_graph_sidecar(path) -> tuple[dict[str, BBox], dict[str, BBox],
                                      dict[str, str], list[str]]:
    data = read_json(path)
    node_boxes = {k: BBox(*v) for k, v in data.get("node_boxes", {}).items()}
    edge_boxes = {k: BBox(*v) for k, v in data.get("edge_boxes", {}).items()}
    return (node_boxes, edge_boxes, dict(data.get("edge_texts", {})),
            list(data.get("warnings", [])))


def write_sizes(path, sizes: dict[str, tuple[int, int]]) -> None:
    write_json(path, {stem: list(wh) for stem, wh in sorted(sizes.items())})


def read_sizes(path) -> dict[str, tuple[int, int]]:
    return {stem: (int(w), int(h))
            for stem, (w, h) in read_json(path).items()}


def stems_in(directory: str | Path, suffix: str = ".txt") -> list[str]:
    """Sorted file stems with the given suffix in a directory."""
    d = Path(directory)
    if not d.is_dir():
        return []
    return sorted(p.name[:-len(suffix)] for p in d.iterdir()
                  if p.name.endswith(suffix)
                  and not p.name.endswith(".boxes.json"))
