"""Detection and text-recognition simulator.

Stands in for the trained detector and OCR stages of the pipeline: either a
perfect oracle copied from ground truth, or that oracle degraded by a
configurable noise model (drops, class confusion between angularly adjacent
direction classes, Gaussian box jitter, spurious node boxes, character
edits).  Deterministic under a fixed seed.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass

import numpy as np

from .core import BBox, Detection, EdgeClass, TextDetection

_EDIT_ALPHABET = string.ascii_lowercase + string.digits


def _axis_angle(vec: tuple[float, float]) -> float:
    return math.degrees(math.atan2(vec[1], vec[0])) % 360.0


def _circular_gap(a: float, b: float, period: float) -> float:
    d = abs(a - b) % period
    return min(d, period - d)


def _build_adjacency() -> dict[EdgeClass, tuple[EdgeClass, EdgeClass]]:
    from .core import DIRECTION_VECTORS

    table: dict[EdgeClass, tuple[EdgeClass, EdgeClass]] = {}
    uni = list(DIRECTION_VECTORS)
    for cls in uni:
        angle = _axis_angle(DIRECTION_VECTORS[cls])
        ranked = sorted(
            (other for other in uni if other is not cls),
            key=lambda o: _circular_gap(angle, _axis_angle(DIRECTION_VECTORS[o]),
                                        360.0))
        table[cls] = (ranked[0], ranked[1])
    bi_axes = {
        EdgeClass.BI_R2L: 0.0,
        EdgeClass.BI_TL2BR: 45.0,
        EdgeClass.BI_T2B: 90.0,
        EdgeClass.BI_TR2BL: 135.0,
    }
    for cls, angle in bi_axes.items():
        ranked = sorted(
            (other for other in bi_axes if other is not cls),
            key=lambda o: _circular_gap(angle, bi_axes[o], 180.0))
        table[cls] = (ranked[0], ranked[1])
    return table


# Each direction class confuses with the two classes nearest by angle,
# staying unidirectional or bidirectional like the original.
MISCLASS_NEIGHBORS = _build_adjacency()


@dataclass(frozen=True)
class NoiseParams:
    """Detector/OCR failure model.

    ``p_spurious`` is the expected number of extra node boxes per image;
    ``text_edit_rate`` is the expected character edits per 10 characters.
    Defaults are illustrative, not calibrated to any particular detector.
    """

    p_drop: float = 0.05
    p_misclass: float = 0.10
    jitter_sigma: float = 1.0
    p_spurious: float = 0.3
    confidence_range: tuple[float, float] = (0.5, 1.0)
    text_edit_rate: float = 0.5
    seed: int = 0

    def validate(self) -> None:
        for name in ("p_drop", "p_misclass"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} out of [0, 1]: {p}")
        if self.jitter_sigma < 0.0:
            raise ValueError("jitter_sigma must be non-negative")
        if self.p_spurious < 0.0:
            raise ValueError("p_spurious must be non-negative")
        lo, hi = self.confidence_range
        if not 0.0 <= lo <= hi <= 1.0:
            raise ValueError(f"confidence_range invalid: ({lo}, {hi})")
        if self.text_edit_rate < 0.0:
            raise ValueError("text_edit_rate must be non-negative")


def oracle_detections(annotations) -> list[Detection]:
    """One detection per object annotation, same box and class, confidence 1."""
    return [Detection(cls=o.cls, box=o.box, confidence=1.0)
            for o in annotations.objects]


def oracle_texts(annotations) -> list[TextDetection]:
    """One text detection per text annotation, confidence 1."""
    return [TextDetection(content=t.content, box=t.box, confidence=1.0)
            for t in annotations.texts]


def _jitter_box(rng: np.random.Generator, box: BBox, sigma: float,
                width: float, height: float) -> BBox:
    x0, y0, x1, y1 = (c + float(rng.normal(0.0, sigma))
                      for c in box.as_tuple())
    if x0 > x1:
        x0, x1 = x1, x0
    if y0 > y1:
        y0, y1 = y1, y0
    return BBox(min(max(x0, 0.0), width), min(max(y0, 0.0), height),
                min(max(x1, 0.0), width), min(max(y1, 0.0), height))


def perturb_detections(detections: list[Detection], params: NoiseParams,
                       width: float, height: float) -> list[Detection]:
    """Apply the noise model to a detection set; pure under params.seed."""
    params.validate()
    rng = np.random.default_rng(params.seed)
    lo, hi = params.confidence_range
    out: list[Detection] = []
    for det in detections:
        if rng.random() < params.p_drop:
            continue
        cls = det.cls
        if cls is not None and rng.random() < params.p_misclass:
            cls = MISCLASS_NEIGHBORS[cls][int(rng.integers(2))]
        box = _jitter_box(rng, det.box, params.jitter_sigma, width, height)
        confidence = float(rng.uniform(lo, hi))
        out.append(Detection(cls=cls, box=box, confidence=confidence))
    for _ in range(int(rng.poisson(params.p_spurious))):
        xs = sorted(float(rng.uniform(0.0, width)) for _ in range(2))
        ys = sorted(float(rng.uniform(0.0, height)) for _ in range(2))
        out.append(Detection(cls=None, box=BBox(xs[0], ys[0], xs[1], ys[1]),
                             confidence=float(rng.uniform(lo, hi))))
    return out


def _edit_text(rng: np.random.Generator, content: str, rate: float) -> str:
    if rate <= 0.0:
        return content
    p = min(rate / 10.0, 1.0)
    chars: list[str] = []
    for ch in content:
        if rng.random() >= p:
            chars.append(ch)
            continue
        op = int(rng.integers(3))
        if op == 0:  # substitute
            chars.append(_EDIT_ALPHABET[int(rng.integers(len(_EDIT_ALPHABET)))])
        elif op == 1:  # delete
            pass
        else:  # insert before
            chars.append(_EDIT_ALPHABET[int(rng.integers(len(_EDIT_ALPHABET)))])
            chars.append(ch)
    return "".join(chars)


def perturb_texts(texts: list[TextDetection], params: NoiseParams,
                  width: float, height: float) -> list[TextDetection]:
    """Apply drops, box jitter, character edits and confidence resampling."""
    params.validate()
    rng = np.random.default_rng(splitmix_shift(params.seed))
    lo, hi = params.confidence_range
    out: list[TextDetection] = []
    for text in texts:
        if rng.random() < params.p_drop:
            continue
        content = _edit_text(rng, text.content, params.text_edit_rate)
        box = _jitter_box(rng, text.box, params.jitter_sigma, width, height)
        out.append(TextDetection(content=content, box=box,
                                 confidence=float(rng.uniform(lo, hi))))
    return out


def splitmix_shift(seed: int) -> int:
    """Decorrelate the text stream from the detection stream."""
    from .generator import splitmix64

    return splitmix64(seed ^ 0x7465787473696D)  # "textsim"
