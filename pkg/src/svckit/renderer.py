"""Deterministic rasterizer for sampled scenes and debug overlays.

Everything is drawn with analytic coverage tests on a numpy buffer: strokes
are signed-distance bands, arrow tips are triangles, text comes from the
embedded monospace glyph set in :mod:`svckit._glyphs` scaled by nearest
neighbor.  Anti-aliasing, when enabled, is 4x4 supersampled coverage of the
shape primitives; glyphs stay binary.  The same scene always produces the
same pixels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._glyphs import FALLBACK, GLYPHS, GLYPH_H, GLYPH_W
from .core import BBox, Detection, EdgeClass, Point, TextDetection

# Arrow tip geometry: isoceles triangle, length 4 line widths, 25 deg half
# angle.  ``tip_extent`` is the figure used when expanding edge boxes.
TIP_LENGTH_FACTOR = 4.0
TIP_HALF_ANGLE_DEG = 25.0

DASH_ON_FACTOR = 6.0
DASH_OFF_FACTOR = 4.0

_AA_OFFSETS = (np.arange(4) + 0.5) / 4.0 - 0.5
_NO_AA_OFFSETS = np.zeros(1)


def tip_extent(line_width: float) -> float:
    """How far an arrow tip reaches, measured as the tip length."""
    return TIP_LENGTH_FACTOR * line_width


def arrowhead_vertices(tip: Point, direction: tuple[float, float],
                       line_width: float) -> tuple[Point, Point, Point]:
    """Vertices (apex, base corner, base corner) of a tip pointing along
    ``direction`` with its apex at ``tip``."""
    ux, uy = direction
    norm = math.hypot(ux, uy)
    ux, uy = ux / norm, uy / norm
    length = tip_extent(line_width)
    half_w = length * math.tan(math.radians(TIP_HALF_ANGLE_DEG))
    bx, by = tip.x - length * ux, tip.y - length * uy
    nx, ny = -uy, ux
    return (tip,
            Point(bx + half_w * nx, by + half_w * ny),
            Point(bx - half_w * nx, by - half_w * ny))


def _polyline_tips(polyline: list[Point], line_width: float,
                   tip_at_start: bool, tip_at_end: bool,
                   ) -> list[tuple[Point, Point, Point]]:
    tips = []
    if tip_at_end:
        a, b = polyline[-2], polyline[-1]
        tips.append(arrowhead_vertices(b, (b.x - a.x, b.y - a.y), line_width))
    if tip_at_start:
        a, b = polyline[1], polyline[0]
        tips.append(arrowhead_vertices(b, (b.x - a.x, b.y - a.y), line_width))
    return tips


def edge_envelope_box(polyline: list[Point], line_width: float,
                      tip_at_start: bool, tip_at_end: bool) -> BBox:
    """Tight bounding box of everything drawn for an edge: stroke bands,
    round caps and joins, and arrow tips, padded by half a pixel so every
    painted pixel center falls inside.

    Never larger than the polyline's bounding box expanded by half the line
    width plus the tip extent on each side.
    """
    half = line_width / 2.0
    xs: list[float] = []
    ys: list[float] = []
    for a, b in zip(polyline, polyline[1:]):
        ux, uy = b.x - a.x, b.y - a.y
        norm = math.hypot(ux, uy) or 1.0
        nx, ny = -uy / norm, ux / norm
        for p in (a, b):
            xs.extend((p.x + half * nx, p.x - half * nx))
            ys.extend((p.y + half * ny, p.y - half * ny))
    for p in polyline:  # round caps and joins
        xs.extend((p.x - half, p.x + half))
        ys.extend((p.y - half, p.y + half))
    for tri in _polyline_tips(polyline, line_width, tip_at_start, tip_at_end):
        for v in tri:
            xs.append(v.x)
            ys.append(v.y)
    return BBox(min(xs), min(ys), max(xs), max(ys)).expand(0.5)


@dataclass
class RasterImage:
    """Row-major 8-bit RGB image."""

    width: int
    height: int
    pixels: np.ndarray  # shape (height, width, 3), dtype uint8
    warnings: list[str] = field(default_factory=list)

    @classmethod
    def blank(cls, width: int, height: int, value: int = 255) -> "RasterImage":
        buf = np.full((height, width, 3), value, dtype=np.uint8)
        return cls(width=width, height=height, pixels=buf)

    def copy(self) -> "RasterImage":
        return RasterImage(self.width, self.height, self.pixels.copy(),
                           list(self.warnings))

    def save_png(self, path) -> None:
        from PIL import Image

        Image.fromarray(self.pixels, "RGB").save(path, format="PNG")

    @classmethod
    def load_png(cls, path) -> "RasterImage":
        from PIL import Image

        with Image.open(path) as img:
            rgb = np.asarray(img.convert("RGB"), dtype=np.uint8).copy()
        return cls(width=rgb.shape[1], height=rgb.shape[0], pixels=rgb)


class _Canvas:
    """Grayscale drawing surface with optional supersampled coverage."""

    def __init__(self, width: int, height: int, antialias: bool):
        self.width = width
        self.height = height
        self.gray = np.full((height, width), 255, dtype=np.uint8)
        self.offsets = _AA_OFFSETS if antialias else _NO_AA_OFFSETS

    def _window(self, x0: float, y0: float, x1: float, y1: float):
        wx0 = max(0, int(math.floor(x0)))
        wy0 = max(0, int(math.floor(y0)))
        wx1 = min(self.width, int(math.ceil(x1)) + 1)
        wy1 = min(self.height, int(math.ceil(y1)) + 1)
        if wx0 >= wx1 or wy0 >= wy1:
            return None
        return wx0, wy0, wx1, wy1

    def _coverage(self, window, predicate) -> np.ndarray:
        wx0, wy0, wx1, wy1 = window
        ss = len(self.offsets)
        xs = np.add.outer(np.arange(wx0, wx1, dtype=np.float64),
                          self.offsets).ravel()
        ys = np.add.outer(np.arange(wy0, wy1, dtype=np.float64),
                          self.offsets).ravel()
        xx, yy = np.meshgrid(xs, ys)
        hit = predicate(xx, yy)
        if ss == 1:
            return hit.astype(np.float64)
        h, w = wy1 - wy0, wx1 - wx0
        return hit.reshape(h, ss, w, ss).mean(axis=(1, 3))

    def _paint(self, window, coverage: np.ndarray, white: bool) -> None:
        wx0, wy0, wx1, wy1 = window
        region = self.gray[wy0:wy1, wx0:wx1]
        mask = coverage > 0.0
        if white:
            level = np.rint(coverage * 255.0).astype(np.uint8)
            region[mask] = np.maximum(region[mask], level[mask])
        else:
            level = np.rint((1.0 - coverage) * 255.0).astype(np.uint8)
            region[mask] = np.minimum(region[mask], level[mask])

    def draw(self, bounds: tuple[float, float, float, float], predicate,
             white: bool = False) -> None:
        window = self._window(*bounds)
        if window is None:
            return
        self._paint(window, self._coverage(window, predicate), white)


def _stroke_band(xx, yy, a: Point, b: Point, line_width: float,
                 extend_ends: float = 0.0,
                 dash_phase: float | None = None):
    """Coverage of an oriented stroke band.  The signed lateral offset uses
    a half-open interval so even line widths paint exactly that many pixel
    rows; ``dash_phase`` turns on the 6-on/4-off dash pattern starting at
    the given arc length."""
    half = line_width / 2.0
    ux, uy = b.x - a.x, b.y - a.y
    length = math.hypot(ux, uy)
    if length == 0.0:
        return np.zeros_like(xx, dtype=bool)
    ux, uy = ux / length, uy / length
    s = (xx - a.x) * ux + (yy - a.y) * uy
    t = -(xx - a.x) * uy + (yy - a.y) * ux
    hit = ((s >= -extend_ends) & (s <= length + extend_ends)
           & (t >= -half) & (t < half))
    if dash_phase is not None:
        on = DASH_ON_FACTOR * line_width
        period = on + DASH_OFF_FACTOR * line_width
        hit &= ((s + dash_phase) % period) < on
    return hit


def _disk(xx, yy, center: Point, radius: float):
    return (xx - center.x) ** 2 + (yy - center.y) ** 2 < radius * radius


def _triangle(xx, yy, tri: tuple[Point, Point, Point]):
    v0, v1, v2 = tri
    area = (v1.x - v0.x) * (v2.y - v0.y) - (v1.y - v0.y) * (v2.x - v0.x)
    if area < 0:
        v1, v2 = v2, v1
    hit = np.ones_like(xx, dtype=bool)
    for a, b in ((v0, v1), (v1, v2), (v2, v0)):
        hit &= ((b.x - a.x) * (yy - a.y) - (b.y - a.y) * (xx - a.x)) >= 0.0
    return hit


def _polyline_bounds(points: list[Point], margin: float):
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    return (min(xs) - margin, min(ys) - margin,
            max(xs) + margin, max(ys) + margin)


def _draw_polyline(canvas: _Canvas, points: list[Point], line_width: float,
                   dashed: bool = False) -> None:
    phase = 0.0
    for a, b in zip(points, points[1:]):
        bounds = _polyline_bounds([a, b], line_width)
        seg_phase = phase if dashed else None
        canvas.draw(bounds, lambda xx, yy, a=a, b=b, p=seg_phase:
                    _stroke_band(xx, yy, a, b, line_width, dash_phase=p))
        phase += math.hypot(b.x - a.x, b.y - a.y)
    half = line_width / 2.0
    for p in points:  # round caps and joins
        canvas.draw((p.x - half, p.y - half, p.x + half, p.y + half),
                    lambda xx, yy, p=p: _disk(xx, yy, p, half))


def _draw_rect_stroke(canvas: _Canvas, box: BBox, line_width: float) -> None:
    half = line_width / 2.0
    corners = [Point(box.x0, box.y0), Point(box.x1, box.y0),
               Point(box.x1, box.y1), Point(box.x0, box.y1)]
    for a, b in zip(corners, corners[1:] + corners[:1]):
        bounds = _polyline_bounds([a, b], line_width)
        canvas.draw(bounds, lambda xx, yy, a=a, b=b:
                    _stroke_band(xx, yy, a, b, line_width, extend_ends=half))


def _draw_rect_fill(canvas: _Canvas, box: BBox, white: bool) -> None:
    canvas.draw(box.as_tuple(),
                lambda xx, yy: (xx >= box.x0) & (xx < box.x1)
                               & (yy >= box.y0) & (yy < box.y1),
                white=white)


def _draw_ellipse_stroke(canvas: _Canvas, box: BBox, line_width: float) -> None:
    cx, cy = box.center
    a = max(box.width / 2.0, 0.5)
    b = max(box.height / 2.0, 0.5)
    half = line_width / 2.0

    def predicate(xx, yy):
        fx = (xx - cx) / a
        fy = (yy - cy) / b
        f = fx * fx + fy * fy - 1.0
        gx = 2.0 * (xx - cx) / (a * a)
        gy = 2.0 * (yy - cy) / (b * b)
        grad = np.sqrt(gx * gx + gy * gy)
        dist = np.abs(f) / np.maximum(grad, 1e-9)
        return (dist < half) & (grad > 1e-9)

    canvas.draw(box.expand(line_width).as_tuple(), predicate)


def _draw_tip(canvas: _Canvas, tri: tuple[Point, Point, Point],
              line_width: float, filled: bool) -> None:
    bounds = _polyline_bounds(list(tri), line_width)
    if filled:
        canvas.draw(bounds, lambda xx, yy: _triangle(xx, yy, tri))
    else:
        apex, b1, b2 = tri
        for end in (b1, b2):
            canvas.draw(bounds, lambda xx, yy, e=end:
                        _stroke_band(xx, yy, apex, e, line_width))
        half = line_width / 2.0
        for p in tri:
            canvas.draw((p.x - half, p.y - half, p.x + half, p.y + half),
                        lambda xx, yy, p=p: _disk(xx, yy, p, half))


def _glyph_rows(ch: str) -> tuple[int, ...]:
    code = ord(ch)
    if 32 <= code <= 126:
        return GLYPHS[code - 32]
    return FALLBACK


def glyph_bitmap(ch: str) -> np.ndarray:
    rows = _glyph_rows(ch)
    bits = np.zeros((GLYPH_H, GLYPH_W), dtype=bool)
    for y, mask in enumerate(rows):
        for x in range(GLYPH_W):
            if mask & (1 << x):
                bits[y, x] = True
    return bits


def text_extent(content: str, text_size: int) -> tuple[float, float]:
    """Pixel width and height of a string at the given glyph height."""
    scale = text_size / GLYPH_H
    return (len(content) * GLYPH_W * scale, float(text_size))


def _blit_text(gray: np.ndarray, content: str, x: float, y: float,
               text_size: int, warnings: list[str],
               color_buf: np.ndarray | None = None,
               color: tuple[int, int, int] | None = None) -> None:
    """Nearest-neighbor scaled glyph blit at top-left (x, y)."""
    height, width = gray.shape[:2]
    out_h = int(round(text_size))
    out_w_per = int(round(GLYPH_W * text_size / GLYPH_H))
    if out_h <= 0 or out_w_per <= 0:
        return
    sy = (np.arange(out_h) * GLYPH_H) // out_h
    sx = (np.arange(out_w_per) * GLYPH_W) // out_w_per
    for i, ch in enumerate(content):
        if not (32 <= ord(ch) <= 126):
            warnings.append(f"glyph missing for {ch!r}, drew placeholder")
        bits = glyph_bitmap(ch)[np.ix_(sy, sx)]
        gx = int(round(x + i * out_w_per))
        gy = int(round(y))
        x0, y0 = max(0, gx), max(0, gy)
        x1, y1 = min(width, gx + out_w_per), min(height, gy + out_h)
        if x0 >= x1 or y0 >= y1:
            continue
        window = bits[y0 - gy:y1 - gy, x0 - gx:x1 - gx]
        if color_buf is None:
            region = gray[y0:y1, x0:x1]
            region[window] = 0
        else:
            region = color_buf[y0:y1, x0:x1]
            region[window] = color


def render_scene(scene) -> RasterImage:
    """Rasterize a sampled scene to an 8-bit RGB image.

    White background; shapes stroked in black at the scene line width;
    edges solid or dashed with filled or line-work tips at their directed
    ends; node contents, edge weights (optionally on a white backing
    rectangle) and background texts drawn with the embedded glyph set.
    """
    canvas = _Canvas(scene.width, scene.height, scene.antialias)
    warnings: list[str] = []
    lw = float(scene.line_width)
    ts = int(scene.text_size)

    for grouping in scene.groupings:
        _draw_rect_stroke(canvas, grouping.box, lw)

    for edge in scene.edges:
        _draw_polyline(canvas, edge.polyline, lw, dashed=edge.striped)
        for tri in _polyline_tips(edge.polyline, lw,
                                  tip_at_start=edge.bidirectional,
                                  tip_at_end=True):
            _draw_tip(canvas, tri, lw, filled=edge.filled_tip)

    text_canvas = canvas.gray
    for edge in scene.edges:
        box = edge.weight_text_box
        if edge.weight_background:
            _draw_rect_fill(canvas, box.expand(2.0), white=True)
        _blit_text(text_canvas, f"{edge.weight:.2f}", box.x0, box.y0, ts,
                   warnings)

    for node in scene.nodes:
        if node.shape == "ellipse":
            _draw_ellipse_stroke(canvas, node.box, lw)
        else:
            _draw_rect_stroke(canvas, node.box, lw)
        tw, th = text_extent(node.content, ts)
        _blit_text(text_canvas, node.content,
                   node.box.center.x - tw / 2.0,
                   node.box.center.y - th / 2.0, ts, warnings)

    for bg in scene.background_texts:
        _blit_text(text_canvas, bg.content, bg.box.x0, bg.box.y0, ts, warnings)

    rgb = np.repeat(canvas.gray[:, :, np.newaxis], 3, axis=2)
    return RasterImage(scene.width, scene.height, rgb, warnings)


# Distinct colors for overlay boxes, wire-index order (node first).
_OVERLAY_PALETTE = (
    (220, 40, 40), (40, 110, 220), (40, 170, 60), (200, 130, 20),
    (130, 60, 200), (20, 170, 170), (170, 20, 130), (110, 110, 30),
    (240, 90, 150), (90, 150, 240), (150, 200, 40), (230, 60, 230),
    (60, 60, 60),
)
_TEXT_DET_COLOR = (250, 160, 30)


def _overlay_box(pixels: np.ndarray, box: BBox,
                 color: tuple[int, int, int]) -> None:
    height, width = pixels.shape[:2]
    x0 = int(round(max(0.0, min(box.x0, width - 1.0))))
    x1 = int(round(max(0.0, min(box.x1, width - 1.0))))
    y0 = int(round(max(0.0, min(box.y0, height - 1.0))))
    y1 = int(round(max(0.0, min(box.y1, height - 1.0))))
    pixels[y0:y1 + 1, x0] = color
    pixels[y0:y1 + 1, x1] = color
    pixels[y0, x0:x1 + 1] = color
    pixels[y1, x0:x1 + 1] = color


def render_overlay(image: RasterImage,
                   detections: list[Detection] | None = None,
                   texts: list[TextDetection] | None = None) -> RasterImage:
    """Class-colored boxes and labels drawn over a copy of ``image``."""
    from .core import object_class_index

    out = image.copy()
    for det in detections or []:
        idx = object_class_index(det.cls)
        color = _OVERLAY_PALETTE[idx]
        _overlay_box(out.pixels, det.box, color)
        label = "node" if det.cls is None else det.cls.value
        _blit_text(out.pixels[:, :, 0], label, det.box.x0 + 2, det.box.y0 + 1,
                   10, out.warnings, color_buf=out.pixels, color=color)
    for text in texts or []:
        _overlay_box(out.pixels, text.box, _TEXT_DET_COLOR)
    return out
