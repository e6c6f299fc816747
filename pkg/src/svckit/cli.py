"""Command-line entry point: one binary, five subcommands.

``generate`` writes a synthetic dataset tree, ``simulate`` turns its ground
truth into (optionally noisy) detection files, ``reconstruct`` builds graph
documents from detections, ``evaluate`` scores predicted graphs (and
optionally detections) against ground truth, and ``render`` draws overlay
images for inspection.

Exit codes: 0 ok, 2 configuration/usage error, 3 I/O error, 4 input trees
disagree.  Every run writes a ``run.json`` with the fully resolved
configuration and seed next to its outputs.  The SVC_SEED environment
variable overrides ``--seed`` when set.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

from . import formats, metrics
from .core import GraphDoc
from .generator import (
    GenConfig,
    derive_seed,
    generate_dataset,
)
from .reconstruct import ReconstructedGraph, ReconstructParams, reconstruct
from .renderer import RasterImage, render_overlay
from .simulate import NoiseParams, oracle_detections, oracle_texts, \
    perturb_detections, perturb_texts

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_MISMATCH = 4


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_config(path: str | None, cls, overrides: dict):
    values = {}
    if path:
        try:
            values = formats.read_json(path)
        except FileNotFoundError:
            raise _CliError(f"config file not found: {path}", EXIT_CONFIG)
        except json.JSONDecodeError as exc:
            raise _CliError(f"config file {path} is not valid JSON: {exc}",
                            EXIT_CONFIG)
        if not isinstance(values, dict):
            raise _CliError(f"config file {path} must hold an object",
                            EXIT_CONFIG)
    values.update({k: v for k, v in overrides.items() if v is not None})
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = set(values) - known
    if unknown:
        raise _CliError(
            f"unknown config keys: {', '.join(sorted(unknown))}", EXIT_CONFIG)
    for f in dataclasses.fields(cls):
        if f.name in values and isinstance(values[f.name], list):
            values[f.name] = tuple(values[f.name])
    try:
        config = cls(**values)
        config.validate()
    except (TypeError, ValueError) as exc:
        raise _CliError(f"invalid configuration: {exc}", EXIT_CONFIG)
    return config


def _resolve_seed(seed: int | None, default: int = 0) -> int:
    env = os.environ.get("SVC_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise _CliError(f"SVC_SEED is not an integer: {env!r}", EXIT_CONFIG)
    return default if seed is None else seed


def _config_dict(config) -> dict:
    out = {}
    for f in dataclasses.fields(config):
        value = getattr(config, f.name)
        out[f.name] = list(value) if isinstance(value, tuple) else value
    return out


def _write_run_record(out_dir: Path, subcommand: str, seed: int,
                      config, extra: dict) -> None:
    record = {"subcommand": subcommand, "seed": seed,
              "config": _config_dict(config) if config is not None else None}
    record.update(extra)
    formats.write_json(out_dir / "run.json", record)


def _parse_split(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise _CliError(f"--split needs three fractions, got {text!r}",
                        EXIT_CONFIG)
    try:
        fractions = tuple(float(p) for p in parts)
    except ValueError:
        raise _CliError(f"--split fractions must be numbers: {text!r}",
                        EXIT_CONFIG)
    return fractions  # type: ignore[return-value]


def cmd_generate(args) -> int:
    config = _load_config(args.config, GenConfig, {})
    seed = _resolve_seed(args.seed, default=config.seed)
    config = dataclasses.replace(config, seed=seed)
    split = _parse_split(args.split)
    out = Path(args.out)
    try:
        manifest = generate_dataset(
            config, args.count, split=split, out_dir=out, master_seed=seed,
            workers=args.workers, skip_images=args.skip_images)
    except ValueError as exc:
        raise _CliError(str(exc), EXIT_CONFIG)
    except OSError as exc:
        raise _CliError(f"cannot write dataset: {exc}", EXIT_IO)
    _write_run_record(out, "generate", seed, config,
                      {"count": args.count, "split": list(split),
                       "skip_images": args.skip_images})
    print(json.dumps({"out": str(out), **manifest.split_counts,
                      "warnings": len(manifest.warnings)}))
    return EXIT_OK


def _dataset_sizes(split_dir: Path) -> dict[str, tuple[int, int]]:
    sizes_path = split_dir / "sizes.json"
    if sizes_path.exists():
        return formats.read_sizes(sizes_path)
    images = split_dir / "images"
    if not images.is_dir():
        raise _CliError(
            f"no sizes.json and no images/ under {split_dir}", EXIT_IO)
    sizes = {}
    for png in sorted(images.glob("*.png")):
        image = RasterImage.load_png(png)
        sizes[png.stem] = (image.width, image.height)
    return sizes


def cmd_simulate(args) -> int:
    params = _load_config(args.noise_config, NoiseParams, {})
    seed = _resolve_seed(args.seed, default=params.seed)
    dataset = Path(args.dataset)
    labels_dir = dataset / "labels"
    texts_dir = dataset / "texts"
    if not labels_dir.is_dir() or not texts_dir.is_dir():
        raise _CliError(f"{dataset} is not a dataset split directory"
                        " (labels/ and texts/ required)", EXIT_IO)
    sizes = _dataset_sizes(dataset)
    stems = formats.stems_in(labels_dir)
    missing = [s for s in stems if s not in sizes]
    if missing:
        raise _CliError(f"sizes unknown for stems: {missing[:5]}", EXIT_MISMATCH)
    out = Path(args.out)
    formats.ensure_dir(out / "detections")
    formats.ensure_dir(out / "text_detections")
    for index, stem in enumerate(stems):
        width, height = sizes[stem]
        objects = formats.read_object_annotations(
            labels_dir / f"{stem}.txt", width, height)
        raw_texts = formats.read_text_annotations(
            texts_dir / f"{stem}.txt", width, height)
        annotations = _AnnotationView(objects, raw_texts)
        detections = oracle_detections(annotations)
        texts = oracle_texts(annotations)
        per_image = dataclasses.replace(params, seed=derive_seed(seed, index))
        detections = perturb_detections(detections, per_image, width, height)
        texts = perturb_texts(texts, per_image, width, height)
        formats.write_detections(out / "detections" / f"{stem}.txt",
                                 detections, width, height)
        formats.write_text_detections(out / "text_detections" / f"{stem}.txt",
                                      texts, width, height)
    formats.write_sizes(out / "sizes.json", sizes)
    _write_run_record(out, "simulate", seed, params,
                      {"dataset": str(dataset), "images": len(stems)})
    print(json.dumps({"out": str(out), "images": len(stems)}))
    return EXIT_OK


class _AnnotationView:
    """Adapts raw annotation tuples to the simulator's annotation duck type."""

    def __init__(self, objects, texts):
        from .generator import ObjectAnnotation, TextAnnotation

        self.objects = [ObjectAnnotation(cls=cls, box=box)
                        for cls, box in objects]
        self.texts = [TextAnnotation(purpose=purpose, box=box, content=content)
                      for purpose, box, content in texts]


def cmd_reconstruct(args) -> int:
    params = _load_config(args.params, ReconstructParams, {})
    det_dir = Path(args.detections)
    text_dir = Path(args.texts) if args.texts else det_dir.parent / "text_detections"
    if not det_dir.is_dir():
        raise _CliError(f"detections directory missing: {det_dir}", EXIT_IO)
    sizes_path = Path(args.sizes) if args.sizes else det_dir.parent / "sizes.json"
    if not sizes_path.exists():
        raise _CliError(f"sizes file missing: {sizes_path}", EXIT_IO)
    sizes = formats.read_sizes(sizes_path)
    stems = formats.stems_in(det_dir)
    out = Path(args.out)
    formats.ensure_dir(out / "graphs")
    for stem in stems:
        if stem not in sizes:
            raise _CliError(f"no size recorded for {stem}", EXIT_MISMATCH)
        width, height = sizes[stem]
        detections = formats.read_detections(det_dir / f"{stem}.txt",
                                             width, height)
        text_path = text_dir / f"{stem}.txt"
        texts = (formats.read_text_detections(text_path, width, height)
                 if text_path.exists() else [])
        graph = reconstruct(detections, texts, params)
        formats.write_graph_doc(out / "graphs" / f"{stem}.json", graph.doc)
        formats.write_graph_sidecar(
            out / "graphs" / f"{stem}.boxes.json",
            node_boxes=graph.node_boxes, edge_boxes=graph.edge_boxes,
            edge_texts=graph.edge_texts, warnings=graph.warnings)
    _write_run_record(out, "reconstruct", 0, params,
                      {"detections": str(det_dir), "images": len(stems)})
    print(json.dumps({"out": str(out), "images": len(stems)}))
    return EXIT_OK


def _load_eval_graph(graphs_dir: Path, stem: str) -> ReconstructedGraph:
    doc = formats.read_graph_doc(graphs_dir / f"{stem}.json")
    node_boxes, edge_boxes, edge_texts, warnings = formats.read_graph_sidecar(
        graphs_dir / f"{stem}.boxes.json")
    graph = ReconstructedGraph(doc=doc, node_boxes=node_boxes,
                               edge_boxes=edge_boxes, edge_texts=edge_texts,
                               warnings=warnings)
    graph.validate()
    return graph


def _gt_annotations(split_dir: Path, stem: str, width: int, height: int):
    labels = split_dir / "labels" / f"{stem}.txt"
    texts = split_dir / "texts" / f"{stem}.txt"
    if not labels.exists() or not texts.exists():
        return None
    return _AnnotationView(
        formats.read_object_annotations(labels, width, height),
        formats.read_text_annotations(texts, width, height))


def cmd_evaluate(args) -> int:
    pred_graphs = Path(args.pred) / "graphs" if (Path(args.pred) / "graphs").is_dir() \
        else Path(args.pred)
    gt_dir = Path(args.gt)
    gt_graphs = gt_dir / "graphs" if (gt_dir / "graphs").is_dir() else gt_dir
    pred_stems = formats.stems_in(pred_graphs, ".json")
    gt_stems = formats.stems_in(gt_graphs, ".json")
    if pred_stems != gt_stems:
        only_pred = sorted(set(pred_stems) - set(gt_stems))[:5]
        only_gt = sorted(set(gt_stems) - set(pred_stems))[:5]
        raise _CliError(
            f"pred/gt trees disagree on image stems"
            f" (pred-only {only_pred}, gt-only {only_gt})", EXIT_MISMATCH)
    if not gt_stems:
        raise _CliError(f"no graphs found under {gt_graphs}", EXIT_IO)

    modes = []
    if args.directed or not args.undirected:
        modes.append(True)
    if args.undirected or not args.directed:
        modes.append(False)

    sizes = {}
    sizes_path = gt_dir / "sizes.json"
    if sizes_path.exists():
        sizes = formats.read_sizes(sizes_path)

    per_image: dict[str, dict] = {}
    values: dict[str, list[float]] = {}
    ambiguous: list[str] = []
    degenerate_text = 0
    for stem in gt_stems:
        pred = _load_eval_graph(pred_graphs, stem)
        gt = _load_eval_graph(gt_graphs, stem)
        record: dict = {"ambiguous": False}
        if stem in sizes:
            annotations = _gt_annotations(gt_dir, stem, *sizes[stem])
            if annotations is not None \
                    and metrics.is_ambiguous_scene(annotations):
                ambiguous.append(stem)
                record["ambiguous"] = True
        text_done = False
        for mode_index, directed in enumerate(modes):
            matching = metrics.match_structures(
                pred, gt, iou_threshold=args.iou_threshold, directed=directed)
            iso = metrics.norm_isomorphic_error(
                matching, len(gt.doc.nodes), len(gt.doc.edges))
            tag = "directed" if directed else "undirected"
            record[tag] = {
                "norm_iso_error": iso.norm_iso_error,
                "node_norm_error": iso.node_norm_error,
                "edge_norm_error": iso.edge_norm_error,
            }
            values.setdefault(f"full_{tag}", []).append(iso.norm_iso_error)
            values.setdefault(f"edges_{tag}", []).append(iso.edge_norm_error)
            if mode_index == 0:
                # node matching ignores direction, identical across modes
                values.setdefault("nodes", []).append(iso.node_norm_error)
            if not text_done:
                text_done = True
                try:
                    text_error = metrics.text_rec_error(
                        matching, pred.contents(), gt.contents())
                    record["text_rec_error"] = text_error
                    values.setdefault("text_rec", []).append(text_error)
                except metrics.DegenerateGraphError:
                    degenerate_text += 1
                    record["text_rec_error"] = None
        per_image[stem] = record

    report: dict = {
        "images": len(gt_stems),
        "iou_threshold": args.iou_threshold,
        "ambiguous_images": ambiguous,
        "per_image": per_image,
    }
    full = {("directed" if d else "undirected"):
            metrics.aggregate(values.get(
                f"full_{'directed' if d else 'undirected'}", []))
            for d in modes}
    edges = {("directed" if d else "undirected"):
             metrics.aggregate(values.get(
                 f"edges_{'directed' if d else 'undirected'}", []))
             for d in modes}
    if args.nodes_only:
        report["graph"] = {"nodes": metrics.aggregate(values.get("nodes", []))}
    elif args.edges_only:
        report["graph"] = {"edges": edges}
    else:
        report["graph"] = {"full": full,
                           "nodes": metrics.aggregate(values.get("nodes", [])),
                           "edges": edges}
    if "text_rec" in values or degenerate_text:
        report["text"] = metrics.aggregate(values.get("text_rec", [])) or {}
        report["text"]["degenerate_images"] = degenerate_text

    if args.detections:
        report["detection"] = _evaluate_detections(
            Path(args.detections), gt_dir, sizes).to_json_dict()

    out_path = Path(args.report)
    formats.write_json(out_path, report)
    _write_run_record(out_path.parent, "evaluate", 0, None,
                      {"pred": str(args.pred), "gt": str(args.gt),
                       "report": str(out_path)})
    summary = {"images": len(gt_stems), "ambiguous": len(ambiguous)}
    for tag in ("directed", "undirected"):
        if full.get(tag):
            summary[f"mean_norm_iso_{tag}"] = round(full[tag]["mean"], 4)
    print(json.dumps(summary))
    return EXIT_OK


def _evaluate_detections(det_dir: Path, gt_dir: Path,
                         sizes: dict[str, tuple[int, int]]):
    labels_dir = gt_dir / "labels"
    stems = formats.stems_in(labels_dir)
    per_image_dets = {}
    per_image_gt = {}
    for stem in stems:
        if stem not in sizes:
            continue
        width, height = sizes[stem]
        per_image_gt[stem] = formats.read_object_annotations(
            labels_dir / f"{stem}.txt", width, height)
        det_path = det_dir / f"{stem}.txt"
        per_image_dets[stem] = (formats.read_detections(det_path, width, height)
                                if det_path.exists() else [])
    return metrics.evaluate_detections(per_image_dets, per_image_gt)


def cmd_render(args) -> int:
    from .core import Detection, EdgeClass

    image_path = Path(args.image)
    if not image_path.exists():
        raise _CliError(f"image not found: {image_path}", EXIT_IO)
    image = RasterImage.load_png(image_path)
    detections = []
    if args.detections:
        detections = formats.read_detections(Path(args.detections),
                                             image.width, image.height)
    if args.graph:
        graph_path = Path(args.graph)
        sidecar = graph_path.with_name(graph_path.stem + ".boxes.json")
        if not sidecar.exists():
            raise _CliError(f"graph sidecar missing: {sidecar}", EXIT_IO)
        node_boxes, edge_boxes, _texts, _warnings = \
            formats.read_graph_sidecar(sidecar)
        detections.extend(Detection(cls=None, box=box)
                          for _nid, box in sorted(node_boxes.items()))
        # graph sidecars carry no direction classes; draw edge boxes in
        # one representative edge color
        detections.extend(Detection(cls=EdgeClass.TL2BR, box=box)
                          for _eid, box in sorted(edge_boxes.items()))
    overlay = render_overlay(image, detections, [])
    overlay.save_png(args.out)
    print(json.dumps({"out": str(args.out), "boxes": len(detections)}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="svc",
        description="Synthetic structured-visual-content toolkit: generate"
                    " datasets, simulate detections, reconstruct graphs,"
                    " evaluate, render overlays.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic dataset tree")
    p.add_argument("--config", help="JSON file with generator parameters")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--split", default="0.7,0.2,0.1",
                   help="train,val,test fractions (default 0.7,0.2,0.1)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--skip-images", action="store_true",
                   help="write annotations and graphs only, no PNGs")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("simulate",
                       help="turn ground truth into (noisy) detection files")
    p.add_argument("--dataset", required=True,
                   help="a dataset split directory (with labels/ and texts/)")
    p.add_argument("--noise-config", help="JSON file with noise parameters")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("reconstruct",
                       help="build graph documents from detection files")
    p.add_argument("--detections", required=True)
    p.add_argument("--texts", default=None,
                   help="text detections directory (default: sibling"
                        " text_detections/)")
    p.add_argument("--sizes", default=None,
                   help="sizes.json (default: sibling of detections dir)")
    p.add_argument("--params", help="JSON file with reconstruction thresholds")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("evaluate", help="score predicted graphs against"
                                        " ground truth")
    p.add_argument("--pred", required=True,
                   help="reconstruction output directory (or graphs dir)")
    p.add_argument("--gt", required=True,
                   help="dataset split directory (or graphs dir)")
    p.add_argument("--report", required=True, help="report JSON path")
    p.add_argument("--detections", default=None,
                   help="also score these detection files (mAP)")
    p.add_argument("--iou-threshold", type=float, default=0.5)
    p.add_argument("--directed", action="store_true")
    p.add_argument("--undirected", action="store_true")
    p.add_argument("--nodes-only", action="store_true")
    p.add_argument("--edges-only", action="store_true")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("render", help="draw detection/graph overlays")
    p.add_argument("--image", required=True)
    p.add_argument("--detections", default=None)
    p.add_argument("--graph", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
