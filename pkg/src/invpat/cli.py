"""Command-line front end.

Subcommands: train, classify, predict, segment, detect, bench.
Exit codes: 0 ok, 1 usage error, 2 data error, 3 internal error.
The env var INVPAT_DATA_DIR locates optional datasets.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .bench import run_bench
from .errors import ConfigError, DataError, InvpatError, NoEvidenceError, ValidationError
from .index import CategoricalModel, Model
from .io_persist import (
    ColumnSchema,
    FORMAT_VERSION,
    extract_parameter,
    load_csv,
    load_model,
    load_schema,
    normalize_columns,
    save_histogram,
    save_model,
)
from .levels import UNLABELED, histogram_to_metapattern
from .netpbm import load_pnm, save_label_map
from .predictor import build_param_index, predict_value
from .vision import (
    build_class_mask,
    cluster_pixels,
    detect_objects,
    diff_mask,
    segment_image,
    select_pixel_classes,
    train_pixels,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage problems; this interface promises 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _resolve_radius(args) -> int:
    if getattr(args, "r_pct", None) is not None:
        return round(args.r_pct / 100.0 * args.x)
    return args.r


def _report_header(args) -> str:
    cfg = {k: v for k, v in sorted(vars(args).items())
           if k != "func" and v is not None}
    return f"# invpat {__version__} format={FORMAT_VERSION} config={json.dumps(cfg)}"


def _vectors(rows, schema, x_range):
    """Feature vectors from raw rows; no schema means raw integers."""
    if schema is None:
        return [tuple(int(v) for v in r) for r in rows]
    return normalize_columns(rows, schema, x_range)


def cmd_train(args) -> int:
    rows = load_csv(args.data)
    schema = load_schema(args.schema) if args.schema else None
    t0 = time.perf_counter()
    if schema is not None and schema.parameter_index() is not None:
        vectors = _vectors(rows, schema, args.x)
        ts = extract_parameter(rows, schema)
        idx = build_param_index(list(zip(vectors, ts)), X=args.x)
        elapsed = time.perf_counter() - t0
        print(_report_header(args))
        print(f"param-index rows={idx.rows} K={idx.K} X={idx.X} "
              f"t=[{idx.t_min},{idx.t_max}] wall={elapsed:.3f}s")
        if args.model:
            save_model(idx, args.model, schema=schema)
        return 0
    vectors = _vectors(rows, schema, args.x)
    r = _resolve_radius(args)
    model = Model(len(vectors[0]), args.x, r)
    created = 0
    for v in vectors:
        _, new = model.train_step(v)
        created += int(new)
    elapsed = time.perf_counter() - t0
    print(_report_header(args))
    print(f"trained N={model.N} created={created} h={model.avg_height():.3f} "
          f"wall={elapsed:.3f}s")
    if args.model:
        save_model(model, args.model, schema=schema)
    return 0


def cmd_classify(args) -> int:
    model = load_model(args.model)
    if not isinstance(model, Model):
        raise DataError(f"{args.model}: not a numeric model")
    rows = load_csv(args.data)
    vectors = _vectors(rows, getattr(model, "schema", None), model.X)
    winners: dict[int, int] = {}
    print(_report_header(args))
    for i, v in enumerate(vectors):
        hist = model.classify(v)
        if hist.max_count == model.K:
            print(f"{i} class={hist.argmax} votes={hist.max_count}")
            winners[hist.argmax] = winners.get(hist.argmax, 0) + 1
        else:
            print(f"{i} unrecognized max={hist.max_count}")
    if args.out:
        save_histogram(winners, args.out)
    return 0


def cmd_predict(args) -> int:
    idx = load_model(args.model)
    rows = load_csv(args.data)
    schema = getattr(idx, "schema", None)
    if (schema is not None and schema.parameter_index() is not None
            and len(rows[0]) == len(schema.columns) - 1):
        # test split without the parameter column: pad a placeholder
        pi = schema.parameter_index()
        rows = [r[:pi] + (0.0,) + r[pi:] for r in rows]
    vectors = _vectors(rows, schema, idx.X)
    predicted: dict[int, int] = {}
    print(_report_header(args))
    t0 = time.perf_counter()
    for i, v in enumerate(vectors):
        try:
            t = predict_value(idx, v)
        except NoEvidenceError:
            print(f"{i} no-evidence")
            continue
        print(f"{i} t={t}")
        predicted[t] = predicted.get(t, 0) + 1
    print(f"# predicted {len(vectors)} rows in {time.perf_counter() - t0:.3f}s")
    if args.out:
        save_histogram(predicted, args.out)
    return 0


def cmd_segment(args) -> int:
    model = load_model(args.model)
    if not isinstance(model, Model):
        raise DataError(f"{args.model}: not a numeric pixel model")
    table = getattr(model, "labels", None)
    if table is None:
        raise DataError(f"{args.model}: model carries no label table")
    img = load_pnm(args.image)
    radius = None
    if args.r is not None or args.r_pct is not None:
        args.x = model.X
        radius = _resolve_radius(args)
    label_map = segment_image(model, table, img, radius=radius)
    labels = sorted({str(v) for v in label_map.ravel()})
    # deterministic palette: well-spread colors in label sort order
    base = [(230, 60, 60), (60, 160, 60), (60, 90, 220), (230, 200, 40),
            (170, 60, 200), (60, 200, 200), (240, 140, 40), (140, 90, 40)]
    palette = {UNLABELED: (0, 0, 0)}
    for i, label in enumerate(lb for lb in labels if lb != UNLABELED):
        palette[label] = base[i % len(base)]
    out = args.out or "labels.ppm"
    save_label_map(label_map, palette, out)
    print(_report_header(args))
    for label in labels:
        print(f"{label} {(label_map == label).sum()}")
    return 0


def cmd_detect(args) -> int:
    background = load_pnm(args.background)
    object_frame = load_pnm(args.object_frame)
    model = Model(background.channels, 256, _resolve_radius(args))
    mask = diff_mask(background, object_frame, args.window, args.threshold)
    train_pixels(model, object_frame, mask)
    masked = build_class_mask(model, background, args.freq_threshold)
    # second level learns the object's cluster signature
    level2 = CategoricalModel(max(model.N, 1), args.meta_votes, grow=True)
    classes = select_pixel_classes(model, object_frame, masked)
    clusters = cluster_pixels(set(classes), args.cluster_dist, classes)
    for cl in sorted(clusters, key=lambda c: len(c.members), reverse=True)[:1]:
        meta = histogram_to_metapattern(cl.class_histogram, args.meta_threshold)
        if meta:
            level2.train_step(meta)
    print(_report_header(args))
    for path in args.queries:
        img = load_pnm(path)
        hit = detect_objects(model, level2, masked, img,
                             args.meta_threshold, args.cluster_dist)
        if hit is None:
            print(f"{path} no-object")
        else:
            print(f"{path} object={hit[0]} activity={hit[1]}")
    return 0


def cmd_bench(args) -> int:
    n_list = [int(s) for s in args.n_list.split(",")]
    report = run_bench(n_list, args.k, args.x, _resolve_radius(args), args.seed)
    print(_report_header(args))
    print(report.table())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(_report_header(args) + "\n" + report.table() + "\n")
    return 0


def _add_common(p, x_default=256):
    p.add_argument("--x", type=int, default=x_default, help="feature range (exclusive)")
    p.add_argument("--r", type=int, default=0, help="generalization radius")
    p.add_argument("--r-pct", type=float, default=None, dest="r_pct",
                   help="radius as percentage of X (overrides --r)")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> _Parser:
    parser = _Parser(prog="invpat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a model or parameter index from a table")
    p.add_argument("data")
    p.add_argument("--schema", default=None)
    p.add_argument("--model", default=None, help="output model file")
    _add_common(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("classify", help="classify table rows with a saved model")
    p.add_argument("data")
    p.add_argument("--model", required=True)
    p.add_argument("--out", default=None, help="winner histogram output")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("predict", help="predict the parameter for table rows")
    p.add_argument("data")
    p.add_argument("--model", required=True)
    p.add_argument("--out", default=None, help="prediction histogram output")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("segment", help="label every pixel of an image")
    p.add_argument("image")
    p.add_argument("--model", required=True)
    p.add_argument("--out", default=None, help="label map PPM path")
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--r-pct", type=float, default=None, dest="r_pct")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("detect", help="background-robust object detection")
    p.add_argument("background")
    p.add_argument("object_frame")
    p.add_argument("queries", nargs="+")
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--threshold", type=int, default=12)
    p.add_argument("--freq-threshold", type=int, default=5, dest="freq_threshold")
    p.add_argument("--cluster-dist", type=int, default=1, dest="cluster_dist")
    p.add_argument("--meta-threshold", type=int, default=2, dest="meta_threshold")
    p.add_argument("--meta-votes", type=int, default=1, dest="meta_votes",
                   help="second-level recognition threshold")
    _add_common(p)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("bench", help="latency-vs-K*h scaling report")
    p.add_argument("--n-list", default="1000,10000,100000", dest="n_list")
    p.add_argument("--k", type=int, default=26)
    p.add_argument("--out", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ConfigError, ValidationError) as exc:
        print(f"invpat: {exc}", file=sys.stderr)
        return 1
    except (DataError, FileNotFoundError) as exc:
        print(f"invpat: {exc}", file=sys.stderr)
        return 2
    except InvpatError as exc:
        print(f"invpat: internal error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # noqa: BLE001 - map everything to exit 3
        print(f"invpat: internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
