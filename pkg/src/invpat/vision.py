"""Image-side applications of the inverted-index classifier.

Two pipelines live here. Segmentation treats every pixel as a K-channel
feature vector, classifies it against a small teacher-labeled pixel model
and paints the label of the winning inner class. Detection against an
arbitrary background trains on a thresholded difference image, masks the
pixel classes that fire on the background, groups the surviving pixels
with a propagating wave and recognizes each cluster's class histogram at
a categorical second level.

Masks are plain boolean numpy arrays of shape (height, width).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ValidationError
from .index import CategoricalModel, ClassHistogram, Model
from .levels import UNLABELED, LabelTable, histogram_to_metapattern


@dataclass
class RasterImage:
    """8-bit raster image, ``pixels`` shaped (height, width, channels)."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim == 2:
            px = px[:, :, None]
        if px.ndim != 3 or px.shape[2] not in (1, 3):
            raise ValidationError(f"expected (h, w, 1|3) samples, got shape {px.shape}")
        if px.dtype != np.uint8:
            if px.min() < 0 or px.max() > 255:
                raise ValidationError("sample values outside [0, 256)")
            px = px.astype(np.uint8)
        self.pixels = px

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def channels(self) -> int:
        return self.pixels.shape[2]


@dataclass
class PixelCluster:
    """Connected group of selected pixels.

    ``members`` are (row, col) pairs sorted row-major; ``bbox`` is
    (row_min, col_min, row_max, col_max) inclusive; ``class_histogram``
    counts the members' pixel classes when they were supplied.
    """

    members: list[tuple[int, int]]
    bbox: tuple[int, int, int, int]
    class_histogram: ClassHistogram | None = None


# -- difference image -------------------------------------------------------


def diff_mask(a: RasterImage, b: RasterImage, window: int = 3, threshold: int = 12) -> np.ndarray:
    """Pixels whose windowed mean absolute difference exceeds threshold.

    The mean runs over the window and the channels; borders are clamped
    (edge replication). Computed in integers, so the > comparison is exact.
    """
    if a.pixels.shape != b.pixels.shape:
        raise ValidationError(f"image shapes differ: {a.pixels.shape} vs {b.pixels.shape}")
    if window < 1 or window % 2 == 0:
        raise ConfigError(f"window must be odd and >= 1, got {window}")
    diff = np.abs(a.pixels.astype(np.int64) - b.pixels.astype(np.int64)).sum(axis=2)
    pad = window // 2
    if pad:
        diff = np.pad(diff, pad, mode="edge")
        view = np.lib.stride_tricks.sliding_window_view(diff, (window, window))
        sums = view.sum(axis=(-2, -1))
    else:
        sums = diff
    return sums > threshold * window * window * a.channels


# -- pixel-model training and masking ----------------------------------------


def train_pixels(model: Model, img: RasterImage, mask: np.ndarray) -> int:
    """Run one training step per masked pixel; returns classes created."""
    if model.K != img.channels:
        raise ValidationError(f"model K={model.K} does not match {img.channels} channels")
    if mask.shape != (img.height, img.width):
        raise ValidationError("mask shape does not match image")
    created = 0
    for r, c in np.argwhere(mask):
        _, new = model.train_step(tuple(int(v) for v in img.pixels[r, c]))
        created += int(new)
    return created


def _match_winners(model: Model, colors: np.ndarray, radius: int | None = None,
                   masked: frozenset[int] | set[int] | None = None) -> np.ndarray:
    """Smallest unmasked fully matching class id per color row (0 = none).

    Full match means Chebyshev distance <= R from a stored prototype, i.e.
    a vote count of K under classification. Vectorized over colors; exact
    equality gets a dictionary path so R=0 stays fast at large N.
    """
    r_max = model.R if radius is None else radius
    winners = np.zeros(len(colors), dtype=np.int64)
    if model.N == 0 or len(colors) == 0:
        return winners
    masked = masked or frozenset()
    if r_max == 0:
        lut: dict[tuple[int, ...], int] = {}
        for n in range(model.N, 0, -1):  # reverse so smaller ids overwrite
            if n not in masked:
                lut[model.prototypes[n - 1]] = n
        for i, row in enumerate(colors):
            winners[i] = lut.get(tuple(int(v) for v in row), 0)
        return winners
    protos = np.asarray(model.prototypes, dtype=np.int16)
    ids = np.arange(1, model.N + 1)
    if masked:
        keep = np.array([n not in masked for n in ids])
        protos, ids = protos[keep], ids[keep]
        if len(ids) == 0:
            return winners
    colors = colors.astype(np.int16)
    chunk = max(1, 4_000_000 // max(1, len(ids) * protos.shape[1]))
    for start in range(0, len(colors), chunk):
        block = colors[start:start + chunk]
        hit = np.abs(block[:, None, :] - protos[None, :, :]).max(axis=2) <= r_max
        any_hit = hit.any(axis=1)
        first = np.argmax(hit, axis=1)
        winners[start:start + chunk] = np.where(any_hit, ids[first], 0)
    return winners


def _winner_map(model: Model, img: RasterImage, radius: int | None = None,
                masked=None) -> np.ndarray:
    """Per-pixel winner ids via unique-color classification."""
    flat = img.pixels.reshape(-1, img.channels)
    uniq, inverse = np.unique(flat, axis=0, return_inverse=True)
    winners = _match_winners(model, uniq, radius, masked)
    return winners[inverse.ravel()].reshape(img.height, img.width)


def build_class_mask(model: Model, background: RasterImage, freq_threshold: int,
                     fraction: bool = False) -> set[int]:
    """Classes that fully match too many background pixels.

    A class enters the mask set when it wins (full match) on more than
    ``freq_threshold`` background pixels; with ``fraction=True`` the
    threshold is a fraction of the pixel count instead.
    """
    wins = _winner_map(model, background)
    ids, counts = np.unique(wins[wins > 0], return_counts=True)
    limit = freq_threshold * background.height * background.width if fraction else freq_threshold
    return {int(n) for n, c in zip(ids, counts) if c > limit}


def select_pixel_classes(model: Model, img: RasterImage,
                         masked: set[int] | frozenset[int]) -> dict[tuple[int, int], int]:
    """(row, col) -> smallest unmasked fully matching class, for all pixels
    that have one."""
    wins = _winner_map(model, img, masked=frozenset(masked))
    out = {}
    for r, c in np.argwhere(wins > 0):
        out[(int(r), int(c))] = int(wins[r, c])
    return out


def select_pixels(model: Model, img: RasterImage,
                  masked: set[int] | frozenset[int]) -> set[tuple[int, int]]:
    """Coordinates of pixels fully matching some unmasked class."""
    return set(select_pixel_classes(model, img, masked))


# -- clustering ---------------------------------------------------------------


def cluster_pixels(pixels, d: int, classes: dict[tuple[int, int], int] | None = None
                   ) -> list[PixelCluster]:
    """Partition pixels into wavefront-connected clusters.

    Two pixels are adjacent when their Chebyshev distance is <= d (d=1 is
    classic 8-connectivity). Clusters come back ordered by their
    topmost-leftmost member; when ``classes`` maps coordinates to pixel
    class ids, each cluster carries its member-class histogram.
    """
    if d < 1:
        raise ConfigError(f"cluster distance must be >= 1, got {d}")
    remaining = set(pixels)
    offsets = [(dr, dc) for dr in range(-d, d + 1) for dc in range(-d, d + 1)
               if (dr, dc) != (0, 0)]
    clusters: list[PixelCluster] = []
    for seed in sorted(pixels):
        if seed not in remaining:
            continue
        remaining.discard(seed)
        members = [seed]
        frontier = [seed]
        while frontier:
            nxt = []
            for r, c in frontier:
                for dr, dc in offsets:
                    p = (r + dr, c + dc)
                    if p in remaining:
                        remaining.discard(p)
                        members.append(p)
                        nxt.append(p)
            frontier = nxt
        members.sort()
        rows = [p[0] for p in members]
        cols = [p[1] for p in members]
        hist = None
        if classes is not None:
            hist = ClassHistogram.from_counts(dict(Counter(classes[p] for p in members)))
        clusters.append(PixelCluster(members, (min(rows), min(cols), max(rows), max(cols)), hist))
    return clusters


# -- cluster recognition -------------------------------------------------------


def recognize_clusters(level2: CategoricalModel, clusters: list[PixelCluster],
                       threshold: int) -> tuple[int, int] | None:
    """Argmax object class over accumulated cluster activities.

    Each cluster's class histogram is thresholded into a meta-pattern and
    classified at the second level; recognized clusters add their vote
    count to their winning object class. Returns (class id, activity) or
    None when every cluster is rejected.
    """
    activities: dict[int, int] = {}
    for cl in clusters:
        if cl.class_histogram is None:
            raise ValidationError("cluster has no class histogram attached")
        meta = histogram_to_metapattern(cl.class_histogram, threshold)
        if not meta:
            continue
        h = level2.classify(meta)
        if h.max_count >= level2.recognition_threshold:
            activities[h.argmax] = activities.get(h.argmax, 0) + h.max_count
    if not activities:
        return None
    best = max(activities.values())
    winner = min(n for n, a in activities.items() if a == best)
    return winner, best


def detect_objects(level1: Model, level2: CategoricalModel, masked, img: RasterImage,
                   meta_threshold: int, cluster_dist: int) -> tuple[int, int] | None:
    """Full recognition pass: select, cluster, recognize. None = no object."""
    classes = select_pixel_classes(level1, img, frozenset(masked))
    if not classes:
        return None
    clusters = cluster_pixels(set(classes), cluster_dist, classes)
    return recognize_clusters(level2, clusters, meta_threshold)


# -- segmentation ---------------------------------------------------------------


def segment_image(model: Model, table: LabelTable, img: RasterImage,
                  radius: int | None = None) -> np.ndarray:
    """Per-pixel label map (object array of strings).

    A pixel gets the label of its winning inner class when it fully
    matches one; everything else stays "unlabeled".
    """
    wins = _winner_map(model, img, radius=radius)
    labels = np.empty(model.N + 1, dtype=object)
    labels[0] = UNLABELED
    for n in range(1, model.N + 1):
        labels[n] = table.lookup(n)
    return labels[wins]
