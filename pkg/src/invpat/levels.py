"""Multilevel stacking of models.

A level's output histogram becomes the next level's input after threshold
processing: every class whose vote count reaches the level's output
threshold turns into a present category of a binary meta-pattern. Level 1
may be numeric or categorical; all higher levels are categorical because
their inputs are thresholded histograms.

A teacher enters through label tables that map automatically discovered
inner class ids to external labels.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import ConfigError, InvpatError, LevelError
from .index import CategoricalModel, ClassHistogram, Model

UNLABELED = "unlabeled"


class LabelTable:
    """Inner class id -> external label; missing ids are "unlabeled"."""

    def __init__(self, labels: dict[int, str] | None = None):
        self._labels: dict[int, str] = dict(labels or {})

    def attach(self, inner: int, label: str) -> None:
        if inner < 1:
            raise ConfigError(f"class id must be >= 1, got {inner}")
        self._labels[inner] = label

    def lookup(self, inner: int) -> str:
        return self._labels.get(inner, UNLABELED)

    def labels(self) -> dict[int, str]:
        return dict(self._labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, LabelTable) and self._labels == other._labels


def histogram_to_metapattern(h: ClassHistogram, threshold: int) -> frozenset[int]:
    """Present categories of the next level: ids with count >= threshold."""
    if threshold < 1:
        raise ConfigError(f"threshold must be >= 1, got {threshold}")
    return frozenset(n for n, c in h.counts.items() if c >= threshold)


def signature_common(h1: ClassHistogram, h2: ClassHistogram, th1: int, th2: int) -> int:
    """Count of classes above threshold in both histograms.

    Same-object signatures share many above-threshold classes even across
    view angles; different objects share few or none.
    """
    if th1 < 1 or th2 < 1:
        raise ConfigError("thresholds must be >= 1")
    s1 = {n for n, c in h1.counts.items() if c >= th1}
    s2 = {n for n, c in h2.counts.items() if c >= th2}
    return len(s1 & s2)


def _recognized(model, hist: ClassHistogram) -> bool:
    if isinstance(model, Model):
        return hist.max_count == model.K
    return hist.max_count >= model.recognition_threshold


@dataclass
class Level:
    """One stack level: a model, the threshold applied to its output
    histogram before it feeds the next level, and an optional label table."""

    model: Model | CategoricalModel
    threshold: int = 2
    labels: LabelTable | None = None


class LevelStack:
    """Ordered levels; level 1 numeric or categorical, the rest categorical."""

    def __init__(self, levels: list[Level]):
        if not levels:
            raise ConfigError("a stack needs at least one level")
        for i, lvl in enumerate(levels[1:], start=2):
            if not isinstance(lvl.model, CategoricalModel):
                raise ConfigError(f"level {i} must be categorical")
        self.levels = list(levels)

    def run(self, inputs, train: bool = False) -> ClassHistogram:
        """Feed a sequence of level-1 patterns through the stack.

        Level 1 handles each input in turn and accumulates one vote per
        recognized winner (in train mode every input has a winner). Each
        later level receives the previous level's thresholded histogram as
        one meta-pattern. Returns the final level's histogram.
        """
        first = self.levels[0]
        winners: Counter = Counter()
        for item in inputs:
            try:
                if train:
                    n, _ = first.model.train_step(item)
                    winners[n] += 1
                else:
                    h = first.model.classify(item)
                    if _recognized(first.model, h):
                        winners[h.argmax] += 1
            except InvpatError as exc:
                raise LevelError(1, exc) from exc
        hist = ClassHistogram.from_counts(dict(winners))
        for i, lvl in enumerate(self.levels[1:], start=2):
            meta = histogram_to_metapattern(hist, self.levels[i - 2].threshold)
            try:
                if train:
                    lvl.model.train_step(meta)
                hist = lvl.model.classify(meta)
            except InvpatError as exc:
                raise LevelError(i, exc) from exc
        return hist
