"""Parameter prediction by histogram accumulation over a value index.

Training stores, for every (dimension, feature value) pair, a count table
of the parameter values t observed together with that feature value
(multiset semantics: repeated observations accumulate). Prediction sums
the K tables addressed by a query vector into a parameter histogram and
takes its argmax, breaking ties toward the smaller t so a predicted
lifetime never exceeds an equally likely shorter one.

No generalization radius is applied here; the index is exact-value.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import NoEvidenceError, ValidationError


@dataclass(frozen=True)
class ParamHistogram:
    """Histogram of a predicted parameter t for one query."""

    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def argmax_t(self) -> int:
        """Smallest t attaining the maximum count."""
        if not self.counts:
            raise NoEvidenceError("empty parameter histogram")
        best = max(self.counts.values())
        return min(t for t, c in self.counts.items() if c == best)

    def __bool__(self) -> bool:
        return bool(self.counts)


class ParamIndex:
    """Per (dimension, feature value) count tables over the parameter t.

    Built once from training rows, then immutable; prediction uses frozen
    numpy arrays so summing K tables is a handful of vector adds.
    """

    def __init__(self, K: int, X: int):
        self.K = int(K)
        self.X = int(X)
        self.rows = 0
        self.t_min: int | None = None
        self.t_max: int | None = None
        # building form: tables[k][x] is Counter(t -> occurrences)
        self._tables: list[dict[int, Counter]] = [{} for _ in range(K)]
        # frozen form: per (k, x) a pair of arrays (t offsets, counts)
        self._frozen: list[dict[int, tuple[np.ndarray, np.ndarray]]] | None = None

    def _check(self, x) -> None:
        if len(x) != self.K:
            raise ValidationError(f"expected {self.K} features, got {len(x)}")
        for v in x:
            if not 0 <= v < self.X:
                raise ValidationError(f"feature value {v} outside [0, {self.X})")

    def add_row(self, x, t: int) -> None:
        if self._frozen is not None:
            raise ValidationError("index already frozen")
        self._check(x)
        t = int(t)
        for k, v in enumerate(x):
            table = self._tables[k].setdefault(int(v), Counter())
            table[t] += 1
        self.rows += 1
        self.t_min = t if self.t_min is None else min(self.t_min, t)
        self.t_max = t if self.t_max is None else max(self.t_max, t)

    def freeze(self) -> None:
        """Convert count tables to arrays indexed by t - t_min."""
        if self._frozen is not None:
            return
        base = self.t_min or 0
        frozen: list[dict[int, tuple[np.ndarray, np.ndarray]]] = []
        for table in self._tables:
            out = {}
            for v, counter in table.items():
                ts = np.array(sorted(counter), dtype=np.int64)
                cs = np.array([counter[t] for t in ts], dtype=np.int64)
                out[v] = (ts - base, cs)
            frozen.append(out)
        self._frozen = frozen

    def tables(self) -> list[dict[int, dict[int, int]]]:
        """Plain-dict view of the count tables (for persistence and tests)."""
        return [{v: dict(c) for v, c in table.items()} for table in self._tables]

    def _accumulate(self, x) -> np.ndarray:
        self._check(x)
        if self.rows == 0:
            return np.zeros(0, dtype=np.int64)
        self.freeze()
        acc = np.zeros(self.t_max - self.t_min + 1, dtype=np.int64)
        for k, v in enumerate(x):
            hit = self._frozen[k].get(int(v))
            if hit is not None:
                acc[hit[0]] += hit[1]
        return acc


def build_param_index(rows, X: int) -> ParamIndex:
    """Build an index from (feature vector, t) pairs sharing one K."""
    rows = list(rows)
    if not rows:
        raise ValidationError("cannot build a parameter index from no rows")
    idx = ParamIndex(K=len(rows[0][0]), X=X)
    for x, t in rows:
        idx.add_row(x, t)
    idx.freeze()
    return idx


def predict_histogram(idx: ParamIndex, x) -> ParamHistogram:
    """Parameter histogram for x: counts[t] = sum over k of table hits."""
    acc = idx._accumulate(x)
    nz = np.nonzero(acc)[0]
    base = idx.t_min or 0
    return ParamHistogram({int(base + i): int(acc[i]) for i in nz})


def predict_value(idx: ParamIndex, x) -> int:
    """Most probable t for x; smallest t on ties; error when no evidence."""
    acc = idx._accumulate(x)
    if acc.size == 0 or not acc.any():
        raise NoEvidenceError("no training evidence for this query")
    return int(idx.t_min + int(np.argmax(acc)))


def histogram_spread(h: ParamHistogram) -> tuple[int, float, int]:
    """(mode, weighted mean, skew sign) of a parameter histogram.

    The skew sign is sign(mean - mode); a nonzero sign flags the symmetry
    breakdown seen near end of life and is exposed as a diagnostic only.
    """
    if not h.counts:
        raise NoEvidenceError("empty parameter histogram")
    mode = h.argmax_t
    total = h.total
    mean = sum(t * c for t, c in h.counts.items()) / total
    diff = mean - mode
    skew = 0 if diff == 0 else (1 if diff > 0 else -1)
    return mode, mean, skew
