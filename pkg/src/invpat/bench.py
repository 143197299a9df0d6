"""Scaling benchmark for the classification cost model.

Classification cost should track K * h, where h is the average height of
the non-empty posting lists. The bench builds uniform synthetic models at
several class counts, measures the median classify latency and the
touched posting mass, and fits latency against K * h by least squares.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .index import Model


@dataclass
class BenchPoint:
    n_classes: int
    h: float
    kh: float
    touched_mean: float
    latency_s: float


@dataclass
class BenchReport:
    points: list[BenchPoint]
    slope: float
    intercept: float
    r2: float

    def table(self) -> str:
        lines = [f"{'N':>9} {'h':>10} {'K*h':>12} {'touched':>10} {'latency_us':>12}"]
        for p in self.points:
            lines.append(f"{p.n_classes:>9} {p.h:>10.2f} {p.kh:>12.1f} "
                         f"{p.touched_mean:>10.1f} {p.latency_s * 1e6:>12.2f}")
        lines.append(f"fit: latency = {self.slope:.3e} * (K*h) + {self.intercept:.3e}, "
                     f"R^2 = {self.r2:.4f}")
        return "\n".join(lines)


def uniform_model(n_classes: int, k: int, x: int, r: int, rng: np.random.Generator) -> Model:
    """Model populated with uniform random class prototypes."""
    model = Model(k, x, r)
    protos = rng.integers(0, x, size=(n_classes, k))
    for row in protos:
        model.insert_class(row.tolist())
    return model


def run_bench(n_list, k: int, x: int, r: int, seed: int,
              queries: int = 50, repeats: int = 5) -> BenchReport:
    """Sweep class counts, timing classification against K * h.

    One warm-up pass is excluded; the reported latency is the median over
    ``repeats`` timed passes of the per-query mean.
    """
    rng = np.random.default_rng(seed)
    points = []
    for n in n_list:
        model = uniform_model(n, k, x, r, rng)
        qs = [row.tolist() for row in rng.integers(0, x, size=(queries, k))]
        for q in qs:  # warm-up, also cross-checks the analytic counter
            hist_touched = model.classify_counted(q)[1]
            if hist_touched != model.touched_mass(q):
                raise AssertionError("instrumented counter disagrees with touched_mass")
        reps = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            for q in qs:
                model.classify(q)
            reps.append((time.perf_counter() - t0) / len(qs))
        touched = float(np.mean([model.touched_mass(q) for q in qs]))
        h = model.avg_height()
        points.append(BenchPoint(n, h, k * h, touched, float(np.median(reps))))
    kh = np.array([p.kh for p in points])
    lat = np.array([p.latency_s for p in points])
    slope, intercept = np.polyfit(kh, lat, 1)
    pred = slope * kh + intercept
    ss_res = float(((lat - pred) ** 2).sum())
    ss_tot = float(((lat - lat.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return BenchReport(points, float(slope), float(intercept), r2)
