"""Instant learning: the class count is controlled by the radius.

A stream of noisy integer vectors is fed through train_step. With radius 0
nearly every distinct vector becomes its own class; widening the radius
collapses the stream onto a handful of classes without any optimization.
"""

import numpy as np

from invpat import Model

rng = np.random.default_rng(0)
centers = rng.integers(30, 226, size=(5, 4))
stream = []
for _ in range(2000):
    c = centers[rng.integers(0, len(centers))]
    stream.append(np.clip(c + rng.normal(0, 6, size=4).round(), 0, 255).astype(int))

print(f"{'radius':>7} {'classes':>8} {'avg height':>11}")
for radius in (0, 8, 16, 26, 40):
    model = Model(K=4, X=256, R=radius)
    for v in stream:
        model.train_step(v.tolist())
    print(f"{radius:>7} {model.N:>8} {model.avg_height():>11.2f}")
