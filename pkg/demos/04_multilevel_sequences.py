"""Stacking levels: sequences of winners become meta-patterns.

Level 1 classifies individual vectors; the histogram of its winners over a
whole sequence is thresholded into a binary meta-pattern that a categorical
second level learns as one class. Two sequences visiting different vector
clusters produce two distinct second-level classes.
"""

import numpy as np

from invpat import CategoricalModel, Level, LevelStack, Model, signature_common

rng = np.random.default_rng(2)

stack = LevelStack([
    Level(Model(K=3, X=64, R=4), threshold=2),
    Level(CategoricalModel(1, 1, grow=True)),
])

def sequence(centers, n=30):
    out = []
    for _ in range(n):
        c = centers[rng.integers(0, len(centers))]
        out.append(tuple(int(v) for v in np.clip(c + rng.normal(0, 2, 3).round(), 0, 63)))
    return out

walk_a = sequence(np.array([[10, 10, 10], [20, 30, 15]]))
walk_b = sequence(np.array([[50, 52, 48], [40, 20, 55]]))

stack.run(walk_a, train=True)
stack.run(walk_b, train=True)
print("second-level classes after training:", stack.levels[1].model.N)

out_a = stack.run(sequence(np.array([[10, 10, 10], [20, 30, 15]])), train=False)
print("fresh sequence of the first kind recognized as meta-class", out_a.argmax)

# level-1 signature histograms of the two kinds share no above-threshold classes
level1_only = LevelStack(stack.levels[:1])
sig_a = level1_only.run(walk_a, train=False)
sig_b = level1_only.run(walk_b, train=False)
print("shared signature classes across kinds:",
      signature_common(sig_a, sig_b, 2, 2))
