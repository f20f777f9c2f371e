#!/usr/bin/env python3
"""Row-pattern clustering forecast without any simulation.

Solving T L = Phi (Phi takes cyclic neighbor differences) and reading
the rows of Psi = T Q against the persistent modal columns predicts
which neighboring agents end up on a common trajectory. The test only
applies when the graph has a spanning tree, so the forest-shaped
topology is shown being refused.
"""
import numpy as np

from swarmmotion import (
    AnalysisError,
    build_graph,
    load_bundled,
    predict_clusters,
)

for name in ("example1", "example2"):
    spec = load_bundled(name)
    prediction = predict_clusters(spec.a, spec.f, spec.graph)
    print(f"{name}: agreeing cyclic pairs {list(prediction.agreeing_pairs) or 'none'}")
    print(f"  predicted partition {[list(b) for b in prediction.partition]}")
    print("  |Psi| row by row (small persistent entries mean agreement):")
    print(np.array_str(np.abs(prediction.psi), precision=3, suppress_small=True))
    print()

spec3 = load_bundled("example3")
try:
    predict_clusters(spec3.a, spec3.f, spec3.graph)
except AnalysisError as exc:
    print(f"example3 refused: {exc}")
print()

# a ring with strong coupling reaches full consensus, so every cyclic
# pair is predicted to agree
ring = build_graph(4, [(1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (4, 1, 1.0)])
a = np.array([[0.1, 1.0], [0.0, 0.1]])
f = np.eye(2)
prediction = predict_clusters(a, f, ring)
print(f"ring of four: pairs {list(prediction.agreeing_pairs)}")
print(f"  partition {[list(b) for b in prediction.partition]}")
