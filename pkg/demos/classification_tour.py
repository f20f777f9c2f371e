#!/usr/bin/env python3
"""Motion class of each bundled system, with the evidence behind it.

The label follows from three booleans: does the graph hold a spanning
tree, is A Hurwitz, and are all the shifted matrices A - lambda F
Hurwitz. Non-consensus systems also get a per-group diagnosis.
"""
from swarmmotion import analyze_groups, bundled_names, classify_system, load_bundled, ungrouped_vertices

for name in bundled_names():
    spec = load_bundled(name)
    motion = classify_system(spec.a, spec.f, spec.graph)
    ev = motion.evidence
    print(f"{name}: {motion.label}")
    print(f"  spanning tree {ev.has_spanning_tree}, A Hurwitz {ev.a_hurwitz}, "
          f"shift verdicts {list(ev.nonzero_shift_verdicts)}")
    groups = analyze_groups(spec.a, spec.f, spec.graph)
    if not ev.has_spanning_tree:
        for gv in groups:
            word = "agree" if gv.agrees else "do not agree"
            print(f"  group {gv.group}: members {word}; limit {gv.limit_dynamics}")
        loose = ungrouped_vertices(spec.graph, [gv.group for gv in groups])
        if loose:
            print(f"  undetermined affiliation: {loose}")
    if spec.notes:
        print(f"  note: {spec.notes}")
    print()
