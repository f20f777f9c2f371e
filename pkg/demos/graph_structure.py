#!/usr/bin/env python3
"""Tour of the graph layer: arcs, Laplacians, condensation, groups.

Walks the two bundled interaction topologies and shows how the
connectivity facts that drive every later verdict are computed.
"""
import numpy as np

from swarmmotion import (
    condensation,
    has_spanning_tree,
    independent_groups,
    induced_laplacian,
    laplacian,
    load_bundled,
)


def describe(name):
    spec = load_bundled(name)
    g = spec.graph
    print(f"=== {name}: {g.n} agents, {len(g.arcs())} arcs")
    lap = laplacian(g)
    print("Laplacian:")
    print(np.array_str(lap, precision=2, suppress_small=True))

    cond = condensation(g)
    print("strongly connected components:", cond.components)
    print("source components (indices):  ", cond.source_components())
    print("spanning tree:                ", has_spanning_tree(g))

    groups = independent_groups(g)
    print("independent groups:           ", groups)
    for group in groups:
        if len(group) > 1:
            block = induced_laplacian(g, group)
            print(f"  induced Laplacian of {group}:")
            for row in block:
                print("   ", np.array_str(row, precision=2, suppress_small=True))
    print()


if __name__ == "__main__":
    # example1 and example2 share one topology, example3 through
    # example5 share the other
    describe("example1")
    describe("example3")
