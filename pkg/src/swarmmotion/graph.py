"""Directed weighted interaction graphs.

Convention used throughout the package: row i of the weight matrix
lists what agent i receives, so ``weights[i, j]`` is the strength with
which agent j influences agent i. An arc is therefore written
(source j, target i, weight w) and information flows source -> target.
The Laplacian follows the same row convention. Self-loops may appear
in input data but carry no dynamical meaning; they are ignored by the
Laplacian and by all connectivity computations.

Vertex ids are 1-based in every public signature.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AnalysisError, SpecError


@dataclass(frozen=True)
class WeightedDigraph:
    """Interaction topology among ``n`` agents.

    Attributes:
        n: agent count.
        weights: (n, n) array, ``weights[i, j]`` = influence of agent
            j+1 on agent i+1 (0-based storage of the 1-based ids).
    """

    n: int
    weights: np.ndarray

    def arcs(self) -> list[tuple[int, int, float]]:
        """All present arcs as (source, target, weight), 1-based ids."""
        out = []
        for i in range(self.n):
            for j in range(self.n):
                w = float(self.weights[i, j])
                if w != 0.0:
                    out.append((j + 1, i + 1, w))
        return out

    def in_neighbors(self, i: int) -> tuple[int, ...]:
        """Agents that influence agent ``i``, excluding ``i`` itself."""
        row = self.weights[i - 1]
        return tuple(j + 1 for j in range(self.n) if j != i - 1 and row[j] > 0.0)


def build_graph(n: int, arcs) -> WeightedDigraph:
    """Build a canonical graph from an arc list.

    Args:
        n: agent count, at least 1.
        arcs: iterable of (source, target, weight) triples with 1-based
            vertex ids. Duplicate arcs are summed.

    Raises:
        SpecError: on out-of-range ids, negative or non-finite weights.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SpecError(f"agent count must be a positive integer, got {n!r}")
    weights = np.zeros((n, n))
    for k, arc in enumerate(arcs):
        try:
            src, dst, w = arc
        except (TypeError, ValueError):
            raise SpecError(f"arcs[{k}]: expected a (source, target, weight) triple")
        for label, v in (("source", src), ("target", dst)):
            if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= n:
                raise SpecError(f"arcs[{k}]: {label} id {v!r} outside [1, {n}]")
        w = float(w)
        if not np.isfinite(w):
            raise SpecError(f"arcs[{k}]: weight must be finite, got {w!r}")
        if w < 0.0:
            raise SpecError(f"arcs[{k}]: weight must be nonnegative, got {w}")
        weights[dst - 1, src - 1] += w
    return WeightedDigraph(n=n, weights=weights)


def from_weight_matrix(w) -> WeightedDigraph:
    """Build a graph from a dense weight matrix (row = receiver)."""
    arr = np.asarray(w, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise SpecError(f"weight matrix must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise SpecError("weight matrix contains non-finite entries")
    if np.any(arr < 0.0):
        i, j = np.argwhere(arr < 0.0)[0]
        raise SpecError(f"weight matrix entry ({i + 1}, {j + 1}) is negative")
    return WeightedDigraph(n=arr.shape[0], weights=arr.copy())


def laplacian(g: WeightedDigraph) -> np.ndarray:
    """Graph Laplacian L with L[i, i] = sum of row i's off-diagonal
    weights and L[i, j] = -weights[i, j]. Self-loops are dropped.
    Every row sums to zero, up to the rounding introduced by summing
    the row in a different order than the diagonal was built from.
    """
    off = g.weights.copy()
    np.fill_diagonal(off, 0.0)
    lap = -off
    np.fill_diagonal(lap, off.sum(axis=1))
    return lap


@dataclass(frozen=True)
class Condensation:
    """Strongly connected components and the DAG between them.

    Attributes:
        components: SCCs as sorted member tuples (1-based ids), listed
            in ascending order of smallest member.
        component_of: for each vertex id i, ``component_of[i - 1]`` is
            the index of its component in ``components``.
        arcs: component-level arcs following information-flow
            direction (source component index, target component index).
    """

    components: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...]
    arcs: frozenset

    def source_components(self) -> tuple[int, ...]:
        """Indices of components with no incoming component arc."""
        targets = {b for (_, b) in self.arcs}
        return tuple(c for c in range(len(self.components)) if c not in targets)


def condensation(g: WeightedDigraph) -> Condensation:
    """Tarjan condensation of the graph (self-loops ignored).

    The implementation is iterative so deep chains do not hit the
    interpreter recursion limit.
    """
    n = g.n
    succ = [
        [i for i in range(n) if i != j and g.weights[i, j] > 0.0]
        for j in range(n)
    ]
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    raw_components: list[list[int]] = []
    comp_id = [-1] * n
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, edge_pos = work[-1]
            if edge_pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            descended = False
            for k in range(edge_pos, len(succ[v])):
                u = succ[v][k]
                if index[u] == -1:
                    work[-1] = (v, k + 1)
                    work.append((u, 0))
                    descended = True
                    break
                if on_stack[u]:
                    low[v] = min(low[v], index[u])
            if descended:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                members = []
                while True:
                    u = stack.pop()
                    on_stack[u] = False
                    members.append(u)
                    comp_id[u] = len(raw_components)
                    if u == v:
                        break
                raw_components.append(sorted(members))

    order = sorted(range(len(raw_components)), key=lambda c: raw_components[c][0])
    rank = {old: new for new, old in enumerate(order)}
    components = tuple(
        tuple(v + 1 for v in raw_components[old]) for old in order
    )
    component_of = tuple(rank[comp_id[v]] for v in range(n))
    comp_arcs = set()
    for j in range(n):
        for i in succ[j]:
            a, b = component_of[j], component_of[i]
            if a != b:
                comp_arcs.add((a, b))
    return Condensation(
        components=components,
        component_of=component_of,
        arcs=frozenset(comp_arcs),
    )


def has_spanning_tree(g: WeightedDigraph) -> bool:
    """True iff some vertex reaches all others along information flow.

    Equivalent formulation used here: the SCC condensation has exactly
    one source component.
    """
    return len(condensation(g).source_components()) == 1


def independent_groups(g: WeightedDigraph) -> tuple[tuple[int, ...], ...]:
    """Detect all independent groups of the graph.

    An independent group is a vertex set with no incoming arcs from
    outside whose induced subgraph has a spanning tree. Each group is
    found as the closure of a source component of the condensation:
    starting from the component, any outside vertex with at least one
    in-neighbor and all of its in-neighbors inside the set is absorbed,
    until nothing changes. Vertices with no in-neighbors at all are
    never absorbed; they seed their own source components.

    Returns the groups as sorted member tuples, ordered by smallest
    member id. Groups from distinct sources never overlap.
    """
    cond = condensation(g)
    groups = []
    for c in cond.source_components():
        members = set(cond.components[c])
        grew = True
        while grew:
            grew = False
            for v in range(1, g.n + 1):
                if v in members:
                    continue
                nbrs = g.in_neighbors(v)
                if nbrs and all(u in members for u in nbrs):
                    members.add(v)
                    grew = True
        group = tuple(sorted(members))
        _check_group(g, group)
        groups.append(group)
    groups.sort(key=lambda s: s[0])
    return tuple(groups)


def _check_group(g: WeightedDigraph, members: tuple[int, ...]) -> None:
    """Internal consistency check for a detected group."""
    inside = set(members)
    for v in members:
        for u in g.in_neighbors(v):
            if u not in inside:
                raise AnalysisError(
                    f"group {members} is not closed: arc {u} -> {v} enters from outside"
                )
    sub = _induced_subgraph(g, members)
    if not has_spanning_tree(sub):
        raise AnalysisError(f"group {members} has no internal spanning tree")


def _induced_subgraph(g: WeightedDigraph, members: tuple[int, ...]) -> WeightedDigraph:
    idx = np.array([v - 1 for v in members])
    return WeightedDigraph(n=len(members), weights=g.weights[np.ix_(idx, idx)].copy())


def induced_laplacian(g: WeightedDigraph, members) -> np.ndarray:
    """Laplacian of the subgraph induced by an independent group.

    Args:
        g: full graph.
        members: vertex ids of a closed group (no external in-arcs).

    Raises:
        SpecError: if ``members`` is empty, out of range, or has
            incoming arcs from outside (not a closed set).
    """
    members = tuple(sorted(set(int(v) for v in members)))
    if not members:
        raise SpecError("group must be a nonempty vertex set")
    if members[0] < 1 or members[-1] > g.n:
        raise SpecError(f"group {members} has ids outside [1, {g.n}]")
    inside = set(members)
    for v in members:
        for u in g.in_neighbors(v):
            if u not in inside:
                raise SpecError(
                    f"vertex set {members} is not closed: arc {u} -> {v} enters from outside"
                )
    return laplacian(_induced_subgraph(g, members))
