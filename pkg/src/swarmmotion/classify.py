"""Consensus decision and motion-class assignment.

A system reaches consensus when the graph has a spanning tree and
every shifted pencil at a nonzero Laplacian eigenvalue is Hurwitz; if
the agent matrix A is itself Hurwitz the spanning tree is not needed
because everything contracts to the origin anyway. Non-consensus
systems fall into three classes:

    Class1  some nonzero shift is not Hurwitz, spanning tree present
            (mutually repulsive trajectories),
    Class2  some nonzero shift is not Hurwitz, no spanning tree,
    Class3  A not Hurwitz, all nonzero shifts Hurwitz, no spanning
            tree (group clustering is certain).

The stable case with A Hurwitz is labeled StableTrivial rather than
Consensus: agreement holds but the common trajectory is the zero
solution, which deserves a distinct name in reports.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import graph as graphmod
from .spectral import (
    ZERO_EIG_RTOL,
    ComplexSpectrum,
    SpectralReport,
    eigenvalues,
    hurwitz,
    shifted_spectrum,
    spectral_report,
)

CONSENSUS = "Consensus"
CLASS1 = "Class1"
CLASS2 = "Class2"
CLASS3 = "Class3"
STABLE_TRIVIAL = "StableTrivial"

CONVERGES_TO_AUTONOMOUS = "ConvergesToAutonomous"
INDEFINITE = "Indefinite"


@dataclass(frozen=True)
class Evidence:
    has_spanning_tree: bool
    a_hurwitz: bool
    nonzero_shift_verdicts: tuple[bool, ...]


@dataclass(frozen=True)
class MotionClass:
    label: str
    evidence: Evidence


@dataclass(frozen=True)
class GroupVerdict:
    """Per-group agreement verdict.

    ``agrees`` is true exactly when every shifted pencil over the
    group's nonzero Laplacian eigenvalues is Hurwitz; the group then
    converges to a common solution of the autonomous dynamics.
    """

    group: tuple[int, ...]
    agrees: bool
    limit_dynamics: str
    group_spectrum: ComplexSpectrum


def decide_consensus(report: SpectralReport, spanning: bool) -> bool:
    """Consensus criterion over a finished spectral report."""
    all_shifts = all(e.verdict.is_hurwitz for e in report.nonzero_entries())
    if report.a_verdict.is_hurwitz:
        return all_shifts
    return spanning and all_shifts


def classify_motion(report: SpectralReport, spanning: bool) -> MotionClass:
    """Assign the motion class. Exactly one label fits any input."""
    a_hurwitz = report.a_verdict.is_hurwitz
    verdicts = tuple(e.verdict.is_hurwitz for e in report.nonzero_entries())
    all_shifts = all(verdicts)
    if a_hurwitz and all_shifts:
        label = STABLE_TRIVIAL
    elif not all_shifts:
        label = CLASS1 if spanning else CLASS2
    elif spanning:
        label = CONSENSUS
    else:
        label = CLASS3
    return MotionClass(
        label=label,
        evidence=Evidence(
            has_spanning_tree=spanning,
            a_hurwitz=a_hurwitz,
            nonzero_shift_verdicts=verdicts,
        ),
    )


def classify_system(a, f, g: graphmod.WeightedDigraph) -> MotionClass:
    """Convenience wrapper: build the report and classify in one call."""
    report = spectral_report(a, f, graphmod.laplacian(g))
    return classify_motion(report, graphmod.has_spanning_tree(g))


def analyze_groups(a, f, g: graphmod.WeightedDigraph) -> list[GroupVerdict]:
    """Agreement verdict for every independent group of the graph.

    Each group's induced Laplacian spectrum is a sub-multiset of the
    full spectrum, so judging the group only needs pencils at its own
    nonzero eigenvalues. Agreeing groups converge to a solution of the
    autonomous equation; the rest stay indefinite.
    """
    verdicts = []
    for members in graphmod.independent_groups(g):
        sub_lap = graphmod.induced_laplacian(g, members)
        spectrum = eigenvalues(sub_lap)
        zero_tol = ZERO_EIG_RTOL * max(1.0, float(np.abs(sub_lap).sum(axis=1).max()))
        agrees = True
        for lam in spectrum.values:
            if abs(lam) <= zero_tol:
                continue
            if not hurwitz(shifted_spectrum(a, f, lam)).is_hurwitz:
                agrees = False
                break
        verdicts.append(
            GroupVerdict(
                group=members,
                agrees=agrees,
                limit_dynamics=CONVERGES_TO_AUTONOMOUS if agrees else INDEFINITE,
                group_spectrum=spectrum,
            )
        )
    return verdicts


def ungrouped_vertices(g: graphmod.WeightedDigraph, groups) -> tuple[int, ...]:
    """Vertices outside every independent group.

    Their affiliation is undetermined: no prediction is made for them.
    """
    covered = {v for members in groups for v in members}
    return tuple(v for v in range(1, g.n + 1) if v not in covered)
