import numpy as np
import pytest

from swarmmotion import (
    CLASS1,
    CLASS2,
    CLASS3,
    CONSENSUS,
    CONVERGES_TO_AUTONOMOUS,
    INDEFINITE,
    STABLE_TRIVIAL,
    analyze_groups,
    build_graph,
    classify_system,
    ungrouped_vertices,
)


def test_bundled_labels(example1, example2, example3, example4, example5):
    assert classify_system(example1.a, example1.f, example1.graph).label == CLASS1
    assert classify_system(example2.a, example2.f, example2.graph).label == CLASS1
    assert classify_system(example3.a, example3.f, example3.graph).label == CLASS2
    assert classify_system(example4.a, example4.f, example4.graph).label == CLASS2
    assert classify_system(example5.a, example5.f, example5.graph).label == CLASS3


def test_a_hurwitz_evidence_differs(example3, example4):
    m3 = classify_system(example3.a, example3.f, example3.graph)
    m4 = classify_system(example4.a, example4.f, example4.graph)
    assert m3.evidence.a_hurwitz
    assert not m4.evidence.a_hurwitz


def test_consensus_label_on_contracting_chain():
    g = build_graph(3, [(1, 2, 1.0), (2, 3, 1.0)])
    a = np.array([[0.2, 1.0], [0.0, 0.1]])  # unstable alone
    f = np.eye(2)
    motion = classify_system(a, f, g)
    assert motion.label == CONSENSUS
    assert motion.evidence.has_spanning_tree


def test_stable_trivial_label():
    g = build_graph(2, [(1, 2, 1.0)])
    a = np.diag([-1.0, -2.0])
    motion = classify_system(a, np.eye(2), g)
    assert motion.label == STABLE_TRIVIAL


def test_class3_needs_no_spanning_tree():
    g = build_graph(2, [])
    a = np.array([[0.5, 0.0], [0.0, 0.3]])
    motion = classify_system(a, np.eye(2), g)
    # every shift set is empty per group, but the overall zero rows give no
    # nonzero shifts at all, so "all Hurwitz" holds vacuously
    assert motion.label == CLASS3


def test_group_verdicts_example3(example3):
    verdicts = {gv.group: gv for gv in analyze_groups(example3.a, example3.f, example3.graph)}
    assert set(verdicts) == {(3, 5), (2, 4, 6)}
    assert verdicts[(3, 5)].agrees
    assert verdicts[(3, 5)].limit_dynamics == CONVERGES_TO_AUTONOMOUS
    assert not verdicts[(2, 4, 6)].agrees
    assert verdicts[(2, 4, 6)].limit_dynamics == INDEFINITE


def test_group_verdicts_example4(example4):
    verdicts = {gv.group: gv for gv in analyze_groups(example4.a, example4.f, example4.graph)}
    assert not verdicts[(3, 5)].agrees
    assert verdicts[(2, 4, 6)].agrees
    # the agreed trajectory still follows the autonomous dynamics, it
    # just runs away from the origin because A is unstable
    assert verdicts[(2, 4, 6)].limit_dynamics == CONVERGES_TO_AUTONOMOUS


def test_group_spectra_match_printed_values(example3, example4):
    v3 = {gv.group: gv for gv in analyze_groups(example3.a, example3.f, example3.graph)}
    v4 = {gv.group: gv for gv in analyze_groups(example4.a, example4.f, example4.graph)}
    assert np.allclose(sorted(z.real for z in v3[(3, 5)].group_spectrum.values), [0, 1])
    assert np.allclose(sorted(z.real for z in v3[(2, 4, 6)].group_spectrum.values), [0, 1, 2])
    assert np.allclose(sorted(z.real for z in v4[(3, 5)].group_spectrum.values), [0, 0.3])
    assert np.allclose(sorted(z.real for z in v4[(2, 4, 6)].group_spectrum.values), [0, 1, 2])


def test_ungrouped_vertices(example3):
    groups = [gv.group for gv in analyze_groups(example3.a, example3.f, example3.graph)]
    assert ungrouped_vertices(example3.graph, groups) == (1,)
