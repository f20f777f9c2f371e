"""Analysis and simulation of linear multi-agent motion.

The package decides whether a network of identical linear agents
reaches consensus, predicts how non-consenting networks split into
clusters, and checks those predictions against integrated
trajectories. Vertices are numbered from 1 and the weight matrix is
read row-wise: entry (i, j) is the influence agent j exerts on agent
i.
"""
from .classify import (
    CLASS1,
    CLASS2,
    CLASS3,
    CONSENSUS,
    CONVERGES_TO_AUTONOMOUS,
    INDEFINITE,
    STABLE_TRIVIAL,
    Evidence,
    GroupVerdict,
    MotionClass,
    analyze_groups,
    classify_motion,
    classify_system,
    decide_consensus,
    ungrouped_vertices,
)
from .clustering import (
    ClusterPrediction,
    SpectrumOrdering,
    agreement_test,
    modal_matrix,
    order_spectrum,
    phi_matrix,
    predict_clusters,
    solve_T,
)
from .datasets import bundled_names, bundled_text, load_bundled
from .errors import AnalysisError, SpecError
from .export import trajectory_csv, trajectory_svg
from .graph import (
    Condensation,
    WeightedDigraph,
    build_graph,
    condensation,
    from_weight_matrix,
    has_spanning_tree,
    independent_groups,
    induced_laplacian,
    laplacian,
)
from .simulate import (
    StackedSystem,
    TrajectoryRecord,
    assemble,
    default_initial_state,
    empirical_clusters,
    integrate,
    limit_dynamics_check,
    pair_agrees,
    pair_statistics,
    pairwise_gap,
)
from .specio import SimParams, SystemSpec, load_spec, parse_spec
from .spectral import (
    ComplexSpectrum,
    EigenEntry,
    HurwitzVerdict,
    SpectralReport,
    complex_shift,
    eigenvalues,
    hurwitz,
    shifted_spectrum,
    spectral_report,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisError",
    "SpecError",
    "WeightedDigraph",
    "Condensation",
    "build_graph",
    "from_weight_matrix",
    "laplacian",
    "condensation",
    "has_spanning_tree",
    "independent_groups",
    "induced_laplacian",
    "ComplexSpectrum",
    "EigenEntry",
    "HurwitzVerdict",
    "SpectralReport",
    "eigenvalues",
    "complex_shift",
    "shifted_spectrum",
    "hurwitz",
    "spectral_report",
    "CONSENSUS",
    "CLASS1",
    "CLASS2",
    "CLASS3",
    "STABLE_TRIVIAL",
    "CONVERGES_TO_AUTONOMOUS",
    "INDEFINITE",
    "Evidence",
    "MotionClass",
    "GroupVerdict",
    "decide_consensus",
    "classify_motion",
    "classify_system",
    "analyze_groups",
    "ungrouped_vertices",
    "SpectrumOrdering",
    "ClusterPrediction",
    "phi_matrix",
    "order_spectrum",
    "solve_T",
    "modal_matrix",
    "agreement_test",
    "predict_clusters",
    "StackedSystem",
    "TrajectoryRecord",
    "assemble",
    "default_initial_state",
    "integrate",
    "pairwise_gap",
    "pair_statistics",
    "pair_agrees",
    "empirical_clusters",
    "limit_dynamics_check",
    "SimParams",
    "SystemSpec",
    "parse_spec",
    "load_spec",
    "trajectory_csv",
    "trajectory_svg",
    "bundled_names",
    "bundled_text",
    "load_bundled",
    "__version__",
]
