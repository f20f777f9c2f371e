"""Cluster prediction through the row-pattern test.

For a spanning-tree graph, order the Laplacian spectrum as
(0, non-Hurwitz shifts, Hurwitz shifts), solve T L = Phi where Phi is
the cyclic difference matrix, and form Psi = T Q with Q the modal
matrix of L. Row i of Psi describes the difference x_i - x_{i+1}
(cyclically) in modal coordinates: the mode at eigenvalue 0 never
contributes to a difference, contributions from Hurwitz positions die
out, and what remains are the columns 2..alpha-1 holding the
non-Hurwitz shifts. The consecutive pair (i, i+1) therefore reaches
agreement exactly when those columns of row i vanish.

Feasible-solution freedom is harmless here: any other solution of
T L = Phi differs by rows from the left null space of L, which only
touches column 1 of Psi, never the tested columns.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import graph as graphmod
from .errors import AnalysisError
from .spectral import SpectralReport, spectral_report

PSI_ZERO_TOL = 1e-6
SOLVE_RESIDUAL_RTOL = 1e-8
RECONSTRUCT_RTOL = 1e-6
MAX_EIGENVECTOR_COND = 1e8


@dataclass(frozen=True)
class SpectrumOrdering:
    """Permutation of the report entries into test order.

    ``permutation[k]`` is the index into ``report.per_eigenvalue`` of
    the eigenvalue placed at position k+1; ``values`` repeats the
    eigenvalues in that order for convenience. ``alpha`` is the
    1-based position of the first Hurwitz shift, so positions
    2..alpha-1 hold the non-Hurwitz ones.
    """

    permutation: tuple[int, ...]
    alpha: int
    values: tuple[complex, ...]


@dataclass(frozen=True)
class ClusterPrediction:
    """Agreeing consecutive pairs and the resulting partition.

    The partition is made of the connected components of the cyclic
    chain 1-2-...-N-1 restricted to agreeing pairs; it deliberately
    uses no other pairs, because the row test speaks only about
    consecutive ones.
    """

    agreeing_pairs: tuple[tuple[int, int], ...]
    partition: tuple[tuple[int, ...], ...]
    psi: np.ndarray


def phi_matrix(n: int) -> np.ndarray:
    """Cyclic difference matrix: 1 on the diagonal, -1 above it, and
    -1 in the corner (n, 1). Each row maps a stacked vector to the
    difference of consecutive entries, wrapping at the end.
    """
    phi = np.eye(n)
    for i in range(n - 1):
        phi[i, i + 1] = -1.0
    phi[n - 1, 0] = -1.0
    return phi


def order_spectrum(report: SpectralReport) -> SpectrumOrdering:
    """Arrange the spectrum as (zero, non-Hurwitz shifts, Hurwitz shifts).

    Ties inside each status class are broken by modulus and then by
    phase angle in [0, 2pi), which keeps conjugate eigenvalues
    adjacent and the ordering deterministic.

    Raises:
        AnalysisError: if the zero eigenvalue is not simple, which
            means the graph has no spanning tree and the test does not
            apply.
    """
    zero_positions = [k for k, e in enumerate(report.per_eigenvalue) if e.is_zero]
    if len(zero_positions) != 1:
        raise AnalysisError(
            f"the Laplacian zero eigenvalue must be simple for the row test, "
            f"found multiplicity {len(zero_positions)} (no spanning tree)"
        )

    def sort_key(k: int):
        lam = report.per_eigenvalue[k].value
        return (abs(lam), np.angle(complex(lam)) % (2.0 * np.pi))

    non_hurwitz = sorted(
        (
            k
            for k, e in enumerate(report.per_eigenvalue)
            if not e.is_zero and not e.verdict.is_hurwitz
        ),
        key=sort_key,
    )
    hurwitz_ = sorted(
        (
            k
            for k, e in enumerate(report.per_eigenvalue)
            if not e.is_zero and e.verdict.is_hurwitz
        ),
        key=sort_key,
    )
    permutation = tuple(zero_positions + non_hurwitz + hurwitz_)
    values = tuple(report.per_eigenvalue[k].value for k in permutation)
    return SpectrumOrdering(
        permutation=permutation,
        alpha=2 + len(non_hurwitz),
        values=values,
    )


def solve_T(lap: np.ndarray) -> np.ndarray:
    """Minimum-Frobenius-norm solution of T L = Phi.

    Every row of Phi sums to zero, hence lies in the row space of a
    spanning-tree Laplacian, so the pseudoinverse solve is exact up to
    roundoff. The residual is verified; a residual above threshold
    means the preconditions were violated.
    """
    lap = np.asarray(lap, dtype=float)
    n = lap.shape[0]
    t = phi_matrix(n) @ np.linalg.pinv(lap)
    scale = max(1.0, float(np.abs(lap).sum(axis=1).max()))
    residual = float(np.abs(t @ lap - phi_matrix(n)).max())
    if residual > SOLVE_RESIDUAL_RTOL * scale:
        raise AnalysisError(
            f"T L = Phi is infeasible (residual {residual:.3e}); "
            f"the Laplacian zero eigenvalue is probably not simple"
        )
    return t


def modal_matrix(lap: np.ndarray, ordering: SpectrumOrdering) -> np.ndarray:
    """Eigenvector matrix Q with columns arranged per the ordering.

    Column 1 is the normalized all-ones vector (the right eigenvector
    at zero). Defective Laplacians are rejected: a numerical Jordan
    form is ill-posed, so an eigenvector matrix with condition number
    above 1e8 or a bad diagonalization residual fails loudly.
    """
    lap = np.asarray(lap, dtype=float)
    n = lap.shape[0]
    try:
        eigvals, eigvecs = np.linalg.eig(lap)
    except np.linalg.LinAlgError as exc:
        raise AnalysisError(f"eigenvalue iteration did not converge: {exc}")
    cond = float(np.linalg.cond(eigvecs))
    if not np.isfinite(cond) or cond > MAX_EIGENVECTOR_COND:
        raise AnalysisError(
            f"unsupported: defective Laplacian (eigenvector condition {cond:.2e})"
        )
    scale = max(1.0, float(np.abs(lap).sum(axis=1).max()))
    used = [False] * n
    columns = []
    for lam in ordering.values:
        best, best_d = None, None
        for k in range(n):
            if used[k]:
                continue
            d = abs(eigvals[k] - lam)
            if best is None or d < best_d:
                best, best_d = k, d
        if best is None or best_d > 1e-6 * scale:
            raise AnalysisError(
                f"could not match ordered eigenvalue {lam:.6g} to the Laplacian spectrum"
            )
        used[best] = True
        columns.append(eigvecs[:, best].astype(complex))
    q = np.column_stack(columns)
    q[:, 0] = np.ones(n) / np.sqrt(n)
    recon = np.linalg.solve(q, lap @ q) - np.diag(ordering.values)
    if float(np.abs(recon).max()) > RECONSTRUCT_RTOL * scale:
        raise AnalysisError(
            "unsupported: defective Laplacian (diagonalization residual "
            f"{float(np.abs(recon).max()):.3e})"
        )
    return q


def agreement_test(
    t: np.ndarray,
    q: np.ndarray,
    ordering: SpectrumOrdering,
    tol: float = PSI_ZERO_TOL,
) -> ClusterPrediction:
    """Row-pattern test on Psi = T Q.

    The consecutive pair (i, i+1 mod N) agrees iff every entry of row
    i in columns 2..alpha-1 has modulus below ``tol`` relative to the
    row's largest modulus. With alpha = 2 the column set is empty and
    every pair agrees, matching the consensus case.
    """
    psi = np.asarray(t) @ np.asarray(q)
    n = psi.shape[0]
    alpha = ordering.alpha
    pairs = []
    agree_flags = []
    for i in range(n):
        row = np.abs(psi[i])
        scale = max(1.0, float(row.max()))
        tested = row[1 : alpha - 1]
        ok = bool(np.all(tested < tol * scale))
        agree_flags.append(ok)
        if ok:
            pairs.append((i + 1, (i + 1) % n + 1))
    parent = list(range(n + 1))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i in range(n):
        if agree_flags[i]:
            j = (i + 1) % n
            parent[find(i + 1)] = find(j + 1)
    blocks: dict[int, list[int]] = {}
    for v in range(1, n + 1):
        blocks.setdefault(find(v), []).append(v)
    partition = tuple(
        tuple(sorted(b)) for b in sorted(blocks.values(), key=lambda b: b[0])
    )
    return ClusterPrediction(
        agreeing_pairs=tuple(pairs),
        partition=partition,
        psi=psi,
    )


def predict_clusters(a, f, g: graphmod.WeightedDigraph, tol: float = PSI_ZERO_TOL) -> ClusterPrediction:
    """Full pipeline: report, ordering, T, Q, then the row test.

    Raises:
        AnalysisError: when the graph has no spanning tree. The row
            test is stated only for spanning-tree graphs; analyze the
            independent groups instead.
    """
    if not graphmod.has_spanning_tree(g):
        raise AnalysisError(
            "the interaction graph has no spanning tree, so the row-pattern "
            "test does not apply; analyze independent groups instead"
        )
    lap = graphmod.laplacian(g)
    report = spectral_report(a, f, lap)
    ordering = order_spectrum(report)
    t = solve_T(lap)
    q = modal_matrix(lap, ordering)
    return agreement_test(t, q, ordering, tol=tol)
