"""Spectra and Hurwitz verdicts for the shifted pencils A - lambda*F.

The consensus criterion evaluates, for every Laplacian eigenvalue
lambda, whether A - lambda*F has all eigenvalue real parts strictly
negative. For complex lambda the pencil is complex; its spectrum is
computed directly in complex arithmetic, while the real 2d x 2d
embedding is kept as an independent cross-check (its spectrum is the
union of the pencil spectrum with its conjugate).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AnalysisError, SpecError

HURWITZ_EPS = 1e-9
ZERO_EIG_RTOL = 1e-6


@dataclass(frozen=True)
class ComplexSpectrum:
    """Eigenvalues sorted by (real part, imaginary part)."""

    values: tuple[complex, ...]

    def __len__(self) -> int:
        return len(self.values)

    def max_real_part(self) -> float:
        return max(z.real for z in self.values)


@dataclass(frozen=True)
class HurwitzVerdict:
    """Stability verdict for one spectrum.

    ``is_hurwitz`` means every real part is below -eps;
    ``is_marginal`` means the largest real part sits within eps of
    zero. The two are mutually exclusive.
    """

    max_real_part: float
    is_hurwitz: bool
    is_marginal: bool


@dataclass(frozen=True)
class EigenEntry:
    """One Laplacian eigenvalue with its shifted-pencil verdict."""

    value: complex
    is_zero: bool
    shifted_spectrum: ComplexSpectrum
    verdict: HurwitzVerdict


@dataclass(frozen=True)
class SpectralReport:
    laplacian_spectrum: ComplexSpectrum
    per_eigenvalue: tuple[EigenEntry, ...]
    a_verdict: HurwitzVerdict

    def nonzero_entries(self) -> tuple[EigenEntry, ...]:
        return tuple(e for e in self.per_eigenvalue if not e.is_zero)


def _as_square(m, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(m)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise SpecError(f"{name} must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise SpecError(f"{name} contains non-finite entries")
    return arr


def _checked_eigvals(arr: np.ndarray) -> np.ndarray:
    """Dense eigenvalues with a trace consistency check."""
    try:
        vals = np.linalg.eigvals(arr)
    except np.linalg.LinAlgError as exc:
        raise AnalysisError(f"eigenvalue iteration did not converge: {exc}")
    scale = max(1.0, float(np.abs(arr).sum(axis=1).max()))
    if abs(vals.sum() - np.trace(arr)) > 1e-8 * scale:
        raise AnalysisError("eigenvalue sum disagrees with the matrix trace")
    return vals


def _pair_conjugates(vals: np.ndarray) -> np.ndarray:
    """Force the spectrum of a real matrix into exact conjugate pairs.

    LAPACK already returns conjugate pairs for real input; this pass
    snaps nearly-real values to the real axis and averages matched
    pairs so downstream comparisons can rely on exact symmetry.
    """
    scale = max(1.0, float(np.abs(vals).max()))
    tol = 1e-9 * scale
    out = list(vals.astype(complex))
    for k, z in enumerate(out):
        if abs(z.imag) <= tol:
            out[k] = complex(z.real, 0.0)
    pos = [k for k, z in enumerate(out) if z.imag > 0]
    neg = [k for k, z in enumerate(out) if z.imag < 0]
    used = set()
    for k in pos:
        best, best_d = None, None
        for m in neg:
            if m in used:
                continue
            d = abs(out[k] - out[m].conjugate())
            if best is None or d < best_d:
                best, best_d = m, d
        if best is not None and best_d <= 1e-6 * scale:
            used.add(best)
            mean = (out[k] + out[best].conjugate()) / 2.0
            out[k] = mean
            out[best] = mean.conjugate()
    return np.array(out)


def _sorted_spectrum(vals) -> ComplexSpectrum:
    ordered = sorted((complex(z) for z in vals), key=lambda z: (z.real, z.imag))
    return ComplexSpectrum(values=tuple(ordered))


def eigenvalues(m) -> ComplexSpectrum:
    """Spectrum of a real square matrix.

    Conjugate-pair symmetry is enforced on the result and the
    eigenvalue sum is checked against the trace, so a silently wrong
    LAPACK result cannot pass through.
    """
    arr = _as_square(m).astype(float)
    return _sorted_spectrum(_pair_conjugates(_checked_eigvals(arr)))


def complex_shift(a, f, lam: complex) -> np.ndarray:
    """Real 2d x 2d embedding of the complex pencil A - lambda*F.

    The embedding [[A - Re(lam) F, Im(lam) F], [-Im(lam) F,
    A - Re(lam) F]] has spectrum spec(A - lam F) united with its
    conjugate, which preserves the largest real part exactly.
    """
    a = _as_square(a, "A").astype(float)
    f = _as_square(f, "F").astype(float)
    if a.shape != f.shape:
        raise SpecError(f"A and F must match in shape, got {a.shape} and {f.shape}")
    lam = complex(lam)
    top = np.hstack([a - lam.real * f, lam.imag * f])
    bottom = np.hstack([-lam.imag * f, a - lam.real * f])
    return np.vstack([top, bottom])


def shifted_spectrum(a, f, lam: complex) -> ComplexSpectrum:
    """Spectrum of A - lambda*F, complex lambda allowed."""
    a = _as_square(a, "A").astype(float)
    f = _as_square(f, "F").astype(float)
    if a.shape != f.shape:
        raise SpecError(f"A and F must match in shape, got {a.shape} and {f.shape}")
    lam = complex(lam)
    if lam.imag == 0.0:
        return eigenvalues(a - lam.real * f)
    return _sorted_spectrum(_checked_eigvals(a - lam * f))


def hurwitz(spectrum: ComplexSpectrum, eps: float = HURWITZ_EPS) -> HurwitzVerdict:
    """Classify a spectrum as Hurwitz, marginal, or unstable."""
    if not spectrum.values:
        raise SpecError("cannot judge an empty spectrum")
    worst = spectrum.max_real_part()
    return HurwitzVerdict(
        max_real_part=worst,
        is_hurwitz=bool(worst < -eps),
        is_marginal=bool(abs(worst) <= eps),
    )


def spectral_report(a, f, lap) -> SpectralReport:
    """Full per-eigenvalue analysis of the pencil family.

    For each Laplacian eigenvalue the shifted spectrum and its Hurwitz
    verdict are attached. Eigenvalues within ``ZERO_EIG_RTOL`` times
    the Laplacian scale of zero are flagged and their entry carries the
    spectrum of A itself (the pencil shift vanishes there).
    """
    lap = np.asarray(lap, dtype=float)
    lam_spec = eigenvalues(lap)
    zero_tol = ZERO_EIG_RTOL * max(1.0, float(np.abs(lap).sum(axis=1).max()))
    a_spectrum = eigenvalues(a)
    entries = []
    for lam in lam_spec.values:
        is_zero = abs(lam) <= zero_tol
        shifted = a_spectrum if is_zero else shifted_spectrum(a, f, lam)
        entries.append(
            EigenEntry(
                value=lam,
                is_zero=is_zero,
                shifted_spectrum=shifted,
                verdict=hurwitz(shifted),
            )
        )
    return SpectralReport(
        laplacian_spectrum=lam_spec,
        per_eigenvalue=tuple(entries),
        a_verdict=hurwitz(a_spectrum),
    )
