#!/usr/bin/env python3
"""Per-eigenvalue stability verdicts for every bundled system.

For each Laplacian eigenvalue lambda the matrix A - lambda F decides
one mode of the network: Hurwitz means the corresponding disagreement
component dies out. The zero eigenvalue carries A itself.
"""
from swarmmotion import bundled_names, laplacian, load_bundled, spectral_report


def fmt(z, digits=2):
    if abs(z.imag) < 1e-9:
        return f"{z.real:.{digits}f}"
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real:.{digits}f} {sign} {abs(z.imag):.{digits}f}i"


for name in bundled_names():
    spec = load_bundled(name)
    report = spectral_report(spec.a, spec.f, laplacian(spec.graph))
    a_word = "Hurwitz" if report.a_verdict.is_hurwitz else "not Hurwitz"
    print(f"=== {name}  (A is {a_word})")
    for entry in report.per_eigenvalue:
        pair = ", ".join(fmt(z) for z in entry.shifted_spectrum.values)
        if entry.is_zero:
            verdict = "carries A"
        elif entry.verdict.is_hurwitz:
            verdict = "Hurwitz"
        elif entry.verdict.is_marginal:
            verdict = "marginal"
        else:
            verdict = "unstable"
        print(f"  lambda = {fmt(entry.value):>14}   shift eigs {{{pair}}}   {verdict}")
    print()
