"""Simultaneous complex root finding (Aberth-Ehrlich iteration).

Used for the symmetric-function oracle (degrees 3 and 4) and for the
preimage eliminants (degrees up to 9), so robustness matters more than
speed.  Starting points sit on a circle of the Cauchy root bound radius,
slightly rotated to break symmetric stalls.
"""

from __future__ import annotations

import cmath

__all__ = ["aberth_roots", "RootFindingFailed"]


class RootFindingFailed(RuntimeError):
    """The iteration did not reach the requested residual."""


def _horner(coeffs: list[complex], x: complex) -> tuple[complex, complex]:
    """Evaluate p(x) and p'(x); coeffs are highest degree first."""
    p = coeffs[0]
    dp = 0j
    for c in coeffs[1:]:
        dp = dp * x + p
        p = p * x + c
    return p, dp


def aberth_roots(
    coefficients: list[complex],
    tol: float = 1e-12,
    max_iter: int = 500,
) -> list[complex]:
    """All complex roots of sum(coefficients[i] * x^(n-i)), leading first.

    Raises RootFindingFailed if the final residuals (relative to the
    coefficient scale) exceed 1e-6 even after max_iter sweeps.
    """
    coeffs = [complex(c) for c in coefficients]
    while coeffs and abs(coeffs[0]) == 0:
        coeffs = coeffs[1:]
    n = len(coeffs) - 1
    if n < 1:
        return []
    lead = coeffs[0]
    monic = [c / lead for c in coeffs]
    radius = 1.0 + max(abs(c) for c in monic[1:]) if n else 1.0
    roots = [
        radius * cmath.exp(2j * cmath.pi * (k + 0.25) / n + 0.4j)
        for k in range(n)
    ]
    for _ in range(max_iter):
        converged = True
        offsets = []
        for i, z in enumerate(roots):
            p, dp = _horner(monic, z)
            if p == 0:
                offsets.append(0j)
                continue
            if dp == 0:
                offsets.append(p)  # nudge off the critical point
                converged = False
                continue
            newton = p / dp
            correction = sum(
                1 / (z - w) for j, w in enumerate(roots) if j != i
            )
            denom = 1 - newton * correction
            step = newton / denom if denom != 0 else newton
            offsets.append(step)
            if abs(step) > tol * max(1.0, abs(z)):
                converged = False
        roots = [z - dz for z, dz in zip(roots, offsets)]
        if converged:
            break
    scale = max(1.0, max(abs(c) for c in monic))
    for z in roots:
        p, _ = _horner(monic, z)
        if abs(p) > 1e-6 * scale * max(1.0, abs(z)) ** n:
            raise RootFindingFailed(
                f"residual {abs(p):.3e} at root estimate {z!r}"
            )
    return roots


def cluster_points(
    points: list[complex] | list[tuple[complex, ...]],
    rel_tol: float = 1e-6,
) -> list:
    """Group numerically equal points; returns one representative each."""
    reps: list = []
    for p in points:
        vec = p if isinstance(p, tuple) else (p,)
        scale = max(1.0, max(abs(x) for x in vec))
        matched = False
        for r in reps:
            rv = r if isinstance(r, tuple) else (r,)
            if len(rv) == len(vec) and max(
                abs(a - b) for a, b in zip(rv, vec)
            ) <= rel_tol * scale:
                matched = True
                break
        if not matched:
            reps.append(p)
    return reps
