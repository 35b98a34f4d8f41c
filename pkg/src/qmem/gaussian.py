"""Random-rotation memory model.

A single-use Pauli channel with probabilities (p0, p1, p1, p0), p0 + p1 = 1/2,
exerts on the second qubit the first-use error conjugated by a z-rotation
U = exp(-i theta sigma_z / 2) whose angle is Gaussian with mean theta0 and
standard deviation sigma.  Under this convention

    sigma_1 -> cos(theta) sigma_1 + sin(theta) sigma_2
    sigma_2 -> cos(theta) sigma_2 - sin(theta) sigma_1

and at theta0 = 0 the averaged channel is exactly the p/q/r subclass with

    p = p0,  q = p1 (1 + exp(-2 sigma^2)) / 2,  r = p1 (1 - exp(-2 sigma^2)) / 2.

The closed form silently assumes theta0 = 0 (for theta0 != 0 the average
picks up interference terms outside the Pauli-diagonal subclass), so the
reduction refuses theta0 != 0 and general theta0 is served only by the
Monte-Carlo estimator, which quantifies those cross terms.

The Gaussian is sampled over the whole real line, not wrapped to [0, 2 pi];
this matches the closed form, which uses plain Gaussian integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import (
    ClassificationResult,
    InputState,
    PhaseLabel,
    subclass_candidates,
)
from .channel import SubclassParams
from .errors import ValidationError

__all__ = [
    "GaussianModelParams",
    "MonteCarloChannelEstimate",
    "reduce_to_subclass",
    "phase_boundary_sigma",
    "monte_carlo_channel",
    "classify_gaussian",
]

MIN_MC_SAMPLES = 10_000


@dataclass(frozen=True)
class GaussianModelParams:
    """Model parameters: p1 (with p0 = 1/2 - p1), angle spread sigma, mean theta0."""

    p1: float
    sigma: float
    theta0: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.p1 <= 0.5:
            raise ValidationError(f"p1 must be in [0, 1/2], got {self.p1}")
        if self.sigma < 0.0:
            raise ValidationError(f"sigma must be >= 0, got {self.sigma}")

    @property
    def p0(self) -> float:
        return 0.5 - self.p1


def reduce_to_subclass(params: GaussianModelParams) -> SubclassParams:
    """Closed-form reduction to the p/q/r subclass; valid only at theta0 = 0."""
    if params.theta0 != 0.0:
        raise ValidationError(
            "closed-form reduction requires theta0 = 0; "
            "use monte_carlo_channel for theta0 != 0"
        )
    damp = math.exp(-2.0 * params.sigma**2)
    return SubclassParams(
        p=params.p0,
        q=params.p1 * (1.0 + damp) / 2.0,
        r=params.p1 * (1.0 - damp) / 2.0,
    )


def phase_boundary_sigma(p1: float) -> float | None:
    """Critical sigma solving exp(-2 sigma^2) = 3 - 1/p1.

    Returns None for p1 <= 1/3: the right-hand side is non-positive, the
    boundary is absent, and the optimal ensemble is maximally entangled for
    every sigma.
    """
    if not 0.0 < p1 <= 0.5:
        raise ValidationError(f"p1 must be in (0, 1/2], got {p1}")
    rhs = 3.0 - 1.0 / p1
    if rhs <= 0.0:
        return None
    return math.sqrt(-math.log(rhs) / 2.0)


def classify_gaussian(
    params: GaussianModelParams, tie_tol: float = 0.0
) -> ClassificationResult:
    """Classify the optimal-input phase of the reduced channel.

    Only the product and phi=0 candidates compete: the model guarantees
    r <= q (with equality only in the sigma -> infinity limit), so the
    phi=pi/2 Bell state never strictly wins.  Comparing all three candidates
    would spuriously report ties at large sigma, where q - r underflows to
    zero in double precision.
    """
    sub = reduce_to_subclass(params)
    cands = [c for c in subclass_candidates(sub) if c[0] is not PhaseLabel.ENT_PHIHALF]
    best = min(cands, key=lambda c: c[2])
    other = max(cands, key=lambda c: c[2])
    if other[2] - best[2] <= tie_tol:
        return ClassificationResult(PhaseLabel.TIE, best[1], best[2])
    return ClassificationResult(best[0], best[1], best[2])


@dataclass(frozen=True)
class MonteCarloChannelEstimate:
    """Sampled error-probability matrix with per-entry standard errors.

    ``cross`` is the mean coefficient of the Pauli-off-diagonal interference
    terms (sigma_1 x sigma_1) rho (sigma_2 x sigma_1) generated by each
    rotated error (the two rotation terms carry opposite signs, same
    magnitude); it must vanish within ``cross_stderr`` at theta0 = 0.
    """

    probs: np.ndarray
    stderr: np.ndarray
    cross: float
    cross_stderr: float
    samples: int


def monte_carlo_channel(
    params: GaussianModelParams, samples: int, seed: int, blocks: int = 16
) -> MonteCarloChannelEstimate:
    """Estimate the averaged error-probability matrix by direct angle sampling.

    Deterministic for a fixed (seed, samples, blocks) triple: block seeds are
    derived by spawning ``numpy.random.SeedSequence(seed)`` and block sums are
    combined in a fixed order.
    """
    if samples < MIN_MC_SAMPLES:
        raise ValidationError(f"need at least {MIN_MC_SAMPLES} samples, got {samples}")
    if blocks < 1:
        raise ValidationError("blocks must be >= 1")

    per_block = [samples // blocks] * blocks
    for k in range(samples % blocks):
        per_block[k] += 1

    sums = np.zeros(3)    # cos^2, sin^2, cos*sin
    sumsq = np.zeros(3)
    for child, n in zip(np.random.SeedSequence(seed).spawn(blocks), per_block):
        if n == 0:
            continue
        rng = np.random.default_rng(child)
        theta = params.theta0 + params.sigma * rng.standard_normal(n)
        c, s = np.cos(theta), np.sin(theta)
        vals = np.stack([c * c, s * s, c * s])
        sums += vals.sum(axis=1)
        sumsq += (vals * vals).sum(axis=1)

    mean = sums / samples
    var = np.maximum(sumsq / samples - mean**2, 0.0) * samples / max(samples - 1, 1)
    se = np.sqrt(var / samples)

    p0, p1 = params.p0, params.p1
    probs = np.zeros((4, 4))
    stderr = np.zeros((4, 4))
    probs[0, 0] = probs[3, 3] = p0
    probs[1, 1] = probs[2, 2] = p1 * mean[0]
    probs[1, 2] = probs[2, 1] = p1 * mean[1]
    stderr[1, 1] = stderr[2, 2] = p1 * se[0]
    stderr[1, 2] = stderr[2, 1] = p1 * se[1]
    return MonteCarloChannelEstimate(
        probs=probs,
        stderr=stderr,
        cross=float(p1 * mean[2]),
        cross_stderr=float(p1 * se[2]),
        samples=samples,
    )
