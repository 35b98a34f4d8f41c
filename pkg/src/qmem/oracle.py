"""Independent brute-force verification of every closed form in the package.

Nothing here shares code with the analytic paths: channel application and
diagonalization go through :mod:`qmem.kernels` (compiled Jacobi or LAPACK),
input states run over the full 6-parameter pure-state manifold, and the
Gaussian memory model is checked statistically against direct angle
sampling.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import analytic
from .analytic import InputState, PhaseLabel, optimize_symmetric, state_vector
from .channel import Channel, SubclassParams, SymmetricChannelParams
from .errors import ValidationError
from .gaussian import (
    GaussianModelParams,
    classify_gaussian,
    monte_carlo_channel,
    phase_boundary_sigma,
    reduce_to_subclass,
)
from .kernels import bruteforce_entropies

__all__ = [
    "pure_state_vector",
    "entropy_bruteforce",
    "global_minimum_search",
    "verify_gaussian_reduction",
    "run_verification_suite",
    "random_symmetric_params",
    "random_subclass_params",
]


def pure_state_vector(angles) -> np.ndarray:
    """Normalized two-qubit pure state from 6 real parameters.

    Nested spherical coordinates on the unit 7-sphere modulo global phase:
    three polar angles (a1, a2, a3) and three relative phases (f1, f2, f3).
    """
    a = np.asarray(angles, dtype=float)
    if a.shape != (6,):
        raise ValidationError(f"expected 6 state parameters, got shape {a.shape}")
    a1, a2, a3, f1, f2, f3 = a
    return np.array(
        [
            math.cos(a1),
            math.sin(a1) * math.cos(a2) * np.exp(1j * f1),
            math.sin(a1) * math.sin(a2) * math.cos(a3) * np.exp(1j * f2),
            math.sin(a1) * math.sin(a2) * math.sin(a3) * np.exp(1j * f3),
        ],
        dtype=complex,
    )


def entropy_bruteforce(channel: Channel, angles) -> float:
    """Output entropy (bits) for an arbitrary pure input, fully numerically."""
    amps = pure_state_vector(angles)
    return float(bruteforce_entropies(channel.probs, amps[None, :])[0])


# Coordinate boxes for the 6 state parameters; phases wrap.
_LOWS = np.array([0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
_HIGHS = np.array([math.pi / 2, math.pi / 2, math.pi / 2, 2 * math.pi, 2 * math.pi, 2 * math.pi])
_WRAPS = np.array([False, False, False, True, True, True])


def global_minimum_search(
    channel: Channel,
    coarse_grid: int = 6,
    refine_iters: int = 40,
    restarts: int = 4,
    seed: int = 0,
) -> tuple[np.ndarray, float]:
    """Coarse 6-D grid scan plus coordinate-descent refinement.

    Deterministic for fixed (coarse_grid, refine_iters, restarts, seed):
    half of the restarts are the best coarse-grid nodes, the rest are drawn
    from ``default_rng(seed)``.  The result is never worse than the best
    coarse-grid sample.
    """
    if coarse_grid < 2:
        raise ValidationError("coarse_grid must be >= 2 points per dimension")
    axes = [
        np.linspace(_LOWS[d], _HIGHS[d], coarse_grid, endpoint=not _WRAPS[d])
        for d in range(6)
    ]
    mesh = np.meshgrid(*axes, indexing="ij")
    points = np.stack([m.ravel() for m in mesh], axis=1)

    chunk = 200_000
    ents = np.empty(len(points))
    for lo in range(0, len(points), chunk):
        amps = np.array([pure_state_vector(x) for x in points[lo : lo + chunk]])
        ents[lo : lo + chunk] = bruteforce_entropies(channel.probs, amps)

    n_grid_seeds = max(1, (restarts + 1) // 2)
    order = np.argsort(ents, kind="stable")[:n_grid_seeds]
    seeds = [points[i] for i in order]
    rng = np.random.default_rng(seed)
    while len(seeds) < restarts:
        seeds.append(_LOWS + rng.random(6) * (_HIGHS - _LOWS))

    best_x = points[order[0]].copy()
    best_s = float(ents[order[0]])
    step0 = (_HIGHS - _LOWS) / max(coarse_grid - 1, 1)
    for x0 in seeds:
        x, s = _coordinate_descent(channel, np.array(x0, dtype=float), step0.copy(), refine_iters)
        if s < best_s:
            best_x, best_s = x, s
    return best_x, best_s


def _coordinate_descent(channel, x, step, iters, tol=1e-10):
    s = entropy_bruteforce(channel, x)
    for _ in range(iters):
        improved = False
        for d in range(6):
            for sign in (1.0, -1.0):
                cand = x.copy()
                cand[d] += sign * step[d]
                if _WRAPS[d]:
                    cand[d] %= _HIGHS[d]
                else:
                    cand[d] = min(max(cand[d], _LOWS[d]), _HIGHS[d])
                sc = entropy_bruteforce(channel, cand)
                if sc < s - tol:
                    x, s = cand, sc
                    improved = True
        if not improved:
            step *= 0.5
            if step.max() < 1e-9:
                break
    return x, s


def verify_gaussian_reduction(params: GaussianModelParams, samples: int, seed: int) -> dict:
    """Compare Monte-Carlo channel estimate to the closed-form reduction.

    A failing comparison is a report outcome, not an exception.  Passing
    means every stochastic entry is within 4 standard errors of the closed
    form (deterministic entries must match to 1e-12) and the interference
    cross term is consistent with zero at 4 sigma.
    """
    est = monte_carlo_channel(params, samples, seed)
    closed = Channel.from_subclass(reduce_to_subclass(params)).probs
    max_sigma = 0.0
    exact_ok = True
    for i in range(4):
        for j in range(4):
            delta = abs(est.probs[i, j] - closed[i, j])
            if est.stderr[i, j] > 0.0:
                max_sigma = max(max_sigma, delta / est.stderr[i, j])
            elif delta > 1e-12:
                exact_ok = False
    cross_sigma = 0.0
    if est.cross_stderr > 0.0:
        cross_sigma = abs(est.cross) / est.cross_stderr
    elif abs(est.cross) > 1e-12:
        exact_ok = False
    return {
        "p1": params.p1,
        "sigma": params.sigma,
        "samples": samples,
        "max_sigma_deviation": max_sigma,
        "cross_sigma_deviation": cross_sigma,
        "exact_entries_ok": exact_ok,
        "pass": bool(exact_ok and max_sigma <= 4.0 and cross_sigma <= 4.0),
    }


# -- random parameter draws (shared by the suite and the test-suite) --------

def random_subclass_params(rng: np.random.Generator) -> SubclassParams:
    v = rng.dirichlet([1.0, 1.0, 1.0]) * 0.5
    return SubclassParams(p=v[0], q=v[1], r=v[2])


def random_symmetric_params(rng: np.random.Generator) -> SymmetricChannelParams:
    v = rng.dirichlet([1.0] * 5) * 0.5
    p, q, r, eta, s = v
    xi = rng.uniform(-eta, eta)
    gamma = rng.uniform(-eta, eta)
    return SymmetricChannelParams(p=p, s=s, q=q, r=r, eta=eta, xi=xi, gamma=gamma)


def _random_density_matrix(rng: np.random.Generator) -> np.ndarray:
    a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


# -- the verification suite -------------------------------------------------

@dataclass
class _Check:
    name: str
    passed: bool
    detail: str


def _check_mp_correlation(rng) -> _Check:
    worst = 0.0
    for _ in range(100):
        pv = rng.dirichlet([1.0] * 4)
        mu = rng.random()
        ch = Channel.from_mp_correlated(pv, mu)
        closed = mu * float((pv * (1.0 - pv)).sum())
        worst = max(worst, abs(ch.correlation_measure() - closed))
    return _Check("mp-correlation-closed-form", worst <= 1e-12, f"max |delta| = {worst:.3e}")


def _check_subclass_correlation(rng) -> _Check:
    worst = 0.0
    n = 0
    for q in np.linspace(0.0, 0.5, 50):
        for r in np.linspace(0.0, 0.5, 50):
            if q + r > 0.5 + 1e-12:
                continue
            p = max(0.5 - q - r, 0.0)
            sub = SubclassParams(p=p, q=q, r=r)
            ch = Channel.from_subclass(sub)
            closed = (
                3 * p - 4 * p * p
                + abs((q + r) ** 2 - q)
                + abs((q + r) ** 2 - r)
            )
            worst = max(worst, abs(ch.correlation_measure() - closed))
            n += 1
    return _Check(
        "subclass-correlation-closed-form", worst <= 1e-12, f"{n} grid points, max |delta| = {worst:.3e}"
    )


def _check_spectrum_equivalence(rng, draws=2000) -> _Check:
    worst = 0.0
    for k in range(draws):
        if k % 2 == 0:
            params = random_subclass_params(rng).as_symmetric()
        else:
            params = random_symmetric_params(rng)
        ch = Channel.from_symmetric(params)
        st = InputState(rng.uniform(0, math.pi / 2), rng.uniform(0, 2 * math.pi))
        closed = analytic.symmetric_spectrum(params, st)
        psi = state_vector(st)
        out = ch._apply_unchecked(np.outer(psi, psi.conj()))
        dense = np.linalg.eigvalsh(out)[::-1]
        worst = max(worst, float(np.abs(closed - dense).max()))
    return _Check("spectrum-oracle-equivalence", worst <= 1e-10, f"{draws} draws, max |delta| = {worst:.3e}")


def _check_covariance(rng) -> _Check:
    worst = 0.0
    for _ in range(50):
        params = random_symmetric_params(rng)
        ch = Channel.from_symmetric(params)
        rho = _random_density_matrix(rng)
        for i in range(4):
            for j in range(4):
                worst = max(worst, ch.check_covariance(i, j, rho))
    return _Check("pauli-covariance", worst <= 1e-10, f"max residual = {worst:.3e}")


def _check_ensemble_average(rng) -> _Check:
    worst = 0.0
    for _ in range(20):
        ch = Channel.from_symmetric(random_symmetric_params(rng))
        st = InputState(rng.uniform(0, math.pi / 2), rng.uniform(0, 2 * math.pi))
        worst = max(worst, analytic.ensemble_average_check(ch, st))
    return _Check("ensemble-average-maximally-mixed", worst <= 1e-10, f"max residual = {worst:.3e}")


def _check_gaussian_monte_carlo(seed, samples=100_000) -> _Check:
    reports = [
        verify_gaussian_reduction(GaussianModelParams(p1=0.4, sigma=0.5), samples, seed),
        verify_gaussian_reduction(GaussianModelParams(p1=0.25, sigma=2.0), samples, seed + 1),
    ]
    ok = all(r["pass"] for r in reports)
    worst = max(r["max_sigma_deviation"] for r in reports)
    return _Check("gaussian-monte-carlo-reduction", ok, f"max deviation = {worst:.2f} sigma")


def _check_y_sign_rule(rng) -> _Check:
    """The Y-functional sign rule must agree with the candidate-entropy
    classifier away from phase boundaries (goes through the module namespace
    so fault-injection tests can patch y_functional)."""
    bad = 0
    n = 0
    for _ in range(400):
        sub = random_subclass_params(rng)
        y0 = analytic.y_functional(sub, 0.0)
        yh = analytic.y_functional(sub, math.pi / 2)
        ymin = min(y0, yh)
        if abs(ymin) < 1e-6 or abs(y0 - yh) < 1e-6:
            continue  # too close to a boundary for a sign decision
        want_product = ymin >= 0.0
        want_phi0 = (not want_product) and y0 < yh
        got = analytic.classify_subclass(sub).label
        n += 1
        if want_product != (got is PhaseLabel.PRODUCT):
            bad += 1
        elif not want_product and (got is PhaseLabel.ENT_PHI0) != want_phi0:
            bad += 1
    return _Check("y-sign-rule-consistency", bad == 0, f"{bad} disagreements in {n} interior points")


def _check_restriction_support(rng, channels=3, coarse_grid=5) -> _Check:
    worst = -math.inf
    for _ in range(channels):
        params = random_symmetric_params(rng)
        ch = Channel.from_symmetric(params)
        _, analytic_min = optimize_symmetric(params)
        _, search_min = global_minimum_search(
            ch, coarse_grid=coarse_grid, refine_iters=40, restarts=2,
            seed=int(rng.integers(2**31)),
        )
        worst = max(worst, analytic_min - search_min)
    return _Check(
        "restricted-family-not-beaten", worst <= 1e-6,
        f"max (analytic - search) = {worst:.3e} bits",
    )


def _check_phase_boundary(rng) -> _Check:
    worst = 0.0
    for p1 in (0.4, 0.45):
        target = phase_boundary_sigma(p1)
        found = bisect_gaussian_flip(p1)
        worst = max(worst, abs(found - target))
    return _Check("gaussian-phase-boundary", worst <= 1e-6, f"max |sigma - sigma*| = {worst:.3e}")


def bisect_gaussian_flip(p1: float, lo: float = 0.0, hi: float = 10.0, tol: float = 1e-7) -> float:
    """Bisect the onset of the product phase along sigma (strict ties count
    as non-product, so boundary points fall on the entangled side)."""

    def is_product(sigma):
        res = classify_gaussian(GaussianModelParams(p1=p1, sigma=sigma), tie_tol=0.0)
        return res.label is PhaseLabel.PRODUCT

    if is_product(lo):
        return lo
    if not is_product(hi):
        return math.inf
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if is_product(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def run_verification_suite(seed: int = 0) -> dict:
    """Run all oracle checks at CI scale; returns the JSON-serializable report."""
    rng = np.random.default_rng(seed)
    checks = [
        _check_mp_correlation(rng),
        _check_subclass_correlation(rng),
        _check_spectrum_equivalence(rng),
        _check_covariance(rng),
        _check_ensemble_average(rng),
        _check_y_sign_rule(rng),
        _check_gaussian_monte_carlo(seed),
        _check_restriction_support(rng),
        _check_phase_boundary(rng),
    ]
    return {
        "seed": seed,
        "checks": [{"name": c.name, "pass": bool(c.passed), "detail": c.detail} for c in checks],
    }


def report_passed(report: dict) -> bool:
    return all(c["pass"] for c in report["checks"])
