"""Closed-form output states, spectra, entropies, and optimal-input
classification for the symmetric channel family and its p/q/r subclass.

The analytic paths here never call a dense eigensolver: the symmetric-family
output matrix is block diagonal in 2x2 blocks, so all spectra come from the
closed-form 2x2 eigenvalue formula.  The oracle module cross-checks every
result with an independent dense diagonalization.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .channel import Channel, SubclassParams, SymmetricChannelParams
from .errors import InternalConsistencyError, ValidationError
from .linalg import binary_entropy

__all__ = [
    "InputState",
    "OutputEntries",
    "PhaseLabel",
    "ClassificationResult",
    "state_vector",
    "output_entries",
    "symmetric_spectrum",
    "symmetric_entropy",
    "subclass_eigenvalues",
    "y_functional",
    "classify_subclass",
    "subclass_candidates",
    "holevo_covariant",
    "ensemble_average_check",
    "optimize_symmetric",
]

DISCRIMINANT_CLAMP = 1e-12
DEFAULT_TIE_TOL = 1e-9


@dataclass(frozen=True)
class InputState:
    """The symmetry-invariant input family cos(theta)|00> + sin(theta) e^{i phi}|11>."""

    theta: float
    phi: float = 0.0


def state_vector(state: InputState) -> np.ndarray:
    v = np.zeros(4, dtype=complex)
    v[0] = math.cos(state.theta)
    v[3] = math.sin(state.theta) * np.exp(1j * state.phi)
    return v


class PhaseLabel(enum.Enum):
    """Optimal-input phase of a subclass channel (the three phases of the
    phase diagram, plus an explicit boundary-tie label)."""

    PRODUCT = "product"
    ENT_PHI0 = "ent_phi0"
    ENT_PHIHALF = "ent_phihalf"
    TIE = "tie"


@dataclass(frozen=True)
class OutputEntries:
    """Nonzero entries of the (block-diagonal) channel output matrix."""

    e00: float
    e33: float
    e11: float
    e22: float
    e03: complex
    e12: complex

    def as_matrix(self) -> np.ndarray:
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0] = self.e00
        m[3, 3] = self.e33
        m[1, 1] = self.e11
        m[2, 2] = self.e22
        m[0, 3] = self.e03
        m[3, 0] = np.conj(self.e03)
        m[1, 2] = self.e12
        m[2, 1] = np.conj(self.e12)
        return m


@dataclass(frozen=True)
class ClassificationResult:
    label: PhaseLabel
    state: InputState
    entropy_bits: float


def output_entries(params: SymmetricChannelParams, state: InputState) -> OutputEntries:
    """Output density-matrix entries for a symmetric channel on the invariant family."""
    c2 = math.cos(state.theta) ** 2
    s2 = math.sin(state.theta) ** 2
    s2t = math.sin(2.0 * state.theta)
    em = np.exp(-1j * state.phi)
    ep = np.exp(1j * state.phi)
    ps = params.p + params.s
    qr = params.q + params.r
    return OutputEntries(
        e00=2.0 * ps * c2 + 2.0 * qr * s2,
        e33=2.0 * ps * s2 + 2.0 * qr * c2,
        e11=params.eta,
        e22=params.eta,
        e03=s2t * ((params.p - params.s) * em + (params.q - params.r) * ep),
        e12=0.5 * s2t * (params.xi * em + params.gamma * ep),
    )


def _two_by_two_eigs(a: float, d: float, b: complex) -> tuple[float, float]:
    """Eigenvalues of the Hermitian block [[a, b], [conj(b), d]]."""
    mean = 0.5 * (a + d)
    disc = math.hypot(0.5 * (a - d), abs(b))
    return mean + disc, mean - disc


def symmetric_spectrum(params: SymmetricChannelParams, state: InputState) -> np.ndarray:
    """Closed-form output spectrum (descending) for a symmetric channel."""
    e = output_entries(params, state)
    outer = _two_by_two_eigs(e.e00, e.e33, e.e03)
    inner = _two_by_two_eigs(e.e11, e.e22, e.e12)
    lam = np.array(sorted(outer + inner, reverse=True))
    return lam


def symmetric_entropy(params: SymmetricChannelParams, state: InputState) -> float:
    """Closed-form output entropy (bits) for a symmetric channel."""
    lam = np.clip(symmetric_spectrum(params, state), 0.0, 1.0)
    pos = lam[lam > 0.0]
    return float(-(pos * np.log2(pos)).sum())


def y_functional(params: SubclassParams, phi: float) -> float:
    """Y = q(r-p) cos^2(phi) + r(q-p) sin^2(phi)."""
    p, q, r = params.p, params.q, params.r
    return q * (r - p) * math.cos(phi) ** 2 + r * (q - p) * math.sin(phi) ** 2


def subclass_eigenvalues(params: SubclassParams, state: InputState) -> np.ndarray:
    """Closed-form output spectrum {l3, l4, 0, 0} of a subclass channel.

    l_{3,4} = (1 +/- sqrt(1 - 16 [p(q+r) + Y sin^2(2 theta)])) / 2.
    """
    p, q, r = params.p, params.q, params.r
    y = y_functional(params, state.phi)
    disc = 1.0 - 16.0 * (p * (q + r) + y * math.sin(2.0 * state.theta) ** 2)
    if disc < -DISCRIMINANT_CLAMP:
        raise InternalConsistencyError(
            f"negative eigenvalue discriminant {disc}; parameter validation bug"
        )
    root = math.sqrt(max(disc, 0.0))
    return np.array([0.5 * (1.0 + root), 0.5 * (1.0 - root), 0.0, 0.0])


def subclass_candidates(params: SubclassParams) -> list[tuple[PhaseLabel, InputState, float]]:
    """The three extremal-input candidates and their output entropies.

    Algebraic simplification of the eigenvalue formula at the extremal
    states gives spectra {1-2p, 2p}, {1-2r, 2r}, {1-2q, 2q} for the product
    state, the phi=0 Bell state, and the phi=pi/2 Bell state respectively.
    """
    return [
        (PhaseLabel.PRODUCT, InputState(0.0, 0.0), binary_entropy(2.0 * params.p)),
        (PhaseLabel.ENT_PHI0, InputState(math.pi / 4, 0.0), binary_entropy(2.0 * params.r)),
        (PhaseLabel.ENT_PHIHALF, InputState(math.pi / 4, math.pi / 2), binary_entropy(2.0 * params.q)),
    ]


def classify_subclass(
    params: SubclassParams, tie_tol: float = DEFAULT_TIE_TOL
) -> ClassificationResult:
    """Classify the optimal-input phase of a subclass channel.

    Picks the minimum of the three candidate entropies; when the two
    smallest agree within ``tie_tol`` the point lies on a phase boundary and
    is labelled TIE (the witness state is the first minimal candidate in the
    fixed order product, ent_phi0, ent_phihalf).
    """
    cands = subclass_candidates(params)
    ordered = sorted(cands, key=lambda c: c[2])
    best = min(cands, key=lambda c: c[2])  # stable: first minimum in fixed order
    if ordered[1][2] - ordered[0][2] <= tie_tol:
        return ClassificationResult(PhaseLabel.TIE, best[1], best[2])
    return ClassificationResult(best[0], best[1], best[2])


def holevo_covariant(optimal_entropy_bits: float) -> float:
    """Holevo quantity chi = 2 - S_min of the covariant ensemble."""
    if not -1e-12 <= optimal_entropy_bits <= 2.0 + 1e-12:
        raise ValidationError(
            f"optimal output entropy must be in [0, 2] bits, got {optimal_entropy_bits}"
        )
    return 2.0 - min(max(optimal_entropy_bits, 0.0), 2.0)


def ensemble_average_check(channel: Channel, state: InputState) -> float:
    """Residual ||avg - I/4||_F of the covariant-ensemble average output.

    The ensemble is the 16 Pauli-pair conjugates of |psi><psi| with uniform
    weights; by channel covariance and Schur averaging the mean output is
    the maximally mixed state.
    """
    from .channel import PAULI_PAIRS  # local import keeps module surface tidy

    psi = state_vector(state)
    rho = np.outer(psi, psi.conj())
    avg = np.zeros((4, 4), dtype=complex)
    for u in PAULI_PAIRS:
        avg += channel._apply_unchecked(u @ rho @ u.conj().T)
    avg /= 16.0
    return float(np.linalg.norm(avg - np.eye(4) / 4.0))


def _golden_section(f, a: float, b: float, iters: int = 60) -> tuple[float, float]:
    """Golden-section minimization of f on [a, b]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def optimize_symmetric(
    params: SymmetricChannelParams,
    grid_theta: int = 48,
    grid_phi: int = 48,
    refine_iters: int = 8,
) -> tuple[InputState, float]:
    """Minimize the closed-form output entropy over the invariant input family.

    Coarse (theta, phi) grid scan followed by alternating golden-section
    refinement on each coordinate.  The returned entropy is never above any
    grid sample.
    """
    if grid_theta < 16 or grid_phi < 16:
        raise ValidationError("grid sizes must be >= 16")
    if refine_iters < 0:
        raise ValidationError("refine_iters must be >= 0")

    thetas = np.linspace(0.0, math.pi / 2, grid_theta)
    phis = np.linspace(0.0, 2.0 * math.pi, grid_phi, endpoint=False)

    best_s = math.inf
    best_t = best_p = 0.0
    for t in thetas:
        for ph in phis:
            s = symmetric_entropy(params, InputState(t, ph))
            if s < best_s:
                best_s, best_t, best_p = s, t, ph

    dt = thetas[1] - thetas[0]
    dp = phis[1] - phis[0] if grid_phi > 1 else 2.0 * math.pi
    t, ph = best_t, best_p
    for _ in range(refine_iters):
        t, s_t = _golden_section(
            lambda x: symmetric_entropy(params, InputState(x, ph)),
            max(0.0, t - dt), min(math.pi / 2, t + dt),
        )
        ph, s_p = _golden_section(
            lambda x: symmetric_entropy(params, InputState(t, x)),
            ph - dp, ph + dp,
        )
        dt *= 0.5
        dp *= 0.5
    s_final = symmetric_entropy(params, InputState(t, ph))
    if s_final <= best_s:
        return InputState(t, ph % (2.0 * math.pi)), s_final
    return InputState(best_t, best_p), best_s
