"""Correlated two-qubit Pauli channels.

A channel is defined by a 4x4 matrix of error probabilities P, acting as

    Phi(rho) = sum_ij P[i, j] (sigma_i (x) sigma_j) rho (sigma_i (x) sigma_j)

Index convention: P[i, j] is the probability of error sigma_i on the SECOND
qubit and sigma_j on the FIRST qubit through the channel; operationally the
first Kronecker factor of sigma_i (x) sigma_j acts on the first slot of the
computational basis |ab>.  The in-scope symmetric families have symmetric P,
so the convention only matters for the general constructor, where it is fixed
as above.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolationError, ValidationError
from .linalg import PAULI, is_density_matrix, kron

__all__ = [
    "Channel",
    "SymmetricChannelParams",
    "SubclassParams",
    "PAULI_PAIRS",
    "symmetric_params_from_matrix",
    "subclass_params_from_matrix",
]

NORMALIZATION_TOL = 1e-12

#: The 16 Pauli-pair unitaries sigma_i (x) sigma_j, indexed [4*i + j].
PAULI_PAIRS = tuple(kron(PAULI[i], PAULI[j]) for i in range(4) for j in range(4))
for _u in PAULI_PAIRS:
    _u.setflags(write=False)


def _validate_prob_matrix(p: np.ndarray) -> np.ndarray:
    p = np.array(p, dtype=float)
    if p.shape != (4, 4):
        raise ValidationError(f"error-probability matrix must be 4x4, got {p.shape}")
    for i in range(4):
        for j in range(4):
            if p[i, j] < -NORMALIZATION_TOL:
                raise ValidationError(f"negative error probability P[{i},{j}] = {p[i, j]}")
    p = np.clip(p, 0.0, None)
    total = p.sum()
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise ValidationError(f"error probabilities sum to {total}, expected 1")
    p.setflags(write=False)
    return p


@dataclass(frozen=True)
class SymmetricChannelParams:
    """The 6-parameter Z(x)Z-symmetric, equal-marginal family.

    Expands into the 16-entry matrix

        ( p          (eta+xi)/4  (eta-xi)/4   s          )
        ( (eta+gam)/4  q           r          (eta-gam)/4 )
        ( (eta-gam)/4  r           q          (eta+gam)/4 )
        ( s          (eta-xi)/4  (eta+xi)/4   p          )

    with p + q + r + eta + s = 1/2.  Entrywise positivity implies
    eta >= |xi| and eta >= |gamma|; no further constraint on xi, gamma is
    imposed.
    """

    p: float
    s: float
    q: float
    r: float
    eta: float
    xi: float
    gamma: float

    def __post_init__(self):
        total = self.p + self.q + self.r + self.eta + self.s
        if abs(total - 0.5) > NORMALIZATION_TOL:
            raise ValidationError(
                f"p+q+r+eta+s = {total}, expected 1/2"
            )
        for name, val in (("p", self.p), ("s", self.s), ("q", self.q), ("r", self.r)):
            if val < -NORMALIZATION_TOL:
                raise ValidationError(f"induced entry {name} = {val} is negative")
        for name, val in (
            ("(eta+xi)/4", (self.eta + self.xi) / 4),
            ("(eta-xi)/4", (self.eta - self.xi) / 4),
            ("(eta+gamma)/4", (self.eta + self.gamma) / 4),
            ("(eta-gamma)/4", (self.eta - self.gamma) / 4),
        ):
            if val < -NORMALIZATION_TOL:
                raise ValidationError(f"induced entry {name} = {val} is negative")

    def matrix(self) -> np.ndarray:
        p, s, q, r, eta, xi, gam = (
            self.p, self.s, self.q, self.r, self.eta, self.xi, self.gamma,
        )
        return np.array(
            [
                [p, (eta + xi) / 4, (eta - xi) / 4, s],
                [(eta + gam) / 4, q, r, (eta - gam) / 4],
                [(eta - gam) / 4, r, q, (eta + gam) / 4],
                [s, (eta - xi) / 4, (eta + xi) / 4, p],
            ]
        )


@dataclass(frozen=True)
class SubclassParams:
    """Subclass with only p, q, r non-vanishing; p + q + r = 1/2."""

    p: float
    q: float
    r: float

    def __post_init__(self):
        for name, val in (("p", self.p), ("q", self.q), ("r", self.r)):
            if val < -NORMALIZATION_TOL:
                raise ValidationError(f"{name} = {val} is negative")
        total = self.p + self.q + self.r
        if abs(total - 0.5) > NORMALIZATION_TOL:
            raise ValidationError(f"p+q+r = {total}, expected 1/2")

    def as_symmetric(self) -> SymmetricChannelParams:
        return SymmetricChannelParams(
            p=self.p, s=0.0, q=self.q, r=self.r, eta=0.0, xi=0.0, gamma=0.0
        )

    def matrix(self) -> np.ndarray:
        m = np.zeros((4, 4))
        m[0, 0] = m[3, 3] = self.p
        m[1, 1] = m[2, 2] = self.q
        m[1, 2] = m[2, 1] = self.r
        return m


@dataclass(frozen=True)
class Channel:
    """Immutable two-qubit Pauli channel with error-probability matrix ``probs``."""

    probs: np.ndarray
    family: str = "general"
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "probs", _validate_prob_matrix(self.probs))

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_general(cls, p) -> "Channel":
        return cls(probs=np.asarray(p, dtype=float), family="general")

    @classmethod
    def from_mp_correlated(cls, single_probs, mu: float) -> "Channel":
        """Macchiavello-Palma correlation P_ij = (1-mu) p_i p_j + mu delta_ij p_j."""
        pv = np.array(single_probs, dtype=float)
        if pv.shape != (4,):
            raise ValidationError(f"expected 4 single-use probabilities, got shape {pv.shape}")
        if pv.min() < -NORMALIZATION_TOL or abs(pv.sum() - 1.0) > NORMALIZATION_TOL:
            raise ValidationError(f"invalid probability vector {pv.tolist()}")
        if not 0.0 <= mu <= 1.0:
            raise ValidationError(f"memory factor mu must be in [0,1], got {mu}")
        pv = np.clip(pv, 0.0, None)
        probs = (1.0 - mu) * np.outer(pv, pv) + mu * np.diag(pv)
        return cls(
            probs=probs,
            family="mp",
            params={"probs": pv.tolist(), "mu": float(mu)},
        )

    @classmethod
    def from_symmetric(cls, params: SymmetricChannelParams) -> "Channel":
        return cls(
            probs=params.matrix(),
            family="symmetric",
            params={
                "p": params.p, "s": params.s, "q": params.q, "r": params.r,
                "eta": params.eta, "xi": params.xi, "gamma": params.gamma,
            },
        )

    @classmethod
    def from_subclass(cls, params: SubclassParams) -> "Channel":
        return cls(
            probs=params.matrix(),
            family="subclass",
            params={"p": params.p, "q": params.q, "r": params.r},
        )

    # -- operations --------------------------------------------------------

    def apply(self, rho: np.ndarray, tol: float = 1e-8) -> np.ndarray:
        """Apply the 16-term Kraus sum to a density matrix."""
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (4, 4):
            raise ContractViolationError(f"density matrix must be 4x4, got {rho.shape}")
        if not is_density_matrix(rho, tol):
            raise ContractViolationError("input is not a valid density matrix")
        return self._apply_unchecked(rho)

    def _apply_unchecked(self, rho: np.ndarray) -> np.ndarray:
        out = np.zeros((4, 4), dtype=complex)
        flat = self.probs.ravel()
        for k, u in enumerate(PAULI_PAIRS):
            w = flat[k]
            if w != 0.0:
                out += w * (u @ rho @ u.conj().T)
        return out

    def marginals(self) -> tuple[np.ndarray, np.ndarray]:
        """Marginal error distributions (p1_i = sum_j P_ij, p2_i = sum_j P_ji)."""
        return self.probs.sum(axis=1), self.probs.sum(axis=0)

    def correlation_measure(self) -> float:
        """Total-variation distance between P and the product of its marginals."""
        p1, p2 = self.marginals()
        return float(0.5 * np.abs(self.probs - np.outer(p1, p2)).sum())

    def has_zz_symmetry(self, tol: float = 1e-10) -> bool:
        """Whether Phi(ZZ rho ZZ) = Phi(rho) on a spanning set of matrix units."""
        zz = PAULI_PAIRS[15]
        for a in range(4):
            for b in range(4):
                unit = np.zeros((4, 4), dtype=complex)
                unit[a, b] = 1.0
                lhs = self._apply_unchecked(zz @ unit @ zz)
                rhs = self._apply_unchecked(unit)
                if np.abs(lhs - rhs).max() > tol:
                    return False
        return True

    def has_equal_marginals(self, tol: float = 1e-12) -> bool:
        p1, p2 = self.marginals()
        return bool(np.abs(p1 - p2).max() <= tol)

    def check_covariance(self, i: int, j: int, rho: np.ndarray) -> float:
        """Frobenius residual of Phi(U rho U) - U Phi(rho) U for U = sigma_i(x)sigma_j."""
        if i not in (0, 1, 2, 3) or j not in (0, 1, 2, 3):
            raise ValidationError(f"Pauli indices must be 0..3, got ({i}, {j})")
        rho = np.asarray(rho, dtype=complex)
        u = PAULI_PAIRS[4 * i + j]
        lhs = self._apply_unchecked(u @ rho @ u.conj().T)
        rhs = u @ self._apply_unchecked(rho) @ u.conj().T
        return float(np.linalg.norm(lhs - rhs))


def symmetric_params_from_matrix(p, tol: float = 1e-10) -> SymmetricChannelParams:
    """Recover 6-parameter symmetric-family parameters from a probability
    matrix, or raise :class:`ValidationError` if it is not of that form."""
    p = np.asarray(p, dtype=float)
    if p.shape != (4, 4):
        raise ValidationError(f"expected a 4x4 matrix, got {p.shape}")
    params = SymmetricChannelParams(
        p=p[0, 0],
        s=p[0, 3],
        q=p[1, 1],
        r=p[1, 2],
        eta=2.0 * (p[0, 1] + p[0, 2]),
        xi=2.0 * (p[0, 1] - p[0, 2]),
        gamma=2.0 * (p[1, 0] - p[2, 0]),
    )
    if np.abs(params.matrix() - p).max() > tol:
        raise ValidationError("probability matrix is not in the symmetric family")
    return params


def subclass_params_from_matrix(p, tol: float = 1e-10) -> SubclassParams | None:
    """SubclassParams when the matrix is of the p/q/r form, else None."""
    try:
        sym = symmetric_params_from_matrix(p, tol)
    except ValidationError:
        return None
    if max(abs(sym.s), abs(sym.eta), abs(sym.xi), abs(sym.gamma)) > tol:
        return None
    return SubclassParams(p=sym.p + sym.s, q=sym.q, r=sym.r)
