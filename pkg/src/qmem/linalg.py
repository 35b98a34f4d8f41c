"""Complex linear algebra and entropy primitives for 2x2 and 4x4 matrices.

Everything here is channel-agnostic. Entropies are in bits (log base 2)
throughout the package; nats are never used.
"""

from __future__ import annotations

import numpy as np

from .errors import ContractViolationError, ValidationError

__all__ = [
    "pauli",
    "PAULI",
    "kron",
    "is_hermitian",
    "is_unit_trace",
    "is_psd",
    "is_density_matrix",
    "hermitian_eigenvalues",
    "von_neumann_entropy",
    "binary_entropy",
]

# Clamp tolerance for slightly negative eigenvalues of density matrices.
EIGENVALUE_CLAMP_TOL = 1e-12
# Tolerance on the trace (= eigenvalue sum) of a density matrix.
TRACE_TOL = 1e-9

_SIGMA_0 = np.eye(2, dtype=complex)
_SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
_SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

PAULI = (_SIGMA_0, _SIGMA_X, _SIGMA_Y, _SIGMA_Z)
for _m in PAULI:
    _m.setflags(write=False)


def pauli(index: int) -> np.ndarray:
    """Return the 2x2 Pauli matrix sigma_index, index in {0, 1, 2, 3}."""
    if index not in (0, 1, 2, 3):
        raise ValidationError(f"Pauli index must be 0..3, got {index!r}")
    return PAULI[index]


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two 2x2 matrices, giving a 4x4 matrix."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise ValidationError(
            f"kron expects two 2x2 matrices, got shapes {a.shape} and {b.shape}"
        )
    return np.kron(a, b)


def is_hermitian(m: np.ndarray, tol: float = 1e-10) -> bool:
    m = np.asarray(m)
    return bool(np.all(np.abs(m - m.conj().T) <= tol))


def is_unit_trace(m: np.ndarray, tol: float = 1e-10) -> bool:
    return bool(abs(np.trace(np.asarray(m)) - 1.0) <= tol)


def is_psd(m: np.ndarray, tol: float = 1e-10) -> bool:
    m = np.asarray(m)
    if not is_hermitian(m, tol):
        return False
    return bool(np.linalg.eigvalsh(m).min() >= -tol)


def is_density_matrix(m: np.ndarray, tol: float = 1e-10) -> bool:
    return is_hermitian(m, tol) and is_unit_trace(m, tol) and is_psd(m, tol)


def hermitian_eigenvalues(m: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted in descending order.

    This is the generic dense path (LAPACK via numpy); the analytic channel
    modules never call it, so it can serve as an independent numeric oracle
    for their closed forms.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    if not is_hermitian(m, tol):
        raise ContractViolationError("matrix is not Hermitian within tolerance")
    return np.linalg.eigvalsh(m)[::-1].copy()


def von_neumann_entropy(spectrum, trace_tol: float = TRACE_TOL) -> float:
    """Entropy -sum(l * log2 l) in bits of a density-matrix spectrum.

    Eigenvalues in [-EIGENVALUE_CLAMP_TOL, 0) are clamped to zero; more
    negative values, or a sum deviating from one by more than ``trace_tol``,
    raise :class:`ContractViolationError`.
    """
    lam = np.asarray(spectrum, dtype=float).ravel()
    if lam.size and lam.min() < -EIGENVALUE_CLAMP_TOL:
        raise ContractViolationError(
            f"eigenvalue {lam.min()} below -{EIGENVALUE_CLAMP_TOL}"
        )
    if abs(lam.sum() - 1.0) > trace_tol:
        raise ContractViolationError(f"spectrum sums to {lam.sum()}, expected 1")
    lam = np.clip(lam, 0.0, None)
    pos = lam[lam > 0.0]
    return float(-(pos * np.log2(pos)).sum())


def binary_entropy(x, tol: float = 1e-9):
    """Binary entropy H(x) = -x log2 x - (1-x) log2 (1-x), in bits.

    Accepts scalars or arrays; values within ``tol`` outside [0, 1] are
    clamped to the nearest endpoint, anything further out is rejected.
    """
    arr = np.asarray(x, dtype=float)
    if arr.size and (arr.min() < -tol or arr.max() > 1.0 + tol):
        raise ValidationError(f"binary_entropy argument outside [0,1]: {x!r}")
    arr = np.clip(arr, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -(arr * np.log2(arr)) - (1.0 - arr) * np.log2(1.0 - arr)
    h = np.where((arr == 0.0) | (arr == 1.0), 0.0, h)
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(h)
    return h
