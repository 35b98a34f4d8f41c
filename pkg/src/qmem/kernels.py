"""Brute-force evaluation kernels with backend selection.

The hot operation of the oracle module is: apply a Pauli channel to a batch
of pure states and return the output entropies.  Two interchangeable
backends exist:

* ``compiled`` -- the Cython extension ``qmem._fastcore`` (signed-permutation
  Kraus application + a self-contained complex Jacobi eigensolver);
* ``numpy``   -- blocked einsum Kraus application + LAPACK ``eigvalsh``.

The compiled backend is picked at import when available; set the environment
variable ``QMEM_PURE=1`` to force the pure-numpy fallback.  Both backends are
independent of the analytic closed-form paths and agree to ~1e-13, so either
one can serve as the numeric oracle.
"""

from __future__ import annotations

import os

import numpy as np

from .channel import PAULI_PAIRS

__all__ = ["bruteforce_entropies", "backend"]

try:
    from . import _fastcore
except ImportError:  # pragma: no cover - build-dependent
    _fastcore = None

_FORCE_PURE = os.environ.get("QMEM_PURE", "") not in ("", "0")

_PAIR_STACK = np.stack(PAULI_PAIRS)  # (16, 4, 4)


def backend() -> str:
    """Name of the active backend: 'compiled' or 'numpy'."""
    return "numpy" if (_fastcore is None or _FORCE_PURE) else "compiled"


def _entropies_numpy(probs: np.ndarray, amps: np.ndarray, block: int = 8192) -> np.ndarray:
    w = probs.ravel()
    out = np.empty(len(amps))
    for lo in range(0, len(amps), block):
        a = amps[lo : lo + block]
        rho = a[:, :, None] * a.conj()[:, None, :]
        phi = np.einsum("k,kab,nbc,kdc->nad", w, _PAIR_STACK, rho, _PAIR_STACK.conj(), optimize=True)
        lam = np.linalg.eigvalsh(phi)
        lam = np.clip(lam, 0.0, None)
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(lam > 1e-18, -lam * np.log2(np.where(lam > 0, lam, 1.0)), 0.0)
        out[lo : lo + block] = terms.sum(axis=1)
    return out


def bruteforce_entropies(probs: np.ndarray, amps: np.ndarray, force_pure: bool = False) -> np.ndarray:
    """Output entropies (bits) of ``Phi(|psi><psi|)`` for a batch of pure states.

    ``probs``: 4x4 error-probability matrix; ``amps``: (N, 4) complex
    amplitudes of normalized pure states.
    """
    probs = np.ascontiguousarray(probs, dtype=np.float64)
    amps = np.ascontiguousarray(np.atleast_2d(amps), dtype=np.complex128)
    if not probs.flags.writeable:
        probs = probs.copy()
    if not amps.flags.writeable:
        amps = amps.copy()
    if probs.shape != (4, 4) or amps.ndim != 2 or amps.shape[1] != 4:
        raise ValueError("expected a (4,4) probability matrix and (N,4) amplitudes")
    if force_pure or backend() == "numpy":
        return _entropies_numpy(probs, amps)
    return _fastcore.bruteforce_entropies(probs, amps)
