# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernel: batched channel application + eigendecomposition.

For each pure input state this applies the 16-term Pauli-pair Kraus sum
using the signed-permutation form of Pauli conjugation, diagonalizes the
4x4 Hermitian output with a cyclic Jacobi sweep (exact 2x2 rotations), and
returns the output entropy in bits.

The Jacobi eigensolver here is deliberately independent of both the
package's closed-form spectra and the LAPACK path used by the pure-Python
fallback.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, log2, sqrt

cnp.import_array()

# sigma_i |b> = PHASE1[i][b] |PERM1[i][b]>
cdef int PERM1[4][2]
cdef double complex PHASE1[4][2]

PERM1[0][0] = 0; PERM1[0][1] = 1
PERM1[1][0] = 1; PERM1[1][1] = 0
PERM1[2][0] = 1; PERM1[2][1] = 0
PERM1[3][0] = 0; PERM1[3][1] = 1
PHASE1[0][0] = 1;  PHASE1[0][1] = 1
PHASE1[1][0] = 1;  PHASE1[1][1] = 1
PHASE1[2][0] = 1j; PHASE1[2][1] = -1j
PHASE1[3][0] = 1;  PHASE1[3][1] = -1

# Pauli-pair tables: (sigma_i x sigma_j)|b1 b2> = PH[k][b] |PERM[k][b]>,
# k = 4*i + j, b = 2*b1 + b2.  All pair permutations are involutions.
cdef int PERM[16][4]
cdef double complex PH[16][4]

cdef int _i, _j, _b1, _b2
for _i in range(4):
    for _j in range(4):
        for _b1 in range(2):
            for _b2 in range(2):
                PERM[4 * _i + _j][2 * _b1 + _b2] = 2 * PERM1[_i][_b1] + PERM1[_j][_b2]
                PH[4 * _i + _j][2 * _b1 + _b2] = PHASE1[_i][_b1] * PHASE1[_j][_b2]


cdef void _jacobi4(double complex a[4][4], double ev[4]) noexcept nogil:
    """Eigenvalues of a 4x4 Hermitian matrix by cyclic Jacobi rotations.

    The rotation angle comes from the stable tangent formula
    t = sgn(tau) / (|tau| + sqrt(tau^2 + 1)), tau = (a_qq - a_pp) / 2|a_pq|,
    which annihilates a_pq without the cancellation the naive eigenvector
    construction suffers when |a_pq| is already small.
    """
    cdef int sweep, p, q, i
    cdef double off, app, aqq, tau, t, c, s, absb
    cdef double complex b, eiphi, v00, v10, v01, v11, tp, tq
    for sweep in range(30):
        off = 0.0
        for p in range(3):
            for q in range(p + 1, 4):
                off += a[p][q].real * a[p][q].real + a[p][q].imag * a[p][q].imag
        if off < 1e-28:
            break
        for p in range(3):
            for q in range(p + 1, 4):
                b = a[p][q]
                absb = sqrt(b.real * b.real + b.imag * b.imag)
                if absb < 1e-18:
                    continue
                app = a[p][p].real
                aqq = a[q][q].real
                tau = (aqq - app) / (2.0 * absb)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(tau * tau + 1.0))
                else:
                    t = -1.0 / (-tau + sqrt(tau * tau + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                eiphi = b / absb
                # columns of the 2x2 diagonalizing unitary
                v00 = c
                v10 = -s * eiphi.conjugate()
                v01 = s * eiphi
                v11 = c
                for i in range(4):
                    tp = a[i][p] * v00 + a[i][q] * v10
                    tq = a[i][p] * v01 + a[i][q] * v11
                    a[i][p] = tp
                    a[i][q] = tq
                for i in range(4):
                    tp = v00.conjugate() * a[p][i] + v10.conjugate() * a[q][i]
                    tq = v01.conjugate() * a[p][i] + v11.conjugate() * a[q][i]
                    a[p][i] = tp
                    a[q][i] = tq
    for i in range(4):
        ev[i] = a[i][i].real


def bruteforce_entropies(double[:, ::1] probs, double complex[:, ::1] amps):
    """Output entropies (bits) of Phi(|psi><psi|) for a batch of pure states.

    ``probs`` is the 4x4 error-probability matrix, ``amps`` an (N, 4) array
    of normalized state amplitudes.
    """
    cdef Py_ssize_t n = amps.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double w[16]
    cdef Py_ssize_t s
    cdef int k, x, y, px, py
    cdef double complex rho[4][4]
    cdef double complex phi[4][4]
    cdef double complex cx
    cdef double ev[4]
    cdef double ent, lam

    for k in range(16):
        w[k] = probs[k // 4, k % 4]

    with nogil:
        for s in range(n):
            for x in range(4):
                for y in range(4):
                    rho[x][y] = amps[s, x] * amps[s, y].conjugate()
                    phi[x][y] = 0.0
            # upper triangle only; the output is Hermitian
            for k in range(16):
                if w[k] != 0.0:
                    for x in range(4):
                        px = PERM[k][x]
                        cx = w[k] * PH[k][px]
                        for y in range(x, 4):
                            py = PERM[k][y]
                            phi[x][y] = phi[x][y] + cx * PH[k][py].conjugate() * rho[px][py]
            for x in range(4):
                for y in range(x + 1, 4):
                    phi[y][x] = phi[x][y].conjugate()
            _jacobi4(phi, ev)
            ent = 0.0
            for x in range(4):
                lam = ev[x]
                if lam > 1e-18:
                    ent -= lam * log2(lam)
            out[s] = ent
    return out_arr
