"""Cyclic Jacobi eigensolver for complex Hermitian matrices, and helpers.

``jacobi_eigh`` is the reference solver used for spectral decompositions
of small Hermitian tensors.  Above ``JACOBI_MAX_N`` the Python loop cost
becomes prohibitive and LAPACK (``numpy.linalg.eigh``) is used instead;
tests cross-check both.
"""

import numpy as np

from .errors import DimensionError, ValidationError

JACOBI_MAX_N = 96


def jacobi_eigh(A, tol=1e-13, max_sweeps=60):
    """Eigenvalues (descending) and unitary eigenvector matrix of Hermitian A.

    Rotations are applied cyclically until the off-diagonal Frobenius mass
    is below ``tol * ||A||_F``.
    """
    A = np.array(A, dtype=np.complex128, copy=True)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"square matrix expected, got shape {A.shape}")
    n = A.shape[0]
    scale = np.linalg.norm(A)
    if not np.allclose(A, A.conj().T, rtol=0, atol=1e-12 * max(scale, 1e-300)):
        raise ValidationError("matrix is not Hermitian")
    A = 0.5 * (A + A.conj().T)
    V = np.eye(n, dtype=np.complex128)
    if n == 1 or scale == 0:
        return _sorted(np.real(np.diag(A)).copy(), V)
    target = tol * scale
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = A[p, q]
                ab = abs(b)
                if ab <= 1e-300 or ab < 1e-18 * target:
                    continue
                phase = b / ab
                tau = (A[q, q].real - A[p, p].real) / (2.0 * ab)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # U = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                u00, u01 = c, s
                u10, u11 = -s * np.conj(phase), c * np.conj(phase)
                cp, cq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = cp * u00 + cq * u10
                A[:, q] = cp * u01 + cq * u11
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = np.conj(u00) * rp + np.conj(u10) * rq
                A[q, :] = np.conj(u01) * rp + np.conj(u11) * rq
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = vp * u00 + vq * u10
                V[:, q] = vp * u01 + vq * u11
    return _sorted(np.real(np.diag(A)).copy(), V)


def _sorted(w, V):
    order = np.argsort(-w, kind="stable")
    return w[order], V[:, order]


def eigh_desc(A, method="auto"):
    """Descending eigen-decomposition of a Hermitian matrix."""
    A = np.asarray(A, dtype=np.complex128)
    if method == "jacobi" or (method == "auto" and A.shape[0] <= JACOBI_MAX_N):
        return jacobi_eigh(A)
    w, V = np.linalg.eigh(0.5 * (A + A.conj().T))
    return w[::-1].copy(), V[:, ::-1].copy()


def eig2_batch(a, b, d):
    """Eigenvalues (min, max) of batched 2x2 Hermitian [[a, b], [conj b, d]]."""
    mean = 0.5 * (a + d)
    rad = np.sqrt(0.25 * (a - d) ** 2 + np.abs(b) ** 2)
    return mean - rad, mean + rad


def sigma1_2x2_batch(m00, m01, m10, m11):
    """Largest singular value of batched 2x2 complex matrices."""
    fro2 = np.abs(m00) ** 2 + np.abs(m01) ** 2 + np.abs(m10) ** 2 + np.abs(m11) ** 2
    det = np.abs(m00 * m11 - m01 * m10)
    disc = np.sqrt(np.maximum(fro2 * fro2 - 4.0 * det * det, 0.0))
    return np.sqrt(0.5 * (fro2 + disc))


def weyl_slack(A, w, V):
    """Backward-error radius: every eigenvalue of A lies within this of some w_k."""
    R = A @ V - V * w[None, :]
    return float(np.linalg.norm(R, 2) + np.linalg.norm(V.conj().T @ V - np.eye(V.shape[1]), 2) * np.max(np.abs(w), initial=0.0))
