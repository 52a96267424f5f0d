"""Dense real linear algebra used throughout the package.

The symmetric eigensolver is a cyclic Jacobi iteration; orthonormal
completion is a deterministic greedy sweep over standard basis vectors.
Both are written for matrices up to the low hundreds, where an O(n^3)
kernel per sweep is cheap.
"""
from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import (
    NoConvergenceError,
    NotOrthonormalError,
    NotSymmetricError,
    ShapeMismatchError,
    SingularOperatorError,
)

ORTHO_TOL = 1e-10
SPECTRAL_TOL = 1e-8


def as_matrix(a, name="matrix") -> np.ndarray:
    """Return ``a`` as a finite 2-D float array (a copy)."""
    m = np.array(a, dtype=float)
    if m.ndim != 2:
        raise ShapeMismatchError(f"{name} must be 2-D, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def _off_norm(a):
    return float(np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2)))


def sym_eig(a, tol: float = ORTHO_TOL, max_sweeps: int = 100):
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    a : array_like, shape (n, n)
        Symmetric matrix. Asymmetry above ``tol * max(1, max|a|)`` is rejected.
    tol : float
        Symmetry tolerance.
    max_sweeps : int
        Cap on full sweeps over the strict upper triangle.

    Returns
    -------
    eigenvalues : ndarray, shape (n,)
        Sorted descending. Ties keep the order in which the iteration left them.
    eigenvectors : ndarray, shape (n, n)
        Orthonormal columns; column ``j`` belongs to ``eigenvalues[j]``.
    """
    a = as_matrix(a)
    n, n2 = a.shape
    if n != n2:
        raise ShapeMismatchError(f"expected a square matrix, got {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    asym = float(np.max(np.abs(a - a.T))) if a.size else 0.0
    if asym > tol * scale:
        raise NotSymmetricError(f"symmetry residual {asym:.3e} exceeds {tol * scale:.3e}")

    a = 0.5 * (a + a.T)
    v = np.eye(n)
    fro = float(np.linalg.norm(a))
    # eigenvalue error is bounded by the off-diagonal norm
    stop = 1e-15 * fro

    for _ in range(max_sweeps):
        off = _off_norm(a)
        if off <= stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-18 * max(abs(a[p, p]), abs(a[q, q])):
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        off = _off_norm(a)
        if off > stop:
            raise NoConvergenceError(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps (off={off:.3e})"
            )

    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def sym_eigvals(a, tol: float = ORTHO_TOL) -> np.ndarray:
    return sym_eig(a, tol)[0]


def orthonormality_residual(q) -> float:
    """``max|Q^T Q - I|``; zero for a matrix with no columns."""
    q = np.asarray(q, dtype=float)
    if q.shape[1] == 0:
        return 0.0
    return float(np.max(np.abs(q.T @ q - np.eye(q.shape[1]))))


def _reorthogonalize(g, basis):
    if basis.shape[1]:
        for _ in range(2):
            g = g - basis @ (basis.T @ g)
    return g / np.linalg.norm(g)


def orthonormal_completion(q, tol: float = ORTHO_TOL) -> np.ndarray:
    """Extend orthonormal columns ``Q`` (L x M) by ``G`` (L x (L-M)) to an orthogonal matrix.

    Candidates are the standard basis vectors; at each step the one with the
    largest residual after projecting out the current basis is taken (lowest
    index on ties), so the output is reproducible.
    """
    q = as_matrix(q, "Q")
    n_rows, n_cols = q.shape
    if n_cols > n_rows:
        raise NotOrthonormalError(f"{n_cols} columns cannot be orthonormal in R^{n_rows}")
    res = orthonormality_residual(q)
    if res > tol:
        raise NotOrthonormalError(f"orthonormality residual {res:.3e} exceeds {tol:.3e}")

    basis = q
    # columns of `resid` are e_i minus their projection onto span(basis)
    resid = np.eye(n_rows) - q @ q.T
    added = []
    for _ in range(n_rows - n_cols):
        norms = np.linalg.norm(resid, axis=0)
        idx = int(np.argmax(norms))
        g = _reorthogonalize(resid[:, idx], basis)
        added.append(g)
        basis = np.column_stack([basis, g])
        resid = resid - np.outer(g, g @ resid)
    if not added:
        return np.zeros((n_rows, 0))
    return np.column_stack(added)


def gram_schmidt(vectors, tol: float = ORTHO_TOL) -> np.ndarray:
    """Orthonormalize a sequence of vectors (modified Gram-Schmidt, two passes).

    ``vectors`` is a sequence of length-M vectors (or a k x M array whose rows
    are the vectors). Vectors whose residual after projection is at most
    ``tol * max(1, |v|)`` are dropped. Returns an M x r matrix with orthonormal
    columns spanning the input.
    """
    rows = np.array(vectors, dtype=float)
    if rows.ndim == 1:
        rows = rows[None, :]
    if rows.ndim != 2:
        raise ShapeMismatchError("expected a sequence of vectors")
    dim = rows.shape[1]
    cols: list[np.ndarray] = []
    for v in rows:
        ref = max(1.0, float(np.linalg.norm(v)))
        w = v.copy()
        for _ in range(2):
            for c in cols:
                w -= (c @ w) * c
        nrm = float(np.linalg.norm(w))
        if nrm <= tol * ref:
            continue
        cols.append(w / nrm)
    if not cols:
        return np.zeros((dim, 0))
    return np.column_stack(cols)


class SPDFactor:
    """Cholesky factorization of a symmetric positive-definite matrix.

    Construction checks that the smallest eigenvalue exceeds ``tol``; a
    failure means the operator is singular to tolerance. The factor is
    immutable and can be reused for many right-hand sides.
    """

    def __init__(self, s, tol: float = ORTHO_TOL):
        s = as_matrix(s, "S")
        if s.shape[0] != s.shape[1]:
            raise ShapeMismatchError(f"expected a square matrix, got {s.shape}")
        lam = sym_eigvals(s, tol=max(tol, ORTHO_TOL))
        self.lambda_min = float(lam[-1]) if lam.size else 0.0
        if not lam.size or self.lambda_min <= tol:
            raise SingularOperatorError(
                f"smallest eigenvalue {self.lambda_min:.3e} is not above {tol:.3e}"
            )
        self.dim = s.shape[0]
        self._cho = scipy.linalg.cho_factor(0.5 * (s + s.T), lower=True)

    def solve(self, b) -> np.ndarray:
        b = np.asarray(b, dtype=float)
        if b.shape[0] != self.dim:
            raise ShapeMismatchError(f"right-hand side has length {b.shape[0]}, expected {self.dim}")
        return scipy.linalg.cho_solve(self._cho, b)


def solve_spd(s, b, tol: float = ORTHO_TOL) -> np.ndarray:
    """Solve ``S x = b`` for symmetric positive-definite ``S``."""
    return SPDFactor(s, tol).solve(b)


def trace_product(a, b) -> float:
    """``tr(A B)`` computed as ``sum A[i, j] * B[j, i]`` without forming ``A B``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or b.ndim != 2 or a.shape != b.shape[::-1]:
        raise ShapeMismatchError(f"cannot trace product of shapes {a.shape} and {b.shape}")
    return float(np.einsum("ij,ji->", a, b))
