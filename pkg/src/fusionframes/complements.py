"""New fusion frames from old: spatial and Naimark complements, Parseval dilation.

Spatial complement
    {(W_i^perp, v_i)}; its operator is (sum v_i^2) I - S, so it shares the
    eigenvectors of S and flips the spectrum about sum v_i^2.

Naimark complement
    For a Parseval fusion frame, the vectors v_i f_ij (f_ij an orthonormal
    basis of W_i) form a Parseval frame, i.e. the M x L synthesis matrix F
    has F F^T = I. Completing the orthonormal columns of F^T to an orthogonal
    L x L matrix [F^T G] gives the complementary Parseval frame: the rows of
    G. Grouped by subspace, rescaled by 1/sqrt(1 - v_i^2), they are
    orthonormal and span W_i' in R^(L-M).

    Since G G^T = I - F^T F, the cross-Gram blocks of the two frames differ
    only in sign, which gives
        (1 - v_i^2)(1 - v_j^2) tr[P_i' P_j'] = v_i^2 v_j^2 tr[P_i P_j].
    Traces (hence chordal distances) carry over unchanged only for pairs with
    v_i^2 + v_j^2 = 1; see :func:`naimark_trace_factor`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    FullSubspaceError,
    NontrivialIntersectionError,
    NotParsevalError,
    UnitWeightError,
)
from .model import FusionFrame, Subspace, fusion_frame_operator
from .numerics import ORTHO_TOL, SPECTRAL_TOL, orthonormal_completion, sym_eig


def parseval_residual(ff: FusionFrame) -> float:
    s = fusion_frame_operator(ff)
    return float(np.max(np.abs(s - np.eye(ff.ambient_dim))))


def require_parseval(ff: FusionFrame, tol: float = SPECTRAL_TOL) -> None:
    res = parseval_residual(ff)
    if res > tol:
        raise NotParsevalError(f"not a Parseval fusion frame: max|S - I| = {res:.3e} > {tol:.3e}")


def spatial_complement(ff: FusionFrame, tol: float = SPECTRAL_TOL) -> FusionFrame:
    """The family of orthogonal complements ``{(W_i^perp, v_i)}``.

    Requires the subspaces to intersect trivially, which is equivalent to
    the upper bound B of ``ff`` being strictly below ``sum v_i^2``.
    """
    M = ff.ambient_dim
    for k, s in enumerate(ff.subspaces):
        if s.dim >= M:
            raise FullSubspaceError(
                f"subspace {k + 1} is all of R^{M}; its orthogonal complement is empty")
    total = float(np.sum(ff.weights ** 2))
    lam = sym_eig(fusion_frame_operator(ff))[0]
    B = float(lam[0])
    if B >= total - tol * max(1.0, total):
        raise NontrivialIntersectionError(
            f"subspaces share a nonzero vector: upper bound B = {B:.12g} is not below "
            f"sum of squared weights {total:.12g}")
    return FusionFrame.from_bases(
        [orthonormal_completion(s.basis, ORTHO_TOL) for s in ff.subspaces],
        weights=ff.weights)


@dataclass(frozen=True, eq=False)
class LocalParsevalFrame:
    """Flat Parseval frame {v_i f_ij} with the partition into subspaces.

    ``vectors`` is M x L (columns are frame vectors); ``partition[i]`` lists
    the column indices belonging to subspace i.
    """

    vectors: np.ndarray
    partition: tuple[tuple[int, ...], ...]
    weights: np.ndarray

    @property
    def synthesis(self) -> np.ndarray:
        return self.vectors


def local_parseval_frame(pff: FusionFrame, tol: float = SPECTRAL_TOL) -> LocalParsevalFrame:
    require_parseval(pff, tol)
    cols = []
    partition = []
    start = 0
    for ws in pff.members:
        u = ws.subspace.basis
        cols.append(ws.weight * u)
        partition.append(tuple(range(start, start + u.shape[1])))
        start += u.shape[1]
    return LocalParsevalFrame(np.hstack(cols), tuple(partition), pff.weights)


@dataclass(frozen=True, eq=False)
class NaimarkDilation:
    """Orthogonal projection P of R^L onto an embedded copy of R^M.

    ``embedding`` is the L x M isometry F^T taking R^M into R^L. ``blocks[i]``
    is the L x m_i matrix of ``(1/v_i) P`` restricted to the coordinates in
    ``partition[i]``, an isometry onto the embedded W_i. ``residuals`` records
    how closely each identity holds.
    """

    P: np.ndarray
    embedding: np.ndarray
    partition: tuple[tuple[int, ...], ...]
    blocks: tuple[np.ndarray, ...]
    weights: np.ndarray
    residuals: dict

    @property
    def L(self) -> int:
        return self.P.shape[0]


def naimark_dilation(pff: FusionFrame, tol: float = SPECTRAL_TOL) -> NaimarkDilation:
    lpf = local_parseval_frame(pff, tol)
    F = lpf.vectors
    L = F.shape[1]
    E = F.T
    P = E @ E.T
    blocks = []
    reassembled = np.zeros((L, L))
    iso = 0.0
    onto = 0.0
    for idx, ws in zip(lpf.partition, pff.members):
        idx = list(idx)
        Li = P[:, idx] / ws.weight
        blocks.append(Li)
        iso = max(iso, float(np.max(np.abs(Li.T @ Li - np.eye(len(idx))))))
        # range of L_i must be the embedded W_i = E U_i
        Ui = E @ ws.subspace.basis
        onto = max(onto, float(np.max(np.abs(Li - Ui @ (Ui.T @ Li)))))
        reassembled[:, idx] += ws.weight * Li
    residuals = {
        "idempotence": float(np.max(np.abs(P @ P - P))),
        "symmetry": float(np.max(np.abs(P - P.T))),
        "trace_minus_M": float(abs(np.trace(P) - pff.ambient_dim)),
        "isometry": iso,
        "range": onto,
        "reassembly": float(np.max(np.abs(reassembled - P))),
    }
    return NaimarkDilation(P, E, lpf.partition, tuple(blocks), pff.weights, residuals)


def naimark_trace_factor(vi: float, vj: float) -> float:
    """Ratio tr[P_i' P_j'] / tr[P_i P_j] between a Naimark complement and its source."""
    return (vi * vi * vj * vj) / ((1.0 - vi * vi) * (1.0 - vj * vj))


def tight_to_parseval(ff: FusionFrame, tol: float = SPECTRAL_TOL) -> FusionFrame:
    """Rescale an A-tight fusion frame to a Parseval one (weights divided by sqrt(A))."""
    lam = sym_eig(fusion_frame_operator(ff))[0]
    lo, hi = float(lam[-1]), float(lam[0])
    if lo <= tol or hi - lo > tol * max(1.0, hi):
        raise NotParsevalError(f"not a tight fusion frame: spectrum spans [{lo:.12g}, {hi:.12g}]")
    return ff.with_weights(ff.weights / np.sqrt(0.5 * (lo + hi)))


@dataclass(frozen=True, eq=False)
class NaimarkComplement:
    """``frame`` lives in R^(L-M); ``source`` is the Parseval frame that was dilated."""

    L: int
    frame: FusionFrame
    complement_vectors: np.ndarray
    source: FusionFrame


def naimark_complement(pff: FusionFrame, tol: float = SPECTRAL_TOL,
                       rescale_tight: bool = True) -> NaimarkComplement:
    """Parseval fusion frame ``{(W_i', sqrt(1 - v_i^2))}`` in R^(L-M), L = sum dim W_i.

    With ``rescale_tight`` an A-tight input is first rescaled to Parseval
    (weights v_i / sqrt(A)); otherwise the input must already be Parseval.
    """
    if rescale_tight and parseval_residual(pff) > tol:
        pff = tight_to_parseval(pff, tol)
    require_parseval(pff, tol)
    for k, w in enumerate(pff.weights):
        if w >= 1.0 - tol:
            raise UnitWeightError(
                f"weight v_{k + 1} = {w:.12g} is not below 1; the complement vectors "
                "(I - P) e_ij vanish")
    lpf = local_parseval_frame(pff, tol)
    E = lpf.vectors.T
    L, M = E.shape
    # F F^T = I only to tol; re-orthonormalize so the completion is exact
    q, r = np.linalg.qr(E)
    q = q * np.sign(np.diag(r))
    G = orthonormal_completion(q, ORTHO_TOL)
    bases = []
    for idx, w in zip(lpf.partition, pff.weights):
        rows = G[list(idx), :]
        bases.append(rows.T / np.sqrt(1.0 - w * w))
    comp = FusionFrame.from_bases([Subspace(b, max(tol, 1e-8)) for b in bases],
                                  weights=np.sqrt(1.0 - pff.weights ** 2))
    return NaimarkComplement(L, comp, G, pff)
