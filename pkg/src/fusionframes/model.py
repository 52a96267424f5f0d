"""Fusion frame data model: subspaces, weights, operator, bounds, distances.

Subspaces are stored by an orthonormal basis (columns of an M x m array);
projections are derived on demand. All values are immutable after
construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import AmbientMismatchError, NotOrthonormalError
from .numerics import (
    ORTHO_TOL,
    SPECTRAL_TOL,
    as_matrix,
    gram_schmidt,
    orthonormality_residual,
    sym_eig,
    trace_product,
)

BASIS_TOL = 1e-8

CHORDAL_CONVENTION = "d_c^2(W_i, W_j) = dim H - tr[P_i P_j]"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of R^M given by an M x m matrix with orthonormal columns."""

    basis: np.ndarray
    tol: float = field(default=BASIS_TOL, repr=False)

    def __post_init__(self):
        b = as_matrix(self.basis, "basis")
        M, m = b.shape
        if not 1 <= m <= M:
            raise ValueError(f"subspace dimension {m} must lie in [1, {M}]")
        res = orthonormality_residual(b)
        if res > self.tol:
            raise NotOrthonormalError(f"basis orthonormality residual {res:.3e} exceeds {self.tol:.3e}")
        object.__setattr__(self, "basis", _frozen(b))

    @classmethod
    def span(cls, vectors, tol: float = ORTHO_TOL) -> "Subspace":
        """Subspace spanned by ``vectors`` (dependent vectors are dropped)."""
        return cls(gram_schmidt(vectors, tol))

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projection(self) -> np.ndarray:
        return projection(self)


@dataclass(frozen=True, eq=False)
class WeightedSubspace:
    subspace: Subspace
    weight: float = 1.0

    def __post_init__(self):
        w = float(self.weight)
        if not (np.isfinite(w) and w > 0):
            raise ValueError(f"weight must be positive and finite, got {self.weight!r}")
        object.__setattr__(self, "weight", w)


@dataclass(frozen=True, eq=False)
class FusionFrame:
    """Ordered family of weighted subspaces of R^M.

    Spanning is not required here; use :func:`validate` to find out whether
    the family actually is a fusion frame.
    """

    ambient_dim: int
    members: tuple[WeightedSubspace, ...]

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise ValueError("a fusion frame needs at least one subspace")
        for k, ws in enumerate(members):
            if ws.subspace.ambient_dim != self.ambient_dim:
                raise AmbientMismatchError(
                    f"member {k} lives in R^{ws.subspace.ambient_dim}, expected R^{self.ambient_dim}"
                )
        object.__setattr__(self, "members", members)

    @classmethod
    def from_bases(cls, bases: Iterable, weights: Sequence[float] | None = None,
                   tol: float = BASIS_TOL) -> "FusionFrame":
        subs = [b if isinstance(b, Subspace) else Subspace(b, tol) for b in bases]
        if not subs:
            raise ValueError("a fusion frame needs at least one subspace")
        if weights is None:
            weights = [1.0] * len(subs)
        if len(weights) != len(subs):
            raise ValueError(f"{len(weights)} weights for {len(subs)} subspaces")
        return cls(subs[0].ambient_dim,
                   tuple(WeightedSubspace(s, w) for s, w in zip(subs, weights)))

    def __len__(self) -> int:
        return len(self.members)

    @property
    def subspaces(self) -> list[Subspace]:
        return [ws.subspace for ws in self.members]

    @property
    def bases(self) -> list[np.ndarray]:
        return [ws.subspace.basis for ws in self.members]

    @property
    def weights(self) -> np.ndarray:
        return np.array([ws.weight for ws in self.members])

    @property
    def dims(self) -> list[int]:
        return [ws.subspace.dim for ws in self.members]

    def with_weights(self, weights) -> "FusionFrame":
        return FusionFrame(self.ambient_dim, tuple(
            WeightedSubspace(ws.subspace, w) for ws, w in zip(self.members, weights)))


def projection(s: Subspace) -> np.ndarray:
    """Orthogonal projection ``U U^T`` onto ``s``."""
    u = s.basis
    p = u @ u.T
    return 0.5 * (p + p.T)


def fusion_frame_operator(ff: FusionFrame) -> np.ndarray:
    """``S = sum_i v_i^2 P_i`` (weights enter squared)."""
    M = ff.ambient_dim
    s = np.zeros((M, M))
    for ws in ff.members:
        u = ws.subspace.basis
        s += ws.weight ** 2 * (u @ u.T)
    return 0.5 * (s + s.T)


def operator_spectrum(ff: FusionFrame):
    """Eigenvalues (descending) and eigenvectors of the fusion frame operator."""
    return sym_eig(fusion_frame_operator(ff))


def frame_bounds(ff: FusionFrame) -> tuple[float, float]:
    """Optimal bounds (A, B): extreme eigenvalues of the operator. A may be ~0."""
    lam = operator_spectrum(ff)[0]
    return float(lam[-1]), float(lam[0])


def chordal_distance_sq(a: Subspace, b: Subspace) -> float:
    """Squared chordal distance ``M - tr[P_a P_b]``.

    This is the convention used for the complement theorems: identical
    subspaces of dimension m are at distance M - m, not 0. Differences of
    distances agree with the common ``m - tr`` convention.
    """
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatchError(f"R^{a.ambient_dim} vs R^{b.ambient_dim}")
    return a.ambient_dim - trace_product(projection(a), projection(b))


def trace_table(ff: FusionFrame) -> np.ndarray:
    """Symmetric table of ``tr[P_i P_j]``."""
    n = len(ff)
    projs = [projection(s) for s in ff.subspaces]
    t = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            t[i, j] = t[j, i] = trace_product(projs[i], projs[j])
    return t


def chordal_table(ff: FusionFrame) -> np.ndarray:
    return ff.ambient_dim - trace_table(ff)


@dataclass(frozen=True, eq=False)
class VerificationReport:
    spectrum: np.ndarray
    optimal_bounds: tuple[float, float]
    is_fusion_frame: bool
    is_tight: bool
    is_parseval: bool
    tol: float
    dims: list[int]
    weights: np.ndarray
    chordal_sq: np.ndarray
    residuals: dict[str, float]
    chordal_convention: str = CHORDAL_CONVENTION

    def to_dict(self) -> dict:
        return {
            "spectrum": [float(x) for x in self.spectrum],
            "optimal_bounds": [float(x) for x in self.optimal_bounds],
            "is_fusion_frame": self.is_fusion_frame,
            "is_tight": self.is_tight,
            "is_parseval": self.is_parseval,
            "tol": self.tol,
            "dims": list(self.dims),
            "weights": [float(w) for w in self.weights],
            "chordal_sq": self.chordal_sq.tolist(),
            "chordal_convention": self.chordal_convention,
            "residuals": dict(self.residuals),
        }


def validate(ff: FusionFrame, tol: float = SPECTRAL_TOL) -> VerificationReport:
    """Compute every checkable property of ``ff``; problems are reported, not raised."""
    s = fusion_frame_operator(ff)
    lam, _ = sym_eig(s)
    a, b = float(lam[-1]), float(lam[0])
    tight = (b - a) <= tol * max(1.0, b)
    parseval = tight and abs(a - 1.0) <= tol and abs(b - 1.0) <= tol
    weights = ff.weights
    dims = ff.dims
    expected_trace = float(np.sum(weights ** 2 * np.array(dims)))
    residuals = {
        "trace_identity": abs(float(np.sum(lam)) - expected_trace) / max(1.0, expected_trace),
        "basis_orthonormality": max(orthonormality_residual(u) for u in ff.bases),
        "operator_symmetry": float(np.max(np.abs(s - s.T))),
    }
    return VerificationReport(
        spectrum=lam,
        optimal_bounds=(a, b),
        is_fusion_frame=a > tol,
        is_tight=bool(tight),
        is_parseval=bool(parseval),
        tol=tol,
        dims=dims,
        weights=weights,
        chordal_sq=chordal_table(ff),
        residuals=residuals,
    )


FAC_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SpectrumSpec:
    """Target operator spectrum for ``N`` subspaces of dimension ``m``.

    ``lambdas`` must be positive and non-increasing. When the sum is within
    ``FAC_TOL`` of ``N*m`` the smallest value absorbs the rounding gap so the
    sum is exactly the integer. A larger gap is kept as is; the feasibility
    checks report it.
    """

    lambdas: tuple[float, ...]
    num_subspaces: int
    subspace_dim: int

    def __post_init__(self):
        lam = [float(x) for x in self.lambdas]
        if not lam:
            raise ValueError("empty spectrum")
        if not all(np.isfinite(x) and x > 0 for x in lam):
            raise ValueError("eigenvalues must be positive and finite")
        if any(lam[j + 1] > lam[j] for j in range(len(lam) - 1)):
            raise ValueError("eigenvalues must be sorted in non-increasing order")
        N, m = int(self.num_subspaces), int(self.subspace_dim)
        if N != self.num_subspaces or m != self.subspace_dim or N < 1 or m < 1:
            raise ValueError("num_subspaces and subspace_dim must be positive integers")
        gap = N * m - sum(lam)
        if 0 < abs(gap) <= FAC_TOL and lam[-1] + gap > 0:
            lam[-1] += gap
        object.__setattr__(self, "lambdas", tuple(lam))
        object.__setattr__(self, "num_subspaces", N)
        object.__setattr__(self, "subspace_dim", m)

    @property
    def M(self) -> int:
        return len(self.lambdas)

    @property
    def fac_holds(self) -> bool:
        return abs(sum(self.lambdas) - self.num_subspaces * self.subspace_dim) <= FAC_TOL
