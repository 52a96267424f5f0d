"""Turning subspace families into tight fusion frames."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InfeasibleError,
    InternalOverrunError,
    NoAdmissibleConstantError,
    OrthogonalityViolationError,
    PreconditionError,
)
from .model import FusionFrame, SpectrumSpec, Subspace, fusion_frame_operator
from .numerics import ORTHO_TOL, SPECTRAL_TOL, orthonormal_completion, sym_eig
from .tetris import (
    INT_TOL,
    Violation,
    _fill_rows,
    assign_subspaces,
    check_feasibility_real,
    ffcre,
)


def shift_completion(subspaces) -> FusionFrame:
    """All circular shifts of each subspace inside an adapted orthonormal basis.

    For each W_i, its basis is extended to an orthonormal basis e^i_1..e^i_M of
    R^M and the shifts span{e^i_(j+k mod M) : j < m} for k = 0..M-1 are
    emitted (k = 0 is W_i itself, basis unchanged). Each family of M shifts
    contributes m_i * I, so the result is (sum_i m_i)-tight with unit weights.
    """
    subs = [s if isinstance(s, Subspace) else Subspace(s) for s in subspaces]
    if not subs:
        raise ValueError("need at least one subspace")
    M = subs[0].ambient_dim
    out = []
    for s in subs:
        if s.ambient_dim != M:
            raise ValueError(f"subspaces live in different spaces: R^{s.ambient_dim} vs R^{M}")
        full = np.hstack([s.basis, orthonormal_completion(s.basis, ORTHO_TOL)])
        out.append(s)
        for k in range(1, M):
            cols = [(j + k) % M for j in range(s.dim)]
            out.append(Subspace(full[:, cols]))
    return FusionFrame.from_bases(out)


def _common_dim(ff: FusionFrame) -> int:
    dims = set(ff.dims)
    if len(dims) != 1:
        raise PreconditionError(f"subspaces must share one dimension, got {sorted(dims)}")
    return dims.pop()


def _require_unit_weights(ff: FusionFrame, tol: float) -> None:
    if np.any(np.abs(ff.weights - 1.0) > tol):
        raise PreconditionError("tight completion needs unit weights")


def tight_constant_conditions(A: int, lambda_max: float, M: int, N: int, m: int,
                              tol: float = INT_TOL):
    """Evaluate the three admissibility conditions for a candidate constant A.

    Returns ``(ok, N0)`` where N0 = A*M/m (None if not integral). The
    conditions: lambda_1 + 2 <= A; A*M = N0*m; A <= lambda_1 + N0 - (N + 3).
    """
    if (A * M) % m:
        return False, None
    N0 = A * M // m
    c1 = lambda_max + 2 <= A + tol
    c3 = A <= lambda_max + N0 - (N + 3) + tol
    return bool(c1 and c3), N0


def minimal_tight_constant(ff: FusionFrame, tol: float = SPECTRAL_TOL) -> tuple[int, int]:
    """Smallest positive integer A passing the three conditions, and N0 = A*M/m."""
    m = _common_dim(ff)
    _require_unit_weights(ff, tol)
    M, N = ff.ambient_dim, len(ff)
    if m >= M:
        raise NoAdmissibleConstantError(f"subspace dimension m = {m} must be below M = {M}")
    lam1 = float(sym_eig(fusion_frame_operator(ff))[0][0])
    # A = n*m satisfies all three conditions once n is large enough
    bound = m * (math.ceil((lam1 + 2) / m) + math.ceil((N + 3) / (M - m)) + 1)
    for A in range(1, bound + 1):
        ok, N0 = tight_constant_conditions(A, lam1, M, N, m)
        if ok:
            return A, N0
    raise NoAdmissibleConstantError(f"no admissible constant up to {bound}")


@dataclass(frozen=True, eq=False)
class TightCompletion:
    A: int
    N0: int
    added: FusionFrame
    combined: FusionFrame
    mu: tuple[float, ...]
    tightness_residual: float

    @property
    def num_added(self) -> int:
        return len(self.added)


MAX_ORDERINGS = 5040


def _orderings(M: int):
    """Column orders to try: descending, largest moved last, then the rest."""
    first = [tuple(range(M)), tuple(range(1, M)) + (0,)]
    yield from first
    for p in itertools.islice(itertools.permutations(range(M)), MAX_ORDERINGS):
        if p not in first:
            yield p


def _realize(mu: np.ndarray, N1: int, m: int) -> tuple[FusionFrame, np.ndarray]:
    """N1 subspaces of dimension m whose operator has eigenvalues ``mu`` (descending).

    Returns the frame in the coordinates of a column order ``order``; column
    k of the result carries ``mu[order[k]]``. The real feasibility conditions
    are sufficient, not necessary: when they fail, spectral tetris is run on
    other column orders and accepted when its rows can be dealt into
    orthonormal subspaces.
    """
    M = len(mu)
    if N1 < 1:
        raise InfeasibleError([Violation("subspace_count", f"N0 - N = {N1} subspaces to add")])
    if mu[0] > N1 + INT_TOL:
        # every projection is <= I, so N1 of them cannot exceed N1 anywhere
        raise InfeasibleError([Violation(
            "mu_above_count", f"largest target eigenvalue {mu[0]:.12g} exceeds the {N1} subspaces to add")])
    spec = SpectrumSpec(tuple(mu), N1, m)
    violations = check_feasibility_real(spec)
    if not violations:
        return ffcre(spec)[1], np.arange(M)
    last = None
    for order in _orderings(M):
        try:
            tm = _fill_rows([mu[k] for k in order])
            return assign_subspaces(tm, N1, m), np.array(order)
        except (InternalOverrunError, OrthogonalityViolationError) as exc:
            last = exc
    raise InfeasibleError(violations + [Violation("construction", f"no column order works; last: {last}")])


def _complete(ff: FusionFrame, lam: np.ndarray, Q: np.ndarray, A: int, N0: int, m: int):
    N1 = N0 - len(ff)
    mu = A - lam
    order = np.argsort(-mu, kind="stable")
    mu, Qs = mu[order], Q[:, order]
    local, cols = _realize(mu, N1, m)
    Qs = Qs[:, cols]
    added = FusionFrame.from_bases([Qs @ b for b in local.bases])
    combined = FusionFrame(ff.ambient_dim, ff.members + added.members)
    # any tight completion satisfies A*M = (N + N1)*m
    assert A * ff.ambient_dim == (len(ff) + len(added)) * m
    res = float(np.max(np.abs(fusion_frame_operator(combined) - A * np.eye(ff.ambient_dim))))
    return TightCompletion(A, N0, added, combined, tuple(float(x) for x in mu), res)


def tight_completion(ff: FusionFrame, A: int | None = None, search: bool = False,
                     tol: float = SPECTRAL_TOL) -> TightCompletion:
    """Add N0 - N subspaces of dimension m so the union is A-tight.

    With S = Q diag(lambda) Q^T, the added frame realizes mu_j = A - lambda_j
    in the same eigenbasis: spectral tetris runs on mu sorted descending
    (columns of Q permuted alongside) and every produced basis is rotated by
    the permuted Q.

    ``A=None`` uses :func:`minimal_tight_constant`. For spread-out spectra
    that constant can leave mu unrealizable: the largest entry A - lambda_M
    may exceed N0 - N, which no family of N0 - N projections can reach. Then
    :class:`InfeasibleError` is raised, unless
    ``search`` is set, in which case larger admissible constants are tried
    in order. An explicit ``A`` only has to make A*M divisible by m and
    exceed lambda_1; whether mu is realizable is decided by the construction.
    """
    m = _common_dim(ff)
    _require_unit_weights(ff, tol)
    M, N = ff.ambient_dim, len(ff)
    if m >= M:
        raise NoAdmissibleConstantError(f"subspace dimension m = {m} must be below M = {M}")
    lam, Q = sym_eig(fusion_frame_operator(ff))
    if A is not None:
        if int(A) != A or A * M % m or A <= lam[0] + tol:
            raise PreconditionError(
                f"A = {A} must be an integer above lambda_1 = {lam[0]:.12g} with A*M divisible by m = {m}")
        A = int(A)
        return _complete(ff, lam, Q, A, A * M // m, m)

    A, N0 = minimal_tight_constant(ff, tol)
    if not search:
        return _complete(ff, lam, Q, A, N0, m)
    # once A = n*m also satisfies A <= lambda_M + N0 - (N + 3), mu is feasible
    # outright, so the scan is bounded
    bound = m * (math.ceil((lam[0] + 2) / m) + math.ceil((N + 3) / (M - m)) + 1)
    for cand in range(A, bound + 1):
        ok, n0 = tight_constant_conditions(cand, float(lam[0]), M, N, m)
        if not ok:
            continue
        try:
            return _complete(ff, lam, Q, cand, n0, m)
        except InfeasibleError:
            continue
    raise NoAdmissibleConstantError("no admissible constant with a realizable complement found")
