"""Spectral tetris: fusion frames with a prescribed operator spectrum.

The construction fills a sparse (N*m) x M matrix ``W`` row by row. Each row
is either a standard basis vector or one half of a 2 x 2 block

    [ sqrt(r/2)   sqrt(1 - r/2) ]
    [ sqrt(r/2)  -sqrt(1 - r/2) ]

placed on columns (j, j+1) when column j has a fractional residual r in
(0, 1). Rows have unit norm, columns are orthogonal and column j has squared
norm lambda_j. Rows are then dealt round-robin into N subspaces, so row k
lands in subspace k mod N. Since the nonzeros of any column are consecutive
rows, two rows of the same subspace are disjointly supported as long as no
column has more than N nonzeros.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleError, InternalOverrunError, OrthogonalityViolationError
from .model import FAC_TOL, FusionFrame, SpectrumSpec, Subspace

INT_TOL = 1e-9

SINGLETON = "singleton"
BLOCK_UPPER = "block_upper"
BLOCK_LOWER = "block_lower"


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class ColumnProfile:
    count: int
    has_initial: bool
    has_terminal: bool


@dataclass(frozen=True, eq=False)
class TetrisMatrix:
    """Output of the row-filling stage.

    ``block_residuals[j]`` is the fractional residual r of column j at the
    moment its 2 x 2 block was emitted, or None when column j closed on an
    integer.
    """

    W: np.ndarray
    row_kinds: tuple[str, ...]
    block_residuals: tuple[float | None, ...]
    lambdas: tuple[float, ...]

    @property
    def column_profile(self) -> list[ColumnProfile]:
        return column_profile(self)


def _near_int(x: float, tol: float = INT_TOL) -> bool:
    return abs(x - round(x)) <= tol


def _snap(x: float, tol: float = INT_TOL) -> float:
    r = round(x)
    return float(r) if abs(x - r) <= tol else x


def _floor(x: float) -> int:
    return math.floor(_snap(x))


def _fac_violation(spec: SpectrumSpec) -> list[Violation]:
    total = sum(spec.lambdas)
    target = spec.num_subspaces * spec.subspace_dim
    if abs(total - target) > FAC_TOL:
        return [Violation("fac", f"sum of eigenvalues {total:.12g} != N*m = {target}")]
    return []


def check_feasibility_integer(spec: SpectrumSpec) -> list[Violation]:
    """Conditions for the integer construction; an empty list means feasible."""
    out = []
    bad = [j + 1 for j, x in enumerate(spec.lambdas) if not _near_int(x)]
    if bad:
        out.append(Violation("integer", f"eigenvalues at positions {bad} are not integers"))
    if _snap(spec.lambdas[0]) > spec.num_subspaces:
        out.append(Violation(
            "n_ge_lambda1",
            f"N >= lambda_1 fails: N = {spec.num_subspaces}, lambda_1 = {spec.lambdas[0]:.12g}"))
    out.extend(_fac_violation(spec))
    return out


def first_fractional_index(lambdas) -> int | None:
    for j, x in enumerate(lambdas):
        if not _near_int(x):
            return j
    return None


def check_feasibility_real(spec: SpectrumSpec) -> list[Violation]:
    """Sufficient conditions for the real-valued construction.

    sum equal to N*m, smallest eigenvalue >= 2, floor of the first fractional eigenvalue
    <= N - 3, and lambda_1 <= N (every all-integer column has lambda_j
    nonzeros, so this bound is needed as well).
    """
    N = spec.num_subspaces
    lam = spec.lambdas
    out = _fac_violation(spec)
    if _snap(lam[-1]) < 2:
        out.append(Violation("lambda_min_ge_2", f"lambda_M >= 2 fails: lambda_M = {lam[-1]:.12g}"))
    j0 = first_fractional_index(lam)
    if j0 is not None and _floor(lam[j0]) > N - 3:
        out.append(Violation(
            "first_fraction_floor",
            f"floor(lambda_{j0 + 1}) <= N - 3 fails: floor({lam[j0]:.12g}) = {_floor(lam[j0])}, N - 3 = {N - 3}"))
    if _snap(lam[0]) > N:
        out.append(Violation("n_ge_lambda1", f"lambda_1 <= N fails: lambda_1 = {lam[0]:.12g}, N = {N}"))
    return out


def _is_integer_feasible(spec: SpectrumSpec) -> bool:
    return not check_feasibility_integer(spec)


def _fill_rows(lambdas, tol: float = INT_TOL) -> TetrisMatrix:
    M = len(lambdas)
    residual = [float(x) for x in lambdas]
    rows: list[np.ndarray] = []
    kinds: list[str] = []
    block_res: list[float | None] = [None] * M

    for j in range(M):
        r = residual[j]
        while True:
            r = _snap(r, tol)
            if r < 0:
                raise InternalOverrunError(f"column {j + 1} overdrawn (residual {r:.3e})")
            if r == 0:
                break
            if r >= 1:
                row = np.zeros(M)
                row[j] = 1.0
                rows.append(row)
                kinds.append(SINGLETON)
                r -= 1.0
                continue
            # 0 < r < 1: hand the remainder over to column j + 1
            if j == M - 1:
                raise InternalOverrunError(
                    f"last column left with fractional residual {r:.3e}; would need e_{M + 1}")
            a = math.sqrt(r / 2.0)
            b = math.sqrt(1.0 - r / 2.0)
            upper = np.zeros(M)
            upper[j], upper[j + 1] = a, b
            lower = np.zeros(M)
            lower[j], lower[j + 1] = a, -b
            rows.extend([upper, lower])
            kinds.extend([BLOCK_UPPER, BLOCK_LOWER])
            block_res[j] = r
            residual[j + 1] -= 2.0 - r
            if _snap(residual[j + 1], tol) < 0:
                raise InternalOverrunError(
                    f"column {j + 2} overdrawn by the block from column {j + 1}")
            break

    W = np.array(rows) if rows else np.zeros((0, M))
    return TetrisMatrix(W=W, row_kinds=tuple(kinds), block_residuals=tuple(block_res),
                        lambdas=tuple(float(x) for x in lambdas))


def assign_subspaces(tm: TetrisMatrix, N: int, m: int, tol: float = 1e-12) -> FusionFrame:
    """Deal the rows of ``W`` round-robin into ``N`` subspaces of dimension ``m``."""
    W = tm.W
    if W.shape[0] != N * m:
        raise InternalOverrunError(f"W has {W.shape[0]} rows, expected N*m = {N * m}")
    support = np.abs(W) > tol
    bases = []
    for i in range(N):
        idx = list(range(i, N * m, N))
        counts = support[idx].sum(axis=0)
        if np.any(counts > 1):
            col = int(np.argmax(counts > 1))
            raise OrthogonalityViolationError(
                f"rows {[k + 1 for k in idx]} of subspace {i + 1} overlap in column {col + 1}")
        bases.append(Subspace(W[idx].T))
    return FusionFrame.from_bases(bases)


def ffcie(spec: SpectrumSpec) -> tuple[TetrisMatrix, FusionFrame]:
    """Integer-eigenvalue construction: lambda_j copies of e_j, column by column."""
    violations = check_feasibility_integer(spec)
    if violations:
        raise InfeasibleError(violations)
    tm = _fill_rows([float(round(x)) for x in spec.lambdas])
    return tm, assign_subspaces(tm, spec.num_subspaces, spec.subspace_dim)


def ffcre(spec: SpectrumSpec) -> tuple[TetrisMatrix, FusionFrame]:
    """Real-eigenvalue construction.

    Raises :class:`InfeasibleError` unless the real feasibility conditions
    hold. An all-integer spectrum that passes the integer conditions is also
    accepted; the block branch never fires for it and the output equals
    :func:`ffcie`.
    """
    violations = check_feasibility_real(spec)
    if violations and not _is_integer_feasible(spec):
        raise InfeasibleError(violations)
    tm = _fill_rows(spec.lambdas)
    return tm, assign_subspaces(tm, spec.num_subspaces, spec.subspace_dim)


def fcre(lambdas, N: int) -> np.ndarray:
    """Frame (m = 1) with frame operator spectrum ``lambdas``; rows are the N frame vectors."""
    tm, _ = ffcre(SpectrumSpec(tuple(lambdas), N, 1))
    return tm.W.copy()


def column_profile(tm: TetrisMatrix) -> list[ColumnProfile]:
    """Nonzero count N(j) and presence of initial/terminal block entries per column."""
    W = tm.W
    M = W.shape[1]
    nz = W != 0.0
    initial = [False] * M
    terminal = [False] * M
    for row, kind in zip(W, tm.row_kinds):
        if kind == SINGLETON:
            continue
        cols = np.flatnonzero(row)
        initial[cols[0]] = True
        terminal[cols[-1]] = True
    return [ColumnProfile(int(nz[:, j].sum()), initial[j], terminal[j]) for j in range(M)]


def lemma_column_counts(tm: TetrisMatrix) -> list[int]:
    """N(j) predicted from the eigenvalues and block residuals alone.

    no block entries -> lambda_j; terminal only -> floor + 1; initial only ->
    floor + 2; both -> floor + 2 when column j's own residual is at least the
    one handed in from column j-1, floor + 3 otherwise. (Column j carries
    n + 2 + r_j - r_{j-1}, with n its count of singleton rows.)
    """
    prof = column_profile(tm)
    lam = tm.lambdas
    res = tm.block_residuals
    out = []
    for j, p in enumerate(prof):
        fl = _floor(lam[j])
        if not p.has_initial and not p.has_terminal:
            out.append(int(round(lam[j])))
        elif p.has_terminal and not p.has_initial:
            out.append(fl + 1)
        elif p.has_initial and not p.has_terminal:
            out.append(fl + 2)
        else:
            out.append(fl + 2 if res[j] >= res[j - 1] - INT_TOL else fl + 3)
    return out
