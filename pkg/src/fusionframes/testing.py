"""Random generators for fusion frames, used by the tests and handy for experiments."""
from __future__ import annotations

import numpy as np

from .completion import shift_completion
from .model import FusionFrame, SpectrumSpec, Subspace, WeightedSubspace
from .tetris import check_feasibility_real


def random_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed orthogonal matrix."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def random_subspace(rng: np.random.Generator, M: int, m: int) -> Subspace:
    return Subspace(random_orthogonal(rng, M)[:, :m])


def random_fusion_frame(rng: np.random.Generator, M: int, N: int, dims=None,
                        weights=None) -> FusionFrame:
    """N random subspaces of R^M; dims and weights default to 1."""
    dims = [1] * N if dims is None else list(dims)
    weights = np.ones(N) if weights is None else np.asarray(weights, dtype=float)
    return FusionFrame(M, tuple(WeightedSubspace(random_subspace(rng, M, d), float(w))
                                for d, w in zip(dims, weights)))


def random_tight_family(rng: np.random.Generator, M: int, m: int, k: int) -> FusionFrame:
    """(k*m)-tight, unit-weight family of k*M subspaces of dimension m, randomly rotated."""
    base = shift_completion([random_subspace(rng, M, m) for _ in range(k)])
    q = random_orthogonal(rng, M)
    return FusionFrame.from_bases([q @ b for b in base.bases])


def random_parseval_frame(rng: np.random.Generator, M: int, wmin: float = 0.3,
                          wmax: float = 0.9, max_tries: int = 100) -> FusionFrame:
    """Parseval fusion frame with every weight strictly inside (wmin, wmax).

    Built as a convex mix t*T1/A1 + (1-t)*T2/A2 of two randomly rotated
    tight families, so the weights are sqrt(t/A1) and sqrt((1-t)/A2).
    """
    for _ in range(max_tries):
        parts = []
        t = rng.uniform(0.2, 0.8)
        for share in (t, 1.0 - t):
            m = int(rng.integers(1, M)) if M > 1 else 1
            k = int(rng.integers(1, 4))
            parts.append((random_tight_family(rng, M, m, k), float(np.sqrt(share / (k * m)))))
        if all(wmin < w < wmax for _, w in parts):
            members = tuple(WeightedSubspace(ws.subspace, w) for fam, w in parts for ws in fam.members)
            return FusionFrame(M, members)
    raise RuntimeError("could not draw weights in the requested range")


def random_feasible_spectrum(rng: np.random.Generator, max_M: int = 10, max_N: int = 20,
                             max_m: int = 4, max_tries: int = 1000) -> SpectrumSpec:
    """Random spectrum passing :func:`check_feasibility_real`.

    Values are 2 plus a Dirichlet share of the excess N*m - 2M, so the sum
    is N*m up to rounding and every value is at least 2.
    """
    for _ in range(max_tries):
        M = int(rng.integers(1, max_M + 1))
        m = int(rng.integers(1, max_m + 1))
        N = int(rng.integers(3, max_N + 1))
        excess = N * m - 2 * M
        if excess < 0:
            continue
        lam = np.sort(2.0 + excess * rng.dirichlet(np.ones(M)))[::-1]
        spec = SpectrumSpec(tuple(lam), N, m)
        if not check_feasibility_real(spec):
            return spec
    raise RuntimeError("no feasible spectrum found")


def _partitions(total: int, k: int, cap: int):
    """Non-increasing k-tuples of positive integers bounded by cap summing to total."""
    if k == 0:
        if total == 0:
            yield ()
        return
    for x in range(min(cap, total - (k - 1)), 0, -1):
        for rest in _partitions(total - x, k - 1, x):
            yield (x,) + rest


def integer_spectra(max_M: int, max_N: int):
    """Every integer spectrum with M <= max_M, N <= max_N, m <= M, lambda_1 <= N and sum N*m."""
    for M in range(1, max_M + 1):
        for N in range(1, max_N + 1):
            for m in range(1, M + 1):
                for lam in _partitions(N * m, M, N):
                    yield SpectrumSpec(lam, N, m)
