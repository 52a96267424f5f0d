"""Fusion frame measurements and exact reconstruction.

Full measurements are the weighted projections ``z_i = v_i P_i f``; reduced
measurements are the local coefficients ``c_i = v_i U_i^T f``. Weighting
each measurement by v_i once more and summing gives S f, and one solve with
the (positive-definite) fusion frame operator S recovers f.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DimensionMismatchError
from .model import FusionFrame, fusion_frame_operator
from .numerics import ORTHO_TOL, SPDFactor

Mode = Literal["full", "reduced"]


@dataclass(frozen=True, eq=False)
class Measurements:
    mode: Mode
    values: tuple[np.ndarray, ...]


def measure(ff: FusionFrame, f, mode: Mode = "full") -> Measurements:
    f = np.asarray(f, dtype=float)
    if f.shape != (ff.ambient_dim,):
        raise DimensionMismatchError(f"signal has shape {f.shape}, expected ({ff.ambient_dim},)")
    if mode not in ("full", "reduced"):
        raise ValueError(f"unknown measurement mode {mode!r}")
    out = []
    for ws in ff.members:
        u = ws.subspace.basis
        c = ws.weight * (u.T @ f)
        out.append(u @ c if mode == "full" else c)
    return Measurements(mode, tuple(out))


def synthesize(ff: FusionFrame, meas: Measurements) -> np.ndarray:
    """``sum_i v_i z_i`` (full) or ``sum_i v_i U_i c_i`` (reduced); equals S f."""
    if len(meas.values) != len(ff):
        raise DimensionMismatchError(f"{len(meas.values)} measurements for {len(ff)} subspaces")
    acc = np.zeros(ff.ambient_dim)
    for k, (ws, val) in enumerate(zip(ff.members, meas.values)):
        val = np.asarray(val, dtype=float)
        u = ws.subspace.basis
        if meas.mode == "full":
            if val.shape != (ff.ambient_dim,):
                raise DimensionMismatchError(f"measurement {k} has shape {val.shape}")
            acc += ws.weight * val
        else:
            if val.shape != (u.shape[1],):
                raise DimensionMismatchError(f"measurement {k} has shape {val.shape}, expected ({u.shape[1]},)")
            acc += ws.weight * (u @ val)
    return acc


class Reconstructor:
    """A fusion frame with its operator factored once, for repeated reconstruction.

    Raises :class:`~fusionframes.errors.SingularOperatorError` if the family
    is not a fusion frame. Instances are immutable after construction.
    """

    def __init__(self, ff: FusionFrame, tol: float = ORTHO_TOL):
        self.frame = ff
        self._factor = SPDFactor(fusion_frame_operator(ff), tol)

    def __call__(self, meas: Measurements) -> np.ndarray:
        return self._factor.solve(synthesize(self.frame, meas))


def reconstruct(ff: FusionFrame, meas: Measurements, tol: float = ORTHO_TOL) -> np.ndarray:
    return Reconstructor(ff, tol)(meas)
