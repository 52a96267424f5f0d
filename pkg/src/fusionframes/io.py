"""Text formats for fusion frames, spectra, matrices and vectors.

Fusion frames and spectra are JSON documents::

    {
      "ambient_dim": 3,
      "subspaces": [
        {"weight": 1, "basis": [[1, 0, 0], [0, 1, 0]]},
        ...
      ]
    }

    {"lambdas": [2.75, 2.75, 2.5], "num_subspaces": 8, "subspace_dim": 1}

``basis`` lists the basis as column vectors, each of length ``ambient_dim``.
Spectrum entries may also be given as exact fractions in strings ("11/4").
Matrices and vectors are CSV: comma separated values, one row per line.
Numbers are written with 17 significant digits so files round-trip bit for
bit, and the writers emit one canonical layout, so save(load(x)) == x for
files they produced.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import InvariantViolationError, NotOrthonormalError, ParseError
from .model import BASIS_TOL, FusionFrame, SpectrumSpec, Subspace, WeightedSubspace


def fmt(x: float) -> str:
    x = float(x)
    if x == 0.0:
        return "0"
    if x.is_integer() and abs(x) < 1e17:
        return str(int(x))
    return format(x, ".17g")


def _vec(xs) -> str:
    return "[" + ", ".join(fmt(x) for x in xs) + "]"


# ---------------------------------------------------------------- fusion frames

def frame_to_text(ff: FusionFrame) -> str:
    lines = ["{", f'  "ambient_dim": {ff.ambient_dim},', '  "subspaces": [']
    items = []
    for ws in ff.members:
        cols = ", ".join(_vec(c) for c in ws.subspace.basis.T)
        items.append(f'    {{"weight": {fmt(ws.weight)}, "basis": [{cols}]}}')
    lines.append(",\n".join(items))
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"{where}: expected a number, got {x!r}")
    if not np.isfinite(x):
        raise ParseError(f"{where}: non-finite value")
    return float(x)


def _count(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 1:
        raise ParseError(f"{where}: expected a positive integer, got {x!r}")
    return x


def _field(doc: dict, key: str, where: str):
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object")
    if key not in doc:
        raise ParseError(f"{where}: missing field {key!r}")
    return doc[key]


def frame_from_text(text: str, tol: float = BASIS_TOL) -> FusionFrame:
    doc = _load_json(text, "fusion frame document")
    M = _count(_field(doc, "ambient_dim", "document"), "ambient_dim")
    subs = _field(doc, "subspaces", "document")
    if not isinstance(subs, list) or not subs:
        raise ParseError("subspaces: expected a non-empty list")
    members = []
    for i, item in enumerate(subs):
        where = f"subspaces[{i}]"
        weight = _number(_field(item, "weight", where), f"{where}.weight")
        if weight <= 0:
            raise InvariantViolationError(f"{where}.weight: must be positive, got {weight!r}")
        basis = _field(item, "basis", where)
        if not isinstance(basis, list) or not basis:
            raise ParseError(f"{where}.basis: expected a non-empty list of column vectors")
        cols = []
        for j, col in enumerate(basis):
            w = f"{where}.basis[{j}]"
            if not isinstance(col, list) or len(col) != M:
                raise ParseError(f"{w}: expected a list of {M} numbers")
            cols.append([_number(x, f"{w}") for x in col])
        if len(cols) > M:
            raise InvariantViolationError(f"{where}.basis: {len(cols)} vectors cannot be orthonormal in R^{M}")
        try:
            sub = Subspace(np.array(cols).T, tol)
        except NotOrthonormalError as exc:
            raise InvariantViolationError(f"{where}.basis: {exc}") from exc
        members.append(WeightedSubspace(sub, weight))
    return FusionFrame(M, tuple(members))


def save_frame(ff: FusionFrame, path) -> None:
    Path(path).write_text(frame_to_text(ff))


def load_frame(path, tol: float = BASIS_TOL) -> FusionFrame:
    return frame_from_text(Path(path).read_text(), tol)


# ---------------------------------------------------------------- spectra

def _spectral_value(x, where: str) -> float:
    if isinstance(x, str):
        try:
            return float(Fraction(x.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{where}: cannot read {x!r} as a number") from exc
    return _number(x, where)


def spectrum_to_text(spec: SpectrumSpec) -> str:
    return (f'{{"lambdas": {_vec(spec.lambdas)}, "num_subspaces": {spec.num_subspaces}, '
            f'"subspace_dim": {spec.subspace_dim}}}\n')


def spectrum_from_text(text: str, check_fac: bool = True) -> SpectrumSpec:
    """Parse a spectrum document.

    With ``check_fac`` a sum of eigenvalues different from N*m raises
    :class:`InvariantViolationError`; without it the SpectrumSpec is returned and
    the feasibility checks report the problem.
    """
    doc = _load_json(text, "spectrum document")
    raw = _field(doc, "lambdas", "document")
    if not isinstance(raw, list) or not raw:
        raise ParseError("lambdas: expected a non-empty list")
    lam = [_spectral_value(x, f"lambdas[{j}]") for j, x in enumerate(raw)]
    N = _count(_field(doc, "num_subspaces", "document"), "num_subspaces")
    m = _count(_field(doc, "subspace_dim", "document"), "subspace_dim")
    try:
        spec = SpectrumSpec(tuple(lam), N, m)
    except ValueError as exc:
        raise InvariantViolationError(f"lambdas: {exc}") from exc
    if check_fac and not spec.fac_holds:
        raise InvariantViolationError(
            f"factorization condition fails: sum of lambdas {sum(lam):.17g} != num_subspaces * subspace_dim = {N * m}")
    return spec


def save_spectrum(spec: SpectrumSpec, path) -> None:
    Path(path).write_text(spectrum_to_text(spec))


def load_spectrum(path, check_fac: bool = True) -> SpectrumSpec:
    return spectrum_from_text(Path(path).read_text(), check_fac)


# ---------------------------------------------------------------- CSV

def matrix_to_text(a) -> str:
    a = np.atleast_2d(np.asarray(a, dtype=float))
    return "".join(",".join(fmt(x) for x in row) + "\n" for row in a)


def matrix_from_text(text: str) -> np.ndarray:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        row = []
        for col, field in enumerate(line.split(","), start=1):
            try:
                x = float(field)
            except ValueError as exc:
                raise ParseError(f"line {lineno} field {col}: cannot read {field.strip()!r} as a number") from exc
            if not np.isfinite(x):
                raise ParseError(f"line {lineno} field {col}: non-finite value")
            row.append(x)
        if rows and len(row) != len(rows[0]):
            raise ParseError(f"line {lineno}: {len(row)} fields, expected {len(rows[0])}")
        rows.append(row)
    if not rows:
        raise ParseError("empty matrix")
    return np.array(rows)


def save_matrix(a, path) -> None:
    Path(path).write_text(matrix_to_text(a))


def load_matrix(path) -> np.ndarray:
    return matrix_from_text(Path(path).read_text())


def vector_to_text(v) -> str:
    return matrix_to_text(np.asarray(v, dtype=float).reshape(1, -1))


def vector_from_text(text: str) -> np.ndarray:
    """A single row, or a single column, of numbers."""
    a = matrix_from_text(text)
    if a.shape[0] != 1 and a.shape[1] != 1:
        raise ParseError(f"expected a single row or column, got a {a.shape[0]}x{a.shape[1]} matrix")
    return a.ravel()


def save_vector(v, path) -> None:
    Path(path).write_text(vector_to_text(v))


def load_vector(path) -> np.ndarray:
    return vector_from_text(Path(path).read_text())


def report_to_json(report) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"
