import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

from fusionframes.errors import AmbientMismatchError, NotOrthonormalError
from fusionframes.model import (
    FusionFrame,
    SpectrumSpec,
    Subspace,
    WeightedSubspace,
    chordal_distance_sq,
    chordal_table,
    frame_bounds,
    fusion_frame_operator,
    projection,
    trace_table,
    validate,
)
from fusionframes.testing import random_fusion_frame, random_orthogonal


def frames(max_M=5, max_N=5):
    @st.composite
    def build(draw):
        M = draw(st.integers(1, max_M))
        N = draw(st.integers(1, max_N))
        dims = draw(st.lists(st.integers(1, M), min_size=N, max_size=N))
        weights = draw(st.lists(st.floats(0.1, 3.0), min_size=N, max_size=N))
        seed = draw(st.integers(0, 2**31))
        return random_fusion_frame(np.random.default_rng(seed), M, N, dims, weights)
    return build()


def sphere_grid(M, n=4000, seed=0):
    x = np.random.default_rng(seed).standard_normal((n, M))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def test_subspace_validation():
    with pytest.raises(NotOrthonormalError):
        Subspace(np.array([[1.0, 1.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        Subspace(np.zeros((2, 0)))
    s = Subspace(np.eye(3)[:, :2])
    assert (s.ambient_dim, s.dim) == (3, 2)
    with pytest.raises(ValueError):
        s.basis[0, 0] = 5.0


def test_subspace_span_drops_dependent():
    s = Subspace.span([[1, 0, 0], [2, 0, 0], [1, 1, 0]])
    assert s.dim == 2
    np.testing.assert_allclose(projection(s), np.diag([1.0, 1.0, 0.0]), atol=1e-15)


def test_weights_must_be_positive():
    s = Subspace(np.eye(2)[:, :1])
    with pytest.raises(ValueError):
        WeightedSubspace(s, 0.0)
    with pytest.raises(ValueError):
        WeightedSubspace(s, -1.0)


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatchError):
        FusionFrame.from_bases([np.eye(2)[:, :1], np.eye(3)[:, :1]])


def test_operator_by_hand():
    # lines e1 and (e1+e2)/sqrt2 with weights 1 and 2
    ff = FusionFrame.from_bases([[[1.0], [0.0]], [[2 ** -0.5], [2 ** -0.5]]], weights=[1.0, 2.0])
    np.testing.assert_allclose(fusion_frame_operator(ff), [[3.0, 2.0], [2.0, 2.0]], atol=1e-15)
    A, B = frame_bounds(ff)
    assert B == pytest.approx((5 + np.sqrt(17)) / 2, abs=1e-13)
    assert A == pytest.approx((5 - np.sqrt(17)) / 2, abs=1e-13)


@given(frames(max_M=3, max_N=4))
@settings(max_examples=40, deadline=None)
def test_bounds_against_brute_force_over_the_sphere(ff):
    # oracle: sum_i v_i^2 |P_i f|^2 sampled over many unit vectors
    f = sphere_grid(ff.ambient_dim)
    energy = sum(w * w * np.sum((f @ u) ** 2, axis=1) for w, u in zip(ff.weights, ff.bases))
    A, B = frame_bounds(ff)
    assert energy.min() >= A - 1e-12
    assert energy.max() <= B + 1e-12
    # the grid is dense enough in low dimension to come close to the extremes
    assert energy.max() >= B - 0.1 * max(B, 1)
    assert energy.min() <= A + 0.1 * max(B, 1)


@given(frames(), st.integers(0, 2**31))
@settings(max_examples=50, deadline=None)
def test_quadratic_form_identity(ff, seed):
    f = np.random.default_rng(seed).standard_normal(ff.ambient_dim)
    s = fusion_frame_operator(ff)
    direct = sum(w * w * np.linalg.norm(u.T @ f) ** 2 for w, u in zip(ff.weights, ff.bases))
    assert f @ s @ f == pytest.approx(direct, rel=1e-12, abs=1e-12)


@given(frames())
@settings(max_examples=50, deadline=None)
def test_validate_report_consistency(ff):
    rep = validate(ff)
    np.testing.assert_allclose(rep.spectrum, np.linalg.eigvalsh(fusion_frame_operator(ff))[::-1],
                               atol=1e-11)
    assert np.sum(rep.spectrum) == pytest.approx(np.sum(ff.weights ** 2 * np.array(ff.dims)), rel=1e-12)
    assert rep.optimal_bounds == (rep.spectrum[-1], rep.spectrum[0])
    assert rep.residuals["trace_identity"] < 1e-12
    assert rep.residuals["basis_orthonormality"] < 1e-12
    assert rep.is_fusion_frame == (rep.spectrum[-1] > rep.tol)
    d = rep.to_dict()
    assert d["dims"] == ff.dims and len(d["chordal_sq"]) == len(ff)


def test_validate_flags():
    tight = FusionFrame.from_bases([np.eye(2)[:, [0]], np.eye(2)[:, [1]]], weights=[2.0, 2.0])
    rep = validate(tight)
    assert rep.is_fusion_frame and rep.is_tight and not rep.is_parseval
    parseval = tight.with_weights([1.0, 1.0])
    assert validate(parseval).is_parseval
    line = FusionFrame.from_bases([np.eye(2)[:, [0]]])
    rep = validate(line)
    assert not rep.is_fusion_frame and not rep.is_tight


@given(st.integers(1, 6), st.data())
@settings(max_examples=50, deadline=None)
def test_chordal_distance_against_principal_angles(M, data):
    m1 = data.draw(st.integers(1, M))
    m2 = data.draw(st.integers(1, M))
    r = np.random.default_rng(data.draw(st.integers(0, 2**31)))
    a = Subspace(random_orthogonal(r, M)[:, :m1])
    b = Subspace(random_orthogonal(r, M)[:, :m2])
    cos2 = np.cos(scipy.linalg.subspace_angles(a.basis, b.basis)) ** 2
    assert chordal_distance_sq(a, b) == pytest.approx(M - cos2.sum(), abs=1e-12)


def test_chordal_convention_on_identical_subspaces():
    s = Subspace(np.eye(4)[:, :2])
    assert chordal_distance_sq(s, s) == pytest.approx(2.0)
    ff = FusionFrame.from_bases([s, Subspace(np.eye(4)[:, 2:])])
    np.testing.assert_allclose(trace_table(ff), [[2, 0], [0, 2]], atol=1e-15)
    np.testing.assert_allclose(chordal_table(ff), [[2, 4], [4, 2]], atol=1e-15)


def test_spectrum_spec():
    s = SpectrumSpec((3, 2.5, 2.5), 4, 2)
    assert s.M == 3 and s.fac_holds
    with pytest.raises(ValueError):
        SpectrumSpec((1, 2), 3, 1)
    with pytest.raises(ValueError):
        SpectrumSpec((2, 0), 2, 1)
    with pytest.raises(ValueError):
        SpectrumSpec((2, 1), 0, 1)
    assert not SpectrumSpec((2, 1), 2, 2).fac_holds
    # a rounding gap is absorbed into the smallest value
    s = SpectrumSpec((1 / 3 + 1e-12, 1 / 3, 1 / 3), 1, 1)
    assert sum(s.lambdas) == 1.0
