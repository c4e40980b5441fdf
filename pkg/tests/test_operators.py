"""Tests for the vector/operator layer."""

import numpy as np
import pytest
from numpy.random import default_rng

from ritz_bounds import (
    DenseSymmetricOperator,
    DiagonalOperator,
    DimensionMismatchError,
    OverlapProfile,
    Spectrum,
    ZeroVectorError,
    apply,
    orthonormalize_against,
    rayleigh_quotient,
)


def test_spectrum_basic_properties():
    sp = Spectrum(np.array([3.0, 1.0, -2.0]))
    assert sp.dim == 3
    assert len(sp) == 3
    assert sp.top == 3.0
    assert sp.bottom == -2.0
    assert sp.span == 5.0
    assert sp.norm == 3.0


def test_spectrum_rejects_ascending():
    with pytest.raises(ValueError):
        Spectrum(np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        Spectrum(np.array([1.0, np.nan]))
    with pytest.raises(ValueError):
        Spectrum(np.array([]))


def test_spectrum_allows_ties_and_is_readonly():
    sp = Spectrum(np.array([2.0, 2.0, 1.0]))
    assert sp.dim == 3
    with pytest.raises(ValueError):
        sp.values[0] = 5.0


def test_overlap_profile_normalizes():
    ov = OverlapProfile(np.array([3.0, 4.0]))
    np.testing.assert_allclose(np.sum(ov.magnitudes**2), 1.0, rtol=1e-15)
    np.testing.assert_allclose(ov.magnitudes, [0.6, 0.8], rtol=1e-15)


def test_overlap_profile_rejects_zero_and_negative():
    with pytest.raises(ZeroVectorError):
        OverlapProfile(np.zeros(4))
    with pytest.raises(ValueError):
        OverlapProfile(np.array([1.0, -0.5]))


def test_diagonal_operator_matvec():
    op = DiagonalOperator(Spectrum(np.array([2.0, 1.0, -1.0])))
    np.testing.assert_allclose(apply(op, [1.0, 1.0, 1.0]), [2.0, 1.0, -1.0])
    assert op.dimension == 3
    assert op.norm_estimate == 2.0


def test_dense_operator_requires_exact_symmetry():
    a = np.array([[1.0, 2.0], [2.0, 3.0]])
    op = DenseSymmetricOperator(a)
    np.testing.assert_allclose(apply(op, [1.0, 0.0]), [1.0, 2.0])
    a_bad = a.copy()
    a_bad[0, 1] += 1e-14
    with pytest.raises(ValueError):
        DenseSymmetricOperator(a_bad)


def test_apply_dimension_check():
    op = DiagonalOperator(Spectrum(np.array([1.0, 0.0])))
    with pytest.raises(DimensionMismatchError):
        apply(op, [1.0, 2.0, 3.0])


def test_rayleigh_quotient_hand_value():
    # diag(2, 1) with equal-weight vector: (2 + 1) / 2
    op = DiagonalOperator(Spectrum(np.array([2.0, 1.0])))
    np.testing.assert_allclose(rayleigh_quotient([1.0, 1.0], op), 1.5, rtol=1e-15)
    with pytest.raises(ZeroVectorError):
        rayleigh_quotient([0.0, 0.0], op)


def test_rayleigh_quotient_stays_in_spectral_interval():
    rng = default_rng(42)
    sp = Spectrum(np.sort(rng.normal(size=8))[::-1])
    op = DiagonalOperator(sp)
    for _ in range(50):
        x = rng.normal(size=8)
        rho = rayleigh_quotient(x, op)
        assert sp.bottom - 1e-12 <= rho <= sp.top + 1e-12


def test_orthonormalize_against_produces_unit_orthogonal_residual():
    rng = default_rng(7)
    basis = []
    for _ in range(5):
        q = orthonormalize_against(rng.normal(size=9), basis)
        assert q is not None
        basis.append(q)
    Q = np.vstack(basis)
    np.testing.assert_allclose(Q @ Q.T, np.eye(5), atol=1e-14)


def test_orthonormalize_against_detects_containment():
    e1 = np.array([1.0, 0.0, 0.0])
    e2 = np.array([0.0, 1.0, 0.0])
    # a vector inside span(e1, e2) has no residual
    assert orthonormalize_against(0.3 * e1 - 0.8 * e2, [e1, e2]) is None
    assert orthonormalize_against(np.zeros(3), [e1]) is None
