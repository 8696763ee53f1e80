# -*- coding: utf-8 -*-
import numpy as np
import pytest

from cpyx.cpoly import CPolynomial, evaluation_matrix
from cpyx.domain import (DiscreteCompact, DiscreteMeasure, build_boundary_grid, build_point_cloud, build_product,
                         build_reinhardt, build_torus, circled_closure_test, circled_hull, project_to_boundary,
                         sup_norm)
from cpyx.lattice import enumerate_basis
from cpyx.testing import random_polynomial


def has_point(K, z):
    return bool(np.any(np.all(np.isclose(K.points, z), axis=1)))


def test_build_torus():
    K = build_torus(1, 1, 4)
    assert len(K) == 16 and has_point(K, (1, 1))
    K = build_torus(0.8, 1.2, 8)
    assert len(K) == 64
    assert np.allclose(K.moduli, [0.8, 1.2])
    assert K.circled and K.regular and K.phase_count == 8
    with pytest.raises(ValueError):
        build_torus(1, 1, 3)
    with pytest.raises(ValueError):
        build_torus(0, 1, 8)


def test_build_reinhardt():
    assert len(build_reinhardt([(1, 1)], 8)) == 64
    K = build_reinhardt([(1, 0.5), (0.5, 1)], 8)
    assert len(K) == 128 and K.circled
    # a vanishing radius collapses its phases
    assert len(build_reinhardt([(1, 0)], 8)) == 8
    with pytest.raises(ValueError):
        build_reinhardt([], 8)


def test_point_cloud_is_deduplicated_and_flagged():
    K = build_point_cloud([[1, 1], [1, 1], [0, 2j]], label="cloud")
    assert len(K) == 2
    assert not K.regular and not K.circled
    assert K.metadata() == {"label": "cloud", "n_points": 2, "circled": False, "regular": False}
    with pytest.raises(ValueError):
        DiscreteCompact(np.zeros((0, 2), dtype=complex))
    assert len(build_product([1, -1], [1j, -1j, 2])) == 6


def test_circled_closure(body11, body23):
    K = build_torus(1, 1, 16)
    for body in (body11, body23):
        passed, defect = circled_closure_test(body, K)
        assert passed and defect <= 1e-12

    passed, defect = circled_closure_test(body11, build_point_cloud([[1, 1]]))
    assert not passed and defect > 0.1

    phases = np.exp(2j * np.pi * np.arange(16) / 16)
    slice_ = build_point_cloud(np.stack([np.ones(16), phases], axis=1))
    assert not circled_closure_test(body11, slice_)[0]

    hull = circled_hull(body23, build_point_cloud([[1, 0.5]]), n_theta=8)
    assert len(hull) == 8
    assert circled_closure_test(body23, hull, n_theta=8)[0]


def test_boundary_grid():
    B = build_boundary_grid(8)
    mod = np.abs(B.points)
    assert np.allclose(np.max(mod, axis=1), 1.0)
    assert np.array_equal(B.axis, np.any(mod == 0, axis=1))
    assert B.axis.any()
    assert len(B.off_axis) == int(np.sum(~B.axis))
    assert np.all(np.prod(np.abs(B.off_axis), axis=1) > 0)
    assert len({tuple(np.round(p, 12)) for p in B.points}) == len(B)


def test_project_to_boundary(body23):
    lam, zeta = project_to_boundary(body23, (4, 8))
    assert np.isclose(lam, 2)
    assert np.allclose(zeta, [1, 1])
    z = np.array([[3, 0.1j], [0.2, -5]])
    lam, zeta = project_to_boundary(body23, z)
    assert np.allclose(np.max(np.abs(zeta), axis=1), 1.0)
    assert np.allclose(np.stack([lam ** 2 * zeta[:, 0], lam ** 3 * zeta[:, 1]], axis=1), z)
    with pytest.raises(ValueError):
        project_to_boundary(body23, (0, 0))


def test_sup_norm(body11, unit_torus):
    assert np.isclose(sup_norm(CPolynomial.monomial(body11, (1, 0)), unit_torus), 1)
    assert np.isclose(sup_norm(CPolynomial(body11, {(1, 1): 1, (0, 0): 1}), unit_torus), 2)
    assert sup_norm(CPolynomial.zero(body11), unit_torus) == 0


def test_sup_norm_grows_under_refinement(body23, rng):
    coarse, fine = build_torus(1, 1, 8), build_torus(1, 1, 16)
    for _ in range(5):
        p = random_polynomial(body23, 2, rng)
        assert sup_norm(p, fine) >= sup_norm(p, coarse) * (1 - 1e-12)


def test_scaled_and_union(unit_torus):
    K = unit_torus.scaled(2.0, 0.5)
    assert np.allclose(K.moduli, [2.0, 0.5])
    U = unit_torus.union(K)
    assert len(U) == 2 * len(unit_torus) and U.circled


def test_measure(body11, unit_torus):
    mu = DiscreteMeasure.uniform(unit_torus)
    assert np.isclose(mu.total_mass, 1.0)
    basis = enumerate_basis(body11, 3)
    E = evaluation_matrix([CPolynomial.monomial(body11, al) for al in basis], unit_torus.points)
    assert np.allclose(mu.gram(E), np.eye(basis.N_n), atol=1e-12)
    assert np.isclose(mu.norm(E[:, 1]), 1.0)
    assert np.isclose(mu.inner(E[:, 1], E[:, 2]), 0, atol=1e-12)
    with pytest.raises(ValueError):
        DiscreteMeasure(unit_torus, np.zeros(len(unit_torus)))
    with pytest.raises(ValueError):
        DiscreteMeasure(unit_torus, np.ones(3))
