# -*- coding: utf-8 -*-
import numpy as np
import pytest

from cpyx.cpoly import CPolynomial, evaluate
from cpyx.domain import build_point_cloud, build_torus
from cpyx.lattice import MultiIndex, enumerate_basis
from cpyx.nodes import (NodeSet, delta_estimate_vdm, greedy_fekete, lagrange_basis, lagrange_difference_family,
                        lebesgue_constant, leja_lebesgue_profile, leja_sequence, vdm_logabs)
from cpyx.testing import exhaustive_fekete
from cpyx.utils import StructuralError, UnisolvenceError

TRIANGLE = np.array([[0, 0], [1, 0], [0, 1]], dtype=complex)


def given(body, points, n):
    basis = enumerate_basis(body, n)
    return NodeSet(np.asarray(points, dtype=complex), basis, vdm_logabs(points, basis.prefix(len(points))))


def test_vdm_logabs(body11):
    assert vdm_logabs([[3 + 1j, 2]], [MultiIndex(0, 0)]) == 0
    basis = enumerate_basis(body11, 1)
    assert np.isclose(vdm_logabs(TRIANGLE, basis), 0, atol=1e-14)
    assert vdm_logabs([[1, 2], [1, 2], [0, 1]], basis) == -np.inf
    with pytest.raises(ValueError):
        vdm_logabs(TRIANGLE[:2], basis)


def test_vdm_row_scaling(body11, rng):
    pts = rng.standard_normal((6, 2)) + 1j * rng.standard_normal((6, 2))
    basis = enumerate_basis(body11, 2)
    r = 3.0
    assert np.isclose(vdm_logabs(r * pts, basis), vdm_logabs(pts, basis) + basis.l_n * np.log(r), rtol=1e-10)


def test_greedy_fekete_small_cases(body11, unit_torus):
    fek = greedy_fekete(body11, unit_torus, 0)
    assert len(fek) == 1 and fek.indices[0] == 0 and np.isclose(fek.log_vdm, 0, atol=1e-12)

    fek = greedy_fekete(body11, build_point_cloud(TRIANGLE), 1)
    assert sorted(fek.indices) == [0, 1, 2]
    assert np.isclose(fek.log_vdm, vdm_logabs(fek.points, fek.basis), atol=1e-12)
    assert np.isclose(fek.log_vdm, fek.recompute_log_vdm(), atol=1e-12)

    with pytest.raises(StructuralError):
        greedy_fekete(body11, build_point_cloud(TRIANGLE[:2]), 1)
    # all points on the line z2 = 0: not determining
    line = build_point_cloud(np.stack([np.arange(6), np.zeros(6)], axis=1))
    with pytest.raises(StructuralError):
        greedy_fekete(body11, line, 1)


def test_greedy_fekete_against_exhaustive_search(body11, rng):
    K = build_point_cloud(rng.standard_normal((9, 2)) + 1j * rng.standard_normal((9, 2)))
    fek = greedy_fekete(body11, K, 1)
    _, best = exhaustive_fekete(body11, K, 1)
    assert fek.log_vdm <= best + 1e-9
    # greedy pivoting loses at most log N! against the optimum
    assert fek.log_vdm >= best - np.log(6) - 1e-9


def test_fekete_unit_torus_bracket(body11, unit_torus):
    n = 2
    fek = greedy_fekete(body11, unit_torus, n)
    N, l_n = fek.basis.N_n, fek.basis.l_n
    log_delta = fek.log_vdm / l_n
    assert 0 <= log_delta <= N * np.log(N) / (2 * l_n) + 1e-12


def test_delta_estimate_vdm(body11):
    est = delta_estimate_vdm(body11, build_torus(1, 1, 16), [2, 4, 6])
    assert [n for n, _ in est] == [2, 4, 6]
    for n, v in est:
        basis = enumerate_basis(body11, n)
        assert 1 - 1e-12 <= v <= np.exp(basis.N_n * np.log(basis.N_n) / (2 * basis.l_n)) + 1e-12
    r = 2.0
    scaled = delta_estimate_vdm(body11, build_torus(r, r, 16), [2, 4, 6])
    assert np.allclose([v for _, v in scaled], [r * v for _, v in est], rtol=1e-8)
    with pytest.raises(ValueError):
        delta_estimate_vdm(body11, build_torus(1, 1, 16), [4, 2])
    with pytest.raises(ValueError):
        delta_estimate_vdm(body11, build_torus(1, 1, 16), [0, 1])


def test_leja_sequence(body23, unit_torus):
    leja = leja_sequence(body23, unit_torus, 7)
    assert len(leja) == 7 and leja.indices[0] == 0 and leja.kind == "leja"
    assert len(set(leja.indices)) == 7
    assert np.isclose(leja.log_vdm, leja.recompute_log_vdm(), atol=1e-9)
    shorter = leja_sequence(body23, unit_torus, 4)
    assert np.array_equal(shorter.indices, leja.indices[:4])
    assert np.isclose(leja.prefix(4).log_vdm, shorter.log_vdm)
    with pytest.raises(ValueError):
        leja_sequence(body23, unit_torus, 0)


def test_lagrange_basis(body11):
    lb = lagrange_basis(given(body11, [[2, 1j]], 0))
    assert lb.cardinals[0] == CPolynomial.constant(body11)

    lb = lagrange_basis(given(body11, TRIANGLE, 1))
    expected = [CPolynomial(body11, {(0, 0): 1, (1, 0): -1, (0, 1): -1}),
                CPolynomial.monomial(body11, (1, 0)),
                CPolynomial.monomial(body11, (0, 1))]
    for got, want in zip(lb.cardinals, expected):
        assert got.allclose(want, atol=1e-12)
    assert np.allclose(lb.cardinal_values(TRIANGLE), np.eye(3))

    with pytest.raises(UnisolvenceError):
        lagrange_basis(given(body11, [[1, 1], [1, 1], [0, 1]], 1))


def test_interpolation_reproduces_polynomials(body23, unit_torus, rng):
    leja = leja_sequence(body23, unit_torus, enumerate_basis(body23, 1).N_n)
    lb = lagrange_basis(leja)
    p = CPolynomial(body23, {(0, 0): 1, (3, 0): 2j, (1, 1): -1})
    assert lb.interpolate_polynomial(p).allclose(p, atol=1e-9)
    z = rng.standard_normal((5, 2))
    assert np.allclose(evaluate(lb.interpolate(evaluate(p, leja.points)), z), evaluate(p, z))


def test_lebesgue_constant(body11, unit_torus):
    lb = lagrange_basis(given(body11, [[1, 1]], 0))
    assert np.isclose(lebesgue_constant(lb, unit_torus), 1)
    lb = lagrange_basis(leja_sequence(body11, unit_torus, 6))
    assert lebesgue_constant(lb, unit_torus) >= 1 - 1e-12
    profile = leja_lebesgue_profile(body11, unit_torus, [1, 2, 3])
    assert list(profile.columns) == ["degree", "N", "lebesgue", "growth"]
    assert list(profile["N"]) == [3, 6, 10]
    assert np.all(profile["lebesgue"] >= 1 - 1e-12)


def test_lagrange_difference_family(body11, unit_torus):
    leja = leja_sequence(body11, unit_torus, 6)
    family = lagrange_difference_family(body11, unit_torus, leja)
    assert len(family) == 5
    monos = leja.basis.prefix(6)
    for s, p in enumerate(family, start=2):
        assert p.leading_index == monos[s - 1]
        assert np.isclose(p.coefficient(monos[s - 1]), 1)
        assert np.allclose(evaluate(p, leja.points[:s - 1]), 0, atol=1e-9)
    with pytest.raises(ValueError):
        lagrange_difference_family(body11, unit_torus)
