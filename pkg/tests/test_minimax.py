# -*- coding: utf-8 -*-
import warnings

import numpy as np
import pytest

from cpyx.cpoly import CPolynomial
from cpyx.domain import build_point_cloud, build_torus, sup_norm
from cpyx.lattice import HypotenuseDirection, MultiIndex
from cpyx.minimax import (MinimaxProblem, chebyshev_monic, kappa_n, monic_free_basis, solve_minimax, tau_direction,
                          tau_directions, tch_projection, torus_lower_bound)
from cpyx.testing import grid_search_minimax
from cpyx.utils import StructuralError


def mono(body, j, k, c=1.0):
    return CPolynomial.monomial(body, (j, k), c)


@pytest.fixture(scope="module")
def segment():
    x = np.linspace(-1, 1, 201)
    return build_point_cloud(np.stack([x, np.zeros_like(x)], axis=1), label="[-1,1]x{0}")


def test_best_constant_shift_on_torus(body11, unit_torus):
    sol = solve_minimax(MinimaxProblem(mono(body11, 1, 0), [mono(body11, 0, 0)], unit_torus))
    assert sol.converged
    assert np.isclose(sol.value, 1.0)
    assert abs(sol.coefficients[0]) < 1e-10


def test_classical_chebyshev_on_segment(body11, segment):
    problem = MinimaxProblem(mono(body11, 2, 0), [mono(body11, 0, 0), mono(body11, 1, 0)], segment)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        sol = solve_minimax(problem)
    assert abs(sol.value - 0.5) < 1e-3
    assert np.allclose(sol.coefficients, [-0.5, 0], atol=1e-2)
    assert sol.value <= min(sol.residual_history) + 1e-12


def test_empty_free_basis(body11, unit_torus):
    p = CPolynomial(body11, {(1, 1): 1, (0, 0): 1})
    sol = solve_minimax(MinimaxProblem(p, [], unit_torus))
    assert sol.iterations == 0
    assert sol.value == sup_norm(p, unit_torus)
    assert sol.polynomial == p


def test_structural_errors(body11, unit_torus):
    z1 = mono(body11, 1, 0)
    with pytest.raises(StructuralError):
        solve_minimax(MinimaxProblem(mono(body11, 2, 0), [z1, 2 * z1], unit_torus))
    with pytest.raises(StructuralError):
        two_points = build_point_cloud([[1, 1], [2, 2]])
        solve_minimax(MinimaxProblem(mono(body11, 2, 0), [z1, mono(body11, 0, 0)], two_points))
    with pytest.raises(ValueError):
        MinimaxProblem(z1, [z1], unit_torus, constraint=([1, 2], 1))
    with pytest.raises(ValueError):
        MinimaxProblem(z1, [z1], unit_torus, constraint=([0], 1))


def test_matches_grid_search_oracle(body23, rng):
    K = build_point_cloud(rng.standard_normal((40, 2)) + 1j * rng.standard_normal((40, 2)))
    fixed = CPolynomial(body23, {(3, 0): 1, (0, 2): 0.5j})
    problem = MinimaxProblem(fixed, [mono(body23, 0, 0), mono(body23, 1, 0)], K)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        sol = solve_minimax(problem, max_iter=5000)
    coef, oracle = grid_search_minimax(problem)
    assert abs(sol.value - oracle) <= 1e-3 * oracle
    assert np.isclose(sup_norm(fixed + mono(body23, 0, 0, coef[0]) + mono(body23, 1, 0, coef[1]), K), oracle)


def test_grid_search_walks_off_a_small_window(body11):
    # least squares starts at c = -0.75, the minimax shift is c = -0.5
    K = build_point_cloud([[0, 1], [1, 1], [1, 2], [1, 3]])
    problem = MinimaxProblem(mono(body11, 1, 0), [mono(body11, 0, 0)], K)
    coef, value = grid_search_minimax(problem, radius=0.01)
    assert np.isclose(value, 0.5, atol=1e-6)
    assert np.isclose(coef[0], -0.5, atol=1e-6)


def test_constraint_is_honoured(body11, unit_torus):
    g = np.array([1.0, 2.0, 0.0])
    free = [mono(body11, 1, 0), mono(body11, 0, 1), mono(body11, 0, 0)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        sol = solve_minimax(MinimaxProblem(CPolynomial.zero(body11), free, unit_torus, constraint=(g, 1.0)))
    assert np.isclose(np.dot(g, sol.coefficients), 1.0)
    assert sol.pivot == 1
    # min ||c1 z1 + c2 z2|| on T² with c1 + 2 c2 = 1 is min |c1| + |c2| = 1/2
    assert np.isclose(sol.value, 0.5, atol=1e-3)


def test_chebyshev_monic(body11, unit_torus):
    t, value = chebyshev_monic(body11, 0, MultiIndex(0, 0), unit_torus)
    assert t == CPolynomial.constant(body11) and value == 1
    t, value = chebyshev_monic(body11, 1, MultiIndex(1, 0), unit_torus)
    assert t.allclose(mono(body11, 1, 0), atol=1e-8) and np.isclose(value, 1)
    t, value, sol = chebyshev_monic(body11, 2, MultiIndex(1, 1), unit_torus, full_output=True)
    assert t.allclose(mono(body11, 1, 1), atol=1e-8) and np.isclose(value, 1) and sol.converged
    assert t.leading_index == MultiIndex(1, 1) and t.coefficient((1, 1)) == 1
    with pytest.raises(ValueError):
        chebyshev_monic(body11, 1, MultiIndex(2, 0), unit_torus)


def test_monic_free_basis(body23):
    assert [q.leading_index for q in monic_free_basis(body23, 1, MultiIndex(0, 1))] == \
        [MultiIndex(0, 0), MultiIndex(1, 0), MultiIndex(2, 0), MultiIndex(3, 0)]


def test_enlarging_the_free_basis_never_hurts(body23, rng):
    K = build_point_cloud(rng.standard_normal((60, 2)) + 1j * rng.standard_normal((60, 2)))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        _, v1 = chebyshev_monic(body23, 1, MultiIndex(1, 1), K)
        _, v2 = chebyshev_monic(body23, 2, MultiIndex(1, 1), K)
    assert v2 <= v1 * (1 + 1e-9)


def test_tch_projection(body11, unit_torus):
    h = mono(body11, 1, 1)
    proj, value = tch_projection(body11, h, unit_torus)
    assert np.isclose(value, 1) and (proj - h).allclose(CPolynomial.zero(body11), atol=1e-8)
    _, value2 = tch_projection(body11, 2 * h, unit_torus)
    assert np.isclose(value2, 2 * value)
    with pytest.raises(ValueError):
        tch_projection(body11, h + 1, unit_torus)


def test_kappa_on_unit_torus(body11, body23, unit_torus):
    for n in (1, 2, 4):
        assert abs(kappa_n(body11, unit_torus, (1, 1), n) - 1) < 0.02
    assert abs(kappa_n(body23, unit_torus, (1, 1), 2) - 1) < 0.02
    # feasible through z2² alone
    assert kappa_n(body23, unit_torus, (0, 1), 1) <= 1 + 1e-9


def test_kappa_scaling(body11):
    base = kappa_n(body11, build_torus(1, 1, 16), (1, 1), 2)
    for r in (0.5, 2.0):
        assert abs(kappa_n(body11, build_torus(r, r, 16), (1, 1), 2) / (r ** 2 * base) - 1) < 0.02


def test_kappa_infeasible(body11, unit_torus):
    with pytest.warns(UserWarning):
        assert kappa_n(body11, unit_torus, (0, 0), 2) == np.inf


def test_tau(body11, unit_torus):
    tc = tau_direction(body11, unit_torus, HypotenuseDirection(0.3), [2, 4, 6, 8], parallel=False)
    assert np.allclose(tc.values, 1.0) and tc.estimate == tc.values[-1]
    assert tc.alphas[-1] == MultiIndex(6, 2)
    assert all(tc.converged)
    r = 2.0
    tc = tau_direction(body11, build_torus(r, r, 16), HypotenuseDirection(0.5), [2, 4])
    assert np.isclose(tc.estimate, r)
    taus = tau_directions(body11, unit_torus, [HypotenuseDirection(t) for t in (0.25, 0.75)], [2, 4])
    assert len(taus) == 2 and all(np.isclose(t.estimate, 1) for t in taus)
    with pytest.raises(ValueError):
        tau_direction(body11, unit_torus, HypotenuseDirection(0.5), [4, 2])


def test_torus_lower_bound(body11, unit_torus):
    p = CPolynomial(body11, {(1, 0): 1, (0, 1): 1})
    assert np.isclose(torus_lower_bound(p, 1, 1), np.sqrt(2))
    assert torus_lower_bound(p, 1, 1) <= sup_norm(p, unit_torus)
    assert np.isclose(torus_lower_bound(mono(body11, 2, 1), 2, 3), 12)
