# -*- coding: utf-8 -*-
import numpy as np
import pytest

from cpyx.cpoly import (CPoint, CPolynomial, circle_act, compose_circle, evaluate, evaluate_logabs,
                        evaluation_matrix, hat, homogeneous_part, multiply)
from cpyx.lattice import MultiIndex, TriangleBody
from cpyx.testing import random_boundary_point, random_polynomial
from cpyx.utils import RangeError


def poly(body, terms):
    return CPolynomial(body, terms)


def test_evaluate(body11):
    assert evaluate(CPolynomial.constant(body11), (3 - 1j, 7)) == 1
    assert np.isclose(evaluate(poly(body11, {(1, 1): 1}), (2, 3j)), 6j)
    assert np.isclose(evaluate(poly(body11, {(2, 0): 1, (0, 1): 1}), (1 + 1j, 0)), 2j)
    pts = np.array([[1, 1], [2, 3j], [0, 0]])
    assert np.allclose(evaluate(poly(body11, {(1, 1): 1, (0, 0): 2}), pts), [3, 2 + 6j, 2])


def test_evaluate_matches_dense_sum(body23, rng):
    p = random_polynomial(body23, 3, rng)
    z = rng.standard_normal((50, 2)) + 1j * rng.standard_normal((50, 2))
    direct = sum(c * z[:, 0] ** al.j * z[:, 1] ** al.k for al, c in p.terms.items())
    assert np.allclose(evaluate(p, z), direct)
    assert np.allclose(evaluation_matrix([p], z)[:, 0], direct)
    assert np.allclose(evaluate_logabs(p, z), np.log(np.abs(direct)))


def test_evaluate_logabs(body11):
    assert np.isclose(evaluate_logabs(CPolynomial.monomial(body11, (100, 0)), (np.e, 0)), 100)
    assert evaluate_logabs(CPolynomial.zero(body11), (1, 2)) == -np.inf
    z1 = CPolynomial.monomial(body11, (1, 0))
    cancelled = z1 - z1
    assert cancelled.is_zero() and len(cancelled) == 0
    assert evaluate_logabs(cancelled, (1, 1)) == -np.inf


def test_overflow_is_reported_and_logabs_stays_finite(body11):
    p = CPolynomial.monomial(body11, (400, 0))
    with pytest.raises(RangeError):
        evaluate(p, (1e300, 0))
    assert np.isclose(evaluate_logabs(p, (1e300, 0)), 400 * np.log(1e300))


def test_multiply(body11):
    z1 = CPolynomial.monomial(body11, (1, 0))
    z2 = CPolynomial.monomial(body11, (0, 1))
    assert multiply(z1, z2) == CPolynomial.monomial(body11, (1, 1))
    assert (z1 + 1) * (z1 - 1) == poly(body11, {(2, 0): 1, (0, 0): -1})
    assert multiply(z1, CPolynomial.zero(body11)).is_zero()
    with pytest.raises(ValueError):
        z1 + CPolynomial.monomial(TriangleBody(2, 3), (1, 0))


def test_degree_and_leading_index(body23):
    p = poly(body23, {(4, 0): 1, (0, 2): 1, (1, 0): 3})
    assert p.cdeg == 2
    assert p.leading_index == MultiIndex(4, 0)
    assert CPolynomial.zero(body23).cdeg == 0
    assert CPolynomial.zero(body23).leading_index is None
    assert p.coefficient((1, 0)) == 3 and p.coefficient((5, 5)) == 0


def test_circle_act(body23):
    assert circle_act(body23, 2, (1, 1)) == CPoint(4, 8)
    z = np.array([[1 + 2j, -3], [0.5j, 2]])
    assert np.allclose(circle_act(body23, 1, z), z)


def test_compose_circle(body23, rng):
    p = random_polynomial(body23, 2, rng)
    z = rng.standard_normal((10, 2)) + 1j * rng.standard_normal((10, 2))
    lam = 0.7 * np.exp(0.3j)
    assert np.allclose(evaluate(compose_circle(p, lam), z), evaluate(p, circle_act(body23, lam, z)))


def test_hat(body11, body23):
    p = poly(body11, {(2, 0): 1, (1, 1): 1, (1, 0): 1})
    assert hat(p) == poly(body11, {(2, 0): 1, (1, 1): 1})
    q = poly(body23, {(3, 0): 1, (0, 2): 1, (1, 1): 1})
    assert q.hat() == poly(body23, {(3, 0): 1, (0, 2): 1})
    assert hat(poly(body23, {(1, 1): 1})).is_zero()
    assert homogeneous_part(q, 5) == poly(body23, {(1, 1): 1})
    assert homogeneous_part(p + 4, 0) == CPolynomial.constant(body11, 4)


def test_hat_is_multiplicative(body23, rng):
    p = random_polynomial(body23, 2, rng)
    q = random_polynomial(body23, 1, rng)
    assert hat(p * q).allclose(hat(p) * hat(q), rtol=1e-12)


def test_robin_extraction_limit(body11):
    p = poly(body11, {(2, 0): 1, (1, 1): 1, (1, 0): 1})
    zeta = (1.0, 0.5)
    limit = evaluate_logabs(hat(p), zeta) / 2
    errors = [abs((evaluate_logabs(p, circle_act(body11, lam, zeta)) - 2 * np.log(lam)) / 2 - limit)
              for lam in (1e3, 1e6)]
    assert errors[1] < errors[0]
    assert errors[1] < 1e-3


def test_robin_limit_on_random_polynomials(body23, rng):
    for _ in range(5):
        p = random_polynomial(body23, 2, rng)
        zeta = random_boundary_point(rng)
        limit = evaluate_logabs(hat(p), zeta) / p.cdeg
        lam = 1e6
        approx = (evaluate_logabs(p, circle_act(body23, lam, zeta)) - p.cdeg * body23.ab * np.log(lam)) / p.cdeg
        assert abs(approx - limit) < 1e-3


def test_from_arrays_sums_duplicates(body11):
    p = CPolynomial.from_arrays(body11, [1, 1, 0], [0, 0, 0], [1.0, 2.0, 0.0])
    assert p == poly(body11, {(1, 0): 3})
    with pytest.raises(ValueError):
        CPolynomial.from_arrays(body11, [1], [0, 1], [1.0])
