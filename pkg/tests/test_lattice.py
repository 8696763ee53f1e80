# -*- coding: utf-8 -*-
import numpy as np
import pytest

from cpyx.lattice import (HypotenuseDirection, MultiIndex, TriangleBody, cmp_order, deg_c, direction_index,
                          direction_point, enumerate_basis, homogeneous_line, midpoint_rule, monomials_below, precedes)


def idx(pairs):
    return [MultiIndex(j, k) for j, k in pairs]


def test_body_validation():
    with pytest.raises(ValueError):
        TriangleBody(2, 4)
    with pytest.raises(ValueError):
        TriangleBody(0, 1)
    with pytest.raises(TypeError):
        TriangleBody(1.5, 1)
    with pytest.raises(ValueError):
        MultiIndex(-1, 0)
    with pytest.raises(ValueError):
        HypotenuseDirection(1.0)


def test_deg_c(body11, body23):
    assert deg_c(body11, (0, 0)) == 0
    assert deg_c(body23, (1, 1)) == 1
    assert deg_c(body23, (3, 0)) == 1
    assert deg_c(body23, (4, 0)) == 2


def test_order(body11, body23):
    assert cmp_order(body11, (1, 0), (0, 1)) == -1
    assert cmp_order(body11, (0, 1), (1, 0)) == 1
    assert cmp_order(body23, (2, 3), (2, 3)) == 0
    assert cmp_order(body23, (1, 0), (2, 0)) == -1
    assert precedes(body23, (0, 2), (4, 0))


def test_enumerate_basis(body11, body23):
    b = enumerate_basis(body11, 2)
    assert b.N_n == 6 and b.l_n == 8
    assert list(b) == idx([(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)])

    b = enumerate_basis(body23, 1)
    assert b.N_n == 7
    assert list(b) == idx([(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (1, 1), (0, 2)])

    for body in (body11, body23):
        b0 = enumerate_basis(body, 0)
        assert b0.N_n == 1 and b0.l_n == 0

    with pytest.raises(ValueError):
        enumerate_basis(body11, -1)


@pytest.mark.parametrize("a,b,n", [(1, 1, 5), (2, 3, 3), (3, 1, 4)])
def test_basis_is_strictly_ordered_and_complete(a, b, n):
    body = TriangleBody(a, b)
    basis = enumerate_basis(body, n)
    assert all(precedes(body, x, y) for x, y in zip(basis, list(basis)[1:]))
    assert all(body.contains(al, n) for al in basis)
    brute = {(j, k) for j in range(n * b + 1) for k in range(n * a + 1) if a * j + b * k <= n * a * b}
    assert {(al.j, al.k) for al in basis} == brute
    assert np.array_equal(basis.degrees, [deg_c(body, al) for al in basis])


def test_simplex_count(body11):
    for n in range(6):
        assert enumerate_basis(body11, n).N_n == (n + 1) * (n + 2) // 2


def test_homogeneous_line(body11, body23):
    assert homogeneous_line(body11, 2) == idx([(2, 0), (1, 1), (0, 2)])
    assert homogeneous_line(body23, 1) == idx([(3, 0), (0, 2)])
    assert homogeneous_line(body23, 2) == idx([(6, 0), (3, 2), (0, 4)])


def test_direction_index(body11, body23):
    assert direction_index(body11, HypotenuseDirection(0.5), 4) == MultiIndex(2, 2)
    assert direction_index(body23, HypotenuseDirection(0.5), 2) == MultiIndex(3, 2)
    assert direction_index(body11, HypotenuseDirection(0.7), 10) == MultiIndex(3, 7)
    with pytest.raises(ValueError):
        direction_index(body11, HypotenuseDirection(0.5), 0)
    assert np.allclose(direction_point(body23, HypotenuseDirection(0.25)), [2.25, 0.5])
    assert np.allclose(direction_point(body23, 0.75), [0.75, 1.5])
    with pytest.raises(ValueError):
        HypotenuseDirection(1.0)


def test_basis_helpers(body11):
    basis = enumerate_basis(body11, 2)
    assert basis.position((1, 1)) == 4
    assert basis.prefix(3) == idx([(0, 0), (1, 0), (0, 1)])
    with pytest.raises(ValueError):
        basis.position((3, 0))
    with pytest.raises(ValueError):
        basis.prefix(7)
    assert monomials_below(body11, (1, 1)) == idx([(0, 0), (1, 0), (0, 1), (2, 0)])
    assert MultiIndex(1, 2) + (2, 0) == MultiIndex(3, 2)


def test_midpoint_rule():
    nodes, weights = midpoint_rule(4)
    assert [th.t for th in nodes] == [0.125, 0.375, 0.625, 0.875]
    assert np.isclose(weights.sum(), 1.0)
    with pytest.raises(ValueError):
        midpoint_rule(0)
