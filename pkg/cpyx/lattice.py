# -*- coding: utf-8 -*-
"""
Integer-lattice combinatorics of the triangle body C = co{(0,0),(b,0),(0,a)}:
C-degree, the total order ≺_C, enumeration of the lattice points of nC,
homogeneous top lines and direction targeting on the open hypotenuse.

All membership tests use exact integer arithmetic: (j,k) ∈ nC iff a·j + b·k ≤ n·a·b.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from cpyx.utils import assert_int


#%% Types

@dataclass(frozen=True)
class TriangleBody:
    """
    Triangle with vertices (0,0), (b,0), (0,a), a and b coprime positive integers.
    """
    a: int
    b: int

    def __post_init__(self):
        if not (assert_int(self.a) and assert_int(self.b)):
            raise TypeError(f"Body parameters must be integers, got a={self.a!r}, b={self.b!r}.")
        if self.a < 1 or self.b < 1:
            raise ValueError(f"Body parameters must be >= 1, got a={self.a}, b={self.b}.")
        if math.gcd(self.a, self.b) != 1:
            raise ValueError(f"Body parameters must be coprime, got gcd({self.a},{self.b})={math.gcd(self.a, self.b)}.")
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "b", int(self.b))

    @property
    def ab(self):
        return self.a * self.b

    @property
    def hypotenuse_length(self):
        return math.hypot(self.a, self.b)

    def weight(self, alpha):
        "a·j + b·k, the C-weight of a multi-index."
        j, k = alpha
        return self.a * j + self.b * k

    def contains(self, alpha, n):
        "Exact test (j,k) ∈ nC."
        j, k = alpha
        return j >= 0 and k >= 0 and self.a * j + self.b * k <= n * self.ab

    def __str__(self):
        return f"C(a={self.a}, b={self.b})"


@dataclass(frozen=True)
class MultiIndex:
    j: int
    k: int

    def __post_init__(self):
        if not (assert_int(self.j) and assert_int(self.k)):
            raise TypeError(f"Multi-index entries must be integers, got ({self.j!r}, {self.k!r}).")
        if self.j < 0 or self.k < 0:
            raise ValueError(f"Multi-index entries must be nonnegative, got ({self.j}, {self.k}).")
        object.__setattr__(self, "j", int(self.j))
        object.__setattr__(self, "k", int(self.k))

    def __iter__(self):
        yield self.j
        yield self.k

    def __add__(self, other):
        oj, ok = other
        return MultiIndex(self.j + oj, self.k + ok)

    def __repr__(self):
        return f"({self.j},{self.k})"


def as_index(alpha):
    "Coerces a (j,k) pair to a MultiIndex."
    if isinstance(alpha, MultiIndex):
        return alpha
    j, k = alpha
    return MultiIndex(int(j), int(k))


@dataclass(frozen=True)
class HypotenuseDirection:
    """
    Direction θ = (1-t)·(b,0) + t·(0,a) on the open hypotenuse, 0 < t < 1.
    """
    t: float

    def __post_init__(self):
        t = float(self.t)
        if not 0.0 < t < 1.0:
            raise ValueError(f"Hypotenuse parameter must lie in (0,1), got t={t}.")
        object.__setattr__(self, "t", t)


@dataclass(frozen=True)
class MultiIndexBasis:
    """
    Lattice points of nC sorted by ≺_C.

    Attributes:
    - body: TriangleBody
    - n: int, degree bound
    - indices: tuple of MultiIndex, strictly increasing under ≺_C
    - degrees: int array, deg_C of each entry
    - J, K: int arrays of exponents (for vectorised evaluation)
    """
    body: TriangleBody
    n: int
    indices: tuple
    degrees: np.ndarray = field(repr=False, compare=False)
    J: np.ndarray = field(repr=False, compare=False)
    K: np.ndarray = field(repr=False, compare=False)

    @property
    def N_n(self):
        return len(self.indices)

    @property
    def l_n(self):
        return int(np.sum(self.degrees))

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __getitem__(self, i):
        return self.indices[i]

    def position(self, alpha):
        "Position of alpha in the basis (ValueError if absent)."
        alpha = as_index(alpha)
        for i, beta in enumerate(self.indices):
            if beta == alpha:
                return i
        raise ValueError(f"{alpha} is not a lattice point of {self.n}{self.body}.")

    def prefix(self, count):
        "First count entries, as a list of MultiIndex."
        if count > self.N_n:
            raise ValueError(f"Basis of degree {self.n} has only {self.N_n} entries, {count} requested.")
        return list(self.indices[:count])


#%% Degree and order

def deg_c(body, alpha):
    """
    C-degree of a multi-index: least n with a·α₁ + b·α₂ ≤ n·a·b.
    """
    w = body.weight(as_index(alpha))
    return -(-w // body.ab)


def order_key(body, alpha):
    "Sort key realising ≺_C: C-degree, then α₂, then α₁."
    alpha = as_index(alpha)
    return (deg_c(body, alpha), alpha.k, alpha.j)


def cmp_order(body, alpha, beta):
    """
    Compares two multi-indices under ≺_C.

    Returns -1 if alpha ≺_C beta, 0 if equal, 1 otherwise.
    """
    ka, kb = order_key(body, alpha), order_key(body, beta)
    return (ka > kb) - (ka < kb)


def precedes(body, alpha, beta):
    "True iff alpha ≺_C beta (strictly)."
    return cmp_order(body, alpha, beta) < 0


#%% Enumeration

def enumerate_basis(body, n):
    """
    All lattice points of nC sorted by ≺_C, with their C-degrees.

    Arguments:
    - body: TriangleBody
    - n: int >= 0, degree bound

    Returns:
    - MultiIndexBasis
    """
    if not assert_int(n) or n < 0:
        raise ValueError(f"Degree must be a nonnegative integer, got {n!r}.")
    a, b, nab = body.a, body.b, n * body.ab
    points = []
    for k in range(n * a + 1):
        jmax = (nab - b * k) // a
        for j in range(jmax + 1):
            points.append((j, k))
    points.sort(key=lambda p: (-(-(a * p[0] + b * p[1]) // body.ab), p[1], p[0]))
    indices = tuple(MultiIndex(j, k) for j, k in points)
    J = np.array([p[0] for p in points], dtype=np.int64)
    K = np.array([p[1] for p in points], dtype=np.int64)
    degrees = -((-(a * J + b * K)) // body.ab)
    return MultiIndexBasis(body=body, n=int(n), indices=indices,
                           degrees=degrees.astype(np.int64), J=J, K=K)


def monomials_below(body, alpha):
    """
    Every multi-index β ≺_C alpha (all lie in deg_C(alpha)·C), in ≺_C order.
    """
    alpha = as_index(alpha)
    basis = enumerate_basis(body, deg_c(body, alpha))
    return list(basis.indices[:basis.position(alpha)])


def homogeneous_line(body, n):
    """
    Lattice points on the line a·j + b·k = n·a·b, sorted by ≺_C.
    Exactly n+1 points (j, k) = (b·t, a·(n-t)), t = 0..n.
    """
    if not assert_int(n) or n < 0:
        raise ValueError(f"Degree must be a nonnegative integer, got {n!r}.")
    # ascending k is descending t
    return [MultiIndex(body.b * t, body.a * (n - t)) for t in range(n, -1, -1)]


#%% Directions on the hypotenuse

def direction_point(body, theta):
    "θ = (b(1-t), a·t) for a HypotenuseDirection."
    t = theta.t if isinstance(theta, HypotenuseDirection) else float(theta)
    return np.array([body.b * (1.0 - t), body.a * t])


def direction_index(body, theta, k):
    """
    Multi-index α on homogeneous_line(body, k) minimising |α/k - θ|,
    ties broken toward smaller α₂.

    Arguments:
    - body: TriangleBody
    - theta: HypotenuseDirection
    - k: int >= 1
    """
    if not assert_int(k) or k < 1:
        raise ValueError(f"Direction degree must be a positive integer, got {k!r}.")
    target = direction_point(body, theta)
    line = homogeneous_line(body, k)  # ascending α₂
    pts = np.array([[al.j, al.k] for al in line], dtype=np.float64) / k
    dist = np.hypot(pts[:, 0] - target[0], pts[:, 1] - target[1])
    best = np.min(dist)
    i = int(np.flatnonzero(dist <= best + 1e-12 * max(1.0, best))[0])
    return line[i]


def midpoint_rule(count=16):
    """
    Composite midpoint nodes t_i = (i+1/2)/count on the open hypotenuse,
    with equal weights 1/count.

    Returns:
    - nodes: list of HypotenuseDirection
    - weights: float array summing to 1
    """
    if not assert_int(count) or count < 1:
        raise ValueError(f"Number of quadrature nodes must be a positive integer, got {count!r}.")
    nodes = [HypotenuseDirection((i + 0.5) / count) for i in range(count)]
    return nodes, np.full(count, 1.0 / count)
