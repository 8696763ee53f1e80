# -*- coding: utf-8 -*-
"""
Complex polynomials over the C-lattice.

A CPolynomial stores its nonzero terms as three aligned arrays (exponents J, K
and complex coefficients) sorted by ≺_C. Exactly-zero coefficients are dropped,
nothing else is pruned, so the C-degree and the hat are never altered by rounding.

Points are handled as (M, 2) complex arrays; a single CPoint (or any pair)
is accepted wherever points are.
"""

from typing import NamedTuple

import numpy as np
from numba import njit

from cpyx.lattice import MultiIndex, as_index, deg_c, order_key
from cpyx.utils import RangeError, log_abs, repr_string


class CPoint(NamedTuple):
    z1: complex
    z2: complex


def as_points(z):
    """
    Coerces z to a (M, 2) complex128 array.

    Returns:
    - points: (M, 2) array
    - single: bool, whether z was a single point
    """
    arr = np.asarray(z, dtype=np.complex128)
    if arr.ndim == 1:
        if arr.shape[0] != 2:
            raise ValueError(f"A point of C² has 2 coordinates, got shape {arr.shape}.")
        return arr.reshape(1, 2), True
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"Points must have shape (M, 2), got {arr.shape}.")
    return arr, False


#%% numba kernels

@njit(cache=True)
def _horner2d(D, z1, z2):
    """
    Row-grouped Horner scheme: D[k, j] is the coefficient of z1^j z2^k.
    Each row is accumulated in z1, then rows are accumulated in z2.
    """
    M = z1.shape[0]
    nk, nj = D.shape
    out = np.empty(M, dtype=np.complex128)
    for m in range(M):
        acc = 0j
        for k in range(nk - 1, -1, -1):
            row = 0j
            for j in range(nj - 1, -1, -1):
                row = row * z1[m] + D[k, j]
            acc = acc * z2[m] + row
        out[m] = acc
    return out


#%% Polynomial type

class CPolynomial:
    """
    Sparse complex polynomial p(z) = Σ c_jk z1^j z2^k on a TriangleBody.

    Arguments:
    - body: TriangleBody
    - terms: mapping {(j,k): coefficient} or iterable of ((j,k), coefficient).
             Repeated exponents are summed, exact zeros dropped.
    """

    def __init__(self, body, terms=None):
        acc = {}
        if terms is not None:
            items = terms.items() if hasattr(terms, "items") else terms
            for alpha, c in items:
                alpha = as_index(alpha)
                acc[alpha] = acc.get(alpha, 0j) + complex(c)
        self._set(body, acc)

    def _set(self, body, acc):
        self.body = body
        keys = sorted((al for al, c in acc.items() if c != 0), key=lambda al: order_key(body, al))
        self.J = np.array([al.j for al in keys], dtype=np.int64)
        self.K = np.array([al.k for al in keys], dtype=np.int64)
        self.coefs = np.array([acc[al] for al in keys], dtype=np.complex128)
        self.cdeg = max((deg_c(body, al) for al in keys), default=0)
        self._dense = None

    @classmethod
    def from_arrays(cls, body, J, K, coefs):
        "Builds a polynomial from aligned exponent/coefficient arrays (duplicates summed)."
        J = np.asarray(J, dtype=np.int64).ravel()
        K = np.asarray(K, dtype=np.int64).ravel()
        coefs = np.asarray(coefs, dtype=np.complex128).ravel()
        if not (J.shape == K.shape == coefs.shape):
            raise ValueError("Exponent and coefficient arrays must be aligned.")
        if J.size and (J.min() < 0 or K.min() < 0):
            raise ValueError("Exponents must be nonnegative.")
        p = cls.__new__(cls)
        if J.size == 0:
            p._set(body, {})
            return p
        keys, inv = np.unique(np.stack([J, K], axis=1), axis=0, return_inverse=True)
        inv = inv.ravel()
        re = np.bincount(inv, weights=coefs.real, minlength=len(keys))
        im = np.bincount(inv, weights=coefs.imag, minlength=len(keys))
        p._set(body, {MultiIndex(int(j), int(k)): complex(r, i)
                      for (j, k), r, i in zip(keys, re, im)})
        return p

    @classmethod
    def zero(cls, body):
        return cls(body)

    @classmethod
    def constant(cls, body, c=1.0):
        return cls(body, {(0, 0): c})

    @classmethod
    def monomial(cls, body, alpha, c=1.0):
        return cls(body, {as_index(alpha): c})

    #%% inspection

    @property
    def terms(self):
        "{MultiIndex: coefficient}, in ≺_C order."
        return {MultiIndex(int(j), int(k)): complex(c) for j, k, c in zip(self.J, self.K, self.coefs)}

    @property
    def weights(self):
        "a·j + b·k of each stored term."
        return self.body.a * self.J + self.body.b * self.K

    def is_zero(self):
        return self.coefs.size == 0

    def __len__(self):
        return int(self.coefs.size)

    def coefficient(self, alpha):
        j, k = alpha
        hit = np.flatnonzero((self.J == j) & (self.K == k))
        return complex(self.coefs[hit[0]]) if hit.size else 0j

    @property
    def leading_index(self):
        "≺_C-largest exponent of the support (None for the zero polynomial)."
        if self.is_zero():
            return None
        return MultiIndex(int(self.J[-1]), int(self.K[-1]))

    def allclose(self, other, rtol=1e-12, atol=0.0):
        "Coefficient-wise comparison over the union of supports."
        self._check_body(other)
        keys = set(self.terms) | set(other.terms)
        scale = max(np.max(np.abs(self.coefs), initial=0.0), np.max(np.abs(other.coefs), initial=0.0))
        return all(abs(self.coefficient(al) - other.coefficient(al)) <= atol + rtol * scale for al in keys)

    def __eq__(self, other):
        if not isinstance(other, CPolynomial):
            return NotImplemented
        return self.body == other.body and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            return f"CPolynomial({self.body}, 0)"
        body = " + ".join(f"({c:.4g})z^{al}" for al, c in list(self.terms.items())[:6])
        more = " + ..." if len(self) > 6 else ""
        return f"CPolynomial({self.body}, deg_C={self.cdeg}: {body}{more})"

    def describe(self):
        return f"C-polynomial with attributes and methods:\n\t{repr_string(self)}"

    #%% arithmetic

    def _check_body(self, other):
        if other.body != self.body:
            raise ValueError(f"Polynomials live on different bodies: {self.body} vs {other.body}.")

    def __add__(self, other):
        if not isinstance(other, CPolynomial):
            other = CPolynomial.constant(self.body, other)
        self._check_body(other)
        return CPolynomial.from_arrays(self.body, np.concatenate([self.J, other.J]),
                                       np.concatenate([self.K, other.K]),
                                       np.concatenate([self.coefs, other.coefs]))

    __radd__ = __add__

    def __neg__(self):
        return CPolynomial.from_arrays(self.body, self.J, self.K, -self.coefs)

    def __sub__(self, other):
        if not isinstance(other, CPolynomial):
            other = CPolynomial.constant(self.body, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CPolynomial):
            return multiply(self, other)
        return CPolynomial.from_arrays(self.body, self.J, self.K, self.coefs * complex(other))

    __rmul__ = __mul__

    def __call__(self, z):
        return evaluate(self, z)

    def hat(self):
        return hat(self)

    #%% serialisation

    def to_dict(self):
        return {"a": self.body.a, "b": self.body.b,
                "terms": [{"j": int(j), "k": int(k), "re": float(c.real), "im": float(c.imag)}
                          for j, k, c in zip(self.J, self.K, self.coefs)]}

    @classmethod
    def from_dict(cls, d):
        from cpyx.lattice import TriangleBody
        body = TriangleBody(int(d["a"]), int(d["b"]))
        return cls(body, [((t["j"], t["k"]), complex(t["re"], t.get("im", 0.0))) for t in d["terms"]])

    def _dense_matrix(self):
        if self._dense is None:
            D = np.zeros((int(self.K.max(initial=0)) + 1, int(self.J.max(initial=0)) + 1), dtype=np.complex128)
            D[self.K, self.J] = self.coefs
            self._dense = D
        return self._dense


#%% Evaluation

def evaluate(p, z):
    """
    p(z) by a row-grouped Horner scheme.

    Arguments:
    - p: CPolynomial
    - z: CPoint, pair or (M, 2) array of points

    Returns:
    - complex (single point) or (M,) complex array

    Raises RangeError if the value overflows for finite input,
    in which case evaluate_logabs should be used instead.
    """
    pts, single = as_points(z)
    if p.is_zero():
        out = np.zeros(pts.shape[0], dtype=np.complex128)
    else:
        with np.errstate(over="ignore", invalid="ignore"):
            out = _horner2d(p._dense_matrix(), np.ascontiguousarray(pts[:, 0]), np.ascontiguousarray(pts[:, 1]))
        bad = ~np.isfinite(out) & np.all(np.isfinite(pts), axis=1)
        if np.any(bad):
            m = int(np.flatnonzero(bad)[0])
            raise RangeError(f"Evaluation of a degree-{p.cdeg} polynomial overflows at z={tuple(pts[m])}; "
                             "use evaluate_logabs.")
    return complex(out[0]) if single else out


def term_logs(J, K, pts):
    """
    Log-moduli and arguments of the monomials z^(J,K) at points, shape (M, T).
    z^0 is 1 even where the coordinate vanishes.
    """
    l1, l2 = log_abs(pts[:, 0])[:, None], log_abs(pts[:, 1])[:, None]
    a1, a2 = np.angle(pts[:, 0])[:, None], np.angle(pts[:, 1])[:, None]
    with np.errstate(invalid="ignore"):
        logmod = np.where(J[None, :] > 0, J[None, :] * l1, 0.0) + np.where(K[None, :] > 0, K[None, :] * l2, 0.0)
    arg = J[None, :] * a1 + K[None, :] * a2
    return logmod, arg


def evaluate_logabs(p, z, chunk=4096):
    """
    log|p(z)| with per-point rebasing on the largest term, finite whenever
    log|p(z)| is representable even if p(z) itself overflows. -inf iff p(z)=0.

    Arguments:
    - p: CPolynomial
    - z: CPoint, pair or (M, 2) array of points
    - chunk: int, number of points processed at once

    Returns:
    - float (single point) or (M,) float array
    """
    pts, single = as_points(z)
    out = np.full(pts.shape[0], -np.inf)
    if not p.is_zero():
        lc, ac = log_abs(p.coefs)[None, :], np.angle(p.coefs)[None, :]
        for start in range(0, pts.shape[0], chunk):
            sl = slice(start, start + chunk)
            logmod, arg = term_logs(p.J, p.K, pts[sl])
            logmod = logmod + lc
            top = np.max(logmod, axis=1)
            live = np.isfinite(top)
            with np.errstate(invalid="ignore", under="ignore"):
                s = np.sum(np.exp(logmod - top[:, None] + 1j * (arg + ac)), axis=1)
            res = np.full(s.shape, -np.inf)
            res[live] = top[live] + log_abs(s[live])
            out[sl] = res
    return float(out[0]) if single else out


def monomial_matrix(J, K, z):
    """
    Evaluation matrix V[m, i] = z_m^(J_i, K_i), shape (M, T).
    """
    pts, _ = as_points(z)
    J, K = np.asarray(J), np.asarray(K)
    return np.power(pts[:, 0:1], J[None, :]) * np.power(pts[:, 1:2], K[None, :])


def evaluation_matrix(polys, z):
    """
    Columns are the polynomials of polys evaluated at z, shape (M, len(polys)).
    Single-term polynomials are evaluated as scaled monomials.
    """
    pts, _ = as_points(z)
    A = np.empty((pts.shape[0], len(polys)), dtype=np.complex128)
    for i, q in enumerate(polys):
        if len(q) == 1:
            A[:, i] = q.coefs[0] * monomial_matrix(q.J, q.K, pts)[:, 0]
        else:
            A[:, i] = evaluate(q, pts)
    return A


#%% Algebra

def multiply(p, q):
    """
    Product p·q by coefficient convolution. Only exact zeros are pruned.
    """
    p._check_body(q)
    if p.is_zero() or q.is_zero():
        return CPolynomial.zero(p.body)
    J = (p.J[:, None] + q.J[None, :]).ravel()
    K = (p.K[:, None] + q.K[None, :]).ravel()
    C = (p.coefs[:, None] * q.coefs[None, :]).ravel()
    return CPolynomial.from_arrays(p.body, J, K, C)


def circle_act(body, lam, z):
    """
    λ∘(z1, z2) = (λ^a z1, λ^b z2).

    Returns the same kind of object as z (CPoint for a single point, array otherwise).
    """
    pts, single = as_points(z)
    lam = complex(lam)
    out = np.stack([lam ** body.a * pts[:, 0], lam ** body.b * pts[:, 1]], axis=1)
    return CPoint(complex(out[0, 0]), complex(out[0, 1])) if single else out


def compose_circle(p, lam):
    """
    The polynomial z ↦ p(λ∘z): coefficient c_jk becomes c_jk·λ^(a·j + b·k).
    With lam = 1/λ0 this is the pushforward of p under λ0∘.
    """
    lam = complex(lam)
    if lam == 0:
        return CPolynomial.constant(p.body, p.coefficient((0, 0)))
    w = p.weights
    scale = np.exp(w * np.log(lam))
    return CPolynomial.from_arrays(p.body, p.J, p.K, p.coefs * scale)


def homogeneous_part(p, l):
    """
    Terms of p with a·j + b·k = l.
    """
    keep = p.weights == int(l)
    return CPolynomial.from_arrays(p.body, p.J[keep], p.K[keep], p.coefs[keep])


def hat(p):
    """
    Top C-homogeneous part: the terms of p on a·j + b·k = deg_C(p)·a·b.
    May be the zero polynomial (the top line need not be populated).
    """
    if p.is_zero():
        return CPolynomial.zero(p.body)
    return homogeneous_part(p, p.cdeg * p.body.ab)
