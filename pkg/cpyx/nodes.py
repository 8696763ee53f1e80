# -*- coding: utf-8 -*-
"""
Vandermonde machinery on discrete compacts: log|VDM|, greedy Fekete points,
C-Leja sequences, transfinite diameter estimates V_n^{1/l_n}, Lagrange
bases, Lebesgue constants and the Lagrange-difference family.

Determinants are only ever handled as sums of pivot log-moduli.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
import scipy.linalg

from cpyx.cpoly import CPolynomial, as_points, evaluate, monomial_matrix
from cpyx.gl import CARDINAL_TOL, TIE_RTOL
from cpyx.lattice import MultiIndexBasis, enumerate_basis
from cpyx.utils import StructuralError, UnisolvenceError, argmax_tiebreak, log_abs, vprint

#%% Types


@dataclass(frozen=True, eq=False)
class NodeSet:
    """
    Ordered selection of points of a discrete compact.

    Attributes:
    - points: (s, 2) complex array, in selection order
    - basis: MultiIndexBasis; the VDM uses its first s monomials
    - log_vdm: float, log|VDM(points)| (-inf if singular)
    - log_pivots: float array, per-step pivot log-moduli of the selection
    - indices: int array, positions of the points in the candidate set
    - kind: str, 'fekete', 'leja' or 'given'
    """
    points: np.ndarray
    basis: MultiIndexBasis
    log_vdm: float
    log_pivots: np.ndarray = field(default=None, repr=False)
    indices: np.ndarray = field(default=None, repr=False)
    kind: str = "given"

    def __len__(self):
        return int(self.points.shape[0])

    @property
    def monomials(self):
        return self.basis.prefix(len(self))

    def recompute_log_vdm(self):
        return vdm_logabs(self.points, self.monomials)

    def prefix(self, count):
        "First count nodes (a Leja prefix is itself a Leja sequence)."
        if count > len(self):
            raise ValueError(f"Node set has {len(self)} points, {count} requested.")
        pts = self.points[:count]
        pivots = None if self.log_pivots is None else self.log_pivots[:count]
        idx = None if self.indices is None else self.indices[:count]
        log_vdm = float(np.sum(pivots)) if self.kind == "leja" else vdm_logabs(pts, self.basis.prefix(count))
        return NodeSet(pts, self.basis, log_vdm, pivots, idx, self.kind)

    def to_frame(self):
        "One row per node: order, re1, im1, re2, im2, log_pivot."
        pivots = np.full(len(self), np.nan) if self.log_pivots is None else self.log_pivots
        return pd.DataFrame({"order": np.arange(len(self)),
                             "re1": self.points[:, 0].real, "im1": self.points[:, 0].imag,
                             "re2": self.points[:, 1].real, "im2": self.points[:, 1].imag,
                             "log_pivot": pivots})


@dataclass(frozen=True, eq=False)
class LagrangeBasis:
    """
    Cardinal polynomials ℓ_j of a unisolvent node set: ℓ_j(node_k) = δ_jk.

    Attributes:
    - nodes: NodeSet
    - cardinals: list of CPolynomial
    - coef_matrix: (s, s) complex array, ℓ_j = Σ_i coef_matrix[i, j] z^{monomials[i]}
    """
    nodes: NodeSet
    cardinals: list = field(repr=False)
    coef_matrix: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.cardinals)

    def cardinal_values(self, z):
        "(M, s) array of ℓ_j(z_m)."
        pts, _ = as_points(z)
        monos = self.nodes.monomials
        J = np.array([al.j for al in monos])
        K = np.array([al.k for al in monos])
        return monomial_matrix(J, K, pts) @ self.coef_matrix

    def interpolate(self, values):
        "The polynomial Σ values_j ℓ_j, values given at the nodes."
        values = np.asarray(values, dtype=np.complex128).ravel()
        if values.shape[0] != len(self):
            raise ValueError(f"{values.shape[0]} values for {len(self)} nodes.")
        monos = self.nodes.monomials
        coefs = self.coef_matrix @ values
        return CPolynomial(self.nodes.basis.body, zip(monos, coefs))

    def interpolate_polynomial(self, p):
        "Lagrange interpolant of p at the nodes."
        return self.interpolate(evaluate(p, self.nodes.points))


#%% Vandermonde determinants

def _monos_arrays(basis):
    if isinstance(basis, MultiIndexBasis):
        return basis.J, basis.K
    return np.array([al.j for al in basis], dtype=np.int64), np.array([al.k for al in basis], dtype=np.int64)


def vdm_logabs(points, basis):
    """
    log|det[e_i(z_j)]| by LU with partial pivoting on the column-equilibrated
    evaluation matrix. -inf for singular configurations.

    Arguments:
    - points: (N, 2) complex array
    - basis: MultiIndexBasis or list of N multi-indices

    Returns:
    - float
    """
    pts, _ = as_points(points)
    J, K = _monos_arrays(basis)
    if pts.shape[0] != J.shape[0]:
        raise ValueError(f"{pts.shape[0]} points for a basis of {J.shape[0]} monomials.")
    V = monomial_matrix(J, K, pts)
    scale = np.max(np.abs(V), axis=0)
    if np.any(scale == 0):
        return -np.inf
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, _ = scipy.linalg.lu_factor(V / scale, check_finite=False)
    return float(np.sum(log_abs(np.diag(lu))) + np.sum(np.log(scale)))


#%% Greedy selections

def greedy_fekete(body, K, n, verbose=False):
    """
    Approximate Fekete points of degree n: greedy pivoted Gram-Schmidt on the
    rows of the K-orthonormalised evaluation matrix. The (s+1)-th point has the
    largest residual norm against the span of the first s, ties to the lowest index.

    Arguments:
    - body: TriangleBody
    - K: DiscreteCompact
    - n: int >= 0

    Returns:
    - NodeSet of N_n points, log_vdm = Σ log pivots + log|det R|
    """
    basis = enumerate_basis(body, n)
    N = basis.N_n
    pts = K.points
    if pts.shape[0] < N:
        raise StructuralError(f"{pts.shape[0]} candidate points for {N} Fekete points of degree {n}.")
    V = monomial_matrix(basis.J, basis.K, pts)
    Q, R = scipy.linalg.qr(V, mode="economic", check_finite=False)
    log_det_r = float(np.sum(log_abs(np.diag(R))))
    if not np.isfinite(log_det_r):
        raise StructuralError(f"{K.label} is not determining for polynomials of degree {n}.")

    res = Q.copy()
    norms = np.sum(np.abs(res) ** 2, axis=1)
    free = np.ones(pts.shape[0], dtype=bool)
    chosen, log_pivots = [], []
    for _ in range(N):
        i = argmax_tiebreak(norms, TIE_RTOL, mask=free)
        piv = np.sqrt(norms[i]) if i >= 0 else 0.0
        if piv <= 1e-13:
            raise StructuralError(f"Greedy Fekete selection stalled after {len(chosen)} of {N} points.")
        u = res[i] / piv
        res -= np.outer(res @ np.conj(u), u)
        norms = np.sum(np.abs(res) ** 2, axis=1)
        free[i] = False
        chosen.append(i)
        log_pivots.append(np.log(piv))
    log_pivots = np.array(log_pivots)
    idx = np.array(chosen)
    log_vdm = float(np.sum(log_pivots) + log_det_r)
    vprint(f"Fekete degree {n} on {K.label}: {N} points, log|VDM| = {log_vdm:.6f}.", verbose)
    return NodeSet(pts[idx], basis, log_vdm, log_pivots, idx, "fekete")


def leja_sequence(body, K, count, verbose=False):
    """
    C-Leja sequence of length count: LU with partial pivoting, column by column,
    on the evaluation matrix of the first count monomials. Point s+1 maximises
    the modulus of the s+1-th pivot, ties to the lowest index. Nested in count.

    Arguments:
    - body: TriangleBody
    - K: DiscreteCompact
    - count: int >= 1

    Returns:
    - NodeSet whose basis is the smallest full basis with at least count monomials
    """
    if count < 1:
        raise ValueError(f"Leja sequences need at least one point, got count={count}.")
    pts = K.points
    if pts.shape[0] < count:
        raise StructuralError(f"{pts.shape[0]} candidate points for {count} Leja points.")
    n = 0
    while enumerate_basis(body, n).N_n < count:
        n += 1
    basis = enumerate_basis(body, n)
    W = monomial_matrix(basis.J[:count], basis.K[:count], pts)
    free = np.ones(pts.shape[0], dtype=bool)
    chosen, log_pivots = [], []
    for s in range(count):
        col = W[:, s]
        i = argmax_tiebreak(np.abs(col), TIE_RTOL, mask=free)
        if i < 0 or col[i] == 0:
            raise StructuralError(f"Leja selection stalled after {s} of {count} points on {K.label}.")
        W[:, s + 1:] -= np.outer(col / col[i], W[i, s + 1:])
        free[i] = False
        chosen.append(i)
        log_pivots.append(float(np.log(np.abs(col[i]))))
    log_pivots = np.array(log_pivots)
    idx = np.array(chosen)
    vprint(f"Leja sequence of {count} points on {K.label}.", verbose)
    return NodeSet(pts[idx], basis, float(np.sum(log_pivots)), log_pivots, idx, "leja")


def delta_estimate_vdm(body, K, n_list, verbose=False):
    """
    Transfinite diameter estimates exp(log|VDM(Fekete_n)| / l_n).
    The greedy value is a lower proxy for log V_n; the last entry is the headline value.

    Returns:
    - list of (n, estimate)
    """
    ns = [int(n) for n in n_list]
    if len(ns) == 0 or any(n1 >= n2 for n1, n2 in zip(ns, ns[1:])) or ns[0] < 1:
        raise ValueError(f"Degrees must be a nonempty strictly ascending list of positive integers, got {n_list}.")
    out = []
    for n in ns:
        fek = greedy_fekete(body, K, n)
        out.append((n, float(np.exp(fek.log_vdm / fek.basis.l_n))))
        vprint(f"δ_vdm(n={n}) = {out[-1][1]:.6f}", verbose)
    return out


#%% Lagrange interpolation

def lagrange_basis(nodes):
    """
    Cardinal polynomials of a unisolvent NodeSet, by solving the Vandermonde system.

    Raises UnisolvenceError for singular nodes or if the cardinal property fails to 1e-8.
    """
    if not np.isfinite(nodes.recompute_log_vdm()):
        raise UnisolvenceError(f"{len(nodes)} nodes are not unisolvent for their monomials.")
    monos = nodes.monomials
    J, K = _monos_arrays(monos)
    V = monomial_matrix(J, K, nodes.points)
    eye = np.eye(len(monos), dtype=np.complex128)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            C = scipy.linalg.solve(V, eye, check_finite=False)
    except np.linalg.LinAlgError as err:
        raise UnisolvenceError(f"Vandermonde system is singular: {err}")
    defect = float(np.max(np.abs(V @ C - eye)))
    if not defect <= CARDINAL_TOL:
        raise UnisolvenceError(f"Cardinal property fails by {defect:.3g} (> {CARDINAL_TOL}).")
    body = nodes.basis.body
    cardinals = [CPolynomial(body, zip(monos, C[:, j])) for j in range(len(monos))]
    return LagrangeBasis(nodes, cardinals, C)


def lebesgue_constant(basis, K, chunk=4096):
    """
    Λ = max over the points of K of Σ_j |ℓ_j(z)|.

    Arguments:
    - basis: LagrangeBasis
    - K: DiscreteCompact
    """
    pts = K.points
    lam = 0.0
    for start in range(0, pts.shape[0], chunk):
        lam = max(lam, float(np.max(np.sum(np.abs(basis.cardinal_values(pts[start:start + chunk])), axis=1))))
    return lam


def lagrange_difference_family(body, K, leja=None, s_max=None):
    """
    p_s = z^{α(s)} - L_{s-1}(z^{α(s)}), s = 2..s_max, with α(s) the s-th monomial
    in ≺_C order and L_{s-1} the interpolant at the first s-1 Leja points.
    Each p_s vanishes at those points and is monic with lower terms ≺_C α(s).

    Arguments:
    - body: TriangleBody
    - K: DiscreteCompact, candidate set of the Leja sequence if leja is None
    - leja: NodeSet with at least s_max points (computed on K if None)
    - s_max: int >= 2 (defaults to len(leja))

    Returns:
    - list of CPolynomial, p_2..p_{s_max}
    """
    if leja is None:
        if s_max is None:
            raise ValueError("Either a Leja sequence or s_max must be given.")
        leja = leja_sequence(body, K, s_max)
    s_max = len(leja) if s_max is None else int(s_max)
    if len(leja) < s_max:
        raise ValueError(f"Leja sequence has {len(leja)} points, {s_max} needed.")
    if s_max < 2:
        raise ValueError(f"s_max must be >= 2, got {s_max}.")
    monos = leja.basis.prefix(s_max)
    family = []
    for s in range(2, s_max + 1):
        alpha = monos[s - 1]
        target = CPolynomial.monomial(body, alpha)
        lb = lagrange_basis(leja.prefix(s - 1))
        family.append(target - lb.interpolate_polynomial(target))
    return family


def leja_lebesgue_profile(body, K, degrees, verbose=False):
    """
    Lebesgue constants of C-Leja arrays of full degree d on K, for d in degrees.
    Λ^{1/d} should grow subexponentially (this is a regression value, not a theorem).

    Returns:
    - pandas DataFrame with columns degree, N, lebesgue, growth
    """
    degrees = sorted(int(d) for d in degrees)
    if len(degrees) == 0:
        raise ValueError("At least one degree is needed.")
    leja = leja_sequence(body, K, enumerate_basis(body, degrees[-1]).N_n)
    rows = []
    for d in degrees:
        N = enumerate_basis(body, d).N_n
        lam = lebesgue_constant(lagrange_basis(leja.prefix(N)), K)
        rows.append({"degree": d, "N": N, "lebesgue": lam, "growth": lam ** (1.0 / d) if d > 0 else np.nan})
        vprint(f"Leja degree {d}: Λ = {lam:.4f}", verbose)
    return pd.DataFrame(rows)
