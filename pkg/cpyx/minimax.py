# -*- coding: utf-8 -*-
"""
Discrete complex Chebyshev (sup-norm) problems.

solve_minimax is a Lawson iteratively reweighted least-squares kernel:
min over c of max_{z∈K} |f(z) + Σ c_i e_i(z)|, optionally subject to one
complex linear equality g·c = t. Built on it: monic Chebyshev polynomials
t_{k,α}, the Tch_K projection of a homogeneous polynomial and the
pointwise Chebyshev constants κ_n(K, ζ).
"""

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from joblib import Parallel, delayed

from cpyx.cpoly import CPolynomial, as_points, evaluate, evaluation_matrix
from cpyx.domain import sup_norm
from cpyx.gl import (DEFAULT_MAX_ITER, DEFAULT_TOL, LAWSON_CONSECUTIVE, LAWSON_WEIGHT_FLOOR,
                     cache_memory, get_n_threads)
from cpyx.lattice import deg_c, direction_index, enumerate_basis, homogeneous_line, precedes
from cpyx.utils import PivotError, StructuralError, cache_validation_again, vprint, yellow_prefix

#%% Types


@dataclass(frozen=True, eq=False)
class MinimaxProblem:
    """
    min ||fixed_part + Σ c_i free_basis[i]||_K, optionally with g·c = target.

    Attributes:
    - fixed_part: CPolynomial, not optimised
    - free_basis: list of CPolynomial, span of the adjustable terms
    - K: DiscreteCompact
    - constraint: None or (g, target), g a complex vector aligned with free_basis
    """
    fixed_part: CPolynomial
    free_basis: list
    K: object
    constraint: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "free_basis", list(self.free_basis))
        if self.constraint is not None:
            g, target = self.constraint
            g = np.asarray(g, dtype=np.complex128).ravel()
            if g.shape[0] != len(self.free_basis):
                raise ValueError(f"Constraint functional has {g.shape[0]} entries "
                                 f"for {len(self.free_basis)} free coefficients.")
            if not np.any(g != 0):
                raise ValueError("Constraint functional must be nonzero.")
            object.__setattr__(self, "constraint", (g, complex(target)))


@dataclass(frozen=True, eq=False)
class MinimaxSolution:
    """
    Attributes:
    - coefficients: complex array aligned with the free basis
    - value: float, sup-norm on K of the assembled polynomial
    - iterations: int
    - residual_history: list of per-iterate objectives
    - converged: bool
    - polynomial: CPolynomial, fixed_part + Σ c_i free_basis[i]
    - pivot: int or None, free coordinate eliminated through the constraint
    """
    coefficients: np.ndarray
    value: float
    iterations: int
    residual_history: list = field(repr=False)
    converged: bool
    polynomial: CPolynomial = field(repr=False)
    pivot: int = None

    def to_dict(self):
        return {"value": self.value,
                "iterations": self.iterations,
                "converged": bool(self.converged),
                "residual_history": [float(v) for v in self.residual_history],
                "coefficients": [[float(c.real), float(c.imag)] for c in self.coefficients],
                "pivot": self.pivot}


@dataclass(frozen=True)
class DirectionalConstant:
    """
    Finite-degree record of τ(K, θ).

    Attributes:
    - ks: tuple of degrees
    - alphas: tuple of MultiIndex, direction_index(θ, k) per degree
    - values: tuple of T_k(K, α)^{1/k}
    - estimate: float, the value at the largest degree
    - converged: tuple of solver flags
    """
    ks: tuple
    alphas: tuple
    values: tuple
    estimate: float
    converged: tuple

    def to_dict(self):
        return {"k": list(self.ks), "alpha": [[al.j, al.k] for al in self.alphas],
                "value": list(self.values), "estimate": self.estimate, "converged": list(self.converged)}


#%% Lawson kernel

def _eliminate(A, f, g, target):
    """
    Substitutes c_q = (target - Σ_{i≠q} g_i c_i)/g_q, trying pivots in descending |g_q|.

    Returns:
    - q, reduced matrix, reduced fixed values
    """
    scale = np.max(np.abs(g))
    for q in np.argsort(-np.abs(g), kind="stable"):
        gq = g[q]
        if abs(gq) <= 1e-14 * scale:
            continue
        keep = np.arange(g.shape[0]) != q
        A_red = A[:, keep] - np.outer(A[:, q], g[keep] / gq)
        f_red = f + A[:, q] * (target / gq)
        if np.all(np.isfinite(A_red)) and np.all(np.isfinite(f_red)):
            return int(q), A_red, f_red
    raise PivotError("The equality constraint cannot be eliminated on any free coordinate.")


def _lawson(A, f, tol, max_iter):
    """
    Lawson iterations on min_c max |f + A c|.

    Returns:
    - best coefficients, history of objectives, converged flag
    """
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}.")
    M, N = A.shape
    w = np.full(M, 1.0 / M)
    best_c, best_obj = None, np.inf
    history, streak, converged = [], 0, False
    for _ in range(max_iter):
        sw = np.sqrt(w)
        c = scipy.linalg.lstsq(sw[:, None] * A, -sw * f, lapack_driver="gelsy", check_finite=False)[0]
        r = np.abs(f + A @ c)
        obj = float(np.max(r))
        if history:
            prev = history[-1]
            streak = streak + 1 if abs(obj - prev) <= tol * max(obj, prev, np.finfo(float).tiny) else 0
        history.append(obj)
        if obj < best_obj:
            best_c, best_obj = c, obj
        if streak >= LAWSON_CONSECUTIVE:
            converged = True
            break
        w_new = w * r
        total = np.sum(w_new)
        if not total > 0:  # exact interpolation of f
            converged = True
            break
        w_new = np.maximum(w_new / total, LAWSON_WEIGHT_FLOOR)
        w_new /= np.sum(w_new)
        if np.max(np.abs(w_new - w)) <= 1e-13 * np.max(w):
            converged = True
            break
        w = w_new
    return best_c, history, converged


def solve_minimax(problem, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER, verbose=False):
    """
    Solves a discrete complex Chebyshev problem by Lawson IRLS.

    Arguments:
    - problem: MinimaxProblem
    - tol: float, relative objective change under which an iterate counts as stalled;
           5 consecutive stalled iterates declare convergence
    - max_iter: int, iteration cap
    - verbose: bool, whether to print a summary

    Returns:
    - MinimaxSolution; the best iterate seen, converged=False if max_iter was hit
    """
    pts = problem.K.points
    basis = problem.free_basis
    N = len(basis)
    f = evaluate(problem.fixed_part, pts)
    if N == 0:
        value = sup_norm(problem.fixed_part, pts)
        return MinimaxSolution(np.zeros(0, dtype=np.complex128), value, 0, [], True, problem.fixed_part)

    if pts.shape[0] < N + 1:
        raise StructuralError(f"{pts.shape[0]} points cannot support a minimax problem "
                              f"with {N} free coefficients.")
    A = evaluation_matrix(basis, pts)
    rank = np.linalg.matrix_rank(A)
    if rank < N:
        raise StructuralError(f"Free basis is rank deficient on K (rank {rank} < {N}).")

    pivot = None
    if problem.constraint is not None:
        g, target = problem.constraint
        pivot, A_red, f_red = _eliminate(A, f, g, target)
    else:
        A_red, f_red = A, f

    if A_red.shape[1] == 0:
        c_red, history, converged = np.zeros(0, dtype=np.complex128), [float(np.max(np.abs(f_red)))], True
    else:
        c_red, history, converged = _lawson(A_red, f_red, tol, max_iter)

    if pivot is None:
        coefs = c_red
    else:
        keep = np.arange(N) != pivot
        coefs = np.empty(N, dtype=np.complex128)
        coefs[keep] = c_red
        coefs[pivot] = (target - np.dot(g[keep], c_red)) / g[pivot]

    poly = problem.fixed_part
    for c, q in zip(coefs, basis):
        poly = poly + c * q
    value = sup_norm(poly, pts)
    if not converged:
        warnings.warn(f"Lawson iterations did not converge in {max_iter} steps "
                      f"(N={N}, |K|={pts.shape[0]}); returning the best iterate, value {value:.6g}.")
    vprint(f"minimax: N={N}, |K|={pts.shape[0]}, {len(history)} iterations, value {value:.10g}, "
           f"converged={converged}.", verbose)
    return MinimaxSolution(coefs, value, len(history), history, converged, poly, pivot)


#%% Chebyshev polynomials

def monic_free_basis(body, k, alpha):
    "Monomials β ∈ kC with β ≺_C α."
    return [CPolynomial.monomial(body, beta) for beta in enumerate_basis(body, k) if precedes(body, beta, alpha)]


@cache_memory.cache(cache_validation_callback=cache_validation_again)
def chebyshev_monic(body, k, alpha, K, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER,
                    full_output=False, again=False):
    """
    Monic Chebyshev polynomial t_{k,α} = z^α + Σ_{β ≺_C α, β ∈ kC} c_β z^β of least sup-norm on K.

    Arguments:
    - body: TriangleBody
    - k: int, degree bound
    - alpha: MultiIndex with deg_C(alpha) <= k
    - K: DiscreteCompact
    - tol, max_iter: solver settings (see solve_minimax)
    - full_output: bool, whether to also return the MinimaxSolution
    - again: bool, whether to recompute rather than load from the joblib cache (CPX_CACHE)

    Returns:
    - t: CPolynomial
    - value: float, ||t||_K (callers take the 1/k-th root)
    - (solution: MinimaxSolution, if full_output)
    """
    if deg_c(body, alpha) > k:
        raise ValueError(f"{alpha} has C-degree {deg_c(body, alpha)} > {k}.")
    problem = MinimaxProblem(CPolynomial.monomial(body, alpha), monic_free_basis(body, k, alpha), K)
    sol = solve_minimax(problem, tol=tol, max_iter=max_iter)
    if full_output:
        return sol.polynomial, sol.value, sol
    return sol.polynomial, sol.value


def tch_projection(body, h, K, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER, full_output=False):
    """
    Tch_K h = h + p_{n-1}, p_{n-1} ∈ Poly((n-1)C) minimising ||h + p_{n-1}||_K.
    The minimiser need not be unique; only the value is.

    Arguments:
    - body: TriangleBody
    - h: nonzero CPolynomial supported on the homogeneous line of degree n = deg_C(h)
    - K: DiscreteCompact

    Returns:
    - projection: CPolynomial
    - value: float
    - (solution: MinimaxSolution, if full_output)
    """
    if h.is_zero():
        raise ValueError("Cannot project the zero polynomial.")
    n = h.cdeg
    if np.any(h.weights != n * body.ab):
        raise ValueError(f"Polynomial is not C-homogeneous of degree {n}.")
    free = [] if n == 0 else [CPolynomial.monomial(body, beta) for beta in enumerate_basis(body, n - 1)]
    sol = solve_minimax(MinimaxProblem(h, free, K), tol=tol, max_iter=max_iter)
    if full_output:
        return sol.polynomial, sol.value, sol
    return sol.polynomial, sol.value


def kappa_n(body, K, zeta, n, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER, full_output=False):
    """
    Chebyshev constant κ_n(K, ζ) = inf{||p||_K : p ∈ Poly(nC), p̂_n(ζ) = 1}.

    Arguments:
    - body: TriangleBody
    - K: DiscreteCompact
    - zeta: point of ∂P²
    - n: int >= 0

    Returns:
    - float, np.inf (with a warning) when every top-line monomial vanishes at ζ
    - (solution: MinimaxSolution or None, if full_output)
    """
    zeta, _ = as_points(zeta)
    basis = enumerate_basis(body, n)
    top = set(homogeneous_line(body, n))
    free = [CPolynomial.monomial(body, beta) for beta in basis]
    g = np.array([zeta[0, 0] ** beta.j * zeta[0, 1] ** beta.k if beta in top else 0.0 for beta in basis],
                 dtype=np.complex128)
    if not np.any(g != 0):
        warnings.warn(f"κ_{n} is infeasible at ζ={tuple(zeta[0])}: every top-line monomial vanishes there.")
        return (np.inf, None) if full_output else np.inf
    problem = MinimaxProblem(CPolynomial.zero(body), free, K, constraint=(g, 1.0))
    sol = solve_minimax(problem, tol=tol, max_iter=max_iter)
    return (sol.value, sol) if full_output else sol.value


def _check_degrees(k_list):
    ks = [int(k) for k in k_list]
    if len(ks) == 0 or any(k1 >= k2 for k1, k2 in zip(ks, ks[1:])) or ks[0] < 1:
        raise ValueError(f"Degrees must be a nonempty strictly ascending list of positive integers, got {k_list}.")
    return ks


def tau_directions(body, K, thetas, k_list, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER,
                   parallel=True, again=False):
    """
    tau_direction over several directions. Directions sharing a leading
    exponent at some degree share its Chebyshev solve.

    Returns:
    - list of DirectionalConstant, aligned with thetas
    """
    ks = _check_degrees(k_list)
    alphas = [[direction_index(body, theta, k) for k in ks] for theta in thetas]
    jobs = sorted({(k, al) for row in alphas for k, al in zip(ks, row)}, key=lambda x: (x[0], x[1].k, x[1].j))
    n_jobs = get_n_threads(len(jobs)) if parallel else 1
    sols = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(chebyshev_monic)(body, k, al, K, tol, max_iter, True, again) for k, al in jobs)
    table = {job: (float(v ** (1.0 / job[0])), bool(s.converged)) for job, (_, v, s) in zip(jobs, sols)}
    out = []
    for theta, row in zip(thetas, alphas):
        values = tuple(table[(k, al)][0] for k, al in zip(ks, row))
        converged = tuple(table[(k, al)][1] for k, al in zip(ks, row))
        if not all(converged):
            vprint(f"τ at t={theta.t}: some Chebyshev solves did not converge.", True, yellow_prefix)
        out.append(DirectionalConstant(tuple(ks), tuple(row), values, values[-1], converged))
    return out


def tau_direction(body, K, theta, k_list, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER,
                  parallel=True, again=False):
    """
    Directional Chebyshev constant τ(K, θ) at finite degrees.

    For each k, α = direction_index(θ, k) and the value is ||t_{k,α}||_K^{1/k}.
    No extrapolation: the estimate is the value at the largest k.

    Arguments:
    - body: TriangleBody
    - K: DiscreteCompact
    - theta: HypotenuseDirection
    - k_list: ascending positive degrees
    - parallel: bool, whether to solve the degrees concurrently (threads, CPX_THREADS)
    - again: bool, whether to bypass the joblib cache of Chebyshev solves

    Returns:
    - DirectionalConstant
    """
    return tau_directions(body, K, [theta], k_list, tol, max_iter, parallel, again)[0]


#%% Oracles

def torus_lower_bound(p, r1, r2):
    """
    (Σ |c_α|² r1^{2j} r2^{2k})^{1/2}, the L²(normalised arclength) norm of p on the torus
    of radii (r1, r2): a lower bound of ||p|| on that torus.
    """
    if p.is_zero():
        return 0.0
    log_t = 2 * (np.log(np.abs(p.coefs)) + p.J * np.log(r1) + p.K * np.log(r2))
    top = np.max(log_t)
    return float(np.exp(0.5 * (top + np.log(np.sum(np.exp(log_t - top))))))
