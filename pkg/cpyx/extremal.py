# -*- coding: utf-8 -*-
"""
Extremal and Robin functions of discrete compacts.

Finite polynomial families stand in for the classes of the Siciak-Zaharjuta
formulas: the upper envelope of (1/deg)·log(|p|/||p||_K) approximates V_{C,K}
from below, the same envelope of the hats approximates the C-Robin function
on ∂P². Every quantity is a finite max, no usc regularization is applied.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from tqdm.auto import tqdm

from cpyx.cpoly import CPolynomial, as_points, circle_act, compose_circle, evaluate_logabs, hat, homogeneous_part
from cpyx.domain import BoundaryGrid, DiscreteCompact, circled_closure_test, project_to_boundary, sup_norm
from cpyx.gl import DEFAULT_MAX_ITER, DEFAULT_TOL, get_n_threads
from cpyx.lattice import deg_c, enumerate_basis, midpoint_rule
from cpyx.minimax import chebyshev_monic, tau_directions
from cpyx.nodes import lagrange_difference_family, leja_sequence
from cpyx.utils import DegenerateSetError, StructuralError, log_abs, vprint

PROVENANCES = ("chebyshev", "l2-orthonormal", "l2-monic", "lagrange-difference", "monomial", "custom")

#%% Types


def _grid_points(grid):
    if isinstance(grid, (DiscreteCompact, BoundaryGrid)):
        return grid.points
    return as_points(grid)[0]


@dataclass(frozen=True, eq=False)
class ScalarField:
    """
    Values of a function sampled on points of C².

    Attributes:
    - grid: (M, 2) complex array
    - values: (M,) float array, -inf allowed
    - label: str, provenance
    - mask: optional bool array, points excluded from error metrics (axis points of ∂P²)
    """
    grid: np.ndarray
    values: np.ndarray
    label: str = ""
    mask: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        grid = _grid_points(self.grid)
        values = np.asarray(self.values, dtype=np.float64).ravel()
        if grid.shape[0] != values.shape[0]:
            raise ValueError(f"{values.shape[0]} values for {grid.shape[0]} grid points.")
        if np.any(np.isnan(values)) or np.any(values == np.inf):
            raise ValueError("Field values must be finite or -inf.")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return int(self.values.shape[0])

    @property
    def included(self):
        "Values entering error metrics."
        return self.values if self.mask is None else self.values[~self.mask]

    def max_abs_error(self, reference):
        "sup |values - reference| over the unmasked points (reference: array or callable)."
        ref = np.broadcast_to(reference(self.grid) if callable(reference)
                              else np.asarray(reference, dtype=np.float64), self.values.shape)
        finite = np.isfinite(self.values) & np.isfinite(ref)
        # non-finite entries count as 0 when equal (-inf against -inf), inf otherwise
        diff = np.where(self.values == ref, 0.0, np.inf)
        diff[finite] = np.abs(self.values[finite] - ref[finite])
        if self.mask is not None:
            diff = diff[~self.mask]
        return float(np.max(diff)) if diff.size else 0.0

    def to_frame(self):
        df = pd.DataFrame({"re1": self.grid[:, 0].real, "im1": self.grid[:, 0].imag,
                           "re2": self.grid[:, 1].real, "im2": self.grid[:, 1].imag,
                           "value": self.values})
        if self.mask is not None:
            df["axis"] = self.mask
        return df


@dataclass(frozen=True)
class FamilyMember:
    polynomial: CPolynomial
    degree_used: int
    norm_on_K: float


@dataclass(frozen=True, eq=False)
class PolynomialFamily:
    """
    Finite polynomial family with the sup-norms on K of its members.

    Attributes:
    - members: list of FamilyMember
    - provenance: str, one of PROVENANCES
    - support: DiscreteCompact on which the norms were computed
    - converged: bool, False if some solve behind the members did not converge
    """
    members: list
    provenance: str
    support: DiscreteCompact = field(default=None, repr=False)
    converged: bool = True

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"Unknown family provenance '{self.provenance}', expected one of {PROVENANCES}.")
        for m in self.members:
            if m.polynomial.is_zero():
                raise ValueError("Zero polynomials cannot be family members.")
            if m.degree_used < m.polynomial.cdeg:
                raise ValueError(f"Member of C-degree {m.polynomial.cdeg} declared with degree {m.degree_used}.")
            if not m.norm_on_K > 0:
                raise ValueError("Family members need a positive norm on K.")

    @classmethod
    def from_polynomials(cls, polys, K, provenance="custom", degrees=None):
        """
        Builds a family, computing sup-norms on K. Zero polynomials and
        polynomials vanishing on K are left out with a warning.
        """
        members, dropped = [], 0
        degrees = [None] * len(polys) if degrees is None else list(degrees)
        for p, d in zip(polys, degrees):
            norm = sup_norm(p, K)
            if p.is_zero() or norm == 0:
                dropped += 1
                continue
            members.append(FamilyMember(p, p.cdeg if d is None else int(d), norm))
        if dropped:
            warnings.warn(f"{dropped} polynomial(s) vanishing on {K.label} left out of the {provenance} family.")
        return cls(members, provenance, K)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def polynomials(self):
        return [m.polynomial for m in self.members]

    def renormalized(self, K):
        "Same polynomials with norms recomputed on K."
        return PolynomialFamily.from_polynomials(self.polynomials, K, self.provenance,
                                                 [m.degree_used for m in self.members])

    def truncated(self, n_max):
        "Members with degree_used <= n_max."
        return PolynomialFamily([m for m in self.members if m.degree_used <= n_max], self.provenance, self.support,
                                self.converged)

    def to_dict(self):
        return {"provenance": self.provenance, "converged": self.converged,
                "members": [{"degree_used": m.degree_used, "norm_on_K": m.norm_on_K,
                             "polynomial": m.polynomial.to_dict()} for m in self.members]}


def _on_support(family, K):
    if K is None or family.support is K:
        return family
    return family.renormalized(K)


#%% Closed forms

def h_c(body, z):
    """
    Logarithmic indicator H_C(z) = max(b·log⁺|z1|, a·log⁺|z2|).
    """
    pts, single = as_points(z)
    with np.errstate(divide="ignore"):
        out = np.maximum(body.b * np.maximum(0.0, np.log(np.abs(pts[:, 0]))),
                         body.a * np.maximum(0.0, np.log(np.abs(pts[:, 1]))))
    return float(out[0]) if single else out


def polydisk_reference(body, r1, r2):
    """
    Extremal function of the torus (equivalently the closed bidisk) of radii (r1, r2):
    z ↦ max(b·log⁺(|z1|/r1), a·log⁺(|z2|/r2)).
    """
    def reference(z):
        pts, single = as_points(z)
        with np.errstate(divide="ignore"):
            out = np.maximum(body.b * np.maximum(0.0, np.log(np.abs(pts[:, 0]) / r1)),
                             body.a * np.maximum(0.0, np.log(np.abs(pts[:, 1]) / r2)))
        return float(out[0]) if single else out
    return reference


def polydisk_robin(body, r1, r2):
    "Robin function of the torus of radii (r1, r2): ζ ↦ max(b·log(|ζ1|/r1), a·log(|ζ2|/r2))."
    def rho(zeta):
        pts, single = as_points(zeta)
        l1, l2 = log_abs(pts[:, 0]), log_abs(pts[:, 1])
        out = np.maximum(body.b * (l1 - np.log(r1)), body.a * (l2 - np.log(r2)))
        return float(out[0]) if single else out
    return rho


def robin_extension(body, rho_boundary, z):
    """
    ab-log-homogeneous extension ρ(λ∘ζ) = ρ(ζ) + ab·log λ of a function given on ∂P².

    Arguments:
    - rho_boundary: callable ζ ↦ values, on (M, 2) arrays
    - z: points off the origin
    """
    lam, zeta = project_to_boundary(body, z)
    if np.ndim(lam) == 0:
        return float(rho_boundary(zeta[None, :])[0] + body.ab * np.log(lam))
    return rho_boundary(zeta) + body.ab * np.log(lam)


#%% Envelopes

def _member_logs(member, pts):
    "(1/d)·(log|p| - log||p||_K); degree-0 members normalise to the constant 0."
    if member.degree_used == 0:
        return np.zeros(pts.shape[0])
    return (evaluate_logabs(member.polynomial, pts) - np.log(member.norm_on_K)) / member.degree_used


def upper_envelope(family, K, grid, parallel=False):
    """
    Finite-family surrogate of V_{C,K}: max over members of (1/d)·log(|p(z)|/||p||_K).

    Arguments:
    - family: PolynomialFamily (norms recomputed if built on another set)
    - K: DiscreteCompact
    - grid: DiscreteCompact, BoundaryGrid or (M, 2) array
    - parallel: bool, whether to evaluate members concurrently (threads)

    Returns:
    - ScalarField
    """
    if len(family) == 0:
        raise ValueError("Cannot take the envelope of an empty family.")
    family = _on_support(family, K)
    pts = _grid_points(grid)
    n_jobs = get_n_threads(len(family)) if parallel else 1
    logs = Parallel(n_jobs=n_jobs, prefer="threads")(delayed(_member_logs)(m, pts) for m in family)
    return ScalarField(pts, np.max(np.stack(logs), axis=0), label=f"V[{family.provenance}; {family.support.label}]")


def robin_envelope(family, K, boundary):
    """
    Finite-family surrogate of ρ_{C,K} on ∂P²: max over members of
    (1/d)·log(|p̂(ζ)|/||p||_K), p̂ the homogeneous part of p at degree d.
    Members of degree 0 or with a vanishing hat are skipped (one aggregated warning).

    Arguments:
    - family: PolynomialFamily
    - K: DiscreteCompact
    - boundary: BoundaryGrid, or (M, 2) array of points of ∂P²

    Returns:
    - ScalarField, axis points masked; -inf where every hat vanishes
    """
    if len(family) == 0:
        raise ValueError("Cannot take the envelope of an empty family.")
    family = _on_support(family, K)
    pts = _grid_points(boundary)
    mask = boundary.axis if isinstance(boundary, BoundaryGrid) else None
    values = np.full(pts.shape[0], -np.inf)
    skipped = 0
    for m in family:
        if m.degree_used == 0:
            continue
        top = homogeneous_part(m.polynomial, m.degree_used * m.polynomial.body.ab)
        if top.is_zero():
            skipped += 1
            continue
        values = np.maximum(values, (evaluate_logabs(top, pts) - np.log(m.norm_on_K)) / m.degree_used)
    if skipped:
        warnings.warn(f"{skipped} member(s) of the {family.provenance} family have a vanishing hat "
                      "and were skipped in the Robin envelope.")
    return ScalarField(pts, values, label=f"rho[{family.provenance}; {family.support.label}]", mask=mask)


def robin_direct(body, V, zeta, lambda_abs):
    """
    Direct Robin estimates V(λ∘ζ) - ab·log λ along a ladder of real λ.

    Arguments:
    - body: TriangleBody
    - V: callable, (M, 2) points ↦ (M,) values
    - zeta: point of ∂P²
    - lambda_abs: ascending magnitudes >= 10

    Returns:
    - float array of estimates; the last entry is the point estimate
    """
    lam = np.asarray(lambda_abs, dtype=np.float64).ravel()
    if lam.size == 0 or np.any(lam < 10) or np.any(np.diff(lam) <= 0):
        raise ValueError(f"λ ladder must be ascending with entries >= 10, got {lambda_abs}.")
    pts, _ = as_points(zeta)
    zs = np.concatenate([circle_act(body, l, pts) for l in lam])
    return np.asarray(V(zs), dtype=np.float64).ravel() - body.ab * np.log(lam)


def robin_of_polynomial(p, zeta):
    """
    (1/n)·log|p̂(ζ)|, n = deg_C(p): the C-Robin function of (1/n)·log|p|.
    -inf where the hat vanishes (everywhere if the hat is zero).
    """
    if p.cdeg == 0:
        raise ValueError("Constants have no Robin function.")
    return evaluate_logabs(hat(p), zeta) / p.cdeg


#%% Families

def monomial_family(body, K, n_max):
    "Monomials of n_max·C with their norms on K."
    basis = enumerate_basis(body, n_max)
    return PolynomialFamily.from_polynomials([CPolynomial.monomial(body, al) for al in basis], K, "monomial")


def _gram_schmidt(body, mu, n_max, normalize):
    """
    Modified Gram-Schmidt with one reorthogonalisation pass over the monomials of
    n_max·C in ≺_C order, in the μ inner product.

    Returns:
    - monomials, coefficient matrix T (column i = i-th output polynomial), values Q on the support
    """
    basis = enumerate_basis(body, n_max)
    N = basis.N_n
    pts = mu.support.points
    if pts.shape[0] < N:
        raise StructuralError(f"{pts.shape[0]} support points cannot carry {N} independent monomials.")
    w = mu.weights
    E = np.power(pts[:, 0:1], basis.J[None, :]) * np.power(pts[:, 1:2], basis.K[None, :])
    Q = np.zeros_like(E)
    T = np.zeros((N, N), dtype=np.complex128)
    Qn = np.zeros_like(E)  # orthonormal copies, used for projections
    Tn = np.zeros((N, N), dtype=np.complex128)
    for i in range(N):
        v = E[:, i].copy()
        c = np.zeros(N, dtype=np.complex128)
        c[i] = 1.0
        scale = np.sqrt(np.sum(w * np.abs(v) ** 2))
        for _ in range(2):
            for l in range(i):
                proj = np.sum(w * v * np.conj(Qn[:, l]))
                v -= proj * Qn[:, l]
                c -= proj * Tn[:, l]
        nrm = np.sqrt(np.sum(w * np.abs(v) ** 2))
        if not nrm > 1e-12 * max(scale, np.finfo(float).tiny):
            raise StructuralError(f"Monomial z^{basis[i]} is dependent on the earlier monomials in L²(μ).")
        Qn[:, i], Tn[:, i] = v / nrm, c / nrm
        if normalize:
            Q[:, i], T[:, i] = Qn[:, i], Tn[:, i]
        else:
            Q[:, i], T[:, i] = v, c
    return basis, T, Q


def orthonormal_family(body, mu, n_max):
    """
    μ-orthonormal polynomials obtained by Gram-Schmidt on the monomials in ≺_C order.

    Arguments:
    - body: TriangleBody
    - mu: DiscreteMeasure
    - n_max: int, degree bound

    Returns:
    - PolynomialFamily (provenance l2-orthonormal), norms on the support of μ
    """
    basis, T, _ = _gram_schmidt(body, mu, n_max, normalize=True)
    polys = [CPolynomial(body, zip(basis, T[:, i])) for i in range(basis.N_n)]
    return PolynomialFamily.from_polynomials(polys, mu.support, "l2-orthonormal", list(basis.degrees))


def l2_monic_family(body, mu, n_max):
    """
    Monic polynomials of least L²(μ) norm: z^α minus its projection onto the
    span of the monomials ≺_C α.

    Returns:
    - PolynomialFamily (provenance l2-monic), norms on the support of μ
    """
    basis, T, _ = _gram_schmidt(body, mu, n_max, normalize=False)
    polys = [CPolynomial(body, zip(basis, T[:, i])) for i in range(basis.N_n)]
    return PolynomialFamily.from_polynomials(polys, mu.support, "l2-monic", list(basis.degrees))


def chebyshev_family(body, K, n_max, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER,
                     parallel=True, again=False, verbose=False):
    """
    Monic Chebyshev polynomials t_{k,α}, k = deg_C(α), for every α ∈ n_max·C.

    Returns:
    - PolynomialFamily (provenance chebyshev) of N_{n_max} members
    """
    basis = enumerate_basis(body, n_max)
    n_jobs = get_n_threads(basis.N_n) if parallel else 1
    sols = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(chebyshev_monic)(body, int(d), al, K, tol, max_iter, True, again)
        for al, d in tqdm(list(zip(basis, basis.degrees)), desc="Chebyshev family",
                          leave=False, disable=not verbose))
    not_converged = sum(not s.converged for _, _, s in sols)
    if not_converged:
        warnings.warn(f"{not_converged} Chebyshev solve(s) of the degree-{n_max} family did not converge.")
    members = [FamilyMember(t, int(d), float(v)) for (t, v, _), d in zip(sols, basis.degrees)]
    vprint(f"Chebyshev family of {len(members)} members on {K.label}.", verbose)
    return PolynomialFamily(members, "chebyshev", K, converged=not_converged == 0)


def lagrange_family(body, K, s_max, leja=None):
    """
    The constant 1 followed by the Lagrange-difference polynomials p_2..p_{s_max}
    built on a C-Leja sequence of K.

    Returns:
    - PolynomialFamily (provenance lagrange-difference)
    """
    leja = leja_sequence(body, K, s_max) if leja is None else leja
    polys = [CPolynomial.constant(body)] + lagrange_difference_family(body, K, leja, s_max)
    degrees = [deg_c(body, al) for al in leja.basis.prefix(s_max)]
    return PolynomialFamily.from_polynomials(polys, K, "lagrange-difference", degrees)


def circle_pushforward(family, lam0, K_image=None):
    """
    Family p ∘ (λ0⁻¹∘·) on λ0∘K. Norms are carried over unchanged
    (they coincide with the norms on λ0∘K) unless K_image is given.
    """
    lam0 = complex(lam0)
    polys = [compose_circle(m.polynomial, 1.0 / lam0) for m in family]
    if K_image is not None:
        return PolynomialFamily.from_polynomials(polys, K_image, family.provenance,
                                                 [m.degree_used for m in family])
    members = [FamilyMember(p, m.degree_used, m.norm_on_K) for p, m in zip(polys, family)]
    support = None
    if family.support is not None and len(family):
        body = family.members[0].polynomial.body
        support = DiscreteCompact(circle_act(body, lam0, family.support.points), circled=family.support.circled,
                                  label=f"{lam0}∘[{family.support.label}]", regular=family.support.regular,
                                  phase_count=family.support.phase_count)
    return PolynomialFamily(members, family.provenance, support)


#%% Transfinite diameter

def delta_zaharjuta(body, K, t_nodes=None, k_list=(2, 4, 6, 8), weights=None, tol=DEFAULT_TOL,
                    max_iter=DEFAULT_MAX_ITER, parallel=True, full_output=False, again=False):
    """
    δ_C(K) = exp(∫_0^1 log τ(K, θ(t)) dt), the integral taken by a quadrature on the open hypotenuse.

    Arguments:
    - body: TriangleBody
    - K: DiscreteCompact
    - t_nodes: list of HypotenuseDirection (default: 16-node composite midpoint rule)
    - k_list: ascending degrees of the τ estimates (the largest is used)
    - weights: quadrature weights aligned with t_nodes (default: equal)
    - full_output: bool, whether to also return the DirectionalConstant of each node

    Returns:
    - float
    - (list of DirectionalConstant, if full_output)
    """
    if t_nodes is None:
        t_nodes, weights = midpoint_rule(16)
    weights = np.full(len(t_nodes), 1.0 / len(t_nodes)) if weights is None else np.asarray(weights, dtype=np.float64)
    if weights.shape[0] != len(t_nodes) or np.any(weights <= 0):
        raise ValueError("Quadrature weights must be positive and aligned with the nodes.")
    taus = tau_directions(body, K, t_nodes, k_list, tol, max_iter, parallel, again)
    est = np.array([tc.estimate for tc in taus])
    if np.any(est <= 0):
        raise DegenerateSetError(f"τ vanishes at {int(np.sum(est <= 0))} node(s): {K.label} looks pluripolar.")
    delta = float(np.exp(np.sum(weights * np.log(est)) / np.sum(weights)))
    return (delta, taus) if full_output else delta


#%% Circled identities and recovery

@dataclass(frozen=True, eq=False)
class CircledIdentityReport:
    """
    Comparison of the envelope V̂ with max(ρ̂, 0), ρ̂ the Robin envelope
    extended off ∂P² by homogeneity.

    Attributes:
    - discrepancy: float, sup over the grid of |V̂ - max(ρ̂, 0)|
    - passed: bool, discrepancy <= tol and the closure test passed
    - closure_passed, closure_defect: circled_closure_test of K
    - envelope, robin_extended: ScalarField on the grid
    - boundary_robin: ScalarField on the boundary grid
    - reference_errors: dict, sup errors of both sides against the reference (if any)
    """
    discrepancy: float
    passed: bool
    closure_passed: bool
    closure_defect: float
    tol: float
    envelope: ScalarField = field(repr=False)
    robin_extended: ScalarField = field(repr=False)
    boundary_robin: ScalarField = field(repr=False)
    reference_errors: dict = field(default_factory=dict)

    def to_frame(self):
        "Per-point diagnostics on the grid."
        df = self.envelope.to_frame().rename(columns={"value": "envelope"})
        df["robin_plus"] = np.maximum(self.robin_extended.values, 0.0)
        df["difference"] = np.abs(df["envelope"] - df["robin_plus"])
        return df

    def to_dict(self):
        return {"discrepancy": self.discrepancy, "passed": bool(self.passed), "tol": self.tol,
                "closure_passed": bool(self.closure_passed), "closure_defect": self.closure_defect,
                "reference_errors": dict(self.reference_errors)}


def circled_identity_check(body, K, family, grid, boundary, tol=0.1, reference=None, n_theta=None):
    """
    Checks V̂ = max(ρ̂, 0) on a grid off K for a circled set K.

    Arguments:
    - body: TriangleBody
    - K: circled DiscreteCompact
    - family: PolynomialFamily
    - grid: points of C² away from the origin
    - boundary: BoundaryGrid, where the Robin envelope is also reported
    - tol: float, accepted discrepancy
    - reference: optional callable z ↦ V(z), compared with both sides
    - n_theta: int, angles of the closure test (default: the phase count of K, at least 8)

    Returns:
    - CircledIdentityReport (always produced)
    """
    if n_theta is None:
        n_theta = K.phase_count if K.phase_count is not None and K.phase_count >= 8 else 8
    closure_passed, defect = circled_closure_test(body, K, n_theta)
    if not (K.circled and closure_passed):
        warnings.warn(f"{K.label} is not circled under {body} (closure defect {defect:.3g}).")
    family = _on_support(family, K)
    pts = _grid_points(grid)
    env = upper_envelope(family, K, pts)
    lam, zeta = project_to_boundary(body, pts)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rho_zeta = robin_envelope(family, K, zeta).values
        boundary_robin = robin_envelope(family, K, boundary)
    rho = ScalarField(pts, rho_zeta + body.ab * np.log(lam), label="rho extended")
    robin_plus = np.maximum(rho.values, 0.0)
    discrepancy = env.max_abs_error(robin_plus)
    ref_errors = {}
    if reference is not None:
        ref = reference(pts)
        ref_errors = {"envelope": env.max_abs_error(ref),
                      "robin": float(np.max(np.abs(robin_plus - ref)))}
    return CircledIdentityReport(discrepancy, bool(discrepancy <= tol and closure_passed), bool(closure_passed),
                                 float(defect), float(tol), env, rho, boundary_robin, ref_errors)


@dataclass(frozen=True)
class RecoveryReport:
    """
    Attributes:
    - norm_growth: max over members of degree >= 1 of (1/d)·log||p||_K
    - robin_error: sup off axis points of |ρ̂ - reference Robin function|
    - envelope_error: sup over the grid of |V̂ - reference extremal function|
    - premises_hold: norm_growth <= eps and robin_error <= eps
    - conclusion_holds: envelope_error <= envelope_tol
    - passed: not premises_hold or conclusion_holds
    """
    norm_growth: float
    robin_error: float
    envelope_error: float
    eps: float
    envelope_tol: float
    premises_hold: bool
    conclusion_holds: bool
    passed: bool


def recovery_check(body, K, family, grid, boundary, reference_v, reference_rho, eps=0.1, envelope_tol=None):
    """
    Sufficient condition for a family to recover V_{C,K}: norms of subexponential
    growth and hats recovering ρ_{C,K} on ∂P² imply that the envelope recovers V_{C,K}.
    Checks the premises, then the conclusion.

    Arguments:
    - reference_v: callable z ↦ V_{C,K}(z)
    - reference_rho: callable ζ ↦ ρ_{C,K}(ζ)
    - eps: float, tolerance of the premises
    - envelope_tol: float, tolerance of the conclusion (default 2·eps)

    Returns:
    - RecoveryReport
    """
    envelope_tol = 2 * eps if envelope_tol is None else envelope_tol
    family = _on_support(family, K)
    growth = max((np.log(m.norm_on_K) / m.degree_used for m in family if m.degree_used > 0), default=0.0)
    rho = robin_envelope(family, K, boundary)
    robin_error = rho.max_abs_error(reference_rho)
    envelope_error = upper_envelope(family, K, grid).max_abs_error(reference_v)
    premises = bool(growth <= eps and robin_error <= eps)
    conclusion = bool(envelope_error <= envelope_tol)
    return RecoveryReport(float(growth), float(robin_error), float(envelope_error), float(eps),
                          float(envelope_tol), premises, conclusion, bool(conclusion or not premises))
