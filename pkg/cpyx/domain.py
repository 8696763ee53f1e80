# -*- coding: utf-8 -*-
"""
Discretizations of compact sets K ⊂ C² and of measures on them.

Built-in constructors (tori, Reinhardt unions, circled hulls of those) produce
sets flagged regular=True. Arbitrary point clouds are accepted as they are and
flagged regular=False in their metadata.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit

from cpyx.cpoly import as_points, circle_act, evaluate_logabs
from cpyx.gl import BOUNDARY_TOL, CLOSURE_TOL
from cpyx.utils import assert_int

#%% Types


def _dedup(points, decimals=13):
    "Drops repeated points (after rounding), keeping the first occurrence and the input order."
    pts, _ = as_points(points)
    if pts.shape[0] == 0:
        return pts
    key = np.round(np.stack([pts[:, 0].real, pts[:, 0].imag, pts[:, 1].real, pts[:, 1].imag], axis=1),
                   decimals) + 0.0  # -0.0 -> 0.0
    _, first = np.unique(key, axis=0, return_index=True)
    return pts[np.sort(first)]


@dataclass(frozen=True, eq=False)
class DiscreteCompact:
    """
    Finite, deduplicated sample of a compact set K ⊂ C².

    Attributes:
    - points: (M, 2) complex array
    - circled: bool, whether K is asserted invariant under e^{iθ}∘
    - label: str, free-form description
    - regular: bool, False for unchecked point clouds
    - phase_count: int or None, phase grid size of circled constructions
    """
    points: np.ndarray
    circled: bool = False
    label: str = ""
    regular: bool = True
    phase_count: int = None

    def __post_init__(self):
        pts = _dedup(self.points)
        if pts.shape[0] == 0:
            raise ValueError("A discrete compact set needs at least one point.")
        if not np.all(np.isfinite(pts)):
            raise ValueError("Points must have finite coordinates.")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return int(self.points.shape[0])

    @property
    def moduli(self):
        "(M, 2) array of (|z1|, |z2|)."
        return np.abs(self.points)

    def scaled(self, r1, r2=None):
        "Image of K under (z1, z2) ↦ (r1 z1, r2 z2)."
        r2 = r1 if r2 is None else r2
        return DiscreteCompact(self.points * np.array([r1, r2]), circled=self.circled,
                               label=f"({r1},{r2})·[{self.label}]", regular=self.regular,
                               phase_count=self.phase_count)

    def union(self, other, label=None):
        return DiscreteCompact(np.concatenate([self.points, other.points]),
                               circled=self.circled and other.circled,
                               label=label or f"{self.label} ∪ {other.label}",
                               regular=self.regular and other.regular,
                               phase_count=self.phase_count if self.phase_count == other.phase_count else None)

    def metadata(self):
        return {"label": self.label, "n_points": len(self), "circled": bool(self.circled),
                "regular": bool(self.regular)}


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """
    Positive weighted measure μ = Σ w_m δ_{z_m} on a DiscreteCompact.
    """
    support: DiscreteCompact
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64).ravel()
        if w.shape[0] != len(self.support):
            raise ValueError(f"{w.shape[0]} weights for {len(self.support)} points.")
        if not (np.all(np.isfinite(w)) and np.all(w > 0)):
            raise ValueError("Measure weights must be finite and strictly positive.")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, K):
        "Normalised counting measure on K."
        return cls(K, np.full(len(K), 1.0 / len(K)))

    @property
    def total_mass(self):
        return float(np.sum(self.weights))

    def inner(self, f, g):
        "<f, g>_μ = Σ w f conj(g) for value arrays f, g of shape (M,)."
        return complex(np.sum(self.weights * np.asarray(f) * np.conj(np.asarray(g))))

    def gram(self, A):
        "Gram matrix G[i, l] = <A[:, l], A[:, i]>_μ of the columns of A."
        A = np.asarray(A)
        return (np.conj(A).T * self.weights) @ A

    def norm(self, f):
        return float(np.sqrt(np.sum(self.weights * np.abs(f) ** 2)))


@dataclass(frozen=True, eq=False)
class BoundaryGrid:
    """
    Sample of ∂P² = {max(|ζ1|, |ζ2|) = 1}.

    Attributes:
    - points: (M, 2) complex array
    - radial: float array, the moduli s of the non-unimodular coordinate
    - axis: bool array, True where one coordinate vanishes
    - m: int, phases per coordinate
    """
    points: np.ndarray
    radial: np.ndarray
    axis: np.ndarray
    m: int

    def __len__(self):
        return int(self.points.shape[0])

    @property
    def off_axis(self):
        "Points with ζ1·ζ2 ≠ 0."
        return self.points[~self.axis]


#%% Constructors

def _phases(m):
    return np.exp(2j * np.pi * np.arange(m) / m)


def _check_count(m, name, minimum=4):
    if not assert_int(m) or m < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {m!r}.")


def build_torus(r1, r2, m):
    """
    m×m phase grid on the torus {|z1| = r1, |z2| = r2}.

    Arguments:
    - r1, r2: positive radii
    - m: int >= 4, phases per coordinate
    """
    _check_count(m, "Grid count")
    if not (r1 > 0 and r2 > 0):
        raise ValueError(f"Torus radii must be positive, got ({r1}, {r2}).")
    e = _phases(m)
    Z1, Z2 = np.meshgrid(r1 * e, r2 * e, indexing="ij")
    return DiscreteCompact(np.stack([Z1.ravel(), Z2.ravel()], axis=1), circled=True,
                           label=f"torus({r1},{r2};m={m})", regular=True, phase_count=m)


def build_reinhardt(radii_profile, m_phase):
    """
    Union of m_phase×m_phase phase grids over a profile of modulus pairs.

    Arguments:
    - radii_profile: list of (r1, r2) nonnegative pairs (a vanishing radius collapses its phases)
    - m_phase: int >= 4

    Returns:
    - DiscreteCompact, circled
    """
    _check_count(m_phase, "Phase count")
    profile = [(float(r1), float(r2)) for r1, r2 in radii_profile]
    if len(profile) == 0:
        raise ValueError("Reinhardt profile must contain at least one modulus pair.")
    if any(r1 < 0 or r2 < 0 for r1, r2 in profile):
        raise ValueError("Reinhardt profile radii must be nonnegative.")
    e = _phases(m_phase)
    chunks = []
    for r1, r2 in profile:
        Z1, Z2 = np.meshgrid(r1 * e, r2 * e, indexing="ij")
        chunks.append(np.stack([Z1.ravel(), Z2.ravel()], axis=1))
    regular = any(r1 > 0 and r2 > 0 for r1, r2 in profile)
    return DiscreteCompact(np.concatenate(chunks), circled=True,
                           label=f"reinhardt({profile};m={m_phase})", regular=regular, phase_count=m_phase)


def build_point_cloud(points, label="point cloud", circled=False):
    """
    Wraps arbitrary points. Regularity cannot be certified and is flagged False.
    """
    return DiscreteCompact(np.asarray(points, dtype=np.complex128), circled=circled, label=label, regular=False)


def build_product(z1_samples, z2_samples, label="product"):
    "Cartesian product {(x, y) : x ∈ z1_samples, y ∈ z2_samples}."
    Z1, Z2 = np.meshgrid(np.asarray(z1_samples, dtype=np.complex128),
                         np.asarray(z2_samples, dtype=np.complex128), indexing="ij")
    return DiscreteCompact(np.stack([Z1.ravel(), Z2.ravel()], axis=1), circled=False, label=label, regular=False)


#%% Circle action

@njit(cache=True)
def _nearest_defect(mapped, ref):
    "max over mapped of the distance to the nearest point of ref."
    worst = 0.0
    for i in range(mapped.shape[0]):
        best = np.inf
        for j in range(ref.shape[0]):
            d = abs(mapped[i, 0] - ref[j, 0]) ** 2 + abs(mapped[i, 1] - ref[j, 1]) ** 2
            if d < best:
                best = d
                if best == 0.0:
                    break
        if best > worst:
            worst = best
    return np.sqrt(worst)


def circled_closure_test(body, K, n_theta=8, tol=CLOSURE_TOL):
    """
    Checks e^{iθ}∘K = K on θ = 2πs/n_theta, s = 1..n_theta-1.

    Arguments:
    - body: TriangleBody
    - K: DiscreteCompact
    - n_theta: int >= 8, number of sampled angles
    - tol: float, largest nearest-neighbour defect accepted

    Returns:
    - passed: bool
    - defect: float, max nearest-neighbour distance of the rotated points to K
    """
    _check_count(n_theta, "Number of angles", minimum=8)
    pts = np.ascontiguousarray(K.points)
    defect = 0.0
    for s in range(1, n_theta):
        mapped = np.ascontiguousarray(circle_act(body, np.exp(2j * np.pi * s / n_theta), pts))
        defect = max(defect, float(_nearest_defect(mapped, pts)))
    return defect <= tol, defect


def circled_hull(body, K, n_theta=8):
    """
    Union of the sampled orbits e^{iθ}∘K, θ = 2πs/n_theta: the smallest discrete
    set containing K that is invariant under the sampled circle group.
    """
    _check_count(n_theta, "Number of angles", minimum=1)
    orbit = [circle_act(body, np.exp(2j * np.pi * s / n_theta), K.points) for s in range(n_theta)]
    return DiscreteCompact(np.concatenate(orbit), circled=True, label=f"hull[{K.label}]",
                           regular=K.regular, phase_count=n_theta)


#%% ∂P²

def radial_grid(m, n_radial=None, smallest=1e-3):
    """
    Moduli s ∈ [0, 1] for the non-unimodular coordinate of ∂P²:
    a linear grid unioned with a geometric grid accumulating at 0, both containing 0 and 1.
    """
    n_radial = m // 2 + 1 if n_radial is None else n_radial
    lin = np.linspace(0.0, 1.0, max(n_radial, 2))
    geo = np.geomspace(smallest, 1.0, max(n_radial // 2, 2))
    return np.unique(np.round(np.concatenate([[0.0], lin, geo, [1.0]]), 15))


def build_boundary_grid(m, n_radial=None):
    """
    Grid on the two facets {|ζ1| = 1, |ζ2| = s} and {|ζ1| = s, |ζ2| = 1} of ∂P².

    Arguments:
    - m: int >= 4, phases per coordinate
    - n_radial: int, size of the linear part of the radial grid (default m//2 + 1)

    Returns:
    - BoundaryGrid, deduplicated, axis points (s = 0) flagged
    """
    _check_count(m, "Grid count")
    s = radial_grid(m, n_radial)
    e = _phases(m)
    S, P1, P2 = np.meshgrid(s, e, e, indexing="ij")
    S, P1, P2 = S.ravel(), P1.ravel(), P2.ravel()
    facets = np.concatenate([np.stack([P1, S * P2], axis=1), np.stack([S * P1, P2], axis=1)])
    pts = _dedup(facets)
    mod = np.abs(pts)
    assert np.all(np.abs(np.max(mod, axis=1) - 1.0) <= BOUNDARY_TOL)
    return BoundaryGrid(points=pts, radial=np.min(mod, axis=1), axis=np.any(mod == 0, axis=1), m=int(m))


def project_to_boundary(body, z):
    """
    Writes z = λ∘ζ with λ >= 0 and ζ ∈ ∂P²: λ = max(|z1|^{1/a}, |z2|^{1/b}).

    Returns:
    - lam: float array (M,)
    - zeta: (M, 2) complex array

    Raises ValueError at the origin, where ζ is undefined.
    """
    pts, single = as_points(z)
    mod = np.abs(pts)
    lam = np.maximum(mod[:, 0] ** (1.0 / body.a), mod[:, 1] ** (1.0 / body.b))
    if np.any(lam == 0):
        raise ValueError("The origin has no decomposition λ∘ζ with ζ on the boundary of the bidisk.")
    zeta = np.stack([pts[:, 0] / lam ** body.a, pts[:, 1] / lam ** body.b], axis=1)
    if single:
        return float(lam[0]), zeta[0]
    return lam, zeta


#%% Norms

def sup_norm(p, K):
    """
    ||p||_K, computed as exp(max log|p|) over the points of K. 0 for the zero polynomial.

    Arguments:
    - p: CPolynomial
    - K: DiscreteCompact or (M, 2) array of points
    """
    pts = K.points if isinstance(K, DiscreteCompact) else K
    if p.is_zero():
        return 0.0
    return float(np.exp(np.max(evaluate_logabs(p, pts))))
