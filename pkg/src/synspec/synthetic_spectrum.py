"""Grid-based synthetic spectra of Hermitian tuples.

The eta-synthetic-spectrum is the union of closed eta-balls around the
lattice points where the fixed-order product of bump functions applied to
the tuple has norm >= 1-eta.  Evaluation works in the per-operator
eigenbases, which keeps each bump factor low-rank and lets the grid sweep
prune whole prefixes whose partial product already falls below threshold
(sound: appending a contraction cannot increase the norm).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree

from .errors import (
    EmptyRegionError,
    InvalidInputError,
    InvalidWitnessError,
    ResourceLimitError,
    UnsupportedDimensionError,
)
from .operator_core import (
    HermitianMatrix,
    OperatorTuple,
    PiecewiseLinearFn,
    dedupe_points,
    func_calc,
    joint_eigensystem,
    pairwise_commutator_norms,
    spectral_norm,
)

DEFAULT_GRID_CAP = 2 ** 24
BORDERLINE_TOL = 1e-9


@dataclass(frozen=True)
class GridSpec:
    """Lattice of pitch 1/k covering [-M, M]^n, with k tied to eta.

    k is exactly the least integer l with (M+1)/l < eta/(1+2*sqrt(n)).
    """

    n: int
    M: float
    eta: float
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError("ambient dimension must be >= 1")
        if not 0 < self.eta < 1:
            raise InvalidInputError("eta must lie in (0, 1)")
        if self.M <= 0:
            raise InvalidInputError("M must be positive")
        if self.k < 1:
            raise InvalidInputError("k must be >= 1")

    @classmethod
    def create(cls, n: int, M: float, eta: float) -> "GridSpec":
        """Grid with the canonical denominator k tied to eta."""
        return cls(n, float(M), float(eta), _lattice_denominator(n, M, eta))

    @property
    def is_canonical(self) -> bool:
        return self.k == _lattice_denominator(self.n, self.M, self.eta)

    @property
    def m_max(self) -> int:
        return int(math.floor(self.M * self.k + 1e-9))

    @property
    def point_count(self) -> int:
        return (2 * self.m_max + 1) ** self.n

    def axis_coords(self) -> np.ndarray:
        m = self.m_max
        return np.arange(-m, m + 1) / self.k


def _lattice_denominator(n: int, M: float, eta: float) -> int:
    if not 0 < eta < 1:
        raise InvalidInputError("eta must lie in (0, 1)")
    bound = eta / (1 + 2 * math.sqrt(n))
    k = max(1, int(math.floor((M + 1) / bound)))
    while (M + 1) / k >= bound:
        k += 1
    while k > 1 and (M + 1) / (k - 1) < bound:
        k -= 1
    return k


def grid_points(spec: GridSpec, cap: int = DEFAULT_GRID_CAP) -> np.ndarray:
    """All lattice points of the spec, in lexicographic order."""
    if spec.point_count > cap:
        raise ResourceLimitError(
            "grid has %d points, above the cap %d" % (spec.point_count, cap)
        )
    c = spec.axis_coords()
    grids = np.meshgrid(*([c] * spec.n), indexing="ij")
    return np.stack(grids, axis=-1).reshape(-1, spec.n)


@dataclass(frozen=True)
class BallUnion:
    """Finite union of closed balls of common radius eta."""

    n: int
    eta: float
    centers: np.ndarray
    grid: GridSpec | None = None

    def __post_init__(self):
        c = np.asarray(self.centers, dtype=float)
        if c.size == 0:
            c = np.zeros((0, self.n))
        if c.ndim == 1:
            c = c[:, None]
        if c.shape[1] != self.n:
            raise InvalidInputError("centers do not match ambient dimension")
        if self.eta <= 0:
            raise InvalidInputError("radius must be positive")
        if c.shape[0] > 1:
            order = np.lexsort(c.T[::-1])
            c = c[order]
            keep = np.ones(c.shape[0], dtype=bool)
            keep[1:] = np.any(np.diff(c, axis=0) != 0, axis=1)
            c = c[keep]
        if self.grid is not None and c.size:
            lat = c * self.grid.k
            if np.abs(lat - np.round(lat)).max() > 1e-9:
                raise InvalidInputError("centers are off the lattice")
        c = np.ascontiguousarray(c)
        c.setflags(write=False)
        object.__setattr__(self, "centers", c)

    @property
    def is_empty(self) -> bool:
        return self.centers.shape[0] == 0

    def distance_to_points(self, points: np.ndarray) -> np.ndarray:
        """Euclidean distance from each query point to the ball union."""
        if self.is_empty:
            raise EmptyRegionError("distance to an empty region is undefined")
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        d, _ = cKDTree(self.centers).query(pts)
        return np.maximum(0.0, d - self.eta)

    def contains_points(self, points: np.ndarray, tol: float = 1e-9) -> np.ndarray:
        if self.is_empty:
            pts = np.atleast_2d(np.asarray(points, dtype=float))
            return np.zeros(pts.shape[0], dtype=bool)
        return self.distance_to_points(points) <= tol

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "eta": float(self.eta),
            "k": None if self.grid is None else self.grid.k,
            "centers": self.centers.tolist(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BallUnion":
        try:
            n = int(obj["n"])
            eta = float(obj["eta"])
            centers = np.asarray(obj["centers"], dtype=float).reshape(-1, n)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError("malformed ball-union JSON: %s" % exc)
        return cls(n, eta, centers)


def bump_weights(coords: np.ndarray, eigvals: np.ndarray, eta: float) -> np.ndarray:
    """theta_{c,eta}(lambda) for every coord c (rows) and eigenvalue (cols)."""
    d = np.abs(eigvals[None, :] - coords[:, None])
    return np.clip((eta - d) * (4.0 / eta), 0.0, 1.0)


def big_theta_norm(T: OperatorTuple, xi, eta: float,
                   order: tuple | None = None) -> float:
    """Norm of the ordered bump product theta(T_1) theta(T_2) ... theta(T_n)."""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    if xi.size != T.n:
        raise InvalidInputError("point dimension does not match the tuple")
    lim = T.norm_bound + eta
    if np.abs(xi).max() > lim + 1e-12:
        raise InvalidInputError("point lies outside [-M-eta, M+eta]^n")
    idx = list(order) if order is not None else list(range(T.n))
    prod = None
    for i in idx:
        f = PiecewiseLinearFn.bump(float(xi[i]), eta)
        m = func_calc(T.ops[i], f).entries
        prod = m if prod is None else prod @ m
    return spectral_norm(prod)


def _batched_product_norms(H: np.ndarray, K: np.ndarray,
                           weights: np.ndarray) -> np.ndarray:
    """Norms ||A theta(c)|| for a batch of bump factors.

    H = A* A (r x r), K = B* U (r x dim) for the running product P = A B*
    with B orthonormal; weights holds theta values per candidate (rows) and
    eigenvalue (cols).  Restricting to each bump's support gives
    ||A B* theta||^2 = max eig of diag(w) Ks* H Ks diag(w), a small
    Hermitian problem per candidate (support size = a few eigenvalues).
    """
    supp = weights > 0
    m = int(supp.sum(axis=1).max())
    if m == 0:
        return np.zeros(weights.shape[0])
    # stable argsort moves each row's support indices to the front
    order = np.argsort(~supp, axis=1, kind="stable")[:, :m]
    wp = np.take_along_axis(weights, order, axis=1)
    Kc = K[:, order].transpose(1, 0, 2)  # (candidates, r, m)
    tmp = np.einsum("rs,csm->crm", H, Kc, optimize=True)
    M = np.einsum("cri,crj->cij", Kc.conj(), tmp, optimize=True)
    M *= wp[:, :, None] * wp[:, None, :]
    M = (M + M.conj().transpose(0, 2, 1)) / 2
    ev = np.linalg.eigvalsh(M)[..., -1]
    return np.sqrt(np.clip(ev, 0.0, None))


def synthetic_spectrum(T: OperatorTuple, eta: float, *,
                       order: tuple | None = None,
                       prefilter: bool = True,
                       grid_cap: int = DEFAULT_GRID_CAP) -> BallUnion:
    """Centers of the grid where the ordered bump product has norm >= 1-eta.

    Borderline centers within 1e-9 of the threshold are included.  The
    prefilter prunes grid prefixes whose partial product norm is already
    below threshold; it never changes the result (disable to cross-check).
    """
    if not 0 < eta < 1:
        raise InvalidInputError("eta must lie in (0, 1)")
    spec = GridSpec.create(T.n, T.norm_bound, eta)
    if spec.point_count > grid_cap:
        raise ResourceLimitError(
            "grid has %d points, above the cap %d" % (spec.point_count, grid_cap)
        )
    coords = spec.axis_coords()
    idx = tuple(order) if order is not None else tuple(range(T.n))
    if sorted(idx) != list(range(T.n)):
        raise InvalidInputError("order must be a permutation of the axes")
    eigs = [np.linalg.eigh(T.ops[i].entries) for i in idx]
    W = [bump_weights(coords, w, eta) for w, _ in eigs]
    thresh = (1.0 - eta) - BORDERLINE_TOL

    if T.n == 1:
        sel = np.nonzero(W[0].max(axis=1) >= thresh)[0]
        centers = coords[sel][:, None]
        return BallUnion(1, eta, centers, spec)

    if prefilter:
        centers = _pruned_sweep(coords, eigs, W, thresh)
    else:
        centers = _brute_force_sweep(coords, eigs, W, thresh)
    if centers.size:
        inv = np.argsort(idx)
        centers = centers[:, inv]
    return BallUnion(T.n, eta, centers, spec)


def _pruned_sweep(coords, eigs, W, thresh) -> np.ndarray:
    n = len(eigs)
    pass_idx = [np.nonzero(Wa.max(axis=1) >= thresh)[0] for Wa in W]
    if any(p.size == 0 for p in pass_idx):
        return np.zeros((0, n))
    # prefixes: (coord index tuple, A, B) with running product P = A B*,
    # B orthonormal, so that ||P|| = ||A||
    _, U0 = eigs[0]
    prefixes = []
    for c in pass_idx[0]:
        w = W[0][c]
        s = np.nonzero(w > 0)[0]
        prefixes.append(((c,), U0[:, s] * w[s], U0[:, s]))
    centers = []
    for axis in range(1, n):
        _, U = eigs[axis]
        Wa = W[axis]
        cand = pass_idx[axis]
        wc = Wa[cand]
        wc2 = wc ** 2
        last = axis == n - 1
        nxt = []
        for cs, A, B in prefixes:
            K = B.conj().T @ U
            H = A.conj().T @ A
            # cheap necessary condition ||A K diag(w)|| <= ||A||_F ||K diag(w)||_F
            q2 = np.abs(K) ** 2
            ub2 = float(np.trace(H).real) * (wc2 @ q2.sum(axis=0))
            keep = ub2 >= thresh ** 2
            if not keep.any():
                continue
            norms = _batched_product_norms(H, K, wc[keep])
            sel = cand[keep][norms >= thresh]
            if last:
                for c in sel:
                    centers.append(cs + (c,))
            else:
                for c in sel:
                    w = Wa[c]
                    s = np.nonzero(w > 0)[0]
                    nxt.append((cs + (c,), A @ (K[:, s] * w[s]), U[:, s]))
        prefixes = nxt
    if not centers:
        return np.zeros((0, n))
    ci = np.asarray(centers)
    return coords[ci]


def _brute_force_sweep(coords, eigs, W, thresh) -> np.ndarray:
    import itertools

    n = len(eigs)
    nc = coords.size
    factors = []
    for (w, U), Wa in zip(eigs, W):
        mats = np.empty((nc, U.shape[0], U.shape[0]), dtype=complex)
        for c in range(nc):
            mats[c] = (U * Wa[c]) @ U.conj().T
        factors.append(mats)
    centers = []
    for ci in itertools.product(range(nc), repeat=n):
        prod = factors[0][ci[0]]
        for axis in range(1, n):
            prod = prod @ factors[axis][ci[axis]]
        if spectral_norm(prod) >= thresh:
            centers.append(ci)
    if not centers:
        return np.zeros((0, n))
    return coords[np.asarray(centers)]


def hausdorff_distance(A: BallUnion, B: BallUnion, resolution: float) -> float:
    """Discrete Hausdorff distance between rasterized ball unions.

    Rasterizes both regions on a common cubic grid of the given pitch; the
    result is within sqrt(n)*resolution of the true Hausdorff distance and
    symmetric by construction.
    """
    if A.n != B.n:
        raise InvalidInputError("ambient dimensions differ")
    if resolution <= 0:
        raise InvalidInputError("resolution must be positive")
    if A.is_empty or B.is_empty:
        raise EmptyRegionError("Hausdorff distance to an empty region")
    n = A.n
    lo = np.minimum(A.centers.min(axis=0) - A.eta, B.centers.min(axis=0) - B.eta)
    hi = np.maximum(A.centers.max(axis=0) + A.eta, B.centers.max(axis=0) + B.eta)
    axes = [np.arange(lo[i] - resolution, hi[i] + 2 * resolution, resolution)
            for i in range(n)]
    grids = np.meshgrid(*axes, indexing="ij")
    pts = np.stack(grids, axis=-1).reshape(-1, n)
    shape = grids[0].shape
    mask_a = (A.distance_to_points(pts) <= 1e-12).reshape(shape)
    mask_b = (B.distance_to_points(pts) <= 1e-12).reshape(shape)
    if not mask_a.any() or not mask_b.any():
        raise EmptyRegionError("a region rasterized to nothing; lower resolution")
    dist_to_b = ndimage.distance_transform_edt(~mask_b) * resolution
    dist_to_a = ndimage.distance_transform_edt(~mask_a) * resolution
    d_ab = float(dist_to_b[mask_a].max())
    d_ba = float(dist_to_a[mask_b].max())
    return max(d_ab, d_ba)


@dataclass(frozen=True)
class NearSpectrumWitness:
    """Joint spectrum of a commuting tuple, witnessing a nearby tuple."""

    points: np.ndarray
    S: OperatorTuple
    eta: float


@dataclass(frozen=True)
class WitnessReport:
    witness: NearSpectrumWitness
    distances: tuple
    max_distance: float
    multiplicativity_defect: float
    norm_condition: str
    valid: bool

    def to_json(self) -> dict:
        return {
            "eta": float(self.witness.eta),
            "points": self.witness.points.tolist(),
            "distances": [float(d) for d in self.distances],
            "max_distance": float(self.max_distance),
            "multiplicativity_defect": float(self.multiplicativity_defect),
            "norm_condition": self.norm_condition,
            "valid": self.valid,
        }


COMMUTING_TOL = 1e-10


def near_spectrum_witness(T: OperatorTuple, S: OperatorTuple,
                          eta: float) -> WitnessReport:
    """Witness report for T built from an exactly commuting tuple S.

    The witness set is the joint spectrum of S.  The induced evaluation map
    is a homomorphism, so the multiplicativity defect is 0 and the lower
    norm condition holds automatically; the witness is valid iff every
    coordinate distance ||S_j - T_j|| is below eta.
    """
    if T.n != S.n or T.dim != S.dim:
        raise InvalidInputError("tuples do not match in shape")
    if not 0 < eta < 1:
        raise InvalidInputError("eta must lie in (0, 1)")
    comms = pairwise_commutator_norms(S)
    if comms.size and comms.max() > COMMUTING_TOL:
        raise InvalidWitnessError(
            "witness tuple is not commuting (max commutator %.3e)" % comms.max()
        )
    _, vals = joint_eigensystem(S)
    points = dedupe_points(vals, tol=1e-9)
    distances = tuple(
        spectral_norm(S.ops[j].entries - T.ops[j].entries) for j in range(T.n)
    )
    max_distance = max(distances)
    witness = NearSpectrumWitness(points, S, eta)
    return WitnessReport(
        witness=witness,
        distances=distances,
        max_distance=max_distance,
        multiplicativity_defect=0.0,
        norm_condition="pass",
        valid=max_distance < eta,
    )


def _sphere_samples(n: int, radius: float, resolution: float,
                    rng_seed: int = 0) -> np.ndarray:
    """Deterministic samples covering the radius-r sphere at the given pitch."""
    if n == 1:
        return np.array([[-radius], [radius]])
    if n == 2:
        m = max(8, int(math.ceil(2 * math.pi * radius / resolution)))
        t = 2 * math.pi * np.arange(m) / m
        return radius * np.stack([np.cos(t), np.sin(t)], axis=1)
    if n == 3:
        m = max(32, int(math.ceil(4 * math.pi * radius ** 2 / resolution ** 2)))
        i = np.arange(m) + 0.5
        phi = math.pi * (3 - math.sqrt(5)) * i
        z = 1 - 2 * i / m
        r = np.sqrt(np.clip(1 - z ** 2, 0, None))
        return radius * np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)
    raise UnsupportedDimensionError("boundary sampling supports n <= 3")


def containment_check(inner, outer: BallUnion, slack: float,
                      tol: float = 1e-9) -> bool:
    """True iff every point of ``inner`` lies within ``slack`` of ``outer``.

    ``inner`` is a finite point set or a BallUnion; for a BallUnion the
    centers are tried first via the sufficient ball-in-ball criterion and
    only the failures fall back to boundary sampling at pitch eta/20.
    """
    if isinstance(inner, BallUnion):
        if inner.n != outer.n:
            raise InvalidInputError("ambient dimensions differ")
        if inner.is_empty:
            return True
        if outer.is_empty:
            return False
        d, _ = cKDTree(outer.centers).query(inner.centers)
        easy = d + inner.eta <= outer.eta + slack + tol
        if easy.all():
            return True
        hard = inner.centers[~easy]
        shell = _sphere_samples(inner.n, inner.eta, inner.eta / 20)
        for c in hard:
            pts = np.vstack([c[None, :], c[None, :] + shell])
            if (outer.distance_to_points(pts) > slack + tol).any():
                return False
        return True
    pts = np.atleast_2d(np.asarray(inner, dtype=float))
    if pts.shape[1] != outer.n:
        raise InvalidInputError("ambient dimensions differ")
    if pts.shape[0] == 0:
        return True
    if outer.is_empty:
        return False
    return bool((outer.distance_to_points(pts) <= slack + tol).all())
