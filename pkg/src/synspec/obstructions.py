"""Triple obstruction certificates and commuting approximants.

The obstruction certificate for a Hermitian triple (H1, H2, H3) is the
2d x 2d block matrix

    B = [[H3, H1 - i H2], [H1 + i H2, -H3]]

whose half-signature is an integer that vanishes on gapped commuting
triples.  Perturbing each H_j by less than gap/3 moves B by less than the
gap, so a nonzero value certifies that no commuting triple with a gapped
certificate lies within gap/3 in each coordinate.  The commuting
approximant search is a Jacobi-type simultaneous diagonalization.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    GaplessCertificateError,
    InvalidInputError,
    NoObstructionError,
)
from .operator_core import (
    HermitianMatrix,
    OperatorTuple,
    spectral_norm,
)
from .region_geometry import region_topology
from .symbol_models import SymbolOperator, fredholm_index
from .synthetic_spectrum import BallUnion, GridSpec, bump_weights

CERTIFICATE_GAP_FLOOR = 1e-8


@dataclass(frozen=True)
class BottReport:
    value: int
    gap: float
    certified_lower_bound: float

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "gap": float(self.gap),
            "certified_lower_bound": float(self.certified_lower_bound),
        }


def certificate_matrix(H1: HermitianMatrix, H2: HermitianMatrix,
                       H3: HermitianMatrix) -> np.ndarray:
    if not (H1.dim == H2.dim == H3.dim):
        raise InvalidInputError("certificate needs a shared dimension")
    a, b, c = H1.entries, H2.entries, H3.entries
    return np.block([[c, a - 1j * b], [a + 1j * b, -c]])


def bott_index(H1: HermitianMatrix, H2: HermitianMatrix,
               H3: HermitianMatrix) -> BottReport:
    """Half-signature of the certificate matrix, with its spectral gap."""
    B = certificate_matrix(H1, H2, H3)
    w = np.linalg.eigvalsh(B)
    gap = float(np.abs(w).min())
    if gap <= CERTIFICATE_GAP_FLOOR:
        raise GaplessCertificateError(
            "certificate is singular (gap %.3e); no index defined" % gap
        )
    npos = int((w > 0).sum())
    nneg = int((w < 0).sum())
    return BottReport(value=(npos - nneg) // 2, gap=gap,
                      certified_lower_bound=gap / 3)


def spin_triple(j: float) -> OperatorTuple:
    """Normalized spin triple (Jx/j, Jy/j, Jz/j) in the (2j+1)-dim rep."""
    twoj = round(2 * j)
    if abs(2 * j - twoj) > 1e-12 or twoj < 1:
        raise InvalidInputError("j must be a half-integer >= 1/2")
    j = twoj / 2
    dim = twoj + 1
    m = j - np.arange(dim)  # basis ordered m = j, j-1, ..., -j
    jz = np.diag(m.astype(complex))
    jp = np.zeros((dim, dim), dtype=complex)
    for i in range(1, dim):
        mm = m[i]
        jp[i - 1, i] = math.sqrt(j * (j + 1) - mm * (mm + 1))
    jx = (jp + jp.conj().T) / 2
    jy = (jp - jp.conj().T) / 2j
    ops = tuple(HermitianMatrix(a / j) for a in (jx, jy, jz))
    return OperatorTuple(ops, norm_bound=1.0)


@dataclass(frozen=True)
class DistanceBoundReport:
    bound: float
    gap: float
    bott_value: int
    caveat: str

    def to_json(self) -> dict:
        return {
            "bound": float(self.bound),
            "gap": float(self.gap),
            "bott_value": self.bott_value,
            "caveat": self.caveat,
        }


_GAPLESS_CAVEAT = (
    "a commuting triple whose own certificate is singular evades the "
    "signature argument; the bound rules out gapped commuting triples only"
)


def certified_distance_bound(H: OperatorTuple) -> DistanceBoundReport:
    """gap/3 lower bound on the distance to gapped commuting triples.

    Any commuting triple within gap/3 per coordinate keeps the certificate
    invertible along the linear interpolation (||dB|| <= sum ||dH_j||), so
    its value would have to match the nonzero value here - impossible for
    a gapped commuting triple, whose value is 0.
    """
    if H.n != 3:
        raise InvalidInputError("distance bound is defined for triples")
    rep = bott_index(*H.ops)
    if rep.value == 0:
        raise NoObstructionError("Bott value is 0; no lower bound certified")
    return DistanceBoundReport(bound=rep.gap / 3, gap=rep.gap,
                               bott_value=rep.value, caveat=_GAPLESS_CAVEAT)


@dataclass(frozen=True)
class ApproximantReport:
    S: OperatorTuple
    distances: tuple
    max_distance: float
    sweeps: int
    off_diag_residual: float
    objective_trace: tuple = ()

    def to_json(self) -> dict:
        return {
            "S": self.S.to_json(),
            "distances": [float(d) for d in self.distances],
            "max_distance": float(self.max_distance),
            "sweeps": self.sweeps,
            "off_diag_residual": float(self.off_diag_residual),
            "objective_trace": [float(x) for x in self.objective_trace],
        }


def _off2(mats) -> float:
    total = 0.0
    for a in mats:
        total += float((np.abs(a) ** 2).sum() - (np.abs(np.diagonal(a)) ** 2).sum())
    return total


def joint_diagonalize(T: OperatorTuple, tol: float = 1e-12,
                      max_sweeps: int = 200) -> ApproximantReport:
    """Jacobi-type simultaneous diagonalization; output commutes exactly.

    Cyclic sweeps over index pairs; each rotation is the closed-form 2x2
    minimizer of the joint off-diagonal objective (largest eigenvector of
    the stacked 3x3 Gram matrix).  Terminates when a sweep improves the
    objective by less than tol, then returns S_j = U diag(U* T_j U) U*.
    """
    if tol <= 0:
        raise InvalidInputError("tol must be positive")
    d = T.dim
    mats = [op.entries.copy() for op in T.ops]
    U = np.eye(d, dtype=complex)
    off = _off2(mats)
    trace = [off]
    sweeps = 0
    for _ in range(max_sweeps):
        sweeps += 1
        for p in range(d - 1):
            for q in range(p + 1, d):
                G = np.zeros((3, 3))
                for a in mats:
                    h = np.array([
                        (a[p, p] - a[q, q]).real,
                        2 * a[p, q].real,
                        2 * a[p, q].imag,
                    ])
                    G += np.outer(h, h)
                _, V = np.linalg.eigh(G)
                v = V[:, -1]
                if v[0] < 0:
                    v = -v
                x, y, z = v
                denom = math.sqrt(2.0 * (x + 1.0))
                if denom < 1e-12:
                    continue
                c = math.sqrt((x + 1.0) / 2.0)
                s = (y - 1j * z) / denom
                if abs(s) < 1e-16:
                    continue
                # rows/cols p and q of each matrix: A <- R A R*, U <- U R*
                for a in mats:
                    rp = c * a[p, :] + np.conj(s) * a[q, :]
                    rq = -s * a[p, :] + c * a[q, :]
                    a[p, :], a[q, :] = rp, rq
                    cp = c * a[:, p] + s * a[:, q]
                    cq = -np.conj(s) * a[:, p] + c * a[:, q]
                    a[:, p], a[:, q] = cp, cq
                up = c * U[:, p] + s * U[:, q]
                uq = -np.conj(s) * U[:, p] + c * U[:, q]
                U[:, p], U[:, q] = up, uq
        new_off = _off2(mats)
        trace.append(new_off)
        gain = off - new_off
        off = new_off
        if gain < tol:
            break
    S_ops = []
    for a in mats:
        diag = np.diagonal(a).real
        s = (U * diag) @ U.conj().T
        S_ops.append(HermitianMatrix((s + s.conj().T) / 2))
    S = OperatorTuple(tuple(S_ops), norm_bound=T.norm_bound + 1e-6)
    distances = tuple(
        spectral_norm(T.ops[i].entries - S.ops[i].entries) for i in range(T.n)
    )
    return ApproximantReport(S=S, distances=distances,
                             max_distance=max(distances), sweeps=sweeps,
                             off_diag_residual=math.sqrt(max(off, 0.0)),
                             objective_trace=tuple(trace))


@dataclass(frozen=True)
class HoleVerdict:
    lam: complex
    index: int
    passed: bool


@dataclass(frozen=True)
class IndexCheckReport:
    verdict: bool
    holes: tuple
    spectrum: BallUnion
    sampling_error_bound: float

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "holes": [
                {
                    "lambda": [h.lam.real, h.lam.imag],
                    "index": h.index,
                    "passed": h.passed,
                }
                for h in self.holes
            ],
            "spectrum": self.spectrum.to_json(),
            "sampling_error_bound": float(self.sampling_error_bound),
        }


def scalar_synthetic_spectrum(op: SymbolOperator, eta: float,
                              circle_samples: int = 4096) -> tuple:
    """Synthetic spectrum of the symbol pair (Re s, Im s) on the circle.

    The quotient model is commutative, so the operator norm of the bump
    product is the sup over the curve, approximated on a dense circle
    sampling.  Returns (BallUnion, sampling error bound) where the bound
    is the observed modulus of continuity of the sampled curve.
    """
    if not 0 < eta < 1:
        raise InvalidInputError("eta must lie in (0, 1)")
    t = np.arange(circle_samples) / circle_samples
    curve = op.eval(np.exp(2j * math.pi * t))
    a1, a2 = curve.real, curve.imag
    if max(np.abs(a1).max(), np.abs(a2).max()) > 1 + 1e-9:
        raise InvalidInputError(
            "symbol values leave [-1,1]^2; rescale the coefficients"
        )
    spec = GridSpec.create(2, 1.0, eta)
    coords = spec.axis_coords()
    w1 = bump_weights(coords, a1, eta)
    w2 = bump_weights(coords, a2, eta)
    thresh = (1.0 - eta) - 1e-9
    centers = []
    for i1 in range(coords.size):
        row = w1[i1]
        if row.max() < thresh:
            continue
        vals = (w2 * row[None, :]).max(axis=1)
        for i2 in np.nonzero(vals >= thresh)[0]:
            centers.append((coords[i1], coords[i2]))
    region = BallUnion(2, eta, np.asarray(centers).reshape(-1, 2), spec)
    hop = float(np.abs(np.diff(np.append(curve, curve[0]))).max())
    return region, hop


def index_hypothesis_check(op: SymbolOperator, eta: float,
                           circle_samples: int = 4096,
                           resolution: float | None = None) -> IndexCheckReport:
    """Test that the winding index vanishes in every hole of the
    quotient-side synthetic spectrum; a nonzero index in any hole fails."""
    region, hop = scalar_synthetic_spectrum(op, eta, circle_samples)
    if resolution is None:
        resolution = eta / 10
    topo = region_topology(region, resolution)
    holes = []
    for hole in topo.holes:
        lam = complex(hole.representative[0], hole.representative[1])
        rep = fredholm_index(op, lam)
        holes.append(HoleVerdict(lam=lam, index=rep.index,
                                 passed=rep.index == 0))
    verdict = all(h.passed for h in holes)
    return IndexCheckReport(verdict=verdict, holes=tuple(holes),
                            spectrum=region, sampling_error_bound=hop)
