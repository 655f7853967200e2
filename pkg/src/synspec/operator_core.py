"""Hermitian matrices, spectral functional calculus, and tuple generators.

The ambient operator model is a dense complex self-adjoint matrix.  Inputs
are symmetrized as (A + A*)/2 on ingestion and rejected only when the
deviation from self-adjointness exceeds 1e-12 relative to the entry scale
(JSON round-trip noise stays below that).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError

HERMITIZATION_TOL = 1e-12


def _as_readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class HermitianMatrix:
    """Dense complex self-adjoint matrix."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise InvalidInputError("expected a square matrix of dim >= 1")
        if not np.all(np.isfinite(a)):
            raise InvalidInputError("matrix has non-finite entries")
        scale = 1.0 + float(np.abs(a).max())
        dev = float(np.abs(a - a.conj().T).max())
        if dev > HERMITIZATION_TOL * scale:
            raise InvalidInputError(
                "matrix is not self-adjoint (deviation %.3e)" % dev
            )
        object.__setattr__(self, "entries", _as_readonly((a + a.conj().T) / 2))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "re": self.entries.real.tolist(),
            "im": self.entries.imag.tolist(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "HermitianMatrix":
        try:
            dim = int(obj["dim"])
            re = np.asarray(obj["re"], dtype=float)
            im = np.asarray(obj["im"], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError("malformed matrix JSON: %s" % exc)
        if re.shape != (dim, dim) or im.shape != (dim, dim):
            raise InvalidInputError("matrix JSON arrays do not match dim")
        return cls(re + 1j * im)


@dataclass(frozen=True)
class OperatorTuple:
    """Ordered tuple of Hermitian matrices sharing a dimension and bound M."""

    ops: tuple
    norm_bound: float = 1.0

    def __post_init__(self):
        ops = tuple(self.ops)
        if not ops:
            raise InvalidInputError("empty operator tuple")
        dims = {op.dim for op in ops}
        if len(dims) != 1:
            raise InvalidInputError("operators do not share a dimension")
        if self.norm_bound <= 0:
            raise InvalidInputError("norm bound must be positive")
        for op in ops:
            if op_norm(op) > self.norm_bound + 1e-9:
                raise InvalidInputError(
                    "operator norm exceeds the bound M=%g" % self.norm_bound
                )
        object.__setattr__(self, "ops", ops)

    @property
    def n(self) -> int:
        return len(self.ops)

    @property
    def dim(self) -> int:
        return self.ops[0].dim

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "dim": self.dim,
            "M": float(self.norm_bound),
            "ops": [op.to_json() for op in self.ops],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "OperatorTuple":
        try:
            ops = tuple(HermitianMatrix.from_json(o) for o in obj["ops"])
            M = float(obj["M"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError("malformed tuple JSON: %s" % exc)
        return cls(ops, M)


@dataclass(frozen=True)
class PiecewiseLinearFn:
    """Piecewise linear function given by breakpoints, constant outside."""

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 1:
            raise InvalidInputError("breakpoints must be matching 1-d arrays")
        if xs.size > 1 and not np.all(np.diff(xs) > 0):
            raise InvalidInputError("abscissas must be strictly increasing")
        object.__setattr__(self, "xs", _as_readonly(xs))
        object.__setattr__(self, "ys", _as_readonly(ys))

    def __call__(self, t):
        return np.interp(t, self.xs, self.ys)

    @classmethod
    def bump(cls, center: float, eta: float) -> "PiecewiseLinearFn":
        """Unit plateau of half-width 3*eta/4 with linear ramps down to eta."""
        if eta <= 0:
            raise InvalidInputError("eta must be positive")
        xs = np.array([
            center - eta,
            center - 0.75 * eta,
            center + 0.75 * eta,
            center + eta,
        ])
        return cls(xs, np.array([0.0, 1.0, 1.0, 0.0]))

    @classmethod
    def identity(cls, lo: float = -1.0, hi: float = 1.0) -> "PiecewiseLinearFn":
        return cls(np.array([lo, hi]), np.array([lo, hi]))

    @classmethod
    def constant(cls, value: float) -> "PiecewiseLinearFn":
        return cls(np.array([0.0]), np.array([float(value)]))


def compose(outer: PiecewiseLinearFn, inner: PiecewiseLinearFn) -> PiecewiseLinearFn:
    """Composition outer(inner(.)) for nondecreasing ``inner``."""
    if inner.ys.size > 1 and np.any(np.diff(inner.ys) < 0):
        raise InvalidInputError("inner function must be nondecreasing")
    # pull outer breakpoints back through inner, then merge with inner's own
    pulled = np.interp(outer.xs, inner.ys, inner.xs)
    xs = np.unique(np.concatenate([inner.xs, pulled]))
    ys = outer(inner(xs))
    return PiecewiseLinearFn(xs, ys)


def spectral_norm(a: np.ndarray) -> float:
    """Largest singular value of an arbitrary dense matrix."""
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def op_norm(A: HermitianMatrix) -> float:
    """Operator norm of a Hermitian matrix: largest absolute eigenvalue."""
    w = np.linalg.eigvalsh(A.entries)
    return float(np.abs(w).max())


def commutator_norm(A: HermitianMatrix, B: HermitianMatrix) -> float:
    """Operator norm of AB - BA."""
    if A.dim != B.dim:
        raise InvalidInputError("dimension mismatch in commutator")
    c = A.entries @ B.entries - B.entries @ A.entries
    return spectral_norm(c)


def pairwise_commutator_norms(T: OperatorTuple) -> np.ndarray:
    """Upper-triangular pairwise commutator norms, flattened."""
    out = []
    for i in range(T.n):
        for j in range(i + 1, T.n):
            out.append(commutator_norm(T.ops[i], T.ops[j]))
    return np.asarray(out)


def func_calc(A: HermitianMatrix, f: PiecewiseLinearFn) -> HermitianMatrix:
    """Spectral functional calculus: U f(L) U* for A = U L U*."""
    w, U = np.linalg.eigh(A.entries)
    fw = f(w)
    out = (U * fw) @ U.conj().T
    return HermitianMatrix((out + out.conj().T) / 2)


def _random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    # fix column phases for determinism across LAPACK sign choices
    d = np.diagonal(r)
    ph = d / np.abs(d)
    return q * ph.conj()


def random_hermitian(dim: int, rng: np.random.Generator,
                     norm: float = 1.0) -> HermitianMatrix:
    """Random dense Hermitian matrix rescaled to the given operator norm."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    h = (g + g.conj().T) / 2
    s = spectral_norm(h)
    if s > 0:
        h = h * (norm / s)
    return HermitianMatrix(h)


def random_almost_commuting(n: int, dim: int, delta: float, seed: int,
                            exact: bool = False) -> OperatorTuple:
    """Deterministic generator of tuples with pairwise commutators < delta.

    A commuting tuple (simultaneously diagonal in a random common unitary
    basis, eigenvalues in [-1+delta, 1-delta]) is perturbed by independent
    Hermitian errors of operator norm delta/5 each, then norm-clamped.  The
    perturbation scale keeps the analytic commutator bound
    4*delta/5 + 2*delta^2/25 strictly below delta.  With ``exact=True`` the
    perturbation is skipped and the commutators are exactly zero.
    """
    if n < 1 or dim < 1:
        raise InvalidInputError("n and dim must be >= 1")
    if not 0 < delta < 1:
        raise InvalidInputError("delta must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    U = _random_unitary(dim, rng)
    ops = []
    for _ in range(n):
        lam = rng.uniform(-1 + delta, 1 - delta, size=dim)
        a = (U * lam) @ U.conj().T
        a = (a + a.conj().T) / 2
        if not exact:
            e = random_hermitian(dim, rng, norm=delta / 5).entries
            a = a + e
        s = spectral_norm(a)
        if s > 1.0:
            a = a / s
        ops.append(HermitianMatrix(a))
    return OperatorTuple(tuple(ops), norm_bound=1.0)


def joint_eigensystem(T: OperatorTuple, cluster_tol: float = 1e-8):
    """Common eigenbasis of an (exactly) commuting tuple.

    Returns (U, vals) with U unitary and vals of shape (dim, n):
    row i holds the joint eigenvalue vector of basis column i.  Built by
    recursive eigenspace refinement: diagonalize the first operator, then
    diagonalize each following operator restricted to the eigenvalue
    clusters accumulated so far.
    """
    dim = T.dim
    U = np.eye(dim, dtype=complex)
    vals = np.zeros((dim, T.n))
    blocks = [np.arange(dim)]
    for j, op in enumerate(T.ops):
        new_blocks = []
        for blk in blocks:
            Ub = U[:, blk]
            sub = Ub.conj().T @ op.entries @ Ub
            sub = (sub + sub.conj().T) / 2
            w, V = np.linalg.eigh(sub)
            U[:, blk] = Ub @ V
            vals[blk, j] = w
            # split the block at eigenvalue gaps
            start = 0
            for i in range(1, blk.size):
                if w[i] - w[i - 1] > cluster_tol:
                    new_blocks.append(blk[start:i])
                    start = i
            new_blocks.append(blk[start:])
        blocks = new_blocks
    return U, vals


def dedupe_points(points: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Merge points closer than tol (greedy, in lexicographic order)."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    order = np.lexsort(pts.T[::-1])
    pts = pts[order]
    kept = []
    for p in pts:
        if not kept or np.linalg.norm(p - np.asarray(kept), axis=1).min() > tol:
            kept.append(p.tolist())
    return np.asarray(kept)
