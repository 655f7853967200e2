import numpy as np
import pytest

from synspec import (
    GaplessCertificateError,
    HermitianMatrix,
    InvalidInputError,
    NoObstructionError,
    OperatorTuple,
    SymbolOperator,
    bott_index,
    certificate_matrix,
    certified_distance_bound,
    commutator_norm,
    index_hypothesis_check,
    joint_diagonalize,
    op_norm,
    pairwise_commutator_norms,
    random_almost_commuting,
    random_hermitian,
    scalar_synthetic_spectrum,
    spin_triple,
)


def herm(a):
    return HermitianMatrix(np.asarray(a, dtype=complex))


PAULI = (
    herm([[0, 1], [1, 0]]),
    herm([[0, -1j], [1j, 0]]),
    herm(np.diag([1.0, -1.0])),
)


class TestSpinTriple:
    def test_half_spin_is_pauli(self):
        T = spin_triple(0.5)
        assert T.dim == 2
        for got, want in zip(T.ops, PAULI):
            assert np.allclose(got.entries, want.entries)

    def test_commutator_scale(self):
        T = spin_triple(20)
        comms = pairwise_commutator_norms(T)
        assert np.abs(comms - 1.0 / 20).max() < 1e-9

    def test_norms_are_one(self):
        for j in (0.5, 1, 3.5, 10):
            T = spin_triple(j)
            for op in T.ops:
                assert op_norm(op) == pytest.approx(1.0, abs=1e-10)

    def test_casimir(self):
        for j in (1, 5, 20):
            T = spin_triple(j)
            total = sum(op.entries @ op.entries for op in T.ops)
            assert np.allclose(total, (j + 1) / j * np.eye(T.dim), atol=1e-10)

    def test_bad_j(self):
        with pytest.raises(InvalidInputError):
            spin_triple(0.3)
        with pytest.raises(InvalidInputError):
            spin_triple(0)


class TestBottIndex:
    def test_pauli_value(self):
        rep = bott_index(*PAULI)
        # eigenvalues of B are 1 (x3) and -3 (x1)
        B = certificate_matrix(*PAULI)
        w = np.sort(np.linalg.eigvalsh(B))
        assert np.allclose(w, [-3, 1, 1, 1], atol=1e-10)
        assert rep.value == 1
        assert rep.gap == pytest.approx(1.0)

    def test_spin_j20(self):
        T = spin_triple(20)
        rep = bott_index(*T.ops)
        assert rep.value == 1
        assert rep.gap > 0
        assert rep.certified_lower_bound == rep.gap / 3

    def test_commuting_sphere_triple_value_zero(self):
        rng = np.random.default_rng(11)
        # joint eigenvalues on the unit sphere, simultaneously diagonal
        pts = rng.standard_normal((6, 3))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        ops = tuple(herm(np.diag(pts[:, i])) for i in range(3))
        rep = bott_index(*ops)
        assert rep.value == 0
        assert rep.gap == pytest.approx(1.0, abs=1e-10)

    def test_gapless_certificate_rejected(self):
        z = herm(np.zeros((2, 2)))
        with pytest.raises(GaplessCertificateError):
            bott_index(z, z, z)

    def test_orientation_antisymmetry(self):
        T = spin_triple(5)
        a = bott_index(T.ops[0], T.ops[1], T.ops[2]).value
        b = bott_index(T.ops[1], T.ops[0], T.ops[2]).value
        assert a == -b


class TestCertifiedBound:
    def test_spin_bound(self):
        T = spin_triple(20)
        rep = certified_distance_bound(T)
        gap = bott_index(*T.ops).gap
        assert rep.bound == gap / 3 > 0
        assert rep.bott_value == 1
        assert "singular" in rep.caveat

    def test_commuting_raises(self):
        S = random_almost_commuting(3, 6, 0.5, 19, exact=True)
        ops = tuple(
            HermitianMatrix(op.entries / 2 + 0.4 * np.eye(6)) for op in S.ops
        )
        with pytest.raises(NoObstructionError):
            certified_distance_bound(OperatorTuple(ops))

    def test_scaling(self):
        T = spin_triple(10)
        r1 = certified_distance_bound(T)
        scaled = OperatorTuple(
            tuple(HermitianMatrix(0.9 * op.entries) for op in T.ops)
        )
        r2 = certified_distance_bound(scaled)
        assert r2.bound == pytest.approx(0.9 * r1.bound, rel=1e-9)

    def test_needs_triple(self):
        T = random_almost_commuting(2, 4, 1e-2, 0)
        with pytest.raises(InvalidInputError):
            certified_distance_bound(T)

    def test_value_stable_under_small_perturbations(self):
        T = spin_triple(10)
        base = bott_index(*T.ops)
        rng = np.random.default_rng(12)
        for _ in range(10):
            eps = 0.9 * base.gap / 3
            ops = tuple(
                HermitianMatrix(op.entries
                                + random_hermitian(T.dim, rng, norm=eps).entries)
                for op in T.ops
            )
            assert bott_index(*ops).value == base.value


class TestJointDiagonalize:
    def test_commuting_input_unchanged(self):
        S = random_almost_commuting(3, 10, 0.3, 23, exact=True)
        rep = joint_diagonalize(S)
        assert rep.max_distance <= 1e-9
        assert pairwise_commutator_norms(rep.S).max() <= 1e-10

    def test_two_by_two_closed_form(self):
        eps = 0.01
        T = OperatorTuple((
            herm([[0, eps], [eps, 0]]),
            herm(np.diag([1.0, -1.0])),
        ))
        rep = joint_diagonalize(T)
        assert rep.max_distance == pytest.approx(eps, abs=1e-12)
        assert op_norm(rep.S.ops[0]) < 1e-12
        assert np.allclose(rep.S.ops[1].entries, np.diag([1.0, -1.0]))

    def test_output_commutes_and_descends(self):
        for seed in range(6):
            T = random_almost_commuting(2 + seed % 2, 12, 1e-2, seed)
            rep = joint_diagonalize(T)
            assert pairwise_commutator_norms(rep.S).max() <= 1e-10
            trace = np.asarray(rep.objective_trace)
            assert np.all(np.diff(trace) <= 1e-10)

    def test_distances_recomputable(self):
        T = random_almost_commuting(2, 8, 1e-2, 31)
        rep = joint_diagonalize(T)
        for j in range(T.n):
            d = np.linalg.norm(T.ops[j].entries - rep.S.ops[j].entries, 2)
            assert rep.distances[j] == pytest.approx(d, abs=1e-9)

    def test_spin_distance_exceeds_bound(self):
        T = spin_triple(20)
        bound = certified_distance_bound(T).bound
        rep = joint_diagonalize(T, max_sweeps=30)
        assert rep.max_distance >= bound

    def test_bad_tol(self):
        T = random_almost_commuting(2, 4, 1e-2, 0)
        with pytest.raises(InvalidInputError):
            joint_diagonalize(T, tol=0)


class TestIndexHypothesisCheck:
    def test_shift_fails_with_hole_index(self):
        rep = index_hypothesis_check(SymbolOperator.shift(), 0.1)
        assert not rep.verdict
        assert len(rep.holes) == 1
        hole = rep.holes[0]
        assert hole.index == -1
        assert abs(hole.lam) < 0.5

    def test_normal_symbol_passes(self):
        op = SymbolOperator({-1: 0.5, 1: 0.5})
        rep = index_hypothesis_check(op, 0.1)
        assert rep.verdict
        assert len(rep.holes) == 0

    def test_scaled_segment_symbol_passes(self):
        # z/2 + 1/(2z): curve is the segment [-1, 1], no holes
        op = SymbolOperator({1: 0.5, -1: 0.5})
        rep = index_hypothesis_check(op, 0.15)
        assert rep.verdict

    def test_scalar_spectrum_covers_curve(self):
        op = SymbolOperator.shift()
        region, err = scalar_synthetic_spectrum(op, 0.1)
        t = np.exp(2j * np.pi * np.arange(64) / 64)
        pts = np.stack([t.real, t.imag], axis=1)
        assert region.contains_points(pts, tol=1e-9).all()
        assert err < 0.01

    def test_oversized_symbol_rejected(self):
        op = SymbolOperator({0: 1.5})
        with pytest.raises(InvalidInputError):
            index_hypothesis_check(op, 0.1)
