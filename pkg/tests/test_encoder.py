"""Encoder construction tests: symmetrizers, copies, alignment, block structure."""

from __future__ import annotations

import numpy as np
import pytest
from scipy.linalg import expm

from nscodec import (
    AlignmentError,
    EncoderSpec,
    align_copies,
    build_encoder,
    collective_operator,
    encoder_from_copies,
    isotypic_fundamental_basis,
    irrep_dimension,
    kron_all,
    load_encoder,
    random_special_unitary,
    reference_encoder_qubit,
    save_encoder,
    spin_three_half_generators,
    standard_tableaux,
    symmetrizer_projector,
    unitarity_residual,
    verify_block_structure,
)
from nscodec.tableaux import StandardTableau, YoungDiagram, fundamental_equivalent_shape

U = np.array([1, 0], dtype=complex)
D = np.array([0, 1], dtype=complex)


def hand_derived_mixed_pair():
    """The hand-derived d=2 mixed-symmetry copy: symmetrize slots 1,2 then couple."""
    v_up = (2 * kron_all([U, U, D]) - kron_all([U, D, U]) - kron_all([D, U, U])) / np.sqrt(6)
    v_dn = (kron_all([U, D, D]) + kron_all([D, U, D]) - 2 * kron_all([D, D, U])) / np.sqrt(6)
    return v_up, v_dn


def singlet_pair():
    s_up = (kron_all([U, D, U]) - kron_all([D, U, U])) / np.sqrt(2)
    s_dn = (kron_all([U, D, D]) - kron_all([D, U, D])) / np.sqrt(2)
    return s_up, s_dn


class TestSymmetrizerProjector:
    @pytest.mark.parametrize(
        "rows,d",
        [
            (((1, 2), (3,)), 2),
            (((1, 3), (2,)), 2),
            (((1, 2, 3),), 2),
            (((1, 2), (3,)), 3),
            (((1, 2), (3,), (4,)), 3),
        ],
    )
    def test_idempotent_with_expected_rank(self, rows, d):
        tableau = StandardTableau(rows)
        p = symmetrizer_projector(tableau, d)
        assert np.linalg.norm(p @ p - p) < 1e-10
        s = np.linalg.svd(p, compute_uv=False)
        rank = int(np.sum(s > 1e-10 * s[0]))
        assert rank == irrep_dimension(tableau.shape, d)

    def test_commutes_with_collective_action(self):
        rng = np.random.default_rng(17)
        for rows, d in [(((1, 2), (3,)), 2), (((1, 2), (3,), (4,)), 3)]:
            p = symmetrizer_projector(StandardTableau(rows), d)
            w = collective_operator(random_special_unitary(d, rng), len(rows[0]) + len(rows) - 1)
            assert np.linalg.norm(p @ w - w @ p) < 1e-10

    def test_first_tableau_image_contains_mixed_pair(self):
        p = symmetrizer_projector(StandardTableau(((1, 2), (3,))), 2)
        for v in hand_derived_mixed_pair():
            assert np.linalg.norm(p @ v - v) < 1e-10

    def test_symmetric_tableau_fixes_symmetric_states(self):
        p = symmetrizer_projector(StandardTableau(((1, 2, 3),)), 2)
        uuu = kron_all([U, U, U])
        sym = (kron_all([U, U, D]) + kron_all([U, D, U]) + kron_all([D, U, U])) / np.sqrt(3)
        assert np.linalg.norm(p @ uuu - uuu) < 1e-12
        assert np.linalg.norm(p @ sym - sym) < 1e-12
        # and it kills the singlet-type states
        assert np.linalg.norm(p @ singlet_pair()[0]) < 1e-12

    def test_rejects_bad_dimension(self):
        with pytest.raises(ValueError):
            symmetrizer_projector(StandardTableau(((1, 2), (3,))), 1)


class TestIsotypicBasis:
    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_copy_count_and_orthonormality(self, d):
        copies = isotypic_fundamental_basis(d)
        assert len(copies) == d
        stacked = np.hstack(copies)
        gram = stacked.conj().T @ stacked
        assert np.linalg.norm(gram - np.eye(d * d)) < 1e-12

    @pytest.mark.parametrize("d", [2, 3])
    def test_copies_are_invariant_subspaces(self, d):
        copies = isotypic_fundamental_basis(d)
        rng = np.random.default_rng(23)
        for q in copies:
            for _ in range(3):
                w = random_special_unitary(d, rng)
                moved = q
                for slot in range(d + 1):
                    moved = _apply_site(w, moved, d, d + 1, slot)
                leak = moved - q @ (q.conj().T @ moved)
                assert np.linalg.norm(leak) < 1e-10

    def test_qubit_copies_span_hand_derived_spaces(self):
        copies = isotypic_fundamental_basis(2)
        v_up, v_dn = hand_derived_mixed_pair()
        s_up, s_dn = singlet_pair()
        p0 = copies[0] @ copies[0].conj().T
        p1 = copies[1] @ copies[1].conj().T
        assert np.linalg.norm(p0 - np.outer(v_up, v_up) - np.outer(v_dn, v_dn)) < 1e-10
        assert np.linalg.norm(p1 - np.outer(s_up, s_up) - np.outer(s_dn, s_dn)) < 1e-10
        joint = np.hstack(copies)
        target = np.column_stack([v_up, v_dn, s_up, s_dn])
        assert (
            np.linalg.norm(joint @ joint.conj().T - target @ target.conj().T) < 1e-10
        )

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_weight_ordering(self, d):
        weights = np.arange(d - 1, -d, -2).astype(float)
        gen = np.diag(weights).astype(complex)
        for q in isotypic_fundamental_basis(d):
            lq = np.zeros_like(q)
            for slot in range(d + 1):
                lq += _apply_site(gen, q, d, d + 1, slot)
            restricted = q.conj().T @ lq
            assert np.linalg.norm(restricted - np.diag(weights)) < 1e-8


def _apply_site(op, block, d, n, slot):
    left, right = d**slot, d ** (n - 1 - slot)
    tensor = block.reshape(left, d, right, block.shape[1])
    return np.einsum("ab,xbym->xaym", op, tensor).reshape(d**n, block.shape[1])


class TestAlignment:
    @pytest.mark.parametrize("d", [2, 3])
    def test_restrictions_equal_defining_action_on_fresh_samples(self, d):
        aligned = align_copies(isotypic_fundamental_basis(d), d, seed=0)
        rng = np.random.default_rng(1234)
        for _ in range(100):
            w = random_special_unitary(d, rng)
            for q in aligned:
                moved = q
                for slot in range(d + 1):
                    moved = _apply_site(w, moved, d, d + 1, slot)
                restricted = q.conj().T @ moved
                assert np.max(np.abs(restricted - w)) < 1e-10

    def test_non_invariant_input_raises(self):
        d = 2
        rng = np.random.default_rng(5)
        q, _ = np.linalg.qr(
            rng.standard_normal((8, 2)) + 1j * rng.standard_normal((8, 2))
        )
        with pytest.raises(AlignmentError):
            align_copies([q], d, seed=0)

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            align_copies([np.eye(4)], 2, seed=0)
        with pytest.raises(ValueError):
            align_copies([], 2, seed=0)


class TestEncoderSpec:
    def test_rejects_non_unitary(self):
        m = np.eye(8, dtype=complex)
        m[0, 0] = 2.0
        with pytest.raises(ValueError):
            EncoderSpec(d=2, matrix=m)

    def test_rejects_wrong_size(self):
        with pytest.raises(ValueError):
            EncoderSpec(d=2, matrix=np.eye(4, dtype=complex))

    def test_rejects_unknown_tags(self):
        with pytest.raises(ValueError):
            EncoderSpec(d=2, matrix=np.eye(8, dtype=complex), layout="column-major")
        with pytest.raises(ValueError):
            EncoderSpec(d=2, matrix=np.eye(8, dtype=complex), generator="magic")

    def test_matrix_is_read_only(self, reference_encoder):
        with pytest.raises(ValueError):
            reference_encoder.matrix[0, 0] = 5.0


class TestBuildEncoder:
    def test_unitarity_and_tags(self, encoder_d3):
        assert unitarity_residual(encoder_d3.matrix) < 1e-12
        assert encoder_d3.layout == "multiplicity-major"
        assert encoder_d3.generator == "symmetrizer"
        assert encoder_d3.protected_dim == 9

    def test_block_structure_on_haar_samples(self, encoder_d3):
        rng = np.random.default_rng(99)
        for _ in range(100):
            report = verify_block_structure(
                encoder_d3, random_special_unitary(3, rng), tol=1e-10
            )
            assert report.passed, (report.residual_ns, report.residual_offdiag)

    def test_deterministic_for_fixed_seed(self):
        a = build_encoder(2, seed=7)
        b = build_encoder(2, seed=7)
        assert np.array_equal(a.matrix, b.matrix)

    def test_bottom_block_is_a_homomorphism(self, encoder_d2):
        rng = np.random.default_rng(44)
        u = encoder_d2.matrix
        p = encoder_d2.protected_dim

        def bottom(w):
            return (u.conj().T @ collective_operator(w, 3) @ u)[p:, p:]

        w1, w2 = random_special_unitary(2, rng), random_special_unitary(2, rng)
        assert np.linalg.norm(bottom(w1 @ w2) - bottom(w1) @ bottom(w2)) < 1e-10

    def test_misaligned_copies_fail_verification(self):
        copies = isotypic_fundamental_basis(2)  # deliberately not aligned
        spec = encoder_from_copies(copies, 2)
        report = verify_block_structure(spec, random_special_unitary(2, 7), tol=1e-10)
        assert not report.passed
        assert report.residual_ns > 1e-3


class TestVerifyBlockStructure:
    def test_report_fields(self, encoder_d2):
        w = random_special_unitary(2, 3)
        report = verify_block_structure(encoder_d2, w, tol=1e-10)
        assert report.passed
        assert report.residual_ns >= 0 and report.residual_offdiag >= 0
        assert np.array_equal(report.w_used, w)
        assert report.tol == 1e-10

    def test_absurd_tolerance_fails(self, encoder_d2):
        report = verify_block_structure(encoder_d2, random_special_unitary(2, 3), 1e-16)
        assert not report.passed

    def test_rejects_bad_w(self, encoder_d2):
        with pytest.raises(ValueError):
            verify_block_structure(encoder_d2, np.eye(3), 1e-10)
        with pytest.raises(ValueError):
            verify_block_structure(encoder_d2, np.eye(2), -1.0)


class TestReferenceEncoder:
    def test_unitary_to_fifteen_decimals(self, reference_encoder):
        assert unitarity_residual(reference_encoder.matrix) < 1e-15

    def test_singlet_column_entries(self, reference_encoder):
        expected = np.zeros(8, dtype=complex)
        expected[2], expected[4] = 1 / np.sqrt(2), -1 / np.sqrt(2)
        assert np.allclose(reference_encoder.matrix[:, 2], expected, atol=1e-15)

    def test_top_weight_symmetric_column(self, reference_encoder):
        assert np.array_equal(reference_encoder.matrix[:, 4], kron_all([U, U, U]))

    def test_first_columns_are_hand_built_pair(self, reference_encoder):
        v_up, v_dn = hand_derived_mixed_pair()
        assert np.allclose(reference_encoder.matrix[:, 0], v_up, atol=1e-15)
        assert np.allclose(reference_encoder.matrix[:, 1], v_dn, atol=1e-15)

    def test_protected_subspace_matches_built_encoder(
        self, reference_encoder, encoder_d2
    ):
        pr = reference_encoder.matrix[:, :4] @ reference_encoder.matrix[:, :4].conj().T
        pb = encoder_d2.matrix[:, :4] @ encoder_d2.matrix[:, :4].conj().T
        assert np.linalg.norm(pr - pb) < 1e-10

    def test_block_structure(self, reference_encoder):
        rng = np.random.default_rng(31)
        for _ in range(20):
            report = verify_block_structure(
                reference_encoder, random_special_unitary(2, rng), tol=1e-10
            )
            assert report.passed


class TestSpinGenerators:
    def test_hermitian_with_expected_diagonal(self):
        jx, jy, jz = spin_three_half_generators()
        for j in (jx, jy, jz):
            assert np.linalg.norm(j - j.conj().T) < 1e-15
        assert np.array_equal(np.diag(jz), np.array([3, 1, -1, -3], dtype=complex))
        assert jx[0, 1] == pytest.approx(np.sqrt(3))
        assert jy[1, 2] == -2j

    def test_pauli_style_commutators(self):
        jx, jy, jz = spin_three_half_generators()
        assert np.linalg.norm(jx @ jy - jy @ jx - 2j * jz) < 1e-12
        assert np.linalg.norm(jy @ jz - jz @ jy - 2j * jx) < 1e-12
        assert np.linalg.norm(jz @ jx - jx @ jz - 2j * jy) < 1e-12

    def test_exponential_matches_symmetric_block(self, reference_encoder):
        sx = np.array([[0, 1], [1, 0]], dtype=complex)
        sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
        sz = np.diag([1.0, -1.0]).astype(complex)
        jx, jy, jz = spin_three_half_generators()
        u = reference_encoder.matrix
        rng = np.random.default_rng(55)
        for _ in range(10):
            r = rng.uniform(-np.pi, np.pi, size=3)
            w = expm(1j * (r[0] * sx + r[1] * sy + r[2] * sz))
            block = (u.conj().T @ collective_operator(w, 3) @ u)[4:, 4:]
            target = expm(1j * (r[0] * jx + r[1] * jy + r[2] * jz))
            assert np.linalg.norm(block - target) < 1e-10


class TestSaveLoad:
    def test_round_trip_exact(self, tmp_path, encoder_d2):
        path = tmp_path / "enc.json"
        save_encoder(encoder_d2, path)
        loaded = load_encoder(path)
        assert np.array_equal(loaded.matrix, encoder_d2.matrix)
        assert loaded.d == 2
        assert loaded.layout == "multiplicity-major"
        assert loaded.generator == "symmetrizer"

    def test_load_rejects_corrupted_matrix(self, tmp_path, reference_encoder):
        import json

        path = tmp_path / "enc.json"
        save_encoder(reference_encoder, path)
        payload = json.loads(path.read_text())
        payload["matrix"]["entries"][0] = [3.0, 0.0]  # breaks unitarity
        path.write_text(json.dumps(payload))
        with pytest.raises(ValueError):
            load_encoder(path)

    def test_load_rejects_missing_fields(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"d": 2}')
        with pytest.raises(ValueError):
            load_encoder(path)


def test_standard_tableaux_of_fundamental_shape_order():
    tabs = standard_tableaux(fundamental_equivalent_shape(2))
    assert tabs[0].rows == ((1, 2), (3,))
    assert tabs[1].rows == ((1, 3), (2,))


def test_diagram_boxes_match_slots():
    shape = YoungDiagram((2, 1, 1))
    assert shape.n_boxes == 4
