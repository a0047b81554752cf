"""Semiconvergence certificates, the power oracle and the theorem verifiers."""
import numpy as np
import pytest

from altsplit import (
    MissingDeltaError,
    NonsingularHypothesisError,
    ToleranceProfile,
    UnknownTheoremError,
    alternating_iteration_matrix,
    classify,
    diag_scaling_splitting,
    induced_regular_splitting,
    is_m_matrix_with_property_c,
    is_semiconvergent,
    make_random_walk,
    make_splitting,
    power_limit_oracle,
    verify_convergence_theorem,
    verify_semiconvergence_theorem,
)
from altsplit.generators import (
    random_group_monotone_regular_triple,
    random_quasi_regular_triple,
    random_semiconvergence_case,
    random_singular_m_matrix_triple,
)

RNG = np.random.default_rng(40)

ORACLE_TOL = ToleranceProfile(eq_tol=1e-11)


def walk_triple(n=10, alphas=(2.0, 2.5, 3.0)):
    walk = make_random_walk(n)
    return walk, [diag_scaling_splitting(walk.A, a) for a in alphas]


class TestIsSemiconvergent:
    def test_identity(self):
        cert = is_semiconvergent(np.eye(3))
        assert cert.verdict
        np.testing.assert_allclose(cert.limit_matrix, np.eye(3))

    def test_jordan_block_at_one_fails_on_index(self):
        cert = is_semiconvergent(np.array([[1.0, 1.0], [0.0, 1.0]]))
        assert not cert.verdict
        assert cert.index_of_I_minus_T > 1

    def test_minus_one_eigenvalue_fails(self):
        assert not is_semiconvergent(np.diag([1.0, -1.0])).verdict

    def test_walk_three_step_gamma(self):
        _, splits = walk_triple()
        cert = is_semiconvergent(alternating_iteration_matrix(splits))
        assert cert.verdict
        assert cert.has_eigenvalue_one
        assert cert.gamma == pytest.approx(0.9274, abs=5e-5)

    def test_certificate_invariants(self):
        for _ in range(30):
            n = int(RNG.integers(2, 9))
            t, _ = random_semiconvergence_case(RNG, n)
            cert = is_semiconvergent(t)
            assert cert.gamma <= cert.rho + 1e-12
            if cert.verdict:
                assert cert.gamma < 1.0
                assert cert.index_of_I_minus_T <= 1
                assert cert.rho <= 1.0 + 1e-8
                assert cert.limit_matrix is not None
            else:
                assert cert.limit_matrix is None

    def test_limit_reaches_the_fixed_point(self):
        # for consistent data, x_inf = limit @ x0 solves (I - T) x = c
        _, splits = walk_triple()
        h = alternating_iteration_matrix(splits)
        cert = is_semiconvergent(h)
        x0 = RNG.uniform(0.0, 1.0, 10)
        x_inf = cert.limit_matrix @ x0
        np.testing.assert_allclose(h @ x_inf, x_inf, atol=1e-10)


class TestPowerLimitOracle:
    def test_diagonal_limit(self):
        lim = power_limit_oracle(np.diag([1.0, 0.5]), tol=ORACLE_TOL)
        np.testing.assert_allclose(lim, np.diag([1.0, 0.0]), atol=1e-9)

    def test_period_two_has_no_limit(self):
        assert power_limit_oracle(np.array([[0.0, 1.0], [1.0, 0.0]])) is None

    def test_divergent_has_no_limit(self):
        assert power_limit_oracle(1.5 * np.eye(2)) is None

    def test_matches_certificate_on_random_cases(self):
        for _ in range(40):
            n = int(RNG.integers(2, 7))
            t, _ = random_semiconvergence_case(RNG, n)
            cert = is_semiconvergent(t)
            lim = power_limit_oracle(t, k_max=20_000, tol=ORACLE_TOL)
            assert cert.verdict == (lim is not None)
            if lim is not None:
                assert float(np.max(np.abs(lim - cert.limit_matrix))) < 1e-8


class TestPropertyC:
    def test_walk_matrix_has_property_c(self):
        walk = make_random_walk(10)
        assert is_m_matrix_with_property_c(walk.A)

    def test_positive_off_diagonal_rejected(self):
        assert not is_m_matrix_with_property_c(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_zero_matrix(self):
        assert is_m_matrix_with_property_c(np.zeros((3, 3)))

    def test_index_two_m_matrix_lacks_property_c(self):
        # A = [[0, -1], [0, 0]] is a singular M-matrix with index 2
        assert not is_m_matrix_with_property_c(np.array([[0.0, -1.0], [0.0, 0.0]]))

    def test_nonsingular_m_matrix(self):
        a = 3.0 * np.eye(3) - RNG.uniform(0.0, 1.0, (3, 3))
        assert is_m_matrix_with_property_c(a)


class TestConvergenceVerifiers:
    def test_unknown_id(self):
        with pytest.raises(UnknownTheoremError):
            verify_convergence_theorem("bogus", [])

    def test_example_is_converse_exhibit(self, example_triple):
        verdict = verify_convergence_theorem("typeII-convergence", example_triple)
        assert not verdict.hypotheses_hold
        assert verdict.conclusion_holds
        assert verdict.measured_quantities["rho_H"] == pytest.approx(0.25, abs=1e-9)

    def test_type_two_corpus(self):
        held = 0
        for _ in range(20):
            n = int(RNG.integers(3, 8))
            _, splits = random_group_monotone_regular_triple(RNG, n)
            verdict = verify_convergence_theorem("typeII-convergence", splits)
            if verdict.hypotheses_hold:
                held += 1
                assert verdict.conclusion_holds
                assert verdict.measured_quantities["rho_H"] < 1.0
        assert held >= 15

    def test_both_types_comparison_corpus(self):
        held = 0
        for _ in range(20):
            n = int(RNG.integers(3, 8))
            _, splits = random_group_monotone_regular_triple(RNG, n)
            verdict = verify_convergence_theorem("both-types-comparison", splits)
            if verdict.hypotheses_hold:
                held += 1
                assert verdict.conclusion_holds
        assert held >= 15

    def test_two_vs_three_nonsingular_corpus(self):
        held = 0
        for _ in range(20):
            n = int(RNG.integers(3, 8))
            _, splits = random_group_monotone_regular_triple(RNG, n, rank_r=n)
            verdict = verify_convergence_theorem("two-vs-three", splits)
            if verdict.hypotheses_hold:
                held += 1
                assert verdict.conclusion_holds
        assert held >= 5

    def test_implication_never_violated(self):
        for theorem_id in (
            "typeII-convergence",
            "single-vs-three",
            "both-types-comparison",
            "two-vs-three",
        ):
            for _ in range(10):
                n = int(RNG.integers(3, 8))
                _, splits = random_group_monotone_regular_triple(RNG, n)
                verdict = verify_convergence_theorem(theorem_id, splits)
                assert not (verdict.hypotheses_hold and not verdict.conclusion_holds)


class TestSemiconvergenceVerifiers:
    def test_unknown_id(self):
        with pytest.raises(UnknownTheoremError):
            verify_semiconvergence_theorem("bogus", [])

    def test_delta_required(self):
        _, splits = walk_triple()
        with pytest.raises(MissingDeltaError):
            verify_semiconvergence_theorem("delta-shift", splits)

    def test_walk_regular_three_step(self):
        _, splits = walk_triple()
        verdict = verify_semiconvergence_theorem("regular-three-step", splits)
        assert verdict.hypotheses_hold and verdict.conclusion_holds
        q = verdict.measured_quantities
        assert q["gamma_H"] == pytest.approx(0.9274, abs=5e-5)
        # three-step beats two-step beats single-step
        assert q["gamma_H"] <= q["gamma_K-L"]

    def test_walk_delta_shift_for_delta_grid(self):
        _, splits = walk_triple()
        for delta in (0.1, 0.5, 0.9):
            verdict = verify_semiconvergence_theorem(
                "delta-shift", splits, delta=delta
            )
            assert verdict.hypotheses_hold and verdict.conclusion_holds

    def test_walk_induced_regular(self):
        _, splits = walk_triple()
        verdict = verify_semiconvergence_theorem("induced-regular", splits)
        assert verdict.hypotheses_hold and verdict.conclusion_holds
        q = verdict.measured_quantities
        assert q["induced_matrix_mismatch"] < 1e-10
        # the candidate B is weak regular type I but NOT regular here
        assert q["min_B_inverse_entry"] > -1e-10
        assert q["min_C_entry"] < -1e-4

    def test_nonsingular_degenerates_to_plain_convergence(self):
        # splittings of a nonsingular monotone matrix: no unit eigenvalue,
        # semiconvergence certificate reduces to rho < 1
        a = 4.0 * np.eye(5) - RNG.uniform(0.0, 1.0, (5, 5))
        splits = [diag_scaling_splitting(a, alpha) for alpha in (2.0, 2.5, 3.0)]
        h = alternating_iteration_matrix(splits)
        cert = is_semiconvergent(h)
        assert cert.verdict
        assert not cert.has_eigenvalue_one
        from altsplit import spectral_radius

        assert spectral_radius(h) < 1.0

    def test_quasi_verifiers_on_block_corpus(self):
        for theorem_id in (
            "quasi-three-step",
            "quasi-comparison",
            "quasi-three-comparison",
            "quasi-two-vs-three",
        ):
            held = 0
            for _ in range(8):
                n = int(RNG.integers(4, 9))
                _, splits = random_quasi_regular_triple(RNG, n)
                verdict = verify_semiconvergence_theorem(theorem_id, splits)
                if verdict.hypotheses_hold:
                    held += 1
                    assert verdict.conclusion_holds
            assert held >= 6

    def test_m_matrix_corpus_implication(self):
        for _ in range(10):
            n = int(RNG.integers(4, 9))
            _, splits = random_singular_m_matrix_triple(RNG, n)
            for theorem_id, delta in (
                ("regular-three-step", None),
                ("delta-shift", 0.3),
                ("induced-regular", None),
            ):
                verdict = verify_semiconvergence_theorem(
                    theorem_id, splits, delta=delta
                )
                assert not (verdict.hypotheses_hold and not verdict.conclusion_holds)


class TestInducedRegularSplitting:
    def test_walk_triple_is_only_weak_regular(self):
        # the walk's induced C = B - A has genuinely negative entries, so
        # the strict contract refuses it even though B^-1 C = H holds
        _, splits = walk_triple()
        with pytest.raises(NonsingularHypothesisError):
            induced_regular_splitting(splits)

    def test_random_m_matrix_triples_succeed(self):
        for _ in range(5):
            n = int(RNG.integers(4, 9))
            _, splits = random_singular_m_matrix_triple(RNG, n)
            ind = induced_regular_splitting(splits)
            rep = classify(ind)
            assert rep.is_regular
            h = alternating_iteration_matrix(splits)
            np.testing.assert_allclose(ind.iteration_matrix(), h, atol=1e-9)

    def test_trivial_when_v_is_zero(self):
        a = 2.0 * np.eye(4) - 0.2 * RNG.uniform(0.0, 1.0, (4, 4))
        splits = [make_splitting(a, a) for _ in range(3)]
        ind = induced_regular_splitting(splits)
        np.testing.assert_allclose(ind.u, a, atol=1e-10)
        np.testing.assert_allclose(ind.v, np.zeros((4, 4)), atol=1e-10)

    def test_classification_hypothesis_enforced(self, example_triple):
        from altsplit import ClassificationError

        with pytest.raises(ClassificationError):
            induced_regular_splitting(example_triple)

    def test_two_path_agreement_on_nonsingular_monotone(self):
        # B^-1 C matches H computed directly
        a = 4.0 * np.eye(6) - RNG.uniform(0.0, 1.0, (6, 6))
        splits = [diag_scaling_splitting(a, alpha) for alpha in (1.5, 2.0, 2.5)]
        ind = induced_regular_splitting(splits)
        h = alternating_iteration_matrix(splits)
        np.testing.assert_allclose(ind.iteration_matrix(), h, atol=1e-9)
        # agrees with A (I - H)^-1 where that form exists
        b_direct = np.linalg.solve((np.eye(6) - h).T, a.T).T
        np.testing.assert_allclose(ind.u, b_direct, atol=1e-8)
