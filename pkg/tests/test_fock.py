"""Tests for truncated Fock representations."""

import cmath
from fractions import Fraction

import numpy as np
import pytest

from qbosonization import schema
from qbosonization.exceptions import (
    DimensionTooSmallError,
    NonDiagonalError,
    RootOfUnityError,
    SingularDiagonalError,
)
from qbosonization.models import AlgebraMode, Basis
from qbosonization.services.fock_service import (
    FockJudge,
    FockRep,
    basis_conjugation,
    check_fock_extras,
    check_matrix_element_actions,
    compare_matrices,
    diagonal_inverse,
    fock_oracle_apply,
    identity_matrix,
    number_matrix,
    oracle_matrix,
    rep_matrix,
    safe_check_zero,
    safe_columns,
)
from qbosonization.services.matrix_service import check_gl2q_relations, check_qdet_value, qdet
from qbosonization.services.oscillator_service import OscillatorAlgebra
from qbosonization.services.realization_service import expected_qdet, realization_matrix

Q = Fraction(3, 2)
alg = OscillatorAlgebra(1)


@pytest.fixture
def exact_rep():
    return FockRep.create(6, Q)


@pytest.fixture
def float_rep():
    return FockRep.create(10, 0.8, Basis.NORMALIZED)


class TestFockRep:
    """Test representation construction."""

    def test_exact_flag(self, exact_rep, float_rep):
        """Test only rational q in the Exact basis is exact."""
        assert exact_rep.exact
        assert not float_rep.exact
        assert not FockRep.create(6, Q, Basis.NORMALIZED).exact

    def test_root_of_unity(self):
        """Test the Normalized basis rejects roots of unity of small order."""
        with pytest.raises(RootOfUnityError):
            FockRep.create(6, cmath.rect(1.0, 2 * cmath.pi / 5), Basis.NORMALIZED)

    def test_invalid_arguments(self):
        """Test dimension, oscillator count and q are validated."""
        with pytest.raises(ValueError):
            FockRep.create(0, Q)
        with pytest.raises(ValueError):
            FockRep.create(4, Q, oscillators=3)
        with pytest.raises(ValueError):
            FockRep.create(4, 0)

    def test_state_index(self):
        """Test the two-oscillator index is n*D + m."""
        rep = FockRep.create(4, Q, oscillators=2)
        assert rep.index((2, 3)) == 11
        assert rep.state(11) == (2, 3)
        assert rep.size == 16


class TestRepMatrix:
    """Test matrices of operators."""

    def test_exact_ladder(self, exact_rep):
        """Test a+|n> = |n+1> and a-|n> = [n]|n-1> in the Exact basis."""
        raising = rep_matrix(alg.raising(), exact_rep)
        lowering = rep_matrix(alg.lowering(), exact_rep)
        assert raising.entry(1, 0) == 1
        assert raising.entry(5, 4) == 1
        assert lowering.entry(1, 2) == Q + 1 / Q
        assert raising.excess == (1,)

    def test_k_diagonal(self, exact_rep):
        """Test K|n> = q^n |n>."""
        assert rep_matrix(alg.k(), exact_rep).diagonal() == [Q ** n for n in range(6)]

    def test_normalized_ladder(self, float_rep):
        """Test the Normalized basis uses square roots of q-numbers."""
        qn2 = 0.8 + 1 / 0.8
        assert abs(rep_matrix(alg.raising(), float_rep).entry(2, 1) - np.sqrt(qn2)) < 1e-12
        assert abs(rep_matrix(alg.lowering(), float_rep).entry(1, 2) - np.sqrt(qn2)) < 1e-12

    def test_safe_columns(self, exact_rep):
        """Test safe columns stop short of the truncation edge."""
        assert safe_columns(exact_rep, (1,)) == [0, 1, 2, 3, 4]
        with pytest.raises(DimensionTooSmallError):
            safe_columns(exact_rep, (6,))

    def test_truncation_confined(self, exact_rep):
        """Test a- a+ - q a+ a- = K^-1 holds on safe columns only."""
        raising = rep_matrix(alg.raising(), exact_rep)
        lowering = rep_matrix(alg.lowering(), exact_rep)
        residual = lowering * raising - (raising * lowering).scaled(Q) - rep_matrix(alg.k(power=-1), exact_rep)
        assert safe_check_zero(residual, exact_rep).passed
        assert not residual.is_zero_on([5])

    def test_scalar_arithmetic(self, exact_rep):
        """Test scalars combine with matrices as identity multiples."""
        identity = identity_matrix(exact_rep)
        assert (identity * 2 - 1).entries() == identity.entries()
        assert (1 - identity).entries() == {}


class TestDiagonalInverse:
    """Test inverses of diagonal operators."""

    def test_w_inverse(self, exact_rep):
        """Test W^-1 is diag(1/[n+1])."""
        w = alg.w_element()
        inverse = diagonal_inverse(w, exact_rep)
        product = rep_matrix(w, exact_rep) * inverse
        assert product.entries() == identity_matrix(exact_rep).entries()

    def test_non_diagonal(self, exact_rep):
        """Test a+ has no diagonal inverse."""
        with pytest.raises(NonDiagonalError):
            diagonal_inverse(alg.raising(), exact_rep)

    def test_singular(self, exact_rep):
        """Test a+ a- = [N] vanishes on the vacuum."""
        with pytest.raises(SingularDiagonalError):
            diagonal_inverse(alg.raising() * alg.lowering(), exact_rep)


class TestOracle:
    """Test the letter-by-letter oracle against rep_matrix."""

    def test_single_state(self, exact_rep):
        """Test a- a+ on |2> gives [3]|2>."""
        result = fock_oracle_apply(alg.lowering() * alg.raising(), exact_rep, (2,))
        assert result == {(2,): Q ** 2 + 1 + Q ** -2}

    def test_eq12_entries(self):
        """Test the oracle reproduces every Eq12 entry matrix."""
        rep = FockRep.create(5, 0.8, Basis.NORMALIZED, oscillators=2)
        columns = list(range(rep.size))
        for x in realization_matrix("Eq12").entries():
            record = compare_matrices("oracle", rep_matrix(x, rep), oracle_matrix(x, rep, columns), columns, 1e-12)
            assert record.passed


class TestFockJudge:
    """Test relation checks on the safe subspace."""

    @pytest.mark.parametrize("name", ["T", "T1", "T2", "Eq12"])
    def test_relations_exact(self, name):
        """Test realizations satisfy the relations exactly at rational q."""
        spec_oscillators = 2 if name == "Eq12" else 1
        rep = FockRep.create(8, Q, oscillators=spec_oscillators)
        assert check_gl2q_relations(realization_matrix(name), judge=FockJudge(rep)).passed

    def test_t_qdet_value_float(self):
        """Test qdet(T) = -mu nu q^-1 numerically."""
        rep = FockRep.create(10, 0.8, Basis.NORMALIZED, parameters={"mu": 2.0, "nu": 0.5})
        judge = FockJudge(rep, 1e-9)
        value, report = qdet(realization_matrix("T"), judge)
        assert report.passed
        assert check_qdet_value(value, expected_qdet("T"), judge).passed
        assert float(judge.render(value)) == pytest.approx(-1 / 0.8)

    def test_render_non_scalar(self, exact_rep):
        """Test non-multiples of the identity render as non-scalar."""
        assert FockJudge(exact_rep).render(rep_matrix(alg.k(), exact_rep)) == "non-scalar"

    def test_t3_series_inverse(self):
        """Test W^-1 entries resolve through the diagonal inverse."""
        rep = FockRep.create(6, Q, oscillators=2)
        report = check_gl2q_relations(realization_matrix("T3"), judge=FockJudge(rep))
        assert "ab=q*ba" in report.failed()


class TestFockExtras:
    """Test numeric-only oscillator facts."""

    def test_normalized_extras(self, float_rep):
        """Test number operator, basis states and the basis conjugation."""
        report = check_fock_extras(float_rep)
        assert report.names() == ["osc:[N,a+a-]=0", "osc:basis-states", "osc:exact~normalized"]
        assert report.passed

    def test_exact_extras(self, exact_rep):
        """Test exact representations only run the number-operator check."""
        report = check_fock_extras(exact_rep)
        assert report.names() == ["osc:[N,a+a-]=0"]
        assert report.passed

    def test_number_matrix(self, exact_rep):
        """Test N = diag(n)."""
        assert number_matrix(exact_rep).diagonal() == [Fraction(n) for n in range(6)]

    def test_basis_conjugation_inverse(self, float_rep):
        """Test S and S^-1 multiply to the identity."""
        forward, backward = basis_conjugation(float_rep)
        assert np.allclose((forward * backward).to_array(), np.eye(float_rep.size))


class TestMatrixElements:
    """Test the Eq12 closed-form matrix elements."""

    def test_equal_alpha_beta(self):
        """Test every action matches when alpha = beta."""
        rep = FockRep.create(8, 0.8, Basis.NORMALIZED, oscillators=2)
        assert check_matrix_element_actions(rep).passed

    def test_printed_b_coefficient(self):
        """Test the printed b coefficient fails once alpha differs from beta."""
        rep = FockRep.create(8, 0.8, Basis.NORMALIZED, oscillators=2, parameters={"alpha": 2.0, "beta": 0.5})
        report = check_matrix_element_actions(rep)
        assert report.failed() == [schema.PRINTED_B_COEFFICIENT]
        assert "alpha*delta" in report.get(schema.PRINTED_B_COEFFICIENT).witness

    def test_needs_two_oscillators(self, float_rep):
        """Test the check refuses single-oscillator representations."""
        with pytest.raises(ValueError):
            check_matrix_element_actions(float_rep)

    def test_mode_independent(self):
        """Test the FockRestricted entries give the same matrices."""
        rep = FockRep.create(5, Q, oscillators=2)
        for generic, fock in zip(
            realization_matrix("Eq12", AlgebraMode.GENERIC).entries(),
            realization_matrix("Eq12", AlgebraMode.FOCK_RESTRICTED).entries(),
        ):
            assert rep_matrix(generic, rep).entries() == rep_matrix(fock, rep).entries()
