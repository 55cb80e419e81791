"""Tests for q-difference operators on polynomial spaces."""

from fractions import Fraction

import pytest

from qbosonization.models import AlgebraMode
from qbosonization.services.fock_service import FockJudge
from qbosonization.services.matrix_service import check_gl2q_relations
from qbosonization.services.qdiff_service import (
    PolyBasisRep,
    check_jackson_consistency,
    check_qdiff_oscillator,
    check_qdiff_realization,
    dilation,
    jackson_derivative,
    multiply_by_w,
    number_matrix,
    qdiff_matrices,
    realize_gl2q_qdiff,
)
from qbosonization.services.realization_service import realization_matrix

Q = Fraction(3, 2)


class TestCoefficientOperators:
    """Test the coefficient-vector operators."""

    def test_jackson_on_monomial(self):
        """Test D_q w^2 = [2] w."""
        assert jackson_derivative([0, 0, Fraction(1)], Q) == [Fraction(0), Q + 1 / Q]

    def test_jackson_kills_constants(self):
        """Test D_q 1 = 0."""
        assert jackson_derivative([Fraction(5)], Q) == []

    def test_jackson_classical_limit(self):
        """Test q = 1 falls back to the ordinary derivative."""
        assert jackson_derivative([1, 2, 3], 1) == [2, 6]

    def test_multiply_by_w(self):
        """Test w p(w) shifts coefficients up and truncates."""
        assert multiply_by_w([1, 2], 3) == [0, 1, 2]
        assert multiply_by_w([1, 2, 3, 4], 3) == [0, 1, 2, 3]
        assert multiply_by_w([], 3) == []

    def test_dilation(self):
        """Test p(q w) scales w^n by q^n."""
        assert dilation([1, 1, 1], 2) == [1, 2, 4]


class TestQDiffMatrices:
    """Test the matrices of M, D_q and K_q."""

    def test_exact_entries(self):
        """Test M|n> = |n+1>, D|n> = [n]|n-1> and K|n> = q^n|n>."""
        rep = PolyBasisRep.create(4, Q)
        M, Dq, Kq, Kq_inv = qdiff_matrices(rep)
        assert M.entry(1, 0) == 1
        assert M.excess == (1,)
        assert Dq.entry(1, 2) == Q + 1 / Q
        assert Kq.diagonal() == [Q ** n for n in range(5)]
        assert Kq_inv.diagonal() == [Q ** -n for n in range(5)]

    def test_second_variable(self):
        """Test operators on v act on the second tensor factor."""
        rep = PolyBasisRep.create(3, Q, variables=2)
        fock = rep.fock_rep()
        M = qdiff_matrices(rep, 2).M
        assert M.entry(fock.index((0, 1)), fock.index((0, 0))) == 1
        assert M.excess == (0, 1)

    def test_variable_range(self):
        """Test variable indices are checked."""
        with pytest.raises(ValueError):
            qdiff_matrices(PolyBasisRep.create(3, Q), 2)

    def test_degree_operator(self):
        """Test N = diag(n)."""
        assert number_matrix(PolyBasisRep.create(3, Q)).diagonal() == [0, 1, 2, 3]

    def test_invalid_rep(self):
        """Test degree and variable count are validated."""
        with pytest.raises(ValueError):
            PolyBasisRep.create(0, Q)
        with pytest.raises(ValueError):
            PolyBasisRep.create(3, Q, variables=3)


class TestQDiffChecks:
    """Test the oscillator and GL_q(2) checks on q-difference operators."""

    @pytest.mark.parametrize("q_value", [Q, 0.8])
    def test_oscillator_relations(self, q_value):
        """Test (M, D_q, K_q) satisfy the oscillator relations and match the Fock matrices."""
        report = check_qdiff_oscillator(PolyBasisRep.create(7, q_value), seed=3)
        assert "qdiff:matches-fock:D" in report.names()
        assert report.passed

    def test_complex_q(self):
        """Test the checks hold at complex q."""
        report = check_qdiff_oscillator(PolyBasisRep.create(7, 0.7 + 0.4j), seed=1)
        assert report.passed

    @pytest.mark.parametrize("q_value", [Q, 0.8])
    def test_jackson_consistency(self, q_value):
        """Test the matrix and the difference quotient agree."""
        assert check_jackson_consistency(PolyBasisRep.create(9, q_value), seed=7).passed

    @pytest.mark.parametrize("q_value", [Q, 0.8])
    def test_realization(self, q_value):
        """Test the two-variable realization satisfies the relations and matches Eq12."""
        rep = PolyBasisRep.create(5, q_value, variables=2)
        params = {"alpha": Fraction(2), "beta": Fraction(1, 3), "gamma": Fraction(5), "delta": Fraction(3, 4)}
        report = check_qdiff_realization(rep, params)
        assert report.passed
        assert "qdiff=fock:a" in report.names()

    @pytest.mark.parametrize("q_value", [Q, 0.8])
    def test_relations_agree_with_fock(self, q_value):
        """Test each relation's status and residual agree with the Fock run of Eq12."""
        rep = PolyBasisRep.create(5, q_value, variables=2)
        params = {"alpha": Fraction(2), "beta": Fraction(1, 3), "gamma": Fraction(5), "delta": Fraction(3, 4)}
        fock = rep.fock_rep(params)
        reference = check_gl2q_relations(realization_matrix("Eq12", AlgebraMode.GENERIC), judge=FockJudge(fock))
        report = check_qdiff_realization(rep, params)
        for theirs in reference.records:
            ours = report.get(theirs.relation)
            assert ours.status == theirs.status
            floor = 1e-9 if isinstance(q_value, float) else 0
            assert float(ours.residual) <= 10 * max(float(theirs.residual), floor)
            assert float(theirs.residual) <= 10 * max(float(ours.residual), floor)

    def test_realization_needs_two_variables(self):
        """Test the realization refuses one-variable spaces."""
        with pytest.raises(ValueError):
            realize_gl2q_qdiff(PolyBasisRep.create(5, Q))
