"""Tests for GL_q(2) relations, the quantum determinant and Gauss factors."""

import pytest

from qbosonization import schema
from qbosonization.exceptions import NonInvertibleError, NumericOnlyError
from qbosonization.models import AlgebraMode, GaussVariant
from qbosonization.services.matrix_service import (
    GaussFactors,
    QuantumMatrix2,
    SymbolicJudge,
    check_dinv_relations,
    check_gauss_round_trip,
    check_gl2q_relations,
    check_oscillator_identities,
    check_qdet_value,
    check_qweyl,
    check_slq2,
    gauss_compose,
    gauss_extract,
    matrix_power,
    qdet,
)
from qbosonization.services.oscillator_service import OscillatorAlgebra
from qbosonization.services.realization_service import (
    expected_qdet,
    make_realization,
    realization_matrix,
)

GENERIC = AlgebraMode.GENERIC
FOCK = AlgebraMode.FOCK_RESTRICTED


class TestRelations:
    """Test the six GL_q(2) relations."""

    def test_eq12_generic(self):
        """Test the Gauss-built two-oscillator matrix satisfies all relations."""
        report = check_gl2q_relations(realization_matrix("Eq12"))
        assert report.names() == list(schema.GL2Q_RELATIONS)
        assert report.passed

    def test_t_needs_fock_restriction(self):
        """Test T fails ad - da = lambda bc in Generic mode only."""
        generic = check_gl2q_relations(realization_matrix("T", GENERIC))
        assert generic.failed() == ["ad-da=lambda*bc"]
        assert generic.get("ad-da=lambda*bc").witness
        assert check_gl2q_relations(realization_matrix("T", FOCK)).passed

    @pytest.mark.parametrize("name", ["T1", "T2"])
    def test_holds_in_both_modes(self, name):
        """Test T1 and T2 satisfy the relations already in Generic mode."""
        assert check_gl2q_relations(realization_matrix(name, GENERIC)).passed
        assert check_gl2q_relations(realization_matrix(name, FOCK)).passed

    @pytest.mark.parametrize("n", [2, 3])
    def test_powers(self, n):
        """Test T^n satisfies the relations with q replaced by q^n."""
        powered = matrix_power(realization_matrix("Eq12"), n)
        report = check_gl2q_relations(powered, q_power=n)
        assert report.passed
        assert all(record.q_power == n for record in report.records)

    def test_power_with_wrong_q_fails(self):
        """Test T^2 does not satisfy the relations at q itself."""
        powered = matrix_power(realization_matrix("Eq12"), 2)
        assert not check_gl2q_relations(powered, q_power=1).passed

    def test_matrix_power_rejects_zero(self):
        """Test matrix_power needs n >= 1."""
        with pytest.raises(ValueError):
            matrix_power(realization_matrix("Eq12"), 0)

    def test_series_inverse_not_symbolic(self):
        """Test entries with W^-1 cannot be judged symbolically."""
        with pytest.raises(NumericOnlyError):
            check_gl2q_relations(realization_matrix("T3"))


class TestQuantumDeterminant:
    """Test qdet forms, centrality and catalogued values."""

    def test_eq12_value(self):
        """Test qdet = gamma delta for the Gauss-built matrix."""
        judge = SymbolicJudge(GENERIC)
        value, report = qdet(realization_matrix("Eq12"), judge)
        assert report.passed
        assert check_qdet_value(value, expected_qdet("Eq12"), judge).passed
        assert judge.render(value) == "gamma*delta"

    def test_t_value_fock_restricted(self):
        """Test qdet(T) = -mu nu q^-1 exactly on the Fock-restricted algebra."""
        judge = SymbolicJudge(FOCK)
        value, report = qdet(realization_matrix("T", FOCK), judge)
        assert report.passed
        assert judge.render(value) == "-q^-1*mu*nu"

    def test_t_value_generic_fails(self):
        """Test qdet(T) is not central in Generic mode."""
        value, report = qdet(realization_matrix("T", GENERIC))
        assert set(report.failed()) == {schema.QDET_FORMS, "qdet:central[a]", "qdet:central[d]"}
        assert not check_qdet_value(value, expected_qdet("T", GENERIC), SymbolicJudge(GENERIC)).passed

    def test_xy_value(self):
        """Test qdet of XY equals gamma delta X1 X2 Y1 Y2."""
        judge = SymbolicJudge(GENERIC)
        value, _ = qdet(realization_matrix("XY"), judge)
        assert check_qdet_value(value, expected_qdet("XY"), judge).passed

    def test_slq2(self):
        """Test the SL_q(2) condition on a trivial matrix and on Eq12."""
        alg = OscillatorAlgebra(1)
        trivial = QuantumMatrix2(alg.one(), alg.zero(), alg.zero(), alg.one())
        assert check_slq2(trivial).passed
        record = check_slq2(realization_matrix("Eq12"))
        assert record.relation == schema.SLQ2_CONDITION
        assert not record.passed


class TestGaussFactors:
    """Test Gauss composition, extraction and the q-Weyl relations."""

    def test_qweyl_eq12(self):
        """Test the Eq12 factors satisfy the q-Weyl relations."""
        assert check_qweyl(make_realization("Eq12")).passed

    def test_qweyl_xy(self):
        """Test the XY factors break Az = q zA and uB = q Bu."""
        assert set(check_qweyl(make_realization("XY")).failed()) == {"Az=q*zA", "uB=q*Bu"}

    def test_round_trip(self):
        """Test extract after compose gives back the Eq12 matrix."""
        T = realization_matrix("Eq12")
        assert check_gauss_round_trip(T).passed
        factors = gauss_extract(T)
        original = make_realization("Eq12")
        assert factors.u == original.u
        assert factors.z == original.z
        assert factors.A == original.A
        assert factors.B == original.B

    def test_lower_upper_variant(self):
        """Test the lower-upper extraction recovers its factors."""
        original = make_realization("Eq12")
        factors = GaussFactors(original.u, original.z, original.A, original.B, GaussVariant.LOWER_UPPER)
        T = gauss_compose(factors)
        extracted = gauss_extract(T, GaussVariant.LOWER_UPPER)
        assert (extracted.u, extracted.z, extracted.A, extracted.B) == (
            original.u, original.z, original.A, original.B,
        )
        assert check_gauss_round_trip(T, GaussVariant.LOWER_UPPER).passed

    def test_extract_needs_monomial(self):
        """Test extraction fails when d is not a K-monomial."""
        with pytest.raises(NonInvertibleError):
            gauss_extract(realization_matrix("XY"))

    def test_dinv_relations(self):
        """Test the d^-1 relations on Eq12."""
        report = check_dinv_relations(realization_matrix("Eq12"))
        assert report.names() == list(schema.DINV_RELATIONS)
        assert report.passed


class TestOscillatorIdentities:
    """Test the oscillator identity suite."""

    def test_generic_failures(self):
        """Test only the Fock-space identities fail in Generic mode."""
        report = check_oscillator_identities(SymbolicJudge(GENERIC), OscillatorAlgebra(1, GENERIC))
        assert set(report.failed()) == set(schema.OSCILLATOR_GENERIC_FAILURES)

    def test_fock_restricted(self):
        """Test every identity holds in FockRestricted mode."""
        assert check_oscillator_identities(SymbolicJudge(FOCK), OscillatorAlgebra(1, FOCK)).passed
