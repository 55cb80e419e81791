"""Tests for exact Laurent-polynomial scalars."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qbosonization.exceptions import EvalError, InvertibilityError
from qbosonization.schema import SYMBOLS
from qbosonization.services.scalar_service import (
    Scalar,
    q_lambda,
    q_power,
    qfactorial,
    qnumber,
    scalar_arith,
    scalar_eval,
)

q = Scalar.symbol("q")
mu = Scalar.symbol("mu")
LAMBDA = Scalar.symbol("Lambda")


def _exps(q_exp: int, mu_exp: int):
    exps = [0] * len(SYMBOLS)
    exps[SYMBOLS.index("q")] = q_exp
    exps[SYMBOLS.index("mu")] = mu_exp
    return tuple(exps)


scalars = st.dictionaries(
    st.tuples(st.integers(-2, 2), st.integers(-1, 1)).map(lambda pair: _exps(*pair)),
    st.integers(-3, 3),
    max_size=4,
).map(Scalar)


class TestScalarArithmetic:
    """Test ring operations and canonical equality."""

    def test_qnumber_expansion(self):
        """Test [3] = q^2 + 1 + q^-2."""
        assert qnumber(3) == q_power(2) + 1 + q_power(-2)
        assert qnumber(0).is_zero()
        assert qnumber(1) == 1

    def test_qfactorial(self):
        """Test [3]! = [2][3]."""
        assert qfactorial(3) == qnumber(2) * qnumber(3)
        assert qfactorial(0) == 1

    def test_negative_qnumber_rejected(self):
        """Test q-numbers need n >= 0."""
        with pytest.raises(ValueError):
            qnumber(-1)

    def test_lambda_cancels(self):
        """Test Lambda * (q - q^-1) collapses to 1."""
        assert LAMBDA * q_lambda(1) == 1

    def test_lambda_times_non_multiple_stays(self):
        """Test Lambda survives when the rest is not divisible by q - q^-1."""
        value = LAMBDA * (q + 1)
        assert "Lambda" in value.symbols()

    def test_inverse_of_monomial(self):
        """Test single-term scalars invert."""
        value = Scalar.constant(-2) * mu * q_power(-1)
        assert value * value.inverse() == 1

    def test_inverse_of_sum_raises(self):
        """Test sums have no inverse."""
        with pytest.raises(InvertibilityError):
            (q + 1).inverse()

    def test_coerce_rejects_floats(self):
        """Test floats are not exact scalars."""
        with pytest.raises(TypeError):
            Scalar.coerce(0.5)
        with pytest.raises(TypeError):
            Scalar.coerce(True)

    def test_equality_with_int(self):
        """Test constants compare equal to ints and hash alike."""
        assert Scalar.constant(3) == 3
        assert hash(Scalar.constant(3)) == hash(3)

    def test_invert_q(self):
        """Test q -> q^-1 negates lambda and Lambda."""
        assert q_lambda(1).invert_q() == -q_lambda(1)
        assert LAMBDA.invert_q() == -LAMBDA

    def test_unknown_symbol(self):
        """Test unknown symbol names are rejected."""
        with pytest.raises(ValueError):
            Scalar.symbol("epsilon")

    def test_scalar_arith_ops(self):
        """Test the op-dispatching helper."""
        assert scalar_arith(q, 1, "add") == q + 1
        assert scalar_arith(q, 1, "sub") == q - 1
        assert scalar_arith(q, q, "mul") == q_power(2)
        assert scalar_arith(q, op="neg") == -q
        assert scalar_arith(q, -2, "int_pow") == q_power(-2)
        with pytest.raises(ValueError):
            scalar_arith(q, 1, "div")

    def test_render(self):
        """Test terms render in symbol order with signs."""
        assert q_power(-1).render() == "q^-1"
        assert (-(mu * Scalar.symbol("nu") * q_power(-1))).render() == "-q^-1*mu*nu"
        assert Scalar.zero().render() == "0"


class TestScalarEvaluation:
    """Test evaluation under symbol assignments."""

    def test_exact_evaluation(self):
        """Test rational assignments give Fractions."""
        assert scalar_eval(qnumber(3), {"q": Fraction(2)}) == Fraction(21, 4)

    def test_lambda_defaults_to_inverse_lambda(self):
        """Test Lambda evaluates as 1/(q - q^-1)."""
        assert scalar_eval(LAMBDA, {"q": Fraction(2)}) == Fraction(2, 3)

    def test_lambda_undefined_at_one(self):
        """Test Lambda at q = 1 raises."""
        with pytest.raises(EvalError):
            scalar_eval(LAMBDA, {"q": 1})

    def test_missing_symbol(self):
        """Test unassigned symbols raise."""
        with pytest.raises(EvalError):
            scalar_eval(mu, {"q": Fraction(2)})

    def test_float_evaluation(self):
        """Test float assignments give floats."""
        value = scalar_eval(qnumber(2), {"q": 0.5})
        assert isinstance(value, float)
        assert value == pytest.approx(2.5)


class TestScalarProperties:
    """Test ring laws on random scalars."""

    @given(scalars, scalars)
    def test_commutative(self, x, y):
        """Test x + y = y + x and x y = y x."""
        assert x + y == y + x
        assert x * y == y * x

    @given(scalars, scalars, scalars)
    def test_distributive(self, x, y, z):
        """Test x (y + z) = x y + x z."""
        assert x * (y + z) == x * y + x * z

    @given(scalars)
    def test_lambda_round_trip(self, x):
        """Test (x Lambda)(q - q^-1) = x."""
        assert (x * LAMBDA) * q_lambda(1) == x

    @given(scalars, st.fractions(min_value=Fraction(1, 3), max_value=Fraction(3)))
    def test_evaluation_is_additive(self, x, value):
        """Test evaluation respects addition."""
        assignment = {"q": value, "mu": Fraction(5, 7)}
        assert scalar_eval(x + x, assignment) == 2 * scalar_eval(x, assignment)

    @given(scalars, scalars)
    def test_add_then_sub_is_identity(self, x, y):
        """Test (x + y) - y returns x with the same stored terms."""
        result = (x + y) - y
        assert result == x
        assert result.terms == x.terms

    @given(scalars, scalars, st.fractions(min_value=Fraction(1, 3), max_value=Fraction(3)))
    def test_evaluation_is_multiplicative(self, x, y, value):
        """Test evaluation respects multiplication."""
        assignment = {"q": value, "mu": Fraction(5, 7)}
        assert scalar_eval(x * y, assignment) == scalar_eval(x, assignment) * scalar_eval(y, assignment)


class TestQNumberRecursion:
    """Test the two-sided q-Pascal recursion of q-numbers."""

    @pytest.mark.parametrize("n", range(21))
    def test_pascal(self, n):
        """Test [n+1] = q[n] + q^-n = q^-1[n] + q^n."""
        assert qnumber(n + 1) == q * qnumber(n) + q_power(-n)
        assert qnumber(n + 1) == q_power(-1) * qnumber(n) + q_power(n)
