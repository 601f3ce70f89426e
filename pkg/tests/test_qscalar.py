"""Scalar layer: frozen values, branch handling, tolerance policy."""

import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qso3.errors import BadModulus, DegenerateIndex, DegenerateQ
from qso3.qscalar import (HalfInt, c_coeff, ctx_from_json, ctx_to_json,
                          generic_ctx, q_num, q_pow, q_pow_c,
                          root_of_unity_ctx)


class TestHalfInt:
    def test_parse_and_str(self):
        assert HalfInt.parse("3/2").twice == 3
        assert HalfInt.parse("-1/2").twice == -1
        assert HalfInt.parse("2").twice == 4
        assert str(HalfInt(3)) == "3/2"
        assert str(HalfInt(4)) == "2"

    def test_exact_arithmetic(self):
        a, b = HalfInt(3), HalfInt(-1)
        assert (a + b).twice == 2
        assert (a - b).twice == 4
        assert (-a).twice == -3
        assert a > b
        assert HalfInt(2).is_integer()
        assert not HalfInt(3).is_integer()

    def test_of_coercions(self):
        assert HalfInt.of(2).twice == 4
        assert HalfInt.of(0.5).twice == 1
        with pytest.raises(TypeError):
            HalfInt.of(0.3)


class TestQPow:
    def test_sqrt_branch_is_data(self):
        ctx = generic_ctx(q=4)
        assert ctx.s == 2
        assert q_pow(ctx, HalfInt(1)) == 2
        assert q_pow(ctx, 0) == 1
        assert q_pow(ctx, HalfInt(-3)) == pytest.approx(0.125)

    def test_q_pow_c_consistency(self):
        ctx = generic_ctx(q=4)
        assert q_pow_c(ctx, 1) == pytest.approx(4)
        assert q_pow_c(ctx, 0.5) == pytest.approx(2)

    def test_complex_exponent(self):
        ctx = generic_ctx(q=cmath.exp(0.3j))
        assert q_pow_c(ctx, 1j) == pytest.approx(math.exp(-0.3))


class TestQNum:
    def test_forced_values(self):
        ctx = generic_ctx(q=4)
        assert q_num(ctx, 0) == 0
        assert q_num(ctx, 1) == pytest.approx(1)

    def test_frozen_examples(self):
        ctx = generic_ctx(q=4)
        # (2 - 0.5) / (4 - 0.25)
        assert q_num(ctx, HalfInt(1)) == pytest.approx(0.4)
        # q + 1/q
        assert q_num(ctx, 2) == pytest.approx(4.25)

    def test_degenerate_q(self):
        ctx = generic_ctx(q=2.0)
        broken = type(ctx)(s=1.0 + 0j, kind="generic", tol=1e-9)
        with pytest.raises(DegenerateQ):
            q_num(broken, 1)


class TestCCoeff:
    def test_frozen_examples(self):
        ctx = generic_ctx(q=4)
        assert c_coeff(ctx, 1) == pytest.approx(1j / 3.75)
        assert c_coeff(ctx, 0.5) == pytest.approx(1j / 1.5)

    def test_degenerate_index(self):
        ctx = root_of_unity_ctx(4, 1)
        with pytest.raises(DegenerateIndex):
            c_coeff(ctx, 2)


class TestRootOfUnityCtx:
    def test_odd_p(self):
        ctx = root_of_unity_ctx(3, 1)
        assert ctx.q == pytest.approx(cmath.exp(2j * math.pi / 3))
        assert ctx.p_prime == 3

    def test_even_p(self):
        ctx = root_of_unity_ctx(8, 1)
        assert ctx.q == pytest.approx(cmath.exp(1j * math.pi / 4))
        assert ctx.p_prime == 4

    def test_bad_modulus(self):
        with pytest.raises(BadModulus):
            root_of_unity_ctx(2, 1)
        with pytest.raises(BadModulus):
            root_of_unity_ctx(6, 2)

    def test_generic_rejects_roots(self):
        with pytest.raises(BadModulus):
            generic_ctx(q=cmath.exp(2j * math.pi / 5))

    def test_json_round_trip(self):
        for ctx in (generic_ctx(q=1.3), root_of_unity_ctx(8, 3)):
            back = ctx_from_json(ctx_to_json(ctx))
            assert back.s == pytest.approx(ctx.s)
            assert back.kind == ctx.kind
            assert back.p == ctx.p


halfints = st.integers(min_value=-40, max_value=40).map(HalfInt)


class TestProperties:
    @given(a=halfints)
    @settings(max_examples=60, deadline=None)
    def test_q_num_antisymmetry(self, a):
        ctx = generic_ctx(q=1.3)
        x, y = q_num(ctx, a), q_num(ctx, -a)
        assert abs(x + y) <= 1e-12 * max(1.0, abs(x))

    @given(a=st.integers(-100, 100), b=st.integers(-100, 100))
    @settings(max_examples=60, deadline=None)
    def test_q_pow_additivity(self, a, b):
        ctx = generic_ctx(q=cmath.exp(0.37j))
        lhs = q_pow(ctx, HalfInt(a + b))
        rhs = q_pow(ctx, HalfInt(a)) * q_pow(ctx, HalfInt(b))
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))

    @given(a=st.integers(-40, 40))
    @settings(max_examples=60, deadline=None)
    def test_branch_consistency(self, a):
        # principal square root context: both power paths agree
        for q in (1.3, 4.0, cmath.exp(0.37j)):
            ctx = generic_ctx(q=q)
            lhs = q_pow(ctx, HalfInt(a))
            rhs = q_pow_c(ctx, a / 2)
            assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))

    @given(a=halfints, p=st.sampled_from([3, 5, 7, 8]))
    @settings(max_examples=40, deadline=None)
    def test_root_of_unity_period_sign(self, a, p):
        ctx = root_of_unity_ctx(p, 1)
        pp = ctx.p_prime
        sign = q_pow(ctx, pp)  # +1 or -1
        lhs = q_num(ctx, a + HalfInt(2 * pp))
        rhs = sign * q_num(ctx, a)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))
