import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from zdiv3 import gf2poly
from zdiv3.errors import CapacityError, InputError
from zdiv3.gf2poly import (
    ONE,
    Poly2,
    ZERO,
    X,
    add,
    divrem,
    gcd,
    is_irreducible,
    mul,
    poly_from_exponents,
    pow_mod,
    pow_of_one_plus_x,
    reciprocal,
    square,
    weight,
    x_pow_n_minus_1,
)

polys = st.builds(Poly2, st.integers(min_value=0, max_value=(1 << 96) - 1))
nonzero_polys = st.builds(Poly2, st.integers(min_value=1, max_value=(1 << 96) - 1))
small_polys = st.builds(Poly2, st.integers(min_value=0, max_value=(1 << 16) - 1))


def P(*exps):
    return poly_from_exponents(exps)


class TestConstruction:
    def test_empty_set_is_zero(self):
        assert P() == ZERO
        assert P().degree is None

    def test_trinomials(self):
        assert P(0, 1, 3).exponents() == (0, 1, 3)
        assert P(0, 1, 16) == Poly2((1 << 16) | 2 | 1)

    def test_duplicate_exponent_rejected(self):
        with pytest.raises(InputError):
            poly_from_exponents([1, 1])

    def test_negative_exponent_rejected(self):
        with pytest.raises(InputError):
            poly_from_exponents([-1])

    def test_capacity(self):
        with pytest.raises(CapacityError):
            poly_from_exponents([2**31])

    def test_text_roundtrip(self):
        for p in [ZERO, ONE, P(0, 1, 3), P(5)]:
            assert Poly2.from_text(p.to_text()) == p

    def test_hex_text(self):
        assert Poly2.from_text("0xB") == P(0, 1, 3)

    def test_malformed_text(self):
        with pytest.raises(InputError):
            Poly2.from_text("1,foo")

    def test_degree_consistency(self):
        p = P(0, 7)
        assert p.degree == 7 and p.bits >> 7 == 1


class TestAdd:
    def test_self_cancel(self):
        p = P(0, 2, 5)
        assert p + p == ZERO

    def test_identity(self):
        p = P(1, 4)
        assert p + ZERO == p

    def test_hand_xor(self):
        assert P(0, 1) + P(1, 2) == P(0, 2)


class TestMul:
    def test_x3_minus_1(self):
        assert P(0, 1) * P(0, 1, 2) == P(0, 3)

    def test_paper_order7_product(self):
        assert P(0, 1, 3) * P(0, 2, 3) * P(0, 1) == P(0, 7)

    def test_paper_degree16_product(self):
        assert P(0, 3, 5, 6, 8) * P(0, 1, 3, 4, 5, 6, 8) == P(0, 1, 16)

    def test_karatsuba_matches_schoolbook(self):
        import random

        rng = random.Random(7)
        old = gf2poly.KARATSUBA_THRESHOLD
        try:
            for _ in range(20):
                a = rng.getrandbits(9000)
                b = rng.getrandbits(8500)
                gf2poly.KARATSUBA_THRESHOLD = 4096
                fast = gf2poly._mul_bits(a, b)
                gf2poly.KARATSUBA_THRESHOLD = 1 << 62
                slow = gf2poly._mul_bits(a, b)
                assert fast == slow
        finally:
            gf2poly.KARATSUBA_THRESHOLD = old


class TestSquare:
    def test_frobenius(self):
        assert square(P(0, 1)) == P(0, 2)
        assert square(ZERO) == ZERO
        assert square(P(0, 1, 2)) == P(0, 2, 4)

    @given(polys)
    def test_square_equals_mul(self, a):
        assert square(a) == a * a


class TestDivrem:
    def test_exact_division(self):
        q, r = divrem(P(0, 7), P(0, 1, 3))
        assert r == ZERO
        assert q == P(0, 1, 2, 4)  # (X^3+X^2+1)(X+1)

    def test_self_division(self):
        a = P(0, 2, 5)
        assert divrem(a, a) == (ONE, ZERO)

    def test_nonzero_remainder(self):
        q, r = divrem(P(0, 3, 4), P(0, 1, 2))
        assert r == X

    def test_zero_divisor_rejected(self):
        with pytest.raises(ZeroDivisionError):
            divrem(P(0, 1), ZERO)

    @given(polys, nonzero_polys)
    def test_divrem_identity(self, a, b):
        q, r = divrem(a, b)
        assert q * b + r == a
        assert r.bits < (1 << (b.degree or 0)) or not r


class TestGcd:
    def test_shared_trinomial_factor(self):
        # 1+(1+X)^3 = X+X^2+X^3
        assert gcd(P(0, 3), P(1, 2, 3)) == P(0, 1, 2)

    def test_self(self):
        a = P(0, 1, 4)
        assert gcd(a, a) == a

    def test_coprime(self):
        assert gcd(P(0, 5), P(1, 4, 5)) == ONE

    def test_gcd_with_zero(self):
        a = P(0, 2)
        assert gcd(a, ZERO) == a
        assert gcd(ZERO, a) == a

    def test_both_zero_rejected(self):
        with pytest.raises(InputError):
            gcd(ZERO, ZERO)

    @given(polys, polys)
    def test_divides_both(self, a, b):
        if not a and not b:
            return
        g = gcd(a, b)
        for p in (a, b):
            if p:
                assert divrem(p, g)[1] == ZERO

    @given(small_polys, small_polys)
    def test_small_instance_oracle(self, a, b):
        # every common divisor of degree <= 6 divides gcd(a, b)
        if not a and not b:
            return
        g = gcd(a, b)
        for dbits in range(2, 1 << 7):
            d = Poly2(dbits)
            if (not a or divrem(a, d)[1] == ZERO) and (not b or divrem(b, d)[1] == ZERO):
                assert divrem(g, d)[1] == ZERO


class TestPowMod:
    def test_order_seven(self):
        assert pow_mod(X, 7, P(0, 1, 3)) == ONE

    def test_zero_exponent(self):
        assert pow_mod(X, 0, P(0, 1, 3)) == ONE

    def test_defining_relation(self):
        assert pow_mod(X, 3, P(0, 1, 3)) == P(0, 1)

    def test_constant_modulus_rejected(self):
        with pytest.raises(InputError):
            pow_mod(X, 2, ONE)

    @given(small_polys, st.integers(min_value=0, max_value=200))
    def test_against_repeated_mul(self, base, e):
        m = P(0, 2, 5, 8)
        expect = ONE
        for _ in range(e):
            expect = (expect * base) % m
        assert pow_mod(base, e, m) == expect


class TestOnePlusXPow:
    def test_cube(self):
        assert pow_of_one_plus_x(3) == P(0, 1, 2, 3)

    def test_one(self):
        assert pow_of_one_plus_x(1) == P(0, 1)

    def test_two_power(self):
        for k in range(7):
            assert pow_of_one_plus_x(1 << k) == P(0, 1 << k)

    def test_against_mul_chain(self):
        acc = ONE
        base = P(0, 1)
        for t in range(1, 65):
            acc = acc * base
            assert pow_of_one_plus_x(t) == acc

    def test_t_zero_rejected(self):
        with pytest.raises(InputError):
            pow_of_one_plus_x(0)


class TestReciprocal:
    def test_paper_pair(self):
        assert reciprocal(P(0, 1, 3)) == P(0, 2, 3)

    def test_involution(self):
        for p in [P(0, 1, 3), P(0, 4), ONE, P(0, 2, 3, 7)]:
            assert reciprocal(reciprocal(p)) == p  # holds since p(0) = 1

    def test_x_collapses(self):
        assert reciprocal(X) == ONE

    def test_zero_rejected(self):
        with pytest.raises(InputError):
            reciprocal(ZERO)

    @given(nonzero_polys)
    def test_preserves_weight(self, f):
        assert reciprocal(f).weight() == f.weight()

    def test_preserves_irreducibility_through_degree_8(self):
        for bits in range(2, 1 << 9):
            f = Poly2(bits)
            if is_irreducible(f) and bits & 1:  # skip f = X, whose reciprocal is 1
                assert is_irreducible(reciprocal(f))


class TestIrreducible:
    def test_known(self):
        assert is_irreducible(P(0, 1, 3))
        assert not is_irreducible(P(0, 1, 16))
        assert not is_irreducible(P(0, 2))  # (X+1)^2

    def test_degree_one(self):
        assert is_irreducible(X)
        assert is_irreducible(P(0, 1))

    def test_constant_rejected(self):
        for c in (ZERO, ONE):
            with pytest.raises(InputError):
                is_irreducible(c)

    def test_matches_trial_division_through_degree_10(self):
        # independent oracle: trial division by everything of lower degree
        def reducible(bits):
            for d in range(2, bits):
                if d.bit_length() > 1 and oracles.divides(
                    oracles.from_bits(d), oracles.from_bits(bits)
                ):
                    return True
            return False

        for bits in range(4, 1 << 11):
            assert is_irreducible(Poly2(bits)) == (not reducible(bits))


class TestWeight:
    def test_values(self):
        assert weight(ZERO) == 0
        assert weight(P(0, 1, 2)) == 3
        assert weight(P(0, 1, 2, 4)) == 4

    @given(polys)
    def test_matches_string_popcount(self, f):
        assert weight(f) == bin(f.bits).count("1")

    @given(polys)
    def test_parity_is_evaluation_at_one(self, f):
        # f(1) over GF(2) is the XOR of all coefficients
        at_one = 0
        for e in f.exponents():
            at_one ^= 1
        assert weight(f) % 2 == at_one


class TestRingAxioms:
    @given(polys, polys, polys)
    def test_mul_associative_and_distributive(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(polys, polys)
    def test_commutative(self, a, b):
        assert a + b == b + a
        assert a * b == b * a

    @given(nonzero_polys, nonzero_polys)
    def test_degree_laws(self, a, b):
        assert (a * b).degree == a.degree + b.degree

    @given(polys, polys)
    def test_add_degree_bound(self, a, b):
        s = a + b
        if s:
            assert s.degree <= max(a.degree or 0, b.degree or 0)

    @given(small_polys, small_polys)
    def test_mul_matches_list_oracle(self, a, b):
        expect = oracles.to_bits(oracles.mul(oracles.from_bits(a.bits), oracles.from_bits(b.bits)))
        assert (a * b).bits == expect


def test_x_pow_n_minus_1():
    assert x_pow_n_minus_1(7) == P(0, 7)
    with pytest.raises(InputError):
        x_pow_n_minus_1(0)
