"""Field arithmetic, polynomial algebra, and number-theoretic predicates."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from keyrec.gf import (
    FieldSpec,
    Poly,
    POLY_ONE,
    brute_force_factor_exists,
    field_op,
    is_irreducible,
    is_prime,
    mult_order,
    poly_add,
    poly_divmod,
    poly_gcd,
    poly_mul,
    rank_fq,
    xz_plus_one,
)
from oracles import rank_by_row_space

GF2 = FieldSpec(1)
GF4 = FieldSpec(2)
GF8 = FieldSpec(3)

elems8 = st.integers(min_value=0, max_value=7)


class TestFieldSpec:
    def test_default_gf8_reduction_poly(self):
        assert GF8.reduction_poly == 0b1011
        assert GF8.q == 8

    def test_rejects_reducible_poly(self):
        with pytest.raises(ValueError):
            FieldSpec(3, 0b1010)  # x^3 + x = x(x+1)^2

    def test_rejects_wrong_degree(self):
        with pytest.raises(ValueError):
            FieldSpec(3, 0b10011)

    def test_rejects_bad_m(self):
        with pytest.raises(ValueError):
            FieldSpec(9)

    def test_known_products(self):
        assert GF8.mul(1, 5) == 5
        assert GF8.mul(3, 3) == 5  # (x+1)^2 = x^2+1
        assert GF8.pow(2, 3) == 3  # x^3 = x+1

    def test_field_op_dispatch(self):
        assert field_op(GF8, "add", 3, 5) == 6
        assert field_op(GF8, "mul", 3, 3) == 5
        assert field_op(GF8, "pow", 2, 3) == 3
        assert field_op(GF8, "inv", 1) == 1
        with pytest.raises(ValueError):
            field_op(GF8, "sub", 1, 1)

    def test_inverse_of_zero(self):
        with pytest.raises(ZeroDivisionError):
            GF8.inv(0)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            GF8.mul(8, 1)

    @given(a=elems8, b=elems8, c=elems8)
    def test_field_axioms(self, a, b, c):
        f = GF8
        assert f.mul(a, b) == f.mul(b, a)
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.add(a, a) == 0  # characteristic 2

    @given(a=st.integers(min_value=1, max_value=7))
    def test_inverse_cancels(self, a):
        assert GF8.mul(a, GF8.inv(a)) == 1

    @pytest.mark.parametrize("spec", [GF2, GF4, GF8, FieldSpec(4)])
    def test_every_nonzero_invertible(self, spec):
        for a in spec.nonzero_elements():
            assert spec.mul(a, spec.inv(a)) == 1

    def test_pow_negative_exponent(self):
        assert GF8.mul(GF8.pow(5, -1), 5) == 1


class TestPoly:
    def test_normalisation_strips_trailing_zeros(self):
        assert Poly((1, 0, 0)).coeffs == (1,)
        assert Poly(()).degree == -1
        assert Poly((0, 0)).is_zero

    def test_add_cancels(self):
        f = Poly((1, 1, 3))
        assert poly_add(f, f).is_zero

    def test_mul_degree(self):
        f = Poly((1, 1))
        g = Poly((1, 0, 1))
        assert poly_mul(GF8, f, g).degree == 3

    def test_divmod_roundtrip(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            a = Poly(tuple(rng.integers(0, 8, size=rng.integers(0, 9))))
            b = Poly(tuple(rng.integers(0, 8, size=rng.integers(1, 6))))
            if b.is_zero:
                continue
            q, r = poly_divmod(GF8, a, b)
            assert poly_add(poly_mul(GF8, q, b), r) == a
            assert r.degree < b.degree


class TestPolyGcd:
    def test_char2_square(self):
        assert poly_gcd(GF2, Poly((1, 0, 1)), Poly((1, 1))) == Poly((1, 1))

    def test_unit_gcd(self):
        assert poly_gcd(GF2, Poly((0, 1, 0, 1)), POLY_ONE) == POLY_ONE

    def test_common_root_with_xz_minus_one(self):
        # x^2 + x = x(x+1) shares only the root 1 with x^7 - 1 over GF(8).
        assert poly_gcd(GF8, Poly((0, 1, 1)), xz_plus_one(7)) == Poly((1, 1))

    def test_gcd_of_zeros_rejected(self):
        with pytest.raises(ValueError):
            poly_gcd(GF8, Poly(()), Poly(()))

    @settings(max_examples=60)
    @given(
        ca=st.lists(elems8, min_size=0, max_size=7),
        cb=st.lists(elems8, min_size=0, max_size=7),
    )
    def test_gcd_divides_both_and_is_monic(self, ca, cb):
        a, b = Poly(tuple(ca)), Poly(tuple(cb))
        if a.is_zero and b.is_zero:
            return
        g = poly_gcd(GF8, a, b)
        assert g.leading() == 1
        for f in (a, b):
            if not f.is_zero:
                assert poly_divmod(GF8, f, g)[1].is_zero


class TestIrreducibility:
    def test_known_cases(self):
        assert is_irreducible(GF2, Poly((1, 1, 1)))
        assert not is_irreducible(GF2, Poly((1, 0, 1)))
        # 1 + x + ... + x^4 over GF(8): the order of 8 mod 5 is 4 = 5 - 1.
        assert is_irreducible(GF8, Poly((1, 1, 1, 1, 1))) == (mult_order(8, 5) == 4)

    def test_constant_rejected(self):
        with pytest.raises(ValueError):
            is_irreducible(GF8, Poly((3,)))

    @pytest.mark.parametrize("spec,max_deg", [(GF2, 6), (GF4, 6), (GF8, 6)])
    def test_against_factor_enumeration(self, spec, max_deg):
        rng = np.random.default_rng(11)
        checked = 0
        while checked < 40:
            deg = int(rng.integers(1, max_deg + 1))
            coeffs = list(rng.integers(0, spec.q, size=deg)) + [
                int(rng.integers(1, spec.q))
            ]
            f = Poly(tuple(coeffs))
            expected = not brute_force_factor_exists(spec, f, f.degree // 2)
            assert is_irreducible(spec, f) == expected
            checked += 1


class TestIntegerPredicates:
    def test_mult_order_examples(self):
        assert mult_order(2, 7) == 3
        assert mult_order(8, 491) == 490
        assert mult_order(8, 389) == 388
        assert mult_order(3, 2) == 1

    def test_mult_order_requires_coprime(self):
        with pytest.raises(ValueError):
            mult_order(6, 9)

    @given(z=st.sampled_from([3, 5, 7, 11, 13, 17, 101, 389, 491]))
    def test_order_divides_z_minus_1_for_primes(self, z):
        t = mult_order(2, z)
        assert (z - 1) % t == 0
        assert pow(2, t, z) == 1

    def test_is_prime(self):
        assert is_prime(491)
        assert is_prime(389)
        assert not is_prime(1)
        assert not is_prime(0)
        assert is_prime(2)
        assert not is_prime(391)  # 17 * 23


class TestRank:
    def test_identity(self):
        assert rank_fq(GF8, np.eye(4, dtype=int)) == 4

    def test_shift_matrix_full_rank(self):
        z = 7
        C = np.zeros((z, z), dtype=int)
        C[np.arange(z), (np.arange(z) - 3) % z] = 1
        assert rank_fq(GF2, C) == z

    def test_duplicated_block_rows(self):
        z = 4
        block = np.eye(z, dtype=int)
        M = np.block([[block, block], [block, block]])
        assert rank_fq(GF2, M) == z

    @pytest.mark.parametrize("spec", [GF2, GF4])
    def test_against_row_space_enumeration(self, spec):
        rng = np.random.default_rng(3)
        for _ in range(60):
            rows = int(rng.integers(1, 5))
            cols = int(rng.integers(1, 5))
            A = rng.integers(0, spec.q, size=(rows, cols))
            assert rank_fq(spec, A) == rank_by_row_space(spec, A)
