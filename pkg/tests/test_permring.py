"""The translation-matrix ring: products, parity laws, row-space tools."""

from __future__ import annotations

import numpy as np
import pytest

from cosetcode import bitlin, permring
from cosetcode.bitlin import BitMatrix, hstack, mat_mul, rank, row_space_equal
from cosetcode.permring import (
    GroupElement,
    PermSum,
    add,
    class_concat_rank,
    divide,
    gamma,
    identity,
    materialize,
    mul,
    parity,
    self_inverse_check,
    stripe_scale,
    zero,
)


def random_permsum(rng, r, force_odd=False, allow_empty=True):
    max_size = 1 << r
    low = 0 if allow_empty else 1
    size = int(rng.integers(low, max_size + 1))
    if force_odd:
        size = max(size | 1, 1)
        size = min(size, max_size - 1 if max_size % 2 == 0 else max_size)
    vals = rng.choice(max_size, size=size, replace=False) if size else []
    return PermSum(r, tuple(int(v) for v in vals))


class TestGroupElement:
    def test_lex_order_is_integer_order(self):
        e = GroupElement.from_bits((1, 0, 1))
        assert e.value == 0b101
        assert e.bits() == (1, 0, 1)
        assert e.to01() == "101"

    def test_xor(self):
        a = GroupElement(3, 0b110)
        b = GroupElement(3, 0b011)
        assert (a ^ b).value == 0b101
        assert (a ^ a).is_zero

    def test_range_checks(self):
        with pytest.raises(ValueError):
            GroupElement(2, 4)
        with pytest.raises(ValueError):
            GroupElement(3, 1) ^ GroupElement(2, 1)


class TestGamma:
    def test_gamma_zero_is_identity(self):
        assert materialize(gamma(GroupElement(3, 0))) == BitMatrix.identity(8)

    def test_r1_antidiagonal(self):
        got = materialize(gamma(GroupElement(1, 1))).to_dense()
        assert np.array_equal(got, np.array([[0, 1], [1, 0]], dtype=np.uint8))

    def test_r2_all_ones_vector_is_antidiagonal(self):
        got = materialize(gamma(GroupElement(2, 0b11))).to_dense()
        assert np.array_equal(got, np.fliplr(np.eye(4, dtype=np.uint8)))

    def test_materialization_is_permutation(self, rng):
        for _ in range(10):
            r = int(rng.integers(1, 6))
            v = int(rng.integers(0, 1 << r))
            dense = materialize(gamma(GroupElement(r, v))).to_dense()
            assert (dense.sum(axis=0) == 1).all() and (dense.sum(axis=1) == 1).all()


class TestAdd:
    def test_self_cancellation(self, rng):
        a = random_permsum(rng, 4)
        assert add(a, a) == zero(4)

    def test_singleton_union(self):
        v, w = GroupElement(3, 1), GroupElement(3, 5)
        assert add(gamma(v), gamma(w)).support == (1, 5)

    def test_materialize_additive(self, rng):
        for _ in range(15):
            r = int(rng.integers(1, 7))
            a, b = random_permsum(rng, r), random_permsum(rng, r)
            assert materialize(add(a, b)) == materialize(a) + materialize(b)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            add(zero(2), zero(3))


class TestMul:
    def test_forced_by_translation_law(self):
        got = mul(gamma(GroupElement(2, 0b01)), gamma(GroupElement(2, 0b11)))
        assert got == gamma(GroupElement(2, 0b10))

    def test_identity_neutral(self, rng):
        a = random_permsum(rng, 5)
        assert mul(a, identity(5)) == a

    def test_exhaustive_gamma_products_small(self):
        for r in (1, 2, 3, 4):
            for v in range(1 << r):
                for w in range(1 << r):
                    assert mul(PermSum(r, (v,)), PermSum(r, (w,))) == PermSum(r, (v ^ w,))

    def test_dense_product_matches_exhaustive_r3(self):
        for v in range(8):
            for w in range(8):
                dense = mat_mul(
                    materialize(PermSum(3, (v,))), materialize(PermSum(3, (w,)))
                )
                assert dense == materialize(PermSum(3, (v ^ w,)))

    def test_materialize_multiplicative(self, rng):
        for _ in range(15):
            r = int(rng.integers(1, 7))
            a, b = random_permsum(rng, r), random_permsum(rng, r)
            assert materialize(mul(a, b)) == mat_mul(materialize(a), materialize(b))

    def test_odd_times_odd_is_odd(self, rng):
        for _ in range(50):
            r = int(rng.integers(2, 9))
            a = random_permsum(rng, r, force_odd=True)
            b = random_permsum(rng, r, force_odd=True)
            assert parity(mul(a, b)) == "odd"


class TestRingAxioms:
    def test_axioms_on_random_elements(self, rng):
        for _ in range(25):
            r = int(rng.integers(1, 9))
            a, b, c = (random_permsum(rng, r) for _ in range(3))
            assert mul(a, b) == mul(b, a)
            assert mul(mul(a, b), c) == mul(a, mul(b, c))
            assert add(a, b) == add(b, a)
            assert add(add(a, b), c) == add(a, add(b, c))
            assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
            assert mul(a, identity(r)) == a
            assert add(a, zero(r)) == a


class TestParityLaws:
    def test_parity_values(self):
        assert parity(gamma(GroupElement(2, 1))) == "odd"
        assert parity(zero(2)) == "even"
        assert parity(PermSum(3, (1, 2, 4))) == "odd"

    def test_self_inverse_for_odd(self, rng):
        for _ in range(40):
            r = int(rng.integers(1, 11))
            a = random_permsum(rng, r, force_odd=True)
            assert self_inverse_check(a)

    def test_gamma_self_inverse(self):
        assert self_inverse_check(gamma(GroupElement(4, 9)))

    def test_odd_implies_full_rank(self, rng):
        for _ in range(10):
            r = int(rng.integers(1, 8))
            a = random_permsum(rng, r, force_odd=True)
            assert rank(materialize(a)) == 1 << r

    def test_size_three_full_rank(self, rng):
        for _ in range(10):
            r = int(rng.integers(2, 8))
            vals = rng.choice(1 << r, size=3, replace=False)
            a = PermSum(r, tuple(int(v) for v in vals))
            assert self_inverse_check(a)
            assert rank(materialize(a)) == 1 << r

    def test_even_parity_rejected(self):
        with pytest.raises(ValueError):
            self_inverse_check(PermSum(2, (0, 1)))
        with pytest.raises(ValueError):
            divide(PermSum(2, (0, 1)), identity(2))


class TestDivide:
    def test_gamma_translates_support(self, rng):
        v = GroupElement(4, 6)
        b = random_permsum(rng, 4)
        c = divide(gamma(v), b)
        assert c.support == tuple(sorted(x ^ 6 for x in b.support))

    def test_self_division_gives_identity(self, rng):
        a = random_permsum(rng, 5, force_odd=True)
        assert divide(a, a) == identity(5)

    def test_random_division(self, rng):
        for _ in range(40):
            r = int(rng.integers(1, 9))
            a = random_permsum(rng, r, force_odd=True)
            b = random_permsum(rng, r)
            assert mul(a, divide(a, b)) == b


class TestStripeScale:
    def test_identity_scale_is_noop(self, rng):
        blocks = [random_permsum(rng, 4) for _ in range(3)]
        assert stripe_scale(blocks, identity(4)) == blocks

    def test_zero_code_stripe_swap(self):
        # the even-case elimination: stripe (I | A_{r-1}) times odd A_{r-1}
        # becomes (A_{r-1} | I) with the row space intact
        a = PermSum(3, (0b100, 0b010, 0b001))
        blocks = [identity(3), a]
        scaled = stripe_scale(blocks, a)
        assert scaled == [a, identity(3)]
        before = hstack([materialize(b) for b in blocks])
        after = hstack([materialize(b) for b in scaled])
        assert row_space_equal(before, after)

    def test_row_space_preserved_random(self, rng):
        for _ in range(25):
            r = int(rng.integers(1, 7))
            t = int(rng.integers(1, 4))
            blocks = [random_permsum(rng, r) for _ in range(t)]
            b = random_permsum(rng, r, force_odd=True)
            scaled = stripe_scale(blocks, b)
            before = hstack([materialize(x) for x in blocks])
            after = hstack([materialize(x) for x in scaled])
            assert row_space_equal(before, after)

    def test_even_scaler_rejected(self):
        with pytest.raises(ValueError):
            stripe_scale([identity(3)], zero(3))


class TestClassConcat:
    def test_single_zero_shift(self, rng):
        a = random_permsum(rng, 5)
        assert class_concat_rank(a, [0]) == rank(materialize(a))

    def test_two_shifts(self, rng):
        a = random_permsum(rng, 4)
        u, v = int(rng.integers(0, 16)), int(rng.integers(0, 16))
        assert class_concat_rank(a, [u, v]) == rank(materialize(a))

    def test_three_random_shifts(self, rng):
        for _ in range(20):
            r = int(rng.integers(1, 7))
            a = random_permsum(rng, r)
            shifts = [int(x) for x in rng.integers(0, 1 << r, size=3)]
            assert class_concat_rank(a, shifts) == rank(materialize(a))

    def test_gamma_shift_preserves_rank(self, rng):
        for _ in range(15):
            r = int(rng.integers(1, 7))
            a = random_permsum(rng, r)
            u = int(rng.integers(0, 1 << r))
            shifted = mul(a, PermSum(r, (u,)))
            assert rank(materialize(a)) == rank(materialize(shifted))

    def test_empty_shifts_rejected(self):
        with pytest.raises(ValueError):
            class_concat_rank(identity(3), [])


class TestMaterialize:
    def test_empty_support_zero_matrix(self):
        assert materialize(zero(3)).is_zero()

    def test_full_support_all_ones(self):
        got = materialize(PermSum(3, tuple(range(8))))
        assert np.array_equal(got.to_dense(), np.ones((8, 8), dtype=np.uint8))

    def test_basis_support_is_hypercube_adjacency(self):
        r = 4
        a = PermSum(r, tuple(1 << i for i in range(r)))
        dense = materialize(a).to_dense()
        # direct Cayley construction
        expect = np.zeros((16, 16), dtype=np.uint8)
        for v in range(16):
            for i in range(r):
                expect[v, v ^ (1 << i)] = 1
        assert np.array_equal(dense, expect)

    def test_symmetric(self, rng):
        a = random_permsum(rng, 5)
        m = materialize(a)
        assert m.is_symmetric()

    def test_row_ones_count_support_size(self, rng):
        a = random_permsum(rng, 5)
        dense = materialize(a).to_dense()
        assert (dense.sum(axis=1) == a.size).all()
        assert (dense.sum(axis=0) == a.size).all()
