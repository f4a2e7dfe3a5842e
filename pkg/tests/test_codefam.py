"""Family generators: Hamming, padded, zero-code, repetition, recursive h_s."""

from __future__ import annotations

import numpy as np
import pytest

from cosetcode import bitlin, codefam, cosetgraph, permring
from cosetcode.codefam import (
    FamilySpec,
    GeneratorSet,
    h2_generators,
    h2_matrix,
    hamming_columns,
    hamming_matrix,
    hs_columns,
    hs_dimensions,
    hs_generators,
    hs_matrix,
    min_distance,
    padded_hamming_generators,
    repetition_generators,
    zero_code_generators,
)


class TestGeneratorSet:
    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            GeneratorSet(3, (1, 1, 2))

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            GeneratorSet(2, (4,))

    def test_matrix_and_lines(self):
        gens = GeneratorSet(3, (0b101, 0b010))
        assert gens.to_lines() == "101\n010\n"
        dense = gens.to_matrix().to_dense()
        assert np.array_equal(dense, np.array([[1, 0], [0, 1], [1, 0]], dtype=np.uint8))


class TestHamming:
    def test_r2_columns(self):
        dense = hamming_matrix(2).to_dense()
        assert np.array_equal(dense, np.array([[0, 1, 1], [1, 0, 1]], dtype=np.uint8))

    def test_r3_shape_and_lex_extremes(self):
        m = hamming_matrix(3)
        assert (m.rows, m.cols) == (3, 7)
        dense = m.to_dense()
        assert dense[:, 0].tolist() == [0, 0, 1]
        assert dense[:, -1].tolist() == [1, 1, 1]

    def test_coset_graph_is_complete(self):
        # with every nonzero vector as a generator the parity matrix is all-ones
        for r in (2, 3, 4):
            gens = GeneratorSet(r, tuple(hamming_columns(r)))
            pm = cosetgraph.parity_matrix(cosetgraph.build_graph(gens))
            assert np.array_equal(pm.to_dense(), np.ones((1 << r, 1 << r), np.uint8))

    def test_r_too_small(self):
        with pytest.raises(ValueError):
            hamming_matrix(1)


class TestPaddedHamming:
    @pytest.mark.parametrize("r,m", [(2, 1), (3, 2), (2, 3)])
    def test_rank_is_two_to_m(self, r, m):
        gens = padded_hamming_generators(r, m)
        assert gens.r == r + m
        assert not gens.has_zero
        pm = cosetgraph.parity_matrix(cosetgraph.build_graph(gens))
        assert bitlin.rank(pm) == 1 << m

    def test_disconnected_into_cliques(self):
        gens = padded_hamming_generators(2, 1)
        assert not cosetgraph.is_connected(gens)
        graph = cosetgraph.build_graph(gens)
        # component of vertex 0: the 2^r vertices sharing its m-suffix
        seen, frontier = {0}, [0]
        while frontier:
            v = frontier.pop()
            for w in graph.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        assert len(seen) == 4  # K_{2^r} with r = 2


class TestSmallFamilies:
    def test_zero_code_generators(self):
        gens = zero_code_generators(3)
        assert gens.columns == (0b100, 0b010, 0b001)
        assert not gens.has_zero

    def test_repetition_generators(self):
        gens = repetition_generators(3)
        assert set(gens.columns) == {0b100, 0b010, 0b001, 0b111, 0b000}
        assert gens.has_zero

    def test_repetition_r2_all_ones_adjacency(self):
        gens = repetition_generators(2)
        dense = permring.materialize(cosetgraph.adjacency_sum(gens)).to_dense()
        assert np.array_equal(dense, np.ones((4, 4), dtype=np.uint8))


class TestRecursiveFamily:
    def test_h2_r4_shape(self):
        m = h2_matrix(4)
        assert (m.rows, m.cols) == (6, 18)
        assert len(set(hs_columns(2, 4))) == 18

    def test_h2_layout(self):
        cols = hs_columns(2, 4)
        assert cols[0] == 0
        assert cols[1:16] == [(0b01 << 4) | h for h in range(1, 16)]
        assert cols[16] == 0b10 << 4
        assert cols[17] == 0b11 << 4

    def test_base_case_equals_h2(self):
        assert hs_columns(2, 5) == codefam.h2_columns(5)
        assert hs_matrix(2, 5) == h2_matrix(5)

    @pytest.mark.parametrize("s", [2, 3, 4, 5])
    @pytest.mark.parametrize("r", [4, 6, 8])
    def test_dimensions_match_formula(self, s, r):
        rows, cols = hs_dimensions(s, r)
        m = hs_matrix(s, r)
        assert (m.rows, m.cols) == (rows, cols)
        assert rows == (s - 1) * r + s
        assert cols == ((1 << (s - 1)) - 1) * ((1 << r) - 1) + (1 << (s - 1)) + 1

    def test_h3_r4_is_11_by_50(self):
        m = hs_matrix(3, 4)
        assert (m.rows, m.cols) == (11, 50)

    def test_h3_prefix_class_layout(self):
        # 3-bit prefix classes: three full Hamming blocks + five singletons
        r = 4
        cols = hs_columns(3, r)
        by_prefix: dict[int, list[int]] = {}
        for c in cols:
            by_prefix.setdefault(c >> (2 * r), []).append(c & ((1 << (2 * r)) - 1))
        sizes = {u: len(v) for u, v in by_prefix.items()}
        full = (1 << r) - 1
        assert sizes == {0b000: 1, 0b001: full, 0b010: 1, 0b011: 1,
                         0b100: full, 0b101: full, 0b110: 1, 0b111: 1}
        # the new block sits under prefix (1,0,0) with suffixes in the LAST r rows
        assert sorted(by_prefix[0b100]) == list(range(1, 1 << r))
        # and no column equals (1,0,0)|0
        assert 0 not in by_prefix[0b100]
        # first-copy Hamming suffixes live in the first r-row block
        assert sorted(by_prefix[0b001]) == [h << r for h in range(1, 1 << r)]

    def test_generators_distinct_and_spanning(self):
        for s, r in [(2, 4), (3, 4), (4, 4), (3, 5)]:
            gens = hs_generators(s, r)
            assert len(set(gens.columns)) == len(gens.columns)
            assert cosetgraph.is_connected(gens)

    def test_small_r_gate(self):
        with pytest.raises(ValueError):
            h2_matrix(3)
        assert h2_matrix(3, allow_small_r=True).cols == 10

    def test_params_rejected(self):
        with pytest.raises(ValueError):
            hs_matrix(1, 4)
        with pytest.raises(ValueError):
            hs_matrix(3, 1, allow_small_r=True)


class TestMinDistance:
    def test_hamming_distance_three(self):
        assert min_distance(hamming_matrix(3)) == 3
        assert min_distance(hamming_columns(4)) == 3

    def test_h2_at_least_four(self):
        assert min_distance(h2_matrix(4)) is None

    def test_h3_at_least_four(self):
        assert min_distance(hs_matrix(3, 4)) is None

    @pytest.mark.parametrize("s", [2, 3, 4])
    @pytest.mark.parametrize("r", [4, 5, 6])
    def test_recursive_family_distance(self, s, r):
        assert min_distance(hs_columns(s, r)) is None

    def test_duplicate_detected(self):
        assert min_distance([1, 1, 2]) == 2

    def test_limit_guard(self):
        with pytest.raises(ValueError):
            min_distance([1, 2, 3], limit=5)


class TestFamilySpec:
    def test_labels(self):
        assert FamilySpec("h2", r=4).label() == "h2(r=4)"
        assert FamilySpec("hs", r=4, s=3).label() == "hs(s=3, r=4)"
        assert FamilySpec("padded_hamming", r=2, m=1).label() == "padded_hamming(r=2, m=1)"

    def test_depth_aliases(self):
        assert FamilySpec("h2", r=4).depth == 2
        assert FamilySpec("h3", r=4).depth == 3
        assert FamilySpec("hs", r=4, s=4).depth == 4
        assert FamilySpec("zero_code", r=4).depth is None

    def test_h3_equals_hs3(self):
        assert FamilySpec("h3", r=4).generators() == FamilySpec("hs", r=4, s=3).generators()

    def test_validation(self):
        with pytest.raises(ValueError):
            FamilySpec("hs", r=4)  # missing s
        with pytest.raises(ValueError):
            FamilySpec("h2", r=4, s=2)  # stray s
        with pytest.raises(ValueError):
            FamilySpec("padded_hamming", r=2)  # missing m
        with pytest.raises(ValueError):
            FamilySpec("zero_code", r=4, m=1)  # stray m
        with pytest.raises(ValueError):
            FamilySpec("h2", r=3)  # below the r >= 4 regime
        with pytest.raises(ValueError):
            FamilySpec("nope", r=4)

    def test_small_r_override_rechecks_triangles(self):
        spec = FamilySpec("h2", r=3, allow_small_r=True)
        assert cosetgraph.is_triangle_free(spec.generators())

    def test_ambient_dims(self):
        assert FamilySpec("zero_code", r=5).ambient_dim == 5
        assert FamilySpec("padded_hamming", r=3, m=2).ambient_dim == 5
        assert FamilySpec("hs", r=4, s=3).ambient_dim == 11
