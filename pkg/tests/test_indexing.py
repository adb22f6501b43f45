import numpy as np
import pytest

from nfftk import errors, indexing


class TestIndexSet:
    def test_1d(self):
        assert indexing.index_set((4,)).ravel().tolist() == [-2, -1, 0, 1]

    def test_2d_order_last_fastest(self):
        got = [tuple(k) for k in indexing.index_set((2, 2))]
        assert got == [(-1, -1), (-1, 0), (0, -1), (0, 0)]

    def test_length(self):
        assert indexing.index_set((4, 6)).shape == (24, 2)

    @pytest.mark.parametrize("bad", [(3,), (0,), (-2,), (4, 5)])
    def test_invalid_bandlimit(self, bad):
        with pytest.raises(errors.InvalidBandlimitError):
            indexing.index_set(bad)


class TestLinearIndex:
    def test_first_and_last(self):
        assert indexing.linear_index((-2,), (4,)) == 0
        assert indexing.linear_index((1,), (4,)) == 3

    def test_2d(self):
        assert indexing.linear_index((0, 0), (2, 2)) == 3

    def test_out_of_range(self):
        with pytest.raises(errors.NfftError):
            indexing.linear_index((2,), (4,))

    @pytest.mark.parametrize("N", [(4,), (4, 6), (2, 4, 6)])
    def test_roundtrip(self, N):
        total = int(np.prod(N))
        for i in range(total):
            assert indexing.linear_index(indexing.multi_index(i, N), N) == i

    @pytest.mark.parametrize("N", [(6,), (4, 4)])
    def test_matches_index_set_order(self, N):
        ks = indexing.index_set(N)
        for i, k in enumerate(ks):
            assert indexing.linear_index(tuple(k), N) == i


class TestGatherRange:
    def test_interior(self):
        r = indexing.gather_range((0.1,), (16,), 2)
        assert (r.lo, r.hi) == ((0,), (3,))

    def test_left_edge_wraps(self):
        r = indexing.gather_range((-0.5,), (16,), 2)
        assert (r.lo, r.hi) == ((-10,), (-6,))
        assert r.cells(0, 16).tolist() == [6, 7, 8, 9, 10]

    def test_centered(self):
        r = indexing.gather_range((0.0,), (8,), 1)
        assert (r.lo, r.hi) == ((-1,), (1,))

    def test_width_bounds(self, rng):
        m = 3
        for x in rng.random(200) - 0.5:
            r = indexing.gather_range((x,), (32,), m)
            assert r.width(0) in (2 * m, 2 * m + 1)

    def test_node_out_of_range(self):
        with pytest.raises(errors.NodeRangeError):
            indexing.gather_range((0.5,), (16,), 2)

    def test_bad_cutoff(self):
        with pytest.raises(errors.NfftError):
            indexing.gather_range((0.0,), (8,), 4)
        with pytest.raises(errors.NfftError):
            indexing.gather_range((0.0,), (8,), 0)


class TestTransposedMembers:
    def test_single_node_hit(self):
        x = np.array([[0.0]])
        assert indexing.transposed_members((0,), x, (8,), 1).tolist() == [0]

    def test_single_node_miss(self):
        x = np.array([[0.0]])
        # offset 4 is outside I_n for n=8 (valid range -4..3), use -4: distance 4 > m
        assert indexing.transposed_members((-4,), x, (8,), 1).tolist() == []

    @pytest.mark.parametrize("n", [(16,), (16, 12), (8, 8, 8)])
    def test_duality_with_gather_range_exhaustive(self, rng, n):
        d = len(n)
        M = 32
        coords = rng.random((M, d)) - 0.5
        m = 2
        ranges = [indexing.gather_range(tuple(coords[j]), n, m) for j in range(M)]
        for ell in indexing.index_set(n):
            members = set(indexing.transposed_members(tuple(ell), coords, n, m).tolist())
            for j in range(M):
                r = ranges[j]
                inside = all(
                    (ell[i] - r.lo[i]) % n[i] <= (r.hi[i] - r.lo[i]) for i in range(d)
                )
                assert (j in members) == inside
