import random

import pytest

from succinctrdf.bits import BitVector
from succinctrdf.errors import NotFoundError, RangeError

# The subject/predicate bitmap of the worked storage example.
BP = "101001000101"


class NaiveBits:
    """Plain-list reference implementation."""

    def __init__(self, bits):
        self.bits = [1 if b else 0 for b in bits]

    def access(self, i):
        return self.bits[i]

    def rank(self, b, i):
        return sum(1 for x in self.bits[:i] if x == b)

    def select(self, b, k):
        seen = 0
        for pos, x in enumerate(self.bits):
            if x == b:
                seen += 1
                if seen == k:
                    return pos
        return None


def random_bits(rng, n, density=0.5):
    return [1 if rng.random() < density else 0 for _ in range(n)]


class TestWorkedExample:
    def test_build_roundtrip(self):
        bv = BitVector.from_string(BP)
        assert len(bv) == 12
        assert bv.to01() == BP

    def test_access(self):
        bv = BitVector.from_string(BP)
        assert bv.access(0) == 1
        assert bv.access(1) == 0
        with pytest.raises(RangeError):
            bv.access(12)

    def test_rank(self):
        bv = BitVector.from_string(BP)
        assert bv.rank(1, 12) == 5
        assert bv.rank(1, 0) == 0
        assert bv.rank(0, 6) == 3
        with pytest.raises(RangeError):
            bv.rank(1, 13)

    def test_select(self):
        bv = BitVector.from_string(BP)
        assert bv.select(1, 3) == 5
        assert bv.select(1, 1) == 0
        with pytest.raises(NotFoundError):
            bv.select(1, 6)


class TestEdgeCases:
    def test_empty(self):
        bv = BitVector.from_bits([])
        assert len(bv) == 0
        assert bv.rank(1, 0) == 0
        assert bv.rank(0, 0) == 0
        with pytest.raises(NotFoundError):
            bv.select(1, 1)
        with pytest.raises(RangeError):
            bv.access(0)

    @pytest.mark.parametrize("pattern", ["0", "1", "01" * 40, "1" * 200, "0" * 200])
    def test_uniform_patterns(self, pattern):
        bv = BitVector.from_string(pattern)
        naive = NaiveBits(int(c) for c in pattern)
        for i in range(len(pattern) + 1):
            assert bv.rank(1, i) == naive.rank(1, i)
            assert bv.rank(0, i) == naive.rank(0, i)

    def test_select_bounds(self):
        bv = BitVector.from_string("0011")
        with pytest.raises(NotFoundError):
            bv.select(1, 0)
        with pytest.raises(NotFoundError):
            bv.select(0, 3)


class TestOracleEquivalence:
    @pytest.mark.parametrize("n", [1, 63, 64, 65, 511, 512, 513, 1000, 4096])
    def test_exhaustive_small(self, n):
        rng = random.Random(7 * n)
        bits = random_bits(rng, n, rng.choice([0.05, 0.5, 0.95]))
        bv = BitVector.from_bits(bits)
        naive = NaiveBits(bits)
        for i in range(n):
            assert bv.access(i) == naive.access(i)
        for i in range(n + 1):
            assert bv.rank(1, i) == naive.rank(1, i)
            assert bv.rank(0, i) == naive.rank(0, i)
        for b in (0, 1):
            total = naive.rank(b, n)
            for k in range(1, total + 1):
                assert bv.select(b, k) == naive.select(b, k)
            with pytest.raises(NotFoundError):
                bv.select(b, total + 1)

    def test_sampled_large(self):
        rng = random.Random(42)
        n = 1_000_000
        bits = random_bits(rng, n, 0.3)
        bv = BitVector.from_bits(bits)
        naive = NaiveBits(bits)
        # cumulative counts once, then spot-check against them
        cum1 = [0]
        for b in bits:
            cum1.append(cum1[-1] + b)
        ones_pos = [i for i, b in enumerate(bits) if b]
        zeros_pos = [i for i, b in enumerate(bits) if not b]
        for _ in range(2000):
            i = rng.randrange(n + 1)
            assert bv.rank(1, i) == cum1[i]
            assert bv.rank(0, i) == i - cum1[i]
        for _ in range(2000):
            k = rng.randrange(1, len(ones_pos) + 1)
            assert bv.select(1, k) == ones_pos[k - 1]
            k = rng.randrange(1, len(zeros_pos) + 1)
            assert bv.select(0, k) == zeros_pos[k - 1]
        for _ in range(500):
            i = rng.randrange(n)
            assert bv.access(i) == naive.access(i)


class TestLaws:
    @pytest.mark.parametrize("n", [1, 100, 1024, 2**14])
    def test_select_rank_roundtrip(self, n):
        rng = random.Random(n)
        bits = random_bits(rng, n)
        bv = BitVector.from_bits(bits)
        for p in range(n):
            b = bv.access(p)
            assert bv.select(b, bv.rank(b, p) + 1) == p

    def test_rank_sums(self):
        rng = random.Random(5)
        bits = random_bits(rng, 3000)
        bv = BitVector.from_bits(bits)
        n = len(bv)
        assert bv.rank(1, n) + bv.rank(0, n) == n
        for i in range(n):
            assert bv.rank(1, i + 1) - bv.rank(1, i) == bv.access(i)


class TestSpace:
    @pytest.mark.parametrize("n", [2**16, 2**18])
    def test_directory_overhead(self, n):
        rng = random.Random(n)
        bv = BitVector.from_bits(random_bits(rng, n))
        assert bv.directory_bits() <= 0.5 * n


class TestSerialization:
    def test_words_roundtrip(self):
        rng = random.Random(9)
        bits = random_bits(rng, 777)
        bv = BitVector.from_bits(bits)
        clone = BitVector.from_words_bytes(bv.words_bytes(), len(bv))
        assert clone == bv
        assert clone.rank(1, 777) == bv.rank(1, 777)

    def test_bad_payload_length(self):
        with pytest.raises(RangeError):
            BitVector.from_words_bytes(b"\x00" * 8, 100)
