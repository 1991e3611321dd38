import random

import pytest

from succinctrdf.codes import EMPTY_CODE, CodeTree, PrefixCode
from succinctrdf.errors import EncodingError, NotFoundError, RangeError
from succinctrdf.wavelet import WaveletTree

C = PrefixCode.from_string


class PlainSeq:
    """Reference implementation: keep the codes in a list."""

    def __init__(self, codes):
        self.codes = list(codes)

    def access(self, i):
        return self.codes[i]

    def rank(self, c, i):
        return sum(1 for x in self.codes[:i] if x == c)

    def select(self, c, k):
        seen = 0
        for pos, x in enumerate(self.codes):
            if x == c:
                seen += 1
                if seen == k:
                    return pos
        return None

    def rank_prefix(self, p, i):
        return sum(1 for x in self.codes[:i] if p.is_prefix_of(x))

    def select_prefix(self, p, k):
        seen = 0
        for pos, x in enumerate(self.codes):
            if p.is_prefix_of(x):
                seen += 1
                if seen == k:
                    return pos
        return None


def property_code_tree():
    """The code layout used by the worked example's predicate sequence."""
    leaves = {
        "type": C("00"),
        "name": C("01011"),
        "subOrganizationOf": C("10011"),
        "teacherOf": C("10101"),
        "worksFor": C("100101"),
    }
    tree = CodeTree.from_codes((code, code.sentinel) for code in leaves.values())
    return tree, leaves


def sample_predicate_seq():
    tree, leaves = property_code_tree()
    names = [
        "type", "name",
        "type", "name", "subOrganizationOf",
        "type", "name", "teacherOf", "worksFor",
        "type", "name",
        "type",
    ]
    return tree, leaves, [leaves[n] for n in names]


def random_code_tree(rng, max_leaves=64, max_depth=12):
    """Grow a random prefix-free code set by splitting random leaves."""
    codes = [PrefixCode(0, 1), PrefixCode(1, 1)]
    target = rng.randrange(2, max_leaves + 1)
    while len(codes) < target:
        splittable = [i for i, c in enumerate(codes) if c.length < max_depth]
        if not splittable:
            break
        i = rng.choice(splittable)
        base = codes[i]
        branches = rng.choice([(0,), (1,), (0, 1)])
        codes[i : i + 1] = [base.extend(b, 1) for b in branches]
    tree = CodeTree.from_codes((c, c.sentinel) for c in codes)
    return tree, codes


class TestWorkedExample:
    def test_access(self):
        tree, leaves, seq = sample_predicate_seq()
        wt = WaveletTree.build(seq, tree)
        assert wt.access(0) == leaves["type"]
        assert wt.access(7) == leaves["teacherOf"]
        with pytest.raises(RangeError):
            wt.access(12)
        for i, code in enumerate(seq):
            assert wt.access(i) == code

    def test_rank(self):
        tree, leaves, seq = sample_predicate_seq()
        wt = WaveletTree.build(seq, tree)
        plain = PlainSeq(seq)
        assert wt.rank(leaves["type"], 12) == plain.rank(leaves["type"], 12) == 5
        assert wt.rank(leaves["teacherOf"], 0) == 0
        assert wt.rank(leaves["teacherOf"], 12) == plain.rank(leaves["teacherOf"], 12) == 1

    def test_select(self):
        tree, leaves, seq = sample_predicate_seq()
        wt = WaveletTree.build(seq, tree)
        assert wt.select(leaves["type"], 1) == 0
        assert wt.select(leaves["teacherOf"], 1) == 7
        with pytest.raises(NotFoundError):
            wt.select(leaves["teacherOf"], 2)

    def test_prefix_ops(self):
        tree, leaves, seq = sample_predicate_seq()
        wt = WaveletTree.build(seq, tree)
        plain = PlainSeq(seq)
        obj = C("10")  # the object-property region
        assert wt.rank_prefix(obj, 12) == plain.rank_prefix(obj, 12) == 3
        assert wt.select_prefix(obj, 2) == plain.select_prefix(obj, 2) == 7
        # degenerate prefix = leaf behaves like plain rank/select
        assert wt.rank_prefix(leaves["name"], 12) == wt.rank(leaves["name"], 12)
        assert wt.select_prefix(leaves["name"], 2) == wt.select(leaves["name"], 2)
        # root prefix matches everything
        assert wt.rank_prefix(EMPTY_CODE, 12) == 12
        assert wt.select_prefix(EMPTY_CODE, 5) == 4


class TestContracts:
    def test_empty_sequence(self):
        tree, _ = property_code_tree()
        wt = WaveletTree.build([], tree)
        assert len(wt) == 0
        assert wt.rank_prefix(C("10"), 0) == 0
        with pytest.raises(NotFoundError):
            wt.select_prefix(C("10"), 1)

    def test_non_leaf_element_rejected(self):
        tree, _ = property_code_tree()
        with pytest.raises(EncodingError):
            WaveletTree.build([C("10")], tree)

    def test_unknown_path_rejected(self):
        tree, leaves, seq = sample_predicate_seq()
        wt = WaveletTree.build(seq, tree)
        with pytest.raises(EncodingError):
            wt.rank_prefix(C("11"), 5)
        with pytest.raises(EncodingError):
            wt.rank(C("10"), 5)  # internal node is not a leaf

    def test_range_checks(self):
        tree, leaves, seq = sample_predicate_seq()
        wt = WaveletTree.build(seq, tree)
        with pytest.raises(RangeError):
            wt.rank(leaves["type"], 13)
        with pytest.raises(RangeError):
            wt.rank_prefix(C("10"), 13)


class TestOracleEquivalence:
    @pytest.mark.parametrize("seed", range(8))
    def test_random_sequences(self, seed):
        rng = random.Random(seed)
        tree, codes = random_code_tree(rng)
        n = rng.randrange(0, 300)
        seq = [rng.choice(codes) for _ in range(n)]
        wt = WaveletTree.build(seq, tree)
        plain = PlainSeq(seq)
        for i in range(n):
            assert wt.access(i) == plain.access(i)
        probe_codes = rng.sample(codes, min(8, len(codes)))
        for c in probe_codes:
            for i in range(0, n + 1, max(1, n // 17)):
                assert wt.rank(c, i) == plain.rank(c, i)
            total = plain.rank(c, n)
            for k in range(1, total + 1):
                assert wt.select(c, k) == plain.select(c, k)
            with pytest.raises(NotFoundError):
                wt.select(c, total + 1)
        # every internal node is a legal prefix target
        internal = {c.prefix(l) for c in codes for l in range(c.length)}
        for p in internal:
            assert wt.rank_prefix(p, n) == plain.rank_prefix(p, n)
            total = plain.rank_prefix(p, n)
            for k in range(1, min(total, 40) + 1):
                assert wt.select_prefix(p, k) == plain.select_prefix(p, k)

    def test_large_sampled(self):
        rng = random.Random(99)
        tree, codes = random_code_tree(rng, max_leaves=48, max_depth=10)
        n = 100_000
        seq = [rng.choice(codes) for _ in range(n)]
        wt = WaveletTree.build(seq, tree)
        plain = PlainSeq(seq)
        for _ in range(300):
            i = rng.randrange(n)
            assert wt.access(i) == plain.access(i)
        for c in rng.sample(codes, 6):
            positions = [i for i, x in enumerate(seq) if x == c]
            cum = 0
            for i in (0, 1, n // 3, n // 2, n):
                assert wt.rank(c, i) == sum(1 for p in positions if p < i)
            for _ in range(50):
                if not positions:
                    break
                k = rng.randrange(1, len(positions) + 1)
                assert wt.select(c, k) == positions[k - 1]


class TestLaws:
    @pytest.mark.parametrize("seed", range(4))
    def test_prefix_additivity(self, seed):
        rng = random.Random(1000 + seed)
        tree, codes = random_code_tree(rng, max_leaves=24, max_depth=8)
        n = rng.randrange(1, 150)
        seq = [rng.choice(codes) for _ in range(n)]
        wt = WaveletTree.build(seq, tree)
        internal = {c.prefix(l) for c in codes for l in range(c.length)}
        for p in internal:
            below = [c for c in codes if p.is_prefix_of(c)]
            for i in (0, n // 2, n):
                assert wt.rank_prefix(p, i) == sum(wt.rank(c, i) for c in below)

    @pytest.mark.parametrize("seed", range(4))
    def test_select_rank_roundtrip(self, seed):
        rng = random.Random(2000 + seed)
        tree, codes = random_code_tree(rng, max_leaves=16, max_depth=6)
        n = rng.randrange(1, 120)
        seq = [rng.choice(codes) for _ in range(n)]
        wt = WaveletTree.build(seq, tree)
        prefixes = {c.prefix(l) for c in codes for l in range(c.length + 1)}
        for q, x in enumerate(seq):
            for p in prefixes:
                if p.is_prefix_of(x):
                    assert wt.select_prefix(p, wt.rank_prefix(p, q) + 1) == q
