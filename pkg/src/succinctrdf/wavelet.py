"""Pointer-free, levelwise wavelet tree over an arbitrary prefix-free code tree.

One concatenated bitvector is stored per depth level.  At level d the
sequence contains, grouped by their d-bit path prefix in node order, every
symbol whose code is longer than d bits; the stored bit is bit d of the
symbol's code.  Symbols drop out of deeper levels once their code ends, so
ragged (non-balanced, single-child) code trees are supported.

Per-node position intervals are *derived* from the level bitvectors and
the tree topology, both at build time and after deserialization, so the
serialized form carries only the topology and the raw levels.

Beyond the classic access / rank / select, the prefix-bounded variants
``rank_prefix`` / ``select_prefix`` stop the traversal at the depth of the
given (possibly internal) path, which makes "a symbol below this hierarchy
node" a first-class query.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .bits import BitVector
from .codes import CodeTree, PrefixCode
from .errors import EncodingError, NotFoundError, RangeError


class WaveletTree:
    __slots__ = ("_tree", "_levels", "_n", "_intervals")

    def __init__(self, tree: CodeTree, levels: Sequence[BitVector], n: int):
        self._tree = tree
        self._levels = list(levels)
        self._n = n
        self._intervals = _derive_intervals(tree, self._levels)

    @classmethod
    def build(cls, seq: Iterable[PrefixCode], tree: CodeTree) -> "WaveletTree":
        codes = list(seq)
        for c in codes:
            if not tree.is_leaf_code(c):
                raise EncodingError(f"{c} is not a leaf code of the tree")
        levels = []
        # nodes: (path, member indices into codes) for one level, in node order
        nodes = [(0, range(len(codes)))]
        depth = 0
        while any(len(members) for _, members in nodes):
            bits = []
            next_nodes = []
            for path, members in nodes:
                zeros, ones = [], []
                for i in members:
                    c = codes[i]
                    b = (c.bits >> (c.length - 1 - depth)) & 1
                    bits.append(b)
                    if c.length > depth + 1:
                        (ones if b else zeros).append(i)
                for b, survivors in ((0, zeros), (1, ones)):
                    child = (path << 1) | b
                    if survivors and tree.is_internal(depth + 1, child):
                        next_nodes.append((child, survivors))
            levels.append(BitVector.from_bits(bits))
            nodes = next_nodes
            depth += 1
        return cls(tree, levels, len(codes))

    def __len__(self) -> int:
        return self._n

    @property
    def code_tree(self) -> CodeTree:
        return self._tree

    @property
    def levels(self) -> list[BitVector]:
        return self._levels

    def access(self, i: int) -> PrefixCode:
        if not 0 <= i < self._n:
            raise RangeError(f"position {i} out of range for length {self._n}")
        path = 0
        pos = i
        depth = 0
        while True:
            level = self._levels[depth]
            start = self._intervals[(depth, path)][0]
            b = level.access(start + pos)
            pos = level.rank(b, start + pos) - level.rank(b, start)
            path = (path << 1) | b
            depth += 1
            if self._tree.is_leaf(depth, path):
                return PrefixCode(path, depth)

    def rank(self, c: PrefixCode, i: int) -> int:
        """Occurrences of leaf code ``c`` in positions [0, i)."""
        if not self._tree.is_leaf_code(c):
            raise EncodingError(f"{c} is not a leaf code of the tree")
        return self._count_below(c, i)

    def rank_prefix(self, p: PrefixCode, i: int) -> int:
        """Occurrences in [0, i) of any leaf code having prefix ``p``."""
        if not self._tree.contains_code(p):
            raise EncodingError(f"{p} is not a path in the code tree")
        return self._count_below(p, i)

    def _count_below(self, p: PrefixCode, i: int) -> int:
        if not 0 <= i <= self._n:
            raise RangeError(f"position {i} out of range for length {self._n}")
        pos = i
        path = 0
        for depth in range(p.length):
            if pos == 0:
                return 0
            interval = self._intervals.get((depth, path))
            if interval is None:
                return 0
            level = self._levels[depth]
            start = interval[0]
            b = p.bit(depth)
            pos = level.rank(b, start + pos) - level.rank(b, start)
            path = (path << 1) | b
        return pos

    def select(self, c: PrefixCode, k: int) -> int:
        """Position of the k-th (1-based) occurrence of leaf code ``c``."""
        if not self._tree.is_leaf_code(c):
            raise EncodingError(f"{c} is not a leaf code of the tree")
        return self._locate(c, k)

    def select_prefix(self, p: PrefixCode, k: int) -> int:
        """Position of the k-th occurrence of any leaf code having prefix ``p``."""
        if not self._tree.contains_code(p):
            raise EncodingError(f"{p} is not a path in the code tree")
        return self._locate(p, k)

    def _locate(self, p: PrefixCode, k: int) -> int:
        total = self._count_below(p, self._n)
        if not 1 <= k <= total:
            raise NotFoundError(f"occurrence {k} of {p}: only {total} present")
        pos = k - 1
        for depth in range(p.length - 1, -1, -1):
            level = self._levels[depth]
            start = self._intervals[(depth, p.bits >> (p.length - depth))][0]
            b = p.bit(depth)
            before = level.rank(b, start)
            pos = level.select(b, before + pos + 1) - start
        return pos

    def __eq__(self, other):
        return (
            isinstance(other, WaveletTree)
            and self._n == other._n
            and self._tree == other._tree
            and self._levels == other._levels
        )

    def __repr__(self):
        return f"WaveletTree(len={self._n}, levels={len(self._levels)})"


def _derive_intervals(tree: CodeTree, levels: Sequence[BitVector]) -> dict:
    """Per-(depth, path) position intervals, recomputed from levels + topology."""
    intervals = {}
    if not levels:
        return intervals
    nodes = [(0, 0, len(levels[0]))]
    for depth, level in enumerate(levels):
        next_nodes = []
        offset = 0
        for path, start, end in nodes:
            if end > start:
                intervals[(depth, path)] = (start, end)
            zeros = level.rank(0, end) - level.rank(0, start)
            for b, count in ((0, zeros), (1, (end - start) - zeros)):
                child = (path << 1) | b
                if count and tree.is_internal(depth + 1, child):
                    next_nodes.append((child, offset, offset + count))
                    offset += count
        nodes = next_nodes
    return intervals
