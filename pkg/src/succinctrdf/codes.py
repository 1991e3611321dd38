"""Variable-length prefix codes and the binary code trees they live in.

A ``PrefixCode`` is a most-significant-bit-first bit string of known length.
Codes travel across module boundaries in *sentinel* integer form: a single
1 bit is prepended so that leading zeros (and hence the length) survive the
trip through a plain integer.

A ``CodeTree`` is a binary trie whose leaves each carry one symbol.  Leaf
paths are prefix-free by construction; internal paths are the legal targets
of prefix-bounded rank/select queries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import EncodingError

MAX_CODE_LEN = 63

_INTERNAL = object()  # marker distinguishing internal trie nodes from leaves


@dataclass(frozen=True, slots=True)
class PrefixCode:
    """A bit string ``bits`` of ``length`` bits, MSB first.

    ``bits`` must fit in ``length`` bits; the empty code (length 0) is the
    root path and is only meaningful as a prefix, never as a symbol.
    """

    bits: int
    length: int

    def __post_init__(self):
        if not 0 <= self.length <= MAX_CODE_LEN:
            raise EncodingError(f"code length {self.length} out of range 0..{MAX_CODE_LEN}")
        if self.bits < 0 or self.bits >> self.length:
            raise EncodingError(f"bits 0b{self.bits:b} do not fit in {self.length} bits")

    @property
    def sentinel(self) -> int:
        """Integer interchange form: a 1 bit marks the start of the code."""
        return (1 << self.length) | self.bits

    @classmethod
    def from_sentinel(cls, value: int) -> "PrefixCode":
        if value <= 0:
            raise EncodingError(f"invalid sentinel integer {value}")
        length = value.bit_length() - 1
        return cls(value ^ (1 << length), length)

    @classmethod
    def from_string(cls, text: str) -> "PrefixCode":
        """Parse a literal bit string such as ``"01010"`` (spaces ignored)."""
        text = text.replace(" ", "")
        if text and set(text) - {"0", "1"}:
            raise EncodingError(f"not a bit string: {text!r}")
        return cls(int(text, 2) if text else 0, len(text))

    def bit(self, i: int) -> int:
        """The i-th bit, 0 = most significant."""
        return (self.bits >> (self.length - 1 - i)) & 1

    def extend(self, value: int, width: int) -> "PrefixCode":
        """Append a ``width``-bit local field holding ``value``."""
        if width < 0 or (width == 0 and value) or value >> width:
            raise EncodingError(f"field value {value} does not fit in {width} bits")
        return PrefixCode((self.bits << width) | value, self.length + width)

    def prefix(self, length: int) -> "PrefixCode":
        if length > self.length:
            raise EncodingError("prefix longer than code")
        return PrefixCode(self.bits >> (self.length - length), length)

    def is_prefix_of(self, other: "PrefixCode") -> bool:
        return (
            self.length <= other.length
            and (other.bits >> (other.length - self.length)) == self.bits
        )

    def __str__(self) -> str:
        return format(self.bits, f"0{self.length}b") if self.length else ""


EMPTY_CODE = PrefixCode(0, 0)


class CodeTree:
    """Binary trie mapping prefix-free leaf codes to integer symbols.

    Nodes are addressed by ``(depth, path_bits)``.  The trie need not be a
    full binary tree: one-child internal nodes are legal and arise from
    1-wide local fields in hierarchy codes.
    """

    def __init__(self):
        self._nodes: dict[tuple[int, int], object] = {}
        self._leaf_codes: dict[int, PrefixCode] = {}

    @classmethod
    def from_codes(cls, entries: Iterable[tuple[PrefixCode, int]]) -> "CodeTree":
        """Build from (leaf code, symbol) pairs; codes must be prefix-free."""
        tree = cls()
        for code, symbol in entries:
            tree._insert(code, symbol)
        return tree

    @classmethod
    def balanced(cls, width: int, max_value: int) -> "CodeTree":
        """Trie of all ``width``-bit codes for values 0..max_value, symbol = value."""
        if width < 1 or max_value >> width:
            raise EncodingError(f"max value {max_value} does not fit in {width} bits")
        return cls.from_codes(
            (PrefixCode(v, width), v) for v in range(max_value + 1)
        )

    def _insert(self, code: PrefixCode, symbol: int):
        if code.length == 0:
            raise EncodingError("the empty code cannot be a leaf")
        for depth in range(code.length):
            key = (depth, code.bits >> (code.length - depth))
            existing = self._nodes.get(key)
            if existing is None:
                self._nodes[key] = _INTERNAL
            elif existing is not _INTERNAL:
                raise EncodingError(f"code {code} extends existing leaf at depth {depth}")
        key = (code.length, code.bits)
        if key in self._nodes:
            raise EncodingError(f"duplicate or conflicting leaf code {code}")
        self._nodes[key] = symbol
        if symbol in self._leaf_codes:
            raise EncodingError(f"symbol {symbol} assigned to two leaves")
        self._leaf_codes[symbol] = code

    def has_node(self, depth: int, path: int) -> bool:
        if depth == 0:
            return bool(self._nodes)
        return (depth, path) in self._nodes

    def is_leaf(self, depth: int, path: int) -> bool:
        if depth == 0:
            return False
        return self._nodes.get((depth, path), _INTERNAL) is not _INTERNAL

    def is_internal(self, depth: int, path: int) -> bool:
        if depth == 0:
            return bool(self._nodes)
        return self._nodes.get((depth, path)) is _INTERNAL

    def contains_code(self, code: PrefixCode) -> bool:
        """True if ``code`` addresses any node (leaf or internal) of the trie."""
        return self.has_node(code.length, code.bits)

    def is_leaf_code(self, code: PrefixCode) -> bool:
        return self.is_leaf(code.length, code.bits)

    def symbol_at(self, code: PrefixCode) -> int:
        value = self._nodes.get((code.length, code.bits))
        if value is None or value is _INTERNAL:
            raise EncodingError(f"{code} is not a leaf of this code tree")
        return value  # type: ignore[return-value]

    def code_of(self, symbol: int) -> PrefixCode:
        try:
            return self._leaf_codes[symbol]
        except KeyError:
            raise EncodingError(f"symbol {symbol} has no leaf in this code tree") from None

    def leaves(self) -> Iterator[tuple[PrefixCode, int]]:
        for symbol, code in self._leaf_codes.items():
            yield code, symbol

    @property
    def leaf_count(self) -> int:
        return len(self._leaf_codes)

    @property
    def max_depth(self) -> int:
        return max((c.length for c in self._leaf_codes.values()), default=0)

    def preorder(self) -> Iterator[tuple[int, int, bool]]:
        """Yield (depth, path, is_leaf) in preorder (left before right)."""
        if not self._nodes:
            return
        stack = [(0, 0)]
        while stack:
            depth, path = stack.pop()
            leaf = self.is_leaf(depth, path)
            yield depth, path, leaf
            if not leaf:
                right = (depth + 1, (path << 1) | 1)
                left = (depth + 1, path << 1)
                if right in self._nodes:
                    stack.append(right)
                if left in self._nodes:
                    stack.append(left)

    def __eq__(self, other):
        return isinstance(other, CodeTree) and self._nodes == other._nodes

    def __repr__(self):
        return f"CodeTree({self.leaf_count} leaves, depth {self.max_depth})"
