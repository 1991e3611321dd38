"""Immutable bitvector with two-level rank directories and hinted select.

The directory layout is tuned so that rank is a constant number of array
reads plus one word popcount, while select pays a short binary search.
Per 512-bit superblock we keep one 64-bit cumulative count; per 64-bit word
one 16-bit in-superblock cumulative count; plus the position of every
8192nd one (and zero) to bound the superblock search.  Total overhead is
64/512 + 16/64 + epsilon = 37.5% + epsilon of the payload, comfortably
below the 0.5 bits-per-bit target.

Positions are 0-based; rank counts a half-open prefix [0, i); select
ordinals are 1-based.
"""

from __future__ import annotations

from array import array
from typing import Iterable

from .errors import NotFoundError, RangeError

SUPERBLOCK_BITS = 512
WORD_BITS = 64
WORDS_PER_SUPERBLOCK = SUPERBLOCK_BITS // WORD_BITS
SELECT_SAMPLE = 8192

_WORD_MASK = (1 << WORD_BITS) - 1

# _SELECT_IN_BYTE[b] lists the positions (LSB first) of the set bits of byte b.
_SELECT_IN_BYTE = [[j for j in range(8) if (b >> j) & 1] for b in range(256)]


def _select_in_word(word: int, k: int) -> int:
    """Position of the k-th (1-based) set bit of a 64-bit word."""
    offset = 0
    while True:
        byte = word & 0xFF
        c = byte.bit_count()
        if k <= c:
            return offset + _SELECT_IN_BYTE[byte][k - 1]
        k -= c
        word >>= 8
        offset += 8


class BitVector:
    """Packed bit sequence answering access / rank / select.

    Immutable after construction; safe for concurrent readers.
    """

    __slots__ = ("_n", "_words", "_sb_cum", "_blk_cum", "_ones", "_hints1", "_hints0")

    def __init__(self, words: array, n: int):
        # internal: use from_bits / from_string / from_words_bytes
        self._words = words
        self._n = n
        self._build_directories()

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        words = array("Q")
        word = 0
        n = 0
        for b in bits:
            if b:
                word |= 1 << (n & 63)
            n += 1
            if n & 63 == 0:
                words.append(word)
                word = 0
        if n & 63:
            words.append(word)
        return cls(words, n)

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        return cls.from_bits(1 if c == "1" else 0 for c in text.replace(" ", ""))

    @classmethod
    def from_words_bytes(cls, data: bytes, n: int) -> "BitVector":
        """Rebuild from the packed little-endian word payload."""
        if len(data) != 8 * ((n + 63) // 64):
            raise RangeError(f"payload length {len(data)} does not match {n} bits")
        words = array("Q")
        words.frombytes(data)
        if n & 63 and words and words[-1] >> (n & 63):
            raise RangeError("padding bits beyond the vector length are not zero")
        return cls(words, n)

    def _build_directories(self):
        sb_cum = array("Q", [0])
        blk_cum = array("H", bytes(0))
        hints1 = array("Q")
        hints0 = array("Q")
        ones = 0
        in_sb = 0
        next1 = 1  # ordinal of the next sampled one
        next0 = 1
        zeros = 0
        for w, word in enumerate(self._words):
            if w % WORDS_PER_SUPERBLOCK == 0 and w:
                sb_cum.append(ones)
                in_sb = 0
            blk_cum.append(in_sb)
            c = word.bit_count()
            valid = min(WORD_BITS, self._n - w * WORD_BITS)
            if ones + c >= next1:
                hints1.append(w * WORD_BITS + _select_in_word(word, next1 - ones))
                next1 += SELECT_SAMPLE
            zc = valid - c
            if zeros + zc >= next0:
                inv = ~word & _WORD_MASK
                hints0.append(w * WORD_BITS + _select_in_word(inv, next0 - zeros))
                next0 += SELECT_SAMPLE
            ones += c
            zeros += zc
            in_sb += c
        self._sb_cum = sb_cum
        self._blk_cum = blk_cum
        self._ones = ones
        self._hints1 = hints1
        self._hints0 = hints0

    def __len__(self) -> int:
        return self._n

    @property
    def ones(self) -> int:
        return self._ones

    @property
    def zeros(self) -> int:
        return self._n - self._ones

    def access(self, i: int) -> int:
        if not 0 <= i < self._n:
            raise RangeError(f"position {i} out of range for length {self._n}")
        return (self._words[i >> 6] >> (i & 63)) & 1

    __getitem__ = access

    def rank(self, b: int, i: int) -> int:
        """Occurrences of bit ``b`` in positions [0, i)."""
        r1 = self.rank1(i)
        return r1 if b else i - r1

    def rank1(self, i: int) -> int:
        if not 0 <= i <= self._n:
            raise RangeError(f"rank position {i} out of range for length {self._n}")
        if i == self._n:
            return self._ones
        w = i >> 6
        r = self._sb_cum[i >> 9] + self._blk_cum[w]
        rem = i & 63
        if rem:
            r += (self._words[w] & ((1 << rem) - 1)).bit_count()
        return r

    def rank0(self, i: int) -> int:
        return i - self.rank1(i)

    def select(self, b: int, k: int) -> int:
        """Position of the k-th (1-based) occurrence of bit ``b``."""
        return self.select1(k) if b else self.select0(k)

    def select1(self, k: int) -> int:
        if not 1 <= k <= self._ones:
            raise NotFoundError(f"select1({k}) with only {self._ones} ones")
        lo, hi = self._hint_window(self._hints1, k)
        # largest superblock whose cumulative count is < k
        while lo < hi:
            mid = (lo + hi + 1) >> 1
            if self._sb_cum[mid] < k:
                lo = mid
            else:
                hi = mid - 1
        rem = k - self._sb_cum[lo]
        w = lo * WORDS_PER_SUPERBLOCK
        last = min(w + WORDS_PER_SUPERBLOCK, len(self._words)) - 1
        while w < last and self._blk_cum[w + 1] < rem:
            w += 1
        rem -= self._blk_cum[w]
        return w * WORD_BITS + _select_in_word(self._words[w], rem)

    def select0(self, k: int) -> int:
        if not 1 <= k <= self.zeros:
            raise NotFoundError(f"select0({k}) with only {self.zeros} zeros")
        lo, hi = self._hint_window(self._hints0, k)
        while lo < hi:
            mid = (lo + hi + 1) >> 1
            if (mid * SUPERBLOCK_BITS) - self._sb_cum[mid] < k:
                lo = mid
            else:
                hi = mid - 1
        rem = k - (lo * SUPERBLOCK_BITS - self._sb_cum[lo])
        w = lo * WORDS_PER_SUPERBLOCK
        last = min(w + WORDS_PER_SUPERBLOCK, len(self._words)) - 1
        while w < last:
            zeros_before_next = (w + 1 - lo * WORDS_PER_SUPERBLOCK) * WORD_BITS - self._blk_cum[w + 1]
            if zeros_before_next < rem:
                w += 1
            else:
                break
        rem -= (w - lo * WORDS_PER_SUPERBLOCK) * WORD_BITS - self._blk_cum[w]
        return w * WORD_BITS + _select_in_word(~self._words[w] & _WORD_MASK, rem)

    def _hint_window(self, hints: array, k: int) -> tuple[int, int]:
        idx = (k - 1) // SELECT_SAMPLE
        lo = hints[idx] >> 9 if idx < len(hints) else 0
        hi = hints[idx + 1] >> 9 if idx + 1 < len(hints) else len(self._sb_cum) - 1
        return lo, hi

    def to01(self) -> str:
        return "".join("1" if self.access(i) else "0" for i in range(self._n))

    def words_bytes(self) -> bytes:
        return self._words.tobytes()

    def directory_bits(self) -> int:
        """Size of the auxiliary rank/select directories, in bits."""
        return 8 * (
            self._sb_cum.itemsize * len(self._sb_cum)
            + self._blk_cum.itemsize * len(self._blk_cum)
            + self._hints1.itemsize * len(self._hints1)
            + self._hints0.itemsize * len(self._hints0)
        )

    def __eq__(self, other):
        return (
            isinstance(other, BitVector)
            and self._n == other._n
            and self._words == other._words
        )

    def __repr__(self):
        return f"BitVector(len={self._n}, ones={self._ones})"
