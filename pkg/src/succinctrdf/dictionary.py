"""Instance-term dictionary and the dataset statistics the planner reads.

Instance terms (everything appearing in a subject slot, plus objects of
non-typing predicates) share one id space; id 0 is reserved as the absent
marker.  Two id policies exist: ``sorted`` assigns ids in lexicographic
order of the canonical N-Triples form, ``first_seen`` in order of first
occurrence.  The sorted policy is what the serialized front-coded blocks
are tuned for; first_seen reproduces input-order fixtures exactly.
"""

from __future__ import annotations

from typing import Iterable

from .errors import IngestError, RangeError
from .terms import Term

SORTED = "sorted"
FIRST_SEEN = "first_seen"
POLICIES = (SORTED, FIRST_SEEN)

FRONT_CODING_BLOCK = 16


class InstanceDictionary:
    """Bijection between instance terms and ids 1..N."""

    __slots__ = ("policy", "_terms", "_ids")

    def __init__(self, terms: list[Term], policy: str):
        self._terms = terms  # index 0 unused
        self._ids = {t: i for i, t in enumerate(terms) if i}
        self.policy = policy

    @classmethod
    def build(cls, terms: Iterable[Term], policy: str = SORTED) -> "InstanceDictionary":
        if policy not in POLICIES:
            raise IngestError(f"unknown dictionary policy {policy!r}")
        unique = dict.fromkeys(terms)  # keeps first-seen order
        ordered = list(unique)
        if policy == SORTED:
            ordered.sort(key=Term.sort_key)
        return cls([None] + ordered, policy)  # type: ignore[list-item]

    def __len__(self) -> int:
        return len(self._terms) - 1

    def encode(self, term: Term) -> int | None:
        """Id of ``term``, or None when absent (a satisfiability signal)."""
        return self._ids.get(term)

    def decode(self, term_id: int) -> Term:
        if not 1 <= term_id < len(self._terms):
            raise RangeError(f"term id {term_id} out of range 1..{len(self) }")
        return self._terms[term_id]

    def __iter__(self):
        return iter(self._terms[1:])

    def __eq__(self, other):
        return (
            isinstance(other, InstanceDictionary)
            and self.policy == other.policy
            and self._terms == other._terms
        )


class DatasetStats:
    """Occurrence counts gathered while encoding, consumed by the planner."""

    __slots__ = (
        "n_triples",
        "n_subjects",
        "n_predicates_distinct",
        "n_objects_distinct",
        "occ_subject",
        "occ_object",
    )

    def __init__(self, n_terms: int):
        self.n_triples = 0
        self.n_subjects = 0
        self.n_predicates_distinct = 0
        self.n_objects_distinct = 0
        self.occ_subject = [0] * (n_terms + 1)
        self.occ_object = [0] * (n_terms + 1)

    def subject_count(self, term_id: int) -> int:
        return self.occ_subject[term_id] if 0 < term_id < len(self.occ_subject) else 0

    def object_count(self, term_id: int) -> int:
        return self.occ_object[term_id] if 0 < term_id < len(self.occ_object) else 0

    def __eq__(self, other):
        return isinstance(other, DatasetStats) and all(
            getattr(self, f) == getattr(other, f) for f in self.__slots__
        )
