"""Parsing, schema split, type materialization, and triple encoding.

The pipeline is deliberately strict and deterministic: N-Triples only,
parse errors carry line numbers, blank node labels are skolemized to
stable IRIs, and the encoded output is sorted by (subject id, predicate
code, object) so the store builder can lay the two-layer index down in a
single pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .codes import PrefixCode
from .dictionary import FIRST_SEEN, SORTED, InstanceDictionary
from .errors import IngestError, ParseError
from .ontology import CONCEPT, Element, Ontology
from .terms import Term
from .vocab import (
    CLASS_DECLARATION_OBJECTS,
    OWL_THING,
    PROPERTY_DECLARATION_OBJECTS,
    RDF_TYPE,
    SCHEMA_PREDICATES,
    SKOLEM_NS,
)

Triple = tuple[Term, Term, Term]


@dataclass(frozen=True, slots=True)
class EncodedTriple:
    """Store-ready triple: ids for instances, self/leaf codes for hierarchy terms.

    ``o`` is a PrefixCode exactly when ``p`` is the typing predicate,
    an instance id otherwise.
    """

    s: int
    p: PrefixCode
    o: int | PrefixCode

    @property
    def o_is_concept(self) -> bool:
        return isinstance(self.o, PrefixCode)

    def sort_key(self) -> tuple[int, int, int]:
        o = self.o
        return (self.s, self.p.sentinel, o.sentinel if isinstance(o, PrefixCode) else o)


# ---------------------------------------------------------------------------
# N-Triples parsing

_ECHAR = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


class _LineScanner:
    def __init__(self, text: str, line_no: int):
        self.text = text
        self.pos = 0
        self.line_no = line_no

    def error(self, message: str) -> ParseError:
        return ParseError(message, line=self.line_no, column=self.pos + 1)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def unescape_until(self, terminator: str, allow_echar: bool) -> str:
        out = []
        text = self.text
        while True:
            if self.pos >= len(text):
                raise self.error(f"unterminated token, expected {terminator!r}")
            c = text[self.pos]
            if c == terminator:
                self.pos += 1
                return "".join(out)
            if c == "\\":
                self.pos += 1
                esc = text[self.pos : self.pos + 1]
                if esc == "u" or esc == "U":
                    width = 4 if esc == "u" else 8
                    hexs = text[self.pos + 1 : self.pos + 1 + width]
                    if len(hexs) != width:
                        raise self.error("truncated \\u escape")
                    try:
                        out.append(chr(int(hexs, 16)))
                    except ValueError:
                        raise self.error(f"bad \\u escape {hexs!r}") from None
                    self.pos += 1 + width
                elif allow_echar and esc in _ECHAR:
                    out.append(_ECHAR[esc])
                    self.pos += 1
                else:
                    raise self.error(f"illegal escape \\{esc}")
            else:
                out.append(c)
                self.pos += 1

    def read_term(self, skolem: dict[str, str], position: str) -> Term:
        self.skip_ws()
        c = self.peek()
        if c == "<":
            self.pos += 1
            return Term.iri(self.unescape_until(">", allow_echar=False))
        if c == "_":
            if self.text[self.pos : self.pos + 2] != "_:":
                raise self.error("expected blank node label '_:'")
            self.pos += 2
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos] not in " \t":
                self.pos += 1
            label = self.text[start : self.pos]
            if not label or label.endswith("."):
                raise self.error("empty or malformed blank node label")
            return Term.iri(skolem.setdefault(label, SKOLEM_NS + label))
        if c == '"':
            if position != "object":
                raise self.error(f"literal not allowed in {position} position")
            self.pos += 1
            lexical = self.unescape_until('"', allow_echar=True)
            if self.peek() == "@":
                self.pos += 1
                start = self.pos
                while self.pos < len(self.text) and (
                    self.text[self.pos].isalnum() or self.text[self.pos] == "-"
                ):
                    self.pos += 1
                tag = self.text[start : self.pos]
                if not tag:
                    raise self.error("empty language tag")
                return Term.literal(lexical, lang=tag)
            if self.text[self.pos : self.pos + 2] == "^^":
                self.pos += 2
                self.expect("<")
                return Term.literal(lexical, datatype=self.unescape_until(">", False))
            return Term.literal(lexical)
        raise self.error(f"unexpected character {c!r}")


def parse_ntriples(source: str | bytes | Iterable[str]) -> list[Triple]:
    """Strict line-based N-Triples parser; blank nodes become skolem IRIs.

    The skolem mapping is per call, so equal labels inside one document map
    to the same IRI.
    """
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    lines = source.splitlines() if isinstance(source, str) else source
    skolem: dict[str, str] = {}
    triples: list[Triple] = []
    for line_no, raw in enumerate(lines, start=1):
        sc = _LineScanner(raw.rstrip("\n"), line_no)
        sc.skip_ws()
        if sc.at_end() or sc.peek() == "#":
            continue
        s = sc.read_term(skolem, "subject")
        p = sc.read_term(skolem, "predicate")
        if not p.is_iri or p.lexical.startswith(SKOLEM_NS):
            raise sc.error("predicate must be an IRI")
        o = sc.read_term(skolem, "object")
        sc.skip_ws()
        sc.expect(".")
        sc.skip_ws()
        if not sc.at_end() and sc.peek() != "#":
            raise sc.error("trailing content after '.'")
        triples.append((s, p, o))
    return triples


# ---------------------------------------------------------------------------
# schema / instance split

def split_tbox_abox(triples: Iterable[Triple]) -> tuple[list[Triple], list[Triple]]:
    """Schema triples (subsumption, domain/range, declarations) vs the rest."""
    tbox: list[Triple] = []
    abox: list[Triple] = []
    for t in triples:
        _, p, o = t
        if p.lexical in SCHEMA_PREDICATES:
            tbox.append(t)
        elif (
            p.lexical == RDF_TYPE
            and o.is_iri
            and o.lexical in (CLASS_DECLARATION_OBJECTS | PROPERTY_DECLARATION_OBJECTS)
        ):
            tbox.append(t)
        else:
            abox.append(t)
    return tbox, abox


# ---------------------------------------------------------------------------
# domain / range materialization

@dataclass
class MaterializationReport:
    added: list[Triple] = field(default_factory=list)
    removed: list[Triple] = field(default_factory=list)


def materialize_domain_range(
    abox: list[Triple],
    ontology: Ontology,
    remove_superseded: bool = True,
) -> tuple[list[Triple], MaterializationReport]:
    """Add the deepest implied rdf:type triples for domain/range declarations.

    For every triple (s, p, o) and every concept D declared as domain of p
    or of one of p's superproperties: if s already carries a type at or
    below D, nothing changes; a strictly shallower type is replaced by D
    (the removal is what ``remove_superseded`` controls); an incomparable
    type stays and D is added alongside.  Ranges work the same on resource
    objects.  The result is the set of minimal types per resource, which
    makes the pass order-independent and idempotent.
    """
    if ontology.property_hierarchy is None:
        raise IngestError("materialization needs an ontology built from a TBox")
    type_term = Term.iri(RDF_TYPE)
    abox = _dedup(abox)

    existing: dict[Term, set[str]] = {}
    for s, p, o in abox:
        if p.lexical == RDF_TYPE and o.is_iri and o.lexical != OWL_THING:
            el = ontology.concept(o.lexical)
            if el is None:
                raise IngestError(f"typed against unknown concept {o.lexical}")
            existing.setdefault(s, set()).add(el.iri)

    obligations: dict[Term, set[str]] = {}
    for s, p, o in abox:
        if p.lexical == RDF_TYPE:
            continue
        prop = ontology.property(p.lexical)
        if prop is None:
            continue
        for d in _effective_constraints(ontology, prop.iri, ontology.domains):
            obligations.setdefault(s, set()).add(d)
        if o.is_iri:
            for d in _effective_constraints(ontology, prop.iri, ontology.ranges):
                obligations.setdefault(o, set()).add(d)

    report = MaterializationReport()
    final_types: dict[Term, list[str]] = {}
    for resource in sorted(set(existing) | set(obligations), key=Term.sort_key):
        had = existing.get(resource, set())
        keep = _minimal_concepts(ontology, had | obligations.get(resource, set()))
        if not remove_superseded:
            keep = sorted(set(keep) | had)
        final_types[resource] = keep
        for iri in keep:
            if iri not in had:
                report.added.append((resource, type_term, Term.iri(iri)))
        for iri in sorted(had - set(keep)):
            report.removed.append((resource, type_term, Term.iri(iri)))

    # keep the input's relative order (the first_seen policy depends on it)
    # and append the inferred typings at the end
    out: list[Triple] = []
    emitted: set[tuple[Term, str]] = set()
    for t in abox:
        s, p, o = t
        if p.lexical == RDF_TYPE and o.is_iri and o.lexical != OWL_THING:
            canon = ontology.concept(o.lexical).iri
            if canon in final_types.get(s, ()) and (s, canon) not in emitted:
                out.append(t)
                emitted.add((s, canon))
        else:
            out.append(t)
    out.extend(report.added)
    return out, report


def _effective_constraints(ontology: Ontology, prop_iri: str, table: dict) -> set[str]:
    """Constraint targets declared on the property or any of its ancestors."""
    out = set(table.get(prop_iri, ()))
    for anc in ontology.property_hierarchy.ancestors(prop_iri):
        out |= table.get(anc, ())
    canon = set()
    for iri in out:
        el = ontology.concept(iri)
        if el is None:
            raise IngestError(f"domain/range names unknown concept {iri}")
        canon.add(el.iri)
    return canon


def _minimal_concepts(ontology: Ontology, iris: set[str]) -> list[str]:
    """Drop every concept that strictly subsumes another one in the set."""
    elements = [ontology.concept(i) for i in sorted(iris)]
    keep = []
    for el in elements:
        if any(
            other is not el and ontology.subsumes(el, other, CONCEPT)
            for other in elements
        ):
            continue
        keep.append(el.iri)
    return keep


# ---------------------------------------------------------------------------
# encoding

def collect_instance_terms(abox: Iterable[Triple]) -> list[Term]:
    """Subjects and non-typing objects, in first-occurrence order."""
    seen: dict[Term, None] = {}
    for s, p, o in abox:
        seen.setdefault(s)
        if p.lexical != RDF_TYPE:
            seen.setdefault(o)
    return list(seen)


def encode_and_sort(
    abox: Iterable[Triple],
    dictionary: InstanceDictionary,
    ontology: Ontology,
) -> list[EncodedTriple]:
    """Deduplicate, encode, and sort triples for the store builder.

    Typing triples always sort first inside a subject block because the
    typing predicate owns the numerically least code.
    """
    encoded: set[EncodedTriple] = set()
    for s, p, o in abox:
        sid = dictionary.encode(s)
        if sid is None:
            raise IngestError(f"subject missing from the dictionary: {s}")
        if p.lexical == RDF_TYPE:
            if not o.is_iri:
                raise IngestError(f"literal used as a type: {o}")
            if o.lexical == OWL_THING:
                continue  # carries no information: everything is below the top
            concept = ontology.concept(o.lexical)
            if concept is None:
                raise IngestError(f"unknown concept {o.lexical}")
            encoded.add(EncodedTriple(sid, ontology.properties[RDF_TYPE].code, concept.self_code))
        else:
            prop = ontology.property(p.lexical)
            if prop is None:
                raise IngestError(f"unknown property {p.lexical}")
            oid = dictionary.encode(o)
            if oid is None:
                raise IngestError(f"object missing from the dictionary: {o}")
            encoded.add(EncodedTriple(sid, prop.self_code, oid))
    return sorted(encoded, key=EncodedTriple.sort_key)


# ---------------------------------------------------------------------------
# the whole preparation pipeline

@dataclass
class PreparedDataset:
    tbox: list[Triple]
    abox: list[Triple]
    ontology: Ontology
    dictionary: InstanceDictionary
    encoded: list[EncodedTriple]
    report: MaterializationReport


def prepare(
    triples: Iterable[Triple],
    dict_policy: str = SORTED,
    materialize: bool = True,
    remove_superseded: bool = True,
) -> PreparedDataset:
    """Run split, classification, materialization, and encoding in order."""
    if dict_policy not in (SORTED, FIRST_SEEN):
        raise IngestError(f"unknown dictionary policy {dict_policy!r}")
    tbox, abox = split_tbox_abox(triples)
    extra_concepts = sorted(
        {o.lexical for _, p, o in abox if p.lexical == RDF_TYPE and o.is_iri and o.lexical != OWL_THING}
    )
    extra_properties = sorted({p.lexical for _, p, _ in abox if p.lexical != RDF_TYPE})
    ontology = Ontology.from_tbox(tbox, extra_concepts, extra_properties)
    report = MaterializationReport()
    if materialize:
        abox, report = materialize_domain_range(abox, ontology, remove_superseded)
    else:
        abox = _dedup(abox)
    dictionary = InstanceDictionary.build(collect_instance_terms(abox), dict_policy)
    encoded = encode_and_sort(abox, dictionary, ontology)
    _count_occurrences(encoded, ontology)
    return PreparedDataset(tbox, abox, ontology, dictionary, encoded, report)


def _dedup(triples: Iterable[Triple]) -> list[Triple]:
    return list(dict.fromkeys(triples))


def _count_occurrences(encoded: list[EncodedTriple], ontology: Ontology):
    for t in encoded:
        if t.o_is_concept:
            el = ontology.concept_by_id.get(t.o.sentinel)
            if el is not None:
                el.occurrences += 1
        prop = ontology.property_by_id.get(t.p.sentinel)
        if prop is not None:
            prop.occurrences += 1
