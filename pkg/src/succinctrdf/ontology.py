"""Concept/property hierarchies and their subsumption-embedding prefix codes.

Classification turns schema triples into two transitively reduced DAGs:
one for concepts rooted at a virtual top, one for properties partitioned
into the typing predicate, datatype properties and object properties.
Subsumption cycles collapse into a single node named after the
lexicographically least member; the other members stay addressable as
aliases.

Code assignment walks each hierarchy depth-first.  A node with m direct
children (counting children attached through secondary parents) spends
ceil(log2(m+1)) bits on a local field: value 0 is reserved for the node's
own "exactly this element" entry (its *self*), siblings get 1..m in
lexicographic IRI order.  The virtual top carries no self, so its children
start at value 0.  The resulting guarantee: element codes share a prefix
exactly when they share the corresponding hierarchy ancestor, which is
what lets the store answer subsumption queries with prefix-bounded
rank/select instead of query rewriting or materialized inference.

Multiple inheritance keeps one stored code per element (under the
lexicographically least parent) and records the codes the element would
have had under its other parents; ``expand_prefix`` turns a query prefix
into the set of stored-code regions that jointly cover the DAG below it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .codes import EMPTY_CODE, PrefixCode
from .errors import OntologyError
from .vocab import (
    CLASS_DECLARATION_OBJECTS,
    OWL_DATATYPE_PROPERTY,
    OWL_THING,
    PROPERTY_DECLARATION_OBJECTS,
    RDF_TYPE,
    RDFS_DOMAIN,
    RDFS_LITERAL,
    RDFS_RANGE,
    RDFS_SUBCLASSOF,
    RDFS_SUBPROPERTYOF,
    XSD_NS,
)

CONCEPT = "concept"
PROPERTY = "property"

KIND_TYPE = "type"
KIND_DATATYPE = "datatype"
KIND_OBJECT = "object"

TYPE_CODE = PrefixCode.from_string("00")
DATATYPE_PREFIX = PrefixCode.from_string("01")
OBJECT_PREFIX = PrefixCode.from_string("10")


def _field_width(m: int) -> int:
    """Bits for a local field holding self (value 0) plus m children."""
    return m.bit_length() if m else 0


@dataclass
class Element:
    """One hierarchy entry with its code-layout bookkeeping."""

    iri: str
    code: PrefixCode = EMPTY_CODE
    width: int = 0  # local field width for the element's own children
    occurrences: int = 0  # direct instantiations in the data
    alternates: list[PrefixCode] = field(default_factory=list)
    aliases: list[str] = field(default_factory=list)

    @property
    def self_code(self) -> PrefixCode:
        """Code of the "exactly this element" entry (== code for leaves)."""
        return self.code.extend(0, self.width) if self.width else self.code

    @property
    def has_children(self) -> bool:
        return self.width > 0

    @property
    def id(self) -> int:
        """The identifier stored in the index: sentinel of the self entry."""
        return self.self_code.sentinel


class Hierarchy:
    """Rooted tree plus secondary (multiple-inheritance) edges, one per kind."""

    def __init__(self, kind: str):
        self.kind = kind
        self.children: dict[str | None, list[str]] = {None: []}  # primary edges
        self.secondary_children: dict[str, list[str]] = {}
        self.parents: dict[str, list[str | None]] = {}
        self.canonical: dict[str, str] = {}  # alias -> canonical IRI
        self.kind_of: dict[str, str] = {}  # properties only

    def nodes(self) -> list[str]:
        return sorted(iri for iri in self.children if iri is not None)

    def all_children(self, node: str | None) -> list[str]:
        both = list(self.children.get(node, []))
        if node is not None:
            both += self.secondary_children.get(node, [])
        return sorted(both)

    def ancestors(self, iri: str) -> set[str]:
        """All strict DAG ancestors (primary and secondary), canonical names."""
        iri = self.canonical.get(iri, iri)
        out: set[str] = set()
        stack = [p for p in self.parents.get(iri, []) if p is not None]
        while stack:
            p = stack.pop()
            if p in out:
                continue
            out.add(p)
            stack.extend(q for q in self.parents.get(p, []) if q is not None)
        return out


def classify(tbox, extra_concepts=(), extra_properties=()) -> tuple[Hierarchy, Hierarchy]:
    """Extract the concept and property hierarchies from schema triples.

    ``tbox`` is a sequence of (s, p, o) Term triples.  ``extra_concepts`` /
    ``extra_properties`` are IRIs observed only in the instance data (type
    objects, undeclared predicates) that must still receive codes.
    Undeclared properties default to the object-property branch.
    """
    concept_edges: list[tuple[str, str]] = []
    property_edges: list[tuple[str, str]] = []
    concept_nodes: set[str] = set(extra_concepts)
    property_nodes: set[str] = set(extra_properties)
    declared_kind: dict[str, str] = {}

    for s, p, o in tbox:
        if not s.is_iri:
            raise OntologyError(f"schema subject must be an IRI: {s}")
        pred = p.lexical
        if pred == RDFS_SUBCLASSOF:
            if not o.is_iri:
                raise OntologyError(f"subClassOf object must be an IRI: {o}")
            concept_nodes.add(s.lexical)
            if o.lexical != OWL_THING:
                concept_nodes.add(o.lexical)
                concept_edges.append((s.lexical, o.lexical))
        elif pred == RDFS_SUBPROPERTYOF:
            if not o.is_iri:
                raise OntologyError(f"subPropertyOf object must be an IRI: {o}")
            if RDF_TYPE in (s.lexical, o.lexical):
                continue  # the typing predicate sits outside the hierarchy
            property_nodes.update((s.lexical, o.lexical))
            property_edges.append((s.lexical, o.lexical))
        elif pred in (RDFS_DOMAIN, RDFS_RANGE):
            if not o.is_iri:
                raise OntologyError(f"domain/range object must be an IRI: {o}")
            property_nodes.add(s.lexical)
            if not _is_literal_class(o.lexical):
                concept_nodes.add(o.lexical)
        elif pred == RDF_TYPE and o.is_iri:
            if o.lexical in CLASS_DECLARATION_OBJECTS:
                concept_nodes.add(s.lexical)
            elif o.lexical in PROPERTY_DECLARATION_OBJECTS:
                property_nodes.add(s.lexical)
                if o.lexical == OWL_DATATYPE_PROPERTY:
                    declared_kind[s.lexical] = KIND_DATATYPE
                else:
                    declared_kind.setdefault(s.lexical, KIND_OBJECT)

    concept_nodes.discard(OWL_THING)
    property_nodes.discard(RDF_TYPE)

    concepts = _build_hierarchy(CONCEPT, concept_nodes, concept_edges)
    properties = _build_hierarchy(PROPERTY, property_nodes, property_edges)
    _resolve_property_kinds(properties, declared_kind)
    return concepts, properties


def _is_literal_class(iri: str) -> bool:
    return iri == RDFS_LITERAL or iri.startswith(XSD_NS)


def _build_hierarchy(kind: str, nodes: set[str], edges: list[tuple[str, str]]) -> Hierarchy:
    canonical, members = _collapse_cycles(nodes, edges)
    parents_of: dict[str, set[str]] = {canonical.get(n, n): set() for n in nodes}
    for sub, sup in edges:
        cs, cp = canonical.get(sub, sub), canonical.get(sup, sup)
        if cs != cp:
            parents_of[cs].add(cp)

    ancestors = _ancestor_sets(parents_of)
    h = Hierarchy(kind)
    h.canonical = {alias: canon for alias, canon in canonical.items() if alias != canon}
    for node in sorted(parents_of):
        direct = parents_of[node]
        # transitive reduction: drop parents reachable through another parent
        reduced = sorted(
            p for p in direct if not any(p in ancestors[q] for q in direct if q != p)
        )
        if not reduced:
            h.children[None].append(node)
            h.parents[node] = [None]
            h.children.setdefault(node, [])
            continue
        h.parents[node] = list(reduced)
        h.children.setdefault(node, [])
        primary = reduced[0]
        h.children.setdefault(primary, []).append(node)
        for secondary in reduced[1:]:
            h.secondary_children.setdefault(secondary, []).append(node)
    h.children[None].sort()
    return h


def _collapse_cycles(nodes: set[str], edges: list[tuple[str, str]]):
    """Map every node to the lexicographically least member of its cycle."""
    out: dict[str, list[str]] = {n: [] for n in nodes}
    for sub, sup in edges:
        out[sub].append(sup)
    order: list[str] = []
    seen: set[str] = set()
    for start in sorted(nodes):  # first DFS pass: finish order
        if start in seen:
            continue
        stack = [(start, iter(out[start]))]
        seen.add(start)
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append((nxt, iter(out[nxt])))
                    advanced = True
                    break
            if not advanced:
                order.append(node)
                stack.pop()
    rev: dict[str, list[str]] = {n: [] for n in nodes}
    for sub, sup in edges:
        rev[sup].append(sub)
    canonical: dict[str, str] = {}
    members: dict[str, list[str]] = {}
    assigned: set[str] = set()
    for start in reversed(order):  # second pass over reversed edges: SCCs
        if start in assigned:
            continue
        component = []
        stack = [start]
        assigned.add(start)
        while stack:
            node = stack.pop()
            component.append(node)
            for nxt in rev[node]:
                if nxt not in assigned:
                    assigned.add(nxt)
                    stack.append(nxt)
        canon = min(component)
        members[canon] = sorted(component)
        for n in component:
            canonical[n] = canon
    return canonical, members


def _ancestor_sets(parents_of: dict[str, set[str]]) -> dict[str, set[str]]:
    # iterative to keep deep chains off the Python stack
    memo: dict[str, set[str]] = {}
    for node in parents_of:
        pending = [node]
        while pending:
            cur = pending[-1]
            if cur in memo:
                pending.pop()
                continue
            missing = [p for p in parents_of.get(cur, ()) if p not in memo]
            if missing:
                pending.extend(missing)
                continue
            acc: set[str] = set()
            for p in parents_of.get(cur, ()):
                acc.add(p)
                acc |= memo[p]
            memo[cur] = acc
            pending.pop()
    return memo


def _resolve_property_kinds(h: Hierarchy, declared: dict[str, str]):
    """Effective kind: own declaration, else the primary parent's, else object."""
    declared = {h.canonical.get(k, k): v for k, v in declared.items()}
    for root in h.children[None]:
        stack = [(root, declared.get(root, KIND_OBJECT))]
        while stack:
            node, inherited = stack.pop()
            kind = declared.get(node, inherited)
            h.kind_of[node] = kind
            stack.extend((c, kind) for c in h.children.get(node, ()))


class Ontology:
    """Element tables, code maps, equivalences and (at build time) domains."""

    def __init__(
        self,
        concepts: dict[str, Element],
        properties: dict[str, Element],
        domains: dict[str, set[str]] | None = None,
        ranges: dict[str, set[str]] | None = None,
        concept_hierarchy: Hierarchy | None = None,
        property_hierarchy: Hierarchy | None = None,
    ):
        self.concepts = concepts
        self.properties = properties
        self.domains = domains or {}
        self.ranges = ranges or {}
        self.concept_hierarchy = concept_hierarchy
        self.property_hierarchy = property_hierarchy
        self._concept_alias = _alias_map(concepts)
        self._property_alias = _alias_map(properties)
        self.concept_by_id = {el.id: el for el in concepts.values()}
        self.property_by_id = {el.id: el for el in properties.values()}
        self._expand_cache: dict[tuple[int, str], list[PrefixCode]] = {}

    @classmethod
    def from_tbox(cls, tbox, extra_concepts=(), extra_properties=()) -> "Ontology":
        concepts_h, properties_h = classify(tbox, extra_concepts, extra_properties)
        concepts = _assign_concept_codes(concepts_h)
        properties = _assign_property_codes(properties_h)
        domains, ranges = _collect_domains(tbox, concepts_h, properties_h)
        return cls(concepts, properties, domains, ranges, concepts_h, properties_h)

    # -- lookup -----------------------------------------------------------

    def concept(self, iri: str) -> Element | None:
        return self.concepts.get(self._concept_alias.get(iri, iri))

    def property(self, iri: str) -> Element | None:
        return self.properties.get(self._property_alias.get(iri, iri))

    def property_kind(self, element: Element) -> str:
        if element.code == TYPE_CODE:
            return KIND_TYPE
        return KIND_DATATYPE if DATATYPE_PREFIX.is_prefix_of(element.code) else KIND_OBJECT

    def table(self, kind: str) -> dict[str, Element]:
        return self.concepts if kind == CONCEPT else self.properties

    def decode_id(self, kind: str, sentinel: int) -> Element | None:
        table = self.concept_by_id if kind == CONCEPT else self.property_by_id
        return table.get(sentinel)

    # -- subsumption algebra ----------------------------------------------

    def equivalents(self, code: PrefixCode) -> list[PrefixCode]:
        """Alternate codes of the element stored at ``code`` (may be empty)."""
        for table in (self.concepts, self.properties):
            for el in table.values():
                if el.code == code:
                    return list(el.alternates)
        return []

    def expand_prefix(self, prefix: PrefixCode, kind: str) -> list[PrefixCode]:
        """Stored-code regions jointly covering the DAG below ``prefix``.

        Starts from the prefix itself and keeps adding the stored code of
        any element whose alternate code falls under an already covered
        region, until a fixed point; secondary subsumption edges reachable
        only through other secondary edges are chased too.  Regions already
        inside an earlier one are skipped, so the result is prefix-disjoint.
        """
        key = (prefix.sentinel, kind)
        cached = self._expand_cache.get(key)
        if cached is not None:
            return cached
        table = self.table(kind)
        covered = [prefix]
        changed = True
        while changed:
            changed = False
            for el in table.values():
                if not el.alternates:
                    continue
                if any(q.is_prefix_of(el.code) for q in covered):
                    continue
                for alt in el.alternates:
                    if any(q.is_prefix_of(alt) for q in covered):
                        covered.append(el.code)
                        changed = True
                        break
        self._expand_cache[key] = covered
        return covered

    def subsumes(self, ancestor: Element, descendant: Element, kind: str) -> bool:
        """True when ``descendant`` is ``ancestor`` or below it in the DAG."""
        if ancestor.code.is_prefix_of(descendant.code):
            return True
        regions = self.expand_prefix(ancestor.code, kind)
        return any(q.is_prefix_of(descendant.code) for q in regions)

    def subtree_occurrences(self, element: Element, kind: str) -> int:
        """Instantiations of the element or anything below it in the DAG."""
        table = self.table(kind)
        regions = self.expand_prefix(element.code, kind)
        return sum(
            el.occurrences
            for el in table.values()
            if any(q.is_prefix_of(el.code) for q in regions)
        )

    def stored_codes(self, kind: str) -> list[tuple[PrefixCode, int]]:
        """(self-or-leaf code, sentinel) pairs feeding the wavelet code trees."""
        return [(el.self_code, el.id) for el in self.table(kind).values()]


def strip_self(element: Element) -> PrefixCode:
    """The element's covering prefix: self entry minus its zero local field."""
    return element.code


def _alias_map(table: dict[str, Element]) -> dict[str, str]:
    return {alias: el.iri for el in table.values() for alias in el.aliases}


def _assign_concept_codes(h: Hierarchy) -> dict[str, Element]:
    table: dict[str, Element] = {}
    pending: dict[str, list[PrefixCode]] = {}
    top = h.all_children(None)
    if top:
        # the virtual top has no self entry; a sole child still needs one bit
        # so that its code stays distinct from the (empty) top code
        width = max(1, (len(top) - 1).bit_length())
        for value, iri in enumerate(top):
            _assign_subtree(h, table, pending, iri, EMPTY_CODE.extend(value, width))
    _attach_alternates(table, pending)
    return table


def _assign_property_codes(h: Hierarchy) -> dict[str, Element]:
    table: dict[str, Element] = {RDF_TYPE: Element(RDF_TYPE, TYPE_CODE)}
    pending: dict[str, list[PrefixCode]] = {}
    roots = h.all_children(None)
    for class_prefix, kind in ((DATATYPE_PREFIX, KIND_DATATYPE), (OBJECT_PREFIX, KIND_OBJECT)):
        class_roots = [r for r in roots if h.kind_of.get(r, KIND_OBJECT) == kind]
        # the class root is virtual but still reserves local value 0
        width = _field_width(len(class_roots))
        for value, iri in enumerate(class_roots, start=1):
            _assign_subtree(h, table, pending, iri, class_prefix.extend(value, width))
    _attach_alternates(table, pending)
    return table


def _assign_subtree(
    h: Hierarchy,
    table: dict[str, Element],
    pending: dict[str, list[PrefixCode]],
    iri: str,
    code: PrefixCode,
):
    children = h.all_children(iri)
    primary = set(h.children.get(iri, ()))
    el = Element(iri, code, _field_width(len(children)))
    el.aliases = sorted(a for a, c in h.canonical.items() if c == iri)
    table[iri] = el
    for value, child in enumerate(children, start=1):
        child_code = code.extend(value, el.width)
        if child in primary:
            _assign_subtree(h, table, pending, child, child_code)
        else:
            pending.setdefault(child, []).append(child_code)


def _attach_alternates(table: dict[str, Element], pending: dict[str, list[PrefixCode]]):
    for iri, codes in pending.items():
        table[iri].alternates = sorted(codes, key=lambda c: c.sentinel)


def _collect_domains(tbox, concepts_h: Hierarchy, properties_h: Hierarchy):
    domains: dict[str, set[str]] = {}
    ranges: dict[str, set[str]] = {}
    for s, p, o in tbox:
        if p.lexical == RDFS_DOMAIN:
            prop = properties_h.canonical.get(s.lexical, s.lexical)
            domains.setdefault(prop, set()).add(
                concepts_h.canonical.get(o.lexical, o.lexical)
            )
        elif p.lexical == RDFS_RANGE and not _is_literal_class(o.lexical):
            prop = properties_h.canonical.get(s.lexical, s.lexical)
            ranges.setdefault(prop, set()).add(
                concepts_h.canonical.get(o.lexical, o.lexical)
            )
    return domains, ranges
