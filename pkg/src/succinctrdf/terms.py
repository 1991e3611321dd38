"""RDF terms and their canonical N-Triples lexical forms.

Blank nodes are skolemized while parsing (see ingest), so a stored term is
always an IRI or a literal.  The canonical form is the round-trip contract:
``parse(canonical(t)) == t`` with bit-exact lexical content, datatypes and
language tags.
"""

from __future__ import annotations

from dataclasses import dataclass

IRI = "iri"
LITERAL = "literal"

XSD = "http://www.w3.org/2001/XMLSchema#"

_NUMERIC_DATATYPES = frozenset(
    XSD + local
    for local in (
        "integer", "decimal", "double", "float", "long", "int", "short", "byte",
        "nonNegativeInteger", "nonPositiveInteger", "negativeInteger",
        "positiveInteger", "unsignedLong", "unsignedInt", "unsignedShort",
        "unsignedByte",
    )
)

# characters that may not appear raw inside an IRIREF
_IRI_BAD = set('<>"{}|^`\\') | {chr(c) for c in range(0x21)}

_LITERAL_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r"}


@dataclass(frozen=True, slots=True)
class Term:
    kind: str
    lexical: str
    datatype: str | None = None
    lang: str | None = None

    @classmethod
    def iri(cls, value: str) -> "Term":
        return cls(IRI, value)

    @classmethod
    def literal(cls, value: str, datatype: str | None = None, lang: str | None = None) -> "Term":
        return cls(LITERAL, value, datatype, lang)

    @property
    def is_iri(self) -> bool:
        return self.kind == IRI

    @property
    def is_literal(self) -> bool:
        return self.kind == LITERAL

    @property
    def is_numeric(self) -> bool:
        return self.kind == LITERAL and self.datatype in _NUMERIC_DATATYPES

    def numeric_value(self) -> float | None:
        if not self.is_numeric:
            return None
        try:
            return float(self.lexical)
        except ValueError:
            return None

    def nt(self) -> str:
        """Canonical N-Triples token for this term."""
        if self.kind == IRI:
            return "<" + escape_iri(self.lexical) + ">"
        out = '"' + escape_literal(self.lexical) + '"'
        if self.lang:
            return out + "@" + self.lang
        if self.datatype:
            return out + "^^<" + escape_iri(self.datatype) + ">"
        return out

    def sort_key(self) -> str:
        return self.nt()

    def __str__(self) -> str:
        return self.nt()


def escape_iri(value: str) -> str:
    if not _IRI_BAD.intersection(value):
        return value
    return "".join(f"\\u{ord(c):04X}" if c in _IRI_BAD else c for c in value)


def escape_literal(value: str) -> str:
    out = []
    for c in value:
        esc = _LITERAL_ESCAPES.get(c)
        if esc is not None:
            out.append(esc)
        elif c < " " or c == "\x7f":
            out.append(f"\\u{ord(c):04X}")
        else:
            out.append(c)
    return "".join(out)
