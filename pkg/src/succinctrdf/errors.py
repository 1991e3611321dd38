"""Exception hierarchy shared by all modules."""


class Error(Exception):
    """Base class for every error raised by this package."""


class RangeError(Error):
    """A position argument lies outside the addressed structure."""


class NotFoundError(Error):
    """A select ordinal exceeds the number of matching occurrences."""


class EncodingError(Error):
    """A prefix code or symbol does not belong to the expected code tree."""


class ParseError(Error):
    """Malformed input text (N-Triples line or query)."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line})" if column is None else f" (line {line}, col {column})"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class IngestError(Error):
    """The ingest pipeline received data it cannot encode."""


class OntologyError(Error):
    """Malformed schema statements."""


class BuildError(Error):
    """Store construction preconditions violated (e.g. unsorted input)."""


class QueryError(Error):
    """Ill-typed pattern or invalid query parameter."""


class UnsupportedError(QueryError):
    """A syntactically valid construct outside the supported subset."""


class FormatError(Error):
    """Corrupt or incompatible serialized container."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset
