"""Exception hierarchy shared by the parser, the tableau engine and the CLI."""


class PresupTabError(Exception):
    """Base class for every error raised by this package."""


class ParseError(PresupTabError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class AnnotationError(ParseError):
    """An atom received two different annotations, or the merged map is invalid."""


class CorpusFormatError(PresupTabError):
    def __init__(self, message, label=None, line=None):
        self.label = label
        self.line = line
        where = []
        if label:
            where.append(f"entry {label!r}")
        if line is not None:
            where.append(f"line {line}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class InvalidPresupMap(PresupTabError):
    def __init__(self, violations):
        self.violations = list(violations)
        text = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid presupposition map: {text}")


class ResourceError(PresupTabError):
    """An atom or branch cap was exceeded."""
