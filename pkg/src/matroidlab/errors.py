"""Exception types shared across the library."""


class MatroidlabError(Exception):
    """Base class for all library errors."""


class NotPrimePower(MatroidlabError):
    pass


class NotASubfield(MatroidlabError):
    pass


class SizeLimit(MatroidlabError):
    pass


class OutOfRange(MatroidlabError):
    pass


class OverlapError(MatroidlabError):
    pass


class RankZero(MatroidlabError):
    pass


class RankTooSmall(MatroidlabError):
    pass


class MalformedCertificate(MatroidlabError):
    pass


class BudgetExceeded(MatroidlabError):
    pass


class TargetTooLarge(MatroidlabError):
    pass


class PreconditionFailed(MatroidlabError):
    pass


class NoSuchFlat(MatroidlabError):
    pass


class NoFreeElement(MatroidlabError):
    pass


class InternalContradiction(MatroidlabError):
    """A case the surrounding argument rules out actually occurred; always a bug."""


class MatrixFormatError(MatroidlabError):
    """Positioned parse error for the matrix text format."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ConfigError(MatroidlabError):
    pass
