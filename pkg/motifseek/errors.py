"""Exceptions raised by motifseek.

Expected outcomes of the algorithm (an unknown boundary, an empty region,
a failed recovery) are values, not exceptions.  Everything here signals a
broken input or configuration.
"""


class MotifSeekError(Exception):
    """Base class for every motifseek error."""


class InvalidConfigurationError(MotifSeekError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidInstanceError(MotifSeekError, ValueError):
    pass


class InvalidArgumentError(MotifSeekError, ValueError):
    pass


class EstimationFailureError(MotifSeekError):
    pass


class OracleRefusalError(MotifSeekError):
    pass


class FastaParseError(MotifSeekError, ValueError):
    def __init__(
        self,
        message: str,
        path: str = "",
        line: int | None = None,
        record_id: str | None = None,
        offset: int | None = None,
    ):
        self.path = path
        self.line = line
        self.record_id = record_id
        self.offset = offset
        where = []
        if path:
            where.append(path)
        if line is not None:
            where.append(f"line {line}")
        if record_id is not None:
            where.append(f"record '{record_id}'")
        if offset is not None:
            where.append(f"offset {offset}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
