"""
Exception hierarchy for evoalg.

Every error raised on purpose by the library derives from EvoAlgError. The
command line maps these classes onto its exit codes, so new failure modes
should subclass the closest existing class rather than raising bare
exceptions.
"""


class EvoAlgError(Exception):
    """Base class for all library errors."""


class ParseError(EvoAlgError, ValueError):
    """Malformed scalar, matrix, pattern or manifest text."""


class UnsupportedFieldError(EvoAlgError, ValueError):
    """The requested base field is unknown or outside the supported range."""


class NotPerfectError(EvoAlgError, ValueError):
    """An operation that needs a perfect algebra received a singular one."""


class CorpusError(EvoAlgError):
    """The table corpus is missing or cannot be read."""


class SpecError(EvoAlgError, ValueError):
    """A classification case specification is inconsistent."""


class SamplingError(EvoAlgError):
    """Random instantiation kept producing singular matrices."""
