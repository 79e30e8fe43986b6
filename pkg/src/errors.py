"""
Exception hierarchy for the toolkit.

Checks report failures through reports with witnesses; these exceptions are
raised by constructors and by operations whose preconditions do not hold.
"""

from typing import Any, Optional


class HomLieError(Exception):
    """Base class for every error raised by the toolkit."""


class DimensionMismatchError(HomLieError, ValueError):
    """Operands have incompatible shapes or ambient dimensions."""


class NotAnIdealError(HomLieError, ValueError):
    """A subspace used as an ideal is not closed under the twist or bracket."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class AxiomError(HomLieError, ValueError):
    """A construction-time invariant does not hold."""

    def __init__(self, message: str, check: Any = None):
        super().__init__(message)
        self.check = check


class StructureError(HomLieError):
    """A structure-theory precondition does not hold."""


class HypothesisError(HomLieError):
    """The double-extension data fails one of its hypotheses."""

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


class ParseError(HomLieError, ValueError):
    """A serialized document could not be read.

    ``code`` is a stable machine-readable identifier and ``location`` the
    JSON path of the offending value.
    """

    def __init__(self, code: str, message: str, location: Optional[str] = None):
        super().__init__(message)
        self.code = code
        self.location = location

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self), "location": self.location}
