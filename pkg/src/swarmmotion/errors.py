"""Error types shared across the package.

Two failure families are distinguished because the command line maps
them to different exit codes: problems with the input description
(SpecError, exit 2) and problems arising during analysis or numerics
(AnalysisError, exit 1).
"""


class SpecError(ValueError):
    """The system description is malformed or violates a precondition."""


class AnalysisError(RuntimeError):
    """A computation could not be completed or failed its own checks."""
