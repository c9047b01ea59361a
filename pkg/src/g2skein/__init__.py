"""Array-encoded skeins in a genus-2 handlebody, resolved to basis polynomials.

The public surface re-exports the data model, the pipeline entry point and
the error types; everything else is reachable through the submodules.
"""

from .errors import (
    InternalInvariantError,
    SkeinError,
    SkeinFormatError,
    SkeinValidationError,
    StepLimitExceeded,
)
from .laurent import BasisMonomial, LaurentPoly, SkeinPolynomial
from .diagram import (
    Component,
    Expression,
    PassEntry,
    SelfPass,
    SkeinDiagram,
    StrandPass,
    Term,
    canonical_form,
    parse_diagram,
    serialize_diagram,
    validate,
)
from .engine import dedup, run_pipeline

__version__ = "0.1.0"

__all__ = [
    "BasisMonomial",
    "Component",
    "Expression",
    "InternalInvariantError",
    "LaurentPoly",
    "PassEntry",
    "SelfPass",
    "SkeinDiagram",
    "SkeinError",
    "SkeinFormatError",
    "SkeinPolynomial",
    "SkeinValidationError",
    "StepLimitExceeded",
    "StrandPass",
    "Term",
    "canonical_form",
    "dedup",
    "parse_diagram",
    "run_pipeline",
    "serialize_diagram",
    "validate",
    "__version__",
]
