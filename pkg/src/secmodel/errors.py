"""Exception hierarchy shared across the toolkit.

Two broad families sit under :class:`SecModelError`:

* :class:`ParseError` -- the input bytes could not be understood as the
  requested format (bad indentation, malformed XML, undeclared GraphML keys).
* :class:`ModelError` -- the input was readable but the resulting model is
  not usable (validation failures, dangling references, unsupported kinds).

The CLI maps these onto exit codes (parse -> 1, model/validation -> 2,
plain I/O errors -> 3) and each class carries a stable machine-readable
``code`` emitted in JSON error envelopes.
"""

from __future__ import annotations


class SecModelError(Exception):
    """Base class for every toolkit-specific error."""

    code = "error"


# ---------------------------------------------------------------------------
# parse family


class ParseError(SecModelError):
    """Input could not be read as the requested format."""

    code = "parse-error"


class InvalidEncodingError(ParseError):
    code = "invalid-encoding"


class EmptyDocumentError(ParseError):
    code = "empty-document"


class MixedIndentationError(ParseError):
    """Spaces found where tab indentation is required."""

    code = "mixed-indentation"


class IndentJumpError(ParseError):
    """Indentation depth increased by more than one level."""

    code = "indent-jump"


class DuplicateRootError(ParseError):
    """A second top-level line appeared after the root."""

    code = "duplicate-root"


class MalformedDocumentError(ParseError):
    """Structurally broken GraphML (no graph element, missing ids...)."""

    code = "malformed-document"


class SchemaViolationError(ParseError):
    """GraphML data does not match its declared keys."""

    code = "schema-violation"


class MalformedXmlError(ParseError):
    """Native model XML that does not parse or has the wrong root."""

    code = "malformed-xml"


class UnsupportedSchemaVersionError(ParseError):
    """Document declares a schema version this build cannot read."""

    code = "unsupported-schema-version"


# ---------------------------------------------------------------------------
# model family


class ModelError(SecModelError):
    """The model itself is unusable, regardless of surface syntax."""

    code = "model-error"


class InvalidTreeError(ModelError):
    code = "invalid-tree"


class InvalidModelError(ModelError):
    code = "invalid-model"


class ValidationFailedError(ModelError):
    """Raised when a loaded document fails semantic validation."""

    code = "validation-failed"

    def __init__(self, violations, message: str | None = None):
        self.violations = list(violations)
        if message is None:
            summary = "; ".join(v.message for v in self.violations[:3])
            extra = len(self.violations) - 3
            if extra > 0:
                summary += f" (+{extra} more)"
            message = f"validation failed: {summary}"
        super().__init__(message)


class UnknownModelKindError(ModelError):
    code = "unknown-model-kind"


class MissingRequiredKeyError(ModelError):
    code = "missing-required-key"


class CycleDetectedError(ModelError):
    code = "cycle-detected"


class MultipleRootsError(ModelError):
    code = "multiple-roots"


class NotATreeError(ModelError):
    """Edges shape something other than a single rooted tree."""

    code = "not-a-tree"


class UnknownParagonError(ModelError):
    code = "unknown-paragon"


class UnknownStepError(ModelError):
    code = "unknown-step"


class StateOutOfRangeError(ModelError):
    """A state or target value fell outside the [0, 1] interval."""

    code = "state-out-of-range"


class UnsupportedConversionError(ModelError):
    code = "unsupported-conversion"
