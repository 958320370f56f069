"""Error taxonomy shared by the data model, analytics engine, CLI, and service.

Every error carries a stable machine-readable ``code`` (snake_case) that the
HTTP service echoes in error bodies, plus a suggested HTTP status so the
service layer does not need its own mapping table.
"""

from __future__ import annotations


class DbmError(Exception):
    """Base class for all package errors."""

    code = "error"
    http_status = 400

    def __init__(self, detail: str = ""):
        self.detail = detail or self.__class__.__name__
        super().__init__(self.detail)


class MissingFile(DbmError):
    code = "missing_file"


class MalformedCsv(DbmError):
    code = "malformed_csv"

    def __init__(self, file: str, row: int, column: str, detail: str):
        self.file = file
        self.row = row
        self.column = column
        super().__init__(f"{file}:{row} column {column!r}: {detail}")
        self.detail = detail


class MalformedManifest(DbmError):
    code = "malformed_manifest"


class DuplicateVideoId(DbmError):
    code = "duplicate_video_id"


class DuplicateVariableId(DbmError):
    code = "duplicate_variable_id"


class UnknownVideoId(DbmError):
    code = "unknown_video_id"
    http_status = 404


class UnknownVariableId(DbmError):
    code = "unknown_variable_id"


class UnknownCategory(DbmError):
    code = "unknown_category"


class UnknownInterval(DbmError):
    code = "unknown_interval"


class MissingBinning(DbmError):
    code = "missing_binning"


class NonPositiveSamplingRate(DbmError):
    code = "non_positive_sampling_rate"


class NonPositiveDuration(DbmError):
    code = "non_positive_duration"


class NonPositiveBins(DbmError):
    code = "non_positive_bins"


class KindMismatch(DbmError):
    code = "kind_mismatch"


class EmptySelection(DbmError):
    code = "empty_selection"


class SelectionTooLarge(DbmError):
    code = "selection_too_large"


class TooFewRows(DbmError):
    code = "too_few_rows"
    http_status = 422


class TooFewColumns(DbmError):
    code = "too_few_columns"


class TooFewValues(DbmError):
    code = "too_few_values"


class DegenerateSpread(DbmError):
    code = "degenerate_spread"


class LengthMismatch(DbmError):
    code = "length_mismatch"


class InvariantViolation(DbmError):
    code = "invariant_violation"


class InvalidSpec(DbmError):
    code = "invalid_spec"


class NotLoaded(DbmError):
    code = "not_loaded"
    http_status = 503
