"""Exception hierarchy shared across the package."""
from __future__ import annotations


class RankLensError(Exception):
    """Base class for all errors raised by this package."""


# --- dataset / encoding ------------------------------------------------------

class SchemaError(RankLensError):
    """The schema file or schema definition itself is invalid."""


class MissingColumnError(RankLensError):
    def __init__(self, columns):
        self.columns = sorted(columns)
        super().__init__(f"missing column(s): {', '.join(self.columns)}")


class UnknownLevelError(RankLensError):
    def __init__(self, row, column, value):
        self.row = row
        self.column = column
        self.value = value
        super().__init__(f"row {row}: unknown level {value!r} for column {column!r}")


class DuplicateIdError(RankLensError):
    def __init__(self, item_id):
        self.item_id = item_id
        super().__init__(f"duplicate id {item_id!r}")


class EmptyFileError(RankLensError):
    """The CSV contains a header but no data rows (or nothing at all)."""


class InvalidValueError(RankLensError):
    def __init__(self, row, column, value):
        self.row = row
        self.column = column
        self.value = value
        super().__init__(f"row {row}: cannot parse {value!r} as a number for column {column!r}")


class ZeroVarianceError(RankLensError):
    def __init__(self, column):
        self.column = column
        super().__init__(f"numeric column {column!r} is constant on the scaler-fit rows")


class DegenerateClassError(RankLensError):
    """A target class would be missing from one side of a stratified split."""


# --- model fitting -----------------------------------------------------------

class FitError(RankLensError):
    """Base class for maximum-likelihood fitting failures."""


class DidNotConvergeError(FitError):
    def __init__(self, max_iter, grad_norm):
        self.max_iter = max_iter
        self.grad_norm = grad_norm
        super().__init__(
            f"optimizer did not converge in {max_iter} iterations "
            f"(gradient max-norm {grad_norm:.3e})"
        )


class PerfectSeparationError(FitError):
    """The likelihood is unbounded: some hyperplane separates the classes."""


class SingleClassError(FitError):
    """The target contains only one class; nothing to fit."""


class MissingFeatureError(RankLensError):
    def __init__(self, feature):
        self.feature = feature
        super().__init__(f"record is missing required feature {feature!r}")


# --- ranking / contrast / narrate --------------------------------------------

class InvalidKError(RankLensError):
    def __init__(self, k, n):
        self.k = k
        self.n = n
        super().__init__(f"k must satisfy 1 <= k <= {n}, got {k}")


class UnknownItemError(RankLensError):
    def __init__(self, item_id):
        self.item_id = item_id
        super().__init__(f"unknown item {item_id!r}")


class MissingLabelError(RankLensError):
    def __init__(self, feature):
        self.feature = feature
        super().__init__(f"no display label for feature {feature!r}")


class PolicyError(RankLensError):
    """A selection-policy string or parameter set is invalid."""
