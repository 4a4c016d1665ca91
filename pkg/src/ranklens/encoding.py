"""One-hot encoding and standard scaling from a Dataset to a numeric matrix.

The scaler is always fitted on an explicit row subset (the training rows)
and reused verbatim for any later transform, so holdout and scoring data
never leak into the statistics. Scaling uses the population standard
deviation (divide by n).
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .dataset import Dataset
from .errors import ZeroVarianceError
from .schema import BINARY, CATEGORICAL, NUMERIC, FeatureSchema, encoded_name


@dataclass(frozen=True)
class EncodedColumn:
    """One post-encoding column and how it derives from its raw feature."""

    name: str
    source: str                 # raw feature name
    kind: str                   # numeric | categorical | binary
    level: str | None = None    # dummy level (categorical) or positive level (binary)
    mean: float | None = None   # numeric only
    std: float | None = None    # numeric only

    def encode_value(self, raw):
        if self.kind == NUMERIC:
            return (float(raw) - self.mean) / self.std
        if self.kind == BINARY:
            return 1.0 if str(raw).lower() == self.level.lower() else 0.0
        return 1.0 if raw == self.level else 0.0


@dataclass(frozen=True)
class EncodedMatrix:
    """Numeric design matrix plus everything needed to undo or redo it."""

    schema: FeatureSchema
    columns: tuple[EncodedColumn, ...]
    values: np.ndarray                  # n x p, float64
    ids: tuple[str, ...]
    target: np.ndarray | None = None    # 0/1 vector or None in scoring mode

    @property
    def feature_names(self) -> list[str]:
        return [c.name for c in self.columns]

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]

    @property
    def scaler(self) -> dict[str, tuple[float, float]]:
        return {
            c.source: (c.mean, c.std) for c in self.columns if c.kind == NUMERIC
        }

    @property
    def groups(self) -> dict[str, list[str]]:
        """Raw categorical feature -> its one-hot column names (level order)."""
        out: dict[str, list[str]] = {}
        for c in self.columns:
            if c.kind == CATEGORICAL:
                out.setdefault(c.source, []).append(c.name)
        return out

    def column_index(self, name: str) -> int:
        for i, c in enumerate(self.columns):
            if c.name == name:
                return i
        raise KeyError(name)

    def unscale(self, name: str, value: float) -> float:
        """Invert standard scaling for a numeric encoded column."""
        col = self.columns[self.column_index(name)]
        if col.kind != NUMERIC:
            raise ValueError(f"{name!r} is not a scaled numeric column")
        return value * col.std + col.mean

    def restrict(self, raw_features: set[str]) -> "EncodedMatrix":
        """Matrix restricted to the columns of the given raw features."""
        keep = [i for i, c in enumerate(self.columns) if c.source in raw_features]
        return replace(
            self,
            schema=self.schema.subset(raw_features),
            columns=tuple(self.columns[i] for i in keep),
            values=self.values[:, keep],
        )


class TableEncoder(BaseEstimator, TransformerMixin):
    """Fit scaler statistics on chosen rows, then transform whole datasets.

    Parameters
    ----------
    with_scaling : bool
        Standard-scale numeric columns (on by default). One-hot and binary
        columns are never scaled.
    """

    def __init__(self, with_scaling: bool = True):
        self.with_scaling = with_scaling

    def fit(self, dataset: Dataset, rows=None) -> "TableEncoder":
        """Compute per-numeric mean/std on ``rows`` (default: all rows)."""
        if rows is None:
            rows = range(dataset.n)
        rows = sorted(rows)
        if not rows:
            raise ValueError("scaler fit-row set must be non-empty")
        columns: list[EncodedColumn] = []
        for spec in dataset.schema.columns:
            if spec.kind == NUMERIC:
                arr = np.array([dataset.rows[i][spec.name] for i in rows], dtype=float)
                mean = float(arr.mean())
                std = float(arr.std())  # population std
                if self.with_scaling and std < 1e-12:
                    raise ZeroVarianceError(spec.name)
                if not self.with_scaling:
                    mean, std = 0.0, 1.0
                columns.append(
                    EncodedColumn(spec.name, spec.name, NUMERIC, mean=mean, std=std)
                )
            elif spec.kind == BINARY:
                columns.append(
                    EncodedColumn(
                        encoded_name(spec.name, spec.positive),
                        spec.name,
                        BINARY,
                        level=spec.positive,
                    )
                )
            else:
                for lv in spec.levels:
                    columns.append(
                        EncodedColumn(
                            encoded_name(spec.name, lv), spec.name, CATEGORICAL, level=lv
                        )
                    )
        self.columns_ = tuple(columns)
        self.schema_ = dataset.schema
        return self

    def transform(self, dataset: Dataset) -> EncodedMatrix:
        if not hasattr(self, "columns_"):
            raise RuntimeError("TableEncoder must be fitted before transform")
        values = np.empty((dataset.n, len(self.columns_)), dtype=float)
        for j, col in enumerate(self.columns_):
            for i, row in enumerate(dataset.rows):
                values[i, j] = col.encode_value(row[col.source])
        target = dataset.targets() if dataset.has_target else None
        return EncodedMatrix(
            schema=dataset.schema,
            columns=self.columns_,
            values=values,
            ids=dataset.ids,
            target=target,
        )


def encode(ds: Dataset, fit_scaler_on) -> EncodedMatrix:
    """One-shot encode: scaler fitted on ``fit_scaler_on`` rows, applied to all."""
    return TableEncoder().fit(ds, rows=fit_scaler_on).transform(ds)
