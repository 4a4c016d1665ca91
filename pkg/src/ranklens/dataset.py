"""CSV ingestion, schema validation and stratified splitting."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    DegenerateClassError,
    DuplicateIdError,
    EmptyFileError,
    InvalidValueError,
    MissingColumnError,
    UnknownLevelError,
)
from .schema import BINARY, CATEGORICAL, NUMERIC, FeatureSchema


@dataclass(frozen=True)
class Dataset:
    """Validated rows under a schema. Immutable; safe to share across threads.

    Each row is a plain dict: id column (string), every feature column
    (floats for numerics, verbatim strings otherwise) and, when present,
    the target mapped to 0/1.
    """

    schema: FeatureSchema
    rows: tuple[dict, ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def ids(self) -> tuple[str, ...]:
        col = self.schema.id_column
        return tuple(r[col] for r in self.rows)

    @property
    def has_target(self) -> bool:
        return self.n > 0 and self.rows[0].get(self.schema.target) is not None

    def targets(self) -> np.ndarray:
        return np.array([r[self.schema.target] for r in self.rows], dtype=np.int8)

    def row_by_id(self, item_id: str) -> dict:
        for r in self.rows:
            if r[self.schema.id_column] == item_id:
                return r
        raise KeyError(item_id)


def _parse_cell(row_no: int, spec, raw: str):
    value = raw.strip()
    if spec.kind == NUMERIC:
        try:
            return float(value)
        except ValueError:
            raise InvalidValueError(row_no, spec.name, raw) from None
    if spec.kind == BINARY:
        lowered = value.lower()
        if lowered == spec.positive.lower():
            return spec.positive
        if lowered == spec.negative.lower():
            return spec.negative
        raise UnknownLevelError(row_no, spec.name, raw)
    if value not in spec.levels:
        raise UnknownLevelError(row_no, spec.name, raw)
    return value


def load_csv(path: str | Path, schema: FeatureSchema) -> Dataset:
    """Read an RFC-4180 CSV into a validated Dataset.

    The header must contain the id column and every schema feature column
    (order-insensitive; extra columns beyond the schema are tolerated only
    if declared ``ignore``). The target column is optional: without it the
    dataset is in scoring mode.
    """
    with open(path, "r", encoding="utf-8-sig", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise EmptyFileError(f"{path}: no header row")
        header = [h.strip() for h in reader.fieldnames]
        missing = schema.expected_csv_columns() - set(header)
        if missing:
            raise MissingColumnError(missing)
        has_target = schema.target in header

        rows: list[dict] = []
        seen_ids: set[str] = set()
        for row_no, raw in enumerate(reader, start=1):
            item_id = (raw.get(schema.id_column) or "").strip()
            if item_id in seen_ids:
                raise DuplicateIdError(item_id)
            seen_ids.add(item_id)
            parsed = {schema.id_column: item_id}
            for spec in schema.columns:
                parsed[spec.name] = _parse_cell(row_no, spec, raw[spec.name] or "")
            if has_target:
                target_raw = (raw.get(schema.target) or "").strip()
                if not target_raw:
                    raise InvalidValueError(row_no, schema.target, raw.get(schema.target))
                parsed[schema.target] = int(target_raw == schema.target_positive)
            else:
                parsed[schema.target] = None
            rows.append(parsed)

    if not rows:
        raise EmptyFileError(f"{path}: header only, no data rows")
    return Dataset(schema=schema, rows=tuple(rows))


def stratified_split(
    ds: Dataset, train_fraction: float, seed: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split row indices into (train, holdout), stratified on the target.

    Per class the train share is round-half-up(train_fraction * class count);
    the remainder goes to the holdout. Deterministic for a given seed.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train_fraction must lie in (0, 1)")
    if not ds.has_target:
        raise ValueError("stratified_split needs a dataset with targets")
    y = ds.targets()
    rng = np.random.default_rng(seed)
    train: list[int] = []
    holdout: list[int] = []
    for cls in (0, 1):
        idx = np.flatnonzero(y == cls)
        count = len(idx)
        n_train = int(math.floor(train_fraction * count + 0.5))
        if count < 2 or n_train == 0 or n_train == count:
            raise DegenerateClassError(
                f"class {cls} (count {count}) would vanish from one side of the split"
            )
        shuffled = rng.permutation(idx)
        train.extend(int(i) for i in shuffled[:n_train])
        holdout.extend(int(i) for i in shuffled[n_train:])
    return tuple(sorted(train)), tuple(sorted(holdout))


def subset(ds: Dataset, indices) -> Dataset:
    """New Dataset over the given row indices (order follows ``indices``)."""
    return Dataset(schema=ds.schema, rows=tuple(ds.rows[i] for i in indices))


def dataset_summary(ds: Dataset) -> dict:
    """Per-column statistics, level frequencies and class balance."""
    summary: dict = {"n": ds.n, "columns": {}}
    for spec in ds.schema.columns:
        values = [r[spec.name] for r in ds.rows]
        if spec.kind == NUMERIC:
            arr = np.array(values, dtype=float)
            summary["columns"][spec.name] = {
                "kind": NUMERIC,
                "mean": float(arr.mean()) if ds.n else float("nan"),
                "std": float(arr.std()) if ds.n else float("nan"),
                "min": float(arr.min()) if ds.n else float("nan"),
                "max": float(arr.max()) if ds.n else float("nan"),
            }
        else:
            levels: dict[str, int] = {}
            for v in values:
                levels[v] = levels.get(v, 0) + 1
            summary["columns"][spec.name] = {
                "kind": spec.kind,
                "levels": dict(sorted(levels.items())),
                "shares": {
                    lv: cnt / ds.n for lv, cnt in sorted(levels.items())
                } if ds.n else {},
            }
    if ds.has_target:
        y = ds.targets()
        summary["class_balance"] = {
            "positive": int((y == 1).sum()),
            "negative": int((y == 0).sum()),
        }
    return summary
