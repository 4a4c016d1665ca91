"""Declared table layout: feature kinds, target and id columns.

A schema is supplied as a flat YAML mapping of column name to kind spec:

    SL_NO: id
    GENDER: categorical(F, M)
    SSC_P: numeric
    WORKEX: binary(Yes, No)
    STATUS: target(Placed)
    SALARY: ignore

Kind specs: ``numeric``, ``categorical(level, ...)``, ``binary[(positive[, negative])]``,
``target[(positive)]``, ``id``, ``ignore``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .errors import SchemaError

NUMERIC = "numeric"
CATEGORICAL = "categorical"
BINARY = "binary"

_KIND_RE = re.compile(r"^\s*(\w+)\s*(?:\(\s*(.*?)\s*\))?\s*$")


def encoded_name(base: str, level: str) -> str:
    """Canonical post-encoding column name, e.g. ('Workex','Yes') -> 'WORKEX_YES'."""
    return re.sub(r"[^A-Za-z0-9]+", "_", f"{base}_{level}").upper().strip("_")


@dataclass(frozen=True)
class ColumnSpec:
    """One feature column: its name and how its values are interpreted."""

    name: str
    kind: str
    levels: tuple[str, ...] = ()      # categorical only, sorted lexicographically
    positive: str = "Yes"             # binary only
    negative: str = "No"              # binary only

    def __post_init__(self):
        if self.kind not in (NUMERIC, CATEGORICAL, BINARY):
            raise SchemaError(f"column {self.name!r}: unknown kind {self.kind!r}")
        if self.kind == CATEGORICAL:
            if not self.levels:
                raise SchemaError(f"column {self.name!r}: categorical needs levels")
            if len(set(self.levels)) != len(self.levels):
                raise SchemaError(f"column {self.name!r}: duplicate levels")
            if any(not lv for lv in self.levels):
                raise SchemaError(f"column {self.name!r}: empty level name")
            if list(self.levels) != sorted(self.levels):
                object.__setattr__(self, "levels", tuple(sorted(self.levels)))

    def encoded_columns(self) -> list[str]:
        """Post-encoding column names this feature expands to."""
        if self.kind == NUMERIC:
            return [self.name]
        if self.kind == BINARY:
            return [encoded_name(self.name, self.positive)]
        return [encoded_name(self.name, lv) for lv in self.levels]


@dataclass(frozen=True)
class FeatureSchema:
    """Ordered feature columns plus the target and id column designations."""

    columns: tuple[ColumnSpec, ...]
    target: str
    id_column: str
    target_positive: str = "1"
    ignored: tuple[str, ...] = ()

    def __post_init__(self):
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise SchemaError("duplicate feature column names")
        if not self.target or not self.id_column:
            raise SchemaError("schema must designate a target and an id column")
        if self.target == self.id_column:
            raise SchemaError("target and id column must be distinct")
        for special in (self.target, self.id_column):
            if special in names:
                raise SchemaError(f"{special!r} cannot double as a feature column")

    @property
    def feature_names(self) -> list[str]:
        return [c.name for c in self.columns]

    def column(self, name: str) -> ColumnSpec:
        for c in self.columns:
            if c.name == name:
                return c
        raise KeyError(name)

    def expected_csv_columns(self) -> set[str]:
        return {self.id_column, *self.feature_names}

    def subset(self, keep: set[str]) -> "FeatureSchema":
        """Schema restricted to the given raw feature names (order preserved)."""
        return FeatureSchema(
            columns=tuple(c for c in self.columns if c.name in keep),
            target=self.target,
            id_column=self.id_column,
            target_positive=self.target_positive,
            ignored=self.ignored,
        )


def _parse_kind(name: str, spec: str):
    m = _KIND_RE.match(str(spec))
    if not m:
        raise SchemaError(f"column {name!r}: cannot parse kind spec {spec!r}")
    kind, args_raw = m.group(1).lower(), m.group(2)
    args = [a.strip() for a in args_raw.split(",")] if args_raw else []
    return kind, args


def parse_schema(mapping: dict) -> FeatureSchema:
    """Build a FeatureSchema from a flat {column name: kind spec} mapping."""
    columns: list[ColumnSpec] = []
    ignored: list[str] = []
    target = id_column = None
    target_positive = "1"
    for name, spec in mapping.items():
        kind, args = _parse_kind(name, spec)
        if kind == "id":
            if id_column is not None:
                raise SchemaError("multiple id columns declared")
            id_column = name
        elif kind == "target":
            if target is not None:
                raise SchemaError("multiple target columns declared")
            target = name
            if args:
                target_positive = args[0]
        elif kind == "ignore":
            ignored.append(name)
        elif kind == NUMERIC:
            columns.append(ColumnSpec(name, NUMERIC))
        elif kind == BINARY:
            positive = args[0] if args else "Yes"
            negative = args[1] if len(args) > 1 else "No"
            columns.append(ColumnSpec(name, BINARY, positive=positive, negative=negative))
        elif kind == CATEGORICAL:
            columns.append(ColumnSpec(name, CATEGORICAL, levels=tuple(args)))
        else:
            raise SchemaError(f"column {name!r}: unknown kind {kind!r}")
    if target is None or id_column is None:
        raise SchemaError("schema must declare exactly one target and one id column")
    return FeatureSchema(
        columns=tuple(columns),
        target=target,
        id_column=id_column,
        target_positive=target_positive,
        ignored=tuple(ignored),
    )


def load_schema(path: str | Path) -> FeatureSchema:
    with open(path, "r", encoding="utf-8") as fh:
        mapping = yaml.safe_load(fh)
    if not isinstance(mapping, dict):
        raise SchemaError(f"{path}: expected a flat column-to-kind mapping")
    return parse_schema(mapping)
