from __future__ import annotations

import math

import pytest
from hypothesis import given, settings, strategies as st

from ranklens.dataset import (
    Dataset,
    dataset_summary,
    load_csv,
    stratified_split,
    subset,
)
from ranklens.errors import (
    DegenerateClassError,
    DuplicateIdError,
    EmptyFileError,
    InvalidValueError,
    MissingColumnError,
    UnknownLevelError,
)
from ranklens.schema import parse_schema

TOY_SCHEMA = parse_schema(
    {
        "ID": "id",
        "GRADE": "numeric",
        "HSC_S": "categorical(Art, Com, Sci)",
        "WORKEX": "binary(Yes, No)",
        "STATUS": "target(Placed)",
    }
)


def write_csv(tmp_path, text, name="toy.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_bundled_dataset_counts(campus_ds):
    # published aggregates: 215 records, 148 placed vs 67 not placed
    assert campus_ds.n == 215
    y = campus_ds.targets()
    assert int(y.sum()) == 148
    assert int((y == 0).sum()) == 67


def test_header_only_is_empty_file(tmp_path):
    path = write_csv(tmp_path, "ID,GRADE,HSC_S,WORKEX,STATUS\n")
    with pytest.raises(EmptyFileError):
        load_csv(path, TOY_SCHEMA)


def test_unknown_level_rejected(tmp_path):
    path = write_csv(
        tmp_path, "ID,GRADE,HSC_S,WORKEX,STATUS\n1,50,Music,Yes,Placed\n"
    )
    with pytest.raises(UnknownLevelError) as err:
        load_csv(path, TOY_SCHEMA)
    assert err.value.column == "HSC_S"
    assert err.value.value == "Music"


def test_missing_column(tmp_path):
    path = write_csv(tmp_path, "ID,GRADE,WORKEX,STATUS\n1,50,Yes,Placed\n")
    with pytest.raises(MissingColumnError):
        load_csv(path, TOY_SCHEMA)


def test_duplicate_id(tmp_path):
    path = write_csv(
        tmp_path,
        "ID,GRADE,HSC_S,WORKEX,STATUS\n1,50,Art,Yes,Placed\n1,60,Sci,No,Placed\n",
    )
    with pytest.raises(DuplicateIdError):
        load_csv(path, TOY_SCHEMA)


def test_bad_numeric_cell(tmp_path):
    path = write_csv(
        tmp_path, "ID,GRADE,HSC_S,WORKEX,STATUS\n1,high,Art,Yes,Placed\n"
    )
    with pytest.raises(InvalidValueError):
        load_csv(path, TOY_SCHEMA)


def test_header_order_insensitive_and_scoring_mode(tmp_path):
    path = write_csv(tmp_path, "WORKEX,ID,HSC_S,GRADE\nYes,9,Sci,71.5\n")
    ds = load_csv(path, TOY_SCHEMA)
    assert not ds.has_target
    assert ds.rows[0]["GRADE"] == 71.5
    assert ds.rows[0]["WORKEX"] == "Yes"


def test_binary_values_normalized_case_insensitively(tmp_path):
    path = write_csv(
        tmp_path, "ID,GRADE,HSC_S,WORKEX,STATUS\n1,50,Art,YES,Placed\n"
    )
    ds = load_csv(path, TOY_SCHEMA)
    assert ds.rows[0]["WORKEX"] == "Yes"


def _toy_dataset(n_pos, n_neg):
    rows = []
    for i in range(n_pos + n_neg):
        rows.append(
            {
                "ID": str(i),
                "GRADE": float(i),
                "HSC_S": "Art",
                "WORKEX": "No",
                "STATUS": 1 if i < n_pos else 0,
            }
        )
    return Dataset(schema=TOY_SCHEMA, rows=tuple(rows))


def test_split_counts_round_half_up_per_class(campus_ds):
    train, holdout = stratified_split(campus_ds, 0.65, seed=3)
    y = campus_ds.targets()
    train_pos = sum(1 for i in train if y[i] == 1)
    train_neg = sum(1 for i in train if y[i] == 0)
    # round-half-up oracle, computed from the published class sizes
    assert train_pos == math.floor(0.65 * 148 + 0.5) == 96
    assert train_neg == math.floor(0.65 * 67 + 0.5) == 44
    assert len(holdout) == 215 - 96 - 44


def test_split_deterministic_given_seed(campus_ds):
    a = stratified_split(campus_ds, 0.65, seed=11)
    b = stratified_split(campus_ds, 0.65, seed=11)
    c = stratified_split(campus_ds, 0.65, seed=12)
    assert a == b
    assert a != c


def test_split_degenerate_single_row_class():
    ds = _toy_dataset(n_pos=1, n_neg=10)
    with pytest.raises(DegenerateClassError):
        stratified_split(ds, 0.65, seed=0)


def test_split_degenerate_when_holdout_would_be_empty():
    ds = _toy_dataset(n_pos=2, n_neg=10)
    with pytest.raises(DegenerateClassError):
        stratified_split(ds, 0.95, seed=0)


@settings(max_examples=50, deadline=None)
@given(
    n_pos=st.integers(4, 40),
    n_neg=st.integers(4, 40),
    fraction=st.floats(0.2, 0.8),
    seed=st.integers(0, 2**31),
)
def test_split_is_a_partition(n_pos, n_neg, fraction, seed):
    ds = _toy_dataset(n_pos, n_neg)
    train, holdout = stratified_split(ds, fraction, seed)
    assert set(train) | set(holdout) == set(range(ds.n))
    assert set(train) & set(holdout) == set()


def test_summary_class_balance_and_gender_share(campus_ds):
    summary = dataset_summary(campus_ds)
    assert summary["class_balance"] == {"positive": 148, "negative": 67}
    male_share = summary["columns"]["GENDER"]["shares"]["M"]
    assert abs(male_share - 0.65) < 0.01


def test_summary_empty_feature_schema():
    schema = parse_schema({"ID": "id", "STATUS": "target(1)"})
    ds = Dataset(schema=schema, rows=({"ID": "1", "STATUS": 1}, {"ID": "2", "STATUS": 0}))
    summary = dataset_summary(ds)
    assert summary["columns"] == {}
    assert summary["n"] == 2


def test_subset_preserves_order_and_rows(campus_ds):
    sub = subset(campus_ds, [5, 2, 9])
    assert sub.n == 3
    assert sub.ids == (campus_ds.ids[5], campus_ds.ids[2], campus_ds.ids[9])
