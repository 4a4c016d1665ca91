from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sklearn.base import clone

from ranklens.dataset import Dataset
from ranklens.encoding import TableEncoder, encode
from ranklens.errors import ZeroVarianceError
from ranklens.schema import parse_schema

SCHEMA = parse_schema(
    {
        "ID": "id",
        "X": "numeric",
        "HSC_S": "categorical(Art, Com, Sci)",
        "WORKEX": "binary(Yes, No)",
        "STATUS": "target(1)",
    }
)


def make_ds(xs, tracks=None, workex=None, targets=None):
    n = len(xs)
    tracks = tracks or ["Art"] * n
    workex = workex or ["No"] * n
    rows = tuple(
        {
            "ID": str(i),
            "X": float(xs[i]),
            "HSC_S": tracks[i],
            "WORKEX": workex[i],
            "STATUS": None if targets is None else targets[i],
        }
        for i in range(n)
    )
    return Dataset(schema=SCHEMA, rows=rows)


def test_workex_yes_maps_to_one():
    ds = make_ds([1, 2], workex=["Yes", "No"])
    m = encode(ds, fit_scaler_on=[0, 1])
    j = m.column_index("WORKEX_YES")
    assert m.values[:, j].tolist() == [1.0, 0.0]


def test_standard_scaling_population_std():
    # hand oracle: mu=2, population sigma = sqrt(2/3); (x - mu)/sigma
    ds = make_ds([1.0, 2.0, 3.0])
    m = encode(ds, fit_scaler_on=[0, 1, 2])
    sigma = math.sqrt(2.0 / 3.0)
    expected = [(x - 2.0) / sigma for x in (1.0, 2.0, 3.0)]
    got = m.values[:, m.column_index("X")]
    assert np.allclose(got, expected, atol=1e-12)
    assert got[0] == pytest.approx(-1.2247, abs=1e-4)
    assert got[2] == pytest.approx(1.2247, abs=1e-4)


def test_zero_variance_on_fit_rows():
    ds = make_ds([5.0, 5.0, 7.0])
    with pytest.raises(ZeroVarianceError):
        encode(ds, fit_scaler_on=[0, 1])  # constant on the fit subset
    encode(ds, fit_scaler_on=[0, 2])  # fine with spread


def test_scaler_statistics_come_from_fit_rows_only():
    ds = make_ds([0.0, 10.0, 100.0, 200.0])
    m = encode(ds, fit_scaler_on=[0, 1])  # mean 5, pop std 5
    got = m.values[:, m.column_index("X")]
    assert np.allclose(got, [(x - 5.0) / 5.0 for x in (0.0, 10.0, 100.0, 200.0)])


def test_one_hot_block_rows_sum_to_one(campus_ds):
    m = encode(campus_ds, fit_scaler_on=range(campus_ds.n))
    for base, cols in m.groups.items():
        idx = [m.column_index(c) for c in cols]
        sums = m.values[:, idx].sum(axis=1)
        assert np.all(sums == 1.0), base


def test_scaled_columns_standardized_on_fit_rows(campus_ds):
    fit_rows = list(range(0, campus_ds.n, 2))
    encoder = TableEncoder().fit(campus_ds, rows=fit_rows)
    from ranklens.dataset import subset

    m = encoder.transform(subset(campus_ds, fit_rows))
    for col in m.columns:
        if col.kind == "numeric":
            j = m.column_index(col.name)
            assert abs(m.values[:, j].mean()) < 1e-9
            assert abs(m.values[:, j].std() - 1.0) < 1e-9


@settings(max_examples=100, deadline=None)
@given(
    values=st.lists(
        st.floats(-1e6, 1e6, allow_nan=False), min_size=2, max_size=30
    ).filter(lambda v: max(v) - min(v) > 1e-6)
)
def test_unscale_round_trip(values):
    ds = make_ds(values)
    m = encode(ds, fit_scaler_on=range(len(values)))
    j = m.column_index("X")
    for i, raw in enumerate(values):
        assert m.unscale("X", m.values[i, j]) == pytest.approx(raw, abs=1e-9 * max(1, abs(raw)))


def test_encoded_names_follow_schema_order():
    ds = make_ds([1.0, 2.0])
    m = encode(ds, fit_scaler_on=[0, 1])
    assert m.feature_names == ["X", "HSC_S_ART", "HSC_S_COM", "HSC_S_SCI", "WORKEX_YES"]


def test_restrict_drops_feature_columns():
    ds = make_ds([1.0, 2.0])
    m = encode(ds, fit_scaler_on=[0, 1])
    r = m.restrict({"X", "WORKEX"})
    assert r.feature_names == ["X", "WORKEX_YES"]
    assert r.values.shape == (2, 2)


def test_encoder_is_sklearn_compatible(campus_ds):
    encoder = TableEncoder(with_scaling=True)
    assert encoder.get_params() == {"with_scaling": True}
    cloned = clone(encoder)
    assert cloned.get_params() == encoder.get_params()
    encoder.fit(campus_ds)
    assert hasattr(encoder, "columns_")
    with pytest.raises(RuntimeError):
        TableEncoder().transform(campus_ds)


def test_target_vector_passthrough():
    ds = make_ds([1.0, 2.0], targets=[1, 0])
    m = encode(ds, fit_scaler_on=[0, 1])
    assert m.target.tolist() == [1, 0]
