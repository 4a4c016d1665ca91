from __future__ import annotations

import numpy as np
import pytest

from ranklens import data_path, load_csv, load_model, load_schema, rank
from ranklens.encoding import EncodedColumn
from ranklens.glm import FittedModel


@pytest.fixture(scope="session")
def campus_schema():
    return load_schema(data_path("campus_schema.yaml"))


@pytest.fixture(scope="session")
def campus_ds(campus_schema):
    return load_csv(data_path("campus_recruitment_synthetic.csv"), campus_schema)


@pytest.fixture(scope="session")
def t1_schema():
    return load_schema(data_path("table1_schema.yaml"))


@pytest.fixture(scope="session")
def t1_pool(t1_schema):
    return load_csv(data_path("table1_pool.csv"), t1_schema)


@pytest.fixture(scope="session")
def t1_model():
    return load_model(data_path("table1_model.json"))


@pytest.fixture(scope="session")
def t1_ranking(t1_model, t1_pool):
    return rank(t1_model, t1_pool, k=5)


@pytest.fixture
def make_numeric_model():
    """Factory for a plain linear-logistic model over numeric features with
    unit scaler, handy for hand-computed contrast arithmetic."""

    def build(names, coefficients, intercept=0.0, means=None, stds=None):
        means = means or {n: 0.0 for n in names}
        stds = stds or {n: 1.0 for n in names}
        columns = tuple(
            EncodedColumn(n, n, "numeric", mean=means[n], std=stds[n]) for n in names
        )
        k = len(names)
        return FittedModel(
            columns=columns,
            coefficients=np.asarray(coefficients, dtype=float),
            intercept=float(intercept),
            std_errors=np.ones(k),
            p_values=np.full(k, 0.01),
            implicit_columns=(),
            categorical_levels={},
            log_likelihood=0.0,
            converged=True,
        )

    return build
