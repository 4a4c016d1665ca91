"""Shared builders for tests that need raw design matrices."""
from __future__ import annotations

import numpy as np

from ranklens.encoding import EncodedColumn, EncodedMatrix
from ranklens.schema import parse_schema


def matrix_from_arrays(names, X, y=None) -> EncodedMatrix:
    """EncodedMatrix over plain numeric arrays (identity scaler)."""
    X = np.asarray(X, dtype=float)
    schema = parse_schema(
        {"ID": "id", **{n: "numeric" for n in names}, "Y": "target(1)"}
    )
    columns = tuple(EncodedColumn(n, n, "numeric", mean=0.0, std=1.0) for n in names)
    return EncodedMatrix(
        schema=schema,
        columns=columns,
        values=X,
        ids=tuple(str(i) for i in range(X.shape[0])),
        target=None if y is None else np.asarray(y, dtype=np.int8),
    )


def draw_logistic_sample(rng, beta, intercept, n):
    """(X, y) drawn from the logistic model with the given coefficients."""
    p = len(beta)
    X = rng.standard_normal((n, p))
    eta = intercept + X @ np.asarray(beta)
    y = (rng.random(n) < 1.0 / (1.0 + np.exp(-eta))).astype(int)
    return X, y
