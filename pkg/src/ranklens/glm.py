"""Unregularized logistic regression by maximum likelihood.

Fitting is Newton/IRLS with step-halving on the log-likelihood; convergence
is declared when the gradient max-norm drops below ``tol``. Wald standard
errors come from the inverse observed information matrix at the optimum.
No penalty is applied anywhere: the Wald p-values that drive backward
stepwise selection require the plain MLE.

One-hot groups enter the design with their lexicographically first level
dropped (the information matrix is singular otherwise). The dropped dummy
stays visible downstream as an implicit column with coefficient zero.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.stats import norm
from sklearn.base import BaseEstimator

from .dataset import Dataset
from .encoding import EncodedColumn, EncodedMatrix
from .errors import (
    DidNotConvergeError,
    MissingFeatureError,
    PerfectSeparationError,
    SingleClassError,
    UnknownLevelError,
)
from .schema import BINARY, CATEGORICAL, NUMERIC

MAX_COEF_NORM = 30.0       # separation heuristic on scaled designs
MAX_CONDITION = 1e12


def sigmoid(t):
    t = np.asarray(t, dtype=float)
    out = np.empty_like(t)
    pos = t >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-t[pos]))
    e = np.exp(t[~pos])
    out[~pos] = e / (1.0 + e)
    return out if out.ndim else float(out)


def logit(p):
    p = np.asarray(p, dtype=float)
    out = np.log(p) - np.log1p(-p)
    return out if out.ndim else float(out)


def bernoulli_loglik(design: np.ndarray, y: np.ndarray, beta: np.ndarray) -> float:
    """Log-likelihood of a logistic model; ``design`` includes the intercept column."""
    eta = design @ beta
    # log sigma(eta) = -log(1+exp(-eta)), stable in both tails
    return float(np.sum(np.where(y == 1, -np.logaddexp(0.0, -eta), -np.logaddexp(0.0, eta))))


def bernoulli_loglik_grad(design: np.ndarray, y: np.ndarray, beta: np.ndarray) -> np.ndarray:
    mu = sigmoid(design @ beta)
    return design.T @ (y - mu)


def wald_p_value(coef: float, se: float) -> float:
    """Two-sided normal tail probability of z = coef / se."""
    if se <= 0:
        raise ValueError("standard error must be positive")
    return float(2.0 * norm.sf(abs(coef) / se))


@dataclass(frozen=True)
class FittedModel:
    """Maximum-likelihood logistic model over encoded features.

    ``columns`` are the fitted design columns (reference dummies and
    constant columns excluded); ``implicit_columns`` are those excluded
    dummies, which carry an effective coefficient of zero and still show
    up in decompositions and exports.
    """

    columns: tuple[EncodedColumn, ...]
    coefficients: np.ndarray
    intercept: float
    std_errors: np.ndarray
    p_values: np.ndarray
    implicit_columns: tuple[EncodedColumn, ...]
    categorical_levels: dict
    log_likelihood: float
    converged: bool
    trace: "SelectionTrace | None" = None

    @property
    def feature_names(self) -> list[str]:
        return [c.name for c in self.columns]

    @property
    def retained_raw_features(self) -> list[str]:
        seen: list[str] = []
        for c in self.columns:
            if c.source not in seen:
                seen.append(c.source)
        return seen

    @property
    def scaler(self) -> dict[str, tuple[float, float]]:
        return {c.source: (c.mean, c.std) for c in self.columns if c.kind == NUMERIC}

    def display_columns(self) -> list[tuple[EncodedColumn, float]]:
        """All encoded columns with their effective coefficients, implicit
        reference dummies included at zero, sorted by encoded name."""
        pairs = list(zip(self.columns, self.coefficients))
        pairs += [(c, 0.0) for c in self.implicit_columns]
        return sorted(pairs, key=lambda pair: pair[0].name)

    def encoded_record(self, x_raw: dict) -> np.ndarray:
        """Encode a raw record onto the fitted columns (scaling applied)."""
        self._validate_record(x_raw)
        return np.array([c.encode_value(x_raw[c.source]) for c in self.columns])

    def _validate_record(self, x_raw: dict) -> None:
        for source in self.retained_raw_features:
            if source not in x_raw:
                raise MissingFeatureError(source)
        for source, levels in self.categorical_levels.items():
            if source in x_raw and x_raw[source] not in levels:
                raise UnknownLevelError(None, source, x_raw[source])

    def linear_predictor(self, x_raw: dict) -> float:
        return float(self.intercept + self.coefficients @ self.encoded_record(x_raw))

    def score(self, x_raw: dict) -> float:
        return float(sigmoid(self.linear_predictor(x_raw)))


@dataclass(frozen=True)
class SelectionStep:
    removed_feature: str
    p_value: float
    retained: tuple[str, ...]
    log_likelihood: float


@dataclass(frozen=True)
class SelectionTrace:
    steps: tuple[SelectionStep, ...] = ()


def _design_columns(X: EncodedMatrix) -> tuple[list[int], list[EncodedColumn]]:
    """Indices of columns that enter the design: drop each one-hot group's
    first (reference) level and anything constant on the fit data."""
    fitted: list[int] = []
    implicit: list[EncodedColumn] = []
    seen_group: set[str] = set()
    for i, col in enumerate(X.columns):
        if col.kind == CATEGORICAL:
            first_of_group = col.source not in seen_group
            seen_group.add(col.source)
            if first_of_group:
                implicit.append(col)  # reference level
                continue
        if col.kind != NUMERIC and np.ptp(X.values[:, i]) == 0.0:
            implicit.append(col)
            continue
        fitted.append(i)
    return fitted, implicit


def fit(X: EncodedMatrix, tol: float = 1e-8, max_iter: int = 100) -> FittedModel:
    """Fit the MLE on an encoded matrix that carries its target.

    Raises SingleClassError, PerfectSeparationError or DidNotConvergeError;
    on success the gradient max-norm at the returned coefficients is <= tol.
    """
    if X.target is None:
        raise ValueError("fit needs an encoded matrix with a target")
    y = X.target.astype(float)
    if len(np.unique(y)) < 2:
        raise SingleClassError("target contains a single class")
    names = X.feature_names
    if len(set(names)) != len(names):
        raise ValueError("duplicate encoded feature names")

    fitted_idx, implicit = _design_columns(X)
    design = np.column_stack([np.ones(X.n), X.values[:, fitted_idx]])
    beta = np.zeros(design.shape[1])
    ll = bernoulli_loglik(design, y, beta)

    grad = bernoulli_loglik_grad(design, y, beta)
    for _ in range(max_iter):
        if np.max(np.abs(grad)) <= tol:
            break
        mu = sigmoid(design @ beta)
        w = mu * (1.0 - mu)
        info = design.T @ (design * w[:, None])
        if np.linalg.cond(info) > MAX_CONDITION:
            raise PerfectSeparationError("information matrix numerically singular")
        step = np.linalg.solve(info, grad)
        # step-halving: never accept a likelihood decrease
        scale = 1.0
        for _ in range(40):
            candidate = beta + scale * step
            ll_new = bernoulli_loglik(design, y, candidate)
            if np.isfinite(ll_new) and ll_new >= ll - 1e-13:
                break
            scale *= 0.5
        beta = beta + scale * step
        ll = bernoulli_loglik(design, y, beta)
        grad = bernoulli_loglik_grad(design, y, beta)
        if np.max(np.abs(beta[1:]), initial=0.0) > MAX_COEF_NORM:
            raise PerfectSeparationError("coefficients diverging; classes separable")
    else:
        raise DidNotConvergeError(max_iter, float(np.max(np.abs(grad))))

    mu = sigmoid(design @ beta)
    w = mu * (1.0 - mu)
    info = design.T @ (design * w[:, None])
    if np.linalg.cond(info) > MAX_CONDITION:
        raise PerfectSeparationError("information matrix numerically singular at optimum")
    cov = np.linalg.inv(info)
    se = np.sqrt(np.diag(cov))[1:]
    coefs = beta[1:]
    p_vals = np.array([wald_p_value(c, s) for c, s in zip(coefs, se)])

    cat_levels = {
        spec.name: tuple(spec.levels)
        for spec in X.schema.columns
        if spec.kind == CATEGORICAL
    }
    return FittedModel(
        columns=tuple(X.columns[i] for i in fitted_idx),
        coefficients=coefs,
        intercept=float(beta[0]),
        std_errors=se,
        p_values=p_vals,
        implicit_columns=tuple(implicit),
        categorical_levels=cat_levels,
        log_likelihood=ll,
        converged=True,
    )


def _representative_p(model: FittedModel, raw_feature: str) -> float:
    """Per raw feature: its own p-value, or a group's minimum member p-value.
    Features with no fitted columns (constant data) count as p = 1."""
    ps = [
        float(p)
        for col, p in zip(model.columns, model.p_values)
        if col.source == raw_feature
    ]
    return min(ps) if ps else 1.0


def backward_stepwise(
    X: EncodedMatrix,
    alpha_level: float = 0.05,
    tol: float = 1e-8,
    max_iter: int = 100,
) -> tuple[FittedModel, SelectionTrace]:
    """Iteratively drop the least significant raw feature until every
    retained feature is significant at ``alpha_level``.

    Categorical one-hot groups are dropped atomically, judged by their
    minimum member p-value. Dropping everything is a valid outcome (the
    result is the intercept-only model). Ties on the worst p-value break
    by feature name, so the procedure is deterministic.
    """
    current = list(X.schema.feature_names)
    steps: list[SelectionStep] = []
    model = fit(X.restrict(set(current)), tol=tol, max_iter=max_iter)
    while current:
        worst = max(
            ((f, _representative_p(model, f)) for f in current),
            key=lambda pair: (pair[1], pair[0]),
        )
        if worst[1] <= alpha_level:
            break
        current.remove(worst[0])
        model = fit(X.restrict(set(current)), tol=tol, max_iter=max_iter)
        steps.append(
            SelectionStep(
                removed_feature=worst[0],
                p_value=worst[1],
                retained=tuple(current),
                log_likelihood=model.log_likelihood,
            )
        )
    trace = SelectionTrace(steps=tuple(steps))
    return (
        FittedModel(
            columns=model.columns,
            coefficients=model.coefficients,
            intercept=model.intercept,
            std_errors=model.std_errors,
            p_values=model.p_values,
            implicit_columns=model.implicit_columns,
            categorical_levels=model.categorical_levels,
            log_likelihood=model.log_likelihood,
            converged=model.converged,
            trace=trace,
        ),
        trace,
    )


def score(model: FittedModel, x_raw: dict) -> float:
    return model.score(x_raw)


def linear_predictor(model: FittedModel, x_raw: dict) -> float:
    return model.linear_predictor(x_raw)


# --- persistence ---------------------------------------------------------------

def _column_to_dict(col: EncodedColumn) -> dict:
    return {
        "name": col.name,
        "source": col.source,
        "kind": col.kind,
        "level": col.level,
        "mean": col.mean,
        "std": col.std,
    }


def model_to_dict(model: FittedModel) -> dict:
    doc = {
        "intercept": model.intercept,
        "features": [
            {
                **_column_to_dict(col),
                "coefficient": float(coef),
                "std_error": float(se),
                "p_value": float(p),
            }
            for col, coef, se, p in zip(
                model.columns, model.coefficients, model.std_errors, model.p_values
            )
        ],
        "implicit": [_column_to_dict(c) for c in model.implicit_columns],
        "categorical_levels": {k: list(v) for k, v in model.categorical_levels.items()},
        "log_likelihood": model.log_likelihood,
        "converged": model.converged,
        "selection_trace": None,
    }
    if model.trace is not None:
        doc["selection_trace"] = {
            "steps": [
                {
                    "removed_feature": s.removed_feature,
                    "p_value": s.p_value,
                    "retained": list(s.retained),
                    "log_likelihood": s.log_likelihood,
                }
                for s in model.trace.steps
            ]
        }
    return doc


def model_from_dict(doc: dict) -> FittedModel:
    def col(d):
        return EncodedColumn(
            name=d["name"], source=d["source"], kind=d["kind"],
            level=d.get("level"), mean=d.get("mean"), std=d.get("std"),
        )

    trace = None
    if doc.get("selection_trace"):
        trace = SelectionTrace(
            steps=tuple(
                SelectionStep(
                    removed_feature=s["removed_feature"],
                    p_value=s["p_value"],
                    retained=tuple(s["retained"]),
                    log_likelihood=s["log_likelihood"],
                )
                for s in doc["selection_trace"]["steps"]
            )
        )
    return FittedModel(
        columns=tuple(col(d) for d in doc["features"]),
        coefficients=np.array([d["coefficient"] for d in doc["features"]], dtype=float),
        intercept=float(doc["intercept"]),
        std_errors=np.array([d["std_error"] for d in doc["features"]], dtype=float),
        p_values=np.array([d["p_value"] for d in doc["features"]], dtype=float),
        implicit_columns=tuple(col(d) for d in doc["implicit"]),
        categorical_levels={k: tuple(v) for k, v in doc["categorical_levels"].items()},
        log_likelihood=float(doc["log_likelihood"]),
        converged=bool(doc["converged"]),
        trace=trace,
    )


def save_model(model: FittedModel, path: str | Path) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model), indent=2), encoding="utf-8")


def load_model(path: str | Path) -> FittedModel:
    return model_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


# --- sklearn-flavoured wrappers --------------------------------------------------

class LogisticScorer(BaseEstimator):
    """Estimator facade over :func:`fit` for pipeline-style use."""

    def __init__(self, tol: float = 1e-8, max_iter: int = 100):
        self.tol = tol
        self.max_iter = max_iter

    def fit(self, X: EncodedMatrix, y=None) -> "LogisticScorer":
        self.model_ = fit(X, tol=self.tol, max_iter=self.max_iter)
        return self

    def decision_function(self, records) -> np.ndarray:
        rows = records.rows if isinstance(records, Dataset) else records
        return np.array([self.model_.linear_predictor(r) for r in rows])

    def predict_proba(self, records) -> np.ndarray:
        p = sigmoid(self.decision_function(records))
        return np.column_stack([1.0 - p, p])

    def predict(self, records) -> np.ndarray:
        return (self.predict_proba(records)[:, 1] >= 0.5).astype(int)


class StepwiseLogisticScorer(LogisticScorer):
    """LogisticScorer that first prunes features by backward stepwise selection."""

    def __init__(self, alpha_level: float = 0.05, tol: float = 1e-8, max_iter: int = 100):
        super().__init__(tol=tol, max_iter=max_iter)
        self.alpha_level = alpha_level

    def fit(self, X: EncodedMatrix, y=None) -> "StepwiseLogisticScorer":
        self.model_, self.trace_ = backward_stepwise(
            X, alpha_level=self.alpha_level, tol=self.tol, max_iter=self.max_iter
        )
        return self
