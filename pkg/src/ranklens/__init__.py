"""Evaluative pairwise explanations for ranked candidate lists.

Fit a logistic scoring model on tabular data, rank a candidate pool, and
for any pair of items decompose the score gap into signed per-feature
contributions with pros for both items, neutral narration, chart data and
a reviewable decision log.
"""
from importlib import resources

from .contrast import (
    ContrastReport,
    CumulativeImportance,
    FeatureContribution,
    Mixed,
    SelectionPolicy,
    TopZ,
    contrast_pair,
    contribution_shares,
    decompose,
    parse_policy,
    select,
)
from .dataset import Dataset, dataset_summary, load_csv, stratified_split, subset
from .encoding import EncodedMatrix, TableEncoder, encode
from .errors import RankLensError
from .glm import (
    FittedModel,
    LogisticScorer,
    SelectionTrace,
    StepwiseLogisticScorer,
    backward_stepwise,
    fit,
    linear_predictor,
    load_model,
    save_model,
    score,
    wald_p_value,
)
from .narrate import (
    ChartData,
    ExplanationText,
    render_chart_data,
    render_text,
    validate_neutrality,
)
from .ranking import RankedList, apply_swap, rank, ranking_to_csv, top_k
from .schema import FeatureSchema, load_schema, parse_schema

__version__ = "0.1.0"


def data_path(name: str):
    """Path to a bundled data file (dataset, schema or fixture)."""
    return resources.files(__package__) / "data" / name


__all__ = [
    "ChartData",
    "ContrastReport",
    "CumulativeImportance",
    "Dataset",
    "EncodedMatrix",
    "ExplanationText",
    "FeatureContribution",
    "FeatureSchema",
    "FittedModel",
    "LogisticScorer",
    "Mixed",
    "RankLensError",
    "RankedList",
    "SelectionPolicy",
    "SelectionTrace",
    "StepwiseLogisticScorer",
    "TableEncoder",
    "TopZ",
    "apply_swap",
    "backward_stepwise",
    "contrast_pair",
    "contribution_shares",
    "data_path",
    "dataset_summary",
    "decompose",
    "encode",
    "fit",
    "linear_predictor",
    "load_csv",
    "load_model",
    "load_schema",
    "parse_policy",
    "parse_schema",
    "rank",
    "ranking_to_csv",
    "render_chart_data",
    "render_text",
    "save_model",
    "score",
    "select",
    "stratified_split",
    "subset",
    "top_k",
    "validate_neutrality",
    "wald_p_value",
]
