"""Signed per-feature decomposition of the score gap between two items.

For a linear scorer the gap between items a and b on the pre-sigmoid scale
splits exactly into one term per feature: coefficient times the difference
of the encoded (scaled) feature values. A positive term favours the
higher-scored item a, a negative one favours b, and the absolute value is
the term's importance. Selection policies then choose which terms to show.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from .dataset import Dataset
from .errors import PolicyError, UnknownItemError
from .glm import FittedModel
from .ranking import RankedList
from .schema import NUMERIC


@dataclass(frozen=True)
class TopZ:
    """Show each side's z most important non-zero contributions."""

    z: int

    def __post_init__(self):
        if self.z < 1:
            raise PolicyError("topz needs z >= 1")


@dataclass(frozen=True)
class CumulativeImportance:
    """Show the smallest importance-descending prefix covering a tau share
    of the total importance."""

    tau: float

    def __post_init__(self):
        if not 0.0 < self.tau <= 1.0:
            raise PolicyError("cumulative importance needs tau in (0, 1]")


@dataclass(frozen=True)
class Mixed:
    """CumulativeImportance, topped up so each side keeps a minimum number
    of pros (where that side has enough non-zero contributions)."""

    tau: float
    min_pros_per_item: int

    def __post_init__(self):
        if not 0.0 < self.tau <= 1.0:
            raise PolicyError("cumulative importance needs tau in (0, 1]")
        if self.min_pros_per_item < 0:
            raise PolicyError("min_pros_per_item must be >= 0")


SelectionPolicy = TopZ | CumulativeImportance | Mixed


def parse_policy(text: str) -> SelectionPolicy:
    """Parse the CLI/service mini-grammar: topz:<int> | cum:<float> | mixed:<float>,<int>."""
    try:
        kind, _, args = text.strip().partition(":")
        if kind == "topz":
            return TopZ(z=int(args))
        if kind == "cum":
            return CumulativeImportance(tau=float(args))
        if kind == "mixed":
            tau_s, m_s = args.split(",")
            return Mixed(tau=float(tau_s), min_pros_per_item=int(m_s))
    except (ValueError, TypeError) as exc:
        raise PolicyError(f"cannot parse policy {text!r}: {exc}") from None
    raise PolicyError(f"unknown policy kind in {text!r}")


def policy_to_string(policy: SelectionPolicy) -> str:
    if isinstance(policy, TopZ):
        return f"topz:{policy.z}"
    if isinstance(policy, CumulativeImportance):
        return f"cum:{policy.tau}"
    return f"mixed:{policy.tau},{policy.min_pros_per_item}"


@dataclass(frozen=True)
class FeatureContribution:
    feature: str
    kind: str                 # numeric | categorical | binary
    raw_a: float
    raw_b: float
    delta: float              # coefficient * (encoded_a - encoded_b)
    importance: float         # |delta|
    beneficiary: str          # 'A' | 'B' | 'Neither'
    share: float = 0.0        # percentage of the total importance


@dataclass(frozen=True)
class ContrastReport:
    """Pairwise decomposition; contributions sorted by importance descending
    (ties by feature name)."""

    item_a: str
    item_b: str
    total_delta: float
    contributions: tuple[FeatureContribution, ...]
    selected: tuple[str, ...] = ()
    policy: SelectionPolicy | None = None

    @property
    def indistinguishable(self) -> bool:
        return all(c.importance == 0.0 for c in self.contributions)

    def contribution(self, feature: str) -> FeatureContribution:
        for c in self.contributions:
            if c.feature == feature:
                return c
        raise KeyError(feature)

    def selected_contributions(self) -> tuple[FeatureContribution, ...]:
        chosen = set(self.selected)
        return tuple(c for c in self.contributions if c.feature in chosen)

    def pros_for(self, side: str, selected_only: bool = True) -> tuple[FeatureContribution, ...]:
        pool = self.selected_contributions() if selected_only else self.contributions
        return tuple(c for c in pool if c.beneficiary == side)

    def to_dict(self) -> dict:
        return {
            "item_a": self.item_a,
            "item_b": self.item_b,
            "total_delta": self.total_delta,
            "contributions": [
                {
                    "feature": c.feature,
                    "kind": c.kind,
                    "raw_a": c.raw_a,
                    "raw_b": c.raw_b,
                    "delta": c.delta,
                    "importance": c.importance,
                    "beneficiary": c.beneficiary,
                    "share": c.share,
                }
                for c in self.contributions
            ],
            "selected": list(self.selected),
            "policy": policy_to_string(self.policy) if self.policy else None,
            "indistinguishable": self.indistinguishable,
        }


def report_from_dict(doc: dict) -> ContrastReport:
    return ContrastReport(
        item_a=doc["item_a"],
        item_b=doc["item_b"],
        total_delta=doc["total_delta"],
        contributions=tuple(
            FeatureContribution(
                feature=c["feature"], kind=c["kind"], raw_a=c["raw_a"], raw_b=c["raw_b"],
                delta=c["delta"], importance=c["importance"],
                beneficiary=c["beneficiary"], share=c.get("share", 0.0),
            )
            for c in doc["contributions"]
        ),
        selected=tuple(doc.get("selected", ())),
        policy=parse_policy(doc["policy"]) if doc.get("policy") else None,
    )


def decompose(model: FittedModel, a: dict, b: dict,
              id_a: str = "A", id_b: str = "B") -> ContrastReport:
    """Per-feature signed contributions to the score gap of a over b.

    Every encoded feature of the model appears, implicit reference dummies
    included (their effective coefficient is zero, so their delta is zero).
    Deltas live on the scaled/encoded space; raw_a/raw_b carry the original
    values for display. Caller orients the pair: a is the higher-scored one.
    """
    # validates both records (MissingFeature / UnknownLevel) via the model
    model.encoded_record(a), model.encoded_record(b)
    contributions = []
    total = 0.0
    for col, coef in model.display_columns():
        enc_a = col.encode_value(a[col.source])
        enc_b = col.encode_value(b[col.source])
        delta = coef * (enc_a - enc_b)
        total += delta
        if col.kind == NUMERIC:
            raw_a, raw_b = float(a[col.source]), float(b[col.source])
        else:
            raw_a, raw_b = enc_a, enc_b
        beneficiary = "A" if delta > 0 else ("B" if delta < 0 else "Neither")
        contributions.append(
            FeatureContribution(
                feature=col.name, kind=col.kind, raw_a=raw_a, raw_b=raw_b,
                delta=delta, importance=abs(delta), beneficiary=beneficiary,
            )
        )
    contributions.sort(key=lambda c: (-c.importance, c.feature))
    return ContrastReport(
        item_a=id_a, item_b=id_b, total_delta=total,
        contributions=tuple(contributions),
    )


def contribution_shares(report: ContrastReport) -> ContrastReport:
    """Fill each contribution's share of the total importance, in percent.
    All shares are zero for an indistinguishable pair."""
    total = sum(c.importance for c in report.contributions)
    if total == 0.0:
        shared = tuple(replace(c, share=0.0) for c in report.contributions)
    else:
        shared = tuple(
            replace(c, share=100.0 * c.importance / total) for c in report.contributions
        )
    return replace(report, contributions=shared)


def _cumulative_prefix(report: ContrastReport, tau: float) -> list[str]:
    total = sum(c.importance for c in report.contributions)
    if total == 0.0:
        return []
    target = tau * total
    chosen: list[str] = []
    cum = 0.0
    for c in report.contributions:
        if cum >= target or c.importance == 0.0:
            break
        chosen.append(c.feature)
        cum += c.importance
    return chosen


def _top_pros(report: ContrastReport, side: str) -> list[str]:
    return [
        c.feature for c in report.contributions
        if c.beneficiary == side and c.importance > 0.0
    ]


def select(report: ContrastReport, policy: SelectionPolicy) -> ContrastReport:
    """Flag the subset of contributions to display, per the policy.

    Zero-importance contributions are never selected; the selected tuple
    preserves the report's importance-descending order.
    """
    if isinstance(policy, TopZ):
        chosen = set(_top_pros(report, "A")[: policy.z])
        chosen |= set(_top_pros(report, "B")[: policy.z])
    elif isinstance(policy, CumulativeImportance):
        chosen = set(_cumulative_prefix(report, policy.tau))
    else:
        chosen = set(_cumulative_prefix(report, policy.tau))
        for side in ("A", "B"):
            pros = _top_pros(report, side)
            have = sum(1 for f in pros if f in chosen)
            for f in pros:
                if have >= policy.min_pros_per_item:
                    break
                if f not in chosen:
                    chosen.add(f)
                    have += 1
    ordered = tuple(c.feature for c in report.contributions if c.feature in chosen)
    return replace(report, selected=ordered, policy=policy)


def contrast_pair(model: FittedModel, rl: RankedList, pool: Dataset,
                  id_a: str, id_b: str, policy: SelectionPolicy) -> ContrastReport:
    """Decompose a pair taken from a ranked list, then select for display.

    The pair is oriented so that item_a is the model-higher-ranked item
    (by score, ties by id), whatever order the caller asked in; shares are
    filled before selection.
    """
    for item in (id_a, id_b):
        rl.position(item)  # raises UnknownItemError
    try:
        row_a, row_b = pool.row_by_id(id_a), pool.row_by_id(id_b)
    except KeyError as exc:
        raise UnknownItemError(str(exc)) from None
    if (-model.score(row_a), id_a) > (-model.score(row_b), id_b):
        id_a, id_b = id_b, id_a
        row_a, row_b = row_b, row_a
    report = contribution_shares(decompose(model, row_a, row_b, id_a=id_a, id_b=id_b))
    return select(report, policy)


def save_report(report: ContrastReport, path: str | Path) -> None:
    Path(path).write_text(json.dumps(report.to_dict(), indent=2), encoding="utf-8")
