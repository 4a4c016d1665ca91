"""Human-facing explanation text and chart-ready data.

The text side is deliberately qualitative: no numbers, no percent signs,
no judgemental or qualifying vocabulary. Quantities belong to the charts.
The output of render_text is checked against validate_neutrality before it
is returned, so the neutrality contract is enforced, not aspirational.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .contrast import ContrastReport, FeatureContribution
from .errors import MissingLabelError
from .schema import NUMERIC

# Judgemental / qualifying vocabulary with common inflections. The paper's
# examples seed the list; deployments may extend it per context.
DEFAULT_BANNED_LEXICON: tuple[str, ...] = (
    "right", "rightly", "wrong", "wrongly", "good", "bad", "badly",
    "solid", "solidly", "interesting", "interestingly", "worth noting",
    "better", "best", "approve", "approves", "approved", "approving",
    "approval",
)

# Pro phrases for the bundled recruitment glossary, keyed by encoded feature
# name: (phrase when the beneficiary has the higher value, phrase when it
# has the lower value).
DEFAULT_LABELS: dict[str, tuple[str, str]] = {
    "SSC_P": ("a higher score in SSC_P", "a lower score in SSC_P"),
    "HSC_P": ("a higher score in HSC_P", "a lower score in HSC_P"),
    "DEGREE_P": ("a higher score in DEGREE_P", "a lower score in DEGREE_P"),
    "ETEST_P": ("a higher score in ETEST_P", "a lower score in ETEST_P"),
    "MBA_P": ("a higher score in MBA_P", "a lower score in MBA_P"),
    "WORKEX_YES": (
        "having previous working experience",
        "not having previous working experience",
    ),
    "HSC_S_SCI": (
        "having attended scientific high secondary studies",
        "not having attended scientific high secondary studies",
    ),
    "HSC_S_COM": (
        "having attended commercial high secondary studies",
        "not having attended commercial high secondary studies",
    ),
    "HSC_S_ART": (
        "having attended artistic high secondary studies",
        "not having attended artistic high secondary studies",
    ),
    "GENDER_M": ("being recorded as male", "being recorded as female"),
    "SSC_B_OTHERS": (
        "having attended a non central secondary board",
        "having attended a central secondary board",
    ),
    "SSC_B_CENTRAL": (
        "having attended a central secondary board",
        "having attended a non central secondary board",
    ),
    "HSC_B_OTHERS": (
        "having attended a non central high secondary board",
        "having attended a central high secondary board",
    ),
    "HSC_B_CENTRAL": (
        "having attended a central high secondary board",
        "having attended a non central high secondary board",
    ),
    "DEGREE_T_SCITECH": (
        "holding a science and technology degree",
        "not holding a science and technology degree",
    ),
    "DEGREE_T_COMMMGMT": (
        "holding a commerce and management degree",
        "not holding a commerce and management degree",
    ),
    "DEGREE_T_OTHERS": (
        "holding a degree outside the commerce and science tracks",
        "holding a degree within the commerce and science tracks",
    ),
    "SPECIALIZATION_MKTHR": (
        "specialising in marketing and human resources",
        "specialising in marketing and finance",
    ),
    "SPECIALIZATION_MKTFIN": (
        "specialising in marketing and finance",
        "specialising in marketing and human resources",
    ),
}


@dataclass(frozen=True)
class ExplanationText:
    """Sentences for the text panel. ``subjects`` are the item display names,
    whose identifier digits are exempt from the neutrality scan."""

    paragraphs: tuple[str, ...]
    subjects: tuple[str, ...] = ()

    def __str__(self) -> str:
        return "\n".join(self.paragraphs)

    def to_dict(self) -> dict:
        return {"paragraphs": list(self.paragraphs), "subjects": list(self.subjects)}


@dataclass(frozen=True)
class Violation:
    kind: str          # 'digit' | 'percent' | 'banned'
    token: str
    paragraph: int
    position: int


@dataclass(frozen=True)
class RadarRow:
    feature: str
    display_a: float
    display_b: float
    advantage_marker: str | None   # 'A' | 'B' | None


@dataclass(frozen=True)
class BarRow:
    feature: str
    signed_share: float            # right of zero favours A, left favours B
    direction: str | None          # 'right' | 'left' | None for a null bar
    selected: bool


@dataclass(frozen=True)
class ChartData:
    radar: tuple[RadarRow, ...]
    bars: tuple[BarRow, ...]

    def to_dict(self) -> dict:
        return {
            "radar": [
                {
                    "feature": r.feature,
                    "display_a": r.display_a,
                    "display_b": r.display_b,
                    "advantage_marker": r.advantage_marker,
                }
                for r in self.radar
            ],
            "bars": [
                {
                    "feature": b.feature,
                    "signed_share": b.signed_share,
                    "direction": b.direction,
                    "selected": b.selected,
                }
                for b in self.bars
            ],
        }


def _join(phrases: list[str]) -> str:
    if len(phrases) == 1:
        return phrases[0]
    return ", ".join(phrases[:-1]) + " and " + phrases[-1]


def _phrase(c: FeatureContribution, side: str,
            labels: dict[str, tuple[str, str]], strict: bool) -> str:
    if c.feature in labels:
        high, low = labels[c.feature]
    elif strict:
        raise MissingLabelError(c.feature)
    else:
        high = f"a higher score in {c.feature}"
        low = f"a lower score in {c.feature}"
    own, other = (c.raw_a, c.raw_b) if side == "A" else (c.raw_b, c.raw_a)
    return high if own > other else low


def render_text(report: ContrastReport, names: tuple[str, str] | None = None,
                labels: dict[str, tuple[str, str]] | None = None,
                strict: bool = False) -> ExplanationText:
    """Fill the fixed narration template for a selected contrast report.

    Sentence order: framing, current order with the override reminder, then
    one pros sentence per item (listed in feature-name order). Output is
    guaranteed neutral; custom labels that break neutrality raise ValueError.
    """
    name_a, name_b = names or (f"Candidate {report.item_a}", f"Candidate {report.item_b}")
    table = {**DEFAULT_LABELS, **(labels or {})}

    if report.indistinguishable or not report.selected:
        paragraphs = (
            f"The available information regarding {name_a} and {name_b} does not "
            f"allow the model to distinguish between them.",
            f"{name_a} and {name_b} are therefore interchangeable according to the "
            f"current algorithm reasoning. However, the ultimate decision remains "
            f"within your control, offering the option to alter this ranking if desired.",
        )
    else:
        paragraphs_list = [
            f"The available information regarding {name_a} and {name_b} suggests "
            f"that both individuals are qualified for the job.",
            f"{name_a} is ranked higher than {name_b} according to the current "
            f"algorithm reasoning. However, the ultimate decision remains within "
            f"your control, offering the option to alter this ranking if desired.",
        ]
        for side, name in (("A", name_a), ("B", name_b)):
            pros = sorted(report.pros_for(side), key=lambda c: c.feature)
            if pros:
                phrases = [_phrase(c, side, table, strict) for c in pros]
                paragraphs_list.append(
                    f"Characteristics in favour of {name} include {_join(phrases)}."
                )
        paragraphs = tuple(paragraphs_list)

    text = ExplanationText(paragraphs=paragraphs, subjects=(name_a, name_b))
    violations = validate_neutrality(text)
    if violations:
        raise ValueError(f"labels broke the neutrality contract: {violations[:3]}")
    return text


def render_chart_data(report: ContrastReport) -> ChartData:
    """Radar rows (feature-name order) and contribution bars (importance order).

    Numerics show raw values on the radar; dummies use the 100-for-1,
    50-for-0 encoding. Bars carry signed shares: positive extends right,
    supporting the current order; a zero share is a null bar.
    """
    radar = []
    for c in sorted(report.contributions, key=lambda c: c.feature):
        if c.kind == NUMERIC:
            display_a, display_b = c.raw_a, c.raw_b
        else:
            display_a = 100.0 if c.raw_a == 1 else 50.0
            display_b = 100.0 if c.raw_b == 1 else 50.0
        marker = c.beneficiary if c.beneficiary in ("A", "B") else None
        radar.append(RadarRow(c.feature, display_a, display_b, marker))

    chosen = set(report.selected)
    bars = []
    for c in report.contributions:
        if c.beneficiary == "A":
            signed, direction = c.share, "right"
        elif c.beneficiary == "B":
            signed, direction = -c.share, "left"
        else:
            signed, direction = 0.0, None
        bars.append(BarRow(c.feature, signed, direction, c.feature in chosen))
    return ChartData(radar=tuple(radar), bars=tuple(bars))


_DIGIT_RE = re.compile(r"[0-9]")


def _mask_subjects(paragraph: str, subjects: tuple[str, ...]) -> str:
    masked = paragraph
    for s in subjects:
        if s:
            masked = masked.replace(s, " " * len(s))
    return masked


def validate_neutrality(text, banned: tuple[str, ...] | None = None) -> list[Violation]:
    """Scan for digits, '%' and banned vocabulary; empty list means compliant.

    Accepts an ExplanationText (whose subject display names are masked
    before the scan, identifiers being labels rather than quantities) or a
    plain string (scanned verbatim).
    """
    lexicon = DEFAULT_BANNED_LEXICON if banned is None else banned
    patterns = [
        (re.compile(rf"\b{re.escape(w)}\b", re.IGNORECASE), w) for w in lexicon
    ]
    if isinstance(text, ExplanationText):
        paragraphs = [_mask_subjects(p, text.subjects) for p in text.paragraphs]
    else:
        paragraphs = [str(text)]

    violations: list[Violation] = []
    for i, paragraph in enumerate(paragraphs):
        for m in _DIGIT_RE.finditer(paragraph):
            violations.append(Violation("digit", m.group(), i, m.start()))
        for j, ch in enumerate(paragraph):
            if ch == "%":
                violations.append(Violation("percent", "%", i, j))
        for pattern, word in patterns:
            for m in pattern.finditer(paragraph):
                violations.append(Violation("banned", word, i, m.start()))
    return violations
