"""Total orders over scored candidate pools, with human override support."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace
from pathlib import Path

from .dataset import Dataset
from .errors import InvalidKError, UnknownItemError
from .glm import FittedModel
from .schema import NUMERIC


@dataclass(frozen=True)
class RankEntry:
    rank: int
    item_id: str
    score: float


@dataclass(frozen=True)
class RankedList:
    """Permutation of item ids with scores and a top-k cut.

    ``model_order`` keeps the untouched model ranking so that human swaps
    stay auditable; ``overridden`` is true whenever the current order
    deviates from it.
    """

    entries: tuple[RankEntry, ...]
    k: int
    model_order: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(e.item_id for e in self.entries)

    @property
    def overridden(self) -> bool:
        return self.ids != self.model_order

    def position(self, item_id: str) -> int:
        """0-based position of an item; raises UnknownItemError."""
        for i, e in enumerate(self.entries):
            if e.item_id == item_id:
                return i
        raise UnknownItemError(item_id)

    def entry(self, item_id: str) -> RankEntry:
        return self.entries[self.position(item_id)]

    def to_dict(self) -> dict:
        return {
            "entries": [
                {
                    "rank": e.rank,
                    "item_id": e.item_id,
                    "score": e.score,
                    "in_top_k": e.rank <= self.k,
                }
                for e in self.entries
            ],
            "k": self.k,
            "n": self.n,
            "overridden": self.overridden,
            "model_order": list(self.model_order),
        }


def rank(model: FittedModel, pool: Dataset, k: int) -> RankedList:
    """Score every pool row and order by score descending.

    Exact score ties break by item id ascending, so the permutation is
    deterministic and rank values are a gapless 1..n.
    """
    if pool.n == 0:
        raise ValueError("cannot rank an empty pool")
    if not 1 <= k <= pool.n:
        raise InvalidKError(k, pool.n)
    id_col = pool.schema.id_column
    scored = [(model.score(row), row[id_col]) for row in pool.rows]
    scored.sort(key=lambda pair: (-pair[0], pair[1]))
    entries = tuple(
        RankEntry(rank=i + 1, item_id=item_id, score=score)
        for i, (score, item_id) in enumerate(scored)
    )
    return RankedList(entries=entries, k=k, model_order=tuple(e.item_id for e in entries))


def top_k(rl: RankedList) -> tuple[RankEntry, ...]:
    return rl.entries[: rl.k]


def apply_swap(rl: RankedList, a: str, b: str) -> RankedList:
    """Exchange the positions of two items; scores travel with the items.

    Swapping an item with itself is the identity, and applying the same
    swap twice restores the original list (ranks stay 1..n throughout).
    """
    ia, ib = rl.position(a), rl.position(b)
    if ia == ib:
        return rl
    entries = list(rl.entries)
    entries[ia] = RankEntry(rank=rl.entries[ia].rank,
                            item_id=rl.entries[ib].item_id,
                            score=rl.entries[ib].score)
    entries[ib] = RankEntry(rank=rl.entries[ib].rank,
                            item_id=rl.entries[ia].item_id,
                            score=rl.entries[ia].score)
    return replace(rl, entries=tuple(entries))


def ranking_to_csv(rl: RankedList, pool: Dataset, model: FittedModel,
                   path: str | Path | None = None) -> str:
    """Export RANK, ID, SCORE plus the retained feature columns (raw values
    for numerics, 0/1 for encoded dummies)."""
    display = model.display_columns()
    header = ["RANK", "ID", "SCORE"] + [col.name for col, _ in display]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for e in rl.entries:
        row = pool.row_by_id(e.item_id)
        cells: list = [e.rank, e.item_id, repr(e.score)]
        for col, _ in display:
            if col.kind == NUMERIC:
                cells.append(repr(float(row[col.source])))
            else:
                cells.append(int(col.encode_value(row[col.source])))
        writer.writerow(cells)
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
