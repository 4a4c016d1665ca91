"""HTTP API over a loaded model: ranking, pairwise explanation bundles and
a durable decision log.

State handling is event-sourced: the live ranked list is always the fold of
the recorded swap decisions over the initial model ranking, the log is an
append-only newline-delimited JSON file (fsynced on every write), and the
fold is re-verified after each append. Reads never mutate; writes are
serialized through a single lock.
"""
from __future__ import annotations

import json
import os
import threading
from dataclasses import asdict, dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Literal

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .contrast import SelectionPolicy, TopZ, contrast_pair, parse_policy
from .dataset import Dataset
from .errors import PolicyError, UnknownItemError
from .glm import FittedModel
from .narrate import render_chart_data, render_text
from .ranking import RankedList, apply_swap, rank

SCENARIOS = {
    ("agree", "satisfied"): 1,
    ("agree", "unsatisfied"): 2,
    ("disagree", "satisfied"): 3,
    ("disagree", "unsatisfied"): 4,
}


class DecisionConflictError(ValueError):
    """The decision violates an invariant (e.g. swap while satisfied)."""


@dataclass(frozen=True)
class DecisionRecord:
    timestamp: str
    item_a: str
    item_b: str
    justification: str        # agree | disagree
    position: str             # satisfied | unsatisfied
    action: str               # confirm | swap
    note: str | None = None

    @property
    def scenario(self) -> int:
        return SCENARIOS[(self.justification, self.position)]


def validate_decision(record: DecisionRecord) -> None:
    if record.justification not in ("agree", "disagree"):
        raise DecisionConflictError(f"invalid justification {record.justification!r}")
    if record.position not in ("satisfied", "unsatisfied"):
        raise DecisionConflictError(f"invalid position {record.position!r}")
    if record.action not in ("confirm", "swap"):
        raise DecisionConflictError(f"invalid action {record.action!r}")
    if record.action == "swap" and record.position != "unsatisfied":
        raise DecisionConflictError("swap is only permitted when position is unsatisfied")


class Session:
    """One loaded model, its candidate pool, the live ranking and the log."""

    def __init__(self, model: FittedModel, pool: Dataset, k: int,
                 default_policy: SelectionPolicy | None = None,
                 log_path: str | Path | None = None):
        self.model = model
        self.pool = pool
        self.k = k
        self.default_policy = default_policy or TopZ(2)
        self.log_path = Path(log_path) if log_path else None
        self.initial = rank(model, pool, k)
        self.current = self.initial
        self.log: list[DecisionRecord] = []
        self._write_lock = threading.Lock()
        if self.log_path and self.log_path.exists():
            for line in self.log_path.read_text(encoding="utf-8").splitlines():
                if line.strip():
                    self._apply(DecisionRecord(**json.loads(line)))

    def _apply(self, record: DecisionRecord) -> None:
        self.log.append(record)
        if record.action == "swap":
            self.current = apply_swap(self.current, record.item_a, record.item_b)

    def replay(self) -> RankedList:
        """Fold the full log over the initial ranking (event-sourcing check)."""
        rl = self.initial
        for record in self.log:
            if record.action == "swap":
                rl = apply_swap(rl, record.item_a, record.item_b)
        return rl

    def record_decision(self, item_a: str, item_b: str, justification: str,
                        position: str, action: str, note: str | None = None
                        ) -> DecisionRecord:
        record = DecisionRecord(
            timestamp=datetime.now(timezone.utc).isoformat(),
            item_a=item_a, item_b=item_b, justification=justification,
            position=position, action=action, note=note,
        )
        validate_decision(record)
        with self._write_lock:
            # both items must exist before anything is persisted
            self.current.position(record.item_a)
            self.current.position(record.item_b)
            if self.log_path:
                with open(self.log_path, "a", encoding="utf-8") as fh:
                    fh.write(json.dumps(asdict(record)) + "\n")
                    fh.flush()
                    os.fsync(fh.fileno())
            self._apply(record)
            if self.replay().to_dict() != self.current.to_dict():
                raise RuntimeError("decision log diverged from live ranking state")
        return record

    def contrast_bundle(self, id_a: str, id_b: str,
                        policy: SelectionPolicy | None = None) -> dict:
        report = contrast_pair(
            self.model, self.current, self.pool, id_a, id_b,
            policy or self.default_policy,
        )
        return {
            "report": report.to_dict(),
            "text": render_text(report).to_dict(),
            "chart_data": render_chart_data(report).to_dict(),
        }

    def summary(self) -> dict:
        counts = {str(i): 0 for i in (1, 2, 3, 4)}
        feature_counts: dict[str, int] = {}
        for record in self.log:
            counts[str(record.scenario)] += 1
            if record.justification == "disagree":
                report = contrast_pair(
                    self.model, self.current, self.pool,
                    record.item_a, record.item_b, self.default_policy,
                )
                for f in report.selected:
                    feature_counts[f] = feature_counts.get(f, 0) + 1
        flagged = sorted(feature_counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return {
            "counts": counts,
            "disagreement_features": [
                {"feature": f, "count": c} for f, c in flagged
            ],
        }


class DecisionIn(BaseModel):
    item_a: str
    item_b: str
    justification: Literal["agree", "disagree"]
    position: Literal["satisfied", "unsatisfied"]
    action: Literal["confirm", "swap"]
    note: str | None = None


def problem(status: int, code: str, detail: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"title": code.replace("_", " ").lower(), "status": status,
                 "code": code, "detail": detail},
    )


def create_app(session: Session | None, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="ranklens", version="0.1.0")
    app.state.session = session

    def current_session() -> Session | None:
        return app.state.session

    @app.get("/ranking")
    def get_ranking(k: int | None = None):
        sess = current_session()
        if sess is None:
            return problem(409, "NO_MODEL", "no model loaded in this service")
        effective_k = sess.k if k is None else k
        if not 1 <= effective_k <= sess.current.n:
            return problem(422, "INVALID_K",
                           f"k must lie in 1..{sess.current.n}, got {effective_k}")
        return replace(sess.current, k=effective_k).to_dict()

    @app.get("/contrast/{id_a}/{id_b}")
    def get_contrast(id_a: str, id_b: str, policy: str | None = None):
        sess = current_session()
        if sess is None:
            return problem(409, "NO_MODEL", "no model loaded in this service")
        try:
            parsed = parse_policy(policy) if policy else None
            return sess.contrast_bundle(id_a, id_b, parsed)
        except PolicyError as exc:
            return problem(422, "BAD_POLICY", str(exc))
        except UnknownItemError as exc:
            return problem(404, "ITEM_NOT_FOUND", str(exc))

    @app.post("/decision")
    def post_decision(decision: DecisionIn):
        sess = current_session()
        if sess is None:
            return problem(409, "NO_MODEL", "no model loaded in this service")
        try:
            record = sess.record_decision(
                item_a=decision.item_a, item_b=decision.item_b,
                justification=decision.justification,
                position=decision.position, action=decision.action,
                note=decision.note,
            )
        except DecisionConflictError as exc:
            return problem(422, "INVALID_DECISION", str(exc))
        except UnknownItemError as exc:
            return problem(404, "ITEM_NOT_FOUND", str(exc))
        return {"record": asdict(record), "scenario": record.scenario}

    @app.get("/decisions/summary")
    def get_summary():
        sess = current_session()
        if sess is None:
            return problem(409, "NO_MODEL", "no model loaded in this service")
        return sess.summary()

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="dashboard")
    return app
