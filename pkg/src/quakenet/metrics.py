"""Earthquake survivability ratio, bandwidth loss and scenario comparison."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .lightpath import LightpathSet


@dataclass(frozen=True)
class EventMetrics:
    event_id: str
    established: int
    survived: int
    esr: float
    bandwidth_lost_thz: float

    @property
    def failed(self) -> int:
        return self.established - self.survived


@dataclass(frozen=True)
class ScenarioReport:
    label: str
    events: tuple[EventMetrics, ...]

    @property
    def event_ids(self) -> list[str]:
        return [e.event_id for e in self.events]

    @property
    def mean_esr(self) -> float | None:
        if not self.events:
            return None
        return math.fsum(e.esr for e in self.events) / len(self.events)

    @property
    def total_bandwidth_lost_thz(self) -> float:
        return math.fsum(e.bandwidth_lost_thz for e in self.events)

    def to_dict(self) -> dict:
        out = {
            "scenario": self.label,
            "events": [
                {
                    "event_id": e.event_id,
                    "established": e.established,
                    "survived": e.survived,
                    "esr": e.esr,
                    "bandwidth_lost_thz": e.bandwidth_lost_thz,
                }
                for e in self.events
            ],
            "total_bandwidth_lost_thz": self.total_bandwidth_lost_thz,
        }
        if self.events:
            out["mean_esr"] = self.mean_esr
        return out


def esr(established: int, survived: int) -> float:
    if survived < 0 or established < 0:
        raise ValueError("counts must be non-negative")
    if survived > established:
        raise ValueError(f"survived ({survived}) exceeds established ({established})")
    return 1.0 if established == 0 else survived / established


def bandwidth_lost(lp: LightpathSet, verdicts: Mapping[tuple[str, str], bool]) -> float:
    """THz of working bandwidth carried by established demands that did not survive."""
    ghz = 0.0
    for a in lp.established:
        if not verdicts[(a.demand.src, a.demand.dst)]:
            ghz += a.width * lp.regime.unit_ghz
    return ghz / 1000.0


def event_metrics(event_id: str, lp: LightpathSet, verdicts: Mapping[tuple[str, str], bool]) -> EventMetrics:
    established = len(verdicts)
    survived = sum(verdicts.values())
    return EventMetrics(event_id, established, survived, esr(established, survived), bandwidth_lost(lp, verdicts))


@dataclass(frozen=True)
class EventDelta:
    event_id: str
    esr_delta: float
    bandwidth_delta_thz: float


@dataclass(frozen=True)
class ScenarioDelta:
    label: str
    events: tuple[EventDelta, ...]
    mean_esr_delta: float | None
    bandwidth_delta_thz: float
    bandwidth_reduction: float | None  # 1 - loss / baseline loss

    def to_dict(self) -> dict:
        return {
            "scenario": self.label,
            "mean_esr_delta": self.mean_esr_delta,
            "bandwidth_delta_thz": self.bandwidth_delta_thz,
            "bandwidth_reduction": self.bandwidth_reduction,
            "events": [
                {"event_id": e.event_id, "esr_delta": e.esr_delta, "bandwidth_delta_thz": e.bandwidth_delta_thz}
                for e in self.events
            ],
        }


@dataclass(frozen=True)
class Comparison:
    baseline: str
    rows: tuple[ScenarioDelta, ...]

    def row(self, label: str) -> ScenarioDelta:
        for r in self.rows:
            if r.label == label:
                return r
        raise KeyError(label)

    def to_dict(self) -> dict:
        return {"baseline": self.baseline, "scenarios": [r.to_dict() for r in self.rows]}


def reduction_ratio(baseline_loss: float, loss: float) -> float | None:
    return None if baseline_loss == 0 else 1.0 - loss / baseline_loss


def compare(reports: Sequence[ScenarioReport], baseline: str | None = None) -> Comparison:
    """Deltas of every report against ``baseline`` (default: the first report)."""
    if len(reports) < 2:
        raise ValueError("need at least two scenario reports to compare")
    base = reports[0] if baseline is None else next(r for r in reports if r.label == baseline)
    rows = []
    for rep in reports:
        if rep.event_ids != base.event_ids:
            raise ValueError(f"scenario {rep.label!r} was run on a different catalog than {base.label!r}")
        deltas = tuple(
            EventDelta(e.event_id, e.esr - b.esr, e.bandwidth_lost_thz - b.bandwidth_lost_thz)
            for e, b in zip(rep.events, base.events)
        )
        mean_delta = None if not rep.events else rep.mean_esr - base.mean_esr
        rows.append(
            ScenarioDelta(
                rep.label,
                deltas,
                mean_delta,
                rep.total_bandwidth_lost_thz - base.total_bandwidth_lost_thz,
                reduction_ratio(base.total_bandwidth_lost_thz, rep.total_bandwidth_lost_thz),
            )
        )
    return Comparison(base.label, tuple(rows))
