"""Bug identification, localization and repair scores for one instance."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from ..dataset import BugInstance
from ..syntax import split_lines
from ..textdist import similarity
from .oracle import score_pass1
from .responses import ModelResponse


@dataclass(frozen=True)
class MetricRecord:
    instance_id: str
    bi: int
    obl: int
    abl: int
    es: float
    em: float
    pass1: int | None = None
    parse_failed: bool = False

    def __post_init__(self):
        if self.abl > self.obl:
            raise ValueError("abl cannot exceed obl")
        if self.em > self.es + 1e-12:
            raise ValueError("em cannot exceed es")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "MetricRecord":
        return cls(
            d["instance_id"], int(d["bi"]), int(d["obl"]), int(d["abl"]), float(d["es"]), float(d["em"]),
            None if d.get("pass1") is None else int(d["pass1"]), bool(d.get("parse_failed", False)),
        )


def score_bi(truth: BugInstance, resp: ModelResponse) -> int:
    return int(resp.has_error and resp.predicted_subtype == truth.subtype_index)


def score_obl(truth: BugInstance, resp: ModelResponse) -> int:
    return int(bool(set(truth.locations) & set(resp.predicted_locations)))


def score_abl(truth: BugInstance, resp: ModelResponse) -> int:
    return int(set(truth.locations) <= set(resp.predicted_locations))


def _repair_for(k: int, truth: BugInstance, resp: ModelResponse, buggy: list[str]) -> str:
    # a located line without a repair is left as the buggy line
    return resp.repairs.get(k, buggy[k - 1])


def score_es(truth: BugInstance, resp: ModelResponse) -> float:
    original, buggy = split_lines(truth.original_code), split_lines(truth.buggy_code)
    hit = sorted(set(truth.locations) & set(resp.predicted_locations))
    # trailing whitespace is ignored here as in score_em, which keeps em <= es per line
    total = sum(similarity(original[k - 1].rstrip(), _repair_for(k, truth, resp, buggy).rstrip()) for k in hit)
    return total / len(truth.locations)


def score_em(truth: BugInstance, resp: ModelResponse) -> float:
    original, buggy = split_lines(truth.original_code), split_lines(truth.buggy_code)
    hit = sorted(set(truth.locations) & set(resp.predicted_locations))
    total = sum(
        1 for k in hit if _repair_for(k, truth, resp, buggy).rstrip() == original[k - 1].rstrip()
    )
    return total / len(truth.locations)


def score_instance(truth: BugInstance, resp: ModelResponse, oracle=None) -> MetricRecord:
    es = score_es(truth, resp)
    em = score_em(truth, resp)
    return MetricRecord(
        truth.id,
        score_bi(truth, resp),
        score_obl(truth, resp),
        score_abl(truth, resp),
        es,
        em,
        score_pass1(truth, resp, oracle),
        resp.parse_failed,
    )
