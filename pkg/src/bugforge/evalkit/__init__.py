"""Prompt construction, response parsing and scoring."""

from .metrics import MetricRecord, score_abl, score_bi, score_em, score_es, score_instance, score_obl
from .oracle import CommandOracle, FunctionOracle, apply_repairs, register_oracle, score_pass1, unregister_oracle
from .prompt import PromptBundle, build_prompt, estimate_tokens, oracle_response
from .responses import ModelResponse, parse_response

__all__ = [
    "CommandOracle",
    "FunctionOracle",
    "MetricRecord",
    "ModelResponse",
    "PromptBundle",
    "apply_repairs",
    "build_prompt",
    "estimate_tokens",
    "oracle_response",
    "parse_response",
    "register_oracle",
    "score_abl",
    "score_bi",
    "score_em",
    "score_es",
    "score_instance",
    "score_obl",
    "score_pass1",
    "unregister_oracle",
]
