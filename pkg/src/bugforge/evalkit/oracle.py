"""Execution-based Pass@1 through pluggable per-language oracles."""

from __future__ import annotations

import os
import shlex
import subprocess
import tempfile
from dataclasses import dataclass
from pathlib import PurePosixPath
from typing import Callable, Protocol

from ..dataset import BugInstance
from ..syntax import split_lines
from .responses import ModelResponse


class ExecutionOracle(Protocol):
    def __call__(self, patched_path: str, language: str) -> bool: ...


@dataclass
class CommandOracle:
    """Runs ``command`` with the patched file path appended; exit status 0 passes."""

    command: str
    timeout: float = 60.0

    def __call__(self, patched_path: str, language: str) -> bool:
        argv = shlex.split(self.command) + [patched_path]
        try:
            proc = subprocess.run(argv, capture_output=True, timeout=self.timeout, check=False)
        except (OSError, subprocess.TimeoutExpired):
            return False
        return proc.returncode == 0


@dataclass
class FunctionOracle:
    fn: Callable[[str, str], bool]

    def __call__(self, patched_path: str, language: str) -> bool:
        return bool(self.fn(patched_path, language))


_ORACLES: dict[str, ExecutionOracle] = {}


def register_oracle(language: str, oracle: ExecutionOracle) -> None:
    _ORACLES[language] = oracle


def unregister_oracle(language: str) -> None:
    _ORACLES.pop(language, None)


def oracle_for(language: str) -> ExecutionOracle | None:
    return _ORACLES.get(language)


def apply_repairs(inst: BugInstance, resp: ModelResponse) -> str:
    """buggy_code with every predicted line replaced by its repair, when one is given."""
    lines = split_lines(inst.buggy_code)
    for k, text in resp.repairs.items():
        if 1 <= k <= len(lines) and k in resp.predicted_locations:
            lines[k - 1] = text
    out = "\n".join(lines)
    return out + "\n" if inst.buggy_code.endswith("\n") else out


def score_pass1(truth: BugInstance, resp: ModelResponse, oracle: ExecutionOracle | None = None) -> int | None:
    oracle = oracle or oracle_for(truth.language)
    if oracle is None:
        return None
    patched = apply_repairs(truth, resp)
    suffix = PurePosixPath(truth.relative_path).suffix
    fd, path = tempfile.mkstemp(suffix=suffix, prefix="patched_")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(patched)
        return int(bool(oracle(path, truth.language)))
    finally:
        os.unlink(path)
