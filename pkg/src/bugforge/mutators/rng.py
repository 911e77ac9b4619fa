"""Counter-based random streams keyed by (seed, repo, path, operator)."""

from __future__ import annotations

import hashlib
import json

import numpy as np


def stream(seed: int, repo: str, relative_path: str, operator_index: int) -> np.random.Generator:
    key_material = json.dumps([int(seed), repo, relative_path, int(operator_index)]).encode("utf-8")
    digest = hashlib.sha256(key_material).digest()
    key = np.frombuffer(digest[:16], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
