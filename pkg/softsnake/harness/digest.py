"""Digests tying result files to the configuration that produced them."""

import hashlib
import json
import math
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np

SUPPORTED_ALGORITHMS = {
    "sha256": hashlib.sha256,
    "sha512": hashlib.sha512,
    "sha3_256": hashlib.sha3_256,
}


def prepare_for_json(data: Any) -> Any:
    """Convert numpy values, enums, paths and models into plain JSON types."""
    if hasattr(data, "model_dump"):
        return prepare_for_json(data.model_dump(mode="json"))
    if hasattr(data, "to_dict"):
        return prepare_for_json(data.to_dict())
    if isinstance(data, dict):
        return {str(k): prepare_for_json(v) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [prepare_for_json(item) for item in data]
    if isinstance(data, np.ndarray):
        return prepare_for_json(data.tolist())
    if isinstance(data, np.generic):
        return prepare_for_json(data.item())
    if isinstance(data, Enum):
        return data.value
    if isinstance(data, Path):
        return data.as_posix()
    if isinstance(data, float) and not math.isfinite(data):
        return None
    return data


def canonical_json(data: Any) -> str:
    """Compact key-sorted JSON; equal inputs give identical text."""
    return json.dumps(prepare_for_json(data), sort_keys=True, separators=(",", ":"))


def pretty_json(data: Any) -> str:
    """Key-sorted indented JSON for result files."""
    return json.dumps(prepare_for_json(data), sort_keys=True, indent=2) + "\n"


class ConfigDigest:
    """Hashes experiment configurations through their canonical JSON."""

    def __init__(self, algorithm: str = "sha256"):
        if algorithm not in SUPPORTED_ALGORITHMS:
            raise ValueError(
                f"Unsupported algorithm: {algorithm}. Supported: {list(SUPPORTED_ALGORITHMS)}"
            )
        self.algorithm = algorithm
        self._hash_func = SUPPORTED_ALGORITHMS[algorithm]

    def calculate(self, obj: Any, exclude=("output_dir",)) -> str:
        """Hex digest of ``obj`` without the keys in ``exclude``.

        The output directory is excluded so that the same experiment written
        to two places carries the same digest.
        """
        data = prepare_for_json(obj)
        if isinstance(data, dict):
            data = {k: v for k, v in data.items() if k not in exclude}
        hasher = self._hash_func()
        hasher.update(canonical_json(data).encode("utf-8"))
        return hasher.hexdigest()

    def verify(self, obj: Any, expected: str) -> bool:
        return self.calculate(obj) == expected
