"""Structured JSON reports with provenance.

Every CLI invocation produces one report carrying the tool version, the
command, a content digest of each input file, every resolved parameter
(seeds included), the command-specific results, and any warnings.  With a
fixed seed the serialized report is byte-identical across runs except for
the timestamp field.
"""

from __future__ import annotations

import dataclasses
import enum
import hashlib
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np


@dataclass
class Report:
    tool_version: str
    command: str
    timestamp: str
    inputs_digest: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def to_json(self) -> str:
        payload = {
            "tool_version": self.tool_version,
            "command": self.command,
            "timestamp": self.timestamp,
            "inputs_digest": jsonable(self.inputs_digest),
            "params": jsonable(self.params),
            "results": jsonable(self.results),
            "warnings": jsonable(self.warnings),
        }
        return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False)


def new_report(version: str, command: str) -> Report:
    return Report(
        tool_version=version,
        command=command,
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )


def file_digest(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def jsonable(obj):
    """Recursively convert results into strict-JSON-serializable values.

    Numpy scalars and arrays become Python numbers and lists, dataclasses
    and named tuples become dicts, enums their value, and non-finite floats
    their string spelling (strict JSON has no Infinity literal).
    """
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else repr(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return jsonable(float(obj))
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, enum.Enum):
        return obj.value
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {
            f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)
        }
    if isinstance(obj, tuple) and hasattr(obj, "_fields"):  # NamedTuple
        return {name: jsonable(val) for name, val in zip(obj._fields, obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set)):
        return [jsonable(v) for v in obj]
    return repr(obj)
