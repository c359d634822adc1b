"""JSON model files.

A model file is one JSON object::

    {"label": "table1", "service_times": [0.546, ...],
     "think_time": 15, "transactions": 10, "host_index": 15}

Only ``service_times`` is required. Unknown keys are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Union

from .errors import InvalidArgument, MissingField, ParseError, UnknownField
from .model import ServiceProfile, WorkloadSpec, _check_index

FIELDS = ("label", "service_times", "think_time", "transactions", "host_index")
BUNDLED = ("table1", "table1-swapped", "two-server", "single-server")
ALIASES = {"single": "single-server", "two": "two-server", "swapped": "table1-swapped"}


@dataclass(frozen=True)
class ModelFile:
    profile: ServiceProfile
    workload: WorkloadSpec
    host_index: int
    label: str = ""


def parse_text(text: str) -> ModelFile:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(raw, dict):
        raise ParseError("model file must contain a JSON object", line=1)
    for key in raw:
        if key not in FIELDS:
            raise UnknownField(key)
    if "service_times" not in raw:
        raise MissingField("service_times")
    times = raw["service_times"]
    if not isinstance(times, list):
        raise ParseError("service_times must be a list of numbers")

    profile = ServiceProfile(tuple(times))
    think = raw.get("think_time", 0.0)
    n = raw.get("transactions", 1)
    for name, value in (("think_time", think), ("transactions", n)):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise InvalidArgument(f"{name} must be a number, got {value!r}")
    workload = WorkloadSpec(think_time=float(think), transactions=n)

    host = raw.get("host_index")
    if host is None:
        host = profile.k
    host = _check_index(host, profile.k)

    label = raw.get("label", "")
    if not isinstance(label, str):
        raise ParseError("label must be a string")
    return ModelFile(profile, workload, host, label)


def bundled_text(name: str) -> str:
    name = ALIASES.get(name, name)
    return resources.files("kbresponse").joinpath("models", f"{name}.json").read_text()


def load_model(source: Union[str, Path]) -> ModelFile:
    """Load a bundled model by name, or a model file by path."""
    name = str(source)
    if ALIASES.get(name, name) in BUNDLED and not Path(name).exists():
        return parse_text(bundled_text(name))
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read model {name!r}: {exc.strerror}") from None
    return parse_text(text)


def emit_model(model: ModelFile) -> str:
    w = model.workload
    data = {
        "label": model.label,
        "service_times": list(model.profile.service_times),
        "think_time": w.think_time,
        "transactions": w.transactions,
        "host_index": model.host_index,
    }
    return json.dumps(data, indent=2) + "\n"


def parse_model(source: Union[str, Path]) -> tuple[ServiceProfile, WorkloadSpec, int]:
    """Return ``(profile, workload, host_index)``.

    ``source`` is a path, a bundled model name, or JSON text (anything whose
    first non-blank character is ``{``).
    """
    if isinstance(source, str) and source.lstrip().startswith("{"):
        model = parse_text(source)
    else:
        model = load_model(source)
    return model.profile, model.workload, model.host_index
