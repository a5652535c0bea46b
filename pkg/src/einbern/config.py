"""JSON documents describing models and experiments.

Documents are versioned with a "schema" field and validated strictly:
unknown keys are rejected so archived configurations keep meaning
exactly what they meant.
"""

from __future__ import annotations

import json
import math
import os

import numpy as np

from .bounds import SumModel
from .errors import EinbernError, ModelError
from .montecarlo import ExperimentConfig
from .tensor import (
    Tensor,
    linearize,
    random_e_symmetric,
    random_fully_symmetric,
    random_tensor,
    read_tensor_text,
)

__all__ = [
    "SCHEMA_VERSION",
    "model_from_dict",
    "experiment_from_dict",
    "load_model",
    "load_experiment",
]

SCHEMA_VERSION = 1

_MODEL_KEYS = {"law", "components", "generate", "sample_size", "with_replacement"}
_GENERATE_KEYS = {"count", "order", "dim", "seed", "kind", "scale"}
_COMPONENT_KEYS = {"shape", "entries"}
_EXPERIMENT_KEYS = {"model", "trials", "t_grid", "seed", "confidence_slack", "theorem"}
_GRID_KEYS = {"start", "stop", "num"}


def _check_keys(doc: dict, allowed: set, where: str) -> None:
    if not isinstance(doc, dict):
        raise ModelError(f"{where} must be a JSON object")
    unknown = set(doc) - allowed
    if unknown:
        raise ModelError(f"unknown keys in {where}: {sorted(unknown)}")


def _require(doc: dict, key: str, where: str):
    if key not in doc:
        raise ModelError(f"missing key {key!r} in {where}")
    return doc[key]


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ModelError(f"{where} must be an integer, got {value!r}")
    return value


def _tensor_from_spec(spec, base_dir: str) -> Tensor:
    if isinstance(spec, dict) and set(spec) == {"file"}:
        path = spec["file"]
        if not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        try:
            return read_tensor_text(path)
        except (OSError, ValueError, IndexError) as exc:
            raise ModelError(f"bad tensor file {spec['file']!r}: {exc}") from exc
    _check_keys(spec, _COMPONENT_KEYS, "component")
    shape = tuple(_int(s, "mode size") for s in _require(spec, "shape", "component"))
    entries = _require(spec, "entries", "component")
    data = np.zeros(math.prod(shape) if shape else 1)
    for entry in entries:
        if len(entry) != len(shape) + 1:
            raise ModelError(
                f"entry {entry!r} needs {len(shape)} indices and a value"
            )
        idx = tuple(_int(i, "entry index") for i in entry[:-1])
        try:
            data[linearize(idx, shape) - 1] = float(entry[-1])
        except IndexError as exc:
            raise ModelError(str(exc)) from exc
    return Tensor(shape, data, copy=False)


def _generate_components(spec: dict) -> list:
    _check_keys(spec, _GENERATE_KEYS, "generate")
    count = _int(_require(spec, "count", "generate"), "count")
    order = _int(_require(spec, "order", "generate"), "order")
    dim = _int(_require(spec, "dim", "generate"), "dim")
    seed = _int(_require(spec, "seed", "generate"), "seed")
    kind = spec.get("kind", "general")
    scale = float(spec.get("scale", 1.0))
    if count < 1 or order < 1 or dim < 1:
        raise ModelError("count, order and dim must be positive")
    rng = np.random.default_rng(seed)
    shape = (dim,) * order
    out = []
    for _ in range(count):
        if kind == "general":
            out.append(random_tensor(rng, shape, scale))
        elif kind == "e_symmetric":
            if order % 2:
                raise ModelError("e_symmetric generation needs an even order")
            out.append(random_e_symmetric(rng, order // 2, dim, scale))
        elif kind == "fully_symmetric":
            out.append(random_fully_symmetric(rng, order, dim, scale))
        else:
            raise ModelError(f"unknown generate kind {kind!r}")
    return out


def model_from_dict(doc: dict, base_dir: str = ".") -> SumModel:
    """Build a SumModel from the body of a model document."""
    _check_keys(doc, _MODEL_KEYS, "model")
    law = _require(doc, "law", "model")
    if law not in ("rademacher", "subsample"):
        raise ModelError(f"unknown law {law!r}")
    has_components = "components" in doc
    has_generate = "generate" in doc
    if has_components == has_generate:
        raise ModelError("exactly one of 'components' or 'generate' is required")
    if has_components:
        specs = doc["components"]
        if not isinstance(specs, list) or not specs:
            raise ModelError("'components' must be a non-empty list")
        components = [_tensor_from_spec(s, base_dir) for s in specs]
    else:
        components = _generate_components(doc["generate"])

    try:
        if law == "rademacher":
            for key in ("sample_size", "with_replacement"):
                if key in doc:
                    raise ModelError(f"{key!r} is only valid for the subsample law")
            return SumModel.rademacher(components)
        sample_size = _int(_require(doc, "sample_size", "model"), "sample_size")
        with_replacement = doc.get("with_replacement", True)
        if not isinstance(with_replacement, bool):
            raise ModelError("with_replacement must be a boolean")
        return SumModel.subsample(components, sample_size, with_replacement)
    except ModelError:
        raise
    except EinbernError as exc:
        raise ModelError(str(exc)) from exc


def _grid_from_spec(spec) -> tuple:
    if isinstance(spec, dict):
        _check_keys(spec, _GRID_KEYS, "t_grid")
        start = float(_require(spec, "start", "t_grid"))
        stop = float(_require(spec, "stop", "t_grid"))
        num = _int(_require(spec, "num", "t_grid"), "num")
        if num < 1:
            raise ModelError("t_grid num must be positive")
        return tuple(float(t) for t in np.linspace(start, stop, num))
    if not isinstance(spec, list) or not spec:
        raise ModelError("t_grid must be a non-empty list or a start/stop/num object")
    return tuple(float(t) for t in spec)


def experiment_from_dict(doc: dict, base_dir: str = ".") -> ExperimentConfig:
    """Build an ExperimentConfig from the body of an experiment document."""
    _check_keys(doc, _EXPERIMENT_KEYS, "experiment")
    model = model_from_dict(_require(doc, "model", "experiment"), base_dir)
    trials = _int(_require(doc, "trials", "experiment"), "trials")
    grid = _grid_from_spec(_require(doc, "t_grid", "experiment"))
    seed = _int(_require(doc, "seed", "experiment"), "seed")
    slack = float(doc.get("confidence_slack", 3.0))
    theorem = doc.get("theorem", "auto")
    return ExperimentConfig(
        model=model,
        trials=trials,
        t_grid=grid,
        seed=seed,
        confidence_slack=slack,
        theorem=theorem,
    )


def _load_document(path) -> tuple:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ModelError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ModelError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ModelError("config document must be a JSON object")
    if doc.get("schema") != SCHEMA_VERSION:
        raise ModelError(
            f"config must declare \"schema\": {SCHEMA_VERSION}, "
            f"got {doc.get('schema')!r}"
        )
    body = {k: v for k, v in doc.items() if k != "schema"}
    return body, os.path.dirname(os.path.abspath(path))


def load_model(path) -> SumModel:
    """Read a model document from disk."""
    body, base_dir = _load_document(path)
    return model_from_dict(body, base_dir)


def load_experiment(path) -> ExperimentConfig:
    """Read an experiment document from disk."""
    body, base_dir = _load_document(path)
    return experiment_from_dict(body, base_dir)
