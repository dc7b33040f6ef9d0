"""Content-addressed model registry on disk.

A model's id is the hash of its canonical payload, so identical models
collapse to one entry and any payload tampering is detected on load.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from pathlib import Path

from glassbox.errors import NotFoundError, ValidationError
from glassbox.explainers.baseline import Baseline
from glassbox.models import Model
from glassbox.platform.canonical import canonical_json, content_hash
from glassbox.platform.serialize import model_from_payload, model_to_payload


@dataclass
class ModelRecord:
    id: str
    model: Model
    baseline: Baseline | None
    metadata: dict
    payload: dict


class ModelStore:
    def __init__(self, root: Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, model_id: str) -> Path:
        if not model_id.isalnum():
            raise ValidationError(f"malformed model id {model_id!r}")
        return self.root / f"{model_id}.json"

    def save(
        self,
        model: Model,
        metadata: dict | None = None,
        baseline: Baseline | None = None,
    ) -> str:
        """Persist the model; returns its content-addressed id."""
        payload = model_to_payload(model, baseline)
        model_id = content_hash(payload)
        meta = dict(metadata or {})
        meta.setdefault("created_at", time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()))
        record = {"id": model_id, "payload": payload, "metadata": meta}
        path = self._path(model_id)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(canonical_json(record), encoding="utf-8")
        os.replace(tmp, path)
        return model_id

    def load(self, model_id: str) -> ModelRecord:
        path = self._path(model_id)
        if not path.exists():
            raise NotFoundError(f"no model with id {model_id!r}")
        try:
            record = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: corrupt model file: {exc}") from exc
        payload = record.get("payload")
        if payload is None:
            raise ValidationError(f"{path}: missing payload")
        actual = content_hash(payload)
        if actual != model_id or record.get("id") != model_id:
            raise ValidationError(
                f"{path}: hash mismatch (payload hashes to {actual}, expected {model_id})"
            )
        model, baseline = model_from_payload(payload)
        return ModelRecord(
            id=model_id,
            model=model,
            baseline=baseline,
            metadata=record.get("metadata", {}),
            payload=payload,
        )

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.json"))

    def exists(self, model_id: str) -> bool:
        return self._path(model_id).exists()
