"""HTTP service over an immutable scenario registry and an append-only store.

Request handling is stateless; training is the one long-running operation
and runs as an asynchronous job (POST /train returns a job id to poll).
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass
from pathlib import Path

from fastapi import Body, FastAPI
from fastapi.responses import JSONResponse

from glassbox.errors import (
    GlassboxError,
    IncompatibleError,
    NotFoundError,
    ValidationError,
)
from glassbox.evaluation import agreement_report
from glassbox.explainers.dispatch import LrpConfig, explain, explain_global
from glassbox.explainers.lime import LimeConfig
from glassbox.explainers.shapley import ShapConfig
from glassbox.models import TrainConfig, evaluate_accuracy, split_holdout
from glassbox.models.dataset import Dataset, drop_incomplete, image_dataset, text_dataset
from glassbox.platform.bundle import Registry, ScenarioBundle
from glassbox.platform.serialize import (
    agreement_report_to_doc,
    attribution_to_doc,
    global_importance_to_doc,
    prediction_to_doc,
    profile_to_doc,
    sample_from_doc,
    sample_to_doc,
    schema_from_doc,
    schema_to_doc,
)
from glassbox.profiler import profile, read_csv_table

STATUS_BY_CATEGORY = {
    "validation": 400,
    "not_found": 404,
    "incompatible": 422,
    "rank_deficient": 422,
    "constant_scores": 422,
}


@dataclass
class ServiceConfig:
    data_root: Path
    host: str = "127.0.0.1"
    port: int = 8808
    default_seed: int = 0

    def __post_init__(self) -> None:
        self.data_root = Path(self.data_root)

    @classmethod
    def load(cls, path: Path | None = None, **overrides) -> "ServiceConfig":
        values: dict = {}
        if path is not None:
            values.update(json.loads(Path(path).read_text(encoding="utf-8")))
        values.update({k: v for k, v in overrides.items() if v is not None})
        if "data_root" not in values:
            raise ValidationError("configuration needs a data_root")
        values["data_root"] = Path(values["data_root"])
        return cls(**values)


class JobManager:
    """In-memory training-job table; jobs run on daemon threads."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._jobs: dict[str, dict] = {}

    def submit(self, target) -> str:
        job_id = uuid.uuid4().hex[:12]
        with self._lock:
            self._jobs[job_id] = {"id": job_id, "status": "pending"}

        def run() -> None:
            with self._lock:
                self._jobs[job_id]["status"] = "running"
            try:
                result = target()
                with self._lock:
                    self._jobs[job_id].update(status="done", **result)
            except Exception as exc:  # job failures surface via polling
                with self._lock:
                    self._jobs[job_id].update(status="failed", error=str(exc))

        threading.Thread(target=run, daemon=True).start()
        return job_id

    def get(self, job_id: str) -> dict:
        with self._lock:
            job = self._jobs.get(job_id)
            if job is None:
                raise NotFoundError(f"unknown job {job_id!r}")
            return dict(job)


def _scenario_descriptor(bundle: ScenarioBundle, registry: Registry) -> dict:
    models = []
    for model_id in bundle.model_ids:
        record = registry.model_record(model_id)
        models.append({
            "id": model_id,
            "model_kind": record.model.model_kind,
            "metadata": record.metadata,
        })
    descriptor = {
        "id": bundle.id,
        "title": bundle.title,
        "task": bundle.task,
        "methods": list(bundle.methods),
        "sample_count": len(bundle.demo),
        "models": models,
        "default_model": bundle.default_model_id,
        "has_annotations": bool(bundle.annotations),
    }
    if bundle.task == "tabular" and bundle.dataset.schema is not None:
        descriptor["schema"] = schema_to_doc(bundle.dataset.schema)
    return descriptor


def _parse_method_config(method: str, doc: dict | None, seed: int, baseline):
    doc = doc or {}
    if method == "lime":
        return LimeConfig(
            num_samples=int(doc.get("num_samples", 1000)),
            kernel_width=doc.get("kernel_width"),
            ridge_lambda=float(doc.get("ridge_lambda", 1.0)),
            seed=seed,
        )
    if method == "kernel_shap":
        return ShapConfig(
            baseline=baseline,
            mode=doc.get("mode", "auto"),
            num_coalitions=doc.get("num_coalitions"),
            seed=seed,
        )
    if method == "lrp":
        return LrpConfig(epsilon=float(doc.get("epsilon", 0.0)))
    return None


def _dataset_from_request(doc: dict, registry: Registry, task: str) -> Dataset:
    if "scenario" in doc:
        bundle = registry.scenario(doc["scenario"])
        if bundle.task != task:
            raise IncompatibleError(
                f"scenario {bundle.id!r} is a {bundle.task} task, requested {task}"
            )
        return bundle.train_split()
    if task == "tabular":
        schema = schema_from_doc(doc["schema"])
        samples = [
            sample_from_doc({"kind": "tabular", "values": row}) for row in doc["rows"]
        ]
        return Dataset(samples, list(doc["labels"]), schema)
    if task == "text":
        return text_dataset(list(doc["texts"]), list(doc["labels"]))
    images = [sample_from_doc(d) for d in doc["images"]]
    return image_dataset(images, list(doc["labels"]))  # type: ignore[arg-type]


def create_app(config: ServiceConfig) -> FastAPI:
    registry = Registry(config.data_root)
    jobs = JobManager()
    app = FastAPI(title="glassbox", version="0.1.0")

    try:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=["*"],
            allow_methods=["*"],
            allow_headers=["*"],
        )
    except ImportError:  # CORS support is optional
        pass

    import os

    ui_dir = os.environ.get("GLASSBOX_UI_DIR") or str(config.data_root / "ui")
    if Path(ui_dir, "index.html").exists():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    @app.exception_handler(GlassboxError)
    async def handle_domain_error(_request, exc: GlassboxError):
        status = STATUS_BY_CATEGORY.get(exc.category, 500)
        body = {"error": {"category": exc.category, "message": str(exc)}}
        if status >= 500:
            body["error"]["correlation_id"] = uuid.uuid4().hex[:12]
        return JSONResponse(status_code=status, content=body)

    @app.exception_handler(Exception)
    async def handle_internal_error(_request, exc: Exception):
        return JSONResponse(
            status_code=500,
            content={"error": {
                "category": "internal",
                "message": str(exc),
                "correlation_id": uuid.uuid4().hex[:12],
            }},
        )

    @app.get("/scenarios")
    def list_scenarios():
        return [
            _scenario_descriptor(bundle, registry)
            for bundle in registry.scenarios.values()
        ]

    @app.get("/scenarios/{scenario_id}")
    def get_scenario(scenario_id: str):
        return _scenario_descriptor(registry.scenario(scenario_id), registry)

    @app.get("/scenarios/{scenario_id}/samples")
    def get_samples(scenario_id: str):
        bundle = registry.scenario(scenario_id)
        return [
            {
                "id": sample_id,
                "label": bundle.demo_labels[sample_id],
                "sample": sample_to_doc(sample),
                "annotated_units": sorted(bundle.annotations[sample_id].relevant_units)
                if sample_id in bundle.annotations
                else None,
            }
            for sample_id, sample in bundle.demo
        ]

    @app.get("/models")
    def list_models():
        out = []
        for model_id in registry.store.list_ids():
            record = registry.model_record(model_id)
            out.append({
                "id": model_id,
                "model_kind": record.model.model_kind,
                "task": record.model.task,
                "class_labels": list(record.model.class_labels),
                "metadata": record.metadata,
            })
        return out

    @app.post("/models/{model_id}/predict")
    def predict(model_id: str, payload: dict = Body(...)):
        record = registry.model_record(model_id)
        if "sample" not in payload:
            raise ValidationError("request body needs a 'sample' document")
        sample = sample_from_doc(payload["sample"])
        return {"model": model_id, "prediction": prediction_to_doc(record.model.predict_proba(sample))}

    def _resolve_sample(payload: dict, task: str):
        if "sample" in payload:
            return sample_from_doc(payload["sample"])
        if "scenario" in payload and "sample_id" in payload:
            bundle = registry.scenario(payload["scenario"])
            for sample_id, sample in bundle.demo:
                if sample_id == payload["sample_id"]:
                    return sample
            raise NotFoundError(f"unknown sample {payload['sample_id']!r}")
        raise ValidationError("request needs 'sample' or 'scenario' + 'sample_id'")

    @app.post("/models/{model_id}/explain")
    def explain_model(model_id: str, payload: dict = Body(...)):
        record = registry.model_record(model_id)
        method = payload.get("method")
        if not method:
            raise ValidationError("request body needs a 'method'")
        seed = int(payload.get("seed", config.default_seed))
        bundle = registry.scenario_of_model(model_id)
        policy = bundle.policy() if bundle is not None else None
        if method == "permutation_importance":
            if bundle is None:
                raise IncompatibleError(
                    "permutation importance needs a scenario-backed model (held-out data)"
                )
            importance = explain_global(
                record.model,
                bundle.holdout(complete=True),
                repeats=int(payload.get("repeats", 5)),
                seed=seed,
                **({"policy": policy} if policy else {}),
            )
            return {"model": model_id, "importance": global_importance_to_doc(importance)}
        sample = _resolve_sample(payload, record.model.task)
        baseline = record.baseline
        if baseline is None and bundle is not None:
            baseline = bundle.baseline()
        cfg = _parse_method_config(method, payload.get("config"), seed, baseline)
        attribution = explain(
            record.model,
            sample,
            method,
            config=cfg,
            baseline=baseline,
            target_class=payload.get("target_class"),
            seed=seed,
            **({"policy": policy} if policy else {}),
        )
        return {"model": model_id, "attribution": attribution_to_doc(attribution)}

    @app.get("/models/{model_id}/permutation-importance")
    def permutation(model_id: str, seed: int | None = None, repeats: int = 5):
        record = registry.model_record(model_id)
        bundle = registry.scenario_of_model(model_id)
        if bundle is None:
            raise IncompatibleError(
                "permutation importance needs a scenario-backed model (held-out data)"
            )
        importance = explain_global(
            record.model,
            bundle.holdout(complete=True),
            repeats=repeats,
            seed=config.default_seed if seed is None else seed,
            policy=bundle.policy(),
        )
        return {"model": model_id, "importance": global_importance_to_doc(importance)}

    @app.get("/datasets/{dataset_id}/profile")
    def dataset_profile(dataset_id: str):
        bundle = registry.scenario(dataset_id)
        if bundle.task != "tabular":
            raise IncompatibleError("profiling covers tabular datasets only")
        table = read_csv_table(bundle.path / "dataset.csv")
        return {"dataset": dataset_id, "profile": profile_to_doc(profile(table))}

    @app.post("/agreement")
    def agreement(payload: dict = Body(...)):
        scenario_id = payload.get("scenario")
        methods = payload.get("methods")
        if not scenario_id or not methods:
            raise ValidationError("request needs 'scenario' and 'methods'")
        bundle = registry.scenario(scenario_id)
        record = registry.model_record(bundle.default_model_id)
        baseline = record.baseline or bundle.baseline()
        case = bundle.eval_case(record.model, baseline)
        report = agreement_report(
            case,
            list(methods),
            k=payload.get("k"),
            seed=int(payload.get("seed", config.default_seed)),
        )
        return agreement_report_to_doc(report)

    @app.post("/train")
    def train(payload: dict = Body(...)):
        task = payload.get("task")
        if task not in ("tabular", "text", "image"):
            raise ValidationError(f"unknown task {task!r}")
        if "dataset" not in payload:
            raise ValidationError("request needs a 'dataset'")
        trainer = payload.get("trainer", "logistic")
        if trainer not in ("logistic", "mlp", "tree"):
            raise ValidationError(f"unknown trainer {trainer!r}")
        cfg_doc = payload.get("config", {})
        train_config = TrainConfig(
            learning_rate=float(cfg_doc.get("learning_rate", 0.1)),
            epochs=int(cfg_doc.get("epochs", 200)),
            seed=int(cfg_doc.get("seed", config.default_seed)),
            hidden_sizes=tuple(cfg_doc.get("hidden_sizes", [16])),
            max_depth=int(cfg_doc.get("max_depth", 5)),
            min_leaf=int(cfg_doc.get("min_leaf", 2)),
        )
        dataset = _dataset_from_request(payload["dataset"], registry, task)

        def run_training() -> dict:
            from glassbox.models import train_logistic, train_mlp, train_tree

            trainers = {"logistic": train_logistic, "mlp": train_mlp, "tree": train_tree}
            train_split, holdout = split_holdout(dataset, 0.2, train_config.seed)
            model = trainers[trainer](train_split, train_config)
            from glassbox.explainers.baseline import baseline_from_dataset

            baseline = baseline_from_dataset(train_split)
            scored_holdout = drop_incomplete(holdout)
            model_id = registry.store.save(
                model,
                metadata={
                    "task": task,
                    "trainer": trainer,
                    "config": cfg_doc,
                    "holdout_accuracy": evaluate_accuracy(model, scored_holdout),
                },
                baseline=baseline,
            )
            return {"model_id": model_id}

        job_id = jobs.submit(run_training)
        return {"job_id": job_id}

    @app.get("/jobs/{job_id}")
    def job_status(job_id: str):
        return jobs.get(job_id)

    return app


def serve(config: ServiceConfig) -> None:
    """Run the service until interrupted."""
    import uvicorn

    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
