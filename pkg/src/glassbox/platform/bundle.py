"""Scenario bundles: packaged tasks (dataset, demo samples, models, policy).

Bundle layout under <data_root>/scenarios/<id>/:

    manifest.json        id, title, task, dataset ref, demo samples,
                         model ids, method policy, holdout split
    dataset.csv          tabular: UTF-8 CSV, header row, empty cell = missing
    dataset.jsonl        text: one {"id","text","label"} record per line
    images/ + labels.csv image: PNG files plus filename,label rows
    demo/*.png           image demo samples
    annotations.json     optional {sample_id: [unit ids]}

Models live in the shared content-addressed store at <data_root>/models/.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

from glassbox.core.image import segment_grid, segment_unit_id
from glassbox.core.text import token_unit_id, tokenize
from glassbox.core.types import (
    Cell,
    FeatureSchema,
    HumanAnnotation,
    Sample,
    TabularSample,
    TextSample,
)
from glassbox.errors import NotFoundError, ValidationError
from glassbox.evaluation import ScenarioEvalCase
from glassbox.explainers.baseline import Baseline, baseline_from_dataset
from glassbox.explainers.dispatch import MethodPolicy
from glassbox.models import Dataset, Model, split_holdout
from glassbox.models.dataset import drop_incomplete
from glassbox.models.featurize import PatchMeans
from glassbox.platform.serialize import decode_image_png, sample_from_doc, schema_from_doc
from glassbox.platform.store import ModelStore

TASKS = ("text", "image", "tabular")
KNOWN_METHODS = ("lime", "kernel_shap", "exact_shapley", "lrp", "permutation_importance")

TRUE_WORDS = {"true", "yes", "1"}
FALSE_WORDS = {"false", "no", "0"}


def parse_cell(raw: str, column) -> Cell:
    """Parse one CSV cell according to its schema column."""
    if raw == "":
        return None
    if column.kind == "numeric":
        try:
            return float(raw)
        except ValueError as exc:
            raise ValidationError(
                f"column {column.name!r}: cannot parse {raw!r} as a number"
            ) from exc
    if column.kind == "boolean":
        lowered = raw.strip().lower()
        if lowered in TRUE_WORDS:
            return True
        if lowered in FALSE_WORDS:
            return False
        raise ValidationError(f"column {column.name!r}: {raw!r} is not boolean")
    if raw not in (column.categories or ()):
        raise ValidationError(
            f"column {column.name!r}: unknown category {raw!r}"
        )
    return raw


def load_tabular_csv(
    path: Path, schema: FeatureSchema, label_column: str
) -> Dataset:
    if not path.exists():
        raise NotFoundError(f"dataset file not found: {path}")
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise ValidationError(f"{path}: empty CSV")
        expected = list(schema.names) + [label_column]
        if header != expected:
            raise ValidationError(
                f"{path}: header {header} does not match schema + label {expected}"
            )
        rows: list[tuple[Cell, ...]] = []
        labels: list[str] = []
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(expected):
                raise ValidationError(
                    f"{path}:{line_no}: expected {len(expected)} cells, got {len(row)}"
                )
            try:
                cells = tuple(
                    parse_cell(raw, col) for raw, col in zip(row, schema.columns)
                )
            except ValidationError as exc:
                raise ValidationError(f"{path}:{line_no}: {exc}") from exc
            label = row[-1]
            if label == "":
                raise ValidationError(f"{path}:{line_no}: missing label")
            rows.append(cells)
            labels.append(label)
    if not rows:
        raise ValidationError(f"{path}: no data rows")
    return Dataset([TabularSample(r) for r in rows], labels, schema)


def load_text_jsonl(path: Path) -> tuple[Dataset, list[str]]:
    """Returns the dataset plus per-record ids."""
    if not path.exists():
        raise NotFoundError(f"dataset file not found: {path}")
    texts: list[str] = []
    labels: list[str] = []
    ids: list[str] = []
    for line_no, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}:{line_no}: invalid JSON: {exc}") from exc
        for key in ("id", "text", "label"):
            if key not in record:
                raise ValidationError(f"{path}:{line_no}: missing {key!r}")
        ids.append(str(record["id"]))
        texts.append(record["text"])
        labels.append(record["label"])
    if not texts:
        raise ValidationError(f"{path}: no records")
    return Dataset([TextSample(t) for t in texts], labels), ids


def load_image_dir(images_dir: Path, labels_file: Path) -> tuple[Dataset, list[str]]:
    if not labels_file.exists():
        raise NotFoundError(f"labels file not found: {labels_file}")
    samples: list[Sample] = []
    labels: list[str] = []
    names: list[str] = []
    with labels_file.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != ["filename", "label"]:
            raise ValidationError(f"{labels_file}: expected header filename,label")
        for line_no, row in enumerate(reader, start=2):
            if len(row) != 2:
                raise ValidationError(f"{labels_file}:{line_no}: expected 2 cells")
            image_path = images_dir / row[0]
            if not image_path.exists():
                raise NotFoundError(f"{labels_file}:{line_no}: image not found: {image_path}")
            samples.append(decode_image_png(image_path.read_bytes()))
            labels.append(row[1])
            names.append(row[0])
    if not samples:
        raise ValidationError(f"{labels_file}: no images listed")
    return Dataset(samples, labels), names


@dataclass
class ScenarioBundle:
    id: str
    title: str
    task: str
    path: Path
    dataset: Dataset
    demo: list[tuple[str, Sample]]
    demo_labels: dict[str, str]
    model_ids: list[str]
    default_model_id: str
    methods: tuple[str, ...]
    annotations: dict[str, HumanAnnotation] = field(default_factory=dict)
    holdout_fraction: float = 0.2
    holdout_seed: int = 0

    def policy(self) -> MethodPolicy:
        return MethodPolicy({self.task: self.methods})

    def baseline(self) -> Baseline:
        return baseline_from_dataset(self.dataset)

    def holdout(self, complete: bool = False) -> Dataset:
        _, held = split_holdout(self.dataset, self.holdout_fraction, self.holdout_seed)
        return drop_incomplete(held) if complete else held

    def train_split(self) -> Dataset:
        train, _ = split_holdout(self.dataset, self.holdout_fraction, self.holdout_seed)
        return train

    def eval_case(self, model: Model, baseline: Baseline) -> ScenarioEvalCase:
        return ScenarioEvalCase(
            scenario_id=self.id,
            samples=list(self.demo),
            model=model,
            baseline=baseline,
            annotations=dict(self.annotations),
            policy=self.policy(),
        )


def expected_unit_ids(sample: Sample, model: Model, schema: FeatureSchema | None) -> set[str]:
    """The unit-identifier space an annotation must resolve against."""
    if sample.kind == "text":
        return {token_unit_id(t, p) for t, p in tokenize(sample.raw)}  # type: ignore[union-attr]
    if sample.kind == "tabular":
        if schema is None:
            raise ValidationError("tabular annotation needs a schema")
        return set(schema.names)
    featurization = getattr(model, "featurization", None)
    if not isinstance(featurization, PatchMeans):
        raise ValidationError("image annotation needs a patch-mean model")
    segmap = segment_grid(sample, featurization.rows, featurization.cols)  # type: ignore[arg-type]
    return {segment_unit_id(s) for s in range(segmap.segment_count)}


def _require(manifest: dict, key: str, context: str):
    if key not in manifest:
        raise ValidationError(f"{context}: missing required key {key!r}")
    return manifest[key]


def load_bundle(path: Path, store: ModelStore | None = None) -> ScenarioBundle:
    """Load and fully validate one scenario directory.

    Every failure names the offending file (and sample/model where it has
    one). Referenced models are resolved through the shared store, found at
    ../../models relative to the bundle unless one is passed in.
    """
    path = Path(path)
    manifest_path = path / "manifest.json"
    if not manifest_path.exists():
        raise NotFoundError(f"manifest not found: {manifest_path}")
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{manifest_path}: invalid JSON: {exc}") from exc
    ctx = str(manifest_path)

    scenario_id = _require(manifest, "id", ctx)
    title = _require(manifest, "title", ctx)
    task = _require(manifest, "task", ctx)
    if task not in TASKS:
        raise ValidationError(f"{ctx}: unknown task {task!r}")

    dataset_ref = _require(manifest, "dataset", ctx)
    schema: FeatureSchema | None = None
    if task == "tabular":
        schema = schema_from_doc(_require(dataset_ref, "schema", ctx))
        dataset = load_tabular_csv(
            path / _require(dataset_ref, "file", ctx),
            schema,
            _require(dataset_ref, "label_column", ctx),
        )
    elif task == "text":
        dataset, _ = load_text_jsonl(path / _require(dataset_ref, "file", ctx))
    else:
        dataset, _ = load_image_dir(
            path / _require(dataset_ref, "images_dir", ctx),
            path / _require(dataset_ref, "labels_file", ctx),
        )

    demo_entries = _require(manifest, "demo", ctx)
    if not demo_entries:
        raise ValidationError(f"{ctx}: demo sample list is empty")
    demo: list[tuple[str, Sample]] = []
    demo_labels: dict[str, str] = {}
    for entry in demo_entries:
        sample_id = _require(entry, "id", f"{ctx}: demo entry")
        label = _require(entry, "label", f"{ctx}: demo sample {sample_id!r}")
        sctx = f"{ctx}: demo sample {sample_id!r}"
        if task == "tabular":
            values = _require(entry, "values", sctx)
            assert schema is not None
            if len(values) != len(schema.columns):
                raise ValidationError(f"{sctx}: expected {len(schema.columns)} values")
            sample = sample_from_doc({"kind": "tabular", "values": values})
        elif task == "text":
            sample = TextSample(_require(entry, "text", sctx))
        else:
            file_name = _require(entry, "file", sctx)
            image_path = path / file_name
            if not image_path.exists():
                raise NotFoundError(f"{sctx}: file not found: {image_path}")
            sample = decode_image_png(image_path.read_bytes())
        if sample_id in demo_labels:
            raise ValidationError(f"{sctx}: duplicate sample id")
        demo.append((sample_id, sample))
        demo_labels[sample_id] = label

    model_ids = _require(manifest, "models", ctx)
    if not model_ids:
        raise ValidationError(f"{ctx}: scenario needs at least one model")
    default_model_id = manifest.get("default_model", model_ids[0])
    if default_model_id not in model_ids:
        raise ValidationError(f"{ctx}: default_model {default_model_id!r} not in models")

    if store is None:
        store = ModelStore(path.parent.parent / "models")
    records = {}
    for model_id in model_ids:
        try:
            records[model_id] = store.load(model_id)
        except (NotFoundError, ValidationError) as exc:
            raise ValidationError(f"{ctx}: model {model_id!r}: {exc}") from exc
        if records[model_id].model.task != task:
            raise ValidationError(
                f"{ctx}: model {model_id!r} is a {records[model_id].model.task} "
                f"model in a {task} scenario"
            )
        label_set = set(records[model_id].model.class_labels)
        for sample_id, label in demo_labels.items():
            if label not in label_set:
                raise ValidationError(
                    f"{ctx}: demo sample {sample_id!r} label {label!r} is not "
                    f"in model {model_id!r} labels {sorted(label_set)}"
                )

    methods = tuple(_require(manifest, "methods", ctx))
    if not methods:
        raise ValidationError(f"{ctx}: methods list is empty")
    for m in methods:
        if m not in KNOWN_METHODS:
            raise ValidationError(f"{ctx}: unknown method {m!r}")

    annotations: dict[str, HumanAnnotation] = {}
    if "annotations_file" in manifest:
        ann_path = path / manifest["annotations_file"]
        if not ann_path.exists():
            raise NotFoundError(f"{ctx}: annotations file not found: {ann_path}")
        try:
            raw = json.loads(ann_path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{ann_path}: invalid JSON: {exc}") from exc
        default_model = records[default_model_id].model
        demo_map = dict(demo)
        for sample_id, units in raw.items():
            if sample_id not in demo_map:
                raise ValidationError(
                    f"{ann_path}: annotation for unknown sample {sample_id!r}"
                )
            valid = expected_unit_ids(demo_map[sample_id], default_model, schema)
            bad = set(units) - valid
            if bad:
                raise ValidationError(
                    f"{ann_path}: sample {sample_id!r} has unresolvable units {sorted(bad)}"
                )
            annotations[sample_id] = HumanAnnotation(sample_id, frozenset(units))

    holdout = manifest.get("holdout", {})
    return ScenarioBundle(
        id=scenario_id,
        title=title,
        task=task,
        path=path,
        dataset=dataset,
        demo=demo,
        demo_labels=demo_labels,
        model_ids=list(model_ids),
        default_model_id=default_model_id,
        methods=methods,
        annotations=annotations,
        holdout_fraction=float(holdout.get("fraction", 0.2)),
        holdout_seed=int(holdout.get("seed", 0)),
    )


class Registry:
    """Immutable-after-load view of a data root: scenarios plus the model store."""

    def __init__(self, data_root: Path):
        self.data_root = Path(data_root)
        scenarios_dir = self.data_root / "scenarios"
        if not scenarios_dir.exists():
            raise NotFoundError(
                f"no scenarios directory under {self.data_root}; run `glassbox init`"
            )
        self.store = ModelStore(self.data_root / "models")
        self.scenarios: dict[str, ScenarioBundle] = {}
        for entry in sorted(scenarios_dir.iterdir()):
            if entry.is_dir():
                bundle = load_bundle(entry, self.store)
                self.scenarios[bundle.id] = bundle
        if not self.scenarios:
            raise NotFoundError(f"no scenarios found under {scenarios_dir}")
        self._model_cache: dict[str, object] = {}

    def scenario(self, scenario_id: str) -> ScenarioBundle:
        bundle = self.scenarios.get(scenario_id)
        if bundle is None:
            raise NotFoundError(f"unknown scenario {scenario_id!r}")
        return bundle

    def model_record(self, model_id: str):
        record = self._model_cache.get(model_id)
        if record is None:
            record = self.store.load(model_id)
            self._model_cache[model_id] = record
        return record

    def scenario_of_model(self, model_id: str) -> ScenarioBundle | None:
        for bundle in self.scenarios.values():
            if model_id in bundle.model_ids:
                return bundle
        return None
