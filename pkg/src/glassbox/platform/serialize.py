"""Stable document forms for every core object, plus PNG sample codecs."""

from __future__ import annotations

import base64
import io
from typing import Any

import numpy as np
from PIL import Image as PILImage

from glassbox.core.types import (
    Attribution,
    Column,
    FeatureSchema,
    ImageSample,
    Prediction,
    Sample,
    TabularSample,
    TextSample,
)
from glassbox.errors import ValidationError
from glassbox.evaluation import AgreementReport
from glassbox.explainers.baseline import (
    Baseline,
    ImageMeanColor,
    TabularMeans,
    TextRemoval,
)
from glassbox.explainers.permutation import GlobalImportance
from glassbox.models import Model
from glassbox.models.featurize import (
    BagOfWords,
    Featurization,
    PatchMeans,
    TabularStandardizer,
)
from glassbox.models.linear import LinearModel
from glassbox.models.mlp import MLPModel
from glassbox.models.tree import TreeModel, TreeNode
from glassbox.profiler import DatasetProfile


# -- schemas and samples ---------------------------------------------------

def schema_to_doc(schema: FeatureSchema) -> dict:
    return {
        "columns": [
            {
                "name": c.name,
                "kind": c.kind,
                **({"categories": list(c.categories)} if c.categories else {}),
            }
            for c in schema.columns
        ]
    }


def schema_from_doc(doc: dict) -> FeatureSchema:
    columns = []
    for c in doc["columns"]:
        categories = tuple(c["categories"]) if "categories" in c else None
        columns.append(Column(c["name"], c["kind"], categories))
    return FeatureSchema(tuple(columns))


def encode_image_png(sample: ImageSample) -> bytes:
    img = PILImage.fromarray(np.asarray(sample.pixels, dtype=np.uint8), mode="RGB")
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


def decode_image_png(data: bytes) -> ImageSample:
    img = PILImage.open(io.BytesIO(data)).convert("RGB")
    px = np.asarray(img, dtype=np.uint8)
    return ImageSample(height=px.shape[0], width=px.shape[1], pixels=px)


def sample_to_doc(sample: Sample) -> dict:
    if isinstance(sample, TabularSample):
        return {"kind": "tabular", "values": list(sample.values)}
    if isinstance(sample, TextSample):
        return {"kind": "text", "text": sample.raw}
    png = encode_image_png(sample)
    return {
        "kind": "image",
        "height": sample.height,
        "width": sample.width,
        "png_base64": base64.b64encode(png).decode("ascii"),
    }


def sample_from_doc(doc: dict) -> Sample:
    kind = doc.get("kind")
    if kind == "tabular":
        values = tuple(
            float(v) if isinstance(v, int) and not isinstance(v, bool) else v
            for v in doc["values"]
        )
        return TabularSample(values)
    if kind == "text":
        return TextSample(doc["text"])
    if kind == "image":
        if "png_base64" in doc:
            sample = decode_image_png(base64.b64decode(doc["png_base64"]))
        elif "pixels" in doc:
            raw = np.asarray(doc["pixels"])
            if raw.ndim != 3 or raw.shape[2] != 3:
                raise ValidationError("pixels must be a height x width x 3 array")
            if raw.min() < 0 or raw.max() > 255:
                raise ValidationError("pixel channels must be 8-bit (0..255)")
            px = raw.astype(np.uint8)
            sample = ImageSample(height=px.shape[0], width=px.shape[1], pixels=px)
        else:
            raise ValidationError("image sample needs png_base64 or pixels")
        declared = (doc.get("height"), doc.get("width"))
        if declared != (None, None) and declared != (sample.height, sample.width):
            raise ValidationError("declared image dimensions do not match the raster")
        return sample
    raise ValidationError(f"unknown sample kind {kind!r}")


# -- featurizations and models ----------------------------------------------

def featurization_to_doc(f: Featurization) -> dict:
    if isinstance(f, TabularStandardizer):
        return {
            "kind": f.kind,
            "schema": schema_to_doc(f.schema),
            "means": list(f.means),
            "stds": list(f.stds),
        }
    if isinstance(f, BagOfWords):
        return {"kind": f.kind, "vocabulary": list(f.vocabulary)}
    return {"kind": f.kind, "rows": f.rows, "cols": f.cols}


def featurization_from_doc(doc: dict) -> Featurization:
    kind = doc["kind"]
    if kind == "tabular_standardized":
        return TabularStandardizer(
            schema_from_doc(doc["schema"]),
            tuple(float(m) for m in doc["means"]),
            tuple(float(s) for s in doc["stds"]),
        )
    if kind == "bag_of_words":
        return BagOfWords(tuple(doc["vocabulary"]))
    if kind == "image_patch_means":
        return PatchMeans(rows=int(doc["rows"]), cols=int(doc["cols"]))
    raise ValidationError(f"unknown featurization kind {kind!r}")


def _matrix(a: np.ndarray) -> list:
    return [[float(v) for v in row] for row in np.asarray(a)]


def _vector(a: np.ndarray) -> list:
    return [float(v) for v in np.asarray(a)]


def model_to_payload(model: Model, baseline: Baseline | None = None) -> dict:
    """Canonical-form model document; the content hash of this is the model id."""
    doc: dict[str, Any] = {
        "model_kind": model.model_kind,
        "class_labels": list(model.class_labels),
    }
    if isinstance(model, LinearModel):
        doc.update(
            featurization=featurization_to_doc(model.featurization),
            weights=_matrix(model.weights),
            biases=_vector(model.biases),
        )
    elif isinstance(model, MLPModel):
        doc.update(
            featurization=featurization_to_doc(model.featurization),
            layers=[
                {"weights": _matrix(w), "biases": _vector(b)}
                for w, b in model.layers
            ],
        )
    elif isinstance(model, TreeModel):
        nodes = []
        for n in model.nodes:
            if n.is_leaf:
                nodes.append({"distribution": list(n.distribution or ())})
            else:
                node: dict[str, Any] = {
                    "feature": n.feature,
                    "left": n.left,
                    "right": n.right,
                }
                if n.categories is not None:
                    node["categories"] = list(n.categories)
                else:
                    node["threshold"] = n.threshold
                nodes.append(node)
        doc.update(schema=schema_to_doc(model.schema), nodes=nodes)
    else:
        raise ValidationError(f"cannot serialize model kind {type(model).__name__}")
    if baseline is not None:
        doc["baseline"] = baseline_to_doc(baseline)
    return doc


def model_from_payload(doc: dict) -> tuple[Model, Baseline | None]:
    kind = doc.get("model_kind")
    labels = tuple(doc["class_labels"])
    baseline = baseline_from_doc(doc["baseline"]) if "baseline" in doc else None
    if kind == "linear":
        model: Model = LinearModel(
            labels,
            featurization_from_doc(doc["featurization"]),
            np.asarray(doc["weights"], dtype=np.float64),
            np.asarray(doc["biases"], dtype=np.float64),
        )
    elif kind == "mlp":
        layers = [
            (
                np.asarray(layer["weights"], dtype=np.float64),
                np.asarray(layer["biases"], dtype=np.float64),
            )
            for layer in doc["layers"]
        ]
        model = MLPModel(labels, featurization_from_doc(doc["featurization"]), layers)
    elif kind == "tree":
        nodes = []
        for n in doc["nodes"]:
            if "distribution" in n:
                nodes.append(TreeNode(distribution=tuple(float(p) for p in n["distribution"])))
            else:
                nodes.append(TreeNode(
                    feature=int(n["feature"]),
                    threshold=float(n["threshold"]) if "threshold" in n else None,
                    categories=tuple(n["categories"]) if "categories" in n else None,
                    left=int(n["left"]),
                    right=int(n["right"]),
                ))
        model = TreeModel(labels, schema_from_doc(doc["schema"]), nodes)
    else:
        raise ValidationError(f"unknown model kind {kind!r}")
    return model, baseline


# -- baselines ---------------------------------------------------------------

def baseline_to_doc(baseline: Baseline) -> dict:
    if isinstance(baseline, TabularMeans):
        return {"kind": baseline.kind, "values": list(baseline.values)}
    if isinstance(baseline, TextRemoval):
        return {"kind": baseline.kind}
    return {"kind": baseline.kind, "color": list(baseline.color)}


def baseline_from_doc(doc: dict) -> Baseline:
    kind = doc.get("kind")
    if kind == "tabular_means":
        values = tuple(
            float(v) if isinstance(v, int) and not isinstance(v, bool) else v
            for v in doc["values"]
        )
        return TabularMeans(values)
    if kind == "text_removal":
        return TextRemoval()
    if kind == "image_mean_color":
        return ImageMeanColor(tuple(int(c) for c in doc["color"]))
    raise ValidationError(f"unknown baseline kind {kind!r}")


# -- results -----------------------------------------------------------------

def prediction_to_doc(p: Prediction) -> dict:
    return {
        "class_labels": list(p.class_labels),
        "probabilities": [float(x) for x in p.probabilities],
        "predicted_index": p.predicted_index,
        "predicted_class": p.predicted_class,
    }


def attribution_to_doc(a: Attribution) -> dict:
    return {
        "method": a.method,
        "target_class": a.target_class,
        "unit_kind": a.unit_kind,
        "units": list(a.units),
        "scores": [float(s) for s in a.scores],
        "baseline_value": a.baseline_value,
        "prediction_value": a.prediction_value,
        "seed": a.seed,
        "extras": {k: v for k, v in a.extras},
    }


def global_importance_to_doc(g: GlobalImportance) -> dict:
    return {
        "method": "permutation_importance",
        "feature_names": list(g.feature_names),
        "importances": [float(x) for x in g.importances],
        "raw_drops": [[float(d) for d in row] for row in g.raw_drops],
        "repeats": g.repeats,
        "seed": g.seed,
        "baseline_score": g.baseline_score,
    }


def profile_to_doc(p: DatasetProfile) -> dict:
    columns = []
    for c in p.columns:
        doc: dict[str, Any] = {
            "name": c.name,
            "inferred_kind": c.inferred_kind,
            "count": c.count,
            "missing_count": c.missing_count,
            "distinct_count": c.distinct_count,
        }
        if c.numeric is not None:
            doc["stats"] = {
                "min": c.numeric.minimum,
                "max": c.numeric.maximum,
                "mean": c.numeric.mean,
                "std": c.numeric.std,
                "q1": c.numeric.q1,
                "q2": c.numeric.q2,
                "q3": c.numeric.q3,
            }
            doc["histogram"] = [
                {"lower": b.lower, "upper": b.upper, "count": b.count}
                for b in c.histogram
            ]
        else:
            doc["top_values"] = [{"value": v, "count": n} for v, n in c.top_values]
        columns.append(doc)
    return {
        "row_count": p.row_count,
        "columns": columns,
        "warnings": [
            {"column": w.column, "kind": w.kind, "detail": w.detail}
            for w in p.warnings
        ],
        "correlation": {
            "columns": list(p.correlation_columns),
            "matrix": [list(row) for row in p.correlation],
            "excluded": [
                {"column": c, "reason": r} for c, r in p.correlation_excluded
            ],
            "method": p.correlation_method,
        },
    }


def agreement_report_to_doc(r: AgreementReport) -> dict:
    return {
        "scenario": r.scenario_id,
        "methods": list(r.methods),
        "k": r.k,
        "seed": r.seed,
        "pairs": [
            {
                "methods": [p.method_a, p.method_b],
                "per_sample": [
                    {
                        "sample_id": row.sample_id,
                        "k": row.k,
                        "spearman": row.spearman,
                        **(
                            {"spearman_note": row.spearman_note}
                            if row.spearman_note
                            else {}
                        ),
                        "topk_jaccard": row.topk_jaccard,
                        "sign_agreement": row.sign_agreement,
                    }
                    for row in p.per_sample
                ],
                "aggregates": {
                    metric: {"mean": m, "min": lo, "max": hi}
                    for metric, (m, lo, hi) in sorted(p.aggregates.items())
                },
            }
            for p in r.pairs
        ],
        "plausibility": {
            method: [
                {"sample_id": s.sample_id, "k": s.k, "overlap": s.overlap}
                for s in rows
            ]
            for method, rows in sorted(r.plausibility.items())
        },
        "coverage": {
            "evaluated": r.evaluated,
            "skipped": [{"subject": s, "reason": why} for s, why in r.skipped],
        },
    }
