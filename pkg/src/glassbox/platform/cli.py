"""Command-line interface: the user-controlled flows, scripted.

All subcommands print machine-readable canonical JSON on stdout (pass
--pretty for an indented human view) and exit nonzero with a categorized
error document on stderr when something fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

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
from glassbox.models import (
    TrainConfig,
    evaluate_accuracy,
    split_holdout,
    train_logistic,
    train_mlp,
    train_tree,
)
from glassbox.models.dataset import Dataset, drop_incomplete, text_dataset
from glassbox.platform.bundle import (
    Registry,
    load_bundle,
    load_tabular_csv,
    load_text_jsonl,
    load_image_dir,
)
from glassbox.platform.canonical import canonical_json
from glassbox.platform.scenarios import build_demo_data
from glassbox.platform.serialize import (
    agreement_report_to_doc,
    attribution_to_doc,
    decode_image_png,
    global_importance_to_doc,
    prediction_to_doc,
    profile_to_doc,
    sample_from_doc,
    schema_from_doc,
)
from glassbox.platform.service import ServiceConfig, serve
from glassbox.platform.store import ModelStore
from glassbox.explainers.baseline import baseline_from_dataset
from glassbox.profiler import infer_kind, profile, read_csv_table

EXIT_CODES = {
    "validation": 4,
    "not_found": 3,
    "incompatible": 5,
    "rank_deficient": 6,
    "constant_scores": 6,
    "internal": 70,
}


def _emit(doc, pretty: bool) -> None:
    if pretty:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(canonical_json(doc))


def _data_root(args) -> Path:
    root = args.data_root or os.environ.get("GLASSBOX_DATA_ROOT")
    if root is None and args.config:
        root = json.loads(Path(args.config).read_text(encoding="utf-8")).get("data_root")
    if root is None:
        raise ValidationError(
            "no data root: pass --data-root, set GLASSBOX_DATA_ROOT, or use --config"
        )
    return Path(root)


def _load_sample(path: Path):
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if doc.get("kind") == "image" and "png" in doc:
        png_path = Path(path).parent / doc["png"]
        return decode_image_png(png_path.read_bytes())
    return sample_from_doc(doc)


def _infer_tabular_schema(table) -> dict:
    """Schema document inferred from raw CSV columns via profiler rules."""
    columns = []
    for name, values in zip(table.names, table.columns):
        kind = infer_kind(values)
        column: dict = {"name": name, "kind": kind}
        if kind == "categorical":
            column["categories"] = sorted({v for v in values if v not in (None, "")})
        columns.append(column)
    return {"columns": columns}


def cmd_init(args) -> int:
    root = _data_root(args)
    root.mkdir(parents=True, exist_ok=True)
    ids = build_demo_data(root, seed=args.seed)
    _emit({"data_root": str(root), "scenarios": ids}, args.pretty)
    return 0


def cmd_train(args) -> int:
    root = _data_root(args)
    store = ModelStore(root / "models")
    config = TrainConfig(
        learning_rate=args.learning_rate,
        epochs=args.epochs,
        seed=args.seed,
        hidden_sizes=tuple(int(h) for h in args.hidden.split(",")) if args.hidden else (16,),
        max_depth=args.max_depth,
        min_leaf=args.min_leaf,
    )
    data_path = Path(args.data)
    if args.task == "tabular":
        table = read_csv_table(data_path)
        if args.label_column is None:
            raise ValidationError("tabular training needs --label-column")
        schema_doc = _infer_tabular_schema(table)
        schema_doc["columns"] = [
            c for c in schema_doc["columns"] if c["name"] != args.label_column
        ]
        schema = schema_from_doc(schema_doc)
        dataset = load_tabular_csv(data_path, schema, args.label_column)
    elif args.task == "text":
        dataset, _ = load_text_jsonl(data_path)
    else:
        dataset, _ = load_image_dir(data_path, Path(args.labels or data_path.parent / "labels.csv"))

    trainers = {"logistic": train_logistic, "mlp": train_mlp, "tree": train_tree}
    if args.model not in trainers:
        raise ValidationError(f"unknown model kind {args.model!r}")
    train_split, holdout = split_holdout(dataset, 0.2, config.seed)
    model = trainers[args.model](train_split, config)
    baseline = baseline_from_dataset(train_split)
    holdout_accuracy = evaluate_accuracy(model, drop_incomplete(holdout))
    model_id = store.save(
        model,
        metadata={
            "task": args.task,
            "trainer": args.model,
            "dataset_file": str(data_path),
            "holdout_accuracy": holdout_accuracy,
        },
        baseline=baseline,
    )
    _emit(
        {"model_id": model_id, "task": args.task, "holdout_accuracy": holdout_accuracy},
        args.pretty,
    )
    return 0


def cmd_predict(args) -> int:
    root = _data_root(args)
    store = ModelStore(root / "models")
    record = store.load(args.model)
    sample = _load_sample(args.input)
    prediction = record.model.predict_proba(sample)
    _emit({"model": args.model, "prediction": prediction_to_doc(prediction)}, args.pretty)
    return 0


def _registry_policy(root: Path, model_id: str):
    """Scenario policy for the model, when it belongs to a bundled scenario."""
    try:
        registry = Registry(root)
    except NotFoundError:
        return None, None
    bundle = registry.scenario_of_model(model_id)
    if bundle is None:
        return None, registry
    return bundle, registry


def cmd_explain(args) -> int:
    root = _data_root(args)
    store = ModelStore(root / "models")
    record = store.load(args.model)
    bundle, _registry = _registry_policy(root, args.model)

    if args.method == "permutation_importance":
        if bundle is None:
            raise IncompatibleError(
                "permutation importance needs a scenario-backed model (held-out data)"
            )
        importance = explain_global(
            record.model,
            bundle.holdout(complete=True),
            repeats=args.repeats,
            seed=args.seed,
            policy=bundle.policy(),
        )
        _emit({"model": args.model, "importance": global_importance_to_doc(importance)}, args.pretty)
        return 0

    if args.input is None:
        raise ValidationError("instance explanation needs --input")
    sample = _load_sample(args.input)
    baseline = record.baseline
    if baseline is None and bundle is not None:
        baseline = bundle.baseline()

    config = None
    if args.method == "lime":
        config = LimeConfig(
            num_samples=args.num_samples,
            kernel_width=args.kernel_width,
            ridge_lambda=args.ridge_lambda,
            seed=args.seed,
        )
    elif args.method == "kernel_shap" and baseline is not None:
        config = ShapConfig(
            baseline=baseline,
            mode=args.shap_mode,
            num_coalitions=args.num_coalitions,
            seed=args.seed,
        )
    elif args.method == "lrp":
        config = LrpConfig(epsilon=args.epsilon)

    kwargs = {}
    if bundle is not None:
        kwargs["policy"] = bundle.policy()
    attribution = explain(
        record.model,
        sample,
        args.method,
        config=config,
        baseline=baseline,
        target_class=args.target,
        seed=args.seed,
        **kwargs,
    )
    _emit({"model": args.model, "attribution": attribution_to_doc(attribution)}, args.pretty)
    return 0


def cmd_profile(args) -> int:
    table = read_csv_table(Path(args.data))
    _emit(profile_to_doc(profile(table)), args.pretty)
    return 0


def cmd_agree(args) -> int:
    root = _data_root(args)
    registry = Registry(root)
    bundle = registry.scenario(args.scenario)
    record = registry.model_record(bundle.default_model_id)
    baseline = record.baseline or bundle.baseline()
    case = bundle.eval_case(record.model, baseline)
    report = agreement_report(
        case,
        [m.strip() for m in args.methods.split(",") if m.strip()],
        k=args.k,
        seed=args.seed,
    )
    _emit(agreement_report_to_doc(report), args.pretty)
    return 0


def cmd_serve(args) -> int:
    root = _data_root(args)
    config = ServiceConfig.load(
        Path(args.config) if args.config else None,
        data_root=str(root),
        host=args.host,
        port=args.port,
    )
    serve(config)
    return 0


def cmd_bundle_validate(args) -> int:
    if args.path:
        bundle = load_bundle(Path(args.path))
    else:
        root = _data_root(args)
        if args.scenario is None:
            raise ValidationError("bundle validate needs --path or --scenario")
        bundle = load_bundle(root / "scenarios" / args.scenario)
    _emit(
        {
            "ok": True,
            "id": bundle.id,
            "task": bundle.task,
            "samples": len(bundle.demo),
            "models": bundle.model_ids,
            "methods": list(bundle.methods),
        },
        args.pretty,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glassbox",
        description="Train, predict, explain, profile, and score explanation agreement.",
    )
    parser.add_argument("--data-root", help="data root directory (or GLASSBOX_DATA_ROOT)")
    parser.add_argument("--config", help="JSON config file: data_root, host, port, default_seed")
    parser.add_argument("--pretty", action="store_true", help="indent output for humans")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init", help="materialize the bundled demo scenarios")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_init)

    p = sub.add_parser("train", help="train a model and store it")
    p.add_argument("--task", required=True, choices=["tabular", "text", "image"])
    p.add_argument("--model", required=True, choices=["logistic", "mlp", "tree"])
    p.add_argument("--data", required=True, help="CSV (tabular), JSONL (text), or image dir")
    p.add_argument("--labels", help="labels CSV for image training")
    p.add_argument("--label-column", help="label column name for tabular training")
    p.add_argument("--learning-rate", type=float, default=0.1)
    p.add_argument("--epochs", type=int, default=200)
    p.add_argument("--hidden", help="comma-separated hidden sizes (MLP)")
    p.add_argument("--max-depth", type=int, default=5)
    p.add_argument("--min-leaf", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="classify one sample document")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True, help="sample JSON file")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("explain", help="explain one prediction (or the whole model)")
    p.add_argument("--model", required=True)
    p.add_argument("--method", required=True,
                   choices=["lime", "kernel_shap", "exact_shapley", "lrp",
                            "permutation_importance"])
    p.add_argument("--input", help="sample JSON file (instance methods)")
    p.add_argument("--target", help="target class (defaults to the prediction)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--num-samples", type=int, default=1000, help="LIME perturbations")
    p.add_argument("--kernel-width", type=float, default=None)
    p.add_argument("--ridge-lambda", type=float, default=1.0)
    p.add_argument("--shap-mode", default="auto",
                   choices=["auto", "exact_enumeration", "sampled"])
    p.add_argument("--num-coalitions", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=0.0, help="LRP epsilon")
    p.add_argument("--repeats", type=int, default=5, help="permutation repeats")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("profile", help="dataset information for a CSV")
    p.add_argument("--data", required=True)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("agree", help="cross-method agreement report for a scenario")
    p.add_argument("--scenario", required=True)
    p.add_argument("--methods", required=True, help="comma-separated method names")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_agree)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default=None)
    p.add_argument("--port", type=int, default=None)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("bundle", help="bundle operations")
    bundle_sub = p.add_subparsers(dest="bundle_command", required=True)
    v = bundle_sub.add_parser("validate", help="validate a scenario bundle")
    v.add_argument("--path", help="bundle directory")
    v.add_argument("--scenario", help="scenario id under the data root")
    v.set_defaults(func=cmd_bundle_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GlassboxError as exc:
        doc = {"error": {"category": exc.category, "message": str(exc)}}
        print(json.dumps(doc), file=sys.stderr)
        return EXIT_CODES.get(exc.category, 70)
    except FileNotFoundError as exc:
        print(json.dumps({"error": {"category": "not_found", "message": str(exc)}}),
              file=sys.stderr)
        return EXIT_CODES["not_found"]


if __name__ == "__main__":
    sys.exit(main())
