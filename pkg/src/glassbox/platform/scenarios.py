"""Builders for the three bundled demo scenarios.

All three are deterministic desk-scale analogues generated from a seed:

    transport  text tasks: five complaint categories about a bus service
    emblems    image task: 32x32 badges, one geometric emblem per make
    weather    tabular task: rain-tomorrow prediction with mixed columns

Each builder writes the bundle files, trains the scenario models on the
train split, saves them to the shared store, and returns the bundle path.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from glassbox.core.image import segment_grid
from glassbox.core.text import token_unit_id, tokenize
from glassbox.core.types import Column, FeatureSchema, ImageSample
from glassbox.models import (
    Dataset,
    TrainConfig,
    evaluate_accuracy,
    split_holdout,
    tabular_dataset,
    text_dataset,
    train_logistic,
    train_mlp,
    train_tree,
)
from glassbox.models.dataset import drop_incomplete, image_dataset
from glassbox.platform.canonical import canonical_json
from glassbox.platform.serialize import encode_image_png, schema_to_doc
from glassbox.platform.store import ModelStore

from glassbox.explainers.baseline import baseline_from_dataset


# -- transport: text classification ------------------------------------------

TRANSPORT_CORPUS: dict[str, list[str]] = {
    "ride_not_on_time": [
        "bus 4 was 20 minutes late again",
        "line 4 arrived late i waited 15 minutes in the cold",
        "the 4 bus is always delayed by several minutes",
        "waited 30 minutes the ride was late once more",
        "bus 4 came 10 minutes late to the depot stop",
        "my tram was delayed 12 minutes this morning",
        "the ride left 5 minutes early and i missed it",
        "again late the 4 showed up 25 minutes after schedule",
        "delayed ride waited forever at least 40 minutes",
        "the evening bus 4 was late by 8 minutes",
        "late again the schedule said 9 but it came 9 20",
        "every single morning the 4 runs minutes behind",
    ],
    "wrong_stop": [
        "the bus skipped my stop at central station",
        "driver passed the request stop without stopping",
        "bus did not stop at the market square stop",
        "my stop was missed even though i pressed the button",
        "the tram skipped two stops near the old station",
        "stop announcement was wrong and i got off at the wrong station",
        "it drove past the stop although people were waiting",
        "the display showed the wrong stop names all ride",
        "wrong stop called out we ended up at the north station",
        "bus ignored the stop and continued to the terminal",
        "the stop at park lane was skipped twice this week",
    ],
    "unfriendly_driver": [
        "the driver was rude and shouted at passengers",
        "driver slammed the door and was very unfriendly",
        "an impolite driver ignored my question completely",
        "the driver yelled at an elderly passenger",
        "rude driver refused to wait two seconds",
        "the driver was aggressive and unfriendly to tourists",
        "driver rolled his eyes and answered rudely",
        "very unfriendly driver no greeting just shouting",
        "the driver mocked a passenger loudly",
        "driver snapped at me for asking directions",
        "unfriendly and impatient driver at the main gate",
    ],
    "ticket_issue": [
        "ticket machine charged my card twice",
        "no refund after the fare machine failed",
        "the validator rejected my valid ticket",
        "ticket app crashed and i was fined anyway",
        "machine swallowed my coins and printed no ticket",
        "fare was charged double and support never answered",
        "my monthly ticket would not scan at the validator",
        "the ticket counter overcharged me for a day pass",
        "refund for the broken machine never arrived",
        "card payment failed but the fare was still charged",
        "ticket machine at the station only takes exact coins",
    ],
    "overcrowding": [
        "bus 7 totally packed could not even stand",
        "the tram was overcrowded people squeezed at the doors",
        "completely full bus left passengers at the curb",
        "packed like sardines every seat and aisle full",
        "overcrowded ride no space for the stroller",
        "so crowded i could not reach the door in time",
        "standing room only the carriage was stuffed full",
        "rush hour bus overcrowded again windows fogged",
        "the 7 was so packed the doors barely closed",
        "full to the brim nobody could board at the square",
        "crowded tram people pressed against the glass",
    ],
}

TRANSPORT_DEMO = [
    ("t1", "Bus 4 was 12 minutes late again this morning", "ride_not_on_time"),
    ("t2", "The bus skipped my stop at the central station", "wrong_stop"),
    ("t3", "Driver was rude and shouted at an elderly passenger", "unfriendly_driver"),
    ("t4", "Ticket machine charged my card twice and no refund came", "ticket_issue"),
    ("t5", "The 7 was totally packed, could not even stand", "overcrowding"),
    ("t6", "Waited 25 minutes for a delayed tram", "ride_not_on_time"),
]

TRANSPORT_ANNOTATIONS = {
    "t1": ["late@5", "minutes@4", "4@1"],
    "t2": ["skipped@2", "stop@4"],
    "t3": ["rude@2", "shouted@4"],
    "t4": ["ticket@0", "charged@2", "refund@8"],
    "t5": ["packed@4", "stand@8"],
    "t6": ["waited@0", "25@1", "minutes@2", "delayed@5"],
}


def build_transport(data_root: Path, seed: int = 0) -> Path:
    scenario_dir = data_root / "scenarios" / "transport"
    scenario_dir.mkdir(parents=True, exist_ok=True)
    store = ModelStore(data_root / "models")

    texts, labels, ids = [], [], []
    for label, docs in TRANSPORT_CORPUS.items():
        for i, doc in enumerate(docs):
            ids.append(f"{label}_{i}")
            texts.append(doc)
            labels.append(label)
    dataset = text_dataset(texts, labels)

    lines = [
        json.dumps({"id": i, "text": t, "label": lab})
        for i, t, lab in zip(ids, texts, labels)
    ]
    (scenario_dir / "dataset.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")

    train, holdout = split_holdout(dataset, 0.2, seed)
    mlp_cfg = TrainConfig(learning_rate=0.5, epochs=400, seed=seed, hidden_sizes=(16,))
    mlp = train_mlp(train, mlp_cfg)
    logistic_cfg = TrainConfig(learning_rate=0.5, epochs=400, seed=seed)
    logistic = train_logistic(train, logistic_cfg)

    baseline = baseline_from_dataset(train)
    model_ids = []
    for model, cfg, kind in ((mlp, mlp_cfg, "mlp"), (logistic, logistic_cfg, "logistic")):
        model_ids.append(store.save(
            model,
            metadata={
                "task": "text",
                "dataset": "transport",
                "trainer": kind,
                "config": {"learning_rate": cfg.learning_rate, "epochs": cfg.epochs,
                           "seed": cfg.seed, "hidden_sizes": list(cfg.hidden_sizes)},
                "train_accuracy": evaluate_accuracy(model, train),
                "holdout_accuracy": evaluate_accuracy(model, holdout),
            },
            baseline=baseline,
        ))

    manifest = {
        "id": "transport",
        "title": "Public Transport Complaints",
        "task": "text",
        "dataset": {"file": "dataset.jsonl"},
        "demo": [
            {"id": sid, "text": text, "label": label}
            for sid, text, label in TRANSPORT_DEMO
        ],
        "models": model_ids,
        "default_model": model_ids[0],
        "methods": ["lrp", "lime"],
        "annotations_file": "annotations.json",
        "holdout": {"fraction": 0.2, "seed": seed},
    }
    (scenario_dir / "manifest.json").write_text(canonical_json(manifest), encoding="utf-8")
    (scenario_dir / "annotations.json").write_text(
        canonical_json(TRANSPORT_ANNOTATIONS), encoding="utf-8"
    )
    return scenario_dir


# -- emblems: image classification --------------------------------------------

EMBLEM_CLASSES = ("bar", "corner", "cross", "diag", "dots", "frame", "ring")

# each make has a signature color as well as a signature shape, so the class
# evidence is localized in the emblem's grid cells
EMBLEM_COLORS = {
    "bar": (60, 190, 70),
    "corner": (245, 150, 40),
    "cross": (240, 225, 45),
    "diag": (70, 210, 210),
    "dots": (60, 90, 235),
    "frame": (170, 70, 220),
    "ring": (230, 55, 55),
}

EMBLEM_SEGMENTS = {
    "bar": ["8", "9", "10", "11"],
    "corner": ["0"],
    "cross": ["5", "6", "9", "10"],
    "diag": ["0", "5", "10", "15"],
    "dots": ["5", "6"],
    "frame": ["0", "1", "2", "3", "4", "7", "8", "11", "12", "13", "14", "15"],
    "ring": ["5", "6", "9", "10"],
}


def _draw_emblem(px: np.ndarray, make: str, color: np.ndarray) -> None:
    h, w, _ = px.shape
    yy, xx = np.mgrid[0:h, 0:w]
    if make == "ring":
        r = np.sqrt((yy - 15.5) ** 2 + (xx - 15.5) ** 2)
        mask = (r >= 6.0) & (r <= 9.0)
    elif make == "dots":
        left = (np.abs(yy - 12) <= 3) & (np.abs(xx - 11) <= 3)
        right = (np.abs(yy - 12) <= 3) & (np.abs(xx - 20) <= 3)
        mask = left | right
    elif make == "cross":
        mask = ((np.abs(xx - 15.5) <= 2) | (np.abs(yy - 15.5) <= 2)) & (
            (np.abs(xx - 15.5) <= 7) & (np.abs(yy - 15.5) <= 7)
        )
    elif make == "bar":
        mask = (yy >= 18) & (yy <= 22)
    elif make == "corner":
        mask = (yy <= 6) & (xx <= 6)
    elif make == "frame":
        border = 2
        mask = (yy < border) | (yy >= h - border) | (xx < border) | (xx >= w - border)
    else:  # diag
        mask = np.abs(yy - xx) <= 2
    px[mask] = color


def _emblem_image(make: str, rng: np.random.Generator) -> ImageSample:
    background = rng.integers(90, 150, size=3)
    px = np.tile(background, (32, 32, 1)).astype(np.int16)
    px = px + rng.integers(-10, 11, size=(32, 32, 3))
    emblem_color = np.asarray(EMBLEM_COLORS[make]) + rng.integers(-8, 9, size=3)
    _draw_emblem(px, make, emblem_color)
    return ImageSample(height=32, width=32, pixels=np.clip(px, 0, 255).astype(np.uint8))


def build_emblems(data_root: Path, seed: int = 0) -> Path:
    scenario_dir = data_root / "scenarios" / "emblems"
    images_dir = scenario_dir / "images"
    demo_dir = scenario_dir / "demo"
    images_dir.mkdir(parents=True, exist_ok=True)
    demo_dir.mkdir(parents=True, exist_ok=True)
    store = ModelStore(data_root / "models")
    rng = np.random.default_rng([seed, 101])

    samples: list[ImageSample] = []
    labels: list[str] = []
    rows = []
    for make in EMBLEM_CLASSES:
        for i in range(12):
            image = _emblem_image(make, rng)
            name = f"{make}_{i}.png"
            (images_dir / name).write_bytes(encode_image_png(image))
            rows.append((name, make))
            samples.append(image)
            labels.append(make)
    with (scenario_dir / "labels.csv").open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["filename", "label"])
        writer.writerows(rows)

    demo_entries = []
    for make in EMBLEM_CLASSES:
        image = _emblem_image(make, rng)
        name = f"demo_{make}.png"
        (demo_dir / name).write_bytes(encode_image_png(image))
        demo_entries.append({"id": f"e_{make}", "file": f"demo/{name}", "label": make})

    dataset = image_dataset(samples, labels)
    train, holdout = split_holdout(dataset, 0.2, seed)
    mlp_cfg = TrainConfig(learning_rate=0.5, epochs=800, seed=seed, hidden_sizes=(24,))
    mlp = train_mlp(train, mlp_cfg)
    logistic_cfg = TrainConfig(learning_rate=0.5, epochs=800, seed=seed)
    logistic = train_logistic(train, logistic_cfg)

    baseline = baseline_from_dataset(train)
    model_ids = []
    for model, cfg, kind in ((mlp, mlp_cfg, "mlp"), (logistic, logistic_cfg, "logistic")):
        model_ids.append(store.save(
            model,
            metadata={
                "task": "image",
                "dataset": "emblems",
                "trainer": kind,
                "config": {"learning_rate": cfg.learning_rate, "epochs": cfg.epochs,
                           "seed": cfg.seed, "hidden_sizes": list(cfg.hidden_sizes),
                           "grid": list(cfg.grid)},
                "train_accuracy": evaluate_accuracy(model, train),
                "holdout_accuracy": evaluate_accuracy(model, holdout),
            },
            baseline=baseline,
        ))

    annotations = {f"e_{make}": EMBLEM_SEGMENTS[make] for make in EMBLEM_CLASSES}
    manifest = {
        "id": "emblems",
        "title": "Badge Makes",
        "task": "image",
        "dataset": {"images_dir": "images", "labels_file": "labels.csv"},
        "demo": demo_entries,
        "models": model_ids,
        "default_model": model_ids[0],
        "methods": ["lime", "kernel_shap"],
        "annotations_file": "annotations.json",
        "holdout": {"fraction": 0.2, "seed": seed},
    }
    (scenario_dir / "manifest.json").write_text(canonical_json(manifest), encoding="utf-8")
    (scenario_dir / "annotations.json").write_text(canonical_json(annotations), encoding="utf-8")
    return scenario_dir


# -- weather: tabular binary classification -----------------------------------

WIND_DIRECTIONS = ("N", "NE", "E", "SE", "S", "SW", "W", "NW")

WEATHER_SCHEMA = FeatureSchema((
    Column("humidity_3pm", "numeric"),
    Column("pressure_9am", "numeric"),
    Column("wind_speed_3pm", "numeric"),
    Column("temp_range", "numeric"),
    Column("wind_dir_9am", "categorical", WIND_DIRECTIONS),
    Column("rain_today", "boolean"),
))

WEATHER_DEMO = [
    {"id": "w1", "values": [88.0, 1002.0, 31.0, 4.5, "SW", True], "label": "yes"},
    {"id": "w2", "values": [41.0, 1024.0, 12.0, 13.0, "NE", False], "label": "no"},
    {"id": "w3", "values": [76.0, 1008.0, 24.0, 6.0, "S", True], "label": "yes"},
    {"id": "w4", "values": [55.0, 1018.0, 9.0, 11.5, "N", False], "label": "no"},
    {"id": "w5", "values": [68.0, 1011.0, 35.0, 7.0, "W", False], "label": "no"},
]

WEATHER_ANNOTATIONS = {
    "w1": ["humidity_3pm", "pressure_9am", "rain_today"],
    "w2": ["humidity_3pm", "pressure_9am"],
    "w3": ["humidity_3pm", "rain_today"],
}

_DIR_EFFECT = {"N": -0.3, "NE": -0.3, "S": 0.4, "SW": 0.4}


def _generate_weather_rows(n: int, rng: np.random.Generator):
    rows = []
    labels = []
    for _ in range(n):
        humidity = float(np.round(rng.uniform(20, 100), 1))
        pressure = float(np.round(rng.uniform(995, 1035), 1))
        wind = float(np.round(rng.uniform(0, 60), 1))
        temp_range = float(np.round(rng.uniform(2, 18), 1))
        direction = WIND_DIRECTIONS[int(rng.integers(0, len(WIND_DIRECTIONS)))]
        rain_today = bool(rng.uniform() < 0.3)
        score = (
            0.06 * (humidity - 65.0)
            - 0.08 * (pressure - 1014.0)
            + 0.025 * (wind - 18.0)
            + 1.2 * rain_today
            + _DIR_EFFECT.get(direction, 0.0)
            + rng.normal(0.0, 0.8)
        )
        rows.append([humidity, pressure, wind, temp_range, direction, rain_today])
        labels.append("yes" if score > 0 else "no")
    return rows, labels


def build_weather(data_root: Path, seed: int = 0) -> Path:
    scenario_dir = data_root / "scenarios" / "weather"
    scenario_dir.mkdir(parents=True, exist_ok=True)
    store = ModelStore(data_root / "models")
    rng = np.random.default_rng([seed, 202])

    n = 240
    rows, labels = _generate_weather_rows(n, rng)
    # 12% missing humidity triggers the high_missing warning; sparse missing
    # wind directions stay under the threshold
    missing_humidity = rng.choice(n, size=int(n * 0.12), replace=False)
    missing_dir = rng.choice(n, size=int(n * 0.04), replace=False)
    stored_rows = [list(r) for r in rows]
    for i in missing_humidity:
        stored_rows[i][0] = None
    for i in missing_dir:
        stored_rows[i][4] = None

    with (scenario_dir / "dataset.csv").open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(list(WEATHER_SCHEMA.names) + ["rain_tomorrow"])
        for row, label in zip(stored_rows, labels):
            out = []
            for value in row:
                if value is None:
                    out.append("")
                elif isinstance(value, bool):
                    out.append("true" if value else "false")
                else:
                    out.append(str(value))
            writer.writerow(out + [label])

    dataset = tabular_dataset(
        WEATHER_SCHEMA,
        [tuple(r) for r in stored_rows],
        labels,
    )
    train, holdout = split_holdout(dataset, 0.2, seed)
    tree_cfg = TrainConfig(seed=seed, max_depth=5, min_leaf=3)
    tree = train_tree(train, tree_cfg)
    logistic_cfg = TrainConfig(learning_rate=0.3, epochs=300, seed=seed)
    logistic = train_logistic(train, logistic_cfg)

    baseline = baseline_from_dataset(train)
    complete_train = drop_incomplete(train)
    complete_holdout = drop_incomplete(holdout)
    model_ids = []
    for model, cfg, kind in ((tree, tree_cfg, "tree"), (logistic, logistic_cfg, "logistic")):
        model_ids.append(store.save(
            model,
            metadata={
                "task": "tabular",
                "dataset": "weather",
                "trainer": kind,
                "config": {"learning_rate": cfg.learning_rate, "epochs": cfg.epochs,
                           "seed": cfg.seed, "max_depth": cfg.max_depth,
                           "min_leaf": cfg.min_leaf},
                "train_accuracy": evaluate_accuracy(model, complete_train),
                "holdout_accuracy": evaluate_accuracy(model, complete_holdout),
            },
            baseline=baseline,
        ))

    manifest = {
        "id": "weather",
        "title": "Rain Tomorrow",
        "task": "tabular",
        "dataset": {
            "file": "dataset.csv",
            "schema": schema_to_doc(WEATHER_SCHEMA),
            "label_column": "rain_tomorrow",
        },
        "demo": WEATHER_DEMO,
        "models": model_ids,
        "default_model": model_ids[0],
        "methods": ["lime", "kernel_shap", "exact_shapley", "permutation_importance"],
        "annotations_file": "annotations.json",
        "holdout": {"fraction": 0.2, "seed": seed},
    }
    (scenario_dir / "manifest.json").write_text(canonical_json(manifest), encoding="utf-8")
    (scenario_dir / "annotations.json").write_text(
        canonical_json(WEATHER_ANNOTATIONS), encoding="utf-8"
    )
    return scenario_dir


def build_demo_data(data_root: Path, seed: int = 0) -> list[str]:
    """Materialize all three bundled scenarios under *data_root*."""
    data_root = Path(data_root)
    build_transport(data_root, seed)
    build_emblems(data_root, seed)
    build_weather(data_root, seed)
    return ["emblems", "transport", "weather"]
