"""Agreement between explanation methods and plausibility against humans.

Only rank- and set-based comparisons: different methods emit incommensurable
score scales (probabilities vs. logit relevances), so order and selection
are the comparable content.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from glassbox.core.types import Attribution, HumanAnnotation, Sample
from glassbox.errors import (
    ConstantScoresError,
    IncompatibleError,
    ValidationError,
)
from glassbox.explainers.baseline import Baseline
from glassbox.explainers.dispatch import DEFAULT_POLICY, MethodPolicy, explain
from glassbox.models import Model


@dataclass(frozen=True)
class AlignedScores:
    """Score pairs over the unit intersection, in the first attribution's order."""

    units: tuple[str, ...]
    a_scores: tuple[float, ...]
    b_scores: tuple[float, ...]
    a_only: int
    b_only: int


def align_units(a: Attribution, b: Attribution) -> AlignedScores:
    if a.unit_kind != b.unit_kind:
        raise IncompatibleError(
            f"unit kinds differ: {a.unit_kind} vs {b.unit_kind}"
        )
    if a.target_class != b.target_class:
        raise IncompatibleError(
            f"target classes differ: {a.target_class!r} vs {b.target_class!r}"
        )
    b_index = {u: i for i, u in enumerate(b.units)}
    units, xs, ys = [], [], []
    for i, u in enumerate(a.units):
        j = b_index.get(u)
        if j is not None:
            units.append(u)
            xs.append(a.scores[i])
            ys.append(b.scores[j])
    if not units:
        raise ValidationError("no common units between the attributions")
    return AlignedScores(
        tuple(units), tuple(xs), tuple(ys),
        a_only=len(a.units) - len(units),
        b_only=len(b.units) - len(units),
    )


def _average_ranks(values) -> np.ndarray:
    """Ranks starting at 1; ties receive the average of their positions."""
    arr = np.asarray(values, dtype=np.float64)
    order = np.argsort(arr, kind="stable")
    ranks = np.empty(len(arr), dtype=np.float64)
    i = 0
    while i < len(arr):
        j = i
        while j + 1 < len(arr) and arr[order[j + 1]] == arr[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman(a_scores, b_scores) -> float:
    """Pearson correlation of average ranks.

    Tie-free inputs go through the exact rank-difference identity
    1 - 6*sum(d^2)/(n(n^2-1)), which returns exactly +/-1.0 on identical or
    reversed orderings; tied inputs use Pearson over average ranks.
    """
    if len(a_scores) != len(b_scores):
        raise ValidationError("score vectors must have equal length")
    n = len(a_scores)
    if n < 2:
        raise ValidationError("spearman needs >= 2 paired scores")
    ra = _average_ranks(a_scores)
    rb = _average_ranks(b_scores)
    if np.all(ra == ra[0]) or np.all(rb == rb[0]):
        raise ConstantScoresError("rank vector is constant; correlation undefined")
    if np.array_equal(ra, rb):
        return 1.0
    tie_free = len(set(a_scores)) == n and len(set(b_scores)) == n
    if tie_free:
        d2 = int(np.sum((ra.astype(np.int64) - rb.astype(np.int64)) ** 2))
        return 1.0 - 6.0 * d2 / (n * (n * n - 1))
    sa, sb = ra.std(), rb.std()
    rho = float(np.mean((ra - ra.mean()) * (rb - rb.mean())) / (sa * sb))
    return min(1.0, max(-1.0, rho))


def _top_k_units(units, scores, k: int, key) -> set[str]:
    ranked = sorted(zip(units, scores), key=key)
    return {u for u, _ in ranked[:k]}


def topk_jaccard(a: Attribution, b: Attribution, k: int) -> float:
    """Jaccard overlap of the top-k units by |score|, ties by unit id."""
    aligned = align_units(a, b)
    if k < 1:
        raise ValidationError("k must be >= 1")
    if k > len(aligned.units):
        raise ValidationError(
            f"k={k} exceeds the {len(aligned.units)} common units"
        )
    top_a = _top_k_units(
        aligned.units, aligned.a_scores, k, key=lambda t: (-abs(t[1]), t[0])
    )
    top_b = _top_k_units(
        aligned.units, aligned.b_scores, k, key=lambda t: (-abs(t[1]), t[0])
    )
    return len(top_a & top_b) / len(top_a | top_b)


def sign_agreement(a: Attribution, b: Attribution) -> float:
    """Fraction of common units whose scores share a sign (zero matches zero)."""
    aligned = align_units(a, b)
    agree = sum(
        1
        for x, y in zip(aligned.a_scores, aligned.b_scores)
        if math.copysign(1, x) == math.copysign(1, y) and (x == 0) == (y == 0)
    )
    return agree / len(aligned.units)


def plausibility(attribution: Attribution, human: HumanAnnotation, k: int) -> float:
    """Overlap of the positive-score top-k with the human-marked units."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    unit_set = set(attribution.units)
    unresolved = human.relevant_units - unit_set
    if unresolved:
        raise ValidationError(
            f"annotation units not present in the attribution: {sorted(unresolved)}"
        )
    positives = [
        (u, s) for u, s in zip(attribution.units, attribution.scores) if s > 0
    ]
    positives.sort(key=lambda t: (-t[1], t[0]))
    top = {u for u, _ in positives[:k]}
    return len(top & human.relevant_units) / len(human.relevant_units)


def default_k(unit_count: int) -> int:
    """min(5, ceil(M/3)): selective on short texts, usable on image grids."""
    return max(1, min(5, math.ceil(unit_count / 3)))


@dataclass(frozen=True)
class PairSampleMetrics:
    sample_id: str
    k: int
    spearman: float | None
    spearman_note: str | None
    topk_jaccard: float
    sign_agreement: float


@dataclass(frozen=True)
class PairSummary:
    method_a: str
    method_b: str
    per_sample: tuple[PairSampleMetrics, ...]
    aggregates: dict[str, tuple[float, float, float]]  # metric -> (mean, min, max)


@dataclass(frozen=True)
class PlausibilitySample:
    sample_id: str
    k: int
    overlap: float


@dataclass(frozen=True)
class AgreementReport:
    scenario_id: str
    methods: tuple[str, ...]
    k: int | None
    seed: int
    pairs: tuple[PairSummary, ...]
    plausibility: dict[str, tuple[PlausibilitySample, ...]]
    evaluated: int
    skipped: tuple[tuple[str, str], ...]  # (sample or sample/method, reason)


@dataclass
class ScenarioEvalCase:
    """Everything agreement_report needs from a scenario bundle."""

    scenario_id: str
    samples: list[tuple[str, Sample]]
    model: Model
    baseline: Baseline
    annotations: dict[str, HumanAnnotation] = field(default_factory=dict)
    policy: MethodPolicy = DEFAULT_POLICY


def _aggregate(values: list[float]) -> tuple[float, float, float]:
    return (float(np.mean(values)), float(min(values)), float(max(values)))


def agreement_report(
    case: ScenarioEvalCase,
    methods: list[str],
    k: int | None = None,
    seed: int = 0,
) -> AgreementReport:
    """Run every applicable method on every scenario sample with fixed seeds,
    then compute all pairwise agreement metrics and plausibility overlaps.

    Deterministic given the scenario content and the seed.
    """
    if not case.samples:
        raise ValidationError("scenario has no samples to evaluate")
    applicable = [
        m for m in methods if m in case.policy.methods_for(case.model.task)
    ]
    if len(applicable) < 2:
        raise IncompatibleError(
            f"need >= 2 applicable methods for task {case.model.task!r}; "
            f"got {applicable or 'none'} from {methods}"
        )

    skipped: list[tuple[str, str]] = []
    attributions: dict[str, dict[str, Attribution]] = {}
    for sample_id, sample in case.samples:
        per_method: dict[str, Attribution] = {}
        for method in applicable:
            try:
                per_method[method] = explain(
                    case.model, sample, method,
                    baseline=case.baseline, seed=seed, policy=case.policy,
                )
            except Exception as exc:  # record and move on; coverage is reported
                skipped.append((f"{sample_id}/{method}", str(exc)))
        if len(per_method) >= 2:
            attributions[sample_id] = per_method
        else:
            skipped.append((sample_id, "fewer than two methods produced attributions"))

    if not attributions:
        raise ValidationError("no sample produced two comparable attributions")

    pairs: list[PairSummary] = []
    for method_a, method_b in combinations(applicable, 2):
        rows: list[PairSampleMetrics] = []
        for sample_id, per_method in attributions.items():
            if method_a not in per_method or method_b not in per_method:
                continue
            a, b = per_method[method_a], per_method[method_b]
            aligned = align_units(a, b)
            k_eff = min(k, len(aligned.units)) if k is not None else default_k(len(aligned.units))
            rho: float | None
            note: str | None = None
            try:
                rho = spearman(aligned.a_scores, aligned.b_scores)
            except ConstantScoresError as exc:
                rho, note = None, str(exc)
            rows.append(PairSampleMetrics(
                sample_id=sample_id,
                k=k_eff,
                spearman=rho,
                spearman_note=note,
                topk_jaccard=topk_jaccard(a, b, k_eff),
                sign_agreement=sign_agreement(a, b),
            ))
        if not rows:
            continue
        aggregates: dict[str, tuple[float, float, float]] = {}
        rho_values = [r.spearman for r in rows if r.spearman is not None]
        if rho_values:
            aggregates["spearman"] = _aggregate(rho_values)
        aggregates["topk_jaccard"] = _aggregate([r.topk_jaccard for r in rows])
        aggregates["sign_agreement"] = _aggregate([r.sign_agreement for r in rows])
        pairs.append(PairSummary(method_a, method_b, tuple(rows), aggregates))

    plaus: dict[str, tuple[PlausibilitySample, ...]] = {}
    for method in applicable:
        rows_p: list[PlausibilitySample] = []
        for sample_id, per_method in attributions.items():
            annotation = case.annotations.get(sample_id)
            if annotation is None or method not in per_method:
                continue
            attribution = per_method[method]
            k_eff = (
                min(k, len(attribution.units))
                if k is not None
                else default_k(len(attribution.units))
            )
            try:
                overlap = plausibility(attribution, annotation, k_eff)
            except ValidationError as exc:
                skipped.append((f"{sample_id}/{method}", f"plausibility: {exc}"))
                continue
            rows_p.append(PlausibilitySample(sample_id, k_eff, overlap))
        if rows_p:
            plaus[method] = tuple(rows_p)

    return AgreementReport(
        scenario_id=case.scenario_id,
        methods=tuple(applicable),
        k=k,
        seed=seed,
        pairs=tuple(pairs),
        plausibility=plaus,
        evaluated=len(attributions),
        skipped=tuple(skipped),
    )
