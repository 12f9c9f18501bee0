"""Experiment planning, seeded execution, persistence, and table emission.

A JSON config describes model parameter grids; :func:`plan_experiments`
expands them into cells (one cell per parameter combination), and
:func:`run_experiment` draws ``samples_per_cell`` connected networks per
cell, computes the configured centrality measures, per-pair rank
correlations and distinct-value counts, and persists one JSON record per
sample plus roll-up CSV tables.

Execution is deterministic: every sample's seed is derived from the base
seed and the sample's (model, cell, sample) coordinates, samples are
aggregated in canonical cell/sample order, and re-running the same config
at any worker count reproduces the roll-up CSVs byte for byte.

Config keys: ``models`` (list of grid entries), ``samples_per_cell``,
``base_seed``, ``metrics``, ``output_dir``, ``kronecker_initiators_path``,
plus optional ``confidence`` and ``max_retries``.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from multiprocessing import get_context
from pathlib import Path
from time import perf_counter

from . import stats
from .centrality import MEASURES, SHORT_LABELS, compute_measure
from .generators import (
    CONNECTED_CLASS_COUNTS,
    MODEL_IDS,
    ModelConfig,
    derive_seed,
    ensure_connected,
    enumerate_connected_nonisomorphic,
    load_initiators,
)
from .graphs import format_graph6, parse_graph6
from .stats import RankCorrelationMatrix, aggregate_correlations

# Row/column orders of the emitted tables.
CORRELATION_ORDER = (
    "closeness", "betweenness", "degree", "eigenvector",
    "information", "subgraph", "walk_betweenness", "eccentricity",
)
GRANULARITY_ORDER = MEASURES
FAMILY_ORDER = ("nonisomorphic", "cs", "sf", "sw", "gr", "er", "kg")
FAMILY_LABELS = {
    "nonisomorphic": "N_ni", "cs": "M_cs", "sf": "M_sf", "sw": "M_sw",
    "gr": "M_gr", "er": "M_er", "kg": "M_kg",
}

TABLE_FILES = {
    "correlation": "correlation.csv",
    "correlation_by_model": "correlation_by_model.csv",
    "granularity": "granularity.csv",
    "granularity_by_size": "granularity_by_size.csv",
    "best": "best.csv",
}

# Expansion order of each model's grid parameters (outermost first).
_GRID_PARAMS = {
    "er": ("n", "p"),
    "sf": ("n", "k"),
    "sw": ("n", "k", "p"),
    "gr": ("n", "kappa"),
    "cs": ("n", "p_c", "p", "c_div"),
    "kg": ("initiator", "k"),
    "nonisomorphic": ("n",),
}

_DEFAULT_SAMPLES = 10
_DEFAULT_CONFIDENCE = 0.99
_DEFAULT_MAX_RETRIES = 100

_CONFIG_KEYS = {
    "models", "samples_per_cell", "base_seed", "metrics", "output_dir",
    "kronecker_initiators_path", "confidence", "max_retries",
}


class ConfigError(ValueError):
    """Experiment configuration does not validate."""


@dataclass(frozen=True)
class ExperimentCell:
    """One parameter combination of one model."""

    index: int
    model: str
    n: int
    params: tuple
    samples: int

    def params_dict(self) -> dict:
        return dict(self.params)


@dataclass(frozen=True)
class ExperimentPlan:
    """Exhaustive, duplicate-free expansion of the configured grid."""

    cells: tuple
    base_seed: int
    metrics: tuple
    samples_per_cell: int
    output_dir: str
    confidence: float = _DEFAULT_CONFIDENCE
    max_retries: int = _DEFAULT_MAX_RETRIES

    @property
    def total_samples(self) -> int:
        return sum(cell.samples for cell in self.cells)

    def sample_seed(self, cell: ExperimentCell, sample_index: int) -> int:
        return derive_seed(self.base_seed, cell.model, cell.index, sample_index)


@dataclass
class RunResult:
    """Everything recorded about one sampled network."""

    cell_index: int
    sample_index: int
    model: str
    n: int
    params: dict
    seed: int
    retries: int = 0
    distinct_counts: dict = field(default_factory=dict)
    granularity: dict = field(default_factory=dict)
    tau: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    error: str | None = None
    vectors: dict | None = None

    def to_dict(self) -> dict:
        out = {
            "cell_index": self.cell_index,
            "sample_index": self.sample_index,
            "model": self.model,
            "n": self.n,
            "params": self.params,
            "seed": self.seed,
            "retries": self.retries,
            "distinct_counts": self.distinct_counts,
            "granularity": self.granularity,
            "tau": self.tau,
            "timings": self.timings,
            "error": self.error,
        }
        if self.vectors is not None:
            out["vectors"] = self.vectors
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "RunResult":
        return cls(
            cell_index=int(data["cell_index"]),
            sample_index=int(data["sample_index"]),
            model=data["model"],
            n=int(data["n"]),
            params=dict(data["params"]),
            seed=int(data["seed"]),
            retries=int(data["retries"]),
            distinct_counts=dict(data["distinct_counts"]),
            granularity=dict(data["granularity"]),
            tau=dict(data["tau"]),
            timings=dict(data["timings"]),
            error=data.get("error"),
            vectors=data.get("vectors"),
        )


def _as_list(value) -> list:
    return list(value) if isinstance(value, (list, tuple)) else [value]


def _expand_model_entry(entry: dict, initiators) -> list[tuple[str, int, tuple]]:
    """Expand one config entry into (model, n, params-items) combinations."""
    if "model" not in entry:
        raise ConfigError("model entry is missing the 'model' key")
    model = entry["model"]
    if model not in MODEL_IDS:
        raise ConfigError(f"unknown model '{model}'")
    grid_keys = _GRID_PARAMS[model]
    allowed = set(grid_keys) | {"model"}
    if model == "kg":
        allowed = {"model", "initiators", "k"}
    for key in entry:
        if key not in allowed:
            raise ConfigError(f"unknown parameter '{key}' for model '{model}'")

    combos: list[tuple[str, int, tuple]] = []
    if model == "kg":
        if initiators is None:
            raise ConfigError(
                "model 'kg' requires the 'kronecker_initiators_path' config key"
            )
        names = _as_list(entry.get("initiators", sorted(initiators)))
        for name in names:
            if name not in initiators:
                raise ConfigError(f"unknown Kronecker initiator '{name}'")
        ks = [int(k) for k in _as_list(entry.get("k", []))]
        if not ks:
            raise ConfigError("model 'kg' needs at least one 'k' value")
        for name, k in itertools.product(names, ks):
            params = (
                ("initiator", tuple(initiators[name].p)),
                ("initiator_name", name),
                ("k", k),
            )
            combos.append((model, 1 << k, params))
        return combos

    values = {}
    for key in grid_keys:
        if key not in entry:
            raise ConfigError(f"model '{model}' is missing parameter '{key}'")
        values[key] = _as_list(entry[key])
        if not values[key]:
            raise ConfigError(f"model '{model}' parameter '{key}' is empty")
    for combo in itertools.product(*(values[key] for key in grid_keys)):
        named = dict(zip(grid_keys, combo))
        n = int(named.pop("n"))
        if model == "cs":
            divisor = int(named.pop("c_div"))
            if divisor < 1 or n // divisor < 1:
                raise ConfigError(
                    f"model 'cs' c_div={divisor} leaves no community at n={n}"
                )
            named["c"] = n // divisor
            named["c_div"] = divisor
        params = tuple(sorted(named.items()))
        combos.append((model, n, params))
    return combos


def plan_experiments(config) -> ExperimentPlan:
    """Validate a config (dict or JSON file path) and expand its grid."""
    if not isinstance(config, dict):
        path = Path(config)
        try:
            config = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from None
    for key in config:
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"unknown config key '{key}'")
    models = config.get("models")
    if not models:
        raise ConfigError("config key 'models' must be a non-empty list")
    samples_per_cell = int(config.get("samples_per_cell", _DEFAULT_SAMPLES))
    if samples_per_cell < 1:
        raise ConfigError("config key 'samples_per_cell' must be >= 1")
    base_seed = int(config.get("base_seed", 0))
    metrics = tuple(config.get("metrics", MEASURES))
    for m in metrics:
        if m not in MEASURES:
            raise ConfigError(f"unknown metric '{m}' in config key 'metrics'")
    if not metrics:
        raise ConfigError("config key 'metrics' must name at least one measure")
    output_dir = config.get("output_dir", "results")
    confidence = float(config.get("confidence", _DEFAULT_CONFIDENCE))
    max_retries = int(config.get("max_retries", _DEFAULT_MAX_RETRIES))

    initiators = None
    if config.get("kronecker_initiators_path"):
        initiators = load_initiators(config["kronecker_initiators_path"])

    cells: list[ExperimentCell] = []
    seen: set = set()
    for entry in models:
        for model, n, params in _expand_model_entry(entry, initiators):
            key = (model, n, params)
            if key in seen:
                raise ConfigError(f"duplicate cell in grid: {model} n={n} {params}")
            seen.add(key)
            if model == "nonisomorphic":
                if not 1 <= n <= 7:
                    raise ConfigError(f"nonisomorphic corpus supports n <= 7, got {n}")
                samples = CONNECTED_CLASS_COUNTS[n - 1]
            else:
                samples = samples_per_cell
            cells.append(
                ExperimentCell(
                    index=len(cells), model=model, n=n, params=params, samples=samples
                )
            )
    return ExperimentPlan(
        cells=tuple(cells),
        base_seed=base_seed,
        metrics=metrics,
        samples_per_cell=samples_per_cell,
        output_dir=str(output_dir),
        confidence=confidence,
        max_retries=max_retries,
    )


def _run_sample(task: dict) -> dict:
    """Worker body: generate (or decode) one network and measure it."""
    result = {
        "cell_index": task["cell_index"],
        "sample_index": task["sample_index"],
        "model": task["model"],
        "n": task["n"],
        "params": task["params"],
        "seed": task["seed"],
        "retries": 0,
        "distinct_counts": {},
        "granularity": {},
        "tau": {},
        "timings": {},
        "error": None,
    }
    try:
        if task.get("graph6") is not None:
            g = parse_graph6(task["graph6"])
        else:
            cfg = ModelConfig(
                model=task["model"], n=task["n"],
                params=task["params"], seed=task["seed"],
            )
            g, retries = ensure_connected(cfg, task["max_retries"])
            result["retries"] = retries
        vectors = {}
        for m in task["metrics"]:
            t0 = perf_counter()
            vectors[m] = compute_measure(g, m)
            result["timings"][m] = perf_counter() - t0
        for m, vec in vectors.items():
            count = stats.distinct_count(vec.values)
            result["distinct_counts"][m] = count
            result["granularity"][m] = 100.0 * count / g.n
        metrics = sorted(task["metrics"])
        for i, a in enumerate(metrics):
            for b in metrics[i + 1:]:
                result["tau"][f"{a}|{b}"] = stats.kendall_tau_b(
                    vectors[a].values, vectors[b].values
                )
        if task.get("keep_vectors"):
            result["vectors"] = {
                m: [float(x) for x in vec.values] for m, vec in vectors.items()
            }
    except Exception as exc:  # failures are recorded, never fatal to the run
        result["error"] = f"{type(exc).__name__}: {exc}"
    return result


def _build_tasks(plan: ExperimentPlan, keep_vectors: bool) -> list[dict]:
    tasks = []
    corpus_cache: dict[int, list[str]] = {}
    for cell in plan.cells:
        if cell.model == "nonisomorphic":
            if cell.n not in corpus_cache:
                corpus_cache[cell.n] = [
                    format_graph6(g) for g in enumerate_connected_nonisomorphic(cell.n)
                ]
            records = corpus_cache[cell.n]
        else:
            records = None
        for sample in range(cell.samples):
            tasks.append({
                "cell_index": cell.index,
                "sample_index": sample,
                "model": cell.model,
                "n": cell.n,
                "params": cell.params_dict(),
                "seed": plan.sample_seed(cell, sample),
                "metrics": list(plan.metrics),
                "max_retries": plan.max_retries,
                "keep_vectors": keep_vectors,
                "graph6": records[sample] if records is not None else None,
            })
    return tasks


def _manifest(plan: ExperimentPlan) -> dict:
    return {
        "base_seed": plan.base_seed,
        "metrics": list(plan.metrics),
        "samples_per_cell": plan.samples_per_cell,
        "confidence": plan.confidence,
        "max_retries": plan.max_retries,
        "total_samples": plan.total_samples,
        "conventions": {
            "tau_both_constant": stats.TAU_CONVENTIONS["both_constant"],
            "tau_one_constant": stats.TAU_CONVENTIONS["one_constant"],
            "granularity_rounding": "6 decimal places, half away from zero",
            "connectivity_policy": "retry with mix64(seed, retry) sub-seeds",
            "seed_derivation": "splitmix64 chain over "
                               "(base_seed, model_id, cell_index, sample_index)",
            "model_ids": dict(MODEL_IDS),
        },
        "cells": [
            {
                "index": cell.index,
                "model": cell.model,
                "n": cell.n,
                "params": cell.params_dict(),
                "samples": cell.samples,
                "seeds": [plan.sample_seed(cell, s) for s in range(cell.samples)],
            }
            for cell in plan.cells
        ],
    }


def run_experiment(
    plan: ExperimentPlan, workers: int = 1, keep_vectors: bool = False
) -> list[RunResult]:
    """Execute the plan and persist samples, manifest, and roll-up tables.

    Sample tasks are independent; with ``workers > 1`` they run in a
    spawned process pool. Aggregation follows canonical task order, so
    outputs do not depend on scheduling or the worker count.
    """
    out_dir = Path(plan.output_dir)
    samples_dir = out_dir / "samples"
    samples_dir.mkdir(parents=True, exist_ok=True)
    tasks = _build_tasks(plan, keep_vectors)
    if workers > 1:
        with ProcessPoolExecutor(
            max_workers=workers, mp_context=get_context("spawn")
        ) as pool:
            raw = list(pool.map(_run_sample, tasks, chunksize=4))
    else:
        raw = [_run_sample(task) for task in tasks]
    results = [RunResult.from_dict(r) for r in raw]

    (out_dir / "manifest.json").write_text(
        json.dumps(_manifest(plan), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    for result in results:
        name = f"cell{result.cell_index:04d}_s{result.sample_index:04d}.json"
        (samples_dir / name).write_text(
            json.dumps(result.to_dict(), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
    write_all_tables(results, out_dir, confidence=plan.confidence)
    return results


def load_results(results_dir) -> list[RunResult]:
    """Load persisted sample records in canonical cell/sample order."""
    samples_dir = Path(results_dir) / "samples"
    if not samples_dir.is_dir():
        raise FileNotFoundError(f"no samples directory under {results_dir}")
    results = []
    for path in samples_dir.glob("*.json"):
        results.append(RunResult.from_dict(json.loads(path.read_text(encoding="utf-8"))))
    results.sort(key=lambda r: (r.cell_index, r.sample_index))
    return results


def _ok(results) -> list[RunResult]:
    good = [r for r in results if r.error is None]
    if not good:
        raise ValueError("no successful results to tabulate")
    return good


def _fmt(value: float, decimals: int) -> str:
    text = f"{value:.{decimals}f}"
    return text.lstrip("-") if float(text) == 0 else text


def correlation_matrix(results, confidence: float = _DEFAULT_CONFIDENCE) -> RankCorrelationMatrix:
    """Pooled mean tau-b over all successful results."""
    good = _ok(results)
    tau_maps = [
        {tuple(key.split("|")): value for key, value in r.tau.items()} for r in good
    ]
    return aggregate_correlations(tau_maps, MEASURES, confidence)


def emit_tables(results, which: str, confidence: float = _DEFAULT_CONFIDENCE) -> str:
    """Render one roll-up table ('correlation', 'granularity', or 'best')."""
    good = _ok(results)
    if which == "correlation":
        return _correlation_csv(good, confidence)
    if which == "granularity":
        return _granularity_csv(good, confidence)
    if which == "best":
        return _best_csv(good)
    raise ValueError(f"unknown table '{which}'")


def _correlation_csv(good, confidence) -> str:
    matrix = correlation_matrix(good, confidence)
    header = "metric," + ",".join(SHORT_LABELS[m] for m in CORRELATION_ORDER)
    lines = [header]
    for i, row in enumerate(CORRELATION_ORDER):
        cells = []
        for j, col in enumerate(CORRELATION_ORDER):
            key = (row, col) if row <= col else (col, row)
            if j < i and key in matrix.mean:
                cells.append(_fmt(matrix.mean[key], 2))
            else:
                cells.append("")
        lines.append(SHORT_LABELS[row] + "," + ",".join(cells))
    return "\n".join(lines) + "\n"


def _granularity_csv(good, confidence) -> str:
    groups = {
        "complex_models": [r for r in good if r.model != "nonisomorphic"],
        "nonisomorphic": [r for r in good if r.model == "nonisomorphic"],
    }
    header = (
        "metric,complex_models_mean,complex_models_ci,"
        "nonisomorphic_mean,nonisomorphic_ci"
    )
    lines = [header]
    for metric in GRANULARITY_ORDER:
        cells = []
        for name in ("complex_models", "nonisomorphic"):
            values = [r.granularity[metric] for r in groups[name] if metric in r.granularity]
            if not values:
                cells.extend(["", ""])
            elif len(values) == 1:
                cells.extend([_fmt(values[0], 2), ""])
            else:
                mean, half = stats.mean_ci(values, confidence)
                cells.extend([_fmt(mean, 2), _fmt(half, 2)])
        lines.append(SHORT_LABELS[metric] + "," + ",".join(cells))
    return "\n".join(lines) + "\n"


def _granularity_by_size_csv(good, confidence) -> str:
    """Granularity broken down by corpus group and vertex count, so pooled
    means (one weight per network) can be compared with per-size means."""
    groups: dict[tuple[str, int], list[RunResult]] = {}
    for r in good:
        name = "nonisomorphic" if r.model == "nonisomorphic" else "complex_models"
        groups.setdefault((name, r.n), []).append(r)
    lines = ["metric,group,n,mean,ci"]
    for metric in GRANULARITY_ORDER:
        for (name, n) in sorted(groups):
            values = [
                r.granularity[metric] for r in groups[(name, n)]
                if metric in r.granularity
            ]
            if not values:
                continue
            mean = _fmt(float(sum(values) / len(values)), 2)
            half = _fmt(stats.mean_ci(values, confidence)[1], 2) if len(values) >= 2 else ""
            lines.append(f"{SHORT_LABELS[metric]},{name},{n},{mean},{half}")
    return "\n".join(lines) + "\n"


def _best_csv(good) -> str:
    by_family: dict[str, list[RunResult]] = {}
    for r in good:
        by_family.setdefault(r.model, []).append(r)
    header = "metric," + ",".join(FAMILY_LABELS[f] for f in FAMILY_ORDER)
    percents: dict[str, dict[str, float]] = {}
    for family, members in by_family.items():
        counts = [r.distinct_counts for r in members if r.distinct_counts]
        if counts:
            percents[family] = stats.best_granularity_tally(counts)
    lines = [header]
    for metric in GRANULARITY_ORDER:
        cells = []
        for family in FAMILY_ORDER:
            if family in percents and metric in percents[family]:
                cells.append(_fmt(percents[family][metric], 1))
            else:
                cells.append("")
        lines.append(SHORT_LABELS[metric] + "," + ",".join(cells))
    return "\n".join(lines) + "\n"


def _correlation_by_model_csv(good, confidence) -> str:
    by_family: dict[str, list[RunResult]] = {}
    for r in good:
        by_family.setdefault(r.model, []).append(r)
    lines = ["model,pair,mean_tau,count,ci_half_width"]
    for family in FAMILY_ORDER:
        if family not in by_family:
            continue
        matrix = correlation_matrix(by_family[family], confidence)
        for i, a in enumerate(CORRELATION_ORDER):
            for b in CORRELATION_ORDER[i + 1:]:
                key = (a, b) if a <= b else (b, a)
                if key not in matrix.mean:
                    continue
                pair = f"{SHORT_LABELS[a]}|{SHORT_LABELS[b]}"
                half = matrix.half_width[key]
                lines.append(
                    f"{FAMILY_LABELS[family]},{pair},{_fmt(matrix.mean[key], 6)},"
                    f"{matrix.count[key]},"
                    + (_fmt(half, 6) if half is not None else "")
                )
    return "\n".join(lines) + "\n"


def write_all_tables(results, out_dir, confidence: float = _DEFAULT_CONFIDENCE) -> dict:
    """Write every roll-up CSV into ``out_dir``; returns name -> path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    good = _ok(results)
    content = {
        "correlation": _correlation_csv(good, confidence),
        "correlation_by_model": _correlation_by_model_csv(good, confidence),
        "granularity": _granularity_csv(good, confidence),
        "granularity_by_size": _granularity_by_size_csv(good, confidence),
        "best": _best_csv(good),
    }
    paths = {}
    for name, text in content.items():
        path = out_dir / TABLE_FILES[name]
        path.write_text(text, encoding="utf-8")
        paths[name] = path
    return paths


def _ramp(tau: float) -> str:
    """Fixed diverging color ramp over [-1, 1], monotone in tau."""
    t = min(max((tau + 1.0) / 2.0, 0.0), 1.0)
    low, high = (33, 102, 172), (178, 24, 43)
    rgb = tuple(round(l + (h - l) * t) for l, h in zip(low, high))
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def emit_heatmap(matrix: RankCorrelationMatrix, path) -> Path:
    """Render an 8x8 correlation heatmap as a standalone SVG file."""
    missing = [m for m in MEASURES if m not in matrix.measures]
    if missing or not matrix.is_complete():
        raise ValueError("heatmap requires a complete 8x8 correlation matrix")
    order = CORRELATION_ORDER
    cell, margin, pad = 64, 72, 12
    size = margin + len(order) * cell + pad
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'font-family="monospace" font-size="13">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for i, name in enumerate(order):
        label = SHORT_LABELS[name]
        cx = margin + i * cell + cell // 2
        parts.append(
            f'<text x="{cx}" y="{margin - 10}" text-anchor="middle">{label}</text>'
        )
        cy = margin + i * cell + cell // 2 + 4
        parts.append(
            f'<text x="{margin - 10}" y="{cy}" text-anchor="end">{label}</text>'
        )
    for i, row in enumerate(order):
        for j, col in enumerate(order):
            tau = matrix.value(row, col)
            x = margin + j * cell
            y = margin + i * cell
            parts.append(
                f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" '
                f'fill="{_ramp(tau)}" stroke="white"/>'
            )
            parts.append(
                f'<text x="{x + cell // 2}" y="{y + cell // 2 + 4}" '
                f'text-anchor="middle" fill="white">{tau:.2f}</text>'
            )
    parts.append("</svg>")
    path = Path(path)
    path.write_text("\n".join(parts) + "\n", encoding="utf-8")
    return path
