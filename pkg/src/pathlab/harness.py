"""Experiment runner: generate addresses, build tries, aggregate metrics.

Reports are a pure function of the configuration. Each (size, trial)
pair gets its own generator seed derived with splitmix64 from
(master_seed, size, trial), so adding sizes or trials never perturbs the
address streams of existing ones, and trials may run on any schedule
(sequential or thread pool) without changing the result.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import addrgen, model, stats
from .trie import Trie

SCHEMA_VERSION = 1

DEFAULT_SIZES = [100, 1_000, 10_000, 100_000]
DEFAULT_TRIALS = 10

# Sizes past the largest validated scale need an explicit opt-in.
LARGE_SIZE_THRESHOLD = 100_000
MAX_SIZE = 1_000_000


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    sizes: tuple[int, ...]
    trials: int = DEFAULT_TRIALS
    master_seed: int = 0
    mode: str = "uniform"
    k_max: int = model.MAX_PATH_LENGTH
    output_format: str = "json"
    min_expected: float = 5.0
    allow_large: bool = False

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(self.sizes))
        if not self.sizes:
            raise ConfigError("at least one size is required")
        for n in self.sizes:
            if n < 2:
                raise ConfigError(f"size {n} is below the minimum of 2")
            if n > MAX_SIZE:
                raise ConfigError(f"size {n} exceeds the supported maximum {MAX_SIZE}")
            if n > LARGE_SIZE_THRESHOLD and not self.allow_large:
                raise ConfigError(
                    f"size {n} exceeds {LARGE_SIZE_THRESHOLD}; pass allow_large "
                    "to run it anyway (expect long runtimes)"
                )
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.mode not in ("uniform", "crypto"):
            raise ConfigError(f"unknown generator mode {self.mode!r}")
        if not 1 <= self.k_max <= model.MAX_PATH_LENGTH:
            raise ConfigError("k_max out of range")
        if self.min_expected <= 0:
            raise ConfigError("min_expected must be positive")


_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def trial_seed(master_seed: int, size: int, trial: int) -> int:
    """Mix (master_seed, size, trial) into an independent 64-bit seed."""
    h = _splitmix64(master_seed & _MASK64)
    h = _splitmix64(h ^ (size & _MASK64))
    h = _splitmix64(h ^ (trial & _MASK64))
    return h


@dataclass(frozen=True)
class TrialResult:
    size: int
    trial: int
    divergence_histogram: stats.PathLengthHistogram
    node_count_histogram: stats.PathLengthHistogram
    level_census: dict[int, dict[str, int]]


@dataclass
class SizeResult:
    size: int
    histogram: stats.PathLengthHistogram          # pooled divergence depths
    node_count_histogram: stats.PathLengthHistogram
    trial_avg_divergence_depths: list[float]
    avg_divergence_depth: float
    avg_node_count: float
    model_distribution: model.ModelDistribution
    comparison_rows: list[stats.ComparisonRow]
    chi_square_paper: stats.ChiSquareResult
    chi_square_counts: stats.ChiSquareResult
    level_census: dict[int, dict[str, int]]       # pooled across trials


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    results: list[SizeResult] = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION


def run_trial(size: int, trial: int, cfg: ExperimentConfig) -> TrialResult:
    seed = trial_seed(cfg.master_seed, size, trial)
    addresses = addrgen.generate(
        addrgen.GeneratorConfig(mode=cfg.mode, seed=seed, count=size)
    )
    trie = Trie()
    for address in addresses:
        trie.insert(address, b"")
    metrics = trie.leaf_metrics()
    census = {
        depth: {
            "branches": lc.branches,
            "extensions": lc.extensions,
            "leaves": lc.leaves,
        }
        for depth, lc in sorted(trie.level_census().items())
    }
    return TrialResult(
        size=size,
        trial=trial,
        divergence_histogram=stats.PathLengthHistogram.from_depths(
            m.divergence_depth for m in metrics.values()
        ),
        node_count_histogram=stats.PathLengthHistogram.from_depths(
            m.node_count for m in metrics.values()
        ),
        level_census=census,
    )


def table_span(probabilities: dict[int, float], rows: int = 6,
               threshold: float = 1e-3) -> list[int]:
    """The consecutive path lengths a reference-style table covers:
    ``rows`` entries starting at the first length whose theoretical
    probability reaches ``threshold``."""
    start = min(
        (k for k, p in sorted(probabilities.items()) if p >= threshold),
        default=min(probabilities),
    )
    return [k for k in range(start, start + rows) if k in probabilities]


def _aggregate(size: int, trials: list[TrialResult], cfg: ExperimentConfig) -> SizeResult:
    pooled = stats.PathLengthHistogram({})
    pooled_nodes = stats.PathLengthHistogram({})
    census: dict[int, dict[str, int]] = {}
    trial_means = []
    for t in trials:
        pooled = stats.merge(pooled, t.divergence_histogram)
        pooled_nodes = stats.merge(pooled_nodes, t.node_count_histogram)
        trial_means.append(t.divergence_histogram.mean())
        for depth, kinds in t.level_census.items():
            slot = census.setdefault(
                depth, {"branches": 0, "extensions": 0, "leaves": 0}
            )
            for kind, count in kinds.items():
                slot[kind] += count

    dist = model.distribution(model.ModelParams(n=size, k_max=cfg.k_max))
    rows = stats.compare(dist, pooled)

    # Probability-basis statistic over the reference-style table span; the
    # full support would divide by underflowed tail probabilities.
    span = table_span(dist.probabilities)
    theo = {k: dist.probabilities[k] for k in span}
    obs = pooled.probabilities()
    paper_stat = stats.chi_square_paper(obs, theo)
    paper_dof = len(span) - 1
    paper = stats.ChiSquareResult(
        paper_stat, paper_dof, stats.p_value(paper_stat, paper_dof),
        f"bins: {span[0]}-{span[-1]}",
    )
    counts = stats.chi_square_counts(pooled, dist.probabilities, cfg.min_expected)

    return SizeResult(
        size=size,
        histogram=pooled,
        node_count_histogram=pooled_nodes,
        trial_avg_divergence_depths=trial_means,
        avg_divergence_depth=sum(trial_means) / len(trial_means),
        avg_node_count=pooled_nodes.mean(),
        model_distribution=dist,
        comparison_rows=rows,
        chi_square_paper=paper,
        chi_square_counts=counts,
        level_census={d: census[d] for d in sorted(census)},
    )


def run_experiment(cfg: ExperimentConfig, jobs: int = 1) -> ExperimentReport:
    """Run every (size, trial) pair and aggregate per size.

    ``jobs`` > 1 runs trials on a thread pool; the report is identical
    either way because aggregation is keyed, not schedule-ordered.
    """
    tasks = [(size, t) for size in cfg.sizes for t in range(cfg.trials)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            trial_results = list(
                pool.map(lambda st: run_trial(st[0], st[1], cfg), tasks)
            )
    else:
        trial_results = [run_trial(size, t, cfg) for size, t in tasks]

    by_size: dict[int, list[TrialResult]] = {size: [] for size in cfg.sizes}
    for result in trial_results:
        by_size[result.size].append(result)
    for group in by_size.values():
        group.sort(key=lambda r: r.trial)

    report = ExperimentReport(config=cfg)
    for size in cfg.sizes:
        report.results.append(_aggregate(size, by_size[size], cfg))
    return report


# -- serialization --------------------------------------------------------


def _chi_dict(result: stats.ChiSquareResult) -> dict:
    return {
        "statistic": result.statistic,
        "dof": result.dof,
        "p_value": result.p_value,
        "merged_bins": result.merged_bins,
    }


def report_to_dict(report: ExperimentReport) -> dict:
    cfg = report.config
    return {
        "schema_version": report.schema_version,
        "config": {
            "sizes": list(cfg.sizes),
            "trials": cfg.trials,
            "master_seed": cfg.master_seed,
            "mode": cfg.mode,
            "k_max": cfg.k_max,
            "output_format": cfg.output_format,
            "min_expected": cfg.min_expected,
        },
        "results": [
            {
                "size": r.size,
                "histogram": {str(k): c for k, c in sorted(r.histogram.counts.items())},
                "node_count_histogram": {
                    str(k): c for k, c in sorted(r.node_count_histogram.counts.items())
                },
                "trial_avg_divergence_depths": r.trial_avg_divergence_depths,
                "avg_divergence_depth": r.avg_divergence_depth,
                "avg_node_count": r.avg_node_count,
                "model_pmf": {
                    str(k): p for k, p in sorted(r.model_distribution.probabilities.items())
                },
                "comparison_rows": [
                    {
                        "path_length": row.path_length,
                        "theoretical_prob": row.theoretical_prob,
                        "experimental_prob": row.experimental_prob,
                        "difference": row.difference,
                    }
                    for row in r.comparison_rows
                ],
                "chi_square_paper": _chi_dict(r.chi_square_paper),
                "chi_square_counts": _chi_dict(r.chi_square_counts),
                "level_census": {str(d): kinds for d, kinds in r.level_census.items()},
            }
            for r in report.results
        ],
    }


def report_to_json(report: ExperimentReport) -> str:
    """Canonical JSON rendering; byte-identical for identical configs."""
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"
