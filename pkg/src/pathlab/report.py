"""Rendering of model queries and experiment reports, plus the
reference-table reproduction path.

Probabilities render at six decimal places and averages at two, so the
generated tables diff cleanly against the published reference tables.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import model, stats
from .addrgen import collision_probability
from .harness import (
    DEFAULT_SIZES,
    ExperimentConfig,
    ExperimentReport,
    report_to_json,
    run_experiment,
    table_span,
)

FORMATS = ("markdown", "csv", "json")

DISTRIBUTION_CSV_HEADER = "path_length,theoretical_prob,experimental_prob,difference"


class FormatError(ValueError):
    pass


def _check_format(fmt: str) -> None:
    if fmt not in FORMATS:
        raise FormatError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def _f6(x: float) -> str:
    return f"{x:.6f}"


def _f2(x: float) -> str:
    return f"{x:.2f}"


# -- model query ----------------------------------------------------------

SMALL_N_NOTE = (
    "note: the model is an independence approximation; for n below 100 "
    "its probabilities deviate measurably from exact values"
)


def model_query(n: int, k_max: int = model.MAX_PATH_LENGTH,
                fmt: str = "markdown") -> str:
    """Render the analytic distribution and summary statistics for n keys."""
    _check_format(fmt)
    dist = model.distribution(model.ModelParams(n=n, k_max=k_max))
    expected = model.expected_path_length(n)
    ratio = model.asymptotic_ratio(n) if n >= 2 else None
    collision = collision_probability(n)
    note = SMALL_N_NOTE if n < 100 else None

    if fmt == "json":
        payload = {
            "n": n,
            "k_max": k_max,
            "pmf": {str(k): p for k, p in sorted(dist.probabilities.items())},
            "expected_path_length": expected,
            "mode": dist.mode,
            "asymptotic_ratio": ratio,
            "collision_probability": collision,
        }
        if note:
            payload["note"] = note
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    visible = [
        (k, p) for k, p in sorted(dist.probabilities.items())
        if p >= stats.DISPLAY_THRESHOLD
    ] or [(dist.mode, dist.probabilities[dist.mode])]

    if fmt == "csv":
        lines = ["path_length,probability"]
        lines += [f"{k},{_f6(p)}" for k, p in visible]
        lines.append("")
        lines.append("metric,value")
        lines.append(f"expected_path_length,{_f6(expected)}")
        lines.append(f"mode,{dist.mode}")
        if ratio is not None:
            lines.append(f"asymptotic_ratio,{_f6(ratio)}")
        lines.append(f"collision_probability,{collision:.6e}")
        if note:
            lines.append(f"note,{note}")
        return "\n".join(lines) + "\n"

    lines = [f"# Path-length model for n = {n}", ""]
    lines.append("| Path Length | Probability |")
    lines.append("|---|---|")
    lines += [f"| {k} | {_f6(p)} |" for k, p in visible]
    lines.append("")
    lines.append(f"- Expected path length: {_f6(expected)}")
    lines.append(f"- Mode: {dist.mode}")
    if ratio is not None:
        lines.append(f"- Ratio to log16(n): {_f6(ratio)}")
    lines.append(f"- Collision probability: {collision:.6e}")
    if note:
        lines.append(f"- {note}")
    return "\n".join(lines) + "\n"


# -- comparison tables ----------------------------------------------------


def _comparison_csv(rows) -> str:
    lines = [DISTRIBUTION_CSV_HEADER]
    lines += [
        f"{r.path_length},{_f6(r.theoretical_prob)},"
        f"{_f6(r.experimental_prob)},{_f6(r.difference)}"
        for r in rows
    ]
    return "\n".join(lines) + "\n"


def _comparison_markdown(rows) -> str:
    lines = ["| Path Length | Theoretical Prob. | Experimental Prob. | Difference |"]
    lines.append("|---|---|---|---|")
    lines += [
        f"| {r.path_length} | {_f6(r.theoretical_prob)} | "
        f"{_f6(r.experimental_prob)} | {_f6(r.difference)} |"
        for r in rows
    ]
    return "\n".join(lines) + "\n"


def render_report(report: ExperimentReport, fmt: str = "markdown") -> str:
    """Render an experiment report in the requested format."""
    _check_format(fmt)
    if fmt == "json":
        return report_to_json(report)

    if fmt == "csv":
        parts = []
        for r in report.results:
            parts.append(f"# size={r.size}")
            parts.append(_comparison_csv(r.comparison_rows).rstrip("\n"))
            parts.append(
                f"# avg_divergence_depth={_f2(r.avg_divergence_depth)}"
                f" avg_node_count={_f2(r.avg_node_count)}"
            )
            parts.append(
                "# chi_square_paper="
                f"{_f6(r.chi_square_paper.statistic)}"
                f" p={r.chi_square_paper.p_value:.4f}"
                " chi_square_counts="
                f"{_f6(r.chi_square_counts.statistic)}"
                f" dof={r.chi_square_counts.dof}"
                f" p={r.chi_square_counts.p_value:.4f}"
            )
            parts.append("")
        return "\n".join(parts)

    lines = []
    for r in report.results:
        lines.append(f"## {r.size} addresses")
        lines.append("")
        lines.append(_comparison_markdown(r.comparison_rows).rstrip("\n"))
        lines.append("")
        lines.append(
            f"- Average divergence depth: {_f2(r.avg_divergence_depth)} "
            f"(model: {_f2(model.expected_path_length(r.size))})"
        )
        lines.append(f"- Average node count: {_f2(r.avg_node_count)}")
        lines.append(
            f"- Chi-square (probability basis): "
            f"{_f6(r.chi_square_paper.statistic)}, "
            f"p = {r.chi_square_paper.p_value:.4f}"
        )
        lines.append(
            f"- Chi-square (count basis, merged): "
            f"{_f6(r.chi_square_counts.statistic)}, "
            f"dof = {r.chi_square_counts.dof}, "
            f"p = {r.chi_square_counts.p_value:.4g} "
            f"[{r.chi_square_counts.merged_bins}]"
        )
        lines.append("")
    return "\n".join(lines)


# -- reference-table reproduction -----------------------------------------


def reproduce_tables(out_dir: str | Path, master_seed: int = 0,
                     trials: int = 10, jobs: int = 1) -> list[Path]:
    """Emit the six reference tables into ``out_dir``.

    Four per-size distribution tables, the average-path-length table,
    and the chi-square table. Theoretical columns are fully analytic;
    experimental columns come from a seeded simulation.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cfg = ExperimentConfig(
        sizes=tuple(DEFAULT_SIZES), trials=trials, master_seed=master_seed
    )
    report = run_experiment(cfg, jobs=jobs)
    paths = []

    for i, r in enumerate(report.results, start=1):
        span = table_span(r.model_distribution.probabilities)
        obs = r.histogram.probabilities()
        rows = [
            stats.ComparisonRow(
                k, r.model_distribution.probabilities[k], obs.get(k, 0.0)
            )
            for k in span
        ]
        path = out / f"table{i}_path_lengths_{r.size}.csv"
        path.write_text(_comparison_csv(rows))
        paths.append(path)

    lines = ["number_of_addresses,theoretical_avg,experimental_avg,difference"]
    for r in report.results:
        theo = model.expected_path_length(r.size)
        exp = r.avg_divergence_depth
        lines.append(f"{r.size},{_f2(theo)},{_f2(exp)},{_f2(abs(theo - exp))}")
    path = out / "table5_average_path_lengths.csv"
    path.write_text("\n".join(lines) + "\n")
    paths.append(path)

    lines = [
        "number_of_addresses,chi_square_paper,p_value_paper,"
        "chi_square_counts,dof_counts,p_value_counts"
    ]
    for r in report.results:
        lines.append(
            f"{r.size},{_f6(r.chi_square_paper.statistic)},"
            f"{r.chi_square_paper.p_value:.4f},"
            f"{_f6(r.chi_square_counts.statistic)},"
            f"{r.chi_square_counts.dof},"
            f"{r.chi_square_counts.p_value:.6e}"
        )
    path = out / "table6_chi_square.csv"
    path.write_text("\n".join(lines) + "\n")
    paths.append(path)

    return paths
