import csv
import math
from pathlib import Path
from typing import Iterable, List, Sequence

from data_models import GofResult


def fmt_float(value: float) -> str:
    """Six significant digits."""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.6g}"


def fmt_pvalue(value: float) -> str:
    return f"{value:.4f}"


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[object]]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def gof_rows(result: GofResult) -> List[List[str]]:
    return [
        [label, str(obs), fmt_float(exp)]
        for label, obs, exp in zip(result.labels, result.observed, result.expected)
    ]


def gof_summary(title: str, result: GofResult) -> List[str]:
    lines = [
        f"{title}",
        f"  categories: {', '.join(result.labels)}",
        f"  observed:   {', '.join(str(o) for o in result.observed)}",
        f"  expected:   {', '.join(fmt_float(e) for e in result.expected)}",
        f"  chi2 = {fmt_float(result.stat)}, dof = {result.dof}, p-value = {fmt_pvalue(result.pvalue)}",
        f"  policy: {result.policy}",
    ]
    if result.merged:
        lines.append("  note: thin categories were merged")
    if result.low_sample:
        lines.append("  note: low sample (fewer than 30 qualifying primes)")
    return lines
