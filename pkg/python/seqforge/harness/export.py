"""
Report export.

``export_summary`` writes the summary JSON (schema version, plan, per-run
records, per-cell aggregates) and a flat CSV with one row per run.

Author: seqforge developers
License: MIT
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Tuple, Union

import pandas as pd

from ..core.constants import FILE_FORMATS
from ..core.validators import ValidationError

logger = logging.getLogger(__name__)

FLOAT_FORMAT = f"%.{FILE_FORMATS['significant_digits']}g"


def summary_table(report) -> pd.DataFrame:
    """Flat per-run table with the summary CSV columns in fixed order."""
    columns = list(FILE_FORMATS["summary_columns"])
    return pd.DataFrame([r.to_dict() for r in report.records]).reindex(columns=columns)


def export_summary(report, path: Union[str, Path]) -> Tuple[Path, Path]:
    """
    Write summary JSON and CSV for a report.

    Args:
        report: ExperimentReport
        path: JSON file path; the CSV is written next to it with suffix .csv.
            A directory path writes summary.json / summary.csv inside it.

    Returns:
        Tuple of (json path, csv path)

    Raises:
        ValidationError: If the report has no records
    """
    if len(report) == 0:
        raise ValidationError("cannot export an empty report")

    path = Path(path)
    if path.suffix != ".json":
        path = path / "summary.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    csv_path = path.with_suffix(".csv")

    summary_table(report).to_csv(csv_path, index=False, float_format=FLOAT_FORMAT,
                                 lineterminator="\n")

    payload: Dict[str, Any] = {
        "schema_version": FILE_FORMATS["summary_schema_version"],
        "workers": report.workers,
        "plan": report.plan.to_dict() if report.plan is not None else None,
        "records": [r.to_dict() for r in report.records],
        "aggregates": json.loads(report.aggregates().to_json(orient="records")),
    }
    with open(path, 'w') as f:
        json.dump(payload, f, indent=2)

    logger.info(f"Summary written to {path} and {csv_path}")
    return path, csv_path


def timing_by_length(report) -> pd.DataFrame:
    """
    Mean wall time and iterations per (length, init, algorithm, strategy).

    Means are taken over trials within one initialization; initializations
    are not pooled.
    """
    df = report.to_dataframe()
    if df.empty:
        return df
    keys = ["length", "init", "algorithm", "strategy"]
    out = df.groupby(keys, sort=True).agg(
        runs=("trial", "count"),
        mean_wall_seconds=("wall_seconds", "mean"),
        mean_iterations=("iterations", "mean"),
    )
    return out.reset_index()


def load_summary(path: Union[str, Path]) -> Dict[str, Any]:
    """Load a summary JSON written by ``export_summary``."""
    with open(path, 'r') as f:
        return json.load(f)
