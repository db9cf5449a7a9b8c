from __future__ import annotations

import numpy as np
import pandas as pd

from jordan_wh.harness import CheckReport

SUMMARY_COLUMNS = ["suite", "checks", "failed", "samples_run", "samples_rejected", "worst_ratio"]


def report_frame(reports: list[CheckReport]) -> pd.DataFrame:
    df = pd.DataFrame([r.to_json() for r in reports])
    if df.empty:
        return df
    df["max_residual"] = df["max_residual"].astype(float).fillna(np.inf)
    df["suite"] = df["check_id"].str.split(".").str[0]
    # a zero tolerance makes any positive residual an infinite ratio
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = df["max_residual"] / df["tolerance"]
    df["ratio"] = ratio.where(df["max_residual"] > 0.0, 0.0)
    return df


def suite_summary(frame: pd.DataFrame) -> pd.DataFrame:
    if frame.empty:
        return pd.DataFrame(columns=SUMMARY_COLUMNS)
    return (
        frame.assign(failed=~frame["pass"])
        .groupby("suite", as_index=False)
        .agg(
            checks=("check_id", "count"),
            failed=("failed", "sum"),
            samples_run=("samples_run", "sum"),
            samples_rejected=("samples_rejected", "sum"),
            worst_ratio=("ratio", "max"),
        )[SUMMARY_COLUMNS]
    )
