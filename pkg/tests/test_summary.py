import math

from jordan_wh.harness import CheckReport
from jordan_wh.summary import SUMMARY_COLUMNS, report_frame, suite_summary


def _report(check_id, residual, tolerance, passed, rejected=0):
    return CheckReport(check_id, "rn:2", 1, 10, rejected, residual, tolerance, passed, 2.0)


def test_suite_summary_groups_by_suite():
    reports = [
        _report("hua.residual", 1e-9, 1e-8, True),
        _report("wh.act.zero", 2e-10, 1e-10, False, rejected=3),
        _report("wh.act.semigroup", 0.0, 1e-10, True),
        _report("wh.cayley.order", 0.0, 0.0, True),
    ]
    table = suite_summary(report_frame(reports))
    assert list(table.columns) == SUMMARY_COLUMNS
    hua = table[table["suite"] == "hua"].iloc[0]
    wh = table[table["suite"] == "wh"].iloc[0]
    assert hua["checks"] == 1 and hua["failed"] == 0
    assert math.isclose(hua["worst_ratio"], 0.1)
    assert wh["checks"] == 3 and wh["failed"] == 1
    assert wh["samples_run"] == 30 and wh["samples_rejected"] == 3
    assert math.isclose(wh["worst_ratio"], 2.0)


def test_infinite_residuals_and_zero_tolerances():
    frame = report_frame([_report("axb.escape", math.inf, 0.0, False), _report("axb.x0.orbit", 1.0, 0.0, False)])
    assert frame["ratio"].tolist() == [math.inf, math.inf]


def test_empty_reports():
    table = suite_summary(report_frame([]))
    assert table.empty
    assert list(table.columns) == SUMMARY_COLUMNS
