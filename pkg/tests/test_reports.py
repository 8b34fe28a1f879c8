import json

import pandas as pd
import pytest

from trussalg.reports import Report, TableReportFormatter


@pytest.fixture
def report():
    report = Report(["trussalg", "check-exact", "S1"], defaults={"window": 3, "seed": 0})
    report.add_verdict("exact at HR4 (1)", True, 0)
    report.add_verdict("pointed parts agree (1)", False, (1, 2))
    return report


class TestReport:
    def test_command(self, report):
        assert report.command == "trussalg check-exact S1"
        assert repr(report) == "<Report `trussalg check-exact S1`: FAIL>"

    def test_passed(self):
        report = Report("validate")
        assert report.passed
        assert report.add_verdict("H2", 1) == 1
        assert report.verdicts["H2"].value is True
        assert report.passed
        report.add_verdict("H3", False)
        assert not report.passed

    def test_caveats_are_deduplicated(self, report):
        report.add_caveats(["sampled", "sampled", "window"])
        report.add_caveats(["window"])
        assert report.caveats == ["sampled", "window"]

    def test_tables(self, report):
        report.add_table("rows", [{"o": 0, "agree": True}])
        assert isinstance(report.tables["rows"], pd.DataFrame)


class TestRendering:
    def test_text(self, report):
        assert report.render() == (
            "$ trussalg check-exact S1\n"
            "defaults: window=3, seed=0\n"
            "PASS exact at HR4 (1) (witness 0)\n"
            "FAIL pointed parts agree (1) (witness (1, 2))"
        )

    def test_text_sections(self, report):
        report.add_dump("HR2", "hom HR2 {\n}")
        report.add_caveats(["a", "b"])
        text = report.render("text")
        assert text.endswith("\n\n== HR2\nhom HR2 {\n}\n\ncaveats: a; b")

    def test_json(self, report):
        report.add_table("rows", [{"o": 0, "agree": True}])
        rendered = json.loads(report.render("json"))
        assert list(rendered) == ["command", "defaults", "verdicts", "passed", "dumps", "tables", "caveats"]
        assert rendered["verdicts"]["pointed parts agree (1)"] == {"value": False, "witness": [1, 2]}
        assert rendered["passed"] is False
        assert rendered["tables"]["rows"] == [{"o": 0, "agree": True}]

    def test_table(self, report):
        verdicts = TableReportFormatter(report).verdict_table()
        assert list(verdicts.columns) == ["check", "passed", "witness"]
        assert verdicts["witness"].tolist() == ["0", "(1, 2)"]
        report.add_dump("HR2", "hom HR2 {\n}")
        assert "hom HR2" not in report.render("table")

    def test_unknown_format(self, report):
        with pytest.raises(ValueError, match="Unknown report format"):
            report.render("yaml")
