import pytest

from trussalg.reports import Report
from trussalg.suite import VerificationSuite, load_manifest, run_suite


class TestManifest:
    def test_shipped(self):
        manifest = load_manifest()
        assert manifest["axioms"] == "all"
        assert manifest["forks"] == ["F1", "F2", "F3", "F4"]
        assert ["id4", "s2"] in manifest["parallel_pairs"]

    def test_from_path(self, tmp_path):
        path = tmp_path / "suite.yaml"
        path.write_text("modules: [MR4]\n")
        assert load_manifest(str(path)) == {"modules": ["MR4"]}

    def test_empty(self, tmp_path):
        path = tmp_path / "suite.yaml"
        path.write_text("")
        assert load_manifest(str(path)) == {}


class TestVerificationSuite:
    def test_unknown_family(self, fixtures):
        with pytest.raises(ValueError, match="Unknown check families: widgets"):
            VerificationSuite(fixtures, {}).run("widgets")

    def test_modules(self, fixtures):
        report = VerificationSuite(fixtures, {"modules": ["MR4", "MI2"]}).run("modules")
        assert list(report.verdicts) == ["modules:MR4", "modules:MI2"]
        assert report.passed
        summary = report.tables["families"]
        assert summary.to_dict("records") == [{"family": "modules", "checks": 2, "passed": 2}]

    def test_selection_skips_other_kinds(self, fixtures):
        report = VerificationSuite(fixtures, {"modules": ["MR4", "HR4", "missing"]}).run(["modules"])
        assert list(report.verdicts) == ["modules:MR4"]

    def test_sequences(self, fixtures):
        suite = VerificationSuite(fixtures, {"sequences": ["S1"]})
        report = suite.run("sequences")
        assert list(report.verdicts) == ["sequences:S1@1/transfer", "sequences:S1@1/translations"]
        assert report.passed
        assert report.tables["sequences"].to_dict("records") == [
            {"sequence": "S1", "position": 1, "exact": True}
        ]

    def test_parallel_pairs(self, fixtures):
        report = VerificationSuite(fixtures, {"parallel_pairs": [["id4", "s2"]]}).run("parallel_pairs")
        assert list(report.verdicts) == [
            "parallel_pairs:id4/s2/coequalizer",
            "parallel_pairs:id4/s2/equalizer",
        ]
        assert report.passed

    def test_forks(self, fixtures):
        suite = VerificationSuite(fixtures, {"forks": ["F3"]})
        report = suite.run("forks")
        assert report.verdicts["forks:F3"].value
        assert "forks:F3~" in report.verdicts
        assert suite.tables["forks"][0] == {"fork": "F3", "barr_exact": True}

    def test_run_suite(self, fixtures):
        report = Report("verify-suite modules")
        assert run_suite("modules", fixtures, {"modules": ["MR4"]}, report=report) is report
        assert report.verdicts["modules:MR4"].value

    def test_empty_family(self, fixtures):
        report = VerificationSuite(fixtures, {}).run("cospans")
        assert report.verdicts == {}
        assert report.tables["families"].to_dict("records") == [
            {"family": "cospans", "checks": 0, "passed": 0}
        ]
