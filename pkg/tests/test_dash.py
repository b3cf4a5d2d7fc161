import os
import tempfile
import unittest

from lsatreason import dash
from lsatreason.harness import EvalReport, QuestionResult, save_report
from lsatreason.server.report_loader import ReportLoader


class TestDashboard(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        report = EvalReport(
            "AR",
            [
                QuestionResult("q1", 2, 2, [0.0, 0.1, 0.9, 0.0, 0.0]),
                QuestionResult("q2", 1, None, diagnostics=["unsatisfiable"]),
            ],
        )
        save_report(report, os.path.join(self.tmp.name, "run1"))
        with open(os.path.join(self.tmp.name, "run1", "notes.json"), "w") as f:
            f.write("[1, 2]")
        with open(os.path.join(self.tmp.name, "run1", "broken.json"), "w") as f:
            f.write("{")
        dash.rl.directory = self.tmp.name
        self.client = dash.app.test_client()

    def tearDown(self):
        self.tmp.cleanup()

    def test_loader(self):
        rl = ReportLoader(self.tmp.name)
        rl.load_reports()
        self.assertEqual(list(rl.report_data), ["run1"])
        self.assertEqual(list(rl.report_data["run1"]), ["ar"])
        self.assertEqual(
            rl.summary(),
            {"run1": {"ar": {"section": "AR", "accuracy": 50.0, "total": 2, "correct": 1, "abstained": 1}}},
        )
        missing = ReportLoader(os.path.join(self.tmp.name, "missing"))
        missing.load_reports()
        self.assertEqual(missing.report_data, {})

    def test_routes(self):
        self.assertEqual(self.client.get("/").status_code, 200)
        self.assertEqual(self.client.get("/runs").get_json()["run1"]["ar"]["correct"], 1)
        report = self.client.get("/run/run1/ar").get_json()
        self.assertEqual([q["id"] for q in report["questions"]], ["q1", "q2"])
        failures = self.client.get("/run/run1/ar/failures").get_json()
        self.assertEqual([q["id"] for q in failures], ["q2"])
        self.assertEqual(self.client.get("/run/run2/ar").status_code, 404)
        self.assertEqual(self.client.get("/run/run1/lr/failures").status_code, 404)


if __name__ == "__main__":
    unittest.main()
