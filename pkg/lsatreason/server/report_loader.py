import json
import logging
import os

REPORT_SUFFIX = ".json"


class ReportLoader:
    """
    Reads evaluation reports written by `save_report`.

    The directory holds one sub-directory per run (the `--out` directory of a
    command); every `*.json` file inside a run is one section report.
    """

    def __init__(self, directory: str):
        self.directory = directory
        self.report_data: dict[str, dict[str, dict]] = {}

    def load_reports(self):
        self.report_data = {}
        if not os.path.isdir(self.directory):
            logging.warning("Report directory %s does not exist", self.directory)
            return
        for run in sorted(os.listdir(self.directory)):
            run_data = self.load_run(run)
            if run_data:
                self.report_data[run] = run_data

    def load_run(self, run: str):
        run_path = os.path.join(self.directory, run)
        if not os.path.isdir(run_path):
            return None
        reports = {}
        for name in sorted(os.listdir(run_path)):
            if not name.endswith(REPORT_SUFFIX):
                continue
            report = self.load_report(os.path.join(run_path, name))
            if report is not None:
                reports[name[: -len(REPORT_SUFFIX)]] = report
        return reports

    def load_report(self, path: str):
        try:
            with open(path, encoding="utf-8") as f:
                report = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logging.warning("Skipping %s: %s", path, e)
            return None
        if not isinstance(report, dict) or "section" not in report or "questions" not in report:
            return None
        return report

    def summary(self) -> dict[str, dict[str, dict]]:
        """Run -> report name -> headline numbers, without the per-question rows."""
        return {
            run: {
                name: {key: report.get(key) for key in ("section", "accuracy", "total", "correct", "abstained")}
                for name, report in reports.items()
            }
            for run, reports in self.report_data.items()
        }
