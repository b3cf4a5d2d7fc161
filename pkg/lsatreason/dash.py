import argparse
import logging

import flask

from .server.report_loader import ReportLoader

REPORTS_DIR = "reports"

app = flask.Flask(__name__)
rl = ReportLoader(REPORTS_DIR)


@app.route("/")
def index():
    rl.load_reports()
    return flask.render_template("index.html")


@app.route("/runs", methods=["GET"])
def get_runs():
    return flask.jsonify(rl.summary())


@app.route("/run/<run>/<report>", methods=["GET"])
def get_report(run: str, report: str):
    reports = rl.report_data.get(run)
    if reports is None or report not in reports:
        flask.abort(404)
    return flask.jsonify(reports[report])


@app.route("/run/<run>/<report>/failures", methods=["GET"])
def get_failures(run: str, report: str):
    reports = rl.report_data.get(run)
    if reports is None or report not in reports:
        flask.abort(404)
    questions = [q for q in reports[report]["questions"] if q["predicted"] != q["gold"]]
    return flask.jsonify(questions)


def main():
    logging.basicConfig(level=logging.INFO)
    parser = argparse.ArgumentParser(description="Evaluation report dashboard.")
    parser.add_argument("--reports", type=str, default=REPORTS_DIR, help="Directory of report runs.")
    parser.add_argument("--host", type=str, default=None, help="HTTP server host.")
    parser.add_argument("--port", type=int, default=None, help="HTTP server port.")
    args = parser.parse_args()
    rl.directory = args.reports
    app.run(host=args.host, port=args.port, debug=True)


if __name__ == "__main__":
    main()
