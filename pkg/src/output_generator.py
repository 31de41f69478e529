"""
Output generation module for formatting and saving verification results.
"""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List

from .config import Settings
from .oracle import CheckReport

logger = logging.getLogger(__name__)


class OutputGenerator:
    """Handles formatting and generation of verification output files."""

    def generate_output(self, reports: List[CheckReport], settings: Settings) -> Dict[str, Any]:
        """
        Generate the complete output structure with run metadata.

        Args:
            reports: Suite reports in the order they ran
            settings: Settings the suites ran under

        Returns:
            Output dictionary with metadata, reports and summary statistics
        """
        total_cases = sum(r.cases_checked for r in reports)
        total_failures = sum(len(r.failures) for r in reports)
        total_elapsed = sum(r.elapsed for r in reports)

        metadata = {
            "system": settings.name,
            "version": settings.version,
            "timestamp": datetime.now().isoformat(),
            "suites": [r.suite for r in reports],
            "seed": settings.seed,
            "jobs": settings.jobs,
            "bounds": {
                "max_level": settings.max_level,
                "max_sequence_count": settings.max_sequence_count,
                "max_denominator": settings.max_denominator,
            },
        }

        output = {
            "metadata": metadata,
            "reports": [r.to_dict() for r in reports],
            "summary_statistics": {
                "total_suites": len(reports),
                "passed_suites": sum(1 for r in reports if r.passed),
                "total_cases": total_cases,
                "total_failures": total_failures,
                "total_findings": sum(len(r.findings) for r in reports),
                "total_elapsed_seconds": round(total_elapsed, 3),
                "all_passed": total_failures == 0,
                "per_suite": {r.suite: r.passed for r in reports},
                "over_target": [
                    r.suite for r in reports
                    if r.elapsed > settings.target_seconds.get(r.suite, float("inf"))
                ],
            },
        }

        self._validate_output(output)
        return output

    def _validate_output(self, output: Dict[str, Any]) -> None:
        """
        Validate that output matches the expected layout.

        Raises:
            ValueError: If a required key is missing
        """
        for key in ("metadata", "reports", "summary_statistics"):
            if key not in output:
                raise ValueError(f"Missing required key in output: {key}")

        for key in ("system", "version", "timestamp", "suites"):
            if key not in output["metadata"]:
                raise ValueError(f"Missing required metadata key: {key}")

        for i, report in enumerate(output["reports"]):
            for key in ("suite", "depth", "cases", "passed", "failures"):
                if key not in report:
                    raise ValueError(f"Missing key '{key}' in reports[{i}]")

        logger.debug("Output validation successful")

    def save_output(self, output: Dict[str, Any], output_path: str) -> None:
        """
        Save output to a JSON file, creating the parent directory.

        Args:
            output: Output dictionary to save
            output_path: Path where to save the file
        """
        try:
            Path(output_path).parent.mkdir(parents=True, exist_ok=True)
            with open(output_path, "w", encoding="utf-8") as f:
                json.dump(output, f, indent=2, ensure_ascii=False)
            logger.info(f"Output saved successfully to: {output_path}")
        except Exception as e:
            logger.error(f"Error saving output to {output_path}: {e}")
            raise

    def generate_summary_report(self, output: Dict[str, Any]) -> str:
        """
        Generate a human-readable summary report.

        Args:
            output: Output dictionary

        Returns:
            Summary report as string
        """
        metadata = output["metadata"]
        summary = output["summary_statistics"]

        report = []
        report.append("=" * 60)
        report.append("KINSHIP VERIFICATION SUMMARY")
        report.append("=" * 60)
        report.append("")
        report.append("RUN METADATA:")
        report.append(f"  System: {metadata['system']} {metadata['version']}")
        report.append(f"  Timestamp: {metadata['timestamp']}")
        report.append(f"  Seed: {metadata['seed']}")
        report.append("")
        report.append("SUITES:")
        for r in output["reports"]:
            status = "PASS" if r["passed"] else "FAIL"
            report.append(
                f"  {r['suite']:<13} depth {r['depth']:>4}  {r['cases']:>8} cases  "
                f"{len(r['failures']):>4} failures  {r['elapsed_seconds']:>7.2f}s  {status}"
            )
        report.append("")
        report.append("STATISTICS:")
        report.append(f"  Suites passed: {summary['passed_suites']}/{summary['total_suites']}")
        report.append(f"  Cases checked: {summary['total_cases']}")
        report.append(f"  Failures: {summary['total_failures']}")
        report.append(f"  Findings: {summary['total_findings']}")
        if summary["over_target"]:
            report.append(f"  Over time target: {', '.join(summary['over_target'])}")
        report.append("")
        return "\n".join(report)

    def export_to_csv(self, output: Dict[str, Any], csv_path: str) -> List[str]:
        """
        Export per-suite summary and failures to CSV files.

        Writes <stem>_summary.csv and <stem>_failures.csv next to csv_path.

        Args:
            output: Output dictionary
            csv_path: Path whose stem names the CSV files

        Returns:
            Paths of the files written
        """
        import pandas as pd

        path = Path(csv_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        summary_path = path.with_name(f"{path.stem}_summary.csv")
        failures_path = path.with_name(f"{path.stem}_failures.csv")

        try:
            summary_df = pd.DataFrame(
                [
                    {
                        "suite": r["suite"],
                        "depth": r["depth"],
                        "cases": r["cases"],
                        "failures": len(r["failures"]),
                        "findings": len(r.get("findings", [])),
                        "elapsed_seconds": r.get("elapsed_seconds", 0.0),
                        "passed": r["passed"],
                    }
                    for r in output["reports"]
                ]
            )
            summary_df.to_csv(summary_path, index=False)

            failures_df = pd.DataFrame(
                [dict(suite=r["suite"], **f) for r in output["reports"] for f in r["failures"]],
                columns=["suite", "input", "expected", "actual"],
            )
            failures_df.to_csv(failures_path, index=False)

            logger.info(f"CSV exports saved: {summary_path}, {failures_path}")
        except Exception as e:
            logger.error(f"Error exporting to CSV: {e}")
            raise
        return [str(summary_path), str(failures_path)]
