#!/usr/bin/env python3
"""Compare a saved verification report with another one or with a fresh run.

With one file, the suite is rerun from the configuration stored in the report and
the output bytes are compared, which checks the run is deterministic.
"""

import argparse
import sys
from pathlib import Path

# Add src to path so we can import qbosonization modules
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root / "src"))
sys.path.insert(0, str(project_root))

from qbosonization.models import SuiteConfig
from qbosonization.services.conversion_service import ConversionService
from qbosonization.services.suite_service import SuiteService
from scripts.report_utils import compare_reports, generate_summary, validate_report


def rerun(report: dict) -> bytes:
    config = SuiteConfig(**report["meta"]["config"])
    return ConversionService.report_to_json(SuiteService().run(config))


def main():
    parser = argparse.ArgumentParser(description="Compare verification reports")
    parser.add_argument("baseline", help="Saved JSON report")
    parser.add_argument("candidate", nargs="?", help="Second report (default: rerun the baseline's config)")
    parser.add_argument("-o", "--output", help="Write the rerun report here")
    parser.add_argument("--quiet", action="store_true", help="Suppress output except errors")
    args = parser.parse_args()

    baseline_path = Path(args.baseline)
    if not baseline_path.exists():
        print(f"Error: Report not found: {baseline_path}", file=sys.stderr)
        sys.exit(2)
    try:
        baseline_bytes = baseline_path.read_bytes()
        baseline = ConversionService.load(baseline_path)
    except ValueError as e:
        print(f"Error: Invalid JSON in report: {e}", file=sys.stderr)
        sys.exit(2)

    is_valid, errors = validate_report(baseline)
    if not is_valid:
        print(f"✗ Baseline has {len(errors)} structural errors:", file=sys.stderr)
        for error in errors[:20]:
            print(f"  - {error}", file=sys.stderr)
        sys.exit(2)

    if args.candidate:
        candidate_bytes = Path(args.candidate).read_bytes()
        candidate = ConversionService.load(args.candidate)
    else:
        if not args.quiet:
            print(f"Rerunning suite from the configuration in {baseline_path}...")
        candidate_bytes = rerun(baseline)
        candidate = ConversionService.load_bytes(candidate_bytes)
        if args.output:
            ConversionService.write(args.output, candidate_bytes)

    comparison = compare_reports(baseline, candidate)
    if not args.quiet:
        print(generate_summary(candidate, comparison))

    identical = baseline_bytes == candidate_bytes
    if identical:
        print("✓ Reports are byte-identical")
    else:
        print("✗ Reports differ")
    sys.exit(0 if identical else 1)


if __name__ == "__main__":
    main()
