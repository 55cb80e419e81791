"""Utilities for validating, comparing and summarizing saved verification reports."""

from __future__ import annotations

from typing import Any, Dict, List, Tuple

OUTCOMES = ("pass", "expected-fail", "unexpected-fail", "unexpected-pass", "skipped")
UNEXPECTED = ("unexpected-fail", "unexpected-pass")


def cell_key(cell: Dict[str, Any]) -> str:
    key = f"{cell.get('realization')}/{cell.get('mode')}/{cell.get('backend')}"
    if cell.get("q_value"):
        key += f"@{cell['q_value']}"
    return key


def validate_report(report: Dict[str, Any]) -> Tuple[bool, List[str]]:
    """Check a loaded JSON report has the fields the suite writes.

    Args:
        report: The report dictionary

    Returns:
        Tuple of (is_valid, list_of_errors)
    """
    errors: List[str] = []
    if not isinstance(report.get("meta"), dict) or "config" not in report.get("meta", {}):
        errors.append("meta: missing or without 'config'")
    cells = report.get("cells")
    if not isinstance(cells, list):
        return False, errors + ["cells: missing or not a list"]

    seen = set()
    for i, cell in enumerate(cells):
        path = f"cells[{i}]"
        for field in ("realization", "mode", "backend", "outcome"):
            if field not in cell:
                errors.append(f"{path}: missing '{field}'")
        if cell.get("outcome") not in OUTCOMES:
            errors.append(f"{path}: unknown outcome {cell.get('outcome')!r}")
        key = cell_key(cell)
        if key in seen:
            errors.append(f"{path}: duplicate cell {key}")
        seen.add(key)
        relations = set()
        for j, check in enumerate(cell.get("checks", [])):
            relation = check.get("relation")
            if relation in relations:
                errors.append(f"{path}.checks[{j}]: duplicate relation {relation}")
            relations.add(relation)
            if check.get("status") not in ("pass", "fail"):
                errors.append(f"{path}.checks[{j}]: bad status {check.get('status')!r}")
            if check.get("status") == "fail" and not check.get("witness"):
                errors.append(f"{path}.checks[{j}]: failing check {relation} has no witness")
    return len(errors) == 0, errors


def outcome_counts(report: Dict[str, Any]) -> Dict[str, int]:
    counts = {name: 0 for name in OUTCOMES}
    for cell in report.get("cells", []):
        counts[cell.get("outcome", "skipped")] = counts.get(cell.get("outcome", "skipped"), 0) + 1
    return counts


def compare_reports(old: Dict[str, Any], new: Dict[str, Any]) -> Dict[str, Any]:
    """Cell and check differences between two reports.

    Witness text and residuals are ignored; only outcomes and statuses count.
    """
    old_cells = {cell_key(cell): cell for cell in old.get("cells", [])}
    new_cells = {cell_key(cell): cell for cell in new.get("cells", [])}
    changes: List[str] = []
    for key in sorted(set(old_cells) & set(new_cells)):
        before, after = old_cells[key], new_cells[key]
        if before.get("outcome") != after.get("outcome"):
            changes.append(f"{key}: {before.get('outcome')} -> {after.get('outcome')}")
        old_checks = {c["relation"]: c.get("status") for c in before.get("checks", [])}
        new_checks = {c["relation"]: c.get("status") for c in after.get("checks", [])}
        for relation in sorted(set(old_checks) | set(new_checks)):
            if old_checks.get(relation) != new_checks.get(relation):
                changes.append(
                    f"{key} {relation}: {old_checks.get(relation, 'absent')} -> {new_checks.get(relation, 'absent')}"
                )
    return {
        "only_old": sorted(set(old_cells) - set(new_cells)),
        "only_new": sorted(set(new_cells) - set(old_cells)),
        "changes": changes,
    }


def generate_summary(report: Dict[str, Any], comparison: Dict[str, Any] = None) -> str:
    """Human-readable summary of one report, optionally with a comparison."""
    is_valid, errors = validate_report(report)
    counts = outcome_counts(report)
    lines = ["=" * 60, "REPORT SUMMARY", "=" * 60, ""]
    lines.append(f"Cells: {len(report.get('cells', []))}")
    for name in OUTCOMES:
        lines.append(f"  - {name}: {counts[name]}")
    unexpected = [cell_key(cell) for cell in report.get("cells", []) if cell.get("outcome") in UNEXPECTED]
    for key in unexpected:
        lines.append(f"  ✗ {key}")
    lines.append("")
    lines.append(f"Structure: {'PASSED' if is_valid else 'FAILED'}")
    for error in errors[:10]:
        lines.append(f"  - {error}")
    if len(errors) > 10:
        lines.append(f"  ... and {len(errors) - 10} more errors")
    if comparison is not None:
        lines.append("")
        lines.append(f"Cells only in baseline: {len(comparison['only_old'])}")
        lines.append(f"Cells only in candidate: {len(comparison['only_new'])}")
        lines.append(f"Changed outcomes/statuses: {len(comparison['changes'])}")
        for change in comparison["changes"][:20]:
            lines.append(f"  - {change}")
        if len(comparison["changes"]) > 20:
            lines.append(f"  ... and {len(comparison['changes']) - 20} more")
    lines.append("")
    lines.append("=" * 60)
    return "\n".join(lines)
