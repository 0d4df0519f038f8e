"""
Export Manager - write reports as JSON, text or CSV
JSON output is canonical (sorted keys, fixed indent, trailing newline)
"""
import csv
import json
import os
from typing import Any, Dict, List, Union

from src.core.report import CheckReport, ProofVerdict, SuiteReport, Verdict
from src.utils.helpers import dumps_json, ensure_dir

Report = Union[CheckReport, SuiteReport, Verdict, ProofVerdict, Dict[str, Any]]

CSV_FIELDS = ['suite', 'check', 'passed', 'checked', 'failure_count']


def as_dict(report: Report) -> Dict[str, Any]:
    return report.to_dict() if hasattr(report, "to_dict") else dict(report)


def _checks(data: Dict[str, Any]) -> List[Dict[str, Any]]:
    """Flatten a (possibly nested) suite document into check rows"""
    if "checks" in data:
        rows = []
        for item in data["checks"]:
            if "suite" in item:
                rows.extend(_checks(item))
            else:
                rows.append(dict(item, suite=data.get("suite", "")))
        return rows
    if "check" in data:
        return [dict(data, suite="")]
    return []


class ExportManager:
    """Serialize verification results"""

    @staticmethod
    def to_json(report: Report, indent: int = 2) -> str:
        return dumps_json(as_dict(report), indent)

    @staticmethod
    def to_text(report: Report) -> str:
        """Short human summary: one line per check, failures indented below"""
        data = as_dict(report)
        rows = _checks(data)
        if not rows:
            return "\n".join(f"{k}: {_plain(v)}" for k, v in sorted(data.items())) + "\n"
        lines = []
        if "suite" in data:
            status = "PASS" if data.get("passed") else "FAIL"
            lines.append(f"{status} {data['suite']}")
        for row in rows:
            status = "PASS" if row.get("passed") else "FAIL"
            prefix = f"{row['suite']}/" if row.get("suite") else ""
            lines.append(f"  {status} {prefix}{row['check']}: "
                         f"{row.get('checked', 0)} checked, {row.get('failure_count', 0)} failed")
            for failure in row.get("failures", [])[:3]:
                lines.append(f"      {_plain(failure)}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def export_to_json(report: Report, filepath: str, indent: int = 2):
        ensure_dir(os.path.dirname(filepath))
        with open(filepath, 'w', encoding='utf-8') as f:
            f.write(ExportManager.to_json(report, indent))

    @staticmethod
    def export_to_txt(report: Report, filepath: str):
        ensure_dir(os.path.dirname(filepath))
        with open(filepath, 'w', encoding='utf-8') as f:
            f.write(ExportManager.to_text(report))

    @staticmethod
    def export_to_csv(report: Report, filepath: str):
        """One row per check"""
        ensure_dir(os.path.dirname(filepath))
        with open(filepath, 'w', newline='', encoding='utf-8') as f:
            writer = csv.DictWriter(f, fieldnames=CSV_FIELDS)
            writer.writeheader()
            for row in _checks(as_dict(report)):
                writer.writerow({
                    'suite': row.get('suite', ''),
                    'check': row.get('check', ''),
                    'passed': row.get('passed', False),
                    'checked': row.get('checked', 0),
                    'failure_count': row.get('failure_count', 0),
                })

    @staticmethod
    def export(report: Report, filepath: str, indent: int = 2):
        """Pick the exporter by file extension"""
        ext = os.path.splitext(filepath)[1].lower()
        if ext == '.csv':
            ExportManager.export_to_csv(report, filepath)
        elif ext == '.txt':
            ExportManager.export_to_txt(report, filepath)
        else:
            ExportManager.export_to_json(report, filepath, indent)

    @staticmethod
    def import_from_json(filepath: str) -> Dict[str, Any]:
        with open(filepath, 'r', encoding='utf-8') as f:
            return json.load(f)


def _plain(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, ensure_ascii=False)
    return str(value)
