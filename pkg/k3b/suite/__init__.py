from k3b.suite.cases import ExampleVerdict, case_registry, pell_family, run_case
from k3b.suite.report import build_report, emit_report

__all__ = [
    "ExampleVerdict",
    "build_report",
    "case_registry",
    "emit_report",
    "pell_family",
    "run_case",
]
