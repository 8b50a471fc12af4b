import json
from collections import OrderedDict
from typing import Any, Dict, List, Tuple

import pandas as pd

from k3b.brauer.counting import count_classes, count_table_json, predicted_counts
from k3b.common.core_utils import logger
from k3b.forms.represent import BOX_SCAN
from k3b.kappa.fibers import fiber_consistency, fiber_degree, fm_count
from k3b.lattice.discriminant import DEFAULT_DISC_ENUM_BOUND
from k3b.suite.cases import (
    FLAGGED_DISCREPANCIES,
    MN04_SEARCH_BOUND,
    PELL_FAMILY_MAX_M,
    pell_family,
    run_all_cases,
)

REPORT_SCHEMA = "k3b-report/1"
REPORT_FORMATS = ("json", "table")

COUNT_TABLES: Tuple[Tuple[int, int], ...] = ((2, 1), (2, 2), (3, 1), (3, 3))
FIBER_TABLES: Tuple[Tuple[int, int], ...] = ((1, 2), (3, 2), (2, 2), (1, 3), (2, 3), (3, 3))


def _counts_section() -> List[Dict[str, Any]]:
    out = []
    for p, d in COUNT_TABLES:
        closed = count_classes(p, d)
        predicted = predicted_counts(p, d, 20)
        out.append(
            OrderedDict(
                p=str(p),
                d=str(d),
                table=count_table_json(p, closed),
                matches_prediction=dict(closed) == dict(predicted),
            )
        )
    return out


def _fibers_section() -> List[Dict[str, Any]]:
    return [
        OrderedDict(
            d=str(d),
            p=str(p),
            fiber_degree=str(fiber_degree(d, p)),
            fm_ratio=[str(fm_count(p * p * d)), str(fm_count(d))],
            consistent=fiber_consistency(d, p),
        )
        for d, p in FIBER_TABLES
    ]


def build_report(disc_bound: int = DEFAULT_DISC_ENUM_BOUND) -> Dict[str, Any]:
    """
    Runs every example and the count and fiber checks. Key order is fixed so
    two runs serialize identically.
    """
    cases = run_all_cases(disc_bound)
    family = pell_family(PELL_FAMILY_MAX_M, disc_bound)
    counts = _counts_section()
    fibers = _fibers_section()
    all_match = (
        all(v.matches for v in cases)
        and all(e.matches for e in family)
        and all(c["matches_prediction"] for c in counts)
        and all(f["consistent"] for f in fibers)
    )
    for v in cases:
        if not v.matches:
            logger.info(f"Case {v.case_id} concluded {v.isomorphic_conclusion}, expected {v.expected}")

    report = OrderedDict()
    report["schema"] = REPORT_SCHEMA
    report["cases"] = [v.to_json() for v in cases]
    report["pell_family"] = [e.to_json() for e in family]
    report["counts"] = counts
    report["fibers"] = fibers
    report["search_limits"] = OrderedDict(
        mn04_box=str(MN04_SEARCH_BOUND),
        represent_box_scan=str(BOX_SCAN),
        disc_enum_bound=str(disc_bound),
        pell_family_max_m=str(PELL_FAMILY_MAX_M),
    )
    report["flagged_discrepancies"] = [dict(x) for x in FLAGGED_DISCREPANCIES]
    report["all_match"] = all_match
    return report


def _cases_frame(report: Dict[str, Any]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "case": c["case_id"],
                "det_X": c["det_X"],
                "det_S": c["det_S"],
                "pic_isometric": c["pic_isometric"],
                "glue_unique": c["glue_unique"],
                "conclusion": c["isomorphic_conclusion"],
                "expected": c["expected"],
                "match": c["matches"],
            }
            for c in report["cases"]
        ]
    )


def emit_report(report: Dict[str, Any], fmt: str = "json") -> str:
    if fmt not in REPORT_FORMATS:
        raise ValueError(f"Unknown report format {fmt}, use one of {REPORT_FORMATS}")
    if fmt == "json":
        return json.dumps(report, indent=2)

    sections = [f"schema: {report['schema']}", "", _cases_frame(report).to_string(index=False)]
    family = pd.DataFrame(report["pell_family"])[
        ["b", "c", "D", "pell_solvable", "pic_isometric", "conclusion", "expected", "matches"]
    ]
    sections += ["", "pell family (d=1, p=2, c=0)", family.to_string(index=False)]
    for table in report["counts"]:
        df = pd.DataFrame(table["table"])
        sections += ["", f"counts p={table['p']} d={table['d']}", df.to_string(index=False)]
    sections += ["", "fibers", pd.DataFrame(report["fibers"]).to_string(index=False)]
    flagged = pd.DataFrame(report["flagged_discrepancies"])[["id", "resolution"]]
    sections += ["", "flagged discrepancies", flagged.to_string(index=False)]
    sections += ["", f"all_match: {report['all_match']}"]
    return "\n".join(sections)
