import copy
import json

import pytest

import k3b.suite.cases as suite_cases
from k3b.kappa.surface import SurfaceParams
from k3b.suite import build_report, case_registry, emit_report, pell_family, run_case
from k3b.suite.cases import ISOMORPHIC, NOT_ISOMORPHIC, UNDETERMINED, conclude, mn04_search


@pytest.fixture(scope="module")
def report():
    return build_report()


@pytest.mark.parametrize(
    "case_id,verdict,det",
    [
        ("X8_rnc3", NOT_ISOMORPHIC, -25),
        ("X16_line", ISOMORPHIC, -33),
        ("X18_line", ISOMORPHIC, -37),
        ("X24_line", NOT_ISOMORPHIC, -49),
        ("X36_line", ISOMORPHIC, -73),
    ],
)
def test_run_case(case_id, verdict, det):
    v = run_case(case_id)
    assert v.isomorphic_conclusion == verdict
    assert v.det_x == det
    assert v.det_s == det
    assert v.matches
    if verdict == ISOMORPHIC:
        assert v.pic_isometric
        assert v.glue_unique


def test_case_details():
    x18 = run_case("X18_line")
    assert x18.details["mn04_witness"] == ["1", "3"]
    assert x18.details["mn04_h1_squared"] == "6"
    assert x18.details["disc_orthogonal_group"] == ["1", "36"]

    x16 = run_case("X16_line")
    assert x16.details["disc_action"] == "23"
    assert x16.details["disc_orthogonal_group"] == ["1", "10", "23", "32"]

    x8 = run_case("X8_rnc3")
    assert x8.details["pic_S"] == [["2", "3"], ["3", "-8"]]
    assert x8.details["pell"]["D"] == "25"
    assert not x8.details["pell"]["solvable"]

    assert run_case("X24_line").notes == ("degree24_label",)


def test_mn04_search():
    x18 = run_case("X18_line")
    lattice = x18.params.pic_x()
    assert mn04_search(lattice, 3) == (1, 3)
    assert mn04_search(lattice, 3, bound=0) is None


def test_unknown_case():
    assert len(case_registry) == 5
    with pytest.raises(ValueError, match="unknown case"):
        run_case("X10_plane")


def test_pell_family():
    family = pell_family()
    assert [e.b for e in family] == list(range(1, 22, 2))
    assert all(e.matches for e in family)
    assert [e.D for e in family[:2]] == [1, 9]
    assert family[1].pell_witness == (1, 1)
    assert family[1].pell_sign == -1
    assert all(not e.pell_solvable for e in family[2:])


def test_build_report(report):
    assert len(report["cases"]) == 5
    assert len(report["flagged_discrepancies"]) >= 2
    assert report["all_match"]
    assert all(c["matches_prediction"] for c in report["counts"])
    assert all(f["consistent"] for f in report["fibers"])
    # Integers are serialized as decimal strings.
    assert report["cases"][0]["det_X"].lstrip("-").isdigit()


def test_report_deterministic(report):
    assert json.dumps(report) == json.dumps(build_report())


def test_emit_report(report):
    text = emit_report(report, "table")
    assert "all_match: True" in text
    assert "X36_line" in text
    assert json.loads(emit_report(report, "json"))["all_match"] is True
    with pytest.raises(ValueError, match="Unknown report format"):
        emit_report(report, "yaml")


@pytest.mark.parametrize(
    "s,iso,glue,pell,verdict",
    [
        (SurfaceParams(d=2, p=3, b=1, c=-1), True, False, None, UNDETERMINED),
        (SurfaceParams(d=2, p=3, b=1, c=-1), True, True, None, ISOMORPHIC),
        (SurfaceParams(d=2, p=3, b=1, c=-1), False, None, None, NOT_ISOMORPHIC),
        (SurfaceParams(d=1, p=2, b=3, c=-1), True, False, False, NOT_ISOMORPHIC),
        (SurfaceParams(d=1, p=2, b=3, c=-1), True, False, True, UNDETERMINED),
    ],
)
def test_conclude(s, iso, glue, pell, verdict):
    assert conclude(s, iso, glue, pell) == verdict


def test_undetermined_case_reported(report, monkeypatch):
    monkeypatch.setattr(suite_cases, "glue_uniqueness", lambda f, bound: False)
    v = run_case("X36_line")
    assert v.pic_isometric
    assert v.glue_unique is False
    assert v.isomorphic_conclusion == UNDETERMINED
    assert not v.matches

    patched = copy.deepcopy(report)
    patched["cases"] = [v.to_json() if c["case_id"] == "X36_line" else c for c in patched["cases"]]
    text = emit_report(patched, "table")
    row = next(line for line in text.splitlines() if "X36_line" in line)
    assert UNDETERMINED in row
    by_id = {c["case_id"]: c for c in json.loads(emit_report(patched, "json"))["cases"]}
    assert by_id["X36_line"]["isomorphic_conclusion"] == UNDETERMINED
