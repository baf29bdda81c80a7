import pytest

from hgs.byott import HgsRow
from hgs.catalog import P3_COLUMNS, P3Type
from hgs.checks import (
    CheckReport,
    verify_corollaries,
    verify_prop_pn,
    verify_prop_pn2,
    verify_thm_abin,
    verify_thm_nonab,
)


def row_from_tuple(name, values):
    row = HgsRow(g_name=name, p=3)
    row.counts = dict(zip(P3_COLUMNS, values))
    return row


def golden_rows():
    import csv
    from pathlib import Path

    path = Path(__file__).parent / "data" / "golden_table27.csv"
    rows = []
    with open(path) as fh:
        for rec in csv.DictReader(fh):
            values = tuple(int(rec[c]) for c in ("C27", "C9xC3", "H27", "C3^3", "G27"))
            assert sum(values) == int(rec["Total"])
            rows.append(row_from_tuple(rec["G"], values))
    return rows


def test_report_formatting():
    rep = CheckReport("demo", {"p": 3})
    rep.expect("value", 2, 2, "toy")
    assert rep.passed
    rep.expect("other", 1, 2, "toy")
    assert not rep.passed
    text = "\n".join(rep.lines())
    assert "FAIL" in text and "MISMATCH" in text


def test_prop_pn_small():
    rep = verify_prop_pn(3, 2)
    assert rep.passed, "\n".join(rep.lines())


def test_prop_pn2_small():
    rep = verify_prop_pn2(3, 2)
    assert rep.passed, "\n".join(rep.lines())
    rep7 = verify_prop_pn2(7, 2)
    assert rep7.passed, "\n".join(rep7.lines())


def test_thm_nonab_p3():
    rep = verify_thm_nonab(3)
    assert rep.passed, "\n".join(rep.lines())


def test_thm_abin_p3_reports():
    rep = verify_thm_abin(3)
    assert rep.passed, "\n".join(rep.lines())
    assert any("census(P1)" in note for note in rep.notes)


def test_corollary_audit_on_published_rows():
    # the full published table satisfies every implication, and the p = 3
    # exceptional rows (mixed and elementary together) are reported as notes
    rep = verify_corollaries(golden_rows())
    assert rep.passed, "\n".join(rep.lines())
    assert any("only possible at p = 3" in note for note in rep.notes)


def test_corollary_audit_flags_violations():
    bad = row_from_tuple("bad", (1, 0, 5, 0, 0))  # cyclic plus Heisenberg
    rep = verify_corollaries([bad])
    assert not rep.passed
