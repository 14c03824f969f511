from matrixdilog import suite


def test_quick_suite_passes():
    report = suite.run_suite(quick=True)
    assert report.passed, report.to_text()
    assert {c.family for c in report.checks} == set(suite.FAMILIES)
    assert any(c.expect_fail for c in report.checks)


def test_family_selection_keeps_streams():
    full = suite.run_suite(seed=3, quick=True)
    part = suite.run_suite(seed=3, families=("two-term",), quick=True)
    full_tt = [c for c in full.checks if c.family == "two-term"]
    assert [c.max_residual for c in part.checks] == [c.max_residual for c in full_tt]


def test_injected_bug_is_detected():
    with suite.injected_t_sign_bug():
        report = suite.run_suite(families=("symmetry",), quick=True)
    assert not report.passed
    # the patch is undone afterwards
    assert suite.run_suite(families=("symmetry",), quick=True).passed


def test_report_serialises():
    report = suite.run_suite(families=("scalar",), quick=True)
    assert '"seed"' in report.to_json()
    assert report.to_text().endswith(f"{len(report.checks)}/{len(report.checks)} checks passed")
