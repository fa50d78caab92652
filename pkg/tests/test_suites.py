import pytest

from hecke_lab.suites import SUITES, SuiteError, run_suite


def test_table_suite():
    rep = run_suite("table-z2")
    assert rep.passed and len(rep.data["rows"]) == 16


def test_bernstein_suite_a1():
    assert run_suite("bernstein", ["A1"], box=3).passed


def test_hilbert_suite():
    rep = run_suite("hilbert")
    assert rep.passed
    assert {"a": 2, "b": 2, "symbol": 1} in rep.data["values"]


def test_determinism():
    a = run_suite("hecke-braid", ["A2"], seed=3).to_json()
    b = run_suite("hecke-braid", ["A2"], seed=3).to_json()
    assert a == b


def test_errors():
    with pytest.raises(SuiteError):
        run_suite("nonsense")
    with pytest.raises(ValueError):
        run_suite("hecke-quad", ["Q7"])


def test_failures_carry_witnesses():
    rep = run_suite("coset", ["A1"], box=1)
    assert not rep.passed
    assert all(c.witnesses for c in rep.checks if c.failed)


def test_names():
    assert set(SUITES) == {"table-z2", "weyl-length", "hecke-braid", "hecke-quad",
                           "bernstein", "shimura", "hilbert", "coset"}
