import pytest

from src.core.axioms import (
    AXIOMS, EXCLUDED_AXIOMS, axiom_key, check_acla, check_extension_operators, check_levels,
    check_omega, check_subset_agreement, check_subset_equality, check_unboundedness,
    omega_battery, universe_suite, verify_axiom,
)
from src.core.errors import UniverseError, UnknownCheckError


@pytest.mark.parametrize("name", sorted(AXIOMS))
def test_axioms_hold_at_level_two(name):
    report = verify_axiom(name, 2)
    assert report.passed, report.failures
    assert report.checked > 0
    assert report.check == f"axiom:{name}"


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(AXIOMS))
def test_axioms_hold_at_level_three(name):
    report = verify_axiom(name, 3)
    assert report.passed, report.failures


@pytest.mark.parametrize("alias,key", [
    ("Extensionality", "extensionality"),
    ("ClassicalSuperset", "classical_superset"),
    ("classical-superset", "classical_superset"),
    ("PowerSet", "powerset"),
])
def test_axiom_aliases(alias, key):
    assert axiom_key(alias) == key


@pytest.mark.parametrize("name", EXCLUDED_AXIOMS + ("regularity",))
def test_unverified_axioms(name):
    with pytest.raises(UnknownCheckError):
        axiom_key(name)


def test_level_argument():
    with pytest.raises(UniverseError):
        verify_axiom("union", 4)


def test_subset_and_equality_characterization():
    report = check_subset_equality(2)
    assert report.passed, report.failures
    assert report.extra["pairs"] == 16
    assert check_subset_agreement(2).passed


def test_extension_operators():
    report = check_extension_operators(2)
    assert report.passed, report.failures
    assert report.extra["self_inequality_witness"] is not None


def test_levels_battery():
    report = check_levels(3)
    assert report.passed, report.failures
    assert report.extra["sizes"] == [0, 1, 4, 256]


def test_acla_battery():
    report = check_acla(samples=20, seed=2)
    assert report.passed, report.failures
    assert report.extra["truth_value_b"] == "b"


def test_omega_battery():
    formulas = omega_battery(40, seed=1)
    assert len(formulas) == 40
    assert len(set(formulas)) == 40
    assert check_omega(20, seed=1).passed


def test_unboundedness():
    assert check_unboundedness(3).passed


def test_universe_suite_truncates_failures():
    suite = universe_suite(level=2, acla_samples=10, omega_formulas=10, max_failures=5)
    assert suite.passed
    assert len(suite.checks) == len(AXIOMS) + 7
