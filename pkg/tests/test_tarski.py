import pytest

from src.core.errors import ModelValidationError, UnknownCheckError
from src.core.formula import Signature
from src.core.semantics import evaluate
from src.core.tarski import (
    AND, IMP, NEG, OR, FVTarskiModel, ModelClass, classify_consequence, classify_validity,
    enumerate_tarski_models, from_tf, roundtrip_report, separation_matrix, tarski_truth_value,
    tarski_value, to_tf, validate_tarski,
)
from src.core.truth import BOTH, NEITHER, ONE, ZERO
from src.core.universe import omega_member


def test_meta_tables():
    assert NEG[BOTH] == BOTH and NEG[NEITHER] == NEITHER and NEG[ONE] == ZERO
    assert AND[BOTH, NEITHER] == ZERO
    assert OR[BOTH, NEITHER] == ONE
    assert IMP[NEITHER, ZERO] == ONE
    assert IMP[BOTH, ZERO] == ZERO


def test_round_trips(glut_model):
    fv = from_tf(glut_model)
    validate_tarski(fv)
    assert fv.value_of("p", ()) == BOTH
    assert fv.value_of("S", ("b", "b")) == NEITHER
    assert to_tf(fv) == glut_model
    assert from_tf(to_tf(fv)) == fv


@pytest.mark.parametrize("text", [
    "p() & q()",
    "~p() -> q()",
    "forall x. exists y. S(x, y) | ~S(y, x)",
    "exists x. ~x = c & R(x)",
    "!p() <=> ?q()",
    "o R(c)",
])
def test_meta_value_matches_twin_value(glut_model, f, text):
    phi = f(text)
    assert tarski_value(from_tf(glut_model), phi) == evaluate(glut_model, phi)


def test_truth_value_set(glut_model, f):
    fv = from_tf(glut_model)
    assert tarski_truth_value(fv, f("p()")) is omega_member(BOTH)
    assert tarski_truth_value(fv, f("q()")) is omega_member(NEITHER)


def test_validate_tarski_rejects_partial_relation():
    model = FVTarskiModel(domain=("a", "b"), arities={"R": 1}, rel_value={"R": {("a",): ONE}})
    with pytest.raises(ModelValidationError):
        validate_tarski(model)
    asymmetric = FVTarskiModel(domain=("a", "b"), diseq=frozenset({("a", "b")}))
    with pytest.raises(ModelValidationError):
        validate_tarski(asymmetric)


@pytest.mark.parametrize("name,cls", [
    ("full", ModelClass.FULL),
    ("BS4", ModelClass.FULL),
    ("consistent_only", ModelClass.CONSISTENT_ONLY),
    ("K3", ModelClass.CONSISTENT_ONLY),
    ("complete-only", ModelClass.COMPLETE_ONLY),
    ("LFI1", ModelClass.COMPLETE_ONLY),
    ("classical", ModelClass.CLASSICAL),
])
def test_model_class_names(name, cls):
    assert ModelClass.from_name(name) is cls


def test_unknown_model_class():
    with pytest.raises(UnknownCheckError):
        ModelClass.from_name("intuitionistic")


def test_class_values():
    assert ModelClass.CLASSICAL.values == (ONE, ZERO)
    assert ModelClass.CONSISTENT_ONLY.values == (ONE, NEITHER, ZERO)
    assert ModelClass.COMPLETE_ONLY.values == (ONE, BOTH, ZERO)


def test_class_enumeration_sizes():
    sig = Signature({"p": 0})
    assert sum(1 for _ in enumerate_tarski_models(sig, 1, ModelClass.FULL)) == 8
    assert sum(1 for _ in enumerate_tarski_models(sig, 1, ModelClass.CLASSICAL)) == 2
    models = list(enumerate_tarski_models(sig, 2, ModelClass.COMPLETE_ONLY))
    assert all(ModelClass.COMPLETE_ONLY.contains(m) for m in models)


def test_explosion_per_class(f):
    premises, goal = [f("p() & ~p()")], f("q()")
    assert not classify_consequence(premises, goal, ModelClass.FULL, 1).holds
    assert not classify_consequence(premises, goal, ModelClass.COMPLETE_ONLY, 1).holds
    assert classify_consequence(premises, goal, ModelClass.CONSISTENT_ONLY, 1).holds
    assert classify_consequence(premises, goal, ModelClass.CLASSICAL, 1).holds


def test_excluded_middle_per_class(f):
    lem = f("p() | ~p()")
    assert not classify_validity(lem, ModelClass.FULL, 1).holds
    assert not classify_validity(lem, ModelClass.CONSISTENT_ONLY, 1).holds
    assert classify_validity(lem, ModelClass.COMPLETE_ONLY, 1).holds


def test_separation_matrix():
    report = separation_matrix(2)
    assert report.passed, report.failures
    row = report.extra["matrix"]["p() | ~p()"]
    assert row["complete-only"] == "no-countermodel-up-to-bound"
    assert row["consistent-only"] == "countermodel"


def test_small_roundtrip():
    suite = roundtrip_report(max_size=1, depth=2, max_formulas=12)
    assert suite.passed, [c.failures for c in suite.checks]
    sweep = suite.checks[0]
    assert sweep.extra["models"] == 32
    assert sweep.extra["formulas"] == 12
    assert sweep.extra["pairs"] == 32 * 12


@pytest.mark.slow
def test_full_roundtrip():
    suite = roundtrip_report(max_size=2, depth=3, max_formulas=24, jobs=2)
    assert suite.passed
    sweep = suite.checks[0]
    # 32 models of size 1 and 8 * 4**6 of size 2
    assert sweep.extra["models"] == 32 + 8 * 4 ** 6
    assert sweep.extra["pairs"] >= 10_000
