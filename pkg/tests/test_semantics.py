import numpy as np
import pytest

from src.core.errors import (
    ArityError, BudgetExceededError, ModelValidationError, UnboundVariableError,
)
from src.core.formula import Atom, Signature, Var, desugar
from src.core.formula_gen import random_formula
from src.core.semantics import (
    TFModel, classify_profile, consequence_bounded, count_models, element_names, enumerate_models,
    evaluate, formula_profile, random_model, relevant_signature, validate, validity_bounded,
)
from src.core.truth import BOTH, NEITHER, ONE, VALUES, ZERO
from tests.conftest import FIRST_ORDER


def test_element_names():
    assert element_names(3) == ("a", "b", "c")


def test_atoms_and_falsum(glut_model, f):
    assert evaluate(glut_model, f("bot")) == ZERO
    assert evaluate(glut_model, f("p()")) == BOTH
    assert evaluate(glut_model, f("q()")) == NEITHER
    assert evaluate(glut_model, f("r()")) == ONE
    assert evaluate(glut_model, f("R(c)")) == ONE


def test_assignment_drives_atoms(glut_model, f):
    assert evaluate(glut_model, f("S(x, y)"), {"x": "a", "y": "b"}) == BOTH
    assert evaluate(glut_model, f("S(x, y)"), {"x": "b", "y": "a"}) == ZERO
    assert evaluate(glut_model, f("S(x, y)"), {"x": "b", "y": "b"}) == NEITHER


def test_quantifiers(glut_model, f):
    assert evaluate(glut_model, f("exists x. R(x)")) == ONE
    assert evaluate(glut_model, f("forall x. R(x)")) == ZERO
    assert evaluate(glut_model, f("exists x. S(x, x)")) == NEITHER
    assert evaluate(glut_model, f("forall x. exists y. S(x, y) | ~S(y, x)")) == ONE


def test_equality_gluts(glut_model, f):
    assert evaluate(glut_model, f("c = c")) == ONE
    assert evaluate(glut_model, f("forall x. forall y. x = y")) == ZERO
    assert evaluate(glut_model, f("exists x. exists y. ~x = y")) == ONE


def test_unbound_variable(glut_model, f):
    with pytest.raises(UnboundVariableError):
        evaluate(glut_model, f("R(x)"))


def test_validate_accepts_fixture(glut_model):
    validate(glut_model)


@pytest.mark.parametrize("kwargs", [
    dict(domain=[]),
    dict(domain=["a", "a"]),
    dict(domain=["a"], constants={"c": "z"}),
    dict(domain=["a"], relations={"R": (1, [("z",)], [])}),
    dict(domain=["a"], relations={"R": (1, [("a", "a")], [])}),
    dict(domain=["a", "b"], eq_neg=[("a", "b")]),
])
def test_validate_rejects(kwargs):
    with pytest.raises(ModelValidationError):
        validate(TFModel.build(**kwargs))


def test_modus_ponens_is_a_consequence(f):
    verdict = consequence_bounded([f("p()"), f("p() -> q()")], f("q()"), 2)
    assert verdict.holds
    assert verdict.status == "no-countermodel-up-to-bound"
    assert verdict.models_checked == count_models(Signature({"p": 0, "q": 0}), 2)


def test_explosion_fails_for_paraconsistent_negation(f):
    verdict = consequence_bounded([f("p()"), f("~p()")], f("q()"), 1)
    assert not verdict.holds
    assert verdict.countermodel is not None
    assert verdict.to_dict()["status"] == "countermodel"


def test_explosion_holds_for_classical_negation(f):
    assert consequence_bounded([f("p()"), f("not p()")], f("q()"), 1).holds


@pytest.mark.parametrize("text,valid", [
    ("p() -> p()", True),
    ("p() | not p()", True),
    ("p() | ~p()", False),
    ("~(p() & ~p())", False),
    ("forall x. R(x) -> exists x. R(x)", True),
    ("forall x. x = x", True),
])
def test_validity(f, text, valid):
    assert validity_bounded(f(text), 2).holds is valid


def test_budget_guard(f):
    with pytest.raises(BudgetExceededError) as info:
        validity_bounded(f("forall x. forall y. S(x, y)"), 3, budget=1000)
    assert info.value.required > 1000


def test_count_matches_enumeration():
    sig = Signature({"R": 1}, frozenset({"c"}))
    # n=1: 2 * 1 * 4, n=2: 8 * 2 * 16
    assert count_models(sig, 2) == 8 + 256
    assert sum(1 for _ in enumerate_models(sig, 2, 10_000)) == 264


def test_enumeration_needs_positive_size():
    with pytest.raises(ModelValidationError):
        list(enumerate_models(Signature({"p": 0}), 0, 100))


def test_relevant_signature(f):
    sig = relevant_signature([f("R(c) & p()")])
    assert sig.relations == {"R": 1, "p": 0}
    assert sig.constants == {"c"}
    with pytest.raises(ArityError):
        relevant_signature([Atom("R", (Var("x"), Var("y")))], FIRST_ORDER)


def test_sugar_agrees_with_desugared_form():
    sig = Signature({"p": 0, "q": 0, "R": 1, "S": 2}, frozenset({"c"}))
    rng = np.random.default_rng(3)
    for _ in range(200):
        model = random_model(sig, 2, rng)
        validate(model)
        phi = random_formula(rng, sig, 4)
        env = {"x": "a", "y": "b"}
        assert evaluate(model, phi, env) == evaluate(model, desugar(phi), env)


def test_profile_of_atom(f):
    values = formula_profile(f("p()"), 1)
    assert values == set(VALUES)
    assert classify_profile(values) == {"classical": False, "consistent": False, "complete": False}
    assert classify_profile(formula_profile(f("not p()"), 1))["classical"]
