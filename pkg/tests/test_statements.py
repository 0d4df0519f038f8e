import pytest

from src.core.formula import Atom, Iff, Neg, StrongIff, Var, is_sentence
from src.core.formula_gen import HOLE, contexts, fill
from src.core.semantics import TFModel, designated_everywhere, evaluate
from src.core.statements import (
    STATEMENTS, check_first_order, check_propositional, check_substitution, propositional_instances,
    statements_suite,
)


def test_instances_are_sentences():
    instances = propositional_instances()
    assert [name for name, _ in instances] == list(STATEMENTS)
    assert all(is_sentence(phi) for _, phi in instances)


def test_propositional_laws_hold_up_to_three():
    report = check_propositional(max_size=3)
    assert report.passed, report.failures
    assert report.extra["models"] == 32 + 128 + 1024
    assert report.checked == report.extra["models"] * len(STATEMENTS)


def test_first_order_sample():
    report = check_first_order(samples=50, max_size=3, seed=4)
    assert report.passed, report.failures
    assert report.checked == 50 * len(STATEMENTS)


def test_laws_hold_in_glut_model(glut_model):
    for name, phi in propositional_instances():
        assert designated_everywhere(glut_model, phi), name


def test_suite_shape():
    suite = statements_suite(max_size=1, samples=10, seed=0, substitution_depth=1)
    assert suite.passed
    assert [c.check for c in suite.checks] == [
        "statements_propositional", "statements_first_order", "statements_substitution",
    ]


def test_strong_equivalents_are_substitutable():
    report = check_substitution(max_depth=1)
    assert report.passed, report.failures[:3]
    # P = Q pointwise: 16 models of size 1, 64 of size 2 with two values of x each
    assert report.extra["models"] == 16 + 64
    assert report.extra["contexts"] == 20
    assert report.checked == (16 + 64 * 2) * 20


@pytest.mark.slow
def test_strong_equivalents_are_substitutable_to_depth_three():
    report = check_substitution()
    assert report.params == {"max_depth": 3, "max_size": 2}
    assert report.passed, report.failures[:3]
    assert report.extra["contexts"] == 1 + 19 + 19 ** 2 + 19 ** 3
    assert report.checked == 144 * report.extra["contexts"]


def test_weak_equivalents_are_not_substitutable():
    # P(a) = b and Q(a) = 1 make P(x) <-> Q(x) designated but not P(x) <=> Q(x)
    model = TFModel.build(["a"], relations={"P": (1, [("a",)], [("a",)]), "Q": (1, [("a",)], []),
                                            "r": (0, [], [])})
    phi, psi = Atom("P", (Var("x"),)), Atom("Q", (Var("x"),))
    assert designated_everywhere(model, Iff(phi, psi))
    assert not designated_everywhere(model, StrongIff(phi, psi))
    split = [c for c in contexts(1) if evaluate(model, fill(c, phi), {"x": "a"})
             != evaluate(model, fill(c, psi), {"x": "a"})]
    assert Neg(HOLE) in split
