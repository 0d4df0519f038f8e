"""
Shared fixtures: signatures, a formula helper and small models
"""
import pytest

from src.core.formula import Signature
from src.core.formula_parser import parse
from src.core.semantics import TFModel
from src.core.universe import enumerate_level, level_fragment

PROP = Signature({"p": 0, "q": 0, "r": 0})
FIRST_ORDER = Signature({"R": 1, "S": 2}, frozenset({"c"}))


@pytest.fixture
def prop_sig() -> Signature:
    return PROP


@pytest.fixture
def fo_sig() -> Signature:
    return FIRST_ORDER


@pytest.fixture
def f():
    """Parse against the union of the propositional and first-order signatures"""
    sig = Signature({**PROP.relations, **FIRST_ORDER.relations}, FIRST_ORDER.constants)
    return lambda text: parse(text, sig)


@pytest.fixture
def glut_model() -> TFModel:
    """p is both, q is neither, R(a) true, R(b) false, a != b false as well as true"""
    return TFModel.build(
        ["a", "b"],
        constants={"c": "a"},
        relations={
            "p": (0, [()], [()]),
            "q": (0, [], []),
            "r": (0, [()], []),
            "R": (1, [("a",)], [("b",)]),
            "S": (2, [("a", "b")], [("a", "b"), ("b", "a")]),
        },
        eq_neg=[("a", "b"), ("b", "a")],
    )


@pytest.fixture(scope="session")
def w2():
    return enumerate_level(2)


@pytest.fixture(scope="session")
def w2_fragment():
    return level_fragment(2)
