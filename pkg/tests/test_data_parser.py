import json

import pytest

from src.core.data_parser import DataParser
from src.core.errors import ModelValidationError, NCLogicError, ProofFormatError
from src.core.formula import Const, Signature
from src.core.proofs import AxiomStep, GenImp, ModusPonens, check_proof
from src.core.semantics import evaluate
from src.core.truth import BOTH, NEITHER

SIG = Signature({"p": 0, "q": 0, "R": 1}, frozenset({"c"}))

MODEL = {
    "domain": ["a", "b"],
    "constants": {"c": "a"},
    "relations": {
        "R": {"arity": 1, "pos": [["a"]], "neg": [["a"], ["b"]]},
        "p": {"arity": 0, "pos": [], "neg": []},
    },
    "eq_neg": [["a", "b"], ["b", "a"]],
}


def test_read_json_from_file(tmp_path):
    path = tmp_path / "model.json"
    path.write_text(json.dumps(MODEL), encoding="utf-8")
    model = DataParser.load_model(str(path))
    assert model.domain == ("a", "b")
    assert evaluate(model, DataParser.parse_formulas(["R(c)"], SIG)[0]) == BOTH


def test_read_json_rejects_non_object(tmp_path):
    path = tmp_path / "list.json"
    path.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(NCLogicError):
        DataParser.read_json(str(path))


def test_load_signature():
    sig = DataParser.load_signature({"relations": {"R": 1, "S": 2}, "constants": ["c"]})
    assert sig.relations == {"R": 1, "S": 2}
    assert sig.constants == {"c"}
    with pytest.raises(NCLogicError):
        DataParser.load_signature({"relations": [], "constants": []})


def test_load_model_validates():
    bad = dict(MODEL, constants={"c": "z"})
    with pytest.raises(ModelValidationError):
        DataParser.load_model(bad)
    with pytest.raises(ModelValidationError):
        DataParser.load_model(dict(MODEL, domain="ab"))
    with pytest.raises(ModelValidationError):
        DataParser.load_model(dict(MODEL, relations={"R": {"pos": []}}))


def test_tuple_keys():
    assert DataParser.parse_tuple_key("(a, b)") == ("a", "b")
    assert DataParser.parse_tuple_key("()") == ()
    with pytest.raises(ModelValidationError):
        DataParser.parse_tuple_key("a,b")


def test_load_tarski_model():
    data = {
        "domain": ["a", "b"],
        "relations": {"R": {"arity": 1, "values": {"(a)": "b", "(b)": "n"}}},
        "diseq": [["a", "b"], ["b", "a"]],
    }
    model = DataParser.load_tarski_model(data)
    assert model.value_of("R", ("a",)) == BOTH
    assert model.value_of("R", ("b",)) == NEITHER
    data["relations"]["R"]["values"] = {"(a)": "b"}
    with pytest.raises(ModelValidationError):
        DataParser.load_tarski_model(data)
    data["relations"]["R"]["values"] = {"(a)": "x", "(b)": "1"}
    with pytest.raises(NCLogicError):
        DataParser.load_tarski_model(data)


def test_load_proof():
    proof = DataParser.load_proof({
        "hypotheses": ["p()", "p() -> q()"],
        "lines": [
            {"formula": "p()", "just": {"hyp": 1}},
            {"formula": "p() -> q()", "just": {"hyp": 2}},
            {"formula": "q()", "just": {"mp": [1, 2]}},
            {"formula": "(forall x. R(x)) -> R(c)", "just": {"axiom": 11, "inst": {"phi": "R(x)", "x": "x", "t": "c"}}},
            {"formula": "q() -> forall y. q()", "just": {"gen_imp": 5}},
        ],
    }, SIG)
    assert proof.lines[2].just == ModusPonens(1, 2)
    axiom = proof.lines[3].just
    assert isinstance(axiom, AxiomStep) and axiom.inst["t"] == Const("c")
    assert proof.lines[4].just == GenImp(5)
    verdict = check_proof(proof)
    assert not verdict.accepted and verdict.bad_line == 5
    assert verdict.reason == "forward reference to line 5"


@pytest.mark.parametrize("document", [
    {"hypotheses": [], "lines": []},
    {"hypotheses": "p()", "lines": [{"formula": "p()", "just": {"hyp": 1}}]},
    {"lines": [{"formula": "p()"}]},
    {"lines": [{"formula": "p()", "just": {"mp": [1]}}]},
    {"lines": [{"formula": "p()", "just": {"hyp": "1"}}]},
    {"lines": [{"formula": "p()", "just": {"lemma": 3}}]},
    {"lines": [{"formula": "p()", "just": {"axiom": 1, "inst": {"zeta": "p()"}}}]},
])
def test_malformed_proofs(document):
    with pytest.raises(ProofFormatError):
        DataParser.load_proof(document, SIG)


def test_assignment():
    assert DataParser.parse_assignment(["x=a", " y = b "], ("a", "b")) == {"x": "a", "y": "b"}
    assert DataParser.parse_assignment(None, ("a",)) == {}
    with pytest.raises(NCLogicError):
        DataParser.parse_assignment(["x"], ("a",))
    with pytest.raises(ModelValidationError):
        DataParser.parse_assignment(["x=z"], ("a",))


def test_small_values():
    assert DataParser.parse_truth_value("n") == NEITHER
    assert str(DataParser.parse_ncset(" < [ ] , [ ] > ")) == "<[],[]>"


def test_signature_of_model():
    model = DataParser.load_model(MODEL)
    assert DataParser.signature_of_model(model) == Signature({"R": 1, "p": 0}, frozenset({"c"}))


@pytest.mark.parametrize("changes", [
    {"relations": []},
    {"relations": {"R": {"arity": "1", "pos": []}}},
    {"relations": {"R": {"arity": -1}}},
    {"relations": {"R": {"arity": 1, "pos": [[["a"]]]}}},
    {"relations": {"R": {"arity": 1, "pos": "a"}}},
    {"constants": ["a"]},
    {"constants": {"c": ["a"]}},
    {"eq_neg": [["a", "b", "a"]]},
    {"domain": ["a", 1]},
])
def test_malformed_models(changes):
    with pytest.raises(ModelValidationError):
        DataParser.load_model(dict(MODEL, **changes))


@pytest.mark.parametrize("changes", [
    {"relations": [["R", 1]]},
    {"relations": {"p": {"arity": 0, "values": [["()", "b"]]}}},
    {"relations": {"p": {"arity": 0, "values": {"()": ["b"]}}}},
    {"constants": ["a"]},
    {"diseq": [["a"]]},
])
def test_malformed_tarski_models(changes):
    base = {"domain": ["a"], "relations": {"p": {"arity": 0, "values": {"()": "b"}}}, "diseq": []}
    with pytest.raises(ModelValidationError):
        DataParser.load_tarski_model(dict(base, **changes))


@pytest.mark.parametrize("document", [
    {"lines": [{"formula": "p()", "just": {"axiom": 1, "inst": ["p()"]}}]},
    {"lines": [{"formula": "p()", "just": {"axiom": 1, "inst": {"phi": 3}}}]},
    {"lines": [{"formula": 7, "just": {"hyp": 1}}]},
    {"hypotheses": [1], "lines": [{"formula": "p()", "just": {"hyp": 1}}]},
])
def test_malformed_proof_fields(document):
    with pytest.raises(ProofFormatError):
        DataParser.load_proof(document, SIG)


def test_malformed_signatures():
    with pytest.raises(NCLogicError):
        DataParser.load_signature({"relations": {"R": "2"}})
    with pytest.raises(NCLogicError):
        DataParser.load_signature({"constants": "c"})
