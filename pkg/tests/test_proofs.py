import pytest

from src.core.errors import CaptureError, ProofFormatError, SchemaError
from src.core.formula import BOT, Const, Neg, Var, render
from src.core.proof_library import (
    CURATED, check_deduction_pairs, deduce, deduction_pairs, identity_proof, standard_proofs,
)
from src.core.proofs import (
    SCHEMAS, AxiomStep, GenExists, GenImp, HypothesisStep, ModusPonens, Proof, ProofLine,
    check_proof, instantiate_schema, match_schema, soundness_harness,
)


def test_twenty_two_schemas():
    assert sorted(SCHEMAS) == list(range(1, 23))


def test_schema_instances(f):
    assert render(instantiate_schema(15, {"phi": f("p()")})) == "~~p() <-> p()"
    assert instantiate_schema(19, {}) == Neg(BOT)
    assert render(instantiate_schema(22, {"x": "x", "y": "y"})) == "~x = y -> ~y = x"
    assert render(instantiate_schema(1, {"phi": f("p()"), "psi": f("q()")})) == "p() -> q() -> p()"


def test_quantifier_instance(f):
    phi = f("forall y. S(x, y)")
    out = instantiate_schema(11, {"phi": phi, "x": "x", "t": Const("c")})
    assert out == f("(forall x. forall y. S(x, y)) -> forall y. S(c, y)")


def test_capture_is_rejected(f):
    with pytest.raises(CaptureError):
        instantiate_schema(11, {"phi": f("forall y. S(x, y)"), "x": "x", "t": Var("y")})
    with pytest.raises(CaptureError):
        instantiate_schema(14, {"phi": f("exists y. S(x, y)"), "x": "x", "y": "y"})


def test_schema_errors(f):
    with pytest.raises(SchemaError):
        instantiate_schema(23, {})
    with pytest.raises(SchemaError):
        instantiate_schema(2, {"phi": f("p()"), "psi": f("q()")})
    with pytest.raises(SchemaError):
        instantiate_schema(13, {"x": f("p()")})


def test_match_schema(f):
    found = dict(match_schema(f("p() -> q() -> p()")))
    assert 1 in found
    assert found[1] == {"phi": f("p()"), "psi": f("q()")}
    assert 19 in dict(match_schema(f("~bot")))


def _mp_proof(f, minor=1, major=2):
    return Proof([f("p()"), f("p() -> q()")], [
        ProofLine(f("p()"), HypothesisStep(1)),
        ProofLine(f("p() -> q()"), HypothesisStep(2)),
        ProofLine(f("q()"), ModusPonens(minor, major)),
    ])


def test_modus_ponens_accepted(f):
    verdict = check_proof(_mp_proof(f))
    assert verdict.accepted
    assert verdict.lines_checked == 3
    assert verdict.conclusion == "q()"


def test_modus_ponens_mismatch(f):
    verdict = check_proof(_mp_proof(f, minor=2, major=1))
    assert not verdict.accepted
    assert verdict.bad_line == 3
    assert "modus ponens" in verdict.reason


def test_forward_reference(f):
    proof = Proof([f("p()")], [
        ProofLine(f("q()"), ModusPonens(1, 2)),
        ProofLine(f("p()"), HypothesisStep(1)),
    ])
    verdict = check_proof(proof)
    assert not verdict.accepted and verdict.bad_line == 1
    assert "forward reference" in verdict.reason


def test_empty_and_missing_hypothesis(f):
    assert not check_proof(Proof([], [])).accepted
    verdict = check_proof(Proof([], [ProofLine(f("p()"), HypothesisStep(1))]))
    assert not verdict.accepted
    assert verdict.to_dict()["reason"] == "no hypothesis 1"


def test_axiom_lines_compare_desugared(f):
    # not bot is bot -> bot
    proof = Proof([], [ProofLine(f("not bot"), AxiomStep(10, {"phi": BOT}))])
    assert check_proof(proof).accepted
    wrong = Proof([], [ProofLine(f("not p()"), AxiomStep(10, {"phi": BOT}))])
    assert "not an instance of schema 10" in check_proof(wrong).reason


def test_generalization_side_condition(f):
    proof = Proof([f("R(x) -> R(x)")], [
        ProofLine(f("R(x) -> R(x)"), HypothesisStep(1)),
        ProofLine(f("R(x) -> forall x. R(x)"), GenImp(1)),
    ])
    verdict = check_proof(proof)
    assert not verdict.accepted and verdict.bad_line == 2
    assert "side condition" in verdict.reason


def test_existential_generalization(f):
    proof = Proof([f("R(x) -> p()")], [
        ProofLine(f("R(x) -> p()"), HypothesisStep(1)),
        ProofLine(f("(exists x. R(x)) -> p()"), GenExists(1)),
    ])
    assert check_proof(proof).accepted


@pytest.mark.parametrize("text", ["p()", "forall x. R(x)", "~p() & q()"])
def test_identity_proof(f, text):
    proof = identity_proof(f(text))
    verdict = check_proof(proof)
    assert verdict.accepted
    assert len(proof.lines) == 5
    assert proof.conclusion == f(f"({text}) -> ({text})")


def test_standard_proofs_check():
    assert all(check_proof(p).accepted for p in standard_proofs().values())


def test_deduction_pairs():
    report = check_deduction_pairs()
    assert report.passed, report.failures
    assert report.checked == 3 * len(CURATED)
    for name, with_hyp, without in deduction_pairs():
        assert len(without.hypotheses) == len(with_hyp.hypotheses) - 1, name


def test_deduce_rejects_dependent_generalization(f):
    proof = Proof([f("R(x) -> R(x)")], [
        ProofLine(f("R(x) -> R(x)"), HypothesisStep(1)),
        ProofLine(f("R(x) -> forall y. R(x)"), GenImp(1)),
    ])
    assert check_proof(proof).accepted
    with pytest.raises(ProofFormatError):
        deduce(proof, 1)
    with pytest.raises(ProofFormatError):
        deduce(proof, 2)


def test_soundness_harness_small():
    suite = soundness_harness(trials=20, model_size=2, seed=1)
    assert suite.passed
    assert len(suite.checks) == 22 + 3
    assert all(c.checked == 20 for c in suite.checks if c.check.startswith("schema_"))
    assert suite.to_dict() == soundness_harness(trials=20, model_size=2, seed=1).to_dict()


@pytest.mark.slow
def test_soundness_harness_full():
    assert soundness_harness(trials=1000, model_size=4, seed=0, jobs=2).passed


def test_soundness_harness_bounds():
    with pytest.raises(SchemaError):
        soundness_harness(trials=0, model_size=2)
    with pytest.raises(SchemaError):
        soundness_harness(trials=10, model_size=5)
