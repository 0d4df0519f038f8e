import numpy as np
import pytest

from src.core.errors import ArityError, FormulaSyntaxError, SignatureError, UnknownSymbolError
from src.core.formula import (
    BOT, And, Atom, Bang, Circ, ClassNeg, Const, Eq, Exists, Forall, Iff, Imp, Neg, Or, SET_SIGNATURE,
    Signature, StrongIff, StrongImp, Var, conjunction, depth, desugar, free_vars, fresh_name,
    is_arrow_bot_free, is_free_for, is_primitive, is_sentence, render, substitute,
)
from src.core.formula_gen import HOLE, contexts, fill, formula_battery, formula_layers, random_formula
from src.core.formula_parser import parse

SIG = Signature({"p": 0, "q": 0, "r": 0, "R": 1, "S": 2}, frozenset({"c"}))
p, q, r = Atom("p"), Atom("q"), Atom("r")
x, y = Var("x"), Var("y")


def test_precedence_and_associativity(f):
    assert f("p() & q() -> r()") == Imp(And(p, q), r)
    assert f("p() -> q() -> r()") == Imp(p, Imp(q, r))
    assert f("p() | q() & r()") == Or(p, And(q, r))
    assert f("p() <-> q() <-> r()") == Iff(Iff(p, q), r)
    assert f("p() => q() -> r()") == StrongImp(p, Imp(q, r))
    assert f("p() <-> q() -> r()") == Iff(p, Imp(q, r))
    assert f("p() => q() <-> r()") == StrongImp(p, Iff(q, r))
    assert f("p() <=> q() => r()") == StrongIff(p, StrongImp(q, r))
    assert f("~p() & q()") == And(Neg(p), q)


def test_quantifier_body_extends_right(f):
    phi = f("forall x. R(x) & p()")
    assert phi == Forall("x", And(Atom("R", (x,)), p))
    assert f("(forall x. R(x)) & p()") == And(Forall("x", Atom("R", (x,))), p)


def test_terms_and_keywords(f):
    assert f("c = x") == Eq(Const("c"), x)
    assert f("not p()") == ClassNeg(p)
    assert f("~bot") == Neg(BOT)
    assert parse("x in y", SET_SIGNATURE) == Atom("in", (x, y))


def test_render_examples(f):
    assert render(And(Forall("x", Atom("R", (x,))), p)) == "(forall x. R(x)) & p()"
    assert render(Imp(Imp(p, q), r)) == "(p() -> q()) -> r()"
    assert render(Neg(And(p, q))) == "~(p() & q())"
    assert render(ClassNeg(ClassNeg(p))) == "not not p()"
    assert str(Atom("in", (x, y))) == "x in y"


def test_render_parses_back():
    rng = np.random.default_rng(11)
    for _ in range(300):
        phi = random_formula(rng, SIG, 4)
        assert parse(render(phi), SIG) == phi, render(phi)


def test_set_language_round_trip():
    text = "forall x. exists y. x in y & ~y = x"
    assert render(parse(text, SET_SIGNATURE)) == text


def test_syntax_error_offset(f):
    with pytest.raises(FormulaSyntaxError) as info:
        f("p() &")
    assert info.value.offset >= 4


def test_unknown_symbol(f):
    with pytest.raises(UnknownSymbolError) as info:
        f("T()")
    assert info.value.symbol == "T"
    with pytest.raises(UnknownSymbolError):
        f("x in y")


def test_arity_mismatch(f):
    with pytest.raises(ArityError):
        f("R(x, y)")


def test_cannot_bind_constant(f):
    with pytest.raises(SignatureError):
        f("forall c. R(c)")


def test_signature_rejects_overlap():
    with pytest.raises(SignatureError):
        Signature({"c": 0}, frozenset({"c"}))
    with pytest.raises(SignatureError):
        Signature({"R": -1})


def test_free_variables(f):
    assert free_vars(f("forall x. S(x, y)")) == {"y"}
    assert is_sentence(f("exists x. R(x) & R(c)"))


def test_substitution_avoids_capture():
    phi = Forall("y", Atom("S", (x, y)))
    out = substitute(phi, "x", y)
    assert isinstance(out, Forall) and out.var != "y"
    assert out.body == Atom("S", (y, Var(out.var)))
    assert not is_free_for(y, "x", phi)
    assert is_free_for(Const("c"), "x", phi)


def test_substitution_skips_bound_occurrences():
    phi = Forall("x", Atom("R", (x,)))
    assert substitute(phi, "x", Const("c")) == phi
    assert substitute(Atom("R", (x,)), "x", Const("c")) == Atom("R", (Const("c"),))


def test_fresh_name():
    assert fresh_name("x", {"x", "x'"}) == "x''"


def test_desugar_classical_negation():
    assert desugar(ClassNeg(p)) == Imp(p, BOT)
    assert desugar(StrongImp(p, q)) == And(Imp(p, q), Imp(Neg(q), Neg(p)))


def test_desugar_is_primitive_and_idempotent():
    rng = np.random.default_rng(5)
    for _ in range(200):
        once = desugar(random_formula(rng, SIG, 4))
        assert is_primitive(once)
        assert desugar(once) == once


def test_arrow_bot_free(f):
    assert is_arrow_bot_free(f("forall x. R(x) & ~p() | x = c"))
    assert not is_arrow_bot_free(f("p() -> q()"))
    assert not is_arrow_bot_free(f("~bot"))
    assert not is_arrow_bot_free(f("!p()"))


def test_empty_conjunction():
    assert conjunction([]) == Neg(BOT)
    assert conjunction([p, q, r]) == And(And(p, q), r)


def test_contexts_and_fill(f):
    found = contexts(1)
    assert found[0] == HOLE
    # five unary, six binary on either side, two quantifiers
    assert len(found) == 1 + 19
    assert Circ(HOLE) in found and StrongImp(Atom("r"), HOLE) in found and Exists("x", HOLE) in found
    assert len(contexts(2)) == 1 + 19 + 19 ** 2
    assert fill(Neg(And(HOLE, Atom("r"))), f("p()")) == f("~(p() & r())")
    assert fill(Forall("x", Bang(HOLE)), f("R(x)")) == f("forall x. !R(x)")


def test_formula_layers_are_sentences_of_exact_depth():
    sig = Signature({"R": 1, "S": 2})
    layers = formula_layers(sig, 3, width=30)
    assert len(layers) == 4
    assert layers[0] == [BOT]
    flat = [phi for layer in layers for phi in layer]
    assert len(flat) == len(set(flat))
    for d, layer in enumerate(layers):
        assert 0 < len(layer) <= 30
        assert all(depth(phi) == d and is_sentence(phi) for phi in layer)
    assert Forall("x", Atom("R", (x,))) in layers[1]
    assert formula_layers(sig, 3, width=30) == layers


def test_formula_battery_covers_every_depth():
    sig = Signature({"R": 1, "S": 2})
    battery = formula_battery(sig, 3, 24)
    assert len(battery) == len(set(battery)) == 24
    assert battery[:4] == [BOT] + [layer[0] for layer in formula_layers(sig, 3, 24)[1:]]
    assert {depth(phi) for phi in battery} == {0, 1, 2, 3}
    assert formula_battery(sig, 1, 5, sugar=False) == formula_battery(sig, 1, 5, sugar=False)
    assert not any(isinstance(phi, (Bang, Circ)) for phi in formula_battery(sig, 1, 40, sugar=False))
