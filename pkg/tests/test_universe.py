import pytest

from src.core.errors import BudgetExceededError, UniverseError
from src.core.formula import SET_SIGNATURE
from src.core.formula_parser import parse
from src.core.truth import BOTH, NEITHER, ONE, ZERO
from src.core.universe import (
    Fragment, acla_construct, bang_ext, classical_enum_set, classical_pair, classical_singleton,
    closure, comprehend, empty, enumerate_level, eq_false, equality_value, incomplete_witness,
    inconsistent_witness, is_classical, is_complete, is_consistent, make, membership_value,
    omega_member, omega_name, omega_set, parse_ncset, powerset_bang, quest_ext, rank, realm,
    render_ncset, sort_sets, subset_value, tower, truth_value_of, unbounded_equality_witnesses,
    unbounded_subset_witnesses, union_set,
)


def s(text):
    return parse(text, SET_SIGNATURE)


@pytest.mark.parametrize("n,size", [(0, 0), (1, 1), (2, 4), (3, 256)])
def test_level_sizes(n, size):
    assert len(enumerate_level(n)) == size


def test_level_four_is_over_budget():
    with pytest.raises(BudgetExceededError):
        enumerate_level(4)
    with pytest.raises(UniverseError):
        enumerate_level(-1)


def test_levels_are_cumulative(w2):
    w3 = set(enumerate_level(3))
    assert set(w2) <= w3
    assert all(rank(x) < 3 for x in w3)
    assert enumerate_level(2) == sort_sets(w2)


def test_interning():
    e = empty()
    assert make([e], [e]) is make([e], [e])
    assert make([e], []) is not make([], [e])
    assert parse_ncset("<[],[]>") is e


def test_literals_round_trip(w2):
    assert render_ncset(empty()) == "<[],[]>"
    assert render_ncset(omega_member(BOTH)) == "<[<[],[]>],[]>"
    for x in enumerate_level(3):
        assert parse_ncset(render_ncset(x)) is x


def test_bad_literal():
    with pytest.raises(UniverseError):
        parse_ncset("<[],>")


def test_witness_memberships():
    assert membership_value(*inconsistent_witness()) == BOTH
    assert membership_value(*incomplete_witness()) == NEITHER
    e = empty()
    assert membership_value(e, classical_singleton(e)) == ONE
    assert membership_value(e, e) == ZERO


def test_classicality():
    both, neither = omega_member(BOTH), omega_member(NEITHER)
    assert not is_consistent(both) and is_complete(both)
    assert is_consistent(neither) and not is_complete(neither)
    assert is_classical(bang_ext(both)) and is_classical(quest_ext(both)) and is_classical(realm(both))
    assert bang_ext(both) is classical_singleton(empty())
    assert quest_ext(both) is empty()


def test_inconsistent_set_is_unequal_to_itself():
    both = omega_member(BOTH)
    assert eq_false(both, both)
    assert equality_value(both, both) == BOTH
    x = classical_singleton(empty())
    assert equality_value(x, x) == ONE


def test_subset_value():
    e, one = empty(), classical_singleton(empty())
    assert subset_value(e, one) == ONE
    assert subset_value(one, e) == ZERO
    assert subset_value(omega_member(BOTH), one).designated


def test_constructors():
    e = empty()
    one = classical_singleton(e)
    two = classical_singleton(one)
    assert union_set(classical_pair(one, two)) is classical_pair(e, one)
    assert rank(tower(3)) == 3
    assert closure([tower(2)]) == sort_sets([e, one, tower(2)])


def test_omega_has_four_named_members():
    omega = omega_set()
    assert is_classical(omega)
    assert len(omega.pos) == 4
    assert sorted(omega_name(t) for t in omega.pos) == ["0", "1", "b", "n"]
    assert omega is powerset_bang(classical_singleton(empty()))
    assert omega_member(ONE) is classical_singleton(empty())
    assert omega_member(ZERO) is empty()
    assert omega_name(tower(2)) is None


def test_truth_values_as_sets(w2_fragment):
    assert truth_value_of(s("bot"), w2_fragment) is omega_member(ZERO)
    a, b = inconsistent_witness()
    assert truth_value_of(s("x in y"), w2_fragment, {"x": a, "y": b}) is omega_member(BOTH)


def test_fragment_value_and_parameters(w2_fragment):
    a, b = incomplete_witness()
    assert w2_fragment.value(s("x in y"), {"x": a, "y": b}) == NEITHER
    assert w2_fragment.value(s("exists x. forall y. ~y in x")) == ONE
    with pytest.raises(UniverseError):
        w2_fragment.value(s("x in x"), {"x": tower(2)})


def test_fragment_must_be_member_closed():
    with pytest.raises(UniverseError):
        Fragment([omega_member(ONE)])


def test_comprehension():
    e = empty()
    u = classical_pair(e, classical_singleton(e))
    assert comprehend(u, s("exists w. w in z"), "z") is classical_singleton(classical_singleton(e))
    assert comprehend(u, s("z = z"), "z") is u
    a, b = inconsistent_witness()
    glut = comprehend(u, s("wa in wb"), "z", {"wa": a, "wb": b})
    assert glut is make(u.pos, [])


def test_comprehension_free_variable_mismatch():
    with pytest.raises(UniverseError):
        comprehend(classical_singleton(empty()), s("z in w"), "z")


def test_acla_with_inconsistent_witness():
    u, v = classical_singleton(empty()), empty()
    x = acla_construct(u, v, witness_b=inconsistent_witness())
    assert bang_ext(x) is u and quest_ext(x) is v
    assert omega_name(x) == "b"


def test_acla_with_incomplete_witness():
    u, v = empty(), classical_singleton(empty())
    x = acla_construct(u, v, witness_n=incomplete_witness())
    assert omega_name(x) == "n"


def test_acla_without_witnesses_for_nested_sets():
    u = classical_singleton(empty())
    assert acla_construct(u, u) is u


def test_acla_errors():
    u, v = classical_singleton(empty()), empty()
    with pytest.raises(UniverseError):
        acla_construct(u, v)
    with pytest.raises(UniverseError):
        acla_construct(v, u)
    with pytest.raises(UniverseError):
        acla_construct(u, v, witness_b=incomplete_witness())
    with pytest.raises(UniverseError):
        acla_construct(omega_member(BOTH), v)


def test_unbounded_witnesses():
    u = omega_set()
    for n, x in unbounded_subset_witnesses(u, 3):
        assert rank(x) == n + 1
        assert not subset_value(x, u).is_false
    for n, y in unbounded_equality_witnesses(u, 3):
        assert rank(y) > n
        assert not equality_value(y, u).is_false


def test_classical_enum_set_is_classical():
    x = classical_enum_set([empty(), tower(1)])
    assert is_classical(x) and len(x.pos) == 2
