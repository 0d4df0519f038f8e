"""
Axioms - verification batteries for the set-theoretic axioms and lemmas over
finite fragments of the universe

Each battery returns a CheckReport. Quantifiers are relativized to a
member-closed fragment containing the inputs, the outputs and the level the
bound variables range over; membership outside such a fragment is 0 on both
sides of every checked bi-implication, so the fragment is enough.
"""
import itertools
import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.core.errors import UniverseError, UnknownCheckError
from src.core.formula import SET_SIGNATURE, Formula
from src.core.formula_gen import random_formula
from src.core.formula_parser import parse
from src.core.report import CheckReport, SuiteReport
from src.core.semantics import Evaluator, TFModel
from src.core.truth import ONE, ZERO, conj
from src.core.universe import (
    Fragment, NCSet, acla_construct, bang_ext, classical_enum_set, comprehend, empty,
    enumerate_level, eq_false, equality_value, fragment_of, incomplete_witness, inconsistent_witness,
    is_classical, is_complete, is_consistent, level_fragment, make, membership_value, omega_member,
    omega_name, omega_set, powerset_bang, quest_ext, rank, realm, render_ncset, subset_value, tower,
    truth_value_of, unbounded_equality_witnesses, unbounded_subset_witnesses, union_set,
)

logger = logging.getLogger(__name__)

DEFAULT_LEVEL = 3


def _f(text: str) -> Formula:
    return parse(text, SET_SIGNATURE)


def _show(x: NCSet) -> str:
    return render_ncset(x)


def _level_arg(level: int) -> int:
    if level not in (1, 2, 3):
        raise UniverseError(f"battery level must be 1, 2 or 3, got {level}")
    return level


# ---------------------------------------------------------------------------
# Extensionality
# ---------------------------------------------------------------------------

EXTENSIONALITY = "forall x. forall y. (x = y <=> forall z. (z in x <=> z in y))"


def check_extensionality(level: int = DEFAULT_LEVEL) -> CheckReport:
    """x = y <=> forall z (z in x <=> z in y), every ordered pair of W_level

    The inner quantifier is evaluated with fragment bitmasks: it is true iff
    both membership masks agree and false iff some z is in one set and out of
    the other. The whole sentence is then re-evaluated by the generic
    evaluator over W_2.
    """
    level = _level_arg(level)
    frag = level_fragment(level)
    pos, neg = frag.pos_masks, frag.neg_masks
    report = CheckReport("extensionality", params={"level": level})
    for i, x in enumerate(frag.sets):
        for j, y in enumerate(frag.sets):
            body_t = pos[i] == pos[j] and neg[i] == neg[j]
            body_f = ((pos[i] & neg[j]) | (neg[i] & pos[j])) != 0
            if body_t != (x is y):
                report.fail(clause="truth", x=_show(x), y=_show(y))
            if body_f != eq_false(x, y):
                report.fail(clause="falsity", x=_show(x), y=_show(y))
            report.tick()
    small = level_fragment(min(level, 2))
    sentence = small.value(_f(EXTENSIONALITY))
    report.expect(sentence.designated, clause="sentence", value=sentence.name)
    report.extra["pairs"] = len(frag) ** 2
    report.extra["sentence_value"] = sentence.name
    return report


# ---------------------------------------------------------------------------
# Comprehension
# ---------------------------------------------------------------------------

# (formula over y with parameter a, uses a)
COMPREHENSION_BATTERY: Tuple[Tuple[str, bool], ...] = (
    ("bot", False),
    ("y = y", False),
    ("y in a", True),
    ("~(y in a)", True),
    ("!(y in a)", True),
    ("?(y in a)", True),
    ("o (y in a)", True),
    ("not (y = a)", True),
    ("exists z. z in y", False),
    ("forall z. (z in y => z in a)", True),
)


def check_comprehension(level: int = DEFAULT_LEVEL) -> CheckReport:
    """y in x <=> y in u & phi(y) for x = comprehend(u, phi), u in W_level, a in W_2"""
    level = _level_arg(level)
    report = CheckReport("comprehension", params={"level": level, "formulas": len(COMPREHENSION_BATTERY)})
    inputs = enumerate_level(level)
    params = enumerate_level(min(level, 2))
    preserved = 0
    for text, uses_param in COMPREHENSION_BATTERY:
        phi = _f(text)
        for u in inputs:
            for a in (params if uses_param else params[:1]):
                env = {"a": a} if uses_param else {}
                base = fragment_of([u, a])
                x = comprehend(u, phi, "y", env, base)
                frag = Fragment(base.sets + (x,)) if x not in base else base
                fn = frag.evaluator.compile(phi)
                local = dict(env)
                for y in frag.sets:
                    local["y"] = y
                    body = conj(membership_value(y, u), fn(local))
                    lhs = membership_value(y, x)
                    report.expect(lhs == body, formula=text, u=_show(u), a=_show(a), y=_show(y),
                                  lhs=lhs.name, rhs=body.name)
                if is_classical(u):
                    instances = []
                    for z in u.pos:
                        local["y"] = z
                        instances.append(fn(local).classical)
                    if all(instances):
                        preserved += 1
                        report.expect(is_classical(x), clause="classical preservation", formula=text,
                                      u=_show(u), x=_show(x))
    report.extra["classical_instances"] = preserved
    return report


# ---------------------------------------------------------------------------
# Classical superset
# ---------------------------------------------------------------------------

def check_classical_superset(level: int = DEFAULT_LEVEL) -> CheckReport:
    """realm(x) is classical and contains x, every x in W_level"""
    level = _level_arg(level)
    report = CheckReport("classical_superset", params={"level": level})
    classical_members = _f("forall y. o (y in c)")
    contains = _f("forall z. (z in x => z in c)")
    for x in enumerate_level(level):
        c = realm(x)
        frag = fragment_of([x, c])
        env = {"x": x, "c": c}
        report.expect(is_classical(c), clause="realm classical", x=_show(x))
        report.expect(subset_value(x, c).designated, clause="subset", x=_show(x))
        report.expect(frag.value(classical_members, env).designated, clause="classical members", x=_show(x))
        report.expect(frag.value(contains, env).designated, clause="contains", x=_show(x))
    return report


# ---------------------------------------------------------------------------
# Replacement
# ---------------------------------------------------------------------------

REPLACEMENT_OPS: Dict[str, Callable[[NCSet], NCSet]] = {
    "quest_ext": quest_ext,
    "bang_ext": bang_ext,
    "realm": realm,
}

_REPLACEMENT_BODY = "exists w. (w in x & Op(w, z))"
_OP_CLASSICAL = "forall w. forall z. o Op(w, z)"
_OP_TOTAL = "forall w. exists z. Op(w, z)"
_OP_FUNCTIONAL = "forall w. forall z. forall z'. ((Op(w, z) & Op(w, z')) -> z = z')"


def operation_model(frag: Fragment, op: Callable[[NCSet], NCSet]) -> TFModel:
    """The fragment's model plus a classical binary relation Op(w, z) :<-> z = op(w)"""
    base = frag.model
    graph = frozenset((w, op(w)) for w in frag.sets if op(w) in frag)
    complement = frozenset((w, z) for w in frag.sets for z in frag.sets) - graph
    return TFModel(
        domain=base.domain,
        arities={"in": 2, "Op": 2},
        rel_pos={"in": base.rel_pos["in"], "Op": graph},
        rel_neg={"in": base.rel_neg["in"], "Op": complement},
        eq_neg=base.eq_neg,
    )


def replacement_image(x: NCSet, op: Callable[[NCSet], NCSet]) -> NCSet:
    return make((op(w) for w in x.pos), (op(w) for w in x.quest))


def check_replacement(level: int = DEFAULT_LEVEL) -> CheckReport:
    """z in s <=> exists w (w in x & Op(w, z)) for each operation and x in W_level

    Op is classical, total and functional on the fragment; the fragment adds
    op(x) and op(s) so it is closed under each (idempotent) operation.
    """
    level = _level_arg(level)
    report = CheckReport("replacement", params={"level": level, "operations": sorted(REPLACEMENT_OPS)})
    below = enumerate_level(level - 1)
    sig = SET_SIGNATURE.with_relations({"Op": 2})
    body = parse(_REPLACEMENT_BODY, sig)
    preconditions = [parse(text, sig) for text in (_OP_CLASSICAL, _OP_TOTAL, _OP_FUNCTIONAL)]
    for name, op in sorted(REPLACEMENT_OPS.items()):
        for x in enumerate_level(level):
            s = replacement_image(x, op)
            frag = fragment_of([*below, x, s, op(x), op(s)])
            ev = Evaluator(operation_model(frag, op))
            for pre in preconditions:
                report.expect(ev.value(pre).designated, operation=name, clause="precondition",
                              formula=str(pre), x=_show(x))
            fn = ev.compile(body)
            env = {"x": x}
            for z in frag.sets:
                env["z"] = z
                lhs, rhs = membership_value(z, s), fn(env)
                report.expect(lhs == rhs, operation=name, x=_show(x), z=_show(z), lhs=lhs.name, rhs=rhs.name)
    return report


# ---------------------------------------------------------------------------
# Pairing, power set, union
# ---------------------------------------------------------------------------

_PAIRING_BODY = "!(y = u) | !(y = v)"


def check_pairing(level: int = DEFAULT_LEVEL) -> CheckReport:
    """y in {u, v} <=> !(y = u) | !(y = v), every unordered pair of W_level"""
    level = _level_arg(level)
    report = CheckReport("pairing", params={"level": level})
    body = _f(_PAIRING_BODY)
    inputs = enumerate_level(level)
    below = enumerate_level(level - 1)
    for u, v in itertools.combinations_with_replacement(inputs, 2):
        x = classical_enum_set([u, v])
        frag = Fragment(fragment_of(below).sets + tuple({u, v, x} - set(below)))
        fn = frag.evaluator.compile(body)
        env = {"u": u, "v": v}
        for y in frag.sets:
            env["y"] = y
            lhs, rhs = membership_value(y, x), fn(env)
            report.expect(lhs == rhs, u=_show(u), v=_show(v), y=_show(y), lhs=lhs.name, rhs=rhs.name)
    return report


_POWERSET_BODY = "!(forall z. (z in y => z in u))"
POWERSET_OUTPUT_CAP = 16


def check_powerset(level: int = DEFAULT_LEVEL) -> CheckReport:
    """y in P!(u) <=> !(y subset u); inputs from W_2, plus W_3 inputs with small outputs"""
    level = _level_arg(level)
    report = CheckReport("powerset", params={"level": level, "output_cap": POWERSET_OUTPUT_CAP})
    body = _f(_POWERSET_BODY)
    inputs = [u for u in enumerate_level(level)
              if rank(u) < 2 or 2 ** (len(u.pos) + len(u.quest)) <= POWERSET_OUTPUT_CAP]
    for u in inputs:
        p = powerset_bang(u)
        report.expect(len(p.pos) == 2 ** len(u.pos) * 2 ** len(u.quest), clause="count", u=_show(u))
        frag = fragment_of([u, p])
        fn = frag.evaluator.compile(body)
        env = {"u": u}
        for y in frag.sets:
            env["y"] = y
            lhs, rhs = membership_value(y, p), fn(env)
            report.expect(lhs == rhs, u=_show(u), y=_show(y), lhs=lhs.name, rhs=rhs.name)
    report.extra["inputs"] = len(inputs)
    return report


_UNION_BODY = "exists z. (y in z & z in u)"


def check_union(level: int = DEFAULT_LEVEL) -> CheckReport:
    """y in U(u) <=> exists z (y in z & z in u), every u in W_level"""
    level = _level_arg(level)
    report = CheckReport("union", params={"level": level})
    body = _f(_UNION_BODY)
    for u in enumerate_level(level):
        x = union_set(u)
        frag = fragment_of([u, x])
        fn = frag.evaluator.compile(body)
        env = {"u": u}
        for y in frag.sets:
            env["y"] = y
            lhs, rhs = membership_value(y, x), fn(env)
            report.expect(lhs == rhs, u=_show(u), y=_show(y), lhs=lhs.name, rhs=rhs.name)
    return report


AXIOMS: Dict[str, Callable[[int], CheckReport]] = {
    "extensionality": check_extensionality,
    "comprehension": check_comprehension,
    "classical_superset": check_classical_superset,
    "replacement": check_replacement,
    "pairing": check_pairing,
    "powerset": check_powerset,
    "union": check_union,
}

EXCLUDED_AXIOMS = ("infinity", "choice", "foundation")


def axiom_key(name: str) -> str:
    """Normalize 'ClassicalSuperset', 'classical-superset', 'PowerSet' and the like"""
    key = "".join(ch for ch in name.lower() if ch.isalnum())
    for known in AXIOMS:
        if known.replace("_", "") == key:
            return known
    if key in EXCLUDED_AXIOMS:
        raise UnknownCheckError(f"axiom '{name}' is not verified at finite levels")
    raise UnknownCheckError(f"unknown axiom '{name}' (expected one of {', '.join(AXIOMS)})")


def verify_axiom(name: str, level: int = DEFAULT_LEVEL) -> CheckReport:
    key = axiom_key(name)
    logger.info(f"verifying axiom {key} at level {level}")
    report = AXIOMS[key](level)
    report.check = f"axiom:{key}"
    logger.debug(f"axiom {key}: {report.checked} checks, {report.failure_count} failures")
    return report


# ---------------------------------------------------------------------------
# Subset and equality characterization
# ---------------------------------------------------------------------------

def check_subset_equality(level: int = DEFAULT_LEVEL) -> CheckReport:
    """Subset and equality clauses against extension inclusions, every pair of W_level"""
    level = _level_arg(level)
    frag = level_fragment(level)
    pos, neg = frag.pos_masks, frag.neg_masks
    report = CheckReport("subset_equality", params={"level": level})
    for i, x in enumerate(frag.sets):
        for j, y in enumerate(frag.sets):
            # forall z (z in x => z in y)
            sub_t = (pos[i] & ~pos[j]) == 0 and (neg[j] & ~neg[i]) == 0
            sub_f = (pos[i] & neg[j]) != 0
            value = subset_value(x, y)
            items = (
                ("subset truth", sub_t, x.pos <= y.pos and x.quest <= y.quest),
                ("subset falsity", sub_f, not x.pos <= y.quest),
                ("subset not false", not sub_f, x.pos <= y.quest),
                ("equality truth", x is y, x.pos == y.pos and x.quest == y.quest),
                ("equality falsity", eq_false(x, y), ((pos[i] & neg[j]) | (pos[j] & neg[i])) != 0),
                ("equality not false", not eq_false(x, y), x.pos <= y.quest and y.pos <= x.quest),
                ("subset value", (value.is_true, value.is_false), (sub_t, sub_f)),
                ("symmetry", eq_false(x, y), eq_false(y, x)),
            )
            for item, got, expected in items:
                report.expect(got == expected, item=item, x=_show(x), y=_show(y))
    report.extra["pairs"] = len(frag) ** 2
    return report


SUBSET_FORMULA = "forall z. (z in x => z in y)"


def check_subset_agreement(level: int = DEFAULT_LEVEL, samples: int = 512, seed: int = 0) -> CheckReport:
    """subset_value against the generic evaluator; all pairs at W_2, sampled above"""
    level = _level_arg(level)
    frag = level_fragment(level)
    fn = frag.evaluator.compile(_f(SUBSET_FORMULA))
    pairs = [(x, y) for x in frag.sets for y in frag.sets]
    if len(pairs) > samples:
        rng = np.random.default_rng(seed)
        picked = rng.choice(len(pairs), size=samples, replace=False)
        pairs = [pairs[int(k)] for k in sorted(picked)]
    report = CheckReport("subset_agreement", params={"level": level, "pairs": len(pairs), "seed": seed})
    for x, y in pairs:
        direct, evaluated = subset_value(x, y), fn({"x": x, "y": y})
        report.expect(direct == evaluated, x=_show(x), y=_show(y), direct=direct.name, evaluated=evaluated.name)
    return report


# ---------------------------------------------------------------------------
# Extension operators and levels
# ---------------------------------------------------------------------------

def check_extension_operators(level: int = DEFAULT_LEVEL) -> CheckReport:
    level = _level_arg(level)
    report = CheckReport("extension_operators", params={"level": level})
    bang_body = _f("!(y in u)")
    witness: Optional[NCSet] = None
    for x in enumerate_level(level):
        b, q, r = bang_ext(x), quest_ext(x), realm(x)
        report.expect(is_classical(b) and is_classical(q) and is_classical(r), item="classical outputs", x=_show(x))
        report.expect(bang_ext(b) is b and quest_ext(b) is b, item="idempotence", x=_show(x))
        report.expect(is_classical(x) == (b is q), item="classical iff extensions agree", x=_show(x))
        report.expect(is_classical(x) == (is_consistent(x) and is_complete(x)), item="classical split", x=_show(x))
        built = comprehend(r, bang_body, "y", {"u": x})
        report.expect(built is b, item="bang by comprehension", x=_show(x), built=_show(built))
        if witness is None and eq_false(x, x):
            witness = x
    # an inconsistent set is equal and unequal to itself
    report.expect(witness is not None, item="self-inequality witness")
    report.extra["self_inequality_witness"] = _show(witness) if witness is not None else None
    return report


def check_levels(max_level: int = DEFAULT_LEVEL) -> CheckReport:
    """Sizes, ranks, cumulativity, level characterization and pruning"""
    max_level = _level_arg(max_level)
    report = CheckReport("levels", params={"max_level": max_level})
    expected_sizes = [0, 1, 4, 256]
    levels = [enumerate_level(n) for n in range(max_level + 1)]
    members = [set(lv) for lv in levels]
    report.extra["sizes"] = [len(lv) for lv in levels]
    for n, lv in enumerate(levels):
        report.expect(len(lv) == expected_sizes[n], item="size", level=n, size=len(lv))
        if n:
            report.expect(members[n - 1] <= members[n], item="cumulative", level=n)
        for x in lv:
            report.expect(rank(x) < n, item="rank bound", level=n, x=_show(x))
            report.expect((x.pos | x.quest) <= members[n - 1], item="realm members", level=n, x=_show(x))
    top = levels[max_level]
    for x in top:
        for n in range(max_level + 1):
            report.expect((x in members[n]) == (rank(x) < n), item="characterization", level=n, x=_show(x))
        pos_parts = [frozenset(c) for r in range(len(x.pos) + 1) for c in itertools.combinations(x.pos, r)]
        quest_parts = [frozenset(c) for r in range(len(x.quest) + 1) for c in itertools.combinations(x.quest, r)]
        for a in pos_parts:
            for b in quest_parts:
                report.expect(make(a, b) in members[max_level], item="pruning", x=_show(x))
    return report


# ---------------------------------------------------------------------------
# Anti-classicality
# ---------------------------------------------------------------------------

def small_classical_sets() -> List[NCSet]:
    """Classical sets over the two hereditarily classical members of W_2"""
    base = [tower(0), tower(1)]
    return [classical_enum_set(c) for r in range(3) for c in itertools.combinations(base, r)]


def w2_classical_sets() -> List[NCSet]:
    w2 = enumerate_level(2)
    return [classical_enum_set(c) for r in range(len(w2) + 1) for c in itertools.combinations(w2, r)]


def _acla_case(report: CheckReport, u: NCSet, v: NCSet, witness_b, witness_n, variant: str):
    reachable = (witness_b is not None or u.pos <= v.pos) and (witness_n is not None or v.pos <= u.pos)
    try:
        x = acla_construct(u, v, witness_b, witness_n)
    except UniverseError as e:
        report.expect(not reachable, variant=variant, u=_show(u), v=_show(v), error=str(e))
        return
    report.expect(reachable, variant=variant, u=_show(u), v=_show(v), item="unexpected success")
    report.expect(bang_ext(x) is u and quest_ext(x) is v and x is make(u.pos, v.pos),
                  variant=variant, u=_show(u), v=_show(v), x=_show(x))


def check_acla(samples: int = 100, seed: int = 0) -> CheckReport:
    """Every pair of classical sets is the (!, ?) pair of some set, given both witnesses"""
    report = CheckReport("acla", params={"samples": samples, "seed": seed})
    wb, wn = inconsistent_witness(), incomplete_witness()
    small = small_classical_sets()
    for u in small:
        for v in small:
            _acla_case(report, u, v, wb, wn, "both")
            _acla_case(report, u, v, None, wn, "incomplete only")
            _acla_case(report, u, v, wb, None, "inconsistent only")
    pool = w2_classical_sets()
    pairs = [(u, v) for u in pool for v in pool]
    rng = np.random.default_rng(seed)
    picked = rng.choice(len(pairs), size=min(samples, len(pairs)), replace=False)
    for k in sorted(int(i) for i in picked):
        u, v = pairs[k]
        _acla_case(report, u, v, wb, wn, "sampled")
    u, v = classical_enum_set([empty()]), empty()
    report.extra["truth_value_b"] = omega_name(acla_construct(u, v, wb, wn))
    report.expect(report.extra["truth_value_b"] == "b", item="b from ({0},{0}) and 0")
    return report


# ---------------------------------------------------------------------------
# Truth values
# ---------------------------------------------------------------------------

def omega_battery(count: int = 50, seed: int = 0) -> List[Formula]:
    """Formulas in parameters w0..w3: atoms first, then seeded random ones"""
    names = ["w0", "w1", "w2", "w3"]
    out: List[Formula] = []
    seen = set()
    for a, b in itertools.product(names, repeat=2):
        for text in (f"{a} in {b}", f"{a} = {b}"):
            phi = _f(text)
            if len(out) < count and phi not in seen:
                seen.add(phi)
                out.append(phi)
    rng = np.random.default_rng(seed)
    attempts = 0
    while len(out) < count and attempts < count * 50:
        attempts += 1
        phi = random_formula(rng, SET_SIGNATURE, 3, variables=names)
        if phi not in seen:
            seen.add(phi)
            out.append(phi)
    return out


def check_omega(count: int = 50, seed: int = 0) -> CheckReport:
    """[[0 in [[phi]]]] = [[phi]] and the naming of the four truth-value sets"""
    report = CheckReport("omega", params={"formulas": count, "seed": seed})
    omega = omega_set()
    report.expect(is_classical(omega) and len(omega.pos) == 4, item="four members")
    names = sorted(omega_name(t) for t in omega.pos)
    report.expect(names == sorted(["1", "b", "n", "0"]), item="names", names=names)
    w2 = level_fragment(2)
    env = dict(zip(["w0", "w1", "w2", "w3"], w2.sets))
    report.expect(truth_value_of(_f("bot"), w2) is omega_member(ZERO), item="bot is 0")
    report.expect(truth_value_of(_f("~bot"), w2) is omega_member(ONE), item="~bot is 1")
    reflect = _f("e in t")
    for phi in omega_battery(count, seed):
        t = truth_value_of(phi, w2, env)
        report.expect(t in omega.pos, item="member of omega", formula=str(phi))
        frag = fragment_of([*w2.sets, t])
        back = truth_value_of(reflect, frag, {"e": empty(), "t": t})
        report.expect(back is t, item="reflection", formula=str(phi), value=omega_name(t), back=omega_name(back))
    return report


# ---------------------------------------------------------------------------
# Unboundedness
# ---------------------------------------------------------------------------

def check_unboundedness(max_rank: int = 3) -> CheckReport:
    """{y : y subset u} and {y : y = u} meet every rank up to max_rank, u in W_2"""
    report = CheckReport("unboundedness", params={"max_rank": max_rank})
    for u in enumerate_level(2):
        for n, x in unbounded_subset_witnesses(u, max_rank):
            report.expect(rank(x) == n + 1 and not subset_value(x, u).is_false,
                          item="subset", u=_show(u), n=n, x=_show(x))
        for n, y in unbounded_equality_witnesses(u, max_rank):
            report.expect(rank(y) > n and not equality_value(y, u).is_false,
                          item="equality", u=_show(u), n=n, y=_show(y))
    return report


# ---------------------------------------------------------------------------
# Suite
# ---------------------------------------------------------------------------

def universe_suite(level: int = DEFAULT_LEVEL, seed: int = 0, acla_samples: int = 100,
                   omega_formulas: int = 50, max_failures: int = 20) -> SuiteReport:
    suite = SuiteReport("universe", params={"level": level, "seed": seed})
    batteries: Sequence[Callable[[], CheckReport]] = (
        *(lambda key=key: verify_axiom(key, level) for key in AXIOMS),
        lambda: check_subset_equality(level),
        lambda: check_subset_agreement(level, seed=seed),
        lambda: check_extension_operators(level),
        lambda: check_levels(level),
        lambda: check_acla(acla_samples, seed),
        lambda: check_omega(omega_formulas, seed),
        lambda: check_unboundedness(),
    )
    for battery in batteries:
        report = battery()
        report.max_failures = max_failures
        del report.failures[max_failures:]
        suite.add(report)
    logger.info(f"universe suite at level {level}: {'pass' if suite.passed else 'FAIL'}")
    return suite
