"""
Statements - the derived laws every model designates (bang and quest
absorption, substitutivity of identicals and of strong equivalents, behaviour
of classical formulas), checked exhaustively on propositional instances and by
sampling on first-order ones
"""
import logging
from typing import Callable, Dict, List, Tuple

import numpy as np

from src.core.formula import (
    And, Atom, Bang, Circ, ClassNeg, Eq, Formula, Forall, Iff, Imp, Neg, Quest, Signature, StrongIff,
    StrongImp, Var, free_vars, render, substitute,
)
from src.core.formula_gen import contexts, fill, random_formula
from src.core.formula_parser import parse
from src.core.report import CheckReport, SuiteReport
from src.core.semantics import Evaluator, assignments, designated_everywhere, enumerate_models, random_model

logger = logging.getLogger(__name__)

PROPOSITIONAL_SIGNATURE = Signature({"p": 0, "q": 0})
SUBSTITUTION_SIGNATURE = Signature({"P": 1, "Q": 1, "r": 0})
FIRST_ORDER_SIGNATURE = Signature({"R": 1, "S": 2})


def _bang_absorption(phi: Formula, psi: Formula) -> Formula:
    return Iff(phi, Bang(phi))


def _quest_negation(phi: Formula, psi: Formula) -> Formula:
    return Iff(Neg(phi), Neg(Quest(phi)))


def _identicals(phi: Formula, psi: Formula) -> Formula:
    return Imp(Eq(Var("x"), Var("y")), StrongIff(phi, substitute(phi, "x", Var("y"))))


def _classical_collapse(phi: Formula, psi: Formula) -> Formula:
    return Imp(Circ(phi), And(StrongIff(phi, Bang(phi)), StrongIff(phi, Quest(phi))))


def _classical_negations(phi: Formula, psi: Formula) -> Formula:
    return Imp(Circ(phi), StrongIff(Neg(phi), ClassNeg(phi)))


def _classical_implications(phi: Formula, psi: Formula) -> Formula:
    return Imp(And(Circ(phi), Circ(psi)), StrongIff(Imp(phi, psi), StrongImp(phi, psi)))


STATEMENTS: Dict[str, Callable[[Formula, Formula], Formula]] = {
    "bang_absorption": _bang_absorption,
    "quest_negation": _quest_negation,
    "identicals": _identicals,
    "classical_collapse": _classical_collapse,
    "classical_negations": _classical_negations,
    "classical_implications": _classical_implications,
}


def propositional_instances() -> List[Tuple[str, Formula]]:
    """Each law with phi := p, psi := q, universally closed over x and y"""
    p, q = parse("p()", PROPOSITIONAL_SIGNATURE), parse("q()", PROPOSITIONAL_SIGNATURE)
    out = []
    for name, build in STATEMENTS.items():
        out.append((name, _close(build(p, q))))
    return out


def _close(phi: Formula) -> Formula:
    for var in sorted(free_vars(phi), reverse=True):
        phi = Forall(var, phi)
    return phi


def check_propositional(max_size: int = 3, budget: int = 2_000_000) -> CheckReport:
    """Every propositional instance designated in every model up to max_size"""
    report = CheckReport("statements_propositional", params={"max_size": max_size})
    instances = propositional_instances()
    models = 0
    for model in enumerate_models(PROPOSITIONAL_SIGNATURE, max_size, budget):
        models += 1
        for name, phi in instances:
            report.expect(designated_everywhere(model, phi), statement=name, model=model.to_dict())
    report.extra["models"] = models
    return report


def check_first_order(samples: int = 500, max_size: int = 3, seed: int = 0) -> CheckReport:
    """Sampled instantiations over {R: 1, S: 2} on random models of size <= max_size"""
    report = CheckReport("statements_first_order", params={"samples": samples, "max_size": max_size, "seed": seed})
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        phi = random_formula(rng, FIRST_ORDER_SIGNATURE, 2, ("x", "y", "z"))
        psi = random_formula(rng, FIRST_ORDER_SIGNATURE, 2, ("x", "y", "z"))
        model = random_model(FIRST_ORDER_SIGNATURE, int(rng.integers(1, max_size + 1)), rng)
        for name, build in STATEMENTS.items():
            instance = build(phi, psi)
            report.expect(designated_everywhere(model, instance), statement=name,
                          instance=render(instance), model=model.to_dict())
    return report


def check_substitution(max_depth: int = 3, max_size: int = 2, budget: int = 2_000_000) -> CheckReport:
    """C[P(x)] and C[Q(x)] take the same value wherever P(x) <=> Q(x) is designated

    Every context C up to max_depth over the side atom r(), every model of size
    <= max_size with classical equality, and every value of x.
    """
    report = CheckReport("statements_substitution", params={"max_depth": max_depth, "max_size": max_size})
    phi, psi = Atom("P", (Var("x"),)), Atom("Q", (Var("x"),))
    hypothesis = StrongIff(phi, psi)
    pairs = [(c, fill(c, phi), fill(c, psi)) for c in contexts(max_depth)]
    models = 0
    for model in enumerate_models(SUBSTITUTION_SIGNATURE, max_size, budget,
                                  eq_filter=lambda domain, eq_neg: not eq_neg):
        ev = Evaluator(model)
        if not designated_everywhere(model, hypothesis, ev):
            continue
        models += 1
        for env in assignments(["x"], model.domain):
            for c, left, right in pairs:
                a, b = ev.compile(left)(env), ev.compile(right)(env)
                report.tick()
                if a != b:
                    report.fail(context=render(c), model=model.to_dict(), x=env["x"], values=[a.name, b.name])
    report.extra["contexts"] = len(pairs)
    report.extra["models"] = models
    return report


def statements_suite(max_size: int = 3, samples: int = 500, seed: int = 0,
                     budget: int = 2_000_000, substitution_depth: int = 3) -> SuiteReport:
    suite = SuiteReport("statements", params={"max_size": max_size, "samples": samples, "seed": seed,
                                              "substitution_depth": substitution_depth})
    suite.add(check_propositional(max_size, budget))
    suite.add(check_first_order(samples, max_size, seed))
    suite.add(check_substitution(substitution_depth, budget=budget))
    logger.info(f"statement battery: {'pass' if suite.passed else 'FAIL'}")
    return suite
