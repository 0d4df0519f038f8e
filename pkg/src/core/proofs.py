"""
Proofs - the 22 axiom schemas, explicit-instantiation proof checking and a
seeded soundness harness against the T/F semantics
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple, Union

import numpy as np

from src.core.errors import CaptureError, SchemaError
from src.core.formula import (
    BOT, And, Atom, Binary, Eq, Exists, Forall, Formula, Iff, Imp, Neg, Or,
    Signature, Term, Unary, Var, desugar, free_vars, is_free_for, render, substitute,
)
from src.core.formula_gen import random_formula, random_term
from src.core.report import CheckReport, ProofVerdict, SuiteReport
from src.core.semantics import Evaluator, assignments, designated_everywhere, random_model
from src.utils.helpers import chunk_list, parallel_map

logger = logging.getLogger(__name__)

Part = Union[Formula, str, Term]

FORMULA_METAVARS = ("phi", "psi", "chi")
VARIABLE_METAVARS = ("x", "y")
TERM_METAVARS = ("t",)


@dataclass(frozen=True)
class Schema:
    id: int
    text: str
    metavars: Tuple[str, ...]
    build: Callable[["_Parts"], Formula]


class _Parts:
    """Typed access to an instantiation map"""

    def __init__(self, schema_id: int, parts: Mapping[str, Part]):
        self.schema_id = schema_id
        self.parts = parts

    def _get(self, key: str):
        if key not in self.parts:
            raise SchemaError(f"schema {self.schema_id}: missing metavariable '{key}'")
        return self.parts[key]

    def f(self, key: str) -> Formula:
        value = self._get(key)
        if not isinstance(value, Formula):
            raise SchemaError(f"schema {self.schema_id}: '{key}' must be a formula")
        return value

    def v(self, key: str) -> str:
        value = self._get(key)
        if isinstance(value, Var):
            return value.name
        if not isinstance(value, str):
            raise SchemaError(f"schema {self.schema_id}: '{key}' must be a variable")
        return value

    def t(self, key: str) -> Term:
        value = self._get(key)
        if isinstance(value, str):
            return Var(value)
        if isinstance(value, Formula):
            raise SchemaError(f"schema {self.schema_id}: '{key}' must be a term")
        return value


def _instance_of_quantified(p: _Parts) -> Formula:
    phi, x, t = p.f("phi"), p.v("x"), p.t("t")
    if not is_free_for(t, x, phi):
        raise CaptureError(f"schema {p.schema_id}: term '{t.name}' is not free for '{x}'")
    return substitute(phi, x, t)


def _schema_14(p: _Parts) -> Formula:
    phi, x, y = p.f("phi"), p.v("x"), p.v("y")
    if not is_free_for(Var(y), x, phi):
        raise CaptureError(f"schema 14: variable '{y}' is not free for '{x}'")
    return Imp(Eq(Var(x), Var(y)), Imp(phi, substitute(phi, x, Var(y))))


SCHEMAS: Dict[int, Schema] = {s.id: s for s in (
    Schema(1, "phi -> (psi -> phi)", ("phi", "psi"),
           lambda p: Imp(p.f("phi"), Imp(p.f("psi"), p.f("phi")))),
    Schema(2, "(phi -> (psi -> chi)) -> ((phi -> psi) -> (phi -> chi))", ("phi", "psi", "chi"),
           lambda p: Imp(Imp(p.f("phi"), Imp(p.f("psi"), p.f("chi"))),
                         Imp(Imp(p.f("phi"), p.f("psi")), Imp(p.f("phi"), p.f("chi"))))),
    Schema(3, "phi | (phi -> psi)", ("phi", "psi"),
           lambda p: Or(p.f("phi"), Imp(p.f("phi"), p.f("psi")))),
    Schema(4, "phi & psi -> phi", ("phi", "psi"),
           lambda p: Imp(And(p.f("phi"), p.f("psi")), p.f("phi"))),
    Schema(5, "phi & psi -> psi", ("phi", "psi"),
           lambda p: Imp(And(p.f("phi"), p.f("psi")), p.f("psi"))),
    Schema(6, "phi -> (psi -> phi & psi)", ("phi", "psi"),
           lambda p: Imp(p.f("phi"), Imp(p.f("psi"), And(p.f("phi"), p.f("psi"))))),
    Schema(7, "phi -> phi | psi", ("phi", "psi"),
           lambda p: Imp(p.f("phi"), Or(p.f("phi"), p.f("psi")))),
    Schema(8, "psi -> phi | psi", ("phi", "psi"),
           lambda p: Imp(p.f("psi"), Or(p.f("phi"), p.f("psi")))),
    Schema(9, "(phi -> chi) -> ((psi -> chi) -> (phi | psi -> chi))", ("phi", "psi", "chi"),
           lambda p: Imp(Imp(p.f("phi"), p.f("chi")),
                         Imp(Imp(p.f("psi"), p.f("chi")), Imp(Or(p.f("phi"), p.f("psi")), p.f("chi"))))),
    Schema(10, "bot -> phi", ("phi",),
           lambda p: Imp(BOT, p.f("phi"))),
    Schema(11, "forall x. phi -> phi[t/x]", ("phi", "x", "t"),
           lambda p: Imp(Forall(p.v("x"), p.f("phi")), _instance_of_quantified(p))),
    Schema(12, "phi[t/x] -> exists x. phi", ("phi", "x", "t"),
           lambda p: Imp(_instance_of_quantified(p), Exists(p.v("x"), p.f("phi")))),
    Schema(13, "x = x", ("x",),
           lambda p: Eq(Var(p.v("x")), Var(p.v("x")))),
    Schema(14, "x = y -> (phi -> phi[y/x])", ("phi", "x", "y"), _schema_14),
    Schema(15, "~~phi <-> phi", ("phi",),
           lambda p: Iff(Neg(Neg(p.f("phi"))), p.f("phi"))),
    Schema(16, "~(phi & psi) <-> ~phi | ~psi", ("phi", "psi"),
           lambda p: Iff(Neg(And(p.f("phi"), p.f("psi"))), Or(Neg(p.f("phi")), Neg(p.f("psi"))))),
    Schema(17, "~(phi | psi) <-> ~phi & ~psi", ("phi", "psi"),
           lambda p: Iff(Neg(Or(p.f("phi"), p.f("psi"))), And(Neg(p.f("phi")), Neg(p.f("psi"))))),
    Schema(18, "~(phi -> psi) <-> phi & ~psi", ("phi", "psi"),
           lambda p: Iff(Neg(Imp(p.f("phi"), p.f("psi"))), And(p.f("phi"), Neg(p.f("psi"))))),
    Schema(19, "~bot", (),
           lambda p: Neg(BOT)),
    Schema(20, "~(forall x. phi) <-> (exists x. ~phi)", ("phi", "x"),
           lambda p: Iff(Neg(Forall(p.v("x"), p.f("phi"))), Exists(p.v("x"), Neg(p.f("phi"))))),
    Schema(21, "~(exists x. phi) <-> (forall x. ~phi)", ("phi", "x"),
           lambda p: Iff(Neg(Exists(p.v("x"), p.f("phi"))), Forall(p.v("x"), Neg(p.f("phi"))))),
    Schema(22, "~(x = y) -> ~(y = x)", ("x", "y"),
           lambda p: Imp(Neg(Eq(Var(p.v("x")), Var(p.v("y")))), Neg(Eq(Var(p.v("y")), Var(p.v("x")))))),
)}


def instantiate_schema(schema_id: int, parts: Mapping[str, Part]) -> Formula:
    """Concrete instance of an axiom schema"""
    if schema_id not in SCHEMAS:
        raise SchemaError(f"unknown axiom schema {schema_id} (expected 1..22)")
    return SCHEMAS[schema_id].build(_Parts(schema_id, parts))


# ---------------------------------------------------------------------------
# Schema matching (propositional schemas only)
# ---------------------------------------------------------------------------

_PLACEHOLDERS = {m: Atom(f"?{m}") for m in FORMULA_METAVARS}
MATCHABLE = tuple(i for i, s in SCHEMAS.items() if set(s.metavars) <= set(FORMULA_METAVARS))


def _match(pattern: Formula, phi: Formula, binding: Dict[str, Formula]) -> bool:
    for meta, holder in _PLACEHOLDERS.items():
        if pattern == holder:
            if meta in binding:
                return binding[meta] == phi
            binding[meta] = phi
            return True
    if type(pattern) is not type(phi):
        return False
    if isinstance(pattern, Unary):
        return _match(pattern.body, phi.body, binding)
    if isinstance(pattern, Binary):
        return _match(pattern.left, phi.left, binding) and _match(pattern.right, phi.right, binding)
    return pattern == phi


def match_schema(phi: Formula) -> List[Tuple[int, Dict[str, Formula]]]:
    """Propositional schemas phi is a syntactic instance of, with bindings"""
    target = desugar(phi)
    found = []
    for schema_id in MATCHABLE:
        pattern = instantiate_schema(schema_id, _PLACEHOLDERS)
        binding: Dict[str, Formula] = {}
        if _match(pattern, target, binding):
            found.append((schema_id, binding))
    return found


# ---------------------------------------------------------------------------
# Proofs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomStep:
    schema: int
    inst: Mapping[str, Part] = field(default_factory=dict)


@dataclass(frozen=True)
class HypothesisStep:
    index: int


@dataclass(frozen=True)
class ModusPonens:
    minor: int
    major: int


@dataclass(frozen=True)
class GenImp:
    premise: int


@dataclass(frozen=True)
class GenExists:
    premise: int


Justification = Union[AxiomStep, HypothesisStep, ModusPonens, GenImp, GenExists]


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    just: Justification


@dataclass
class Proof:
    hypotheses: List[Formula]
    lines: List[ProofLine]

    @property
    def conclusion(self) -> Optional[Formula]:
        return self.lines[-1].formula if self.lines else None


def _cited(just: Justification) -> Tuple[int, ...]:
    if isinstance(just, ModusPonens):
        return (just.minor, just.major)
    if isinstance(just, (GenImp, GenExists)):
        return (just.premise,)
    return ()


def _check_line(n: int, line: ProofLine, proof: Proof, done: List[Formula]) -> Optional[str]:
    """Reason the line is wrong, or None when it is justified"""
    current = desugar(line.formula)
    just = line.just
    for ref in _cited(just):
        if ref >= n:
            return f"forward reference to line {ref}"
        if ref < 1:
            return f"bad line reference {ref}"
    if isinstance(just, AxiomStep):
        try:
            instance = instantiate_schema(just.schema, just.inst)
        except SchemaError as e:
            return str(e)
        if desugar(instance) != current:
            return f"not an instance of schema {just.schema}: expected {render(instance)}"
        return None
    if isinstance(just, HypothesisStep):
        if not 1 <= just.index <= len(proof.hypotheses):
            return f"no hypothesis {just.index}"
        if desugar(proof.hypotheses[just.index - 1]) != current:
            return f"formula differs from hypothesis {just.index}"
        return None
    if isinstance(just, ModusPonens):
        minor, major = done[just.minor - 1], done[just.major - 1]
        if major != Imp(minor, current):
            return f"modus ponens mismatch: line {just.major} is not line {just.minor} -> this line"
        return None
    premise = done[just.premise - 1]
    if not isinstance(premise, Imp):
        return f"line {just.premise} is not an implication"
    if isinstance(just, GenImp):
        if not (isinstance(current, Imp) and isinstance(current.right, Forall)
                and current.left == premise.left and current.right.body == premise.right):
            return f"not of the form phi -> forall x. psi from line {just.premise}"
        if current.right.var in free_vars(premise.left):
            return f"side condition: '{current.right.var}' occurs free in the antecedent"
        return None
    if isinstance(just, GenExists):
        if not (isinstance(current, Imp) and isinstance(current.left, Exists)
                and current.right == premise.right and current.left.body == premise.left):
            return f"not of the form exists x. phi -> psi from line {just.premise}"
        if current.left.var in free_vars(premise.right):
            return f"side condition: '{current.left.var}' occurs free in the consequent"
        return None
    return f"unknown justification {just!r}"


def check_proof(proof: Proof) -> ProofVerdict:
    """Accept iff every line is an axiom instance, a hypothesis or a correct rule step"""
    if not proof.lines:
        return ProofVerdict(False, 0, 0, "empty proof")
    done: List[Formula] = []
    for n, line in enumerate(proof.lines, 1):
        reason = _check_line(n, line, proof, done)
        if reason is not None:
            logger.debug(f"proof rejected at line {n}: {reason}")
            return ProofVerdict(False, n, n, reason)
        done.append(desugar(line.formula))
    return ProofVerdict(True, len(proof.lines), conclusion=render(proof.conclusion))


# ---------------------------------------------------------------------------
# Soundness harness
# ---------------------------------------------------------------------------

HARNESS_SIGNATURE = Signature({"p": 0, "q": 0, "R": 1, "S": 2}, frozenset({"c"}))
HARNESS_VARIABLES = ("x", "y", "z")
RULES = ("mp", "gen_imp", "gen_exists")
CHUNK = 250


def random_instance(schema_id: int, rng, sig: Signature = HARNESS_SIGNATURE,
                    max_depth: int = 2) -> Formula:
    """Random instance of a schema; capturing terms are replaced by a constant"""
    parts: Dict[str, Part] = {m: random_formula(rng, sig, max_depth, HARNESS_VARIABLES)
                              for m in FORMULA_METAVARS}
    parts["x"] = HARNESS_VARIABLES[int(rng.integers(len(HARNESS_VARIABLES)))]
    parts["y"] = HARNESS_VARIABLES[int(rng.integers(len(HARNESS_VARIABLES)))]
    parts["t"] = random_term(rng, sig, HARNESS_VARIABLES)
    try:
        return instantiate_schema(schema_id, parts)
    except CaptureError:
        fallback = dict(parts, t=random_term(rng, Signature(constants=sig.constants), ()),
                        y=parts["x"])
        return instantiate_schema(schema_id, fallback)


def _random_model(rng, model_size: int, sig: Signature = HARNESS_SIGNATURE):
    return random_model(sig, int(rng.integers(1, model_size + 1)), rng)


def _schema_task(schema_id: int, trials: int, model_size: int, rng) -> CheckReport:
    report = CheckReport(f"schema_{schema_id}", {"schema": schema_id})
    for _ in range(trials):
        instance = random_instance(schema_id, rng)
        model = _random_model(rng, model_size)
        report.expect(designated_everywhere(model, instance),
                      instance=render(instance), model=model.to_dict())
    return report


def _rule_task(rule: str, trials: int, model_size: int, rng) -> CheckReport:
    report = CheckReport(f"rule_{rule}", {"rule": rule}, extra={"premises_held": 0})
    for _ in range(trials):
        model = _random_model(rng, model_size)
        ev = Evaluator(model)
        phi = random_formula(rng, HARNESS_SIGNATURE, 2, HARNESS_VARIABLES)
        psi = random_formula(rng, HARNESS_SIGNATURE, 2, HARNESS_VARIABLES)
        if rule == "mp":
            premises = [phi, Imp(phi, psi)]
            fv = sorted(free_vars(Imp(phi, psi)))
            for env in assignments(fv, model.domain):
                if all(ev.compile(f)(env)[0] for f in premises):
                    report.extra["premises_held"] += 1
                    report.expect(ev.compile(psi)(env)[0], phi=render(phi), psi=render(psi),
                                  model=model.to_dict(), assignment={k: str(v) for k, v in env.items()})
            continue
        if rule == "gen_imp":
            x = _var_not_free(rng, phi)
            premise, conclusion = Imp(phi, psi), Imp(phi, Forall(x, psi))
        else:
            x = _var_not_free(rng, psi)
            premise, conclusion = Imp(phi, psi), Imp(Exists(x, phi), psi)
        if designated_everywhere(model, premise, ev):
            report.extra["premises_held"] += 1
            report.expect(designated_everywhere(model, conclusion, ev),
                          premise=render(premise), conclusion=render(conclusion), model=model.to_dict())
    return report


def _var_not_free(rng, phi: Formula) -> str:
    candidates = [v for v in HARNESS_VARIABLES if v not in free_vars(phi)]
    if not candidates:
        return "w"
    return candidates[int(rng.integers(len(candidates)))]


def _run_task(task: Tuple[str, int, int, Any]) -> CheckReport:
    kind, trials, model_size, seed_seq = task
    rng = np.random.default_rng(seed_seq)
    if kind in RULES:
        report = _rule_task(kind, trials, model_size, rng)
    else:
        report = _schema_task(int(kind), trials, model_size, rng)
    return report


def soundness_harness(trials: int, model_size: int, seed: int = 0, jobs: int = 1) -> SuiteReport:
    """Random schema instances and rule applications checked against the semantics"""
    if trials < 1:
        raise SchemaError("trials must be at least 1")
    if not 1 <= model_size <= 4:
        raise SchemaError("model_size must be in 1..4")
    kinds = [str(i) for i in SCHEMAS] + list(RULES)
    tasks: List[Tuple[str, int, int, Any]] = []
    for kind in kinds:
        for chunk in chunk_list(list(range(trials)), CHUNK):
            tasks.append((kind, len(chunk), model_size, None))
    seeds = np.random.SeedSequence(seed).spawn(len(tasks))
    tasks = [(k, n, size, s) for (k, n, size, _), s in zip(tasks, seeds)]
    logger.info(f"soundness harness: {len(tasks)} tasks, trials={trials}, jobs={jobs}")
    results = parallel_map(_run_task, tasks, jobs)

    suite = SuiteReport("soundness", params={"trials": trials, "model_size": model_size, "seed": seed})
    merged: Dict[str, CheckReport] = {}
    for (kind, *_), part in zip(tasks, results):
        if kind not in merged:
            merged[kind] = suite.add(CheckReport(part.check, dict(part.params), extra={}))
            if "premises_held" in part.extra:
                merged[kind].extra["premises_held"] = 0
            merged[kind].params["trials"] = trials
        merged[kind].merge(part)
        if "premises_held" in part.extra:
            merged[kind].extra["premises_held"] += part.extra["premises_held"]
    return suite
