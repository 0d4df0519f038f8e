"""
Tarski - four-valued Tarski models read in a non-classical meta-theory,
the transformations to and from T/F-models, and validity over the four
model classes
"""
import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, FrozenSet, Hashable, Iterator, List, Mapping, Optional, Sequence, Tuple

from src.core.errors import ModelValidationError, UnboundVariableError, UnknownCheckError, UnknownSymbolError
from src.core.formula import (
    And, Atom, Bang, Bot, ClassNeg, Const, Eq, Exists, Forall, Formula, Iff, Imp, Neg, Or, Quest, Signature,
    Term, desugar, free_vars, render,
)
from src.core.formula_gen import formula_battery
from src.core.formula_parser import parse
from src.core.report import CheckReport, SuiteReport, Verdict
from src.core.semantics import (
    Evaluator, TFModel, enumerate_models, relevant_signature, truth_table, validity_bounded,
)
from src.core.statements import propositional_instances
from src.core.truth import BOTH, NEITHER, ONE, VALUES, ZERO, TruthValue, combine
from src.core.universe import NCSet, omega_member
from src.utils.helpers import chunk_list, parallel_map

logger = logging.getLogger(__name__)

Element = Hashable

# ---------------------------------------------------------------------------
# Meta-level connectives, rows and columns in the order 1 b n 0
# ---------------------------------------------------------------------------

META_NEG = "0 b n 1"

META_AND = """
1 b n 0
b b 0 0
n 0 n 0
0 0 0 0
"""

META_OR = """
1 1 1 1
1 b 1 b
1 1 n n
1 b n 0
"""

META_IMP = """
1 b n 0
1 b n 0
1 1 1 1
1 1 1 1
"""

META_IFF = """
1 b n 0
b b n 0
n n 1 1
0 0 1 1
"""


def _unary_table(grid: str) -> Dict[TruthValue, TruthValue]:
    return dict(zip(VALUES, (TruthValue.from_name(c) for c in grid.split())))


def _binary_table(grid: str) -> Dict[Tuple[TruthValue, TruthValue], TruthValue]:
    rows = [line.split() for line in grid.strip().splitlines()]
    return {(a, b): TruthValue.from_name(rows[i][j])
            for i, a in enumerate(VALUES) for j, b in enumerate(VALUES)}


NEG = _unary_table(META_NEG)
AND = _binary_table(META_AND)
OR = _binary_table(META_OR)
IMP = _binary_table(META_IMP)
IFF = _binary_table(META_IFF)

_BINARY = {And: AND, Or: OR, Imp: IMP, Iff: IFF}

# the derived unary connectives, rows 1 b n 0
META_NOT = "0 0 1 1"
META_BANG = "1 1 0 0"
META_QUEST = "1 0 1 0"

REFERENCE_TABLES: Dict[str, Dict] = {
    "neg": NEG, "and": AND, "or": OR, "imp": IMP, "iff": IFF,
    "not": _unary_table(META_NOT), "bang": _unary_table(META_BANG), "quest": _unary_table(META_QUEST),
}


def check_truth_tables() -> CheckReport:
    """Tables generated from the desugared connectives against the reference grids"""
    report = CheckReport("truth_tables", params={"connectives": sorted(REFERENCE_TABLES)})
    for name, reference in REFERENCE_TABLES.items():
        table = truth_table(name)
        for args, expected in reference.items():
            key = (args,) if isinstance(args, TruthValue) else args
            got = table.lookup(*key)
            report.expect(got == expected, connective=name, args=[a.name for a in key],
                          expected=expected.name, got=got.name)
    return report


# ---------------------------------------------------------------------------
# Models and classes
# ---------------------------------------------------------------------------

def _tuple_key(t: Tuple) -> str:
    return "(" + ",".join(str(e) for e in t) + ")"


@dataclass(frozen=True)
class FVTarskiModel:
    """Classical domain, relations valued in {1, b, n, 0}, and the extension of '!='"""
    domain: Tuple[Element, ...]
    constants: Mapping[str, Element] = field(default_factory=dict)
    arities: Mapping[str, int] = field(default_factory=dict)
    rel_value: Mapping[str, Mapping[Tuple, TruthValue]] = field(default_factory=dict)
    diseq: FrozenSet[Tuple[Element, Element]] = frozenset()

    def value_of(self, rel: str, args: Tuple) -> TruthValue:
        return self.rel_value[rel][args]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "domain": [str(d) for d in self.domain],
            "constants": {c: str(e) for c, e in sorted(self.constants.items())},
            "relations": {
                rel: {
                    "arity": self.arities[rel],
                    "values": {_tuple_key(t): v.name for t, v in sorted(values.items(), key=lambda kv: _tuple_key(kv[0]))},
                }
                for rel, values in sorted(self.rel_value.items())
            },
            "diseq": sorted([str(a), str(b)] for a, b in self.diseq),
        }


def validate_tarski(model: FVTarskiModel) -> None:
    if not model.domain:
        raise ModelValidationError("domain empty")
    if len(set(model.domain)) != len(model.domain):
        raise ModelValidationError("domain elements not distinct")
    pool = set(model.domain)
    for name, e in model.constants.items():
        if e not in pool:
            raise ModelValidationError(f"dangling constant '{name}'")
    for rel, arity in model.arities.items():
        values = model.rel_value.get(rel, {})
        for t in values:
            if len(t) != arity or not set(t) <= pool:
                raise ModelValidationError(f"arity mismatch in relation '{rel}'")
        missing = [t for t in itertools.product(model.domain, repeat=arity) if t not in values]
        if missing:
            raise ModelValidationError(f"relation '{rel}' has no value at {_tuple_key(missing[0])}")
    for a, b in model.diseq:
        if (b, a) not in model.diseq:
            raise ModelValidationError("diseq not symmetric")


class ModelClass(Enum):
    FULL = "full"
    CONSISTENT_ONLY = "consistent-only"
    COMPLETE_ONLY = "complete-only"
    CLASSICAL = "classical"

    @property
    def values(self) -> Tuple[TruthValue, ...]:
        banned = {
            ModelClass.FULL: (),
            ModelClass.CONSISTENT_ONLY: (BOTH,),
            ModelClass.COMPLETE_ONLY: (NEITHER,),
            ModelClass.CLASSICAL: (BOTH, NEITHER),
        }[self]
        return tuple(v for v in VALUES if v not in banned)

    def accepts_diseq(self, domain: Sequence[Element], diseq: FrozenSet) -> bool:
        no_glut = not any((a, a) in diseq for a in domain)
        no_gap = all((a, b) in diseq for a in domain for b in domain if a != b)
        if self is ModelClass.CONSISTENT_ONLY:
            return no_glut
        if self is ModelClass.COMPLETE_ONLY:
            return no_gap
        if self is ModelClass.CLASSICAL:
            return no_glut and no_gap
        return True

    def contains(self, model: FVTarskiModel) -> bool:
        allowed = set(self.values)
        return (all(v in allowed for values in model.rel_value.values() for v in values.values())
                and self.accepts_diseq(model.domain, model.diseq))

    @classmethod
    def from_name(cls, name: str) -> "ModelClass":
        key = name.strip().lower().replace("_", "-")
        aliases = {
            "full": cls.FULL, "bs4": cls.FULL, "fde": cls.FULL,
            "consistent-only": cls.CONSISTENT_ONLY, "consistentonly": cls.CONSISTENT_ONLY,
            "consistent": cls.CONSISTENT_ONLY, "k3": cls.CONSISTENT_ONLY,
            "complete-only": cls.COMPLETE_ONLY, "completeonly": cls.COMPLETE_ONLY,
            "complete": cls.COMPLETE_ONLY, "lfi1": cls.COMPLETE_ONLY, "lp": cls.COMPLETE_ONLY,
            "classical": cls.CLASSICAL, "fol": cls.CLASSICAL,
        }
        if key not in aliases:
            raise UnknownCheckError(f"unknown model class '{name}' (expected {', '.join(c.value for c in cls)})")
        return aliases[key]


# ---------------------------------------------------------------------------
# Satisfaction
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _primitive(phi: Formula) -> Formula:
    return desugar(phi)


def _term(model: FVTarskiModel, t: Term, env: Mapping[str, Element]) -> Element:
    if isinstance(t, Const):
        try:
            return model.constants[t.name]
        except KeyError:
            raise UnknownSymbolError(t.name) from None
    try:
        return env[t.name]
    except KeyError:
        raise UnboundVariableError(t.name) from None


_MISSING = object()


def _value(model: FVTarskiModel, phi: Formula, env: Dict[str, Element]) -> TruthValue:
    if isinstance(phi, Atom):
        try:
            values = model.rel_value[phi.rel]
        except KeyError:
            raise UnknownSymbolError(phi.rel) from None
        return values[tuple(_term(model, t, env) for t in phi.terms)]
    if isinstance(phi, Eq):
        a, b = _term(model, phi.left, env), _term(model, phi.right, env)
        return combine(a == b, (a, b) in model.diseq)
    if isinstance(phi, Bot):
        return ZERO
    if isinstance(phi, Neg):
        return NEG[_value(model, phi.body, env)]
    if isinstance(phi, (Forall, Exists)):
        table, acc = (AND, ONE) if isinstance(phi, Forall) else (OR, ZERO)
        saved = env.get(phi.var, _MISSING)
        for d in model.domain:
            env[phi.var] = d
            acc = table[acc, _value(model, phi.body, env)]
        if saved is _MISSING:
            env.pop(phi.var, None)
        else:
            env[phi.var] = saved
        return acc
    table = _BINARY[type(phi)]
    return table[_value(model, phi.left, env), _value(model, phi.right, env)]


def tarski_value(model: FVTarskiModel, phi: Formula, env: Optional[Mapping[str, Element]] = None) -> TruthValue:
    """Value of 'M satisfies phi' with every clause read through the meta tables"""
    env = dict(env or {})
    missing = free_vars(phi) - set(env)
    if missing:
        raise UnboundVariableError(sorted(missing)[0])
    return _value(model, _primitive(phi), env)


def tarski_truth_value(model: FVTarskiModel, phi: Formula, env: Optional[Mapping[str, Element]] = None) -> NCSet:
    """The truth-value set naming the meta-level value"""
    return omega_member(tarski_value(model, phi, env))


# ---------------------------------------------------------------------------
# Transformations
# ---------------------------------------------------------------------------

def to_tf(model: FVTarskiModel) -> TFModel:
    """Positive part: value in {1, b}; negative part: value in {b, 0}; eq_neg = diseq"""
    return TFModel(
        domain=tuple(model.domain),
        constants=dict(model.constants),
        arities=dict(model.arities),
        rel_pos={r: frozenset(t for t, v in values.items() if v.is_true) for r, values in model.rel_value.items()},
        rel_neg={r: frozenset(t for t, v in values.items() if v.is_false) for r, values in model.rel_value.items()},
        eq_neg=frozenset(model.diseq),
    )


def from_tf(model: TFModel) -> FVTarskiModel:
    """Positive equality is identity, so the equivalence blocks are the elements themselves"""
    rel_value = {}
    for rel, arity in model.arities.items():
        pos, neg = model.rel_pos.get(rel, frozenset()), model.rel_neg.get(rel, frozenset())
        rel_value[rel] = {t: combine(t in pos, t in neg) for t in itertools.product(model.domain, repeat=arity)}
    return FVTarskiModel(
        domain=tuple(model.domain),
        constants=dict(model.constants),
        arities=dict(model.arities),
        rel_value=rel_value,
        diseq=frozenset(model.eq_neg),
    )


# ---------------------------------------------------------------------------
# Validity per class
# ---------------------------------------------------------------------------

def enumerate_tarski_models(sig: Signature, max_size: int, cls: ModelClass = ModelClass.FULL,
                            budget: int = 2_000_000) -> Iterator[FVTarskiModel]:
    for tf in enumerate_models(sig, max_size, budget, values=cls.values, eq_filter=cls.accepts_diseq):
        yield from_tf(tf)


def classify_consequence(premises: Sequence[Formula], conclusion: Formula, cls: ModelClass, max_size: int,
                         sig: Optional[Signature] = None, budget: int = 2_000_000) -> Verdict:
    """Search the class for a model designating every premise but not the conclusion"""
    formulas = list(premises) + [conclusion]
    for phi in formulas:
        if free_vars(phi):
            raise UnboundVariableError(sorted(free_vars(phi))[0])
    relevant = relevant_signature(formulas, sig)
    checked = 0
    for model in enumerate_tarski_models(relevant, max_size, cls, budget):
        checked += 1
        if all(tarski_value(model, p).is_true for p in premises) and not tarski_value(model, conclusion).is_true:
            return Verdict(False, checked, max_size, countermodel=model.to_dict())
    return Verdict(True, checked, max_size)


def classify_validity(phi: Formula, cls: ModelClass, max_size: int, sig: Optional[Signature] = None,
                      budget: int = 2_000_000) -> Verdict:
    return classify_consequence([], phi, cls, max_size, sig, budget)


PROPOSITIONAL = Signature({"p": 0, "q": 0})

# (premises, conclusion, classes where it holds)
SEPARATORS: Tuple[Tuple[Tuple[str, ...], str, FrozenSet[ModelClass]], ...] = (
    ((), "(p() & ~p()) -> bot", frozenset({ModelClass.CONSISTENT_ONLY, ModelClass.CLASSICAL})),
    ((), "p() | ~p()", frozenset({ModelClass.COMPLETE_ONLY, ModelClass.CLASSICAL})),
    ((), "p() | not p()", frozenset(ModelClass)),
    (("p() & ~p()",), "q()", frozenset({ModelClass.CONSISTENT_ONLY, ModelClass.CLASSICAL})),
    (("p()", "~p() | q()"), "q()", frozenset({ModelClass.CONSISTENT_ONLY, ModelClass.CLASSICAL})),
)


def _entry_name(premises: Sequence[str], conclusion: str) -> str:
    return f"{', '.join(premises)} |= {conclusion}" if premises else conclusion


def separation_matrix(max_size: int = 3, budget: int = 2_000_000) -> CheckReport:
    """Class-by-separator verdicts, plus monotonicity of validity into subclasses"""
    report = CheckReport("separation_matrix", params={"max_size": max_size})
    matrix: Dict[str, Dict[str, str]] = {}
    for premises, conclusion, holds_on in SEPARATORS:
        hyps = [parse(p, PROPOSITIONAL) for p in premises]
        goal = parse(conclusion, PROPOSITIONAL)
        row = {}
        for cls in ModelClass:
            verdict = classify_consequence(hyps, goal, cls, max_size, budget=budget)
            row[cls.value] = verdict.status
            report.expect(verdict.holds == (cls in holds_on), entry=_entry_name(premises, conclusion),
                          model_class=cls.value, status=verdict.status, countermodel=verdict.countermodel)
        matrix[_entry_name(premises, conclusion)] = row
    for name, phi in propositional_instances():
        verdicts = {cls: classify_validity(phi, cls, max_size, budget=budget).holds for cls in ModelClass}
        if verdicts[ModelClass.FULL]:
            for cls in ModelClass:
                report.expect(verdicts[cls], item="monotonicity", statement=name, model_class=cls.value)
        else:
            report.fail(item="statement refuted on full class", statement=name)
    report.extra["matrix"] = matrix
    return report


# ---------------------------------------------------------------------------
# Round trips and the satisfaction sweep
# ---------------------------------------------------------------------------

SWEEP_SIGNATURE = Signature({"R": 1, "S": 2})
CHUNK = 2048
FLIP_STRIDE = 16


def _flip_laws(report: CheckReport, model: FVTarskiModel, phi: Formula):
    value = tarski_value(model, phi)
    report.expect(tarski_value(model, Neg(phi)) == NEG[value], item="flip law", formula=render(phi))
    for wrap in (ClassNeg, Bang, Quest):
        report.expect(tarski_value(model, wrap(phi)).classical, item=f"{wrap.symbol} classical", formula=render(phi))


def _sweep_task(task: Tuple[int, List[TFModel], List[Formula]]) -> Tuple[CheckReport, List[bool], List[bool]]:
    offset, models, formulas = task
    report = CheckReport("tarski_sweep")
    tarski_valid = [True] * len(formulas)
    tf_valid = [True] * len(formulas)
    for k, tf in enumerate(models):
        fv = from_tf(tf)
        report.expect(to_tf(fv) == tf, item="to_tf(from_tf(N)) = N", model=tf.to_dict())
        report.expect(from_tf(to_tf(fv)) == fv, item="from_tf(to_tf(M)) = M", model=fv.to_dict())
        ev = Evaluator(tf)
        for i, phi in enumerate(formulas):
            meta = tarski_value(fv, phi)
            twin = ev.value(phi)
            report.expect(meta == twin, item="satisfaction", formula=render(phi), model=tf.to_dict(),
                          meta=meta.name, twin=twin.name)
            tarski_valid[i] = tarski_valid[i] and meta.is_true
            tf_valid[i] = tf_valid[i] and twin.is_true
            if (offset + k) % FLIP_STRIDE == 0:
                _flip_laws(report, fv, phi)
    return report, tarski_valid, tf_valid


def roundtrip_report(max_size: int = 2, depth: int = 3, max_formulas: int = 24, jobs: int = 1,
                     budget: int = 2_000_000) -> SuiteReport:
    """Both round trips, the satisfaction equivalences and Full-class validity agreement

    Sweeps every model of size <= max_size against the first max_formulas sentences
    of the layered battery up to depth.
    """
    formulas = formula_battery(SWEEP_SIGNATURE, depth, max_formulas)
    models = list(enumerate_models(SWEEP_SIGNATURE, max_size, budget))
    tasks = [(i * CHUNK, chunk, formulas) for i, chunk in enumerate(chunk_list(models, CHUNK))]
    logger.info(f"tarski sweep: {len(models)} models x {len(formulas)} formulas, jobs={jobs}")
    results = parallel_map(_sweep_task, tasks, jobs)

    suite = SuiteReport("tarski", params={"max_size": max_size, "depth": depth, "max_formulas": max_formulas})
    sweep = suite.add(CheckReport("tarski_sweep", params={"max_size": max_size, "depth": depth}))
    tarski_valid = [True] * len(formulas)
    tf_valid = [True] * len(formulas)
    for part, t_valid, f_valid in results:
        sweep.merge(part)
        tarski_valid = [a and b for a, b in zip(tarski_valid, t_valid)]
        tf_valid = [a and b for a, b in zip(tf_valid, f_valid)]
    sweep.extra["models"] = len(models)
    sweep.extra["formulas"] = len(formulas)
    sweep.extra["pairs"] = len(models) * len(formulas)

    agreement = suite.add(CheckReport("validity_agreement", params={"max_size": max_size}))
    for phi, t_ok, f_ok in zip(formulas, tarski_valid, tf_valid):
        bounded = validity_bounded(phi, max_size, SWEEP_SIGNATURE, budget)
        agreement.expect(t_ok == f_ok == bounded.holds, formula=render(phi),
                         tarski=t_ok, twin=f_ok, bounded=bounded.status)
    for name, phi in propositional_instances():
        meta = classify_validity(phi, ModelClass.FULL, max_size, budget=budget)
        twin = validity_bounded(phi, max_size, budget=budget)
        agreement.expect(meta.holds and twin.holds, statement=name, tarski=meta.status, twin=twin.status)
    lem = parse("p() | ~p()", PROPOSITIONAL)
    meta, twin = classify_validity(lem, ModelClass.FULL, max_size), validity_bounded(lem, max_size)
    agreement.expect(not meta.holds and not twin.holds, formula=render(lem), tarski=meta.status, twin=twin.status)
    agreement.extra["valid_formulas"] = sum(tarski_valid)
    return suite
