"""
Semantics - T/F-models, the twin truth/falsity evaluator, truth tables
and bounded consequence search over enumerated finite models
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import (
    Any, Callable, Dict, FrozenSet, Hashable, Iterable, Iterator, List, Mapping, Optional,
    Sequence, Set, Tuple,
)

from src.core.errors import (
    ArityError, BudgetExceededError, ModelValidationError, UnboundVariableError,
    UnknownCheckError, UnknownSymbolError,
)
from src.core.formula import (
    Atom, Bang, Bot, Circ, ClassNeg, Const, Eq, Forall, Formula, Iff, Imp, Neg, Or,
    And, Quantifier, Quest, Signature, StrongIff, StrongImp, Term, constants_of, desugar, free_vars,
    relations_of,
)
from src.core.report import Verdict
from src.core.truth import BOTH, NEITHER, ONE, VALUES, ZERO, TruthValue, combine
from src.core import truth

logger = logging.getLogger(__name__)

Element = Hashable
Assignment = Dict[str, Element]

# _VALUE[is_true][is_false]
_VALUE = ((NEITHER, ZERO), (ONE, BOTH))


def element_names(size: int) -> Tuple[str, ...]:
    """Labels a, b, c, ... for generated domains"""
    return tuple(chr(ord("a") + i) if i < 26 else f"e{i}" for i in range(size))


@dataclass(frozen=True)
class TFModel:
    """Finite T/F-model; positive equality is identity of elements"""
    domain: Tuple[Element, ...]
    constants: Mapping[str, Element] = field(default_factory=dict)
    arities: Mapping[str, int] = field(default_factory=dict)
    rel_pos: Mapping[str, FrozenSet[Tuple]] = field(default_factory=dict)
    rel_neg: Mapping[str, FrozenSet[Tuple]] = field(default_factory=dict)
    eq_neg: FrozenSet[Tuple[Element, Element]] = frozenset()

    @classmethod
    def build(cls, domain: Iterable[Element], constants: Optional[Mapping[str, Element]] = None,
              relations: Optional[Mapping[str, Tuple[int, Iterable, Iterable]]] = None,
              eq_neg: Iterable[Tuple[Element, Element]] = ()) -> "TFModel":
        """relations maps name -> (arity, pos tuples, neg tuples)"""
        relations = relations or {}
        return cls(
            domain=tuple(domain),
            constants=dict(constants or {}),
            arities={r: a for r, (a, _, _) in relations.items()},
            rel_pos={r: frozenset(tuple(t) for t in pos) for r, (_, pos, _) in relations.items()},
            rel_neg={r: frozenset(tuple(t) for t in neg) for r, (_, _, neg) in relations.items()},
            eq_neg=frozenset(tuple(p) for p in eq_neg),
        )

    @property
    def signature(self) -> Signature:
        return Signature(dict(self.arities), frozenset(self.constants))

    def atom_value(self, rel: str, args: Tuple) -> TruthValue:
        return combine(args in self.rel_pos[rel], args in self.rel_neg[rel])

    def to_dict(self, label: Callable[[Element], Any] = str) -> Dict[str, Any]:
        def rows(tuples):
            return sorted([label(e) for e in t] for t in tuples)
        return {
            "domain": [label(e) for e in self.domain],
            "constants": {c: label(e) for c, e in sorted(self.constants.items())},
            "relations": {
                r: {"arity": self.arities[r], "pos": rows(self.rel_pos[r]), "neg": rows(self.rel_neg[r])}
                for r in sorted(self.arities)
            },
            "eq_neg": rows(self.eq_neg),
        }


def validate(model: TFModel) -> None:
    """Raise ModelValidationError naming the first violated invariant"""
    if not model.domain:
        raise ModelValidationError("domain empty")
    members = set(model.domain)
    if len(members) != len(model.domain):
        raise ModelValidationError("domain elements not distinct")
    for c, e in model.constants.items():
        if e not in members:
            raise ModelValidationError(f"dangling constant '{c}' -> {e!r}")
    if set(model.rel_pos) != set(model.arities) or set(model.rel_neg) != set(model.arities):
        raise ModelValidationError("relation interpretations do not match declared arities")
    for rel, arity in model.arities.items():
        for part in (model.rel_pos[rel], model.rel_neg[rel]):
            for t in part:
                if len(t) != arity:
                    raise ModelValidationError(f"arity mismatch in relation '{rel}': {t!r}")
                if any(e not in members for e in t):
                    raise ModelValidationError(f"tuple outside domain in relation '{rel}': {t!r}")
    for pair in model.eq_neg:
        if len(pair) != 2 or pair[0] not in members or pair[1] not in members:
            raise ModelValidationError(f"eq_neg pair outside domain: {pair!r}")
        if (pair[1], pair[0]) not in model.eq_neg:
            raise ModelValidationError("eq_neg not symmetric")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

class Evaluator:
    """Compiles formulas against one model into closures over an assignment dict"""

    def __init__(self, model: TFModel):
        self.model = model
        self._compiled: Dict[Formula, Callable[[Assignment], TruthValue]] = {}

    def value(self, phi: Formula, env: Optional[Assignment] = None) -> TruthValue:
        env = dict(env or {})
        missing = free_vars(phi) - set(env)
        if missing:
            raise UnboundVariableError(sorted(missing)[0])
        return self.compile(phi)(env)

    def compile(self, phi: Formula) -> Callable[[Assignment], TruthValue]:
        fn = self._compiled.get(phi)
        if fn is None:
            fn = self._compile(phi)
            self._compiled[phi] = fn
        return fn

    def _term(self, t: Term) -> Callable[[Assignment], Element]:
        if isinstance(t, Const):
            try:
                value = self.model.constants[t.name]
            except KeyError:
                raise UnknownSymbolError(t.name) from None
            return lambda env: value
        name = t.name

        def lookup(env):
            try:
                return env[name]
            except KeyError:
                raise UnboundVariableError(name) from None
        return lookup

    def _compile(self, phi: Formula) -> Callable[[Assignment], TruthValue]:
        if isinstance(phi, Atom):
            if phi.rel not in self.model.arities:
                raise UnknownSymbolError(phi.rel)
            if self.model.arities[phi.rel] != len(phi.terms):
                raise ArityError(f"relation '{phi.rel}' has arity {self.model.arities[phi.rel]}")
            pos, neg = self.model.rel_pos[phi.rel], self.model.rel_neg[phi.rel]
            getters = [self._term(t) for t in phi.terms]
            if len(getters) == 2:
                g0, g1 = getters

                def binary_atom(env):
                    args = (g0(env), g1(env))
                    return _VALUE[args in pos][args in neg]
                return binary_atom

            def atom(env):
                args = tuple(g(env) for g in getters)
                return _VALUE[args in pos][args in neg]
            return atom
        if isinstance(phi, Eq):
            left, right = self._term(phi.left), self._term(phi.right)
            eq_neg = self.model.eq_neg

            def equality(env):
                a, b = left(env), right(env)
                return _VALUE[a == b][(a, b) in eq_neg]
            return equality
        if isinstance(phi, Bot):
            return lambda env: ZERO
        if isinstance(phi, Quantifier):
            return self._quantifier(phi)

        if isinstance(phi, (Neg, ClassNeg, Bang, Quest, Circ)):
            body = self.compile(phi.body)
            op = _UNARY[type(phi)]
            return lambda env: op(body(env))

        left, right = self.compile(phi.left), self.compile(phi.right)
        op2 = _BINARY[type(phi)]
        return lambda env: op2(left(env), right(env))

    def _quantifier(self, phi) -> Callable[[Assignment], TruthValue]:
        body = self.compile(phi.body)
        var = phi.var
        domain = self.model.domain
        universal = isinstance(phi, Forall)

        def quantify(env):
            saved = env.get(var, _MISSING)
            # forall: (all true, some false); exists: (some true, all false)
            hit_t, hit_f = universal, not universal
            try:
                for d in domain:
                    env[var] = d
                    t, f = body(env)
                    if universal:
                        if not t:
                            hit_t = False
                        if f:
                            hit_f = True
                        if not hit_t and hit_f:
                            break
                    else:
                        if t:
                            hit_t = True
                        if not f:
                            hit_f = False
                        if hit_t and not hit_f:
                            break
            finally:
                if saved is _MISSING:
                    env.pop(var, None)
                else:
                    env[var] = saved
            return _VALUE[hit_t][hit_f]
        return quantify


_MISSING = object()


def _bang(a: TruthValue) -> TruthValue:
    return truth.neg(truth.imp(a, ZERO))


def _quest(a: TruthValue) -> TruthValue:
    return truth.imp(truth.neg(a), ZERO)


# Sugar nodes apply their desugared primitive composition to the operand values
_UNARY: Dict[type, Callable[[TruthValue], TruthValue]] = {
    Neg: truth.neg,
    ClassNeg: lambda a: truth.imp(a, ZERO),
    Bang: _bang,
    Quest: _quest,
    Circ: lambda a: truth.iff(_bang(a), _quest(a)),
}

_BINARY: Dict[type, Callable[[TruthValue, TruthValue], TruthValue]] = {
    And: truth.conj,
    Or: truth.disj,
    Imp: truth.imp,
    Iff: truth.iff,
    StrongImp: lambda a, b: truth.conj(truth.imp(a, b), truth.imp(truth.neg(b), truth.neg(a))),
    StrongIff: lambda a, b: truth.conj(truth.iff(a, b), truth.iff(truth.neg(a), truth.neg(b))),
}


def evaluate(model: TFModel, phi: Formula, env: Optional[Assignment] = None) -> TruthValue:
    """One-shot evaluation of phi in model under env"""
    return Evaluator(model).value(phi, env)


def assignments(variables: Sequence[str], domain: Sequence[Element]) -> Iterator[Assignment]:
    variables = sorted(variables)
    for combo in itertools.product(domain, repeat=len(variables)):
        yield dict(zip(variables, combo))


def designated_everywhere(model: TFModel, phi: Formula, evaluator: Optional[Evaluator] = None) -> bool:
    """True when phi is designated under every assignment of its free variables"""
    ev = evaluator or Evaluator(model)
    fn = ev.compile(phi)
    return all(fn(env)[0] for env in assignments(list(free_vars(phi)), model.domain))


# ---------------------------------------------------------------------------
# Truth tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConnectiveSpec:
    name: str
    symbol: str
    arity: int
    build: Callable[..., Formula]


CONNECTIVES: Dict[str, ConnectiveSpec] = {
    spec.name: spec for spec in (
        ConnectiveSpec("neg", "~", 1, Neg),
        ConnectiveSpec("and", "&", 2, And),
        ConnectiveSpec("or", "|", 2, Or),
        ConnectiveSpec("imp", "->", 2, Imp),
        ConnectiveSpec("iff", "<->", 2, Iff),
        ConnectiveSpec("simp", "=>", 2, StrongImp),
        ConnectiveSpec("siff", "<=>", 2, StrongIff),
        ConnectiveSpec("not", "not", 1, ClassNeg),
        ConnectiveSpec("bang", "!", 1, Bang),
        ConnectiveSpec("quest", "?", 1, Quest),
        ConnectiveSpec("circ", "o", 1, Circ),
    )
}
_ALIASES = {spec.symbol: spec.name for spec in CONNECTIVES.values()}


def connective(name: str) -> ConnectiveSpec:
    key = _ALIASES.get(name, name).lower()
    if key not in CONNECTIVES:
        raise UnknownCheckError(
            f"unknown connective '{name}' (expected one of {', '.join(CONNECTIVES)})"
        )
    return CONNECTIVES[key]


@dataclass(frozen=True)
class TruthTable:
    connective: str
    symbol: str
    arity: int
    entries: Mapping[Tuple[TruthValue, ...], TruthValue]

    def lookup(self, *args: TruthValue) -> TruthValue:
        return self.entries[tuple(args)]

    def rows(self) -> List[List[str]]:
        if self.arity == 1:
            return [[v.name, self.entries[(v,)].name] for v in VALUES]
        return [[r.name] + [self.entries[(r, c)].name for c in VALUES] for r in VALUES]

    def render(self) -> str:
        """Aligned ASCII grid, rows and columns ordered 1 b n 0"""
        width = max(3, len(self.symbol))
        if self.arity == 1:
            header = f" {'phi':^{width}} | {self.symbol}"
            lines = [header, "-" * (width + 2) + "+" + "-" * (len(self.symbol) + 1)]
            for arg, out in self.rows():
                lines.append(f" {arg:^{width}} | {out}")
            return "\n".join(lines)
        header = f" {self.symbol:^{width}} | " + " ".join(v.name for v in VALUES)
        lines = [header, "-" * (width + 2) + "+" + "-" * (2 * len(VALUES))]
        for row in self.rows():
            lines.append(f" {row[0]:^{width}} | " + " ".join(row[1:]))
        return "\n".join(lines)

    def to_dict(self) -> Dict[str, Any]:
        return {"connective": self.connective, "symbol": self.symbol, "rows": self.rows()}


def valuation_model(values: Mapping[str, TruthValue], size: int = 1) -> TFModel:
    """Model whose zero-ary atoms carry the given values"""
    domain = element_names(size)
    return TFModel.build(
        domain,
        relations={
            p: (0, [()] if v.is_true else [], [()] if v.is_false else []) for p, v in values.items()
        },
    )


def truth_table(name: str) -> TruthTable:
    """Evaluate the desugared connective over fresh atoms forced to each value"""
    spec = connective(name)
    atoms = [Atom("p"), Atom("q")][:spec.arity]
    node = desugar(spec.build(*atoms))
    entries = {}
    for args in itertools.product(VALUES, repeat=spec.arity):
        model = valuation_model(dict(zip(("p", "q"), args)))
        entries[tuple(args)] = evaluate(model, node)
    return TruthTable(spec.name, spec.symbol, spec.arity, entries)


# ---------------------------------------------------------------------------
# Model enumeration and bounded search
# ---------------------------------------------------------------------------

def _symmetric_pairs(domain: Sequence[Element]) -> List[Tuple[Element, Element]]:
    """Unordered pairs i <= j used to build symmetric eq_neg"""
    return [(domain[i], domain[j]) for i in range(len(domain)) for j in range(i, len(domain))]


def eq_neg_patterns(domain: Sequence[Element]) -> Iterator[FrozenSet[Tuple[Element, Element]]]:
    pairs = _symmetric_pairs(domain)
    for mask in range(2 ** len(pairs)):
        chosen = set()
        for bit, (a, b) in enumerate(pairs):
            if mask >> bit & 1:
                chosen.add((a, b))
                chosen.add((b, a))
        yield frozenset(chosen)


def count_models(sig: Signature, max_size: int) -> int:
    total = 0
    for n in range(1, max_size + 1):
        per = 2 ** (n * (n + 1) // 2) * n ** len(sig.constants)
        for arity in sig.relations.values():
            per *= 4 ** (n ** arity)
        total += per
    return total


def relevant_signature(formulas: Iterable[Formula], sig: Optional[Signature] = None) -> Signature:
    """The relations and constants actually occurring in the formulas"""
    relations: Dict[str, int] = {}
    constants: Set[str] = set()
    for phi in formulas:
        relations.update(relations_of(phi))
        constants |= constants_of(phi)
    if sig is not None:
        for rel, arity in relations.items():
            if rel in sig.relations and sig.relations[rel] != arity:
                raise ArityError(f"relation '{rel}' used with arity {arity}, declared {sig.relations[rel]}")
    return Signature(relations, frozenset(constants))


def enumerate_models(sig: Signature, max_size: int, budget: int,
                     values: Sequence[TruthValue] = VALUES,
                     eq_filter: Optional[Callable[[Sequence[Element], FrozenSet], bool]] = None
                     ) -> Iterator[TFModel]:
    """Every labeled model with domain size <= max_size, in lexicographic order"""
    if max_size < 1:
        raise ModelValidationError("max_size must be at least 1")
    required = count_models(sig, max_size)
    if required > budget:
        raise BudgetExceededError(f"enumerating models up to size {max_size}", required, budget)
    rels = sorted(sig.relations.items())
    consts = sorted(sig.constants)
    for n in range(1, max_size + 1):
        domain = element_names(n)
        slots = [(rel, t) for rel, arity in rels for t in itertools.product(domain, repeat=arity)]
        for eq_neg in eq_neg_patterns(domain):
            if eq_filter is not None and not eq_filter(domain, eq_neg):
                continue
            for const_vals in itertools.product(domain, repeat=len(consts)):
                constants = dict(zip(consts, const_vals))
                for vals in itertools.product(values, repeat=len(slots)):
                    pos = {rel: set() for rel, _ in rels}
                    neg = {rel: set() for rel, _ in rels}
                    for (rel, t), v in zip(slots, vals):
                        if v.is_true:
                            pos[rel].add(t)
                        if v.is_false:
                            neg[rel].add(t)
                    yield TFModel(
                        domain=domain,
                        constants=constants,
                        arities=dict(rels),
                        rel_pos={r: frozenset(s) for r, s in pos.items()},
                        rel_neg={r: frozenset(s) for r, s in neg.items()},
                        eq_neg=eq_neg,
                    )


def random_model(sig: Signature, size: int, rng) -> TFModel:
    """Sample a model of the given size from a numpy Generator"""
    domain = element_names(size)
    constants = {c: domain[int(rng.integers(size))] for c in sorted(sig.constants)}
    pos: Dict[str, Set[Tuple]] = {}
    neg: Dict[str, Set[Tuple]] = {}
    for rel, arity in sorted(sig.relations.items()):
        pos[rel], neg[rel] = set(), set()
        for t in itertools.product(domain, repeat=arity):
            v = VALUES[int(rng.integers(4))]
            if v.is_true:
                pos[rel].add(t)
            if v.is_false:
                neg[rel].add(t)
    eq_neg = set()
    for a, b in _symmetric_pairs(domain):
        if rng.random() < 0.5:
            eq_neg.add((a, b))
            eq_neg.add((b, a))
    return TFModel(
        domain=domain,
        constants=constants,
        arities=dict(sig.relations),
        rel_pos={r: frozenset(s) for r, s in pos.items()},
        rel_neg={r: frozenset(s) for r, s in neg.items()},
        eq_neg=frozenset(eq_neg),
    )


def _require_sentences(formulas: Iterable[Formula]) -> None:
    for phi in formulas:
        fv = free_vars(phi)
        if fv:
            raise UnboundVariableError(sorted(fv)[0])


def consequence_bounded(premises: Sequence[Formula], conclusion: Formula, max_size: int,
                        sig: Optional[Signature] = None, budget: int = 2_000_000) -> Verdict:
    """Search for M with every premise designated and the conclusion not designated"""
    formulas = list(premises) + [conclusion]
    _require_sentences(formulas)
    relevant = relevant_signature(formulas, sig)
    checked = 0
    for model in enumerate_models(relevant, max_size, budget):
        checked += 1
        ev = Evaluator(model)
        if all(ev.compile(p)({})[0] for p in premises) and not ev.compile(conclusion)({})[0]:
            logger.debug(f"countermodel after {checked} models")
            return Verdict(False, checked, max_size, countermodel=model.to_dict())
    return Verdict(True, checked, max_size)


def validity_bounded(phi: Formula, max_size: int, sig: Optional[Signature] = None,
                     budget: int = 2_000_000) -> Verdict:
    return consequence_bounded([], phi, max_size, sig, budget)


def formula_profile(phi: Formula, max_size: int, sig: Optional[Signature] = None,
                    budget: int = 2_000_000) -> FrozenSet[TruthValue]:
    """Every value phi takes over enumerated models and assignments"""
    relevant = relevant_signature([phi], sig)
    seen: Set[TruthValue] = set()
    variables = list(free_vars(phi))
    for model in enumerate_models(relevant, max_size, budget):
        fn = Evaluator(model).compile(phi)
        for env in assignments(variables, model.domain):
            seen.add(fn(env))
        if len(seen) == 4:
            break
    return frozenset(seen)


def classify_profile(values: FrozenSet[TruthValue]) -> Dict[str, bool]:
    return {
        "classical": values <= {ONE, ZERO},
        "consistent": BOTH not in values,
        "complete": NEITHER not in values,
    }
