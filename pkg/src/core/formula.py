"""
Formula - AST, substitution, desugaring and rendering for BS4 formulas
Function-free first-order vocabularies only
"""
import re
from dataclasses import dataclass, field
from typing import ClassVar, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Set, Tuple, Union

from src.core.errors import SignatureError

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*'*\Z")
KEYWORDS = frozenset({"forall", "exists", "not", "in", "bot", "o"})


# ---------------------------------------------------------------------------
# Terms and signatures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self) -> str:
        return self.name


Term = Union[Var, Const]


@dataclass(frozen=True)
class Signature:
    """Relation arities and constant names"""
    relations: Mapping[str, int] = field(default_factory=dict)
    constants: FrozenSet[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "relations", dict(self.relations))
        object.__setattr__(self, "constants", frozenset(self.constants))
        for name, arity in self.relations.items():
            if not IDENTIFIER.match(name) or name in KEYWORDS and name != "in":
                raise SignatureError(f"invalid relation name '{name}'")
            if not isinstance(arity, int) or arity < 0:
                raise SignatureError(f"invalid arity {arity!r} for relation '{name}'")
        for name in self.constants:
            if not IDENTIFIER.match(name) or name in KEYWORDS:
                raise SignatureError(f"invalid constant name '{name}'")
        overlap = set(self.relations) & self.constants
        if overlap:
            raise SignatureError(f"names used as both relation and constant: {sorted(overlap)}")

    def __hash__(self):
        return hash((tuple(sorted(self.relations.items())), self.constants))

    def with_constants(self, names: Iterable[str]) -> "Signature":
        return Signature(self.relations, self.constants | frozenset(names))

    def with_relations(self, extra: Mapping[str, int]) -> "Signature":
        merged = dict(self.relations)
        merged.update(extra)
        return Signature(merged, self.constants)

    def to_dict(self) -> Dict:
        return {
            "relations": dict(sorted(self.relations.items())),
            "constants": sorted(self.constants),
        }


SET_SIGNATURE = Signature({"in": 2})


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------

class Formula:
    """Base class of all formula nodes"""
    __slots__ = ()

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Atom(Formula):
    rel: str
    terms: Tuple[Term, ...] = ()


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Unary(Formula):
    body: Formula
    symbol: ClassVar[str] = ""


@dataclass(frozen=True)
class Binary(Formula):
    left: Formula
    right: Formula
    symbol: ClassVar[str] = ""


@dataclass(frozen=True)
class Quantifier(Formula):
    var: str
    body: Formula
    keyword: ClassVar[str] = ""


class Neg(Unary):
    symbol = "~"


class ClassNeg(Unary):
    symbol = "not"


class Bang(Unary):
    symbol = "!"


class Quest(Unary):
    symbol = "?"


class Circ(Unary):
    symbol = "o"


class And(Binary):
    symbol = "&"


class Or(Binary):
    symbol = "|"


class Imp(Binary):
    symbol = "->"


class Iff(Binary):
    symbol = "<->"


class StrongImp(Binary):
    symbol = "=>"


class StrongIff(Binary):
    symbol = "<=>"


class Forall(Quantifier):
    keyword = "forall"


class Exists(Quantifier):
    keyword = "exists"


BOT = Bot()

PRIMITIVE_TYPES = (Atom, Eq, Bot, Neg, And, Or, Imp, Iff, Forall, Exists)
SUGAR_TYPES = (StrongImp, StrongIff, ClassNeg, Bang, Quest, Circ)

# Precedence by increasing binding; right-associative connectives are listed separately
PRECEDENCE: Dict[type, int] = {
    StrongIff: 1, StrongImp: 2, Iff: 3, Imp: 4, Or: 5, And: 6,
}
RIGHT_ASSOC = (StrongImp, Imp)
PREFIX_LEVEL = 7


# ---------------------------------------------------------------------------
# Structural operations
# ---------------------------------------------------------------------------

def term_vars(term: Term) -> Set[str]:
    return {term.name} if isinstance(term, Var) else set()


def free_vars(phi: Formula) -> FrozenSet[str]:
    """Standard free-variable set"""
    if isinstance(phi, Atom):
        out: Set[str] = set()
        for t in phi.terms:
            out |= term_vars(t)
        return frozenset(out)
    if isinstance(phi, Eq):
        return frozenset(term_vars(phi.left) | term_vars(phi.right))
    if isinstance(phi, Bot):
        return frozenset()
    if isinstance(phi, Unary):
        return free_vars(phi.body)
    if isinstance(phi, Binary):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, Quantifier):
        return free_vars(phi.body) - {phi.var}
    raise TypeError(f"not a formula: {phi!r}")


def all_vars(phi: Formula) -> FrozenSet[str]:
    """Free and bound variable names"""
    if isinstance(phi, Quantifier):
        return all_vars(phi.body) | {phi.var}
    if isinstance(phi, Unary):
        return all_vars(phi.body)
    if isinstance(phi, Binary):
        return all_vars(phi.left) | all_vars(phi.right)
    return free_vars(phi)


def is_sentence(phi: Formula) -> bool:
    return not free_vars(phi)


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """Append primes until the name is unused"""
    avoid = set(avoid)
    name = base + "'"
    while name in avoid:
        name += "'"
    return name


def _subst_term(term: Term, x: str, t: Term) -> Term:
    if isinstance(term, Var) and term.name == x:
        return t
    return term


def substitute(phi: Formula, x: str, t: Term) -> Formula:
    """Capture-avoiding replacement of the free occurrences of x by t"""
    if isinstance(phi, Atom):
        return Atom(phi.rel, tuple(_subst_term(s, x, t) for s in phi.terms))
    if isinstance(phi, Eq):
        return Eq(_subst_term(phi.left, x, t), _subst_term(phi.right, x, t))
    if isinstance(phi, Bot):
        return phi
    if isinstance(phi, Unary):
        return type(phi)(substitute(phi.body, x, t))
    if isinstance(phi, Binary):
        return type(phi)(substitute(phi.left, x, t), substitute(phi.right, x, t))
    if isinstance(phi, Quantifier):
        if phi.var == x or x not in free_vars(phi.body):
            return phi
        if isinstance(t, Var) and t.name == phi.var:
            renamed = fresh_name(phi.var, all_vars(phi.body) | {x, t.name})
            body = substitute(phi.body, phi.var, Var(renamed))
            return type(phi)(renamed, substitute(body, x, t))
        return type(phi)(phi.var, substitute(phi.body, x, t))
    raise TypeError(f"not a formula: {phi!r}")


def is_free_for(t: Term, x: str, phi: Formula) -> bool:
    """True when substituting t for x in phi captures nothing"""
    if not isinstance(t, Var):
        return True
    if isinstance(phi, (Atom, Eq, Bot)):
        return True
    if isinstance(phi, Unary):
        return is_free_for(t, x, phi.body)
    if isinstance(phi, Binary):
        return is_free_for(t, x, phi.left) and is_free_for(t, x, phi.right)
    if isinstance(phi, Quantifier):
        if phi.var == x or x not in free_vars(phi.body):
            return True
        if phi.var == t.name:
            return False
        return is_free_for(t, x, phi.body)
    raise TypeError(f"not a formula: {phi!r}")


def desugar(phi: Formula) -> Formula:
    """Rewrite into Atom, Eq, Bot, Neg, And, Or, Imp, Iff, Forall, Exists only"""
    if isinstance(phi, (Atom, Eq, Bot)):
        return phi
    if isinstance(phi, StrongImp):
        a, b = desugar(phi.left), desugar(phi.right)
        return And(Imp(a, b), Imp(Neg(b), Neg(a)))
    if isinstance(phi, StrongIff):
        a, b = desugar(phi.left), desugar(phi.right)
        return And(Iff(a, b), Iff(Neg(a), Neg(b)))
    if isinstance(phi, ClassNeg):
        return Imp(desugar(phi.body), BOT)
    if isinstance(phi, Bang):
        return Neg(Imp(desugar(phi.body), BOT))
    if isinstance(phi, Quest):
        return Imp(Neg(desugar(phi.body)), BOT)
    if isinstance(phi, Circ):
        return desugar(Iff(Bang(phi.body), Quest(phi.body)))
    if isinstance(phi, Unary):
        return type(phi)(desugar(phi.body))
    if isinstance(phi, Binary):
        return type(phi)(desugar(phi.left), desugar(phi.right))
    if isinstance(phi, Quantifier):
        return type(phi)(phi.var, desugar(phi.body))
    raise TypeError(f"not a formula: {phi!r}")


def is_primitive(phi: Formula) -> bool:
    return all(isinstance(sub, PRIMITIVE_TYPES) for sub in subformulas(phi))


def subformulas(phi: Formula) -> Iterator[Formula]:
    """Pre-order walk"""
    yield phi
    if isinstance(phi, (Unary, Quantifier)):
        yield from subformulas(phi.body)
    elif isinstance(phi, Binary):
        yield from subformulas(phi.left)
        yield from subformulas(phi.right)


def depth(phi: Formula) -> int:
    if isinstance(phi, (Unary, Quantifier)):
        return 1 + depth(phi.body)
    if isinstance(phi, Binary):
        return 1 + max(depth(phi.left), depth(phi.right))
    return 0


def relations_of(phi: Formula) -> Dict[str, int]:
    return {sub.rel: len(sub.terms) for sub in subformulas(phi) if isinstance(sub, Atom)}


def constants_of(phi: Formula) -> Set[str]:
    out: Set[str] = set()
    for sub in subformulas(phi):
        terms: Tuple[Term, ...] = ()
        if isinstance(sub, Atom):
            terms = sub.terms
        elif isinstance(sub, Eq):
            terms = (sub.left, sub.right)
        out |= {s.name for s in terms if isinstance(s, Const)}
    return out


def is_arrow_bot_free(phi: Formula) -> bool:
    """Membership in the fragment without implication and falsum"""
    banned = (Imp, Iff, Bot, StrongImp, StrongIff, ClassNeg, Bang, Quest, Circ)
    return not any(isinstance(sub, banned) for sub in subformulas(phi))


def conjunction(parts: List[Formula]) -> Formula:
    """Left-nested conjunction; the empty conjunction is ~bot"""
    if not parts:
        return Neg(BOT)
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _render_term(t: Term) -> str:
    return t.name


def _render_operand(phi: Formula, parent: type, side: str) -> str:
    text = render(phi)
    if isinstance(phi, Quantifier):
        return f"({text})"
    if isinstance(phi, Binary):
        mine, theirs = PRECEDENCE[type(phi)], PRECEDENCE[parent]
        if mine < theirs:
            return f"({text})"
        if mine == theirs:
            right_assoc = issubclass(parent, RIGHT_ASSOC)
            if (side == "left" and right_assoc) or (side == "right" and not right_assoc):
                return f"({text})"
    return text


def render(phi: Formula) -> str:
    """Canonical ASCII text; parses back to the same AST"""
    if isinstance(phi, Atom):
        if phi.rel == "in" and len(phi.terms) == 2:
            return f"{_render_term(phi.terms[0])} in {_render_term(phi.terms[1])}"
        return f"{phi.rel}({','.join(_render_term(t) for t in phi.terms)})"
    if isinstance(phi, Eq):
        return f"{_render_term(phi.left)} = {_render_term(phi.right)}"
    if isinstance(phi, Bot):
        return "bot"
    if isinstance(phi, Unary):
        inner = render(phi.body)
        if isinstance(phi.body, (Binary, Quantifier)):
            inner = f"({inner})"
        sep = " " if phi.symbol.isalpha() else ""
        return f"{phi.symbol}{sep}{inner}"
    if isinstance(phi, Binary):
        left = _render_operand(phi.left, type(phi), "left")
        right = _render_operand(phi.right, type(phi), "right")
        return f"{left} {phi.symbol} {right}"
    if isinstance(phi, Quantifier):
        return f"{phi.keyword} {phi.var}. {render(phi.body)}"
    raise TypeError(f"not a formula: {phi!r}")
