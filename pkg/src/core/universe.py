"""
Universe - interned non-classical sets (positive extension, ?-extension),
the finite levels W_0..W_3, set relations, comprehension and constructors
"""
import itertools
import logging
from functools import lru_cache
from threading import Lock
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import parsy
from parsy import generate, regex, string

from src.core.errors import BudgetExceededError, UniverseError
from src.core.formula import SET_SIGNATURE, Formula, free_vars
from src.core.formula_parser import parse
from src.core.semantics import Evaluator, TFModel
from src.core.truth import BOTH, NEITHER, ONE, ZERO, TruthValue, combine

logger = logging.getLogger(__name__)

MAX_LEVEL = 3


class NCSet:
    """A pair (pos, quest) of finite sets of NCSets; identity is structural"""
    __slots__ = ("id", "pos", "quest", "__weakref__")

    def __init__(self, set_id: int, pos: FrozenSet["NCSet"], quest: FrozenSet["NCSet"]):
        self.id = set_id
        self.pos = pos
        self.quest = quest

    def __hash__(self):
        return self.id

    def __repr__(self):
        return f"NCSet#{self.id}{render_ncset(self)}"

    def __str__(self):
        return render_ncset(self)


class Universe:
    """Append-only interning store (singleton)"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        if self._initialized:
            return
        self._initialized = True
        self.lock = Lock()
        self._by_key: Dict[Tuple[FrozenSet[int], FrozenSet[int]], NCSet] = {}
        self._sets: List[NCSet] = []
        self.rank_memo: Dict[int, int] = {}
        self.key_memo: Dict[int, tuple] = {}
        self.hcl_memo: Dict[int, bool] = {}
        self.text_memo: Dict[int, str] = {}

    def make(self, pos: Iterable[NCSet], quest: Iterable[NCSet]) -> NCSet:
        """Intern (pos, quest); equal pairs always return the same object"""
        pos, quest = frozenset(pos), frozenset(quest)
        key = (frozenset(m.id for m in pos), frozenset(m.id for m in quest))
        found = self._by_key.get(key)
        if found is not None:
            return found
        with self.lock:
            found = self._by_key.get(key)
            if found is None:
                found = NCSet(len(self._sets), pos, quest)
                self._sets.append(found)
                self._by_key[key] = found
            return found

    def get(self, set_id: int) -> NCSet:
        return self._sets[set_id]

    def __len__(self):
        return len(self._sets)


def universe() -> Universe:
    return Universe()


def make(pos: Iterable[NCSet], quest: Iterable[NCSet]) -> NCSet:
    return universe().make(pos, quest)


def empty() -> NCSet:
    return make((), ())


# ---------------------------------------------------------------------------
# Relations
# ---------------------------------------------------------------------------

def mem_true(x: NCSet, y: NCSet) -> bool:
    return x in y.pos


def mem_false(x: NCSet, y: NCSet) -> bool:
    return x not in y.quest


def membership_value(x: NCSet, y: NCSet) -> TruthValue:
    return combine(x in y.pos, x not in y.quest)


def eq_true(x: NCSet, y: NCSet) -> bool:
    return x is y


def eq_false(x: NCSet, y: NCSet) -> bool:
    return not x.pos <= y.quest or not y.pos <= x.quest


def equality_value(x: NCSet, y: NCSet) -> TruthValue:
    return combine(x is y, eq_false(x, y))


def subset_value(x: NCSet, y: NCSet) -> TruthValue:
    """Value of forall z (z in x => z in y)"""
    return combine(x.pos <= y.pos and x.quest <= y.quest, not x.pos <= y.quest)


# ---------------------------------------------------------------------------
# Extensions and classicality
# ---------------------------------------------------------------------------

def bang_ext(x: NCSet) -> NCSet:
    return make(x.pos, x.pos)


def quest_ext(x: NCSet) -> NCSet:
    return make(x.quest, x.quest)


def realm(x: NCSet) -> NCSet:
    members = x.pos | x.quest
    return make(members, members)


def is_classical(x: NCSet) -> bool:
    return x.pos == x.quest


def is_consistent(x: NCSet) -> bool:
    return x.pos <= x.quest


def is_complete(x: NCSet) -> bool:
    return x.quest <= x.pos


def rank(x: NCSet) -> int:
    """0 for the empty pair, else one more than the largest member rank"""
    memo = universe().rank_memo
    found = memo.get(x.id)
    if found is None:
        members = x.pos | x.quest
        found = 1 + max(rank(m) for m in members) if members else 0
        memo[x.id] = found
    return found


def canonical_key(x: NCSet) -> tuple:
    """Id-independent total order: rank, then sorted member keys"""
    memo = universe().key_memo
    found = memo.get(x.id)
    if found is None:
        found = (
            rank(x),
            tuple(sorted(canonical_key(m) for m in x.pos)),
            tuple(sorted(canonical_key(m) for m in x.quest)),
        )
        memo[x.id] = found
    return found


def sort_sets(sets: Iterable[NCSet]) -> List[NCSet]:
    return sorted(set(sets), key=canonical_key)


# ---------------------------------------------------------------------------
# Literal syntax
# ---------------------------------------------------------------------------

def render_ncset(x: NCSet) -> str:
    """Canonical literal <[m1,...],[k1,...]>"""
    memo = universe().text_memo
    found = memo.get(x.id)
    if found is None:
        pos = ",".join(render_ncset(m) for m in sort_sets(x.pos))
        quest = ",".join(render_ncset(m) for m in sort_sets(x.quest))
        found = f"<[{pos}],[{quest}]>"
        memo[x.id] = found
    return found


_ws = regex(r"\s*")


def _tok(s: str):
    return string(s) << _ws


@generate
def _ncset_literal():
    yield _tok("<")
    yield _tok("[")
    pos = yield _ncset_literal.sep_by(_tok(","))
    yield _tok("]")
    yield _tok(",")
    yield _tok("[")
    quest = yield _ncset_literal.sep_by(_tok(","))
    yield _tok("]")
    yield _tok(">")
    return make(pos, quest)


def parse_ncset(text: str) -> NCSet:
    try:
        return (_ws >> _ncset_literal << parsy.eof).parse(text)
    except parsy.ParseError as e:
        raise UniverseError(f"bad set literal at offset {e.index}: expected {', '.join(sorted(e.expected))}") from None


# ---------------------------------------------------------------------------
# Levels and fragments
# ---------------------------------------------------------------------------

def _subsets(items: Sequence[NCSet]) -> Iterator[Tuple[NCSet, ...]]:
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


@lru_cache(maxsize=None)
def _level(n: int) -> Tuple[NCSet, ...]:
    if n == 0:
        return ()
    below = _level(n - 1)
    subsets = list(_subsets(below))
    return tuple(sort_sets(make(a, b) for a in subsets for b in subsets))


def enumerate_level(n: int, max_level: int = MAX_LEVEL) -> List[NCSet]:
    """All elements of W_n in canonical order"""
    if n < 0:
        raise UniverseError(f"level must be non-negative, got {n}")
    if n > max_level:
        # lower bound: the first level past the cap has (2^|W_max|)^2 elements
        top = len(_level(max_level))
        raise BudgetExceededError(f"enumerating W_{n}", 2 ** (2 * top), top)
    return list(_level(n))


def closure(sets: Iterable[NCSet]) -> List[NCSet]:
    """Smallest member-closed collection containing the sets"""
    seen = set()
    stack = list(sets)
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        stack.extend(x.pos | x.quest)
    return sort_sets(seen)


def is_member_closed(sets: Iterable[NCSet]) -> bool:
    pool = set(sets)
    return all((x.pos | x.quest) <= pool for x in pool)


class Fragment:
    """A member-closed finite collection viewed as a T/F-model over {in: 2}"""

    def __init__(self, sets: Iterable[NCSet]):
        self.sets: Tuple[NCSet, ...] = tuple(sort_sets(sets))
        pool = set(self.sets)
        for x in self.sets:
            if not (x.pos | x.quest) <= pool:
                raise UniverseError(f"fragment not member-closed: members of {render_ncset(x)} missing")
        self.index: Dict[NCSet, int] = {x: i for i, x in enumerate(self.sets)}
        self._model: Optional[TFModel] = None
        self._evaluator: Optional[Evaluator] = None
        self._pos_masks: Optional[List[int]] = None
        self._neg_masks: Optional[List[int]] = None

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __contains__(self, x):
        return x in self.index

    @property
    def model(self) -> TFModel:
        if self._model is None:
            pos = frozenset((m, y) for y in self.sets for m in y.pos)
            neg = frozenset((z, y) for y in self.sets for z in self.sets if z not in y.quest)
            eq_neg = frozenset((x, y) for x in self.sets for y in self.sets if eq_false(x, y))
            self._model = TFModel(
                domain=self.sets, arities={"in": 2}, rel_pos={"in": pos}, rel_neg={"in": neg}, eq_neg=eq_neg,
            )
        return self._model

    @property
    def evaluator(self) -> Evaluator:
        if self._evaluator is None:
            self._evaluator = Evaluator(self.model)
        return self._evaluator

    def value(self, phi: Formula, env: Optional[Mapping[str, NCSet]] = None) -> TruthValue:
        env = dict(env or {})
        for name, x in env.items():
            if x not in self.index:
                raise UniverseError(f"parameter '{name}' = {render_ncset(x)} is outside the fragment")
        return self.evaluator.value(phi, env)

    def _build_masks(self):
        pos_masks, neg_masks = [], []
        for y in self.sets:
            p = n = 0
            for i, z in enumerate(self.sets):
                if z in y.pos:
                    p |= 1 << i
                if z not in y.quest:
                    n |= 1 << i
            pos_masks.append(p)
            neg_masks.append(n)
        self._pos_masks, self._neg_masks = pos_masks, neg_masks

    @property
    def pos_masks(self) -> List[int]:
        """Bit i of entry j: sets[i] in+ sets[j]"""
        if self._pos_masks is None:
            self._build_masks()
        return self._pos_masks

    @property
    def neg_masks(self) -> List[int]:
        """Bit i of entry j: sets[i] in- sets[j]"""
        if self._neg_masks is None:
            self._build_masks()
        return self._neg_masks


_fragment_cache: Dict[FrozenSet[NCSet], Fragment] = {}


def fragment_of(sets: Iterable[NCSet]) -> Fragment:
    """Cached Fragment over the member-closure of sets"""
    members = frozenset(closure(sets))
    found = _fragment_cache.get(members)
    if found is None:
        found = Fragment(members)
        if len(_fragment_cache) > 4096:
            _fragment_cache.clear()
        _fragment_cache[members] = found
    return found


def level_fragment(n: int) -> Fragment:
    return fragment_of(enumerate_level(n))


def as_tf_model(fragment: Sequence[NCSet]) -> TFModel:
    """T/F-model over {in: 2} for a member-closed collection"""
    return Fragment(fragment).model


def _as_fragment(fragment) -> Fragment:
    return fragment if isinstance(fragment, Fragment) else Fragment(fragment)


# ---------------------------------------------------------------------------
# Comprehension and constructors
# ---------------------------------------------------------------------------

def comprehend(u: NCSet, phi: Formula, var: str, env: Optional[Mapping[str, NCSet]] = None,
               fragment=None) -> NCSet:
    """(c, d) with c = {z in u.pos : phi(z) true}, d = {z in u.quest : phi(z) not false}"""
    env = dict(env or {})
    unexpected = free_vars(phi) - set(env) - {var}
    if unexpected:
        raise UniverseError(f"free-variable mismatch: {sorted(unexpected)} not bound")
    frag = _as_fragment(fragment) if fragment is not None else fragment_of([u, *env.values()])
    missing = [z for z in (u.pos | u.quest) if z not in frag]
    if missing:
        raise UniverseError("fragment does not contain the members of u")
    fn = frag.evaluator.compile(phi)
    for name, x in env.items():
        if x not in frag:
            raise UniverseError(f"parameter '{name}' is outside the fragment")

    def value_at(z: NCSet) -> TruthValue:
        env[var] = z
        return fn(env)

    c = [z for z in u.pos if value_at(z).is_true]
    d = [z for z in u.quest if not value_at(z).is_false]
    return make(c, d)


def classical_enum_set(members: Iterable[NCSet]) -> NCSet:
    members = frozenset(members)
    return make(members, members)


def classical_singleton(u: NCSet) -> NCSet:
    return classical_enum_set([u])


def classical_pair(u: NCSet, v: NCSet) -> NCSet:
    return classical_enum_set([u, v])


def union_set(u: NCSet) -> NCSet:
    pos = frozenset().union(*(z.pos for z in u.pos))
    quest = frozenset().union(*(z.quest for z in u.quest))
    return make(pos, quest)


def powerset_bang(u: NCSet) -> NCSet:
    """Classical set of every x with x.pos <= u.pos and x.quest <= u.quest"""
    pos_parts = list(_subsets(sort_sets(u.pos)))
    quest_parts = list(_subsets(sort_sets(u.quest)))
    return classical_enum_set(make(a, b) for a in pos_parts for b in quest_parts)


def tower(n: int) -> NCSet:
    """Iterated classical singleton of the empty set; rank n"""
    x = empty()
    for _ in range(n):
        x = classical_singleton(x)
    return x


# ---------------------------------------------------------------------------
# Anti-classicality construction
# ---------------------------------------------------------------------------

def inconsistent_witness() -> Tuple[NCSet, NCSet]:
    """(a, b) with a in b both true and false"""
    return empty(), make([empty()], [])


def incomplete_witness() -> Tuple[NCSet, NCSet]:
    """(c, d) with c in d neither true nor false"""
    return empty(), make([], [empty()])


def _check_witness(witness: Tuple[NCSet, NCSet], expected: TruthValue, label: str):
    a, b = witness
    if membership_value(a, b) != expected:
        raise UniverseError(
            f"{label} witness fails: membership value is {membership_value(a, b).name}, expected {expected.name}"
        )


_ACLA_CORE = "z in i"
_ACLA_B = "(z in du & wa in wb)"
_ACLA_N = "(z in dv & wc in wd)"


def acla_construct(u: NCSet, v: NCSet, witness_b: Optional[Tuple[NCSet, NCSet]] = None,
                   witness_n: Optional[Tuple[NCSet, NCSet]] = None, fragment=None) -> NCSet:
    """x with bang_ext(x) = u and quest_ext(x) = v, built by comprehension

    Without witness_b only u <= v is reachable; without witness_n only v <= u.
    """
    if not (is_classical(u) and is_classical(v)):
        raise UniverseError("acla_construct needs classical u and v")
    only_u, only_v = u.pos - v.pos, v.pos - u.pos
    env: Dict[str, NCSet] = {
        "i": classical_enum_set(u.pos & v.pos),
        "du": classical_enum_set(only_u),
        "dv": classical_enum_set(only_v),
    }
    disjuncts = [_ACLA_CORE]
    if witness_b is not None:
        _check_witness(witness_b, BOTH, "inconsistency")
        env["wa"], env["wb"] = witness_b
        disjuncts.append(_ACLA_B)
    elif only_u:
        raise UniverseError("u is not a subset of v; an inconsistent witness is required")
    if witness_n is not None:
        _check_witness(witness_n, NEITHER, "incompleteness")
        env["wc"], env["wd"] = witness_n
        disjuncts.append(_ACLA_N)
    elif only_v:
        raise UniverseError("v is not a subset of u; an incomplete witness is required")
    phi = parse(" | ".join(disjuncts), SET_SIGNATURE)
    r = classical_enum_set(u.pos | v.pos)
    frag = _as_fragment(fragment) if fragment is not None else fragment_of([r, *env.values()])
    x = comprehend(r, phi, "z", env, frag)
    logger.debug(f"acla: {render_ncset(u)} / {render_ncset(v)} -> {render_ncset(x)}")
    return x


# ---------------------------------------------------------------------------
# Truth values as sets
# ---------------------------------------------------------------------------

def omega_member(value: TruthValue) -> NCSet:
    """{empty : phi} for a formula with the given value"""
    e = empty()
    return make([e] if value.is_true else [], [e] if not value.is_false else [])


def omega_set() -> NCSet:
    return powerset_bang(classical_singleton(empty()))


def omega_name(x: NCSet) -> Optional[str]:
    for v in (ONE, BOTH, NEITHER, ZERO):
        if omega_member(v) is x:
            return v.name
    return None


def truth_value_of(phi: Formula, fragment, env: Optional[Mapping[str, NCSet]] = None) -> NCSet:
    """The member of omega_set() naming phi's value over the fragment"""
    return omega_member(_as_fragment(fragment).value(phi, env))


# ---------------------------------------------------------------------------
# Unboundedness at finite ranks
# ---------------------------------------------------------------------------

def unbounded_subset_witnesses(u: NCSet, max_rank: int = 3) -> List[Tuple[int, NCSet]]:
    """For each n <= max_rank an x of rank n+1 with x <= u not false"""
    return [(n, make([], [tower(n)])) for n in range(max_rank + 1)]


def unbounded_equality_witnesses(u: NCSet, max_rank: int = 3) -> List[Tuple[int, NCSet]]:
    """For each n <= max_rank a y of rank > n with y = u not false"""
    return [(n, make([], u.pos | {tower(n)})) for n in range(max_rank + 1)]
