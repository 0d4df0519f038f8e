"""
Formula generators - seeded random formulas, layered sentence batteries
and one-hole contexts for substitution checks
"""
import itertools
from typing import Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from src.core.formula import (
    BOT, And, Atom, Bang, Circ, ClassNeg, Const, Eq, Exists, Forall, Formula, Iff, Imp, Neg, Or,
    Quest, Signature, StrongIff, StrongImp, Term, Unary, Binary, Quantifier, Var,
)

PRIMITIVE_UNARY = (Neg,)
PRIMITIVE_BINARY = (And, Or, Imp, Iff)
SUGAR_UNARY = (ClassNeg, Bang, Quest, Circ)
SUGAR_BINARY = (StrongImp, StrongIff)

HOLE = Atom("__hole__")


def _pick(rng, items: Sequence):
    return items[int(rng.integers(len(items)))]


def random_term(rng, sig: Signature, variables: Sequence[str]) -> Term:
    pool: List[Term] = [Var(v) for v in variables] + [Const(c) for c in sorted(sig.constants)]
    return _pick(rng, pool)


def _random_atom(rng, sig: Signature, variables: Sequence[str]) -> Optional[Formula]:
    pool_terms = list(variables) + sorted(sig.constants)
    choices = []
    for rel, arity in sorted(sig.relations.items()):
        if arity == 0 or pool_terms:
            choices.append((rel, arity))
    roll = rng.random()
    if pool_terms and roll < 0.15:
        return Eq(random_term(rng, sig, variables), random_term(rng, sig, variables))
    if roll < 0.2 or not choices:
        return BOT if roll < 0.2 else None
    rel, arity = _pick(rng, choices)
    return Atom(rel, tuple(random_term(rng, sig, variables) for _ in range(arity)))


def random_formula(rng, sig: Signature, max_depth: int, variables: Sequence[str] = ("x", "y"),
                   sugar: bool = True, closed: bool = False, _bound: Tuple[str, ...] = ()) -> Formula:
    """Random formula of depth <= max_depth; closed=True only uses bound variables"""
    in_scope = _bound if closed else tuple(dict.fromkeys(tuple(variables) + _bound))
    if max_depth <= 0 or rng.random() < 0.25:
        atom = _random_atom(rng, sig, in_scope)
        if atom is not None:
            return atom
        if max_depth <= 0:
            return BOT
    unary = PRIMITIVE_UNARY + (SUGAR_UNARY if sugar else ())
    binary = PRIMITIVE_BINARY + (SUGAR_BINARY if sugar else ())
    roll = rng.random()
    if roll < 0.25:
        return _pick(rng, unary)(random_formula(rng, sig, max_depth - 1, variables, sugar, closed, _bound))
    if roll < 0.45:
        var = _pick(rng, list(variables))
        body = random_formula(rng, sig, max_depth - 1, variables, sugar, closed, _bound + (var,))
        return _pick(rng, (Forall, Exists))(var, body)
    left = random_formula(rng, sig, max_depth - 1, variables, sugar, closed, _bound)
    right = random_formula(rng, sig, max_depth - 1, variables, sugar, closed, _bound)
    return _pick(rng, binary)(left, right)


def closed_atoms(sig: Signature, bound: Sequence[str]) -> List[Formula]:
    """All atoms whose terms are bound variables or constants"""
    names: List[Term] = [Var(v) for v in bound] + [Const(c) for c in sorted(sig.constants)]
    out: List[Formula] = [BOT]
    for rel, arity in sorted(sig.relations.items()):
        out.extend(Atom(rel, combo) for combo in _products(names, arity))
    out.extend(Eq(a, b) for a in names for b in names)
    return out


def _products(names: Sequence[Term], arity: int) -> Iterator[Tuple[Term, ...]]:
    if arity == 0:
        yield ()
        return
    for head in names:
        for rest in _products(names, arity - 1):
            yield (head,) + rest


def _interleave(*streams: Iterable[Formula]) -> Iterator[Formula]:
    """Round-robin over the streams until all are exhausted"""
    iters = [iter(s) for s in streams]
    while iters:
        for it in list(iters):
            try:
                yield next(it)
            except StopIteration:
                iters.remove(it)


def formula_layers(sig: Signature, max_depth: int, width: int, sugar: bool = True,
                   variables: Sequence[str] = ("x", "y")) -> List[List[Formula]]:
    """Sentences of exact depth 0..max_depth, built bottom-up

    Scope k admits the first k variables free. Layer d of scope k applies every
    connective to layer d - 1 formulas of the scope, and binds the next variable
    over layer d - 1 of scope k + 1. Each scope keeps the first `width` new
    formulas of a layer, in a fixed round-robin order over the three shapes, so the
    result is deterministic and free of duplicates. Returns the layers of scope 0.
    """
    unary = PRIMITIVE_UNARY + (SUGAR_UNARY if sugar else ())
    binary = PRIMITIVE_BINARY + (SUGAR_BINARY if sugar else ())
    scopes = [tuple(variables[:k]) for k in range(len(variables) + 1)]
    seen: Set[Formula] = set()
    pools: List[List[List[Formula]]] = []

    def keep(candidates: Iterable[Formula]) -> List[Formula]:
        out: List[Formula] = []
        for phi in candidates:
            if len(out) >= width:
                break
            if phi not in seen:
                seen.add(phi)
                out.append(phi)
        return out

    def visible(d: int, k: int) -> List[Formula]:
        return [phi for j in range(k + 1) for phi in pools[d][j]]

    pools.append([keep(closed_atoms(sig, scope)) for scope in scopes])
    for d in range(1, max_depth + 1):
        layer: List[List[Formula]] = []
        for k in range(len(scopes)):
            inner = visible(d - 1, k)
            lower = [phi for e in range(d) for phi in visible(e, k)]
            streams = [
                (op(a) for a in inner for op in unary),
                (op(a, b) for a in inner for b in lower for op in binary),
                (op(b, a) for a in inner for b in lower for op in binary),
            ]
            if k + 1 < len(scopes):
                var = scopes[k + 1][-1]
                streams.append((q(var, a) for a in visible(d - 1, k + 1) for q in (Forall, Exists)))
            layer.append(keep(_interleave(*streams)))
        pools.append(layer)
    return [pools[d][0] for d in range(max_depth + 1)]


def formula_battery(sig: Signature, max_depth: int, limit: int, sugar: bool = True) -> List[Formula]:
    """At most `limit` distinct sentences of depth <= max_depth

    Takes the layers of formula_layers with width `limit` in turn, one sentence
    from each depth per round, so every depth up to max_depth is represented.
    """
    layers = formula_layers(sig, max_depth, limit, sugar)
    return list(itertools.islice(_interleave(*layers), limit))


def fill(context: Formula, phi: Formula) -> Formula:
    """Replace every hole in a context by phi"""
    if context == HOLE:
        return phi
    if isinstance(context, Unary):
        return type(context)(fill(context.body, phi))
    if isinstance(context, Binary):
        return type(context)(fill(context.left, phi), fill(context.right, phi))
    if isinstance(context, Quantifier):
        return type(context)(context.var, fill(context.body, phi))
    return context


def contexts(max_depth: int, atom: Formula = Atom("r"), var: str = "x") -> List[Formula]:
    """All one-hole contexts up to max_depth

    Each layer wraps the previous one in every unary connective, every binary
    connective with the side atom on either side, and both quantifiers over var.
    Layer k holds 19**k contexts.
    """
    unary = PRIMITIVE_UNARY + SUGAR_UNARY
    binary = PRIMITIVE_BINARY + SUGAR_BINARY
    layers: List[Formula] = [HOLE]
    frontier = [HOLE]
    for _ in range(max_depth):
        nxt: List[Formula] = []
        for c in frontier:
            nxt.extend(op(c) for op in unary)
            for op in binary:
                nxt.extend((op(c, atom), op(atom, c)))
            nxt.extend((Forall(var, c), Exists(var, c)))
        layers.extend(nxt)
        frontier = nxt
    return layers
