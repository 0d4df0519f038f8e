"""
Interpretability - classical hereditarily finite sets inside the universe
(check embedding), hereditarily classical sets, and the coded copy of the
universe inside them (hat embedding)
"""
import itertools
import logging
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from src.core.errors import BudgetExceededError, UniverseError
from src.core.report import CheckReport, SuiteReport
from src.core.universe import (
    NCSet, classical_enum_set, classical_pair, classical_singleton, closure, empty, enumerate_level,
    eq_false, is_classical, is_member_closed, make, mem_false, mem_true, render_ncset, sort_sets, universe,
)

logger = logging.getLogger(__name__)

HFSet = FrozenSet["HFSet"]

MAX_HF_RANK = 4
MAX_HAT_LEVEL = 2


# ---------------------------------------------------------------------------
# Pure hereditarily finite sets
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def hf_rank(x: HFSet) -> int:
    return 1 + max(hf_rank(y) for y in x) if x else 0


def hf_render(x: HFSet) -> str:
    return "{" + ",".join(sorted(hf_render(y) for y in x)) + "}"


def _hf_key(x: HFSet) -> Tuple[int, str]:
    return hf_rank(x), hf_render(x)


@lru_cache(maxsize=None)
def _hf_level(n: int) -> Tuple[HFSet, ...]:
    if n == 0:
        return ()
    below = _hf_level(n - 1)
    subsets = (frozenset(c) for r in range(len(below) + 1) for c in itertools.combinations(below, r))
    return tuple(sorted(subsets, key=_hf_key))


def hf_level(n: int, max_rank: int = MAX_HF_RANK) -> List[HFSet]:
    """V_n: the pure sets of rank < n"""
    if n < 0:
        raise UniverseError(f"rank bound must be non-negative, got {n}")
    if n > max_rank:
        raise BudgetExceededError(f"enumerating V_{n}", 2 ** len(_hf_level(max_rank)), len(_hf_level(max_rank)))
    return list(_hf_level(n))


# ---------------------------------------------------------------------------
# Check embedding
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def check_embed(x: HFSet) -> NCSet:
    """Classical image ({y' : y in x}, {y' : y in x})"""
    return classical_enum_set(check_embed(y) for y in x)


def verify_check_iso(max_rank: int = MAX_HF_RANK) -> CheckReport:
    """Membership, non-membership, equality and inequality are preserved on V_max_rank"""
    sets = hf_level(max_rank)
    report = CheckReport("check_iso", params={"rank": max_rank})
    images = {x: check_embed(x) for x in sets}
    report.expect(len(set(images.values())) == len(sets), item="injective")
    for x in sets:
        report.expect(is_hereditarily_classical(images[x]), item="hereditarily classical", x=hf_render(x))
    for x in sets:
        for y in sets:
            cx, cy = images[x], images[y]
            clauses = (
                ("in", x in y, mem_true(cx, cy)),
                ("not in", x not in y, mem_false(cx, cy)),
                ("equal", x == y, cx is cy),
                ("unequal", x != y, eq_false(cx, cy)),
            )
            for clause, expected, got in clauses:
                if expected != got:
                    report.fail(clause=clause, x=hf_render(x), y=hf_render(y))
            report.tick()
    report.extra["pairs_checked"] = len(sets) ** 2
    report.extra["sets"] = len(sets)
    return report


# ---------------------------------------------------------------------------
# Hereditarily classical sets
# ---------------------------------------------------------------------------

def is_hereditarily_classical(x: NCSet) -> bool:
    memo = universe().hcl_memo
    found = memo.get(x.id)
    if found is None:
        found = is_classical(x) and all(is_hereditarily_classical(y) for y in x.pos)
        memo[x.id] = found
    return found


def hcl_filter(fragment: Iterable[NCSet]) -> List[NCSet]:
    fragment = list(fragment)
    if not is_member_closed(fragment):
        raise UniverseError("hcl_filter needs a member-closed fragment")
    return sort_sets(x for x in fragment if is_hereditarily_classical(x))


@lru_cache(maxsize=None)
def _hcl_level(n: int) -> Tuple[NCSet, ...]:
    if n == 0:
        return ()
    below = _hcl_level(n - 1)
    return tuple(sort_sets(
        classical_enum_set(c) for r in range(len(below) + 1) for c in itertools.combinations(below, r)
    ))


def hcl_level(n: int) -> List[NCSet]:
    """Stratified levels: HCL_{k+1} is every classical set of HCL_k members"""
    return list(_hcl_level(n))


def verify_hclw_equals_vcheck(n: int = 3) -> CheckReport:
    """Hereditarily classical members of W_n are exactly the images of V_n"""
    report = CheckReport("hclw_equals_vcheck", params={"level": n})
    filtered = set(hcl_filter(enumerate_level(n)))
    images = {check_embed(x) for x in hf_level(n)}
    stratified = set(hcl_level(n))
    report.expect(filtered == images, item="filter vs images",
                  only_filter=[render_ncset(x) for x in sort_sets(filtered - images)],
                  only_images=[render_ncset(x) for x in sort_sets(images - filtered)])
    report.expect(filtered == stratified, item="filter vs stratified")
    report.extra["sizes"] = {"filter": len(filtered), "images": len(images), "stratified": len(stratified)}
    return report


# ---------------------------------------------------------------------------
# Kuratowski coding and the hat embedding
# ---------------------------------------------------------------------------

def kuratowski(u: NCSet, v: NCSet) -> NCSet:
    """{{u}, {u, v}} over classical components"""
    if not (is_classical(u) and is_classical(v)):
        raise UniverseError("kuratowski pairs need classical components")
    return classical_pair(classical_singleton(u), classical_pair(u, v))


def decode_kuratowski(p: NCSet) -> Optional[Tuple[NCSet, NCSet]]:
    """(u, v) with kuratowski(u, v) = p, or None"""
    if not is_classical(p) or not 1 <= len(p.pos) <= 2:
        return None
    singletons = [m for m in p.pos if is_classical(m) and len(m.pos) == 1]
    for s in singletons:
        (u,) = s.pos
        if not is_classical(u):
            continue
        others = [m for m in p.pos if m is not s]
        if not others:
            v = u
        else:
            (pair,) = others
            if not is_classical(pair) or u not in pair.pos or len(pair.pos) != 2:
                continue
            (v,) = pair.pos - {u}
            if not is_classical(v):
                continue
        if kuratowski(u, v) is p:
            return u, v
    return None


_hat_memo: Dict[int, NCSet] = {}


def hat_embed(x: NCSet) -> NCSet:
    """Code (pos, quest) as the pair of classical sets of member codes"""
    found = _hat_memo.get(x.id)
    if found is None:
        a = classical_enum_set(hat_embed(y) for y in x.pos)
        b = classical_enum_set(hat_embed(y) for y in x.quest)
        found = kuratowski(a, b)
        _hat_memo[x.id] = found
    return found


_preimage_memo: Dict[int, Optional[NCSet]] = {}


def hat_preimage(p: NCSet) -> Optional[NCSet]:
    """x with hat_embed(x) = p, or None when p is not a hat image"""
    if p.id in _preimage_memo:
        return _preimage_memo[p.id]
    found = None
    decoded = decode_kuratowski(p)
    if decoded is not None:
        a, b = decoded
        pos = [hat_preimage(m) for m in a.pos]
        quest = [hat_preimage(m) for m in b.pos]
        if all(m is not None for m in pos) and all(m is not None for m in quest):
            found = make(pos, quest)
    _preimage_memo[p.id] = found
    return found


def is_hat_image(p: NCSet) -> bool:
    return hat_preimage(p) is not None


def verify_hat_iso(n: int = MAX_HAT_LEVEL) -> CheckReport:
    """Relations pulled back through the coding agree with the decoded structure"""
    if n > MAX_HAT_LEVEL + 1:
        raise BudgetExceededError(f"hat images of W_{n}", n, MAX_HAT_LEVEL + 1)
    sets = enumerate_level(n)
    report = CheckReport("hat_iso", params={"level": n})
    hats = {x: hat_embed(x) for x in sets}
    decoded = {x: decode_kuratowski(hats[x]) for x in sets}
    report.expect(len(set(hats.values())) == len(sets), item="injective")
    for x in sets:
        report.expect(is_hereditarily_classical(hats[x]), item="hereditarily classical", x=render_ncset(x))
        report.expect(hat_preimage(hats[x]) is x, item="decodes back", x=render_ncset(x))
        if is_classical(x):
            a, b = decoded[x]
            report.expect(a is b, item="classical coordinates agree", x=render_ncset(x))
    for x in sets:
        for y in sets:
            ax, bx = decoded[x]
            ay, by = decoded[y]
            hx = hats[x]
            clauses = (
                ("E+", mem_true(x, y), hx in ay.pos),
                ("E-", mem_false(x, y), hx not in by.pos),
                ("=+", x is y, hx is hats[y]),
                ("=-", eq_false(x, y), not ax.pos <= by.pos or not ay.pos <= bx.pos),
            )
            for clause, source, coded in clauses:
                if source != coded:
                    report.fail(clause=clause, x=render_ncset(x), y=render_ncset(y))
            report.tick()
    report.extra["pairs_checked"] = len(sets) ** 2
    return report


def _code_candidates(n: int, below: Sequence[NCSet]) -> List[NCSet]:
    """Member-closed fragment of W_n plus every pair of classical sets drawn from the
    level n - 1 codes and the hereditarily classical members of W_{n-1}"""
    base = sort_sets(set(below) | set(hcl_filter(enumerate_level(n - 1))))
    parts = [classical_enum_set(c) for r in range(len(base) + 1) for c in itertools.combinations(base, r)]
    return closure(enumerate_level(n) + [kuratowski(a, b) for a in parts for b in parts])


def is_code(p: NCSet, below: FrozenSet[NCSet]) -> bool:
    """p is a pair whose coordinates only hold codes from below"""
    decoded = decode_kuratowski(p)
    return decoded is not None and all(c.pos <= below for c in decoded)


@lru_cache(maxsize=None)
def _coded_level(n: int) -> Tuple[NCSet, ...]:
    if n == 0:
        return ()
    below = frozenset(_coded_level(n - 1))
    candidates = hcl_filter(_code_candidates(n, sort_sets(below)))
    return tuple(p for p in candidates if is_code(p, below))


def coded_level(n: int) -> List[NCSet]:
    """W_n rebuilt from hereditarily classical sets with pairs coded as kuratowski pairs"""
    if n > MAX_HAT_LEVEL + 1:
        raise BudgetExceededError(f"coded level {n}", n, MAX_HAT_LEVEL + 1)
    return list(_coded_level(n))


def verify_w_relativized_to_hcl(n: int = MAX_HAT_LEVEL) -> CheckReport:
    report = CheckReport("w_relativized_to_hcl", params={"level": n})
    coded = set(coded_level(n))
    images = {hat_embed(x) for x in enumerate_level(n)}
    report.expect(coded == images, item="coded level vs hat images")
    report.expect(all(is_hereditarily_classical(p) for p in coded), item="coded sets hereditarily classical")
    candidates = hcl_filter(_code_candidates(n, coded_level(n - 1))) if n > 0 else []
    if candidates:
        report.expect(len(candidates) > len(coded), item="selection rejects hereditarily classical non-codes")
    # a kuratowski pair whose first coordinate holds a non-code
    stray = kuratowski(classical_singleton(empty()), empty())
    report.expect(not is_hat_image(stray) and stray not in coded, item="non-image pair",
                  pair=render_ncset(stray))
    report.extra["sizes"] = {"coded": len(coded), "images": len(images), "candidates": len(candidates)}
    return report


def interpretability_suite(max_hf_rank: int = MAX_HF_RANK, hcl_level_bound: int = 3,
                           hat_level: int = MAX_HAT_LEVEL) -> SuiteReport:
    suite = SuiteReport("interpretability", params={
        "max_hf_rank": max_hf_rank, "hcl_level": hcl_level_bound, "hat_level": hat_level,
    })
    suite.add(verify_check_iso(max_hf_rank))
    for n in range(1, hcl_level_bound + 1):
        suite.add(verify_hclw_equals_vcheck(n))
    for n in range(1, hat_level + 1):
        suite.add(verify_hat_iso(n))
        suite.add(verify_w_relativized_to_hcl(n))
    logger.info(f"interpretability suite: {'pass' if suite.passed else 'FAIL'}")
    return suite
